"""Command-line surface for building, verifying, timing, and exporting.

Machine-readable JSON goes to stdout (or --out); human-readable
status and tables go to stderr.  Exit codes: 0 success or pass, 1
verification failure, 2 usage or parameter error, 3 I/O error.

Identical invocations produce byte-identical JSON, so reports can be
diffed across runs.  Passing --manifest writes a RunManifest JSON
recording the argument vector, block specs, seeds, and stage model;
re-running the recorded argv reproduces the reports byte for byte.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .core import NetlistError
from .export import FORMATS, render, write_text
from .generators import (
    MIDDLE_PICKS,
    REGISTRY,
    BlockSpec,
    ParameterError,
    build_block,
)
from .timing import StageModel, arrivals, compare
from .verify import (
    EXHAUSTIVE_INPUT_BOUND,
    verify_cout_independence,
    verify_exhaustive,
    verify_random,
)

SCHEMA_VERSION = "1"

_EXTENSION = {"json": "json", "hdl": "v", "dot": "dot"}
_COMPRESSOR_CHOICES = ("compressor72_proposed", "compressor72_cascade")


# ---------------------------------------------------------------------------
# argument plumbing
# ---------------------------------------------------------------------------

def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--schema-version",
        default=SCHEMA_VERSION,
        dest="schema_version",
        help="report schema expected by the caller (default %(default)s)",
    )
    parser.add_argument(
        "--out",
        default=None,
        help="write the primary output to this path ('-' for stdout)",
    )
    parser.add_argument(
        "--manifest",
        default=None,
        help="also write a RunManifest JSON to this path",
    )


def _add_block_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--width", type=int, default=None, help="adder width in bits")
    parser.add_argument("--rows", type=int, default=None, help="array rows")
    parser.add_argument("--cols", type=int, default=None, help="array columns")
    parser.add_argument(
        "--middle-pick",
        choices=MIDDLE_PICKS,
        default=None,
        dest="middle_pick",
        help="which middle wire of the half sorter becomes the carry",
    )
    parser.add_argument(
        "--compressor",
        choices=_COMPRESSOR_CHOICES,
        default=None,
        help="column compressor used by array blocks",
    )


_PARAM_FLAGS = ("width", "rows", "cols", "middle_pick", "compressor")


def _block_spec(args: argparse.Namespace, generator: str, strict: bool) -> BlockSpec:
    """Collect parameter flags into a BlockSpec.

    strict mode rejects flags the generator does not accept; the
    relaxed mode (used by compare, where one flag set serves several
    blocks) drops them silently.
    """
    if generator not in REGISTRY:
        raise ParameterError(
            f"unknown generator {generator!r}; known: {sorted(REGISTRY)}"
        )
    accepted = REGISTRY[generator].params
    params = {}
    for key in _PARAM_FLAGS:
        value = getattr(args, key)
        if value is None:
            continue
        if key not in accepted:
            if strict:
                raise ParameterError(f"{generator} does not take --{key.replace('_', '-')}")
            continue
        params[key] = value
    return BlockSpec(generator, params)


def _emit(args: argparse.Namespace, text: str, note: str | None = None) -> None:
    if args.out is None or args.out == "-":
        sys.stdout.write(text)
    else:
        write_text(args.out, text)
        print(f"wrote {args.out}", file=sys.stderr)
    if note:
        print(note, file=sys.stderr)


def _write_manifest(
    args: argparse.Namespace,
    specs: list[BlockSpec],
    settings: dict,
) -> None:
    if not args.manifest:
        return
    doc = {
        "schema_version": SCHEMA_VERSION,
        "tool": {"name": "gatelab", "version": __version__},
        "argv": args.tokens,
        "command": args.command,
        "blocks": [
            {"generator": s.generator, "params": dict(sorted(s.params.items()))}
            for s in specs
        ],
        "settings": settings,
        "paths": {"out": args.out, "manifest": args.manifest},
    }
    write_text(args.manifest, json.dumps(doc, indent=2) + "\n")


def _parse_arrivals(pairs: list[str] | None) -> dict[str, int]:
    out: dict[str, int] = {}
    for pair in pairs or []:
        name, sep, stage = pair.partition("=")
        if not sep or not name:
            raise ParameterError(f"--arrival takes NAME=STAGE, got {pair!r}")
        try:
            out[name] = int(stage)
        except ValueError:
            raise ParameterError(f"--arrival stage must be an integer, got {pair!r}") from None
    return out


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def cmd_build(args: argparse.Namespace) -> int:
    spec = _block_spec(args, args.block, strict=True)
    circuit = build_block(spec)
    annotate = arrivals(circuit) if (args.format == "dot" and args.annotate) else None
    text = render(circuit, args.format, annotate)
    if args.out is None:
        args.out = f"{spec.generator}.{_EXTENSION[args.format]}"
    _emit(args, text)
    _write_manifest(args, [spec], {"format": args.format})
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    spec = _block_spec(args, args.block, strict=True)
    circuit = build_block(spec)
    if args.check == "cin-independence":
        report = verify_cout_independence(circuit)
    else:
        mode = args.mode
        if mode is None:
            mode = (
                "exhaustive"
                if len(circuit.inputs) <= EXHAUSTIVE_INPUT_BOUND
                else "random"
            )
        if mode == "exhaustive":
            report = verify_exhaustive(circuit)
        else:
            report = verify_random(circuit, seed=args.seed, count=args.count)
    _emit(
        args,
        report.to_json(),
        note=f"{spec.label()}: {report.status} ({report.vectors_tried} vectors)",
    )
    _write_manifest(
        args,
        [spec],
        {
            "check": args.check,
            "mode": report.mode,
            "seed": args.seed,
            "count": args.count,
        },
    )
    return 0 if report.ok else 1


def cmd_depth(args: argparse.Namespace) -> int:
    spec = _block_spec(args, args.block, strict=True)
    circuit = build_block(spec)
    model = StageModel(inv_cost=args.inv_cost)
    given = _parse_arrivals(args.arrival)
    amap = arrivals(circuit, model, given)
    doc = {
        "schema_version": SCHEMA_VERSION,
        "block": spec.label(),
        "model": {"inv_cost": model.inv_cost},
        "input_arrivals": amap.input_arrivals,
        "outputs": dict(amap.output_arrival),
        "depth": amap.depth,
        "critical_nets": amap.critical_nets(),
    }
    lines = [f"{spec.label()}: depth {amap.depth} (inv_cost={model.inv_cost})"]
    for port, stage in amap.output_arrival.items():
        lines.append(f"  {port}: {stage}")
    _emit(args, json.dumps(doc, indent=2) + "\n", note="\n".join(lines))
    _write_manifest(
        args,
        [spec],
        {"model": {"inv_cost": model.inv_cost}, "input_arrivals": given},
    )
    return 0


def cmd_compare(args: argparse.Namespace) -> int:
    if len(args.blocks) < 2:
        raise ParameterError("compare needs at least two blocks")
    specs = [_block_spec(args, name, strict=False) for name in args.blocks]
    circuits = [build_block(spec) for spec in specs]
    model = StageModel(inv_cost=args.inv_cost)
    report = compare(circuits, model)
    _emit(args, report.to_json(), note=report.to_text())
    _write_manifest(args, specs, {"model": {"inv_cost": model.inv_cost}})
    return 0


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gatelab",
        description="build, verify, time, and export gate-level arithmetic blocks",
    )
    parser.add_argument("--version", action="version", version=f"gatelab {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    known = ", ".join(sorted(REGISTRY))

    for cmd in ("build", "export"):
        p = sub.add_parser(
            cmd,
            help="generate a block and write it in a chosen format",
            description=f"known blocks: {known}",
        )
        p.add_argument("block")
        p.add_argument("--format", choices=FORMATS, default="json")
        p.add_argument(
            "--annotate",
            action="store_true",
            help="stamp stage arrivals on dot nodes",
        )
        _add_block_flags(p)
        _add_common(p)
        p.set_defaults(func=cmd_build)

    p = sub.add_parser(
        "verify",
        help="check a block against its arithmetic oracle",
        description=f"known blocks: {known}",
    )
    p.add_argument("block")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument(
        "--exhaustive", action="store_const", const="exhaustive", dest="mode"
    )
    mode.add_argument("--random", action="store_const", const="random", dest="mode")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=1000, help="random vectors to draw")
    p.add_argument(
        "--check",
        choices=("oracle", "cin-independence"),
        default="oracle",
        help="what to verify (cin-independence needs compressor ports)",
    )
    _add_block_flags(p)
    _add_common(p)
    p.set_defaults(func=cmd_verify, mode=None)

    p = sub.add_parser(
        "depth",
        help="stage arrival analysis",
        description=f"known blocks: {known}",
    )
    p.add_argument("block")
    p.add_argument("--inv-cost", type=int, choices=(0, 1), default=0, dest="inv_cost")
    p.add_argument(
        "--arrival",
        action="append",
        metavar="NAME=STAGE",
        help="input arrival override, repeatable",
    )
    _add_block_flags(p)
    _add_common(p)
    p.set_defaults(func=cmd_depth)

    p = sub.add_parser(
        "compare",
        help="side-by-side depth and area for two or more blocks",
        description=f"known blocks: {known}",
    )
    p.add_argument("blocks", nargs="+")
    p.add_argument("--inv-cost", type=int, choices=(0, 1), default=0, dest="inv_cost")
    _add_block_flags(p)
    _add_common(p)
    p.set_defaults(func=cmd_compare)

    return parser


def main(argv: list[str] | None = None) -> int:
    tokens = list(sys.argv[1:]) if argv is None else list(argv)
    parser = build_parser()
    try:
        args = parser.parse_args(tokens)
    except SystemExit as exc:
        code = exc.code
        return code if isinstance(code, int) else 2
    args.tokens = tokens
    if args.schema_version != SCHEMA_VERSION:
        print(
            f"error: unsupported schema version {args.schema_version!r}; "
            f"this tool emits {SCHEMA_VERSION!r}",
            file=sys.stderr,
        )
        return 2
    try:
        return args.func(args)
    except NetlistError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"io error: {exc}", file=sys.stderr)
        return 3


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
