"""Combinational gate-level netlist IR.

A circuit is a DAG of 2-input gates (AND2, OR2, NAND2, NOR2) plus the
1-input inverter.  XOR and MUX are builder macros that expand into this
basis; they are never stored.  Nets are integer ids with unique names.
Circuits are immutable once sealed; all construction goes through
:class:`CircuitBuilder`.

Constant inputs never survive into a sealed circuit: the builder folds
them away at gate-creation time, which is also how instantiation with
tied-off ports works.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence, Union


class NetlistError(Exception):
    """Base error for this package."""


class BuildError(NetlistError):
    """Misuse of a builder or a structurally invalid circuit."""


class GateKind(enum.Enum):
    AND2 = "AND2"
    OR2 = "OR2"
    NAND2 = "NAND2"
    NOR2 = "NOR2"
    INV = "INV"


ARITY = {
    GateKind.AND2: 2,
    GateKind.OR2: 2,
    GateKind.NAND2: 2,
    GateKind.NOR2: 2,
    GateKind.INV: 1,
}

# Inverters are tracked apart from the 2-input gates in area and timing.
BASIC_KINDS = (GateKind.AND2, GateKind.OR2, GateKind.NAND2, GateKind.NOR2)


class Const(enum.Enum):
    """Tie-off value accepted wherever a net is expected during building."""

    ZERO = 0
    ONE = 1

    def __invert__(self) -> "Const":
        return ONE if self is ZERO else ZERO


ZERO = Const.ZERO
ONE = Const.ONE

#: A net id inside a builder, or a tie-off constant.
NetRef = Union[int, Const]

_NAME_RE = re.compile(r"^[A-Za-z_][A-Za-z0-9_/]*$")


@dataclass(frozen=True)
class Cell:
    """One gate: ``out = kind(*ins)``.  Net ids, not names."""

    kind: GateKind
    ins: tuple[int, ...]
    out: int


@dataclass(frozen=True)
class Instance:
    """Record of one sub-circuit instantiation (metadata, not serialized).

    ``inputs`` maps the sub-circuit's input ports to the parent refs they
    were bound to; ``outputs`` maps its output ports to the parent refs
    they produced (constants appear when folding collapsed an output).
    """

    name: str
    block: str
    inputs: tuple[tuple[str, NetRef], ...]
    outputs: tuple[tuple[str, NetRef], ...]


@dataclass(frozen=True)
class Circuit:
    """Sealed combinational netlist.

    Nets ``0 .. len(inputs)-1`` are the input ports, in declared order.
    ``cells`` is topologically ordered: every cell reads only input nets
    or outputs of earlier cells.
    """

    name: str
    inputs: tuple[str, ...]
    outputs: tuple[str, ...]
    output_nets: tuple[int, ...]
    cells: tuple[Cell, ...]
    net_names: tuple[str, ...]
    instances: tuple[Instance, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "_name_to_net", {n: i for i, n in enumerate(self.net_names)}
        )

    @property
    def num_nets(self) -> int:
        return len(self.net_names)

    def net(self, name: str) -> int:
        """Net id for a net name (inputs are named by their port)."""
        try:
            return self._name_to_net[name]  # type: ignore[attr-defined]
        except KeyError:
            raise NetlistError(f"{self.name}: no net named {name!r}") from None

    def output_net(self, port: str) -> int:
        try:
            return self.output_nets[self.outputs.index(port)]
        except ValueError:
            raise NetlistError(f"{self.name}: no output port {port!r}") from None

    def counts(self) -> dict[GateKind, int]:
        out = {kind: 0 for kind in GateKind}
        for cell in self.cells:
            out[cell.kind] += 1
        return out


def validate(circuit: Circuit) -> list[str]:
    """Structural check; returns a list of violations (empty when clean).

    Checks name sanity, port uniqueness, single drivers, gate arity and
    that ``cells`` is in topological order (which also rules out cycles).
    """
    errs: list[str] = []
    names = circuit.net_names
    n_inputs = len(circuit.inputs)

    seen_ports: set[str] = set()
    for port in circuit.inputs + circuit.outputs:
        if port in seen_ports:
            errs.append(f"duplicate port name {port!r}")
        seen_ports.add(port)
    for port in circuit.inputs + circuit.outputs:
        if not _NAME_RE.match(port) or "/" in port:
            errs.append(f"bad port name {port!r}")

    if len(set(names)) != len(names):
        dupes = sorted({n for n in names if names.count(n) > 1})
        errs.append(f"duplicate net names: {dupes}")
    for i, port in enumerate(circuit.inputs):
        if i >= len(names) or names[i] != port:
            errs.append(f"input net {i} must be named after its port {port!r}")

    driven = set(range(n_inputs))
    for idx, cell in enumerate(circuit.cells):
        if cell.kind not in ARITY:
            errs.append(f"cell {idx}: unknown kind {cell.kind!r}")
            continue
        if len(cell.ins) != ARITY[cell.kind]:
            errs.append(
                f"cell {idx}: {cell.kind.value} takes {ARITY[cell.kind]} "
                f"inputs, got {len(cell.ins)}"
            )
        for ref in cell.ins:
            if not (0 <= ref < len(names)):
                errs.append(f"cell {idx}: input net {ref} out of range")
            elif ref not in driven:
                errs.append(
                    f"cell {idx}: net {names[ref]!r} used before its driver "
                    "(cycle or non-topological order)"
                )
        if not (0 <= cell.out < len(names)):
            errs.append(f"cell {idx}: output net {cell.out} out of range")
        elif cell.out in driven:
            errs.append(f"cell {idx}: net {names[cell.out]!r} has two drivers")
        else:
            driven.add(cell.out)

    if len(driven) != len(names):
        for ref in range(len(names)):
            if ref not in driven:
                errs.append(f"net {names[ref]!r} has no driver")

    if not circuit.outputs:
        errs.append("circuit has no outputs")
    if len(circuit.output_nets) != len(circuit.outputs):
        errs.append("output port/net lists disagree")
    else:
        for port, ref in zip(circuit.outputs, circuit.output_nets):
            if not (0 <= ref < len(names)):
                errs.append(f"output {port!r} bound to net {ref} out of range")
            elif ref not in driven:
                errs.append(f"output {port!r} bound to undriven net")
    return errs


def _check_ref(ref: NetRef, limit: int) -> None:
    if isinstance(ref, Const):
        return
    # bool is an int subclass; True/False here is almost always a bug.
    if isinstance(ref, bool) or not isinstance(ref, int):
        raise BuildError(f"net reference must be an int net id or Const, got {ref!r}")
    if not (0 <= ref < limit):
        raise BuildError(f"unknown net id {ref}")


class CircuitBuilder:
    """Single-owner builder; produces a sealed :class:`Circuit`.

    Gates accept ``ZERO``/``ONE`` anywhere a net is expected and fold the
    constant immediately, so a sealed circuit contains no constants.
    """

    def __init__(self, name: str, inputs: Sequence[str]):
        if not name or not _NAME_RE.match(name):
            raise BuildError(f"bad circuit name {name!r}")
        if not inputs:
            raise BuildError("a circuit needs at least one input")
        seen: set[str] = set()
        for port in inputs:
            if not isinstance(port, str) or not _NAME_RE.match(port) or "/" in port:
                raise BuildError(f"bad input name {port!r}")
            if port in seen:
                raise BuildError(f"duplicate input name {port!r}")
            seen.add(port)
        self.name = name
        self._input_names = tuple(inputs)
        self._net_names: list[str] = list(inputs)
        self._used_names: set[str] = set(inputs)
        self._cells: list[Cell] = []
        self._outputs: dict[str, int] = {}
        self._instances: list[Instance] = []
        self._inst_names: set[str] = set()
        self._sealed = False

    # ---------------- net bookkeeping ----------------

    def _alive(self) -> None:
        if self._sealed:
            raise BuildError(f"builder for {self.name!r} is already sealed")

    def _fresh_name(self, base: str | None) -> str:
        if base is None:
            base = f"n{len(self._net_names)}"
        name = base
        k = 2
        while name in self._used_names:
            name = f"{base}__{k}"
            k += 1
        self._used_names.add(name)
        return name

    def _new_net(self, name: str | None) -> int:
        self._net_names.append(self._fresh_name(name))
        return len(self._net_names) - 1

    def input(self, port: str) -> int:
        """Net id of an input port."""
        try:
            return self._input_names.index(port)
        except ValueError:
            raise BuildError(f"{self.name}: no input named {port!r}") from None

    # ---------------- gates ----------------

    def add_gate(self, kind: GateKind, *ins: NetRef, name: str | None = None) -> NetRef:
        """Append one gate; returns its output ref.

        Constant inputs fold: the result may be an existing net, a Const,
        or a smaller gate (NAND/NOR with a tied input become inverters).
        """
        self._alive()
        if kind not in ARITY:
            raise BuildError(f"unknown gate kind {kind!r}")
        if len(ins) != ARITY[kind]:
            raise BuildError(
                f"{kind.value} takes {ARITY[kind]} inputs, got {len(ins)}"
            )
        for ref in ins:
            _check_ref(ref, len(self._net_names))

        if kind is GateKind.INV:
            (a,) = ins
            if isinstance(a, Const):
                return ~a
            out = self._new_net(name)
            self._cells.append(Cell(kind, (a,), out))
            return out

        a, b = ins
        if isinstance(a, Const) or isinstance(b, Const):
            folded = self._fold_binary(kind, a, b)
            if folded is not None:
                return folded
            # exactly one side constant and not absorbing: reduce
            net, const = (a, b) if isinstance(b, Const) else (b, a)
            assert isinstance(net, int) and isinstance(const, Const)
            if kind is GateKind.AND2:
                return net  # const is ONE here
            if kind is GateKind.OR2:
                return net  # const is ZERO
            if kind is GateKind.NAND2:
                return self.inv(net, name=name)  # const is ONE
            return self.inv(net, name=name)  # NOR2 with ZERO

        out = self._new_net(name)
        self._cells.append(Cell(kind, (a, b), out))
        return out

    @staticmethod
    def _fold_binary(kind: GateKind, a: NetRef, b: NetRef) -> NetRef | None:
        """Absorbing/driving constant results, or None when a gate remains."""
        consts = {x for x in (a, b) if isinstance(x, Const)}
        if kind is GateKind.AND2:
            if ZERO in consts:
                return ZERO
            if a is ONE and b is ONE:
                return ONE
        elif kind is GateKind.OR2:
            if ONE in consts:
                return ONE
            if a is ZERO and b is ZERO:
                return ZERO
        elif kind is GateKind.NAND2:
            if ZERO in consts:
                return ONE
            if a is ONE and b is ONE:
                return ZERO
        elif kind is GateKind.NOR2:
            if ONE in consts:
                return ZERO
            if a is ZERO and b is ZERO:
                return ONE
        if isinstance(a, Const) and isinstance(b, Const):
            raise AssertionError("two-constant case not folded")
        return None

    def and_(self, a: NetRef, b: NetRef, name: str | None = None) -> NetRef:
        return self.add_gate(GateKind.AND2, a, b, name=name)

    def or_(self, a: NetRef, b: NetRef, name: str | None = None) -> NetRef:
        return self.add_gate(GateKind.OR2, a, b, name=name)

    def nand_(self, a: NetRef, b: NetRef, name: str | None = None) -> NetRef:
        return self.add_gate(GateKind.NAND2, a, b, name=name)

    def nor_(self, a: NetRef, b: NetRef, name: str | None = None) -> NetRef:
        return self.add_gate(GateKind.NOR2, a, b, name=name)

    def inv(self, a: NetRef, name: str | None = None) -> NetRef:
        return self.add_gate(GateKind.INV, a, name=name)

    # ---------------- macros ----------------

    def xor(self, a: NetRef, b: NetRef, name: str | None = None) -> NetRef:
        """(a+b)·!(ab); two stages of basic gates, one inverter."""
        either = self.or_(a, b)
        both = self.and_(a, b)
        return self.and_(either, self.inv(both), name=name)

    def mux(
        self,
        select: NetRef,
        when0: NetRef,
        when1: NetRef,
        name: str | None = None,
    ) -> NetRef:
        """!select·when0 + select·when1; two stages, inverter on select."""
        low = self.and_(self.inv(select), when0)
        high = self.and_(select, when1)
        return self.or_(low, high, name=name)

    def add_macro(self, macro: str, *ins: NetRef, name: str | None = None) -> NetRef:
        if macro == "XOR2":
            if len(ins) != 2:
                raise BuildError("XOR2 takes 2 inputs")
            return self.xor(*ins, name=name)
        if macro == "MUX2":
            if len(ins) != 3:
                raise BuildError("MUX2 takes select, when0, when1")
            return self.mux(*ins, name=name)
        raise BuildError(f"unknown macro {macro!r}")

    # ---------------- hierarchy ----------------

    def instantiate(
        self,
        sub: Circuit,
        bindings: Mapping[str, NetRef],
        name: str | None = None,
    ) -> dict[str, NetRef]:
        """Flatten a copy of ``sub`` into this builder.

        ``bindings`` must cover exactly the sub-circuit's inputs; values
        may be parent nets or constants (which fold through the copy).
        Fresh nets are named ``<instance>/<sub net name>``, so repeated
        instantiation never collides.  Returns output port -> parent ref.
        """
        self._alive()
        missing = [p for p in sub.inputs if p not in bindings]
        extra = [p for p in bindings if p not in sub.inputs]
        if missing or extra:
            raise BuildError(
                f"bindings for {sub.name!r} do not match its inputs"
                f" (missing {missing}, unexpected {extra})"
            )
        for ref in bindings.values():
            _check_ref(ref, len(self._net_names))

        if name is None:
            name = sub.name
        inst = name
        k = 2
        while inst in self._inst_names:
            inst = f"{name}__{k}"
            k += 1
        self._inst_names.add(inst)

        netmap: dict[int, NetRef] = {}
        for i, port in enumerate(sub.inputs):
            netmap[i] = bindings[port]
        for cell in sub.cells:
            ins = tuple(netmap[i] for i in cell.ins)
            out_name = f"{inst}/{sub.net_names[cell.out]}"
            netmap[cell.out] = self.add_gate(cell.kind, *ins, name=out_name)
        outs = {
            port: netmap[net] for port, net in zip(sub.outputs, sub.output_nets)
        }
        self._instances.append(
            Instance(
                name=inst,
                block=sub.name,
                inputs=tuple((p, bindings[p]) for p in sub.inputs),
                outputs=tuple(outs.items()),
            )
        )
        return outs

    # ---------------- outputs / seal ----------------

    def set_output(self, port: str, ref: NetRef) -> None:
        self._alive()
        if not _NAME_RE.match(port) or "/" in port:
            raise BuildError(f"bad output name {port!r}")
        if port in self._outputs or port in self._input_names:
            raise BuildError(f"port name {port!r} already in use")
        if isinstance(ref, Const):
            raise BuildError(
                f"output {port!r} folded to a constant; constant output "
                "ports are not representable"
            )
        _check_ref(ref, len(self._net_names))
        self._outputs[port] = ref

    def seal(self) -> Circuit:
        """Freeze into a Circuit; the builder is dead afterwards."""
        self._alive()
        if not self._outputs:
            raise BuildError(f"{self.name}: no outputs set")
        circuit = Circuit(
            name=self.name,
            inputs=self._input_names,
            outputs=tuple(self._outputs),
            output_nets=tuple(self._outputs.values()),
            cells=tuple(self._cells),
            net_names=tuple(self._net_names),
            instances=tuple(self._instances),
        )
        problems = validate(circuit)
        if problems:
            raise BuildError(
                f"{self.name}: structurally invalid: " + "; ".join(problems)
            )
        self._sealed = True
        return circuit


def new_circuit(name: str, inputs: Sequence[str]) -> CircuitBuilder:
    """Start a new circuit with the given input ports."""
    return CircuitBuilder(name, inputs)
