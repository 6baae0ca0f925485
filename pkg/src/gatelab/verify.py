"""Semantic verification against arithmetic oracles.

Each block family has an oracle that recomputes the intended result
with plain integer arithmetic (never with the netlist itself) and
compares.  Exhaustive sweeps cover every input combination up to a
hard bound of 24 inputs; above that, a seeded random mode draws from
numpy's default_rng (PCG64) after always trying a small structured
suite (all zeros, all ones, one-hot walk, per-column saturation).

Failures report the first counterexample in scan order; for
exhaustive mode that is the lexicographically first failing input
tuple, because enumeration order is lexicographic (see simulate).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Callable, Mapping

import numpy as np

from .core import Circuit, NetlistError
from .simulate import evaluate_batch, iter_exhaustive

SCHEMA_VERSION = "1"
EXHAUSTIVE_INPUT_BOUND = 24
PRNG_NAME = "numpy default_rng (PCG64)"


class ExhaustiveBoundError(NetlistError):
    """Exhaustive verification was asked for too wide an input space."""


# ---------------------------------------------------------------------------
# oracles
# ---------------------------------------------------------------------------

Columns = Mapping[str, np.ndarray]


@dataclass(frozen=True)
class Oracle:
    """A named semantic contract: a vectorized pass mask plus a per-vector
    expected/actual explanation used in counterexample reports."""

    name: str
    check: Callable[[Columns, Columns], np.ndarray]
    explain: Callable[[Mapping[str, int], Mapping[str, int]], tuple[dict, dict]]


def _stack(cols: Columns) -> np.ndarray:
    return np.stack([np.asarray(c, dtype=np.int64) for c in cols.values()])


def _weighted(cols: Columns, weight_of: Callable[[str], int]) -> np.ndarray:
    total = None
    for port, col in cols.items():
        term = np.asarray(col, dtype=np.int64) * weight_of(port)
        total = term if total is None else total + term
    assert total is not None
    return total


def _index_weight(prefix: str) -> Callable[[str], int]:
    def weight(port: str) -> int:
        assert port.startswith(prefix)
        return 1 << int(port[len(prefix):])

    return weight


def _sorter_check(ins: Columns, outs: Columns) -> np.ndarray:
    stacked = _stack(ins)
    expected = np.sort(stacked, axis=0)[::-1]
    return np.all(_stack(outs) == expected, axis=0)


def _sorter_explain(ins: Mapping[str, int], outs: Mapping[str, int]):
    expected = sorted(ins.values(), reverse=True)
    return (
        {port: val for port, val in zip(outs, expected)},
        dict(outs),
    )


def _half_sorter_check(ins: Columns, outs: Columns) -> np.ndarray:
    expected = np.sort(_stack(ins), axis=0)[::-1]
    w1, w2, w3, w4 = (np.asarray(outs[k], dtype=np.int64) for k in ("w1", "w2", "w3", "w4"))
    ok = w1 == expected[0]
    ok &= w4 == expected[3]
    ok &= (w2 + w3) == (expected[1] + expected[2])
    ok &= (w1 >= w2) & (w2 >= w4) & (w1 >= w3) & (w3 >= w4)
    return ok


def _half_sorter_explain(ins: Mapping[str, int], outs: Mapping[str, int]):
    expected = sorted(ins.values(), reverse=True)
    return (
        {
            "w1": expected[0],
            "middle_multiset": sorted(expected[1:3]),
            "w4": expected[3],
        },
        {
            "w1": outs["w1"],
            "middle_multiset": sorted((outs["w2"], outs["w3"])),
            "w4": outs["w4"],
        },
    )


def _full_adder_check(ins: Columns, outs: Columns) -> np.ndarray:
    total = sum(np.asarray(ins[k], dtype=np.int64) for k in ("A", "B", "C"))
    return (np.asarray(outs["Carry"], np.int64) == total >> 1) & (
        np.asarray(outs["Sum"], np.int64) == (total & 1)
    )


def _full_adder_explain(ins: Mapping[str, int], outs: Mapping[str, int]):
    total = ins["A"] + ins["B"] + ins["C"]
    return {"Carry": total >> 1, "Sum": total & 1}, dict(outs)


def _sfa_check(ins: Columns, outs: Columns) -> np.ndarray:
    total = sum(np.asarray(c, dtype=np.int64) for c in ins.values())
    got = (
        2 * np.asarray(outs["Carry"], np.int64)
        + np.asarray(outs["Sum"], np.int64)
        + np.asarray(outs["W"], np.int64)
    )
    return got == total


def _sfa_explain(ins: Mapping[str, int], outs: Mapping[str, int]):
    total = sum(ins.values())
    got = 2 * outs["Carry"] + outs["Sum"] + outs["W"]
    return {"total": total}, {"2*Carry + Sum + W": got, "outputs": dict(outs)}


def _compressor_check(ins: Columns, outs: Columns) -> np.ndarray:
    total = sum(np.asarray(c, dtype=np.int64) for c in ins.values())
    got = (
        np.asarray(outs["Sum"], np.int64)
        + 2 * np.asarray(outs["Carry"], np.int64)
        + 2 * np.asarray(outs["Co1"], np.int64)
        + 4 * np.asarray(outs["Co2"], np.int64)
    )
    return got == total


def _compressor_explain(ins: Mapping[str, int], outs: Mapping[str, int]):
    total = sum(ins.values())
    got = outs["Sum"] + 2 * outs["Carry"] + 2 * outs["Co1"] + 4 * outs["Co2"]
    return (
        {"total": total},
        {"Sum + 2*Carry + 2*Co1 + 4*Co2": got, "outputs": dict(outs)},
    )


def _adder_split(ins: Columns) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    a = _weighted({k: v for k, v in ins.items() if k[0] == "a"}, _index_weight("a"))
    b = _weighted({k: v for k, v in ins.items() if k[0] == "b"}, _index_weight("b"))
    return a, b, np.asarray(ins["cin"], dtype=np.int64)


def _adder_check(ins: Columns, outs: Columns) -> np.ndarray:
    a, b, cin = _adder_split(ins)
    width = len([k for k in ins if k[0] == "a"])
    s = _weighted({k: v for k, v in outs.items() if k != "cout"}, _index_weight("s"))
    got = s + (np.asarray(outs["cout"], np.int64) << width)
    return got == a + b + cin


def _adder_explain(ins: Mapping[str, int], outs: Mapping[str, int]):
    width = len([k for k in ins if k[0] == "a"])
    a = sum(v << int(k[1:]) for k, v in ins.items() if k[0] == "a")
    b = sum(v << int(k[1:]) for k, v in ins.items() if k[0] == "b")
    s = sum(v << int(k[1:]) for k, v in outs.items() if k[0] == "s")
    got = s + (outs["cout"] << width)
    return {"a + b + cin": a + b + ins["cin"]}, {"s + 2^w*cout": got}


def _array_weight(port: str) -> int:
    # bit_<r>_<c> carries weight 2^c
    return 1 << int(port.rsplit("_", 1)[1])


def _row_weight(port: str) -> int:
    if port[0] == "s":
        return 1 << int(port[1:])
    return 1 << (int(port[1:]) + 1)  # y<c> sits one weight up


def _reducer_check(ins: Columns, outs: Columns) -> np.ndarray:
    return _weighted(outs, _row_weight) == _weighted(ins, _array_weight)


def _reducer_explain(ins: Mapping[str, int], outs: Mapping[str, int]):
    total = sum(v * _array_weight(k) for k, v in ins.items())
    got = sum(v * _row_weight(k) for k, v in outs.items())
    return {"array total": total}, {"two-row total": got}


def _pipeline_weight(port: str) -> int:
    return 1 << int(port[1:])


def _pipeline_check(ins: Columns, outs: Columns) -> np.ndarray:
    return _weighted(outs, _pipeline_weight) == _weighted(ins, _array_weight)


def _pipeline_explain(ins: Mapping[str, int], outs: Mapping[str, int]):
    total = sum(v * _array_weight(k) for k, v in ins.items())
    got = sum(v << int(k[1:]) for k, v in outs.items())
    return {"sum of rows": total}, {"merged value": got}


ORACLES: dict[str, Oracle] = {
    "sorter": Oracle("sorter", _sorter_check, _sorter_explain),
    "half_sorter": Oracle("half_sorter", _half_sorter_check, _half_sorter_explain),
    "full_adder": Oracle("full_adder", _full_adder_check, _full_adder_explain),
    "sfa": Oracle("sfa", _sfa_check, _sfa_explain),
    "compressor72": Oracle("compressor72", _compressor_check, _compressor_explain),
    "adder": Oracle("adder", _adder_check, _adder_explain),
    "reducer": Oracle("reducer", _reducer_check, _reducer_explain),
    "pipeline": Oracle("pipeline", _pipeline_check, _pipeline_explain),
}

_DEFAULT_ORACLE = {
    "sorter2": "sorter",
    "sorting_network4": "sorter",
    "half_sorter4": "half_sorter",
    "traditional_fa": "full_adder",
    "adjusted_fa": "full_adder",
    "sfa": "sfa",
    "compressor72_proposed": "compressor72",
    "compressor72_cascade": "compressor72",
    "kogge_stone": "adder",
    "array_reducer": "reducer",
    "pipeline": "pipeline",
}


def resolve_oracle(circuit: Circuit, oracle: str | Oracle | None) -> Oracle:
    if isinstance(oracle, Oracle):
        return oracle
    if oracle is None:
        oracle = _DEFAULT_ORACLE.get(circuit.name)
        if oracle is None:
            raise NetlistError(
                f"no default oracle for block {circuit.name!r}; pass one explicitly"
            )
    if oracle not in ORACLES:
        raise NetlistError(f"unknown oracle {oracle!r}; known: {sorted(ORACLES)}")
    return ORACLES[oracle]


# ---------------------------------------------------------------------------
# reports
# ---------------------------------------------------------------------------

@dataclass
class VerificationReport:
    block: str
    oracle: str
    mode: str
    inputs: int
    vectors_tried: int
    status: str
    counterexample: dict | None = None
    prng: str | None = None
    seed: int | None = None
    structured_count: int | None = None
    random_count: int | None = None

    @property
    def ok(self) -> bool:
        return self.status == "pass"

    def to_dict(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "block": self.block,
            "oracle": self.oracle,
            "mode": self.mode,
            "inputs": self.inputs,
            "vectors_tried": self.vectors_tried,
            "prng": self.prng,
            "seed": self.seed,
            "structured_count": self.structured_count,
            "random_count": self.random_count,
            "status": self.status,
            "counterexample": self.counterexample,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"


def _counterexample(
    circuit: Circuit,
    oracle: Oracle,
    columns: Columns,
    outputs: Columns,
    local: int,
    index: int | None,
) -> dict:
    vec = {port: int(columns[port][local]) for port in circuit.inputs}
    out = {
        port: int(outputs[port][local])
        for port in circuit.outputs
    }
    expected, actual = oracle.explain(vec, out)
    return {"index": index, "vector": vec, "expected": expected, "actual": actual}


# ---------------------------------------------------------------------------
# verification modes
# ---------------------------------------------------------------------------

def verify_exhaustive(
    circuit: Circuit,
    oracle: str | Oracle | None = None,
    chunk: int = 1 << 16,
) -> VerificationReport:
    """Check every input combination; refuses above 24 inputs."""
    n = len(circuit.inputs)
    if n > EXHAUSTIVE_INPUT_BOUND:
        raise ExhaustiveBoundError(
            f"{circuit.name} has {n} inputs; exhaustive mode stops at "
            f"{EXHAUSTIVE_INPUT_BOUND}. Use random mode with a seed instead."
        )
    orc = resolve_oracle(circuit, oracle)
    failure: dict | None = None
    for offset, columns in iter_exhaustive(circuit, chunk):
        outs = evaluate_batch(circuit, columns)
        ok = orc.check(columns, outs)
        if failure is None and not bool(np.all(ok)):
            local = int(np.argmin(ok))
            failure = _counterexample(
                circuit, orc, columns, outs, local, offset + local
            )
    return VerificationReport(
        block=circuit.name,
        oracle=orc.name,
        mode="exhaustive",
        inputs=n,
        vectors_tried=1 << n,
        status="pass" if failure is None else "fail",
        counterexample=failure,
    )


def structured_rows(circuit: Circuit) -> np.ndarray:
    """All-zeros, all-ones, the one-hot walk, and for array-shaped
    blocks (``bit_<r>_<c>`` inputs) each fully saturated column."""
    n = len(circuit.inputs)
    rows = [np.zeros(n, np.uint8), np.ones(n, np.uint8)]
    rows.extend(np.eye(n, dtype=np.uint8))
    if all(p.startswith("bit_") for p in circuit.inputs):
        cols = sorted({int(p.rsplit("_", 1)[1]) for p in circuit.inputs})
        for c in cols:
            row = np.array(
                [1 if p.endswith(f"_{c}") else 0 for p in circuit.inputs],
                np.uint8,
            )
            rows.append(row)
    return np.stack(rows)


def verify_random(
    circuit: Circuit,
    oracle: str | Oracle | None = None,
    seed: int = 0,
    count: int = 1000,
    structured: bool = True,
) -> VerificationReport:
    """Structured suite plus ``count`` seeded random vectors."""
    if count < 0:
        raise NetlistError("count must be >= 0")
    orc = resolve_oracle(circuit, oracle)
    n = len(circuit.inputs)
    parts = []
    if structured:
        parts.append(structured_rows(circuit))
    rng = np.random.default_rng(seed)
    if count:
        parts.append(rng.integers(0, 2, size=(count, n), dtype=np.uint8))
    matrix = np.concatenate(parts) if parts else np.zeros((0, n), np.uint8)
    columns = {port: matrix[:, i] for i, port in enumerate(circuit.inputs)}
    outs = evaluate_batch(circuit, columns)
    ok = orc.check(columns, outs)
    failure = None
    if not bool(np.all(ok)):
        local = int(np.argmin(ok))
        failure = _counterexample(circuit, orc, columns, outs, local, local)
    n_structured = len(parts[0]) if structured else 0
    return VerificationReport(
        block=circuit.name,
        oracle=orc.name,
        mode="random",
        inputs=n,
        vectors_tried=len(matrix),
        status="pass" if failure is None else "fail",
        counterexample=failure,
        prng=PRNG_NAME,
        seed=seed,
        structured_count=n_structured,
        random_count=count,
    )


def verify_cout_independence(circuit: Circuit) -> VerificationReport:
    """Co1 and Co2 must not depend on the carry-ins.

    Sweeps all 128 x-vectors against all four (Ci1, Ci2) pairs and
    compares the column carry-outs across pairs.
    """
    need_in = tuple(f"x{i}" for i in range(1, 8)) + ("Ci1", "Ci2")
    missing = [p for p in need_in if p not in circuit.inputs]
    missing += [p for p in ("Co1", "Co2") if p not in circuit.outputs]
    if missing:
        raise NetlistError(
            f"{circuit.name} lacks compressor ports: {missing}"
        )
    idx = np.arange(512, dtype=np.int64)
    columns = {p: np.zeros(512, np.uint8) for p in circuit.inputs}
    for j in range(7):
        columns[f"x{j + 1}"] = (((idx >> 2) >> (6 - j)) & 1).astype(np.uint8)
    columns["Ci1"] = ((idx >> 1) & 1).astype(np.uint8)
    columns["Ci2"] = (idx & 1).astype(np.uint8)
    outs = evaluate_batch(circuit, columns)

    co = {k: np.asarray(outs[k]).reshape(128, 4) for k in ("Co1", "Co2")}
    failure = None
    for port in ("Co1", "Co2"):
        diff = co[port] != co[port][:, :1]
        if bool(np.any(diff)):
            x_idx, pair = (int(v) for v in np.argwhere(diff)[0])
            vec = {f"x{j + 1}": (x_idx >> (6 - j)) & 1 for j in range(7)}
            failure = {
                "output": port,
                "x_vector": vec,
                "carry_in_a": [0, 0],
                "carry_in_b": [pair >> 1, pair & 1],
                "value_a": int(co[port][x_idx, 0]),
                "value_b": int(co[port][x_idx, pair]),
            }
            break
    return VerificationReport(
        block=circuit.name,
        oracle="cin-independence",
        mode="cin-independence",
        inputs=len(circuit.inputs),
        vectors_tried=512,
        status="pass" if failure is None else "fail",
        counterexample=failure,
    )
