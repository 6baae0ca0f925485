"""Circuit evaluation: single vectors and vectorized batches.

The batch engine keeps one uint8 numpy array of 0/1 values per net and
walks the cells once, so exhaustive sweeps and large random samples are
bitwise-parallel across vectors rather than per-vector Python loops.

Exhaustive enumeration order is documented and relied on elsewhere:
vector index v assigns input i (in declared order) the bit
``(v >> (n - 1 - i)) & 1``, so ascending index is ascending
lexicographic order over input tuples.
"""

from __future__ import annotations

from typing import Iterable, Iterator, Mapping

import numpy as np

from .core import Circuit, GateKind, NetlistError


class SimulationError(NetlistError):
    """Bad stimulus for an evaluation call."""


def _check_vector(circuit: Circuit, vector: Mapping[str, int]) -> None:
    missing = [p for p in circuit.inputs if p not in vector]
    extra = [p for p in vector if p not in circuit.inputs]
    if missing or extra:
        raise SimulationError(
            f"{circuit.name}: stimulus does not match inputs "
            f"(missing {missing}, unexpected {extra})"
        )
    for port, value in vector.items():
        if value not in (0, 1):
            raise SimulationError(f"{circuit.name}: {port}={value!r} is not a bit")


def evaluate(
    circuit: Circuit,
    vector: Mapping[str, int],
    probe: Iterable[str] = (),
) -> dict[str, int]:
    """Evaluate one input vector; returns outputs (plus probed nets)."""
    _check_vector(circuit, vector)
    values: list[int] = [0] * circuit.num_nets
    for i, port in enumerate(circuit.inputs):
        values[i] = int(vector[port])
    for cell in circuit.cells:
        ins = cell.ins
        if cell.kind is GateKind.AND2:
            out = values[ins[0]] & values[ins[1]]
        elif cell.kind is GateKind.OR2:
            out = values[ins[0]] | values[ins[1]]
        elif cell.kind is GateKind.NAND2:
            out = 1 - (values[ins[0]] & values[ins[1]])
        elif cell.kind is GateKind.NOR2:
            out = 1 - (values[ins[0]] | values[ins[1]])
        else:
            out = 1 - values[ins[0]]
        values[cell.out] = out
    result = {
        port: values[net] for port, net in zip(circuit.outputs, circuit.output_nets)
    }
    for name in probe:
        result[name] = values[circuit.net(name)]
    return result


def evaluate_batch(
    circuit: Circuit,
    columns: Mapping[str, np.ndarray],
    probe: Iterable[str] = (),
) -> dict[str, np.ndarray]:
    """Evaluate many vectors at once.

    ``columns`` maps every input port to a uint8 array of 0/1 values;
    all arrays must share one length.  Returns output (and probed)
    columns of the same length.
    """
    missing = [p for p in circuit.inputs if p not in columns]
    extra = [p for p in columns if p not in circuit.inputs]
    if missing or extra:
        raise SimulationError(
            f"{circuit.name}: stimulus does not match inputs "
            f"(missing {missing}, unexpected {extra})"
        )
    lengths = {len(col) for col in columns.values()}
    if len(lengths) != 1:
        raise SimulationError("input columns differ in length")

    values: list[np.ndarray | None] = [None] * circuit.num_nets
    for i, port in enumerate(circuit.inputs):
        col = np.asarray(columns[port], dtype=np.uint8)
        if col.size and int(col.max()) > 1:
            raise SimulationError(f"{circuit.name}: column {port} is not 0/1")
        values[i] = col
    for cell in circuit.cells:
        a = values[cell.ins[0]]
        if cell.kind is GateKind.AND2:
            out = a & values[cell.ins[1]]
        elif cell.kind is GateKind.OR2:
            out = a | values[cell.ins[1]]
        elif cell.kind is GateKind.NAND2:
            out = (a & values[cell.ins[1]]) ^ 1
        elif cell.kind is GateKind.NOR2:
            out = (a | values[cell.ins[1]]) ^ 1
        else:
            out = a ^ 1
        values[cell.out] = out
    result = {
        port: values[net] for port, net in zip(circuit.outputs, circuit.output_nets)
    }
    for name in probe:
        result[name] = values[circuit.net(name)]
    return result  # type: ignore[return-value]


def exhaustive_columns(
    n_inputs: int, start: int, stop: int
) -> list[np.ndarray]:
    """Input columns for vector indices [start, stop) in enumeration order."""
    idx = np.arange(start, stop, dtype=np.int64)
    return [
        ((idx >> (n_inputs - 1 - i)) & 1).astype(np.uint8) for i in range(n_inputs)
    ]


def iter_exhaustive(
    circuit: Circuit, chunk: int = 1 << 16
) -> Iterator[tuple[int, dict[str, np.ndarray]]]:
    """Yield (offset, input columns) chunks covering all 2^n vectors."""
    n = len(circuit.inputs)
    total = 1 << n
    for start in range(0, total, chunk):
        stop = min(start + chunk, total)
        cols = exhaustive_columns(n, start, stop)
        yield start, {port: cols[i] for i, port in enumerate(circuit.inputs)}


def vector_at(circuit: Circuit, index: int) -> dict[str, int]:
    """The input vector at an enumeration index (see module docstring)."""
    n = len(circuit.inputs)
    if not 0 <= index < (1 << n):
        raise SimulationError(
            f"{circuit.name}: index {index} outside [0, 2^{n})"
        )
    return {
        port: (index >> (n - 1 - i)) & 1 for i, port in enumerate(circuit.inputs)
    }
