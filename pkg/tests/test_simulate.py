"""Scalar and vectorized evaluation, enumeration order, stimulus checks."""

from __future__ import annotations

import itertools

import numpy as np
import pytest

from gatelab.core import NetlistError
from gatelab.generators import sfa, sorter2, traditional_fa
from gatelab.simulate import (
    SimulationError,
    evaluate,
    evaluate_batch,
    exhaustive_columns,
    iter_exhaustive,
    vector_at,
)


def test_scalar_and_batch_agree():
    c = sfa()
    cols = exhaustive_columns(4, 0, 16)
    batch = evaluate_batch(c, dict(zip(c.inputs, cols)))
    for k, bits in enumerate(itertools.product((0, 1), repeat=4)):
        single = evaluate(c, dict(zip(c.inputs, bits)))
        assert {p: int(batch[p][k]) for p in c.outputs} == single


def test_probe_exposes_internal_nets():
    c = sfa()
    vec = {"i1": 1, "i2": 0, "i3": 1, "i4": 0}
    out = evaluate(c, vec, probe=["sort/upper/hi"])
    assert out["sort/upper/hi"] == 1  # the overall max of the four bits
    batch = evaluate_batch(
        c,
        {p: np.array([vec[p], 0], np.uint8) for p in c.inputs},
        probe=["sort/upper/hi"],
    )
    assert batch["sort/upper/hi"].tolist() == [1, 0]


def test_probe_unknown_net_raises():
    c = sorter2()
    with pytest.raises(NetlistError):
        evaluate(c, {"In1": 0, "In2": 0}, probe=["ghost"])


def test_stimulus_must_match_inputs_exactly():
    c = sorter2()
    with pytest.raises(SimulationError):
        evaluate(c, {"In1": 0})
    with pytest.raises(SimulationError):
        evaluate(c, {"In1": 0, "In2": 0, "In3": 0})
    with pytest.raises(SimulationError):
        evaluate(c, {"In1": 0, "In2": 2})


def test_batch_rejects_ragged_or_non_bit_columns():
    c = sorter2()
    with pytest.raises(SimulationError):
        evaluate_batch(
            c,
            {"In1": np.zeros(3, np.uint8), "In2": np.zeros(4, np.uint8)},
        )
    with pytest.raises(SimulationError):
        evaluate_batch(
            c,
            {"In1": np.array([0, 2], np.uint8), "In2": np.zeros(2, np.uint8)},
        )


def test_enumeration_is_lexicographic_first_input_most_significant():
    cols = exhaustive_columns(3, 0, 8)
    matrix = np.stack(cols, axis=1).tolist()
    assert matrix == [list(bits) for bits in itertools.product((0, 1), repeat=3)]
    assert vector_at(traditional_fa(), 5) == {"A": 1, "B": 0, "C": 1}


def test_exhaustive_chunks_cover_the_space_in_order():
    c = sfa()
    offsets = []
    seen = []
    for offset, columns in iter_exhaustive(c, chunk=4):
        offsets.append(offset)
        seen.append(np.stack([columns[p] for p in c.inputs], axis=1))
    assert offsets == [0, 4, 8, 12]
    whole = np.concatenate(seen).tolist()
    assert whole == [list(b) for b in itertools.product((0, 1), repeat=4)]


def test_vector_at_bounds():
    c = sorter2()
    with pytest.raises(SimulationError):
        vector_at(c, 4)
    with pytest.raises(SimulationError):
        vector_at(c, -1)
