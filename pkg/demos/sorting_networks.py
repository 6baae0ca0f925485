"""
Bit sorting with compare-exchange cells
=======================================

A compare-exchange over two bits is just (OR, AND): the OR is the max,
the AND is the min.  Wiring a few of them into a network sorts any bit
vector, and on the way down the network pins useful facts (the global
max, the global min) after very few gate stages.
"""

import itertools

from gatelab import (
    arrivals,
    evaluate,
    half_sorter4,
    sorter2,
    sorting_network4,
)

# one compare-exchange: two gates, one stage
cell = sorter2()
for a, b in itertools.product((0, 1), repeat=2):
    out = evaluate(cell, {"In1": a, "In2": b})
    print(f"sorter2({a}, {b}) -> max={out['Out1']} min={out['Out2']}")
print(f"cells: {len(cell.cells)}, depth: {arrivals(cell).depth}")
print()

# the half sorter: two layers, fixes the max and the min of four bits,
# leaves the middle pair in arbitrary order
half = half_sorter4()
out = evaluate(half, {"i1": 0, "i2": 1, "i3": 1, "i4": 0})
print("half_sorter4(0,1,1,0) ->", [out[p] for p in half.outputs])
print(f"depth: {arrivals(half).depth} stages")
print()

# the full four-input network adds one more compare-exchange; every
# input multiset comes out fully sorted
net = sorting_network4()
ok = True
for bits in itertools.product((0, 1), repeat=4):
    out = evaluate(net, dict(zip(net.inputs, bits)))
    got = [out[p] for p in net.outputs]
    ok = ok and got == sorted(bits, reverse=True)
print(f"sorting_network4 sorts all 16 vectors: {ok}")

# the outer outputs settle a stage earlier than the middle ones
profile = arrivals(net)
for port in net.outputs:
    print(f"  {port} ready after {profile.output(port)} stages")
