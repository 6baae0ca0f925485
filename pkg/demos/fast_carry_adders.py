"""
Carry generation from pre-sorted inputs
=======================================

A plain full adder computes its carry as majority(A, B, C), which costs
three gate stages.  If the three addend bits arrive already sorted
(X >= Y >= Z), the carry collapses to just Y and the sum to X and (not
Y or Z): two stages for the carry.  The sfa block bundles a half sorter
with that trick, taking four raw bits and emitting Carry, Sum and the
leftover middle bit W so that 2*Carry + Sum + W equals the input count.
"""

import itertools

from gatelab import adjusted_fa, area, arrivals, evaluate, sfa, traditional_fa

plain = traditional_fa()
fast = sfa()

print("output arrival stages (unit delay, inverters free)")
for block in (plain, fast):
    profile = arrivals(block)
    stages = {p: profile.output(p) for p in block.outputs}
    print(f"  {block.name}: {stages}")
print()

# the weighted identity holds on every raw input vector
print("sfa on all 16 raw vectors: 2*Carry + Sum + W == i1+i2+i3+i4")
bad = 0
for bits in itertools.product((0, 1), repeat=4):
    out = evaluate(fast, dict(zip(fast.inputs, bits)))
    if 2 * out["Carry"] + out["Sum"] + out["W"] != sum(bits):
        bad += 1
print(f"  violations: {bad}")
print()

# the adjusted full adder keeps the plain interface but restructures
# the sum so the C input touches only the last two stages
adj = adjusted_fa()
same = all(
    evaluate(adj, v) == evaluate(plain, v)
    for v in (
        dict(zip("ABC", bits)) for bits in itertools.product((0, 1), repeat=3)
    )
)
print(f"adjusted_fa matches traditional_fa on all 8 vectors: {same}")

print("cell budgets")
for block in (plain, adj, fast):
    a = area(block)
    print(f"  {block.name}: {a.basic} gates + {a.inverters} inverters")
