"""
Reducing a 7x8 bit array
========================

Seven 8-bit rows enter, one compressor per column folds them into two
rows (sums plus shifted carries), and a parallel-prefix adder merges
those into a single binary number.  The pipeline block wires the whole
thing; the checks below confirm the output equals the integer sum of
the seven rows.
"""

import numpy as np

from gatelab import evaluate, evaluate_batch, pipeline, verify_random

pipe = pipeline(cols=8)
print(f"inputs: {len(pipe.inputs)} (7 rows x 8 columns)")
print(f"outputs: {list(pipe.outputs)}")
print(f"cells: {len(pipe.cells)}")
print()

# all rows all-ones: seven times 255 is 1785
ones = evaluate(pipe, {name: 1 for name in pipe.inputs})
total = sum(ones[f"s{k}"] << k for k in range(11))
print(f"7 x 0b11111111 = {total} (expect {7 * 255})")

# one random batch, checked directly against integer row sums
rng = np.random.default_rng(42)
stim = {name: rng.integers(0, 2, size=5, dtype=np.uint8) for name in pipe.inputs}
out = evaluate_batch(pipe, stim)
got = sum(out[f"s{k}"].astype(np.int64) << k for k in range(11))
want = sum(
    stim[f"bit_{r}_{c}"].astype(np.int64) << c
    for r in range(7)
    for c in range(8)
)
print(f"5 random arrays match their row sums: {bool(np.array_equal(got, want))}")
print()

# the packaged checker runs a structured suite first, then the seeded
# random vectors, for either compressor flavour
for comp in ("compressor72_proposed", "compressor72_cascade"):
    report = verify_random(pipeline(cols=8, compressor=comp), seed=7, count=20_000)
    print(
        f"{comp}: {report.status} ({report.structured_count} structured"
        f" + {report.random_count} random vectors)"
    )
