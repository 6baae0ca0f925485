"""
Getting netlists out
====================

Three renderers: a JSON document that parses back into an identical
circuit, a structural Verilog module built from gate primitives, and a
Graphviz graph that can carry per-net stage annotations.
"""

from gatelab import (
    arrivals,
    from_json,
    sfa,
    to_dot,
    to_json,
    to_structural_hdl,
)

block = sfa()

# JSON round trip is exact: same bytes, same behaviour
text = to_json(block)
again = from_json(text)
print(f"JSON round trip stable: {to_json(again) == text}")
print(text.splitlines()[1].strip(), "...")
print()

# structural Verilog, one primitive instance per cell
print(to_structural_hdl(block))

# the DOT output can fold a timing profile into the node labels
dot = to_dot(block, annotate=arrivals(block))
stamped = [line.strip() for line in dot.splitlines() if "@2" in line]
print("nodes that settle at stage 2:")
for line in stamped:
    print(f"  {line}")
