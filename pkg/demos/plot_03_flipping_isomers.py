"""
Flipping a chain at an interior polygon
=======================================

Cutting the two sides of an interior polygon and reconnecting them crosswise
gives another chain with the same number of vertices and edges.  The change in
Kirchhoff index can be predicted from resistances measured inside the two
halves alone.
"""

from polykirchhoff import kirchhoff_index, parse_spec
from polykirchhoff.chains import build_chain, format_spec
from polykirchhoff.isomer import balance_path, flip_chain, kf_difference, split

spec = parse_spec("8:6:0,4,0,4")
original = build_chain(spec).to_network()
image, flipped, cut = flip_chain(spec, polygon_index=3, t=2)
print(f"flip {format_spec(spec)} at polygon 3 -> {format_spec(image)}")
print("cut edges:", cut.cut_edges)

# Prediction from the two halves versus the direct difference.
left, right = split(original, cut)
predicted = kf_difference(left, cut.component1_terminals, right, cut.component2_terminals)
direct = kirchhoff_index(original) - kirchhoff_index(flipped)
print(f"predicted Kf(S) - Kf(T) = {predicted:.10f}")
print(f"direct    Kf(S) - Kf(T) = {direct:.10f}")

# Balancing moves push each entry towards the middle; the index climbs at
# every step.
for step in balance_path(spec):
    print(f"  {format_spec(step):>14}  Kf = {kirchhoff_index(build_chain(step)):.6f}")
