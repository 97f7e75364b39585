"""
Building polygonal chains
=========================

A chain of ``h`` k-gons is encoded by ``k:h:w``, where each ``w_i`` counts
the vertices an interior polygon places on the top side.  This demo builds a
few chains, prints their sizes and shows how relabelled copies collapse onto
one canonical encoding.
"""

from polykirchhoff import build_chain, canonicalize, parse_spec
from polykirchhoff.chains import format_spec, helicene, linear, zigzag

# A hexagonal chain of five rings with a mixed top/bottom pattern.
spec = parse_spec("6:5:0,2,1")
g = build_chain(spec)
print(f"{format_spec(spec)}: n={g.n} vertices, m={len(g.edges)} edges")

# Each polygon is stored as a top path and a bottom path between its
# shared edges, so the ring itself is easy to recover.
for p in range(spec.h):
    print(f"  polygon {p + 1}: {g.polygon(p)}")

# Reversing the chain or swapping top and bottom gives the same graph.
# The canonical form is the lexicographically smallest of the four codes.
for variant in (spec, spec.reverse(), spec.complement(), spec.reverse().complement()):
    print(f"  {format_spec(variant):>12} -> {format_spec(canonicalize(variant))}")

# The named families used by the extremal search.
print("helicene:", format_spec(helicene(6, 5)))
print("linear:  ", format_spec(linear(6, 5)))
print("zigzag:  ", format_spec(zigzag(7, 5)))
