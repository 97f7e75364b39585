"""
Resistance distances, two ways
==============================

Effective resistances on a chain can be read off a factorized grounded
Laplacian, or obtained by sweeping the chain with series and delta-wye
rewrites until only the last polygon is left.  Here both are run on a
randomly weighted chain and compared.
"""

import numpy as np

from polykirchhoff import LaplacianFactor, build_chain, fan_reduce, parse_spec

rng = np.random.default_rng(7)
spec = parse_spec("7:4:1,2")
g = build_chain(spec)
weights = {e: float(r) for e, r in zip(g.edges, rng.uniform(0.1, 10.0, len(g.edges)))}

# Laplacian route: one Cholesky factor answers every pair.
factor = LaplacianFactor(g.to_network(weights))

# Rewriting route: the source z sits on the first polygon's free arc.
z = g.end_arc()[2]
params, trace = fan_reduce(spec, weights=weights, z=z)
print(f"{len(trace.steps)} rewrite steps; star arms theta1={params.theta1:.4f}, theta2={params.theta2:.4f}")

worst = 0.0
for x, r in params.resistances().items():
    direct = factor.resistance(z, x)
    worst = max(worst, abs(r - direct))
    print(f"  Omega({z}, {x:2d}) = {r:.10f}   Laplacian {direct:.10f}")
print(f"largest disagreement: {worst:.2e}")

# Every intermediate network in the trace keeps the terminal resistance.
*_, net = trace.replay()
print("resistance in the final network:", LaplacianFactor(net).resistance(z, g.cut_top[-1]))
print("resistance in the original:     ", factor.resistance(z, g.cut_top[-1]))
