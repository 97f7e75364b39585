import itertools
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from polykirchhoff.chains import ChainSpec, build_chain
from polykirchhoff.errors import DisconnectedNetworkError
from polykirchhoff.resistance import (
    LaplacianFactor,
    WeightedNetwork,
    effective_resistance,
    kirchhoff_index,
    read_network,
    resistance_result,
    vertex_resistance_sum,
    wiener_index,
)

from conftest import chain_specs, pinv_resistance

EDGE = WeightedNetwork.unit(2, [(0, 1)])
P3 = WeightedNetwork.unit(3, [(0, 1), (1, 2)])  # a=0, u=1, v=2
C4 = WeightedNetwork.unit(4, [(0, 1), (1, 2), (2, 3), (3, 0)])


def cycle(n):
    return WeightedNetwork.unit(n, [(i, (i + 1) % n) for i in range(n)])


def brute_cycle_kf(n):
    # arc d and n - d in parallel
    return sum(d * (n - d) / n for i, j in itertools.combinations(range(n), 2) for d in [j - i])


def brute_wiener(n, pairs):
    inf = float("inf")
    d = [[0 if i == j else inf for j in range(n)] for i in range(n)]
    for u, v in pairs:
        d[u][v] = d[v][u] = 1
    for m in range(n):
        for i in range(n):
            for j in range(n):
                d[i][j] = min(d[i][j], d[i][m] + d[m][j])
    return sum(d[i][j] for i, j in itertools.combinations(range(n), 2))


class TestEffectiveResistance:
    def test_examples(self):
        assert effective_resistance(EDGE, 0, 1) == pytest.approx(1, abs=1e-12)
        assert effective_resistance(C4, 0, 1) == pytest.approx(0.75, abs=1e-12)
        assert effective_resistance(C4, 0, 2) == pytest.approx(1.0, abs=1e-12)

    def test_rejects_same_vertex(self):
        with pytest.raises(ValueError):
            effective_resistance(C4, 1, 1)

    def test_disconnected(self):
        net = WeightedNetwork.unit(4, [(0, 1), (2, 3)])
        with pytest.raises(DisconnectedNetworkError):
            effective_resistance(net, 0, 3)

    def test_invalid_networks(self):
        with pytest.raises(ValueError, match="self-loop"):
            WeightedNetwork.unit(2, [(0, 0)])
        with pytest.raises(ValueError, match="non-positive"):
            WeightedNetwork(range(2), [(0, 1, 0.0)])

    def test_parallel_edges_fold(self):
        net = WeightedNetwork(range(2), [(0, 1, 2.0), (0, 1, 3.0)])
        assert effective_resistance(net, 0, 1) == pytest.approx(1.2, rel=1e-12)

    @given(chain_specs(h=(1, 5)), st.randoms(use_true_random=False))
    @settings(max_examples=40, deadline=None)
    def test_matches_pseudoinverse(self, spec, rnd):
        g = build_chain(spec)
        triples = [(u, v, rnd.uniform(0.1, 10)) for u, v in g.edges]
        net = WeightedNetwork(range(g.n), triples)
        factor = LaplacianFactor(net)
        oracle = pinv_resistance(g.n, triples)
        np.testing.assert_allclose(factor.matrix, oracle, rtol=1e-10, atol=1e-10)
        u, v = rnd.sample(range(g.n), 2)
        assert factor.resistance(u, v) == pytest.approx(oracle[u, v], rel=1e-10)


class TestKirchhoff:
    def test_examples(self):
        assert kirchhoff_index(EDGE) == pytest.approx(1, abs=1e-12)
        assert kirchhoff_index(P3) == pytest.approx(4, abs=1e-12)
        assert brute_cycle_kf(5) == pytest.approx(10)
        assert kirchhoff_index(cycle(5)) == pytest.approx(10, abs=1e-10)

    @pytest.mark.parametrize("n", range(3, 16))
    def test_cycle_closed_form(self, n):
        assert kirchhoff_index(cycle(n)) == pytest.approx((n**3 - n) / 12, abs=1e-9)
        assert kirchhoff_index(cycle(n), exact=True) == Fraction(n**3 - n, 12)

    def test_exact_matches_float(self):
        g = build_chain(ChainSpec(6, 4, (0, 2)))
        exact = kirchhoff_index(g, exact=True)
        assert isinstance(exact, Fraction)
        assert float(exact) == pytest.approx(kirchhoff_index(g), abs=1e-9)

    def test_result_object(self):
        res = resistance_result(C4)
        assert res.kf == pytest.approx(5.0)
        assert res[(0, 2)] == pytest.approx(1.0)
        assert res.pairs[(0, 1)] == pytest.approx(0.75)


class TestWiener:
    def test_examples(self):
        assert wiener_index(EDGE) == 1
        assert wiener_index(P3) == 4
        assert brute_wiener(5, [(i, (i + 1) % 5) for i in range(5)]) == 15
        assert wiener_index(cycle(5)) == 15

    @given(chain_specs(h=(1, 5)))
    @settings(max_examples=30, deadline=None)
    def test_matches_floyd_warshall(self, spec):
        g = build_chain(spec)
        assert wiener_index(g) == brute_wiener(g.n, g.edges)


class TestVertexSum:
    def test_examples(self):
        assert vertex_resistance_sum(P3, 1) == pytest.approx(2)
        assert vertex_resistance_sum(P3, 2) == pytest.approx(3)
        for v in range(4):
            assert vertex_resistance_sum(C4, v) == pytest.approx(2.5)


class TestMetricProperties:
    @given(chain_specs(), st.randoms(use_true_random=False))
    @settings(max_examples=40, deadline=None)
    def test_metric_axioms(self, spec, rnd):
        g = build_chain(spec)
        omega = LaplacianFactor(g.to_network()).matrix
        assert np.array_equal(omega, omega.T)
        assert (omega >= 0).all()
        off = omega[~np.eye(g.n, dtype=bool)]
        assert (off > 1e-9).all()
        for _ in range(50):
            a, b, x = (rnd.randrange(g.n) for _ in range(3))
            assert omega[a, x] + omega[x, b] >= omega[a, b] - 1e-9

    @given(chain_specs())
    @settings(max_examples=40, deadline=None)
    def test_foster_and_dominance(self, spec):
        g = build_chain(spec)
        factor = LaplacianFactor(g.to_network())
        omega = factor.matrix
        assert sum(omega[u, v] for u, v in g.edges) == pytest.approx(g.n - 1, abs=1e-8)
        for s in range(g.n):
            dist = g.distances_from(s)
            assert all(omega[s, t] <= dist[t] + 1e-12 for t in range(g.n))
        assert factor.kirchhoff() < wiener_index(g) - 1e-9

    @given(chain_specs(h=(2, 6)))
    @settings(max_examples=40, deadline=None)
    def test_cut_vertex_additivity(self, spec):
        # hang a pendant path off a_1; a_1 separates the path's end from the chain
        g = build_chain(spec)
        a1 = g.cut_top[0]
        tail = [(a1, g.n), (g.n, g.n + 1)]
        net = WeightedNetwork.unit(g.n + 2, list(g.edges) + tail)
        f = LaplacianFactor(net)
        for v in range(g.n):
            assert f.resistance(g.n + 1, v) == pytest.approx(
                f.resistance(g.n + 1, a1) + f.resistance(a1, v), abs=1e-9
            )


class TestIO:
    def test_edge_list_with_weights(self):
        net = read_network("0 1 2.0\n1 2\n# comment\n2 0 0.5\n")
        assert net.n == 3 and net.edges[0][2] == 2.0 and net.edges[1][2] == 1

    def test_json(self):
        g = build_chain(ChainSpec(5, 2))
        net = read_network(g.to_json())
        assert net.n == g.n and net.edge_set() == set(g.edges)
        again = read_network(net.to_json())
        assert again.edges == tuple((u, v, float(r)) for u, v, r in net.edges)
