"""Series, parallel and delta-wye rewriting of resistor networks.

The public rewrite functions are pure: they copy the network, apply one
rule and return the result.  :func:`fan_reduce` sweeps a chain from its
first polygon to its last, collapsing each polygon's two sides in series and
turning the triangle at the next shared edge into a star, until only the last
polygon and a path back to the source vertex remain.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Mapping, Sequence

from .chains import ChainSpec, LabeledChainGraph, build_chain
from .errors import RuleNotApplicable
from .resistance import WeightedNetwork

__all__ = [
    "ReductionStep",
    "ReductionTrace",
    "FanParameters",
    "series_reduce",
    "parallel_reduce",
    "delta_y_transform",
    "delta_y_weights",
    "fan_reduce",
    "fan_difference",
    "last_polygon_sums",
    "ordered_last_pairs",
]


@dataclass(frozen=True)
class ReductionStep:
    rule: str  # "series" | "parallel" | "delta_y"
    vertices: tuple[int, ...]
    weights: tuple

    def to_json(self) -> str:
        return json.dumps(
            {"rule": self.rule, "vertices": list(self.vertices), "weights": [float(w) for w in self.weights]}
        )


@dataclass
class ReductionTrace:
    initial_network: WeightedNetwork
    steps: list[ReductionStep] = field(default_factory=list)
    final_network: WeightedNetwork | None = None

    def to_json_lines(self) -> str:
        return "".join(step.to_json() + "\n" for step in self.steps)

    def replay(self) -> Iterator[WeightedNetwork]:
        """Re-apply each step with the pure rewrite functions."""
        net = self.initial_network
        for step in self.steps:
            if step.rule == "series":
                net = series_reduce(net, step.vertices)
            elif step.rule == "parallel":
                net = parallel_reduce(net, *step.vertices)
            else:
                i, j, k, o = step.vertices
                net = delta_y_transform(net, i, j, k, center=o)
            yield net


class _Work:
    """Mutable multigraph used while rewriting."""

    def __init__(self, net: WeightedNetwork):
        self.vertices = list(net.vertices)
        self.edges: dict[int, list] = {}
        self.incident: dict[int, set[int]] = {v: set() for v in net.vertices}
        self._next_edge = 0
        for u, v, r in net.edges:
            self.add_edge(u, v, r)

    def add_edge(self, u, v, r):
        eid = self._next_edge
        self._next_edge += 1
        self.edges[eid] = [u, v, r]
        self.incident[u].add(eid)
        self.incident[v].add(eid)
        return eid

    def remove_edge(self, eid):
        u, v, _ = self.edges.pop(eid)
        self.incident[u].discard(eid)
        self.incident[v].discard(eid)

    def between(self, u, v) -> list[int]:
        return sorted(e for e in self.incident[u] if v in self.edges[e][:2] and u != v)

    def weight(self, u, v):
        ids = self.between(u, v)
        if len(ids) != 1:
            raise RuleNotApplicable(f"expected one edge between {u} and {v}, found {len(ids)}")
        return self.edges[ids[0]][2]

    def network(self) -> WeightedNetwork:
        return WeightedNetwork(self.vertices, [tuple(e) for _, e in sorted(self.edges.items())])

    def series(self, path: Sequence[int]) -> ReductionStep | None:
        path = list(path)
        if len(path) < 2:
            raise RuleNotApplicable("a series path needs at least two vertices")
        if len(set(path)) != len(path):
            raise RuleNotApplicable("series path repeats a vertex")
        if len(path) == 2:
            self.weight(path[0], path[1])
            return None
        for x in path[1:-1]:
            if len(self.incident[x]) != 2:
                raise RuleNotApplicable(
                    f"interior vertex {x} has degree {len(self.incident[x])}, series needs 2"
                )
        total = 0
        for x, y in zip(path, path[1:]):
            ids = self.between(x, y)
            if len(ids) != 1:
                raise RuleNotApplicable(f"no unique edge {x}-{y} along the series path")
            total = total + self.edges[ids[0]][2]
            self.remove_edge(ids[0])
        for x in path[1:-1]:
            self.vertices.remove(x)
            del self.incident[x]
        self.add_edge(path[0], path[-1], total)
        return ReductionStep("series", tuple(path), (total,))

    def parallel(self, u, v) -> ReductionStep:
        ids = self.between(u, v)
        if len(ids) < 2:
            raise RuleNotApplicable(f"{len(ids)} edge(s) between {u} and {v}, parallel needs 2+")
        conductance = sum(1 / self.edges[e][2] for e in ids)
        for e in ids:
            self.remove_edge(e)
        r = 1 / conductance
        self.add_edge(u, v, r)
        return ReductionStep("parallel", (u, v), (r,))

    def delta_y(self, i, j, k, center=None) -> list[ReductionStep]:
        steps = []
        if len({i, j, k}) != 3:
            raise RuleNotApplicable("delta-wye needs three distinct vertices")
        for x, y in ((i, j), (i, k), (j, k)):
            count = len(self.between(x, y))
            if count == 0:
                raise RuleNotApplicable(f"triangle edge {x}-{y} missing")
            if count > 1:
                steps.append(self.parallel(x, y))
        r_ij, r_ik, r_jk = self.weight(i, j), self.weight(i, k), self.weight(j, k)
        r_io, r_jo, r_ko = delta_y_weights(r_ij, r_ik, r_jk)
        for x, y in ((i, j), (i, k), (j, k)):
            self.remove_edge(self.between(x, y)[0])
        if center is None:
            center = max(self.vertices) + 1
        if center in self.incident:
            raise RuleNotApplicable(f"center label {center} already in use")
        self.vertices.append(center)
        self.incident[center] = set()
        self.add_edge(i, center, r_io)
        self.add_edge(j, center, r_jo)
        self.add_edge(k, center, r_ko)
        steps.append(ReductionStep("delta_y", (i, j, k, center), (r_io, r_jo, r_ko)))
        return steps


def delta_y_weights(r_ij, r_ik, r_jk):
    """Star arms ``(R_io, R_jo, R_ko)`` equivalent to a resistor triangle."""
    total = r_ij + r_ik + r_jk
    return r_ij * r_ik / total, r_ij * r_jk / total, r_ik * r_jk / total


def series_reduce(net: WeightedNetwork, path_vertices: Sequence[int], terminals=()) -> WeightedNetwork:
    """Replace a path whose interior vertices all have degree 2 by one edge."""
    blocked = set(path_vertices[1:-1]) & set(terminals)
    if blocked:
        raise RuleNotApplicable(f"terminal vertices {sorted(blocked)} inside series path")
    work = _Work(net)
    work.series(path_vertices)
    return work.network()


def parallel_reduce(net: WeightedNetwork, u: int, v: int) -> WeightedNetwork:
    work = _Work(net)
    work.parallel(u, v)
    return work.network()


def delta_y_transform(net: WeightedNetwork, i: int, j: int, k: int, center: int | None = None) -> WeightedNetwork:
    """Replace triangle ``ijk`` by a star whose new center gets label ``center``.

    Parallel edges along the triangle are folded first.  The default center
    label is one more than the largest label in use.
    """
    work = _Work(net)
    work.delta_y(i, j, k, center)
    return work.network()


@dataclass(frozen=True)
class FanParameters:
    """Outcome of sweeping a chain down to its last polygon.

    ``theta1`` / ``theta2`` are the star arms from the final center to
    ``a_{h-1}`` / ``b_{h-1}``; ``prefix_resistance`` is the resistance from
    the source to that center.  ``arc`` lists the last polygon's free arc
    from ``a_{h-1}`` to ``b_{h-1}`` with cumulative arc resistance.
    """

    theta1: float
    theta2: float
    prefix_resistance: float
    source: int
    center: int
    arc: tuple[tuple[int, float], ...]

    def resistance_to(self, x: int):
        """Resistance from the source to vertex ``x`` of the last polygon."""
        cumulative = dict(self.arc)
        if x not in cumulative:
            raise ValueError(f"vertex {x} is not on the last polygon's arc")
        d = cumulative[x]
        length = self.arc[-1][1]
        up = self.theta1 + d
        down = self.theta2 + length - d
        return self.prefix_resistance + up * down / (up + down)

    def resistances(self) -> dict[int, float]:
        return {x: self.resistance_to(x) for x, _ in self.arc}


def fan_reduce(
    spec: ChainSpec,
    weights: Mapping[tuple[int, int], float] | None = None,
    z: int | None = None,
    exact: bool = False,
) -> tuple[FanParameters, ReductionTrace]:
    """Sweep the chain ``spec`` from source ``z`` in its first polygon.

    ``z`` defaults to the neighbour of ``a_1`` on the first polygon's free
    arc; any vertex of that arc other than ``a_1``/``b_1`` is accepted.
    ``weights`` maps chain edges to resistances (unit by default).  With
    ``exact=True`` weights are promoted to ``Fraction``.
    """
    if spec.h < 2:
        raise RuleNotApplicable("fan reduction needs h >= 2")
    g = build_chain(spec)
    weights = dict(weights or {})

    def w(u, v):
        r = weights.get((u, v), weights.get((v, u), 1))
        return Fraction(r) if exact else r

    start = WeightedNetwork(range(g.n), [(u, v, w(u, v)) for u, v in g.edges])
    trace = ReductionTrace(start)
    work = _Work(start)

    def record(step):
        if step is not None:
            trace.steps.append(step)

    first_arc = g.end_arc()
    if z is None:
        z = first_arc[1]
    if z not in first_arc[1:-1]:
        raise RuleNotApplicable(f"source {z} is not a degree-2 vertex of the first polygon")
    zi = first_arc.index(z)
    a1, b1 = g.cut_top[0], g.cut_bottom[0]

    record(work.series(first_arc[zi:]))
    record(work.series(first_arc[zi::-1]))
    for step in work.delta_y(z, a1, b1):
        record(step)
    center = trace.steps[-1].vertices[-1]
    prefix = work.weight(z, center)

    for p in range(2, spec.h):
        a_prev, b_prev = g.cut_top[p - 2], g.cut_bottom[p - 2]
        a_next, b_next = g.cut_top[p - 1], g.cut_bottom[p - 1]
        record(work.series([center, a_prev, *g.top_paths[p - 1][1:]]))
        record(work.series([center, b_prev, *g.bottom_paths[p - 1][1:]]))
        for step in work.delta_y(center, a_next, b_next):
            record(step)
        new_center = trace.steps[-1].vertices[-1]
        prefix = prefix + work.weight(center, new_center)
        center = new_center

    trace.final_network = work.network()
    a_last, b_last = g.cut_top[-1], g.cut_bottom[-1]
    last_arc = g.end_arc(last=True)
    cumulative = [(last_arc[0], Fraction(0) if exact else 0.0)]
    for x, y in zip(last_arc, last_arc[1:]):
        cumulative.append((y, cumulative[-1][1] + work.weight(x, y)))
    params = FanParameters(
        theta1=work.weight(center, a_last),
        theta2=work.weight(center, b_last),
        prefix_resistance=prefix,
        source=z,
        center=center,
        arc=tuple(cumulative),
    )
    return params, trace


def fan_difference(theta1, theta2, k: int):
    """Resistance gap between the last polygon's first two free-arc vertices.

    For a unit last polygon, this equals ``Omega(z, u) - Omega(z, v)`` where
    ``u`` is adjacent to ``a_{h-1}`` and ``v`` is the next vertex along.
    """
    return (theta1 - theta2 - k + 4) / (theta1 + theta2 + k - 1)


def last_polygon_sums(r, k: int):
    """Vertex resistance sums inside a k-cycle whose shared edge weighs ``r``.

    Returns ``(sum_u, sum_v)`` for ``u`` adjacent to ``a_{h-1}`` and ``v``
    the next vertex along the free arc.
    """
    if k < 5:
        raise ValueError(f"k={k} violates k >= 5")
    if not 0 < r < 1:
        raise ValueError(f"shared-edge weight r={r} must lie in (0, 1)")
    d = r + k - 1
    common = (r + k - 2) / d + sum(i * (r + k - i - 1) for i in range(1, k - 2)) / d
    sum_u = (r + 1) * (k - 2) / d + common
    sum_v = 2 * (r + k - 3) / d + common
    return sum_u, sum_v


def ordered_last_pairs(g: LabeledChainGraph) -> list[tuple[int, int]]:
    """Adjacent degree-2 pairs ``(u, v)`` of the last polygon with ``u`` nearer the shared edge.

    ``u`` must be strictly closer (graph distance) than ``v`` to ``a_{h-1}``
    or to ``b_{h-1}``, and ``v`` must not be strictly closer than ``u`` to
    either.  The second condition drops the middle edge of an even polygon,
    where each endpoint is nearer to a different corner.
    """
    a, b = g.cut_top[-1], g.cut_bottom[-1]
    da, db = g.distances_from(a), g.distances_from(b)
    arc = g.end_arc(last=True)[1:-1]
    pairs = []
    for x, y in zip(arc, arc[1:]):
        for u, v in ((x, y), (y, x)):
            nearer = da[u] < da[v] or db[u] < db[v]
            farther = da[v] < da[u] or db[v] < db[u]
            if nearer and not farther:
                pairs.append((u, v))
    return pairs
