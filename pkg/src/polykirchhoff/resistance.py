"""Effective resistance, Kirchhoff and Wiener indices via the grounded Laplacian.

The grounded Laplacian (first vertex removed) of a connected network is
symmetric positive definite, so one Cholesky factorization serves every
pair.  An exact mode does the same elimination over ``fractions.Fraction``
for small networks with rational weights.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np
from scipy.linalg import LinAlgError, cho_factor, cho_solve

from .errors import DisconnectedNetworkError, NumericalFailure

__all__ = [
    "WeightedNetwork",
    "ResistanceResult",
    "LaplacianFactor",
    "effective_resistance",
    "kirchhoff_index",
    "resistance_result",
    "vertex_resistance_sum",
    "wiener_index",
    "read_network",
]

RESIDUAL_TOL = 1e-8


@dataclass(frozen=True, init=False)
class WeightedNetwork:
    """Resistor multigraph on arbitrary integer vertex labels.

    ``edges`` holds ``(u, v, resistance)`` triples; parallel edges are kept
    as given.  Resistances may be floats or ``Fraction`` values.
    """

    vertices: tuple[int, ...]
    edges: tuple[tuple[int, int, float], ...]

    def __init__(self, vertices: Iterable[int], edges: Iterable[Sequence]):
        verts = tuple(vertices)
        vset = set(verts)
        if len(vset) != len(verts):
            raise ValueError("duplicate vertex labels")
        triples = []
        for e in edges:
            u, v = int(e[0]), int(e[1])
            r = e[2] if len(e) > 2 else 1
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if u not in vset or v not in vset:
                raise ValueError(f"edge ({u}, {v}) uses an unknown vertex")
            if not r > 0:
                raise ValueError(f"edge ({u}, {v}) has non-positive resistance {r}")
            triples.append((u, v, r))
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "edges", tuple(triples))

    @classmethod
    def unit(cls, n: int, pairs: Iterable[Sequence[int]]) -> "WeightedNetwork":
        return cls(range(n), [(u, v, 1) for u, v, *_ in pairs])

    @property
    def n(self) -> int:
        return len(self.vertices)

    @cached_property
    def index(self) -> dict[int, int]:
        return {v: i for i, v in enumerate(self.vertices)}

    @cached_property
    def neighbors(self) -> dict[int, list[int]]:
        adj: dict[int, list[int]] = {v: [] for v in self.vertices}
        for u, v, _ in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        return adj

    def degree(self, v: int) -> int:
        return len(self.neighbors[v])

    def is_connected(self) -> bool:
        if not self.vertices:
            return False
        seen = {self.vertices[0]}
        queue = deque(seen)
        while queue:
            x = queue.popleft()
            for y in self.neighbors[x]:
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        return len(seen) == self.n

    def edge_set(self) -> set[tuple[int, int]]:
        return {(min(u, v), max(u, v)) for u, v, _ in self.edges}

    def to_json(self) -> str:
        return json.dumps(
            {
                "n": self.n,
                "vertices": list(self.vertices),
                "edges": [[u, v, float(r)] for u, v, r in self.edges],
            }
        )


def read_network(text: str) -> WeightedNetwork:
    """Parse the JSON or edge-list graph formats.

    JSON: ``{"n": ..., "edges": [[u, v], ...]}`` with an optional third
    entry per edge.  Edge list: one ``u v`` or ``u v resistance`` per line.
    """
    stripped = text.strip()
    if stripped.startswith("{"):
        data = json.loads(stripped)
        vertices = data.get("vertices", range(data["n"]))
        return WeightedNetwork(vertices, [tuple(e) for e in data["edges"]])
    triples = []
    for lineno, line in enumerate(stripped.splitlines(), start=1):
        parts = line.split("#", 1)[0].split()
        if not parts:
            continue
        if len(parts) not in (2, 3):
            raise ValueError(f"line {lineno}: expected 'u v' or 'u v resistance'")
        r = float(parts[2]) if len(parts) == 3 else 1
        triples.append((int(parts[0]), int(parts[1]), r))
    verts = sorted({x for u, v, _ in triples for x in (u, v)})
    n = verts[-1] + 1 if verts else 0
    return WeightedNetwork(range(n), triples)


def _conductance_laplacian(net: WeightedNetwork, exact: bool):
    n = net.n
    idx = net.index
    if exact:
        lap = [[Fraction(0)] * n for _ in range(n)]
    else:
        lap = np.zeros((n, n))
    for u, v, r in net.edges:
        i, j = idx[u], idx[v]
        c = 1 / Fraction(r) if exact else 1.0 / float(r)
        lap[i][i] += c
        lap[j][j] += c
        lap[i][j] -= c
        lap[j][i] -= c
    return lap


def _exact_inverse(a: list[list[Fraction]]) -> list[list[Fraction]]:
    m = len(a)
    aug = [row[:] + [Fraction(int(i == j)) for j in range(m)] for i, row in enumerate(a)]
    for col in range(m):
        pivot = next((r for r in range(col, m) if aug[r][col] != 0), None)
        if pivot is None:
            raise NumericalFailure("grounded Laplacian is singular")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for r in range(m):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return [row[m:] for row in aug]


class LaplacianFactor:
    """Factorized grounded Laplacian of a connected network.

    Built once, then queried for any pair; immutable after construction.
    With ``exact=True`` all results are ``Fraction`` values.
    """

    def __init__(self, net: WeightedNetwork, exact: bool = False):
        if net.n < 1 or not net.is_connected():
            raise DisconnectedNetworkError("network is not connected")
        self.net = net
        self.exact = exact
        lap = _conductance_laplacian(net, exact)
        if exact:
            reduced = [row[1:] for row in lap[1:]]
            inv = _exact_inverse(reduced) if reduced else []
            self._inverse = [[Fraction(0)] * net.n] + [[Fraction(0)] + row for row in inv]
        else:
            reduced = lap[1:, 1:]
            self._reduced = reduced
            try:
                self._cho = cho_factor(reduced, lower=True) if net.n > 1 else None
            except LinAlgError as exc:
                raise NumericalFailure(f"grounded Laplacian not positive definite: {exc}")

    def _solve(self, rhs: np.ndarray) -> np.ndarray:
        x = cho_solve(self._cho, rhs)
        scale = max(1.0, float(np.abs(rhs).max()))
        if np.abs(self._reduced @ x - rhs).max() > RESIDUAL_TOL * scale:
            raise NumericalFailure("grounded Laplacian solve exceeds residual tolerance")
        return x

    def resistance(self, u: int, v: int):
        """Solve ``L' x = e_u - e_v`` and return ``x_u - x_v``."""
        idx = self.net.index
        i, j = idx[u], idx[v]
        if i == j:
            return Fraction(0) if self.exact else 0.0
        if self.exact:
            m = self._inverse
            return m[i][i] + m[j][j] - 2 * m[i][j]
        rhs = np.zeros(self.net.n - 1)
        if i:
            rhs[i - 1] += 1.0
        if j:
            rhs[j - 1] -= 1.0
        x = np.concatenate([[0.0], self._solve(rhs)])
        return float(x[i] - x[j])

    @cached_property
    def inverse(self):
        """Inverse of the grounded Laplacian, padded with a zero row/column."""
        if self.exact:
            return self._inverse
        n = self.net.n
        out = np.zeros((n, n))
        if n > 1:
            out[1:, 1:] = self._solve(np.eye(n - 1))
        return out

    @cached_property
    def matrix(self):
        m = self.inverse
        n = self.net.n
        if self.exact:
            return [[m[i][i] + m[j][j] - 2 * m[i][j] for j in range(n)] for i in range(n)]
        d = np.diag(m)
        omega = d[:, None] + d[None, :] - 2 * m
        omega = (omega + omega.T) / 2
        np.fill_diagonal(omega, 0.0)
        return omega

    def kirchhoff(self):
        # sum over pairs of (M_ii + M_jj - 2 M_ij) = n tr(M) - sum(M)
        m = self.inverse
        n = self.net.n
        if self.exact:
            return n * sum(m[i][i] for i in range(n)) - sum(sum(row) for row in m)
        return float(n * np.trace(m) - m.sum())

    def vertex_sum(self, u: int):
        i = self.net.index[u]
        row = self.matrix[i]
        return sum(row) if self.exact else float(row.sum())


@dataclass(frozen=True)
class ResistanceResult:
    vertices: tuple[int, ...]
    matrix: np.ndarray
    kf: float

    @property
    def pairs(self) -> dict[tuple[int, int], float]:
        out = {}
        for (i, u), (j, v) in combinations(enumerate(self.vertices), 2):
            out[(u, v)] = float(self.matrix[i][j])
        return out

    def __getitem__(self, uv: tuple[int, int]) -> float:
        u, v = uv
        i, j = self.vertices.index(u), self.vertices.index(v)
        return self.matrix[i][j]


def _as_network(g) -> WeightedNetwork:
    if isinstance(g, WeightedNetwork):
        return g
    return g.to_network()


def effective_resistance(net, u: int, v: int, exact: bool = False):
    net = _as_network(net)
    if u == v:
        raise ValueError("effective resistance needs two distinct vertices")
    if u not in net.index or v not in net.index:
        raise ValueError(f"vertex pair ({u}, {v}) out of range")
    return LaplacianFactor(net, exact).resistance(u, v)


def kirchhoff_index(net, exact: bool = False):
    return LaplacianFactor(_as_network(net), exact).kirchhoff()


def vertex_resistance_sum(net, u: int, exact: bool = False):
    return LaplacianFactor(_as_network(net), exact).vertex_sum(u)


def resistance_result(net) -> ResistanceResult:
    factor = LaplacianFactor(_as_network(net))
    return ResistanceResult(factor.net.vertices, factor.matrix, factor.kirchhoff())


def wiener_index(g) -> int:
    """Sum of shortest-path distances over unordered pairs, by BFS per source.

    Accepts a chain graph or a network; edge weights are ignored.
    """
    vertices = list(getattr(g, "vertices", range(g.n)))
    adj: dict[int, set[int]] = {v: set() for v in vertices}
    for u, v, *_ in g.edges:
        adj[u].add(v)
        adj[v].add(u)
    total = 0
    for s in vertices:
        dist = {s: 0}
        queue = deque([s])
        while queue:
            x = queue.popleft()
            for y in adj[x]:
                if y not in dist:
                    dist[y] = dist[x] + 1
                    queue.append(y)
        if len(dist) != len(vertices):
            raise DisconnectedNetworkError("graph is not connected")
        total += sum(dist.values())
    return total // 2
