"""k-polycyclic chains: encoding, construction, canonical forms, recognition.

A chain of ``h`` k-gons is encoded by ``(k, h, w)`` where ``w`` has one entry
per interior polygon: ``w[i]`` extra vertices sit on the top edge of polygon
``i + 2`` (1-based), and the remaining ``k - 4 - w[i]`` on its bottom edge.
The two end polygons always carry ``ceil((k-4)/2)`` top and ``floor((k-4)/2)``
bottom subdivisions.

Vertex numbering is polygon-major and top-before-bottom.  Polygon 1 numbers
its whole top path (left corner first, ``a_1`` last), then its whole bottom
path (left corner first, ``b_1`` last).  Every later polygon numbers the
interior of its top path followed by its right top corner, then the interior
of its bottom path followed by its right bottom corner.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from .errors import SpecError, SpecParseError

__all__ = [
    "ChainSpec",
    "LabeledChainGraph",
    "build_chain",
    "canonicalize",
    "canonical_w",
    "helicene",
    "linear",
    "zigzag",
    "parse_spec",
    "format_spec",
    "recognize_chain",
]


@dataclass(frozen=True)
class ChainSpec:
    k: int
    h: int
    w: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "w", tuple(int(x) for x in self.w))
        if self.k < 5:
            raise SpecError(f"polygon size k={self.k} violates k >= 5")
        if self.h < 1:
            raise SpecError(f"polygon count h={self.h} violates h >= 1")
        expected = max(self.h - 2, 0)
        if len(self.w) != expected:
            raise SpecError(
                f"w has length {len(self.w)}, but h={self.h} requires length {expected}"
            )
        for i, x in enumerate(self.w, start=1):
            if not 0 <= x <= self.k - 4:
                raise SpecError(f"w_{i}={x} violates 0 <= w_i <= k-4={self.k - 4}")

    @property
    def n_vertices(self) -> int:
        return self.h * (self.k - 2) + 2

    @property
    def n_edges(self) -> int:
        return self.h * (self.k - 1) + 1

    def complement(self) -> "ChainSpec":
        return ChainSpec(self.k, self.h, tuple(self.k - 4 - x for x in self.w))

    def reverse(self) -> "ChainSpec":
        return ChainSpec(self.k, self.h, self.w[::-1])

    def __str__(self) -> str:
        return format_spec(self)


def canonical_w(w: Sequence[int], k: int) -> tuple[int, ...]:
    """Lexicographic minimum of ``w`` under reversal and complementation."""
    w = tuple(w)
    comp = tuple(k - 4 - x for x in w)
    return min(w, w[::-1], comp, comp[::-1])


def canonicalize(spec: ChainSpec) -> ChainSpec:
    return ChainSpec(spec.k, spec.h, canonical_w(spec.w, spec.k))


def helicene(k: int, h: int) -> ChainSpec:
    return ChainSpec(k, h, (0,) * max(h - 2, 0))


def linear(k: int, h: int) -> ChainSpec:
    if k % 2:
        raise SpecError(f"linear chains need even k >= 6, got k={k}")
    return ChainSpec(k, h, ((k - 4) // 2,) * max(h - 2, 0))


def zigzag(k: int, h: int) -> ChainSpec:
    if k % 2 == 0:
        raise SpecError(f"zigzag chains need odd k >= 5, got k={k}")
    lo, hi = (k - 4) // 2, (k - 3) // 2
    w = tuple(lo if i % 2 == 0 else hi for i in range(max(h - 2, 0)))
    return canonicalize(ChainSpec(k, h, w))


def parse_spec(text: str) -> ChainSpec:
    """Parse ``"k:h:w1,w2,..."``; whitespace is ignored, ``w`` may be empty."""
    fields = text.split(":")
    if len(fields) != 3:
        pos = len(text) if len(fields) < 3 else len(fields[0]) + len(fields[1]) + 2
        reason = "expected 'k:h:w' with exactly two ':'"
        raise SpecParseError(text, pos, reason)
    offsets = [0, len(fields[0]) + 1, len(fields[0]) + len(fields[1]) + 2]
    values = []
    for name, field_text, offset in zip("kh", fields[:2], offsets):
        token = field_text.strip()
        if not token.isdigit():
            raise SpecParseError(text, offset, f"expected integer {name}, got {token!r}")
        values.append(int(token))
    w: list[int] = []
    if fields[2].strip():
        offset = offsets[2]
        for part in fields[2].split(","):
            token = part.strip()
            if not token.isdigit():
                raise SpecParseError(text, offset, f"expected integer w entry, got {token!r}")
            w.append(int(token))
            offset += len(part) + 1
    try:
        return ChainSpec(values[0], values[1], tuple(w))
    except SpecError as exc:
        raise SpecParseError(text, offsets[2], str(exc)) from None


def format_spec(spec: ChainSpec) -> str:
    return f"{spec.k}:{spec.h}:" + ",".join(str(x) for x in spec.w)


@dataclass(frozen=True)
class LabeledChainGraph:
    """Unit-weight chain graph together with its polygon bookkeeping.

    ``top_paths[p]`` / ``bottom_paths[p]`` run left to right along polygon
    ``p + 1`` including both corners; ``cut_top[i]`` / ``cut_bottom[i]`` are
    the shared-edge endpoints ``a_{i+1}`` / ``b_{i+1}``.
    """

    spec: ChainSpec
    n: int
    edges: tuple[tuple[int, int], ...]
    cut_top: tuple[int, ...]
    cut_bottom: tuple[int, ...]
    top_paths: tuple[tuple[int, ...], ...]
    bottom_paths: tuple[tuple[int, ...], ...]
    polygon_membership: Mapping[int, frozenset[int]] = field(repr=False, compare=False)

    @cached_property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        return tuple(tuple(sorted(a)) for a in adj)

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def polygon(self, p: int) -> tuple[int, ...]:
        """Vertices of polygon ``p`` (1-based) in cyclic order."""
        return self.top_paths[p - 1] + self.bottom_paths[p - 1][::-1]

    def end_arc(self, last: bool = False) -> tuple[int, ...]:
        """Path around an end polygon avoiding its shared edge.

        First polygon: from ``a_1`` to ``b_1``.  Last polygon: from
        ``a_{h-1}`` to ``b_{h-1}``.  Requires ``h >= 2``.
        """
        if self.spec.h < 2:
            raise ValueError("end arcs need h >= 2")
        if last:
            return self.top_paths[-1] + self.bottom_paths[-1][::-1]
        return self.top_paths[0][::-1] + self.bottom_paths[0]

    def distances_from(self, source: int) -> list[int]:
        dist = [-1] * self.n
        dist[source] = 0
        queue = deque([source])
        while queue:
            x = queue.popleft()
            for y in self.adjacency[x]:
                if dist[y] < 0:
                    dist[y] = dist[x] + 1
                    queue.append(y)
        return dist

    def distance(self, u: int, v: int) -> int:
        return self.distances_from(u)[v]

    def to_network(self, weights: Mapping[tuple[int, int], float] | None = None):
        from .resistance import WeightedNetwork

        weights = weights or {}
        triples = []
        for u, v in self.edges:
            r = weights.get((u, v), weights.get((v, u), 1))
            triples.append((u, v, r))
        return WeightedNetwork(range(self.n), triples)

    def to_json(self) -> str:
        return json.dumps({"n": self.n, "edges": [list(e) for e in self.edges]})

    def to_edge_lines(self) -> str:
        return "".join(f"{u} {v}\n" for u, v in self.edges)


def build_chain(spec: ChainSpec) -> LabeledChainGraph:
    k, h = spec.k, spec.h
    top_end = (k - 3) // 2  # ceil((k-4)/2)
    bottom_end = (k - 4) // 2
    edges: set[tuple[int, int]] = set()
    membership: dict[int, set[int]] = {}
    top_paths: list[tuple[int, ...]] = []
    bottom_paths: list[tuple[int, ...]] = []
    counter = 0

    def fresh(count: int) -> list[int]:
        nonlocal counter
        out = list(range(counter, counter + count))
        counter += count
        return out

    for p in range(1, h + 1):
        if p == 1 or p == h:
            t_sub, b_sub = top_end, bottom_end
        else:
            t_sub, b_sub = spec.w[p - 2], k - 4 - spec.w[p - 2]
        if p == 1:
            top = tuple(fresh(t_sub + 2))
            bottom = tuple(fresh(b_sub + 2))
        else:
            left_top, left_bottom = top_paths[-1][-1], bottom_paths[-1][-1]
            top = (left_top, *fresh(t_sub + 1))
            bottom = (left_bottom, *fresh(b_sub + 1))
        top_paths.append(top)
        bottom_paths.append(bottom)
        for path in (top, bottom):
            for x, y in zip(path, path[1:]):
                edges.add((min(x, y), max(x, y)))
        for x, y in ((top[0], bottom[0]), (top[-1], bottom[-1])):
            edges.add((min(x, y), max(x, y)))
        for v in top + bottom:
            membership.setdefault(v, set()).add(p)

    return LabeledChainGraph(
        spec=spec,
        n=counter,
        edges=tuple(sorted(edges)),
        cut_top=tuple(t[-1] for t in top_paths[:-1]),
        cut_bottom=tuple(b[-1] for b in bottom_paths[:-1]),
        top_paths=tuple(top_paths),
        bottom_paths=tuple(bottom_paths),
        polygon_membership={v: frozenset(s) for v, s in membership.items()},
    )


def recognize_chain(n: int, edges: Iterable[Sequence[int]]) -> ChainSpec | None:
    """Decode a simple graph back into a chain encoding, or ``None``.

    Orientation is fixed so that relabel-free images of :func:`build_chain`
    decode to the spec they realize: the first polygon is the end polygon
    whose free arc holds the smallest vertex label, and its shared-edge
    endpoint with the smaller label is taken as ``a_1``.  The decoded spec is
    confirmed by mapping :func:`build_chain` of it onto the input.
    """
    pairs = {(min(u, v), max(u, v)) for u, v, *_ in edges}
    if not pairs or any(u == v or not (0 <= u < n and 0 <= v < n) for u, v in pairs):
        return None
    adj: list[set[int]] = [set() for _ in range(n)]
    for u, v in pairs:
        adj[u].add(v)
        adj[v].add(u)
    if any(len(a) not in (2, 3) for a in adj):
        return None
    h = len(pairs) - n + 1
    if h < 1 or (n - 2) % h or (n - 2) // h + 2 < 5:
        return None
    k = (n - 2) // h + 2
    if h == 1:
        return ChainSpec(k, 1, ()) if _single_cycle(adj) else None

    rungs = [e for e in pairs if len(adj[e[0]]) == 3 and len(adj[e[1]]) == 3]
    rungs = [e for e in rungs if not _has_bridge(adj, e)]
    if len(rungs) != h - 1:
        return None
    outer = [set(a) for a in adj]
    partner = {}
    for u, v in rungs:
        outer[u].discard(v)
        outer[v].discard(u)
        partner[u], partner[v] = v, u
    order = _single_cycle(outer)
    if order is None:
        return None
    pos = {v: i for i, v in enumerate(order)}

    # an end polygon's free arc joins the two ends of one rung
    ends = []
    for u, v in rungs:
        for start, stop in ((u, v), (v, u)):
            arc = _arc(order, pos, start, stop)
            if not any(x in partner for x in arc[1:-1]):
                ends.append(arc)
    if len(ends) != 2:
        return None
    first = min(ends, key=lambda arc: min(arc[1:-1], default=n))
    a1 = min(first[0], first[-1])
    step = -1 if first[0] == a1 else 1
    walk = [order[(pos[a1] + step * i) % n] for i in range(n)]

    tops = [i for i, v in enumerate(walk) if v in partner][: h - 1]
    w = tuple(j - i - 1 for i, j in zip(tops, tops[1:]))
    try:
        spec = ChainSpec(k, h, w)
    except SpecError:
        return None
    g = build_chain(spec)
    mapping = dict(zip(_outer_walk(g), walk))
    if len(mapping) != n:
        return None
    image = {(min(mapping[u], mapping[v]), max(mapping[u], mapping[v])) for u, v in g.edges}
    return spec if image == pairs else None


def _outer_walk(g: LabeledChainGraph) -> list[int]:
    """Boundary of a built chain starting at ``a_1`` and heading along the top."""
    walk = [g.top_paths[0][-1]]
    for top in g.top_paths[1:]:
        walk.extend(top[1:])
    for bottom in reversed(g.bottom_paths[1:]):
        walk.extend(bottom[:0:-1])
    walk.extend(g.bottom_paths[0][::-1])
    walk.extend(g.top_paths[0][:-1])
    return walk


def _single_cycle(adj: Sequence[set[int]]) -> list[int] | None:
    n = len(adj)
    if any(len(a) != 2 for a in adj):
        return None
    order = [0]
    prev, cur = None, 0
    while True:
        nxt = [y for y in adj[cur] if y != prev]
        step = nxt[0] if prev is not None else min(adj[cur])
        if step == 0:
            break
        order.append(step)
        prev, cur = cur, step
        if len(order) > n:
            return None
    return order if len(order) == n else None


def _arc(order, pos, start, stop):
    n = len(order)
    out = [start]
    i = pos[start]
    while order[i] != stop:
        i = (i + 1) % n
        out.append(order[i])
    return out


def _has_bridge(adj: Sequence[set[int]], removed: tuple[int, int]) -> bool:
    n = len(adj)
    ru, rv = removed
    disc = [-1] * n
    low = [0] * n
    timer = 0
    found = False
    stack = [(0, -1, iter(sorted(adj[0])))]
    disc[0] = low[0] = 0
    timer = 1
    while stack:
        v, parent, it = stack[-1]
        advanced = False
        for y in it:
            if (v, y) in ((ru, rv), (rv, ru)) or y == parent:
                continue
            if disc[y] < 0:
                disc[y] = low[y] = timer
                timer += 1
                stack.append((y, v, iter(sorted(adj[y]))))
                advanced = True
                break
            low[v] = min(low[v], disc[y])
        if not advanced:
            stack.pop()
            if stack:
                p = stack[-1][0]
                low[p] = min(low[p], low[v])
                if low[v] > disc[p]:
                    found = True
    return found or min(disc) < 0
