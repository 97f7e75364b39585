"""Two-edge cuts, S/T flips and the Kirchhoff difference of a flipped pair.

Cut placement inside interior polygon ``P`` (1-based, ``2 <= P <= h-1``),
with ``w_i = w[P-2]``, top path of ``w_i + 1`` edges and bottom path of
``B = k - 3 - w_i`` edges, both read left to right.  For a target ``t``
(the new top count of polygon ``P``; default ``w_i``):

* ``t <= w_i``: ``u`` is top vertex ``t``, ``x`` the next top vertex;
  ``v`` is the bottom vertex just before ``b_P`` and ``y = b_P``.
* ``t > w_i``: ``x = a_P`` and ``u`` the top vertex before it; ``v`` is
  bottom vertex ``k - 4 - t`` and ``y`` the next bottom vertex.

Flipping replaces ``ux, vy`` by ``uy, vx``; the image is the chain with
``w[P-2] = t`` and every later entry complemented.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .chains import ChainSpec, build_chain
from .errors import NoValidCut, SpecError
from .resistance import LaplacianFactor, WeightedNetwork

__all__ = [
    "IsomerCut",
    "find_cut",
    "cut_positions",
    "split",
    "st_flip",
    "kf_difference",
    "lemma_transform",
    "flip_chain",
    "increasing_moves",
    "balance_path",
]


@dataclass(frozen=True)
class IsomerCut:
    component1_terminals: tuple[int, int]
    component2_terminals: tuple[int, int]

    @property
    def cut_edges(self) -> tuple[tuple[int, int], tuple[int, int]]:
        (u, v), (x, y) = self.component1_terminals, self.component2_terminals
        return (u, x), (v, y)

    def mirrored(self) -> "IsomerCut":
        """The cut of the flipped graph that flips it back."""
        (u, v), (x, y) = self.component1_terminals, self.component2_terminals
        return IsomerCut((u, v), (y, x))


def _interior_index(spec: ChainSpec, polygon_index: int) -> int:
    if not 2 <= polygon_index <= spec.h - 1:
        raise NoValidCut(
            f"polygon {polygon_index} is not interior; valid range is 2..{spec.h - 1}"
        )
    return polygon_index - 2


def cut_positions(spec: ChainSpec, polygon_index: int, t: int | None = None) -> tuple[int, int]:
    """Offsets ``(p, q)`` of ``u`` along the top path and ``v`` along the bottom."""
    i = _interior_index(spec, polygon_index)
    wi = spec.w[i]
    t = wi if t is None else t
    if not 0 <= t <= spec.k - 4:
        raise SpecError(f"target t={t} violates 0 <= t <= k-4={spec.k - 4}")
    if t <= wi:
        return t, spec.k - 4 - wi
    return wi, spec.k - 4 - t


def find_cut(spec: ChainSpec, polygon_index: int, t: int | None = None) -> IsomerCut:
    p, q = cut_positions(spec, polygon_index, t)
    g = build_chain(spec)
    top = g.top_paths[polygon_index - 1]
    bottom = g.bottom_paths[polygon_index - 1]
    return IsomerCut((top[p], bottom[q]), (top[p + 1], bottom[q + 1]))


def _component(vertices, adjacency, start) -> set[int]:
    seen = {start}
    queue = deque([start])
    while queue:
        a = queue.popleft()
        for b in adjacency[a]:
            if b not in seen:
                seen.add(b)
                queue.append(b)
    return seen


def _remove_cut(net: WeightedNetwork, cut: IsomerCut):
    remaining = list(net.edges)
    removed = []
    for a, b in cut.cut_edges:
        hit = next((e for e in remaining if {e[0], e[1]} == {a, b}), None)
        if hit is None:
            raise NoValidCut(f"cut edge ({a}, {b}) is not in the network")
        remaining.remove(hit)
        removed.append(hit[2])
    return remaining, removed


def split(net: WeightedNetwork, cut: IsomerCut) -> tuple[WeightedNetwork, WeightedNetwork]:
    """The two components left after deleting the cut edges."""
    remaining, _ = _remove_cut(net, cut)
    adjacency = {v: [] for v in net.vertices}
    for a, b, _ in remaining:
        adjacency[a].append(b)
        adjacency[b].append(a)
    (u, v), (x, y) = cut.component1_terminals, cut.component2_terminals
    side1 = _component(net.vertices, adjacency, u)
    side2 = _component(net.vertices, adjacency, x)
    if v not in side1 or y not in side2 or side1 & side2 or len(side1) + len(side2) != net.n:
        raise NoValidCut("cut edges do not separate the network into the two terminal sides")
    parts = []
    for side in (side1, side2):
        verts = [w for w in net.vertices if w in side]
        parts.append(WeightedNetwork(verts, [e for e in remaining if e[0] in side]))
    return parts[0], parts[1]


def st_flip(net: WeightedNetwork, cut: IsomerCut) -> WeightedNetwork:
    """Delete ``ux, vy`` and add ``uy, vx``.

    The new edges inherit the resistances of ``ux`` and ``vy`` respectively,
    so unit networks stay unit and ``st_flip(st_flip(N, c), c.mirrored())``
    restores ``N``'s edge multiset.
    """
    remaining, (r_ux, r_vy) = _remove_cut(net, cut)
    (u, v), (x, y) = cut.component1_terminals, cut.component2_terminals
    return WeightedNetwork(net.vertices, remaining + [(u, y, r_ux), (v, x, r_vy)])


def kf_difference(n1: WeightedNetwork, uv: tuple[int, int], n2: WeightedNetwork, xy: tuple[int, int], exact=False):
    """``Kf(S) - Kf(T)`` from resistances measured inside each component.

    ``S`` joins ``u-x`` and ``v-y``; ``T`` joins ``u-y`` and ``v-x``; both
    joining edges have unit resistance.
    """
    (u, v), (x, y) = uv, xy
    if u == v or x == y:
        raise ValueError("terminals must be distinct")
    f1, f2 = LaplacianFactor(n1, exact), LaplacianFactor(n2, exact)
    numerator = (f1.vertex_sum(u) - f1.vertex_sum(v)) * (f2.vertex_sum(y) - f2.vertex_sum(x))
    return numerator / (f1.resistance(u, v) + f2.resistance(x, y) + 2)


def lemma_transform(w, i: int, t: int, k: int) -> tuple[int, ...]:
    """Set ``w_i = t`` (1-based ``i``) and complement every later entry."""
    w = tuple(w)
    if not 1 <= i <= len(w):
        raise SpecError(f"position i={i} violates 1 <= i <= {len(w)}")
    if not 0 <= t <= k - 4:
        raise SpecError(f"target t={t} violates 0 <= t <= k-4={k - 4}")
    if any(not 0 <= x <= k - 4 for x in w):
        raise SpecError(f"w={w} has entries outside 0..{k - 4}")
    return w[: i - 1] + (t,) + tuple(k - 4 - x for x in w[i:])


def flip_chain(spec: ChainSpec, polygon_index: int, t: int | None = None):
    """Flip ``spec`` at an interior polygon.

    Returns ``(image_spec, flipped_network, cut)``; the flipped network keeps
    the original vertex labels.
    """
    i = _interior_index(spec, polygon_index)
    t = spec.w[i] if t is None else t
    cut = find_cut(spec, polygon_index, t)
    flipped = st_flip(build_chain(spec).to_network(), cut)
    image = ChainSpec(spec.k, spec.h, lemma_transform(spec.w, i + 1, t, spec.k))
    return image, flipped, cut


def increasing_moves(spec: ChainSpec) -> list[tuple[str, int, int]]:
    """Flips known to raise the Kirchhoff index, as ``(kind, i, t)``.

    ``unpin``: an entry at 0 or k-4 moved to any strictly interior value
    (k >= 6).  ``lower``: an entry above ``ceil((k-4)/2)`` set to it.
    ``raise``: an entry below ``floor((k-4)/2)`` set to it.  Later entries
    are complemented in every case.
    """
    k = spec.k
    hi, lo = (k - 3) // 2, (k - 4) // 2
    moves = []
    for i, x in enumerate(spec.w, start=1):
        if k >= 6 and x in (0, k - 4):
            moves.extend(("unpin", i, t) for t in range(1, k - 4))
        if x >= hi + 1:
            moves.append(("lower", i, hi))
        if x <= lo - 1:
            moves.append(("raise", i, lo))
    return moves


def balance_path(spec: ChainSpec) -> list[ChainSpec]:
    """Apply ``lower``/``raise`` moves left to right until every entry is
    ``floor((k-4)/2)`` or ``ceil((k-4)/2)``; returns every spec visited."""
    k = spec.k
    hi, lo = (k - 3) // 2, (k - 4) // 2
    path = [spec]
    w = spec.w
    for i in range(1, len(w) + 1):
        x = w[i - 1]
        if x > hi:
            w = lemma_transform(w, i, hi, k)
        elif x < lo:
            w = lemma_transform(w, i, lo, k)
        else:
            continue
        path.append(ChainSpec(k, spec.h, w))
    return path
