"""Exhaustive search over chain encodings for Kirchhoff-index extremes."""

from __future__ import annotations

import csv
import io
import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Iterator

from .chains import ChainSpec, build_chain, canonical_w, canonicalize, format_spec, helicene, linear, zigzag
from .errors import EnumerationCapExceeded
from .resistance import LaplacianFactor, kirchhoff_index, wiener_index

__all__ = [
    "DEFAULT_CAP",
    "SearchReport",
    "CellResult",
    "VerificationReport",
    "raw_count",
    "raw_spec_at",
    "enumerate_chains",
    "canonical_specs",
    "find_extremal",
    "expected_extremes",
    "verify_theorems",
]

DEFAULT_CAP = 10**7
DEFAULT_TOL = 1e-9


def raw_count(k: int, h: int) -> int:
    return (k - 3) ** max(h - 2, 0)


def _check_cap(k: int, h: int, cap: int, canonical: bool) -> None:
    total = raw_count(k, h)
    needed = math.ceil(total / 4) if canonical else total
    if needed > cap:
        hint = "use a smaller h" if canonical else "use canonical mode or a smaller h"
        raise EnumerationCapExceeded(
            f"k={k}, h={h} has {total} raw encodings, above the cap of {cap}; {hint}"
        )


def raw_spec_at(k: int, h: int, index: int) -> ChainSpec:
    """The ``index``-th raw encoding in lexicographic order."""
    length = max(h - 2, 0)
    if not 0 <= index < raw_count(k, h):
        raise IndexError(index)
    digits = []
    for _ in range(length):
        index, d = divmod(index, k - 3)
        digits.append(d)
    return ChainSpec(k, h, tuple(reversed(digits)))


def enumerate_chains(k: int, h: int, canonical: bool = False, cap: int = DEFAULT_CAP) -> Iterator[ChainSpec]:
    """Every encoding, or one lexicographically least per isomorphism class."""
    ChainSpec(k, h, (0,) * max(h - 2, 0))
    _check_cap(k, h, cap, canonical)
    for w in product(range(k - 3), repeat=max(h - 2, 0)):
        if canonical and canonical_w(w, k) != w:
            continue
        yield ChainSpec(k, h, w)


def canonical_specs(k: int, h: int, cap: int = DEFAULT_CAP) -> list[ChainSpec]:
    """Index-addressable canonical stream, so workers can claim slices."""
    return list(enumerate_chains(k, h, canonical=True, cap=cap))


def _indices(specs: list[ChainSpec], with_wiener: bool) -> list[tuple[float, int | None]]:
    out = []
    for spec in specs:
        g = build_chain(spec)
        kf = LaplacianFactor(g.to_network()).kirchhoff()
        out.append((kf, wiener_index(g) if with_wiener else None))
    return out


def _map_indices(specs: list[ChainSpec], with_wiener: bool, workers: int):
    if workers <= 1 or len(specs) < 2 * workers:
        return _indices(specs, with_wiener)
    size = math.ceil(len(specs) / workers)
    chunks = [specs[i : i + size] for i in range(0, len(specs), size)]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        parts = pool.map(_indices, chunks, [with_wiener] * len(chunks))
        return [row for part in parts for row in part]


@dataclass
class SearchReport:
    k: int
    h: int
    total_raw: int
    total_canonical: int
    min_spec: ChainSpec
    max_spec: ChainSpec
    min_kf: float
    max_kf: float
    min_ties: list[ChainSpec] = field(default_factory=list)
    max_ties: list[ChainSpec] = field(default_factory=list)
    min_gap: float = math.inf
    max_gap: float = math.inf
    per_chain_table: list[tuple[ChainSpec, float, int]] | None = None

    @property
    def ties(self) -> list[ChainSpec]:
        return self.min_ties + self.max_ties

    def to_dict(self) -> dict:
        out = {
            "k": self.k,
            "h": self.h,
            "total_raw": self.total_raw,
            "total_canonical": self.total_canonical,
            "min_spec": format_spec(self.min_spec),
            "max_spec": format_spec(self.max_spec),
            "min_kf": self.min_kf,
            "max_kf": self.max_kf,
            "min_ties": [format_spec(s) for s in self.min_ties],
            "max_ties": [format_spec(s) for s in self.max_ties],
            "min_gap": None if math.isinf(self.min_gap) else self.min_gap,
            "max_gap": None if math.isinf(self.max_gap) else self.max_gap,
        }
        if self.per_chain_table is not None:
            out["per_chain_table"] = [
                {"spec": format_spec(s), "kf": kf, "wiener": wi} for s, kf, wi in self.per_chain_table
            ]
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["spec", "kf", "wiener"])
        for spec, kf, wi in self.per_chain_table or []:
            writer.writerow([format_spec(spec), f"{kf:.12g}", wi])
        return buf.getvalue()


def find_extremal(
    k: int,
    h: int,
    cap: int = DEFAULT_CAP,
    tol: float = DEFAULT_TOL,
    exact: bool = False,
    workers: int = 1,
    table: bool = False,
) -> SearchReport:
    """Kirchhoff index of every canonical chain; report both extremes.

    Classes within ``tol`` of an extreme are listed as ties.  With
    ``exact=True`` ties are re-decided with rational arithmetic, and only
    classes with exactly equal index remain tied.
    """
    specs = canonical_specs(k, h, cap)
    rows = _map_indices(specs, table, workers)
    kfs = [kf for kf, _ in rows]
    order = sorted(range(len(specs)), key=lambda i: (kfs[i], specs[i].w))
    lo, hi = order[0], order[-1]

    def near(target):
        return [i for i in order if i != target and abs(kfs[i] - kfs[target]) < tol]

    min_ties, max_ties = near(lo), near(hi)
    if exact and (min_ties or max_ties):
        exact_kf = {}

        def ekf(i):
            if i not in exact_kf:
                exact_kf[i] = kirchhoff_index(build_chain(specs[i]), exact=True)
            return exact_kf[i]

        lo = min([lo] + min_ties, key=lambda i: (ekf(i), specs[i].w))
        hi = max([hi] + max_ties, key=lambda i: (ekf(i), [-x for x in specs[i].w]))
        min_ties = [i for i in min_ties + [order[0]] if i != lo and ekf(i) == ekf(lo)]
        max_ties = [i for i in max_ties + [order[-1]] if i != hi and ekf(i) == ekf(hi)]

    others_lo = [kfs[i] for i in order if i != lo]
    others_hi = [kfs[i] for i in order if i != hi]
    report = SearchReport(
        k=k,
        h=h,
        total_raw=raw_count(k, h),
        total_canonical=len(specs),
        min_spec=specs[lo],
        max_spec=specs[hi],
        min_kf=kfs[lo],
        max_kf=kfs[hi],
        min_ties=[specs[i] for i in min_ties],
        max_ties=[specs[i] for i in max_ties],
        min_gap=min(others_lo) - kfs[lo] if others_lo else math.inf,
        max_gap=kfs[hi] - max(others_hi) if others_hi else math.inf,
    )
    if table:
        report.per_chain_table = [(s, kf, wi) for s, (kf, wi) in zip(specs, rows)]
    return report


def expected_extremes(k: int, h: int) -> tuple[ChainSpec, ChainSpec]:
    """Canonical helicene (minimum) and linear/zigzag (maximum) for ``k``.

    The maximiser's shape is chosen by the parity of the polygon size.
    """
    maximum = linear(k, h) if k % 2 == 0 else zigzag(k, h)
    return canonicalize(helicene(k, h)), canonicalize(maximum)


@dataclass
class CellResult:
    k: int
    h: int
    passed: bool
    min_spec: ChainSpec
    max_spec: ChainSpec
    expected_min: ChainSpec
    expected_max: ChainSpec
    min_kf: float
    max_kf: float
    min_gap: float
    max_gap: float
    problems: list[str]

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        gaps = " ".join(
            f"{name}={'none' if math.isinf(g) else format(g, '.6g')}"
            for name, g in (("min_gap", self.min_gap), ("max_gap", self.max_gap))
        )
        text = (
            f"{status} k={self.k} h={self.h} min={format_spec(self.min_spec)} "
            f"max={format_spec(self.max_spec)} {gaps}"
        )
        if self.problems:
            text += " : " + "; ".join(self.problems)
        return text

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "h": self.h,
            "passed": self.passed,
            "min_spec": format_spec(self.min_spec),
            "max_spec": format_spec(self.max_spec),
            "expected_min": format_spec(self.expected_min),
            "expected_max": format_spec(self.expected_max),
            "min_kf": self.min_kf,
            "max_kf": self.max_kf,
            "min_gap": None if math.isinf(self.min_gap) else self.min_gap,
            "max_gap": None if math.isinf(self.max_gap) else self.max_gap,
            "problems": self.problems,
        }


@dataclass
class VerificationReport:
    cells: list[CellResult]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.cells)

    def to_json(self) -> str:
        return json.dumps({"passed": self.passed, "cells": [c.to_dict() for c in self.cells]}, indent=2)


def verify_theorems(
    k_values: Iterable[int],
    h_values: Iterable[int],
    tol: float = DEFAULT_TOL,
    cap: int = DEFAULT_CAP,
    workers: int = 1,
) -> VerificationReport:
    """Check that the helicene chain is the unique minimiser and the
    linear (even k) or zigzag (odd k) chain the unique maximiser."""
    cells = []
    h_values = list(h_values)
    for k in k_values:
        for h in h_values:
            report = find_extremal(k, h, cap=cap, tol=tol, workers=workers)
            want_min, want_max = expected_extremes(k, h)
            problems = []
            if report.min_spec != want_min:
                problems.append(f"minimum at {format_spec(report.min_spec)}, expected {format_spec(want_min)}")
            if report.max_spec != want_max:
                problems.append(f"maximum at {format_spec(report.max_spec)}, expected {format_spec(want_max)}")
            if not report.min_gap > tol:
                problems.append(f"minimum not unique (gap {report.min_gap:.3g})")
            if not report.max_gap > tol:
                problems.append(f"maximum not unique (gap {report.max_gap:.3g})")
            cells.append(
                CellResult(
                    k=k,
                    h=h,
                    passed=not problems,
                    min_spec=report.min_spec,
                    max_spec=report.max_spec,
                    expected_min=want_min,
                    expected_max=want_max,
                    min_kf=report.min_kf,
                    max_kf=report.max_kf,
                    min_gap=report.min_gap,
                    max_gap=report.max_gap,
                    problems=problems,
                )
            )
    return VerificationReport(cells)
