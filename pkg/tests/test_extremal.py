import csv
import io
import itertools
import json

import pytest

from polykirchhoff import extremal
from polykirchhoff.chains import ChainSpec, build_chain, canonicalize
from polykirchhoff.errors import EnumerationCapExceeded
from polykirchhoff.extremal import (
    canonical_specs,
    enumerate_chains,
    expected_extremes,
    find_extremal,
    raw_count,
    raw_spec_at,
    verify_theorems,
)
from polykirchhoff.isomer import balance_path
from polykirchhoff.resistance import kirchhoff_index, wiener_index


def burnside(k, h):
    m, q = h - 2, k - 3
    if m <= 0:
        return 1
    identity = q**m
    reverse = q ** ((m + 1) // 2)
    complement = 1 if q % 2 else 0
    # reverse+complement: pairs (i, m-1-i) tied; a middle entry must be self-complementary
    rev_comp = q ** (m // 2) * (complement if m % 2 else 1)
    return (identity + reverse + complement**m + rev_comp) // 4


class TestEnumerate:
    def test_examples(self):
        assert len(list(enumerate_chains(6, 5))) == 27
        assert len(list(enumerate_chains(6, 5, canonical=True))) == 10
        assert list(enumerate_chains(5, 2)) == [ChainSpec(5, 2, ())]

    @pytest.mark.parametrize("k,h", [(k, h) for k in range(5, 10) for h in range(2, 8)])
    def test_counts(self, k, h):
        raw = list(enumerate_chains(k, h))
        assert len(raw) == raw_count(k, h) == (k - 3) ** max(h - 2, 0)
        assert [s.w for s in raw] == sorted(s.w for s in raw)
        canon = canonical_specs(k, h)
        assert len(canon) == burnside(k, h) == len({canonicalize(s) for s in raw})

    def test_index_addressable(self):
        raw = list(enumerate_chains(7, 5))
        assert [raw_spec_at(7, 5, i) for i in range(len(raw))] == raw
        with pytest.raises(IndexError):
            raw_spec_at(7, 5, len(raw))

    def test_cap(self):
        with pytest.raises(EnumerationCapExceeded, match="canonical mode"):
            list(enumerate_chains(8, 6, cap=100))
        assert len(list(enumerate_chains(8, 6, canonical=True, cap=200))) == burnside(8, 6)


class TestFindExtremal:
    def test_pentagons(self):
        r = find_extremal(5, 4)
        assert r.min_spec == ChainSpec(5, 4, (0, 0))
        assert r.max_spec == canonicalize(ChainSpec(5, 4, (0, 1)))
        assert r.min_kf == pytest.approx(kirchhoff_index(build_chain(r.min_spec)), abs=1e-9)

    def test_hexagons(self):
        r = find_extremal(6, 5)
        assert (r.min_spec.w, r.max_spec.w) == ((0, 0, 0), (1, 1, 1))
        assert (r.total_raw, r.total_canonical) == (27, 10)

    def test_heptagons(self):
        assert find_extremal(7, 5).max_spec == canonicalize(ChainSpec(7, 5, (1, 2, 1)))

    def test_table_and_bounds(self):
        r = find_extremal(7, 4, table=True)
        assert len(r.per_chain_table) == r.total_canonical
        for spec, kf, wi in r.per_chain_table:
            assert r.min_kf <= kf <= r.max_kf
            assert wi == wiener_index(build_chain(spec))
        rows = list(csv.DictReader(io.StringIO(r.to_csv())))
        assert list(rows[0]) == ["spec", "kf", "wiener"]
        data = json.loads(r.to_json())
        assert [row["spec"] for row in rows] == [row["spec"] for row in data["per_chain_table"]]
        for a, b in zip(rows, data["per_chain_table"]):
            assert float(a["kf"]) == pytest.approx(b["kf"], rel=1e-11)
            assert int(a["wiener"]) == b["wiener"]

    def test_tie_reporting_and_exact_redecision(self):
        loose = find_extremal(5, 4, tol=1.0)
        assert loose.min_ties == [loose.max_spec] and loose.max_ties == [loose.min_spec]
        exact = find_extremal(5, 4, tol=1.0, exact=True)
        assert exact.ties == []
        assert (exact.min_spec, exact.max_spec) == (loose.min_spec, loose.max_spec)

    def test_workers_match_serial(self):
        serial = find_extremal(8, 5, table=True)
        parallel = find_extremal(8, 5, table=True, workers=2)
        assert serial.per_chain_table == parallel.per_chain_table

    def test_isomorphic_specs_agree(self):
        for k, h in [(6, 5), (7, 5), (8, 4)]:
            groups = {}
            for spec in enumerate_chains(k, h):
                g = build_chain(spec)
                groups.setdefault(canonicalize(spec), []).append((kirchhoff_index(g), wiener_index(g)))
            for rows in groups.values():
                kfs, ws = zip(*rows)
                assert max(kfs) - min(kfs) <= 1e-9
                assert len(set(ws)) == 1


class TestMonotoneBalancing:
    @pytest.mark.parametrize("k,h", [(6, 5), (7, 5), (8, 5), (8, 6)])
    def test_strictly_increasing(self, k, h):
        for spec in enumerate_chains(k, h):
            path = balance_path(spec)
            kfs = [kirchhoff_index(build_chain(s)) for s in path]
            assert all(b > a + 1e-12 for a, b in zip(kfs, kfs[1:]))
            lo, hi = (k - 4) // 2, (k - 3) // 2
            assert all(x in (lo, hi) for x in path[-1].w)


class TestVerify:
    def test_expected_extremes(self):
        assert expected_extremes(6, 5) == (ChainSpec(6, 5, (0, 0, 0)), ChainSpec(6, 5, (1, 1, 1)))
        assert expected_extremes(7, 6)[1] == canonicalize(ChainSpec(7, 6, (1, 2, 1, 2)))

    def test_hexagon_and_octagon_rows(self):
        report = verify_theorems([6, 8], range(3, 7))
        assert report.passed and len(report.cells) == 8

    def test_failure_is_reported(self, monkeypatch):
        monkeypatch.setattr(
            extremal, "expected_extremes", lambda k, h: (ChainSpec(k, h, (1,) * (h - 2)),) * 2
        )
        report = verify_theorems([6], [4])
        assert not report.passed
        assert "expected 6:4:1,1" in report.cells[0].line()
