import json

import mpmath
import pytest
from mpmath import mpc

from dzeta import ZeroCatalog, ZeroRecord, linear_fit
from dzeta.errors import (CoverageError, DomainError, DuplicateError,
                          TooFewEntries)

import reference


def _record(sigma, t, digits=50):
    return ZeroRecord(location=mpc(sigma, t), residual=1e-45,
                      derivative_mag=0.5, method="harmonic_product",
                      params=None, digits_used=digits, winding=1,
                      certified=True)


def _toy_catalog(points, t_hi=60.0):
    cat = ZeroCatalog(metadata={"sigma_lo": -1.0, "sigma_hi": 2.0,
                                "t_lo": 0.0, "t_hi": t_hi})
    for sigma, t in points:
        cat.add(_record(sigma, t))
    return cat


def test_counts_on_the_thirty_zero_catalog(catalog30):
    assert catalog30.count_zeros(0, 0.5, 60) == reference.COUNT_0_HALF_60
    assert catalog30.count_zeros(0.5, 1, 60) == reference.COUNT_HALF_1_60
    assert catalog30.count_zeros(-1, 2, 60) == 30


def test_count_additivity(catalog30):
    whole = catalog30.count_zeros(-1, 2, 60)
    left = catalog30.count_zeros(-1, 0.4, 60)
    right = catalog30.count_zeros(0.4, 2, 60)
    assert left + right == whole


def test_count_coverage_guard(catalog30):
    with pytest.raises(CoverageError):
        catalog30.count_zeros(-3, 2, 60)
    with pytest.raises(CoverageError):
        catalog30.count_zeros(-1, 2, 100)


def test_count_series_is_cumulative(catalog30):
    series = catalog30.count_series(-1, 2, 10.0)
    counts = [c for _, c in series]
    assert counts == sorted(counts)
    assert series[-1] == (60.0, 30)
    assert counts[0] == catalog30.count_zeros(-1, 2, 10.0)


def test_nearest_pair_toy():
    cat = _toy_catalog([(0.0, 1.0), (0.0, 2.0)], t_hi=5)
    a, b, d = cat.nearest_pair()
    assert abs(d - 1.0) < 1e-12


def test_nearest_pair_thirty(catalog30):
    # brute-force over the reference table as the oracle
    pts = [complex(sg, t) for sg, t in reference.ZEROS_T_LT_60]
    want = min(abs(a - b)
               for i, a in enumerate(pts) for b in pts[i + 1:])
    a, b, d = catalog30.nearest_pair()
    assert abs(d - want) < 1e-6


def test_nearest_pair_needs_two():
    cat = _toy_catalog([(0.0, 1.0)], t_hi=5)
    with pytest.raises(TooFewEntries):
        cat.nearest_pair()


def test_catalog_rejects_lower_half_plane():
    cat = _toy_catalog([])
    with pytest.raises(DomainError):
        cat.add(_record(0.5, -3.0))


def test_catalog_rejects_duplicates():
    cat = _toy_catalog([(0.3, 8.4)])
    with pytest.raises(DuplicateError):
        cat.add(_record(0.3 + 1e-9, 8.4))


def test_save_load_round_trip(tmp_path, catalog30):
    path = tmp_path / "zeros.jsonl"
    catalog30.save(path)
    loaded = ZeroCatalog.load(path)
    assert len(loaded.entries) == 30
    assert loaded.metadata == catalog30.metadata
    for a, b in zip(loaded.entries, catalog30.entries):
        assert mpmath.fabs(a.location - b.location) < 1e-45
        assert a.certified == b.certified and a.winding == b.winding
    # byte-identical on re-save
    path2 = tmp_path / "again.jsonl"
    loaded.save(path2)
    assert path.read_bytes() == path2.read_bytes()


def test_load_reorders_with_warning(tmp_path, caplog):
    cat = _toy_catalog([(0.1, 5.0), (0.2, 7.0)])
    path = tmp_path / "cat.jsonl"
    cat.save(path)
    lines = path.read_text().splitlines()
    path.write_text("\n".join([lines[0], lines[2], lines[1]]) + "\n")
    with caplog.at_level("WARNING"):
        loaded = ZeroCatalog.load(path)
    assert [r.t for r in loaded.entries] == [5.0, 7.0]
    assert any("re-sorting" in r.message for r in caplog.records)


def test_load_rejects_duplicates(tmp_path):
    cat = _toy_catalog([(0.1, 5.0)])
    path = tmp_path / "cat.jsonl"
    cat.save(path)
    lines = path.read_text().splitlines()
    dup = json.loads(lines[1])
    dup["re"] = str(float(dup["re"]) + 1e-9)
    path.write_text("\n".join([lines[0], lines[1], json.dumps(dup)]) + "\n")
    with pytest.raises(DuplicateError):
        ZeroCatalog.load(path)


def test_load_rejects_non_catalog(tmp_path):
    path = tmp_path / "junk.jsonl"
    path.write_text('{"something": "else"}\n')
    with pytest.raises(DomainError):
        ZeroCatalog.load(path)


def test_linear_fit_exact_line():
    series = [(t, 3 * t) for t in range(1, 15)]
    slope, intercept, resid = linear_fit(series)
    assert abs(slope - 3) < 1e-12
    assert abs(intercept) < 1e-9
    assert resid < 1e-9


def test_linear_fit_constant():
    series = [(t, 7) for t in range(1, 15)]
    slope, intercept, resid = linear_fit(series)
    assert abs(slope) < 1e-12
    assert abs(intercept - 7) < 1e-9


def test_linear_fit_needs_ten_points():
    with pytest.raises(TooFewEntries):
        linear_fit([(1, 1), (2, 2)])


def test_count_series_matches_strip_count(catalog30):
    series = catalog30.count_series(0, 0.5, 60.0)
    assert series[-1][1] == catalog30.count_zeros(0, 0.5, 60.0)
