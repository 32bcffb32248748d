"""Persistent catalog of certified zeros and the counting statistics.

The file format is newline-delimited JSON: a header object carrying the
search metadata followed by one object per zero, locations stored as
decimal strings at their full digit count (binary floats would not round
trip across precisions).  Only upper-half-plane zeros are stored; the
conjugates are implied.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import mpmath
from mpmath import mp, mpc, mpf

from .double_zeta import EvalParams
from .errors import (CoverageError, DomainError, DuplicateError,
                     TooFewEntries)
from .search import ZeroRecord

FORMAT_VERSION = 1


@dataclass
class ZeroCatalog:
    """Ordered, deduplicated collection of zeros with region metadata.

    ``metadata`` should carry at least the covered region under keys
    sigma_lo/sigma_hi/t_lo/t_hi; region queries outside it raise
    CoverageError instead of silently undercounting.
    """

    entries: list = field(default_factory=list)
    metadata: dict = field(default_factory=dict)
    dedupe_radius: float = 1e-6

    def add(self, record: ZeroRecord):
        if record.t <= 0:
            raise DomainError("catalog stores upper-half-plane zeros only")
        for other in self.entries:
            if abs(complex(record.location) - complex(other.location)) \
                    < self.dedupe_radius:
                raise DuplicateError(
                    f"{record.location} duplicates {other.location}")
        self.entries.append(record)
        self.entries.sort(key=lambda r: (r.t, r.sigma))

    # -- queries ---------------------------------------------------------

    def _require_coverage(self, sigma_lo, sigma_hi, T):
        region = self.metadata
        needed = ("sigma_lo", "sigma_hi", "t_hi")
        if not all(k in region for k in needed):
            raise CoverageError("catalog metadata does not describe its region")
        if sigma_lo < region["sigma_lo"] - 1e-12 \
                or sigma_hi > region["sigma_hi"] + 1e-12 \
                or T > region["t_hi"] + 1e-12:
            raise CoverageError(
                f"query ({sigma_lo}, {sigma_hi}) x (0, {T}) exceeds the "
                f"cataloged region")

    def count_zeros(self, sigma_lo: float, sigma_hi: float, T: float) -> int:
        """N(sigma_lo, sigma_hi, T): zeros with sigma strictly inside the
        strip and 0 < t < T."""
        self._require_coverage(sigma_lo, sigma_hi, T)
        return sum(1 for r in self.entries
                   if sigma_lo < r.sigma < sigma_hi and 0 < r.t < T)

    def count_series(self, sigma_lo: float, sigma_hi: float, T_step: float):
        """Cumulative counts at T = T_step, 2 T_step, ... up to coverage."""
        if T_step <= 0:
            raise DomainError("T_step must be positive")
        t_hi = self.metadata.get("t_hi")
        if t_hi is None:
            raise CoverageError("catalog metadata does not describe its region")
        series = []
        T = T_step
        while T <= t_hi + 1e-12:
            series.append((T, self.count_zeros(sigma_lo, sigma_hi, T)))
            T += T_step
        return series

    def nearest_pair(self):
        """The two entries closest in the s-plane, with their distance."""
        if len(self.entries) < 2:
            raise TooFewEntries("nearest_pair needs at least two entries")
        best = None
        for i, a in enumerate(self.entries):
            for b in self.entries[i + 1:]:
                d = abs(complex(a.location) - complex(b.location))
                if best is None or d < best[2]:
                    best = (a, b, d)
        return best

    # -- persistence -----------------------------------------------------

    def save(self, path):
        with open(path, "w", encoding="utf-8") as fh:
            header = {"format": "dzeta-catalog", "version": FORMAT_VERSION,
                      "dedupe_radius": self.dedupe_radius,
                      "metadata": self.metadata}
            fh.write(json.dumps(header, sort_keys=True) + "\n")
            for r in self.entries:
                fh.write(json.dumps(_record_to_json(r), sort_keys=True) + "\n")

    @classmethod
    def load(cls, path) -> "ZeroCatalog":
        with open(path, encoding="utf-8") as fh:
            lines = [ln for ln in fh.read().splitlines() if ln.strip()]
        if not lines:
            raise DomainError(f"{path} is empty")
        header = json.loads(lines[0])
        if header.get("format") != "dzeta-catalog":
            raise DomainError(f"{path} is not a catalog file")
        cat = cls(metadata=header.get("metadata", {}),
                  dedupe_radius=header.get("dedupe_radius", 1e-6))
        records = [_record_from_json(json.loads(ln)) for ln in lines[1:]]
        keys = [(r.t, r.sigma) for r in records]
        if keys != sorted(keys):
            import logging

            logging.getLogger(__name__).warning(
                "%s has out-of-order entries; re-sorting", path)
            records.sort(key=lambda r: (r.t, r.sigma))
        for r in records:
            cat.add(r)
        return cat


def _record_to_json(r: ZeroRecord) -> dict:
    with mp.workdps(r.digits_used + 10):
        re_str = mpmath.nstr(r.location.real, r.digits_used)
        im_str = mpmath.nstr(r.location.imag, r.digits_used)
    return {
        "re": re_str,
        "im": im_str,
        "digits": r.digits_used,
        "residual": float(r.residual),
        "derivative_mag": float(r.derivative_mag),
        "method": r.method,
        "l": r.params.l if r.params else None,
        "N": r.params.N if r.params else None,
        "winding": r.winding,
        "certified": bool(r.certified),
    }


def _record_from_json(obj: dict) -> ZeroRecord:
    digits = int(obj["digits"])
    with mp.workdps(digits + 10):
        loc = mpc(mpf(obj["re"]), mpf(obj["im"]))
    params = None
    if obj.get("l") is not None:
        params = EvalParams(l=int(obj["l"]), N=int(obj["N"]))
    return ZeroRecord(
        location=loc,
        residual=float(obj["residual"]),
        derivative_mag=float(obj["derivative_mag"]),
        method=obj["method"],
        params=params,
        digits_used=digits,
        winding=obj.get("winding"),
        certified=bool(obj.get("certified", False)),
    )


def linear_fit(series):
    """Least-squares line through (T, count) pairs.

    Returns (slope, intercept, max_abs_residual); the residual diagnoses
    how closely the counting function tracks a straight line.
    """
    if len(series) < 10:
        raise TooFewEntries("linear_fit needs at least 10 points")
    xs = [float(t) for t, _ in series]
    ys = [float(c) for _, c in series]
    n = len(xs)
    mean_x = sum(xs) / n
    mean_y = sum(ys) / n
    var = sum((x - mean_x) ** 2 for x in xs)
    if var == 0:
        raise DomainError("degenerate abscissae")
    cov = sum((x - mean_x) * (y - mean_y) for x, y in zip(xs, ys))
    slope = cov / var
    intercept = mean_y - slope * mean_x
    max_resid = max(abs(y - (slope * x + intercept)) for x, y in zip(xs, ys))
    return slope, intercept, max_resid
