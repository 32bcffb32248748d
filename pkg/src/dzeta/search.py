"""Locating zeros of zeta2(s, s): vertical-line scans, Newton refinement,
region sweeps and the real-axis analysis.

Scanning uses an incremental Euler-Maclaurin evaluator: along a vertical
line the power k^-s picks up a fixed rotation k^(-i dt) per grid step, so
after a one-off setup each grid point costs one complex multiplication per
retained term instead of one complex exponential.  Seeds are then polished
by complex Newton iteration on the harmonic-product form at full precision.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field, replace

import mpmath
from mpmath import mp, mpc, mpf

from .arith import bernoulli_coefficient, complex_pow
from .double_zeta import (DEFAULT_GUARD, EvalParams, SingularityMap,
                          _diagonal_derivative_raw, _diagonal_raw, _em_raw,
                          _phi_extra_digits, _qsum_scale_digits, central_value)
from .errors import (DomainError, DZetaError, NoConvergence, PoleError,
                     SingularityError)
from .precision import COARSE, SEARCH, PrecisionContext
from .rzeta import DEFAULT_POLICY

log = logging.getLogger(__name__)

HARMONIC_PRODUCT = "harmonic_product"
EULER_MACLAURIN = "euler_maclaurin"


@dataclass(frozen=True)
class ScanConfig:
    """Grid and thresholds for a rectangular zero sweep."""

    sigma_lo: float
    sigma_hi: float
    t_lo: float
    t_hi: float
    sigma_step: float = 0.01
    t_step: float = 0.05
    candidate_threshold: float = 0.5
    dip_ratio: float = 0.5
    dedupe_radius: float = 1e-6

    def __post_init__(self):
        if not self.sigma_lo < self.sigma_hi:
            raise ValueError("sigma_lo must be < sigma_hi")
        if not self.t_lo < self.t_hi:
            raise ValueError("t_lo must be < t_hi")
        if min(self.sigma_step, self.t_step) <= 0:
            raise ValueError("grid steps must be positive")


@dataclass
class ZeroRecord:
    """A refined (and possibly certified) zero of zeta2(s, s)."""

    location: mpc
    residual: float
    derivative_mag: float
    method: str
    params: EvalParams | None
    digits_used: int
    winding: int | None = None
    certified: bool = False
    diagnostic: str = ""

    @property
    def sigma(self) -> float:
        return float(self.location.real)

    @property
    def t(self) -> float:
        return float(self.location.imag)


# ---------------------------------------------------------------------------
# incremental line evaluation
# ---------------------------------------------------------------------------

class _ZetaLine:
    """zeta(base + i j dt) for j = 0, 1, ... via rotation updates."""

    def __init__(self, sigma, t0, dt, t_max, dps):
        m = DEFAULT_POLICY.cutoff(t_max, dps)
        self.m = m
        self.s = mpc(mpf(sigma), mpf(t0))
        self.ds = mpc(0, mpf(dt))
        self.pows = [complex_pow(k, self.s) for k in range(1, m + 1)]
        self.rots = [complex_pow(k, self.ds) for k in range(1, m + 1)]
        self.coefs = self._plan_terms(sigma, max(abs(t0), abs(t_max)), m, dps)

    @staticmethod
    def _plan_terms(sigma, t_max, m, dps):
        """Bernoulli coefficients needed to exhaust the correction sum."""
        coefs = []
        lg_poch = 0.0
        lg_m = math.log10(m)
        q = 1
        while q < 360:
            lg_poch += math.log10(math.hypot(sigma + q - 1, t_max))
            lg_term = (math.log10(2.0) - (q + 1) * math.log10(2 * math.pi)
                       + lg_poch + (-sigma - q) * lg_m)
            coefs.append(bernoulli_coefficient(q))
            if len(coefs) >= 2 and lg_term < -(dps + 3):
                break
            lg_poch += math.log10(math.hypot(sigma + q, t_max))
            q += 2
        return coefs

    def value(self):
        s, m = self.s, self.m
        acc = mp.zero
        for p in self.pows:
            acc += p
        m_pow = self.pows[-1]
        acc += m * m_pow / (s - 1) - m_pow / 2
        minv = mpf(1) / m
        poch = s
        m_pow_q = m_pow * minv
        for i, coef in enumerate(self.coefs):
            q = 2 * i + 1
            acc += coef * poch * m_pow_q
            poch *= (s + q) * (s + q + 1)
            m_pow_q *= minv * minv
        return acc

    def advance(self):
        rots = self.rots
        pows = self.pows
        for i in range(self.m):
            pows[i] *= rots[i]
        self.s += self.ds


def scan_values(sigma: float, t_lo: float, t_hi: float, t_step: float,
                ctx: PrecisionContext = COARSE, guard_radius: float = DEFAULT_GUARD):
    """Rows (t, |zeta2|, Re, Im) along the line Re s = sigma.

    Grid points inside a singularity guard disk yield (t, None, None, None).
    """
    npts = int(math.floor((t_hi - t_lo) / t_step + 1e-9)) + 1
    if npts < 2:
        raise DomainError("empty scan range")
    sing = SingularityMap(guard_radius)
    rows = []
    with ctx.working():
        dps = ctx.workdps
        line1 = _ZetaLine(sigma, t_lo, t_step, t_hi, dps)
        line2 = _ZetaLine(2 * sigma, 2 * t_lo, 2 * t_step, 2 * t_hi, dps)
        for j in range(npts):
            t = t_lo + j * t_step
            s = mpc(mpf(sigma), line1.s.imag)
            if sing.diagonal(s) is not None:
                rows.append((t, None, None, None))
            else:
                z1 = line1.value()
                f = (z1 * z1 - line2.value()) / 2
                rows.append((t, mpmath.fabs(f), f.real, f.imag))
            if j < npts - 1:
                line1.advance()
                line2.advance()
    return rows


def scan_line(sigma: float, t_range, t_step: float = 0.05,
              ctx: PrecisionContext = COARSE, candidate_threshold: float = 0.5,
              dip_ratio: float = 0.5):
    """Candidate seeds on one line: interior grid minima of |zeta2| that are
    below the threshold and dip to less than ``dip_ratio`` of a flanking
    value.  The dip test rejects lines where |zeta2| is merely small
    everywhere (e.g. far to the right, where it tracks 2^-sigma)."""
    t_lo, t_hi = t_range
    rows = scan_values(sigma, t_lo, t_hi, t_step, ctx)
    seeds = []
    for j in range(1, len(rows) - 1):
        prev, cur, nxt = rows[j - 1][1], rows[j][1], rows[j + 1][1]
        if cur is None or prev is None or nxt is None:
            continue
        if not (cur < prev and cur <= nxt):
            continue
        if cur >= candidate_threshold:
            continue
        if cur >= dip_ratio * max(prev, nxt):
            continue
        seeds.append((float(cur), sigma, rows[j][0]))
    return [mpc(mpf(sg), mpf(t)) for _, sg, t in sorted(seeds)]


# ---------------------------------------------------------------------------
# Newton refinement
# ---------------------------------------------------------------------------

def _make_target(method: str, params: EvalParams | None, ctx: PrecisionContext):
    """(f, f') evaluators at working precision for the chosen method."""
    if method == HARMONIC_PRODUCT:
        dps = ctx.workdps

        def f(s):
            return _diagonal_raw(s, dps)

        def fp(s):
            return _diagonal_derivative_raw(s, dps, ctx.digits)

        return f, fp, 0
    if method == EULER_MACLAURIN:
        if params is None:
            raise ValueError("euler_maclaurin refinement needs EvalParams")
        extra = 5 + max(_phi_extra_digits(params.N, 0.0, params.l),
                        _qsum_scale_digits(0, params.l))

        def f(s):
            s = mpc(s)
            xd = 5 + max(_phi_extra_digits(params.N, float(s.real), params.l),
                         _qsum_scale_digits(s, params.l))
            with mp.workdps(ctx.workdps + xd):
                return _em_raw(s, s, params.l, params.N, ctx.workdps + xd)

        h = mpf(10) ** (-(ctx.digits // 2))

        def fp(s):
            return (f(s + h) - f(s - h)) / (2 * h)

        return f, fp, extra
    raise ValueError(f"unknown method {method!r}")


def refine_zero(seed, method: str = HARMONIC_PRODUCT,
                ctx: PrecisionContext = SEARCH, params: EvalParams | None = None,
                max_iterations: int = 60) -> ZeroRecord:
    """Polish a seed by complex Newton iteration s <- s - f(s)/f'(s).

    Falls back to a secant step whenever the derivative is below 1e-8.
    Raises NoConvergence on budget exhaustion or divergence.
    """
    if method == EULER_MACLAURIN and params is None:
        params = EvalParams()
    sing = SingularityMap(DEFAULT_GUARD)
    with ctx.working():
        f, fp, _ = _make_target(method, params, ctx)
        s = mpc(seed)
        if sing.diagonal(s) is not None:
            raise NoConvergence(f"seed {s} inside a singularity guard disk")
        tol = mpf(10) ** (-(ctx.digits - 5))
        escape = mpmath.fabs(s) + 10
        prev = None          # (s, f(s)) of the previous iterate
        for _ in range(max_iterations):
            try:
                fv = f(s)
            except (PoleError, SingularityError) as exc:
                raise NoConvergence(f"iterate ran into {exc}") from exc
            dv = fp(s)
            if mpmath.fabs(dv) < mpf("1e-8"):
                if prev is None:
                    sp = s + mpf("1e-3")
                    prev = (sp, f(sp))
                denom = fv - prev[1]
                if denom == 0:
                    raise NoConvergence("flat secant step")
                step = fv * (s - prev[0]) / denom
            else:
                step = fv / dv
            prev = (s, fv)
            s = s - step
            if mpmath.fabs(s) > escape:
                raise NoConvergence(f"iteration diverged from seed {seed}")
            if mpmath.fabs(step) < tol:
                break
        else:
            raise NoConvergence(f"no convergence from seed {seed} "
                                f"within {max_iterations} iterations")
        residual = float(mpmath.fabs(f(s)))
        deriv = float(mpmath.fabs(fp(s)))
    return ZeroRecord(
        location=ctx.finalize(s),
        residual=residual,
        derivative_mag=deriv,
        method=method,
        params=params if method == EULER_MACLAURIN else None,
        digits_used=ctx.digits,
    )


# ---------------------------------------------------------------------------
# region sweep
# ---------------------------------------------------------------------------

def _scan_seed_worker(args):
    """Module-level worker so region sweeps can fan out across processes."""
    (sigma, t_lo, t_hi, t_step, digits, guard_digits, threshold, dip) = args
    ctx = PrecisionContext(digits, guard_digits)
    try:
        seeds = scan_line(sigma, (t_lo, t_hi), t_step, ctx, threshold, dip)
    except DZetaError as exc:
        return sigma, [], repr(exc)
    return sigma, [(float(z.real), float(z.imag)) for z in seeds], None


def find_zeros_region(config: ScanConfig, method: str = HARMONIC_PRODUCT,
                      ctx: PrecisionContext = SEARCH,
                      scan_ctx: PrecisionContext = COARSE,
                      threads: int = 1,
                      failures: list | None = None) -> list[ZeroRecord]:
    """Sweep a rectangle: scan every sigma line, refine every seed,
    deduplicate, and return records sorted by imaginary part.

    Per-seed failures are logged (and appended to ``failures`` when given)
    without aborting the sweep.  Seeds landing within 0.04 of an already
    refined zero are skipped; the closest observed zero pair is 0.206 apart,
    so distinct zeros are never merged by the skip.
    """
    n_lines = int(math.floor((config.sigma_hi - config.sigma_lo)
                             / config.sigma_step + 1e-9)) + 1
    jobs = [(config.sigma_lo + i * config.sigma_step, config.t_lo, config.t_hi,
             config.t_step, scan_ctx.digits, scan_ctx.guard_digits,
             config.candidate_threshold, config.dip_ratio)
            for i in range(n_lines)]

    seed_rows = []
    if threads > 1:
        import concurrent.futures

        with concurrent.futures.ProcessPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(_scan_seed_worker, jobs, chunksize=4))
    else:
        results = [_scan_seed_worker(job) for job in jobs]
    for sigma, seeds, err in results:
        if err is not None:
            log.warning("scan line sigma=%s failed: %s", sigma, err)
            if failures is not None:
                failures.append((sigma, err))
        seed_rows.extend(seeds)

    # Refine seeds; cheapest (deepest dip) candidates first would need the
    # scan values, but any deterministic order works because every zero is
    # seeded by several lines.  Sort for reproducibility.
    seed_rows.sort(key=lambda p: (p[1], p[0]))
    skip_radius = 0.04
    found: list[ZeroRecord] = []
    for sg, tt in seed_rows:
        if any((sg - z.sigma) ** 2 + (tt - z.t) ** 2 < skip_radius ** 2
               for z in found):
            continue
        try:
            rec = refine_zero(mpc(sg, tt), method, ctx,
                              params=em_params_for_seed(tt, method))
        except DZetaError as exc:
            log.info("seed (%s, %s) not refined: %s", sg, tt, exc)
            if failures is not None:
                failures.append(((sg, tt), repr(exc)))
            continue
        found.append(rec)

    eps = 1e-9
    inside = [r for r in found
              if config.sigma_lo - eps <= r.sigma <= config.sigma_hi + eps
              and config.t_lo - eps <= r.t <= config.t_hi + eps]
    deduped: list[ZeroRecord] = []
    for rec in sorted(inside, key=lambda r: (r.t, r.sigma)):
        if any(abs(rec.location - kept.location) < config.dedupe_radius
               for kept in deduped):
            continue
        deduped.append(rec)
    return deduped


def em_params_for_seed(t: float, method: str) -> EvalParams | None:
    if method != EULER_MACLAURIN:
        return None
    from .double_zeta import em_params_for

    return em_params_for(abs(t))


# ---------------------------------------------------------------------------
# real axis
# ---------------------------------------------------------------------------

def real_axis_scan(sigma_lo: float, sigma_hi: float,
                   ctx: PrecisionContext = SEARCH, step: float = 5e-4,
                   guard_radius: float = DEFAULT_GUARD):
    """Zeros, poles and indeterminate points of zeta2(sigma, sigma) on
    [sigma_lo, sigma_hi].

    Sign changes of the real-valued restriction are bracketed on a grid and
    refined; the indeterminate points -k contribute their exact central
    values as bracket endpoints, and those with central value zero are
    reported as exact zeros rather than refined numerically.
    """
    if not sigma_lo < sigma_hi:
        raise DomainError("need sigma_lo < sigma_hi")
    results = []
    poles = [x for x in (mpf(1) / 2, mpf(1)) if sigma_lo <= x <= sigma_hi]
    for x in poles:
        results.append((x, "pole"))
    indeterminates = []
    k = max(0, math.ceil(-sigma_hi))
    while -k >= sigma_lo:
        if -k <= sigma_hi:
            cv = central_value(k)
            indeterminates.append((k, cv))
            results.append((mpf(-k), "zero" if cv == 0 else "indeterminate"))
        k += 1
    exact_zero_points = {-k for k, cv in indeterminates if cv == 0}
    central_nodes = {-k: cv for k, cv in indeterminates}

    with ctx.working():
        dps = ctx.workdps

        def f(x):
            return _diagonal_raw(mpf(x), dps).real

        # evaluation nodes: the grid away from guard disks, plus the exact
        # central values at the indeterminate points
        specials = [float(p) for p in poles] + [float(-k) for k, _ in indeterminates]
        nodes = []
        npts = int(math.floor((sigma_hi - sigma_lo) / step + 1e-9)) + 1
        for j in range(npts + 1):
            x = sigma_lo + j * step
            if x > sigma_hi:
                x = sigma_hi
            if any(abs(x - sp) <= guard_radius for sp in specials):
                continue
            nodes.append((mpf(x), None))
            if x == sigma_hi:
                break
        for point, cv in central_nodes.items():
            nodes.append((mpf(point), mpmath.mpmathify(cv)))
        nodes.sort(key=lambda nv: nv[0])

        # split at poles; never bracket across them
        segments = []
        current = []
        boundaries = sorted(float(p) for p in poles)
        bi = 0
        for x, val in nodes:
            while bi < len(boundaries) and x > boundaries[bi]:
                segments.append(current)
                current = []
                bi += 1
            current.append((x, val))
        segments.append(current)

        tol = mpf(10) ** (-(ctx.digits - 5))
        for seg in segments:
            vals = [(x, f(x) if v is None else v) for x, v in seg]
            for (xa, fa), (xb, fb) in zip(vals, vals[1:]):
                if fa == 0 or fb == 0:
                    continue      # endpoint is an exact central-value zero
                if mpmath.sign(fa) == mpmath.sign(fb):
                    continue
                if any(xa < z < xb for z in exact_zero_points):
                    continue      # the sign change belongs to the exact zero
                root = _refine_real_root(f, xa, fa, xb, fb, tol)
                results.append((ctx.finalize(root), "zero"))

    results.sort(key=lambda r: float(r[0]))
    return results


def _refine_real_root(f, xa, fa, xb, fb, tol, bisections: int = 30):
    """Bisection bracket tightening followed by Newton polish."""
    for _ in range(bisections):
        xm = (xa + xb) / 2
        fm = f(xm)
        if fm == 0:
            return xm
        if mpmath.sign(fm) == mpmath.sign(fa):
            xa, fa = xm, fm
        else:
            xb, fb = xm, fm
        if xb - xa < mpf("1e-10"):
            break
    x = (xa + xb) / 2
    h_scale = mpf("1e-12")
    for _ in range(80):
        fx = f(x)
        d = (f(x + h_scale) - f(x - h_scale)) / (2 * h_scale)
        if d == 0:
            break
        step = fx / d
        x = x - step
        if mpmath.fabs(step) < tol:
            break
        h_scale = max(mpmath.fabs(step) / 100, tol)
    return x
