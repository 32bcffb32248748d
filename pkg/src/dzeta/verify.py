"""Certification of candidate zeros.

The paper-style visual check (watching the image curves cross the origin)
is replaced by a discrete argument-principle computation: the total change
of arg zeta2(s,s) around a rectangle, with the boundary sampling bisected
until no consecutive phase jump reaches pi/2, equals 2 pi (zeros - poles)
inside.  A candidate is certified when a small box around it has winding
number exactly 1 and the derivative there is clearly nonzero (simple zero).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import mpmath
from mpmath import mp, mpc, mpf

from .double_zeta import (DEFAULT_GUARD, EvalParams, SingularityMap,
                          _diagonal_raw)
from .errors import BoundaryNearZero, DomainError, NoConvergence
from .precision import SEARCH, PrecisionContext
from .search import (EULER_MACLAURIN, HARMONIC_PRODUCT, ZeroRecord,
                     refine_zero)

#: A simple zero must show at least this derivative magnitude; evaluation
#: noise sits many orders below, observed derivatives many orders above.
SIMPLE_ZERO_THRESHOLD = 1e-6


@dataclass(frozen=True)
class Rectangle:
    sigma_lo: float
    sigma_hi: float
    t_lo: float
    t_hi: float

    def __post_init__(self):
        if not (self.sigma_lo < self.sigma_hi and self.t_lo < self.t_hi):
            raise ValueError("rectangle must have positive extent")

    @staticmethod
    def around(center, halfwidth: float) -> "Rectangle":
        c = mpc(center)
        return Rectangle(float(c.real) - halfwidth, float(c.real) + halfwidth,
                         float(c.imag) - halfwidth, float(c.imag) + halfwidth)


@dataclass
class AccuracyReport:
    """Deviation of Euler-Maclaurin zeros from a high-precision reference."""

    reference: mpc
    trials: list  # (l, N, deviation magnitude | None)


def _distance_to_boundary(rect: Rectangle, point) -> float:
    """Euclidean distance from a point to the rectangle's boundary curve."""
    x, y = float(mpc(point).real), float(mpc(point).imag)
    dx = max(rect.sigma_lo - x, 0.0, x - rect.sigma_hi)
    dy = max(rect.t_lo - y, 0.0, y - rect.t_hi)
    if dx > 0.0 or dy > 0.0:
        return math.hypot(dx, dy)
    # inside: distance to the nearest edge
    return min(x - rect.sigma_lo, rect.sigma_hi - x,
               y - rect.t_lo, rect.t_hi - y)


def _check_boundary_clearance(rect: Rectangle, guard_radius: float):
    specials = [complex(1, 0), complex(0.5, 0)]
    k = 0
    while -k >= rect.sigma_lo - 1:
        specials.append(complex(-k, 0))
        k += 1
    for p in specials:
        if _distance_to_boundary(rect, mpc(p)) <= guard_radius:
            raise DomainError(
                f"rectangle boundary passes within the guard disk of s={p}")


def winding_number(rect: Rectangle, ctx: PrecisionContext = SEARCH,
                   max_samples: int = 2 ** 20,
                   guard_radius: float = DEFAULT_GUARD) -> int:
    """Winding number of zeta2(s,s) around the rectangle boundary.

    Counts zeros minus poles inside, with multiplicity.  Sampling starts at
    eight points per edge and bisects any segment whose phase jump reaches
    pi/2, so no winding can be missed.  Raises BoundaryNearZero when |f| on
    the boundary drops below the precision floor, and NoConvergence if the
    refinement exceeds ``max_samples`` boundary points.
    """
    _check_boundary_clearance(rect, guard_radius)
    with ctx.working():
        dps = ctx.workdps
        floor = mpf(10) ** (-(ctx.digits - 10))

        def f(z):
            value = _diagonal_raw(z, dps)
            if mpmath.fabs(value) < floor:
                raise BoundaryNearZero(
                    f"|zeta2| < 1e-{ctx.digits - 10} at {z} on the boundary; "
                    "perturb the rectangle")
            return value

        corners = [mpc(rect.sigma_lo, rect.t_lo), mpc(rect.sigma_hi, rect.t_lo),
                   mpc(rect.sigma_hi, rect.t_hi), mpc(rect.sigma_lo, rect.t_hi)]
        points = []
        per_edge = 8
        for i in range(4):
            za, zb = corners[i], corners[(i + 1) % 4]
            for j in range(per_edge):
                points.append(za + (zb - za) * mpf(j) / per_edge)
        points.append(points[0])
        samples = [[z, f(z)] for z in points]
        samples[-1][1] = samples[0][1]

        half_pi = mpmath.pi / 2
        total = mp.zero
        n_samples = len(samples)
        i = 0
        while i < len(samples) - 1:
            (za, fa), (zb, fb) = samples[i], samples[i + 1]
            jump = mpmath.arg(fb / fa)
            if abs(jump) >= half_pi:
                if n_samples >= max_samples:
                    raise NoConvergence(
                        f"phase tracking still unresolved after {n_samples} samples")
                zm = (za + zb) / 2
                samples.insert(i + 1, [zm, f(zm)])
                n_samples += 1
                continue
            total += jump
            i += 1
        turns = total / (2 * mpmath.pi)
        nearest = int(mpmath.nint(turns))
        if mpmath.fabs(turns - nearest) > mpf("0.25"):
            raise NoConvergence(f"winding {turns} is not close to an integer")
        return nearest


def certify_zero(record: ZeroRecord, box_halfwidth: float = 1e-3,
                 ctx: PrecisionContext = SEARCH) -> ZeroRecord:
    """Winding + simple-zero check around a refined record.

    winding == 1 and |zeta2'| above the simple-zero threshold certify the
    record.  winding >= 2 marks an unresolved cluster: either a multiple
    zero or several zeros inside one box; the caller should shrink the box
    or split it.  BoundaryNearZero is retried on a slightly inflated box.
    """
    rect = Rectangle.around(record.location, box_halfwidth)
    last = None
    for _ in range(4):
        try:
            w = winding_number(rect, ctx)
            break
        except BoundaryNearZero as exc:
            last = exc
            rect = Rectangle.around(record.location,
                                    (rect.sigma_hi - rect.sigma_lo) * 0.685)
    else:
        raise last
    certified = (w == 1 and record.derivative_mag > SIMPLE_ZERO_THRESHOLD)
    diagnostic = ""
    if w >= 2:
        diagnostic = (f"winding {w}: box contains {w} zeros counted with "
                      "multiplicity; split the box to separate them")
    elif w == 1 and not certified:
        diagnostic = "derivative below the simple-zero threshold"
    elif w == 0:
        diagnostic = "no zero inside the certification box"
    return replace(record, winding=w, certified=certified, diagnostic=diagnostic)


def cross_check(zero, schedules, ctx: PrecisionContext = SEARCH) -> AccuracyReport:
    """Re-refine a high-precision zero with the truncated Euler-Maclaurin
    evaluator for each (l, N) schedule and report |s* - s^{l,N}|.

    The reference should come from the harmonic-product route at a digit
    count comfortably above the expected deviations.
    """
    zero = mpc(zero)
    trials = []
    for l, N in schedules:
        params = EvalParams(l=l, N=N)
        try:
            rec = refine_zero(zero, EULER_MACLAURIN, ctx, params=params,
                              max_iterations=40)
            with ctx.working():
                deviation = float(mpmath.fabs(rec.location - zero))
        except NoConvergence as exc:
            trials.append((l, N, None))
            continue
        trials.append((l, N, deviation))
    return AccuracyReport(reference=zero, trials=trials)
