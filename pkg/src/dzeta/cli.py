"""Command-line interface.

Subcommands: eval, scan, find, real, central, bound, count, crosscheck.
Outputs are deterministic CSV (default) or JSON data suitable for external
plotting; there is no interactive mode.  Exit codes: 0 success, 1 numeric
failure, 2 usage error or singular input.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import re
import sys

import mpmath
from mpmath import mp, mpc, mpf

from . import catalog as catalog_mod
from . import __version__
from .double_zeta import (EvalParams, central_value, double_zeta_diagonal,
                          double_zeta_em, em_params_for, zero_free_bound,
                          zero_free_threshold)
from .errors import (DomainError, DZetaError, IndeterminateError, PoleError,
                     SingularityError)
from .precision import COARSE, PrecisionContext
from .search import (EULER_MACLAURIN, HARMONIC_PRODUCT, ScanConfig,
                     find_zeros_region, real_axis_scan, scan_values)
from .verify import certify_zero, cross_check, refine_zero

USAGE_EXIT = 2
NUMERIC_EXIT = 1

_NUM = r"(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?"
_COMPLEX_RE = re.compile(
    rf"^\s*(?P<re>[+-]?{_NUM})?(?P<im>[+-](?:{_NUM})?)?(?P<unit>[ij])?\s*$")


class UsageError(Exception):
    pass


def parse_complex(text: str):
    """Parse 'a+bi' with decimal strings preserved at working precision."""
    m = _COMPLEX_RE.match(text)
    if not m or not (m.group("re") or m.group("unit")):
        raise UsageError(f"cannot parse complex number {text!r}")
    re_part, im_part, unit = m.group("re"), m.group("im"), m.group("unit")
    if unit:
        if im_part is not None:
            real = re_part or "0"
            imag = im_part if im_part not in "+-" else im_part + "1"
        else:
            real = "0"
            imag = re_part if re_part is not None else "1"
    else:
        if im_part is not None:
            raise UsageError(f"missing imaginary unit in {text!r}")
        real, imag = re_part, "0"
    return mpc(mpf(real), mpf(imag))


def parse_range(text: str, default_step=None):
    parts = text.split(":")
    if len(parts) not in (2, 3):
        raise UsageError(f"range must be lo:hi[:step], got {text!r}")
    try:
        lo, hi = float(parts[0]), float(parts[1])
        step = float(parts[2]) if len(parts) == 3 else default_step
    except ValueError as exc:
        raise UsageError(f"bad range {text!r}: {exc}") from None
    if hi <= lo:
        raise UsageError(f"empty range {text!r}")
    if step is not None and step <= 0:
        raise UsageError(f"step must be positive in {text!r}")
    return lo, hi, step


def parse_params(text: str) -> EvalParams:
    try:
        l_str, n_str = text.split(",")
        return EvalParams(l=int(l_str), N=int(n_str))
    except (ValueError, TypeError) as exc:
        raise UsageError(f"--params must be 'l,N', got {text!r}: {exc}") from None


def fmt(value, digits: int) -> str:
    with mp.workdps(digits + 10):
        return mpmath.nstr(mpf(value), digits)


def emit(columns, rows, args):
    """Write rows as CSV or JSON to --out or stdout."""
    if args.format == "json":
        payload = [dict(zip(columns, row)) for row in rows]
        text = json.dumps(payload, indent=2, sort_keys=False) + "\n"
    else:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow(["" if v is None else v for v in row])
        text = buf.getvalue()
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def make_context(args) -> PrecisionContext:
    digits = args.digits
    if digits is None:
        digits = int(os.environ.get("DZETA_DIGITS", "50"))
    return PrecisionContext(digits=digits, guard_digits=args.guard_digits)


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_eval(args) -> int:
    ctx = make_context(args)
    params = parse_params(args.params) if args.params else None
    if args.s is not None:
        s = parse_complex(args.s)
        if args.method == "em":
            p = params or em_params_for(abs(float(s.imag)))
            value = double_zeta_em(s, s, p, ctx)
            used = p
            method = EULER_MACLAURIN
        else:
            value = double_zeta_diagonal(s, ctx)
            used = None
            method = HARMONIC_PRODUCT
    elif args.s1 is not None and args.s2 is not None:
        s1, s2 = parse_complex(args.s1), parse_complex(args.s2)
        used = params or em_params_for(abs(float(s2.imag)))
        value = double_zeta_em(s1, s2, used, ctx)
        method = EULER_MACLAURIN
    else:
        raise UsageError("eval needs --s or both --s1 and --s2")
    d = ctx.digits
    with mp.workdps(d + 10):
        magnitude = mpmath.fabs(value)
    emit(["re", "im", "abs", "method", "l", "N", "digits"],
         [[fmt(value.real, d), fmt(value.imag, d), fmt(magnitude, d), method,
           used.l if used else None, used.N if used else None, d]],
         args)
    return 0


def cmd_scan(args) -> int:
    ctx = make_context(args)
    t_lo, t_hi, t_step = parse_range(args.t, default_step=0.05)
    rows_raw = scan_values(args.sigma, t_lo, t_hi, t_step, ctx)
    d = min(ctx.digits, 17)
    rows = []
    for t, av, re_v, im_v in rows_raw:
        if av is None:
            rows.append([fmt(t, d), None, None, None])
        else:
            rows.append([fmt(t, d), fmt(av, d), fmt(re_v, d), fmt(im_v, d)])
    emit(["t", "abs", "re", "im"], rows, args)
    return 0


def cmd_find(args) -> int:
    ctx = make_context(args)
    s_lo, s_hi, s_step = parse_range(args.sigma, default_step=0.01)
    t_lo, t_hi, t_step = parse_range(args.t, default_step=0.05)
    config = ScanConfig(sigma_lo=s_lo, sigma_hi=s_hi, t_lo=t_lo, t_hi=t_hi,
                        sigma_step=s_step, t_step=t_step)
    method = EULER_MACLAURIN if args.method == "em" else HARMONIC_PRODUCT
    failures: list = []
    records = find_zeros_region(config, method, ctx, threads=args.threads,
                                failures=failures)
    if args.no_certify:
        certified = records
    else:
        certified = [certify_zero(r, ctx=ctx) for r in records]
    for sigma, err in failures:
        print(f"warning: {sigma}: {err}", file=sys.stderr)
    cat = catalog_mod.ZeroCatalog(
        metadata={"sigma_lo": s_lo, "sigma_hi": s_hi, "t_lo": t_lo,
                  "t_hi": t_hi, "sigma_step": s_step, "t_step": t_step,
                  "digits": ctx.digits, "version": __version__},
        dedupe_radius=config.dedupe_radius)
    for r in certified:
        cat.add(r)
    if args.catalog:
        cat.save(args.catalog)
    d = ctx.digits
    emit(["re", "im", "residual", "derivative_mag", "winding", "certified"],
         [[fmt(r.location.real, d), fmt(r.location.imag, d),
           repr(r.residual), repr(r.derivative_mag), r.winding,
           r.certified] for r in cat.entries],
         args)
    return 0


def cmd_real(args) -> int:
    ctx = make_context(args)
    lo, hi, step = parse_range(args.range, default_step=5e-4)
    points = real_axis_scan(lo, hi, ctx, step=step)
    d = ctx.digits
    emit(["sigma", "kind"], [[fmt(p, d), kind] for p, kind in points], args)
    return 0


def cmd_central(args) -> int:
    ks = range(args.k + 1) if args.upto else [args.k]
    emit(["k", "value"], [[k, str(central_value(k))] for k in ks], args)
    return 0


def cmd_bound(args) -> int:
    if args.threshold:
        sigma = zero_free_threshold()
        emit(["threshold"], [[fmt(sigma, 10)]], args)
        return 0
    if args.sigma is None:
        raise UsageError("bound needs --sigma or --threshold")
    value = zero_free_bound(args.sigma)
    emit(["sigma", "bound"], [[args.sigma, fmt(value, 15)]], args)
    return 0


def cmd_count(args) -> int:
    cat = catalog_mod.ZeroCatalog.load(args.catalog)
    if args.nearest:
        a, b, dist = cat.nearest_pair()
        d = max(a.digits_used, b.digits_used)
        emit(["re1", "im1", "re2", "im2", "distance"],
             [[fmt(a.location.real, d), fmt(a.location.imag, d),
               fmt(b.location.real, d), fmt(b.location.imag, d),
               repr(dist)]], args)
        return 0
    if args.strip is None:
        raise UsageError("count needs --strip (or --nearest)")
    lo, hi, _ = parse_range(args.strip)
    if args.series_step:
        series = cat.count_series(lo, hi, args.series_step)
        rows = [[T, c] for T, c in series]
        if args.fit:
            slope, intercept, resid = catalog_mod.linear_fit(series)
            emit(["slope", "intercept", "max_abs_residual"],
                 [[repr(slope), repr(intercept), repr(resid)]], args)
            return 0
        emit(["T", "count"], rows, args)
        return 0
    if args.T is None:
        raise UsageError("count needs --T with --strip")
    emit(["sigma_lo", "sigma_hi", "T", "count"],
         [[lo, hi, args.T, cat.count_zeros(lo, hi, args.T)]], args)
    return 0


def cmd_crosscheck(args) -> int:
    digits = args.digits if args.digits is not None \
        else int(os.environ.get("DZETA_DIGITS", "110"))
    ctx = PrecisionContext(digits=max(digits, 100), guard_digits=args.guard_digits)
    seed = parse_complex(args.zero)
    schedules = []
    for chunk in args.schedules.split(";"):
        p = parse_params(chunk)
        schedules.append((p.l, p.N))
    reference = refine_zero(seed, HARMONIC_PRODUCT, ctx)
    report = cross_check(reference.location, schedules, ctx)
    rows = [[l, N, "" if dev is None else repr(dev)]
            for l, N, dev in report.trials]
    emit(["l", "N", "deviation"], rows, args)
    return 0


# ---------------------------------------------------------------------------

def _add_common(parser, suppress: bool):
    """Attach the global flags; subcommands accept them after their name too."""
    default = argparse.SUPPRESS if suppress else None
    kw = {"default": default} if suppress else {}
    parser.add_argument("--digits", type=int,
                        **(kw or {"default": None}),
                        help="working precision in decimal digits "
                             "(default: DZETA_DIGITS or 50)")
    parser.add_argument("--guard-digits", type=int,
                        **(kw or {"default": 15}))
    parser.add_argument("--params",
                        **(kw or {"default": None}),
                        help="'l,N' override for the Euler-Maclaurin truncation")
    parser.add_argument("--format", choices=("csv", "json"),
                        **(kw or {"default": "csv"}))
    parser.add_argument("--out", **(kw or {"default": None}),
                        help="write output to a file")
    parser.add_argument("--threads", type=int, **(kw or {"default": 1}),
                        help="parallel scan lines in find (affects runtime only)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dzeta",
        description="Evaluate the Euler double zeta-function and survey the "
                    "zeros of its diagonal.")
    _add_common(parser, suppress=False)
    common = argparse.ArgumentParser(add_help=False)
    _add_common(common, suppress=True)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="evaluate zeta2 at a point", parents=[common])
    p.add_argument("--s", default=None, help="diagonal argument 'a+bi'")
    p.add_argument("--s1", default=None)
    p.add_argument("--s2", default=None)
    p.add_argument("--method", choices=("hp", "em"), default="hp")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("scan", help="|zeta2| along a vertical line",
                       parents=[common])
    p.add_argument("--sigma", type=float, required=True)
    p.add_argument("--t", required=True, help="range lo:hi[:step]")
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("find", help="search a rectangle for zeros",
                       parents=[common])
    p.add_argument("--sigma", required=True, help="range lo:hi[:step]")
    p.add_argument("--t", required=True, help="range lo:hi[:step]")
    p.add_argument("--method", choices=("hp", "em"), default="hp")
    p.add_argument("--no-certify", action="store_true")
    p.add_argument("--catalog", default=None, help="append catalog file path")
    p.set_defaults(func=cmd_find)

    p = sub.add_parser("real", parents=[common],
                       help="zeros/poles/indeterminate points on the real axis")
    p.add_argument("--range", required=True, help="range lo:hi[:step]")
    p.set_defaults(func=cmd_real)

    p = sub.add_parser("central", help="exact central values at s = -k",
                       parents=[common])
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--upto", action="store_true", help="list k' = 0..k")
    p.set_defaults(func=cmd_central)

    p = sub.add_parser("bound", help="zero-free bound for sigma > 1",
                       parents=[common])
    p.add_argument("--sigma", type=float, default=None)
    p.add_argument("--threshold", action="store_true",
                   help="least sigma with bound < 1")
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("count", help="region counts over a catalog",
                       parents=[common])
    p.add_argument("--catalog", required=True)
    p.add_argument("--strip", default=None, help="sigma range lo:hi")
    p.add_argument("--T", type=float, default=None)
    p.add_argument("--series-step", type=float, default=None)
    p.add_argument("--fit", action="store_true")
    p.add_argument("--nearest", action="store_true")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("crosscheck", parents=[common],
                       help="Euler-Maclaurin accuracy vs a high-precision zero")
    p.add_argument("--zero", required=True, help="zero location 'a+bi'")
    p.add_argument("--schedules", required=True, help="'l,N;l,N;...'")
    p.set_defaults(func=cmd_crosscheck)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return USAGE_EXIT if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_EXIT
    except (PoleError, IndeterminateError, SingularityError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_EXIT
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_EXIT
    except DZetaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return NUMERIC_EXIT
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_EXIT


if __name__ == "__main__":
    sys.exit(main())
