"""Command-line front end.

Examples::

    volconj geom --u-re 0 --u-im 0
    volconj limit --u-re 0 --u-im 0 --n 100:6400:x2 --format csv
    volconj cone --r 0.93 --n 156:5000:x2
    volconj optimistic --p 5
    volconj selftest

Exit codes: 0 success, 1 input or domain error, 2 convergence failure,
3 selftest failure. Warnings go to stderr as ``# warning:`` lines.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import warnings
from typing import Iterable, Sequence

from .asymptotics import BRANCHES, alpha, cone_volume, extrapolate, h_real_r, limit_sweep, real_r_sweep
from .cusp import U_MAX, holonomy_state
from .errors import ConvergenceError, FitError, VolconjError
from .jones import JonesPoint, jones_eval, jones_eval_real_r, rational_approximation
from .optimistic import critical_point, observation_check
from .potential import f_of_u, f_rogers, h_of_u, phi_of_u
from .surgery import FillingSlope, solve_filling, vol_cs, vol_cs_p1

EXIT_OK, EXIT_INPUT, EXIT_CONVERGENCE, EXIT_SELFTEST = 0, 1, 2, 3
DEFAULT_TOL = 1e-8
NEAR_EDGE = 0.9


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def parse_n_list(text: str) -> list[int]:
    """``"200"``, ``"100:6400:x2"`` (geometric) or ``"100:1000:+100"`` (arithmetic)."""
    parts = text.split(":")
    try:
        if len(parts) == 1:
            ns = [int(parts[0])]
        elif len(parts) == 3:
            start, stop, step = int(parts[0]), int(parts[1]), parts[2]
            if step.startswith("x"):
                factor = int(step[1:])
                if factor < 2:
                    raise UsageError("geometric factor must be >= 2")
                ns, n = [], start
                while n <= stop:
                    ns.append(n)
                    n *= factor
            elif step.startswith("+"):
                inc = int(step[1:])
                if inc < 1:
                    raise UsageError("arithmetic step must be >= 1")
                ns = list(range(start, stop + 1, inc))
            else:
                raise UsageError(f"step {step!r} must look like x2 or +k")
        else:
            raise UsageError(f"cannot parse N list {text!r}")
    except ValueError as exc:
        raise UsageError(f"cannot parse N list {text!r}") from exc
    if not ns or min(ns) < 1:
        raise UsageError(f"N list {text!r} is empty or has N < 1")
    return ns


def _tol(text: str) -> float:
    value = float(text)
    if not 0 < value <= 1e-2:
        raise argparse.ArgumentTypeError("tol must lie in (0, 1e-2]")
    return value


def _threads(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("threads must be >= 1")
    return value


def _default_threads() -> int:
    env = os.environ.get("VOLCONJ_THREADS")
    if env is None:
        return 1
    try:
        return _threads(env)
    except (ValueError, argparse.ArgumentTypeError):
        warn(f"ignoring VOLCONJ_THREADS={env!r}")
        return 1


def warn(message: str) -> None:
    print(f"# warning: {message}", file=sys.stderr)


def _cols(name: str, z: complex) -> dict:
    z = complex(z)
    return {f"{name}_re": z.real, f"{name}_im": z.imag}


def _fmt(x) -> str:
    if isinstance(x, float):
        return repr(x)
    return str(x)


def emit(records: Sequence[dict], fmt: str, comments: Iterable[str] = (), extra: dict | None = None) -> None:
    """Write records as CSV (header + rows + ``#`` comments) or a JSON array."""
    out = sys.stdout
    if fmt == "json":
        payload = list(records)
        if extra:
            payload.append(extra)
        json.dump(payload, out, indent=None)
        out.write("\n")
        return
    if records:
        keys = list(records[0])
        out.write(",".join(keys) + "\n")
        for rec in records:
            out.write(",".join(_fmt(rec[k]) for k in keys) + "\n")
    for line in comments:
        out.write(f"# {line}\n")


def _u(args) -> complex:
    return complex(args.u_re, args.u_im)


def _warn_u(u: complex) -> None:
    if NEAR_EDGE * U_MAX < abs(u) <= U_MAX:
        warn(f"|u|={abs(u):.6g} is near the validity radius {U_MAX}")
    _warn_rational(1 + u / (2j * math.pi))


def _warn_rational(r: complex) -> None:
    frac = rational_approximation(r)
    if frac is not None and frac != 1:
        warn(f"r={frac} is rational with small denominator; the limit statement excludes it")


def cmd_geom(args) -> int:
    u = _u(args)
    _warn_u(u)
    s = holonomy_state(u)
    rec = {}
    for name in ("u", "m", "z", "w", "y", "v"):
        rec.update(_cols(name, getattr(s, name)))
    emit([rec], args.format)
    return EXIT_OK


def cmd_potential(args) -> int:
    u = _u(args)
    _warn_u(u)
    rec = {}
    rec.update(_cols("u", u))
    rec.update(_cols("H", h_of_u(u).value))
    rec.update(_cols("f", f_of_u(u).value))
    rec.update(_cols("Phi", phi_of_u(u).value))
    rec.update(_cols("f_rogers", f_rogers(u).value))
    emit([rec], args.format)
    return EXIT_OK


def _n_list(args) -> list[int]:
    if args.n is None:
        raise UsageError("--n is required")
    return parse_n_list(args.n)


def cmd_jones(args) -> int:
    ns = _n_list(args)
    recs = []
    if args.r is not None:
        _warn_rational(args.r)
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            for n in ns:
                j = jones_eval_real_r(n, args.r)
                recs.append({"N": n, "r": args.r, "sign": j.sign, "log_abs": j.log_abs})
        for w in caught[:1]:
            warn(str(w.message))
    else:
        u = _u(args)
        _warn_u(u)
        for n in ns:
            lc = jones_eval(JonesPoint(n, u))
            recs.append({"N": n, "logJ_re": lc.log_mag, "logJ_im": lc.phase})
    emit(recs, args.format)
    return EXIT_OK


def _limit_records(rows) -> list[dict]:
    return [
        {"N": row.N, "logJ_re": row.logJ.log_mag, "logJ_im": row.logJ.phase,
         "est_re": row.estimate.real, "est_im": row.estimate.imag}
        for row in rows
    ]


def _emit_sweep(rows, args) -> None:
    recs = _limit_records(rows)
    comments, extra = [], None
    if len(rows) >= 4:
        fit = extrapolate(rows)
        comments.append(f"extrapolated: {fit.limit.real!r},{fit.limit.imag!r}")
        comments.append(f"fit residual: {fit.residual!r}")
        extra = {"extrapolated_re": fit.limit.real, "extrapolated_im": fit.limit.imag, "residual": fit.residual}
    emit(recs, args.format, comments, extra)


def cmd_limit(args) -> int:
    u = _u(args)
    _warn_u(u)
    rows = limit_sweep(u, _n_list(args), threads=args.threads, branch=args.branch)
    _emit_sweep(rows, args)
    return EXIT_OK


def cmd_cone(args) -> int:
    if args.r is None:
        raise UsageError("--r is required")
    r = args.r
    _warn_rational(r)
    if args.n is None:
        h = h_real_r(r)
        rec = {"r": r, "alpha": alpha(r), "cone_volume": cone_volume(r)}
        rec.update(_cols("H", h))
        emit([rec], args.format)
        return EXIT_OK
    cone_volume(r)  # domain check before the sweep
    with warnings.catch_warnings(record=True):
        warnings.simplefilter("ignore")
        rows = real_r_sweep(r, _n_list(args), threads=args.threads)
    _emit_sweep(rows, args)
    return EXIT_OK


def cmd_fill(args) -> int:
    if args.p is None:
        raise UsageError("--p is required")
    slope = FillingSlope(args.p, args.q)
    u, v = solve_filling(slope)
    residual = abs(slope.p * u + slope.q * v - 2j * math.pi)
    rec = {"p": args.p, "q": args.q}
    rec.update(_cols("u", u))
    rec.update(_cols("v", v))
    rec["residual"] = residual
    rec["ok"] = residual <= args.tol
    emit([rec], args.format)
    return EXIT_OK


def cmd_volcs(args) -> int:
    if args.p is not None:
        if args.q != 1:
            raise UsageError("volcs derives the core length only for q = 1; pass --lam-re/--lam-im with --u-re/--u-im instead")
        res = vol_cs_p1(args.p)
        rec = {"p": args.p, "q": 1}
        rec.update(_cols("u", res.u))
        rec.update(_cols("lambda", res.lam))
        rec.update({"vol": res.vol, "cs": res.cs})
    else:
        u = _u(args)
        _warn_u(u)
        lam = complex(args.lam_re, args.lam_im)
        vol, cs = vol_cs(u, lam)
        rec = {}
        rec.update(_cols("u", u))
        rec.update(_cols("lambda", lam))
        rec.update({"vol": vol, "cs": cs})
    emit([rec], args.format)
    return EXIT_OK


def cmd_optimistic(args) -> int:
    if args.p is not None:
        ps = [args.p]
    elif args.full_range:
        ps = [p for p in range(-100, 101) if abs(p) >= 5]
    else:
        ps = list(range(-12, -4)) + list(range(5, 13))
    recs = []
    for p in ps:
        cp = critical_point(p)
        obs = observation_check(p)
        rec = {"p": p}
        rec.update(_cols("xi0", cp.xi0))
        rec.update(_cols("eta0", cp.eta0))
        rec["grad_norm"] = cp.grad_norm
        rec.update(_cols("lhs", obs.lhs))
        rec.update(_cols("rhs", obs.rhs))
        rec["agree_digits"] = obs.agree_digits
        rec["ok"] = obs.mismatch <= args.tol
        recs.append(rec)
    emit(recs, args.format)
    return EXIT_OK


def cmd_selftest(args) -> int:
    from .selftest import run_all

    results = run_all()
    for res in results:
        print(f"{'PASS' if res.ok else 'FAIL'}  {res.name}: {res.detail}")
    failed = sum(not r.ok for r in results)
    print(f"# {len(results) - failed}/{len(results)} checks passed")
    return EXIT_OK if failed == 0 else EXIT_SELFTEST


COMMANDS = {
    "geom": cmd_geom,
    "potential": cmd_potential,
    "jones": cmd_jones,
    "limit": cmd_limit,
    "cone": cmd_cone,
    "fill": cmd_fill,
    "volcs": cmd_volcs,
    "optimistic": cmd_optimistic,
    "selftest": cmd_selftest,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--u-re", type=float, default=0.0)
    common.add_argument("--u-im", type=float, default=0.0)
    common.add_argument("--n", help="N, or start:stop:x2, or start:stop:+k")
    common.add_argument("--p", type=int)
    common.add_argument("--q", type=int, default=1)
    common.add_argument("--r", type=float)
    common.add_argument("--lam-re", type=float, default=0.0)
    common.add_argument("--lam-im", type=float, default=0.0)
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--tol", type=_tol, default=DEFAULT_TOL)
    common.add_argument("--threads", type=_threads, default=None)
    common.add_argument("--branch", choices=BRANCHES, default="saddle")
    common.add_argument("--full-range", action="store_true", help="optimistic: p in [-100, 100]")

    parser = _Parser(prog="volconj", description="Colored Jones asymptotics of the figure-eight knot.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name in COMMANDS:
        sub.add_parser(name, parents=[common])
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.threads is None:
        args.threads = _default_threads()
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"volconj: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (ConvergenceError, FitError) as exc:
        print(f"volconj: convergence failure: {exc}", file=sys.stderr)
        return EXIT_CONVERGENCE
    except (VolconjError, ValueError) as exc:
        print(f"volconj: error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
