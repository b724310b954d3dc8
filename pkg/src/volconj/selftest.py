"""Built-in invariant suite behind ``volconj selftest``.

Each check returns ``(ok, detail)``. Checks tagged ``stated`` encode a
property exactly as originally specified even where it is known not to hold;
the adjacent ``measured`` check encodes the identity that does hold.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import numpy as np

from .asymptotics import extrapolate, limit_sweep, real_r_sweep
from .cusp import gluing_residuals, holonomy_state
from .jones import JonesPoint, jones_direct, jones_eval, jones_eval_real_r, max_min_bounds, max_min_value
from .optimistic import BASE_POINT, grad_v_p, observation_check, v_p
from .potential import h_of_u, h_two, phi_of_u
from .special import li2, lobachevsky
from .surgery import canonical_cs, solve_filling, vol_cs_p1

SEED = 20240611


@dataclass(frozen=True)
class CheckResult:
    name: str
    ok: bool
    detail: str


def _rng(offset: int = 0) -> np.random.Generator:
    return np.random.default_rng(SEED + offset)


def _disk(rng: np.random.Generator, count: int, radius: float) -> list[complex]:
    rad = radius * np.sqrt(rng.uniform(0, 1, count))
    ang = rng.uniform(0, 2 * np.pi, count)
    return [complex(x) for x in rad * np.exp(1j * ang)]


def _report(worst: float, tol: float) -> tuple[bool, str]:
    return worst <= tol, f"worst {worst:.3g} (tol {tol:g})"


# special functions

def check_dilog_circle():
    worst = 0.0
    for beta in np.linspace(0, 2 * np.pi, 1001)[1:-1]:
        ref = math.pi**2 / 6 - beta / 2 * (math.pi - beta / 2) + 2j * lobachevsky(beta / 2)
        worst = max(worst, abs(li2(cmath.exp(1j * beta)) - ref))
    return _report(worst, 1e-12)


def check_lobachevsky_symmetry():
    worst_odd = worst_per = 0.0
    for th in np.linspace(-7, 7, 401):
        worst_odd = max(worst_odd, abs(lobachevsky(-th) + lobachevsky(th)))
        worst_per = max(worst_per, abs(lobachevsky(th + math.pi) - lobachevsky(th)))
    return worst_odd <= 1e-14 and worst_per <= 1e-13, f"odd {worst_odd:.3g}, period {worst_per:.3g}"


def check_duplication():
    worst = 0.0
    for th in np.linspace(-3, 3, 301):
        worst = max(worst, abs(lobachevsky(2 * th) - 2 * lobachevsky(th) + 2 * lobachevsky(math.pi / 2 - th)))
    return _report(worst, 1e-12)


def check_reflection():
    worst = 0.0
    for z in _disk(_rng(1), 400, 0.9):
        z = complex(z.real, abs(z.imag))
        if z == 0:
            continue
        worst = max(worst, abs(li2(z) + li2(1 - z) - math.pi**2 / 6 + cmath.log(z) * cmath.log(1 - z)))
    return _report(worst, 1e-12)


# cusp geometry

def check_state_invariants():
    worst_m = worst_glue = worst_y = 0.0
    for u in _disk(_rng(2), 200, 0.3):
        s = holonomy_state(u)
        first, second, third = gluing_residuals(s)
        worst_m = max(worst_m, abs(s.m + cmath.exp(u / 2)))
        worst_glue = max(worst_glue, abs(first), abs(second))
        worst_y = max(worst_y, abs(third))
    base = holonomy_state(0)
    e = cmath.exp(1j * math.pi / 3)
    worst_base = max(abs(base.z - e), abs(base.w - e), abs(base.y - 1 / e), abs(base.v))
    ok = worst_m <= 1e-15 and worst_glue <= 1e-12 and worst_y <= 1e-13 and worst_base <= 1e-15
    return ok, f"m {worst_m:.3g}, gluing {worst_glue:.3g}, y {worst_y:.3g}, base {worst_base:.3g}"


def check_continuity():
    worst = 0.0
    for direction in _disk(_rng(3), 12, 1.0):
        d = direction / abs(direction)
        zs = [holonomy_state(0.3 * d * k / 99).z for k in range(100)]
        worst = max(worst, max(abs(b - a) for a, b in zip(zs, zs[1:])))
    return worst < 0.1, f"largest step {worst:.3g}"


def _conj_gap(u: complex, measured: bool) -> float:
    a, b = holonomy_state(u), holonomy_state(u.conjugate())
    if measured:
        pairs = [
            (b.m, a.m.conjugate()),
            (b.z, 1 - a.w.conjugate()),
            (b.w, 1 - a.z.conjugate()),
            (b.y, 1 / a.y.conjugate()),
            (b.v, -a.v.conjugate()),
        ]
    else:
        pairs = [(getattr(b, n), getattr(a, n).conjugate()) for n in "mzwyv"]
    return max(abs(x - y) for x, y in pairs)


def check_conjugation_stated():
    return _report(max(_conj_gap(u, False) for u in _disk(_rng(4), 50, 0.3)), 1e-12)


def check_conjugation_measured():
    return _report(max(_conj_gap(u, True) for u in _disk(_rng(4), 50, 0.3)), 1e-12)


# potential

def check_critical_point_h():
    # five-point stencil: truncation ~h^4, rounding ~eps/h, both well under 1e-10
    worst = 0.0
    h = 1e-3
    for u in _disk(_rng(5), 50, 0.3):
        s = holonomy_state(u)

        def f(d):
            return h_two(s.y + d, s.m2).value

        fd = (f(-2 * h) - 8 * f(-h) + 8 * f(h) - f(2 * h)) / (12 * h)
        worst = max(worst, abs(fd))
    return _report(worst, 1e-10)


def check_dh_du():
    worst = 0.0
    h = 1e-5
    for u in _disk(_rng(6), 20, 0.3):
        fd = (h_of_u(u + h).value - h_of_u(u - h).value) / (2 * h)
        exact = holonomy_state(u).v / 2 + 1j * math.pi
        worst = max(worst, abs(fd - exact) / abs(exact))
    return _report(worst, 1e-8)


def check_phi():
    worst = 0.0
    h = 1e-5
    for u in _disk(_rng(7), 20, 0.3):
        fd = (phi_of_u(u + h).value - phi_of_u(u - h).value) / (2 * h)
        exact = 2 * holonomy_state(u).v
        worst = max(worst, abs(fd - exact) / abs(exact))
    at0 = abs(phi_of_u(0).value)
    return worst <= 1e-7 and at0 <= 1e-13, f"dPhi/du {worst:.3g}, Phi(0) {at0:.3g}"


# jones

def check_exact_sum():
    worst_mag = worst_phase = 0.0
    for u in _disk(_rng(8), 20, 1.0):
        for n in range(1, 51):
            lc = jones_eval(JonesPoint(n, u))
            d = jones_direct(n, u)
            worst_mag = max(worst_mag, abs(lc.log_mag - math.log(abs(d))) / max(1.0, abs(math.log(abs(d)))))
            gap = (lc.phase - cmath.phase(d) + math.pi) % (2 * math.pi) - math.pi
            worst_phase = max(worst_phase, abs(gap))
    ok = worst_mag <= 1e-11 and worst_phase <= 1e-11
    return ok, f"log_mag {worst_mag:.3g}, phase {worst_phase:.3g}"


def check_positivity():
    worst = max(abs(jones_eval(JonesPoint(n, 0)).phase) for n in list(range(1, 200)) + [400, 1000, 3000])
    return _report(worst, 1e-10)


def _max_min_samples(sharp: bool, N: int = 100):
    rng = _rng(9)
    fails = 0
    worst = None
    for _ in range(50):
        b = rng.uniform(0.001, 0.3) * rng.choice([-1, 1])
        r = complex(rng.uniform(5 / 6, 7 / 6), b)
        s = rng.uniform(0, 2 * math.pi - 2 * math.pi / N)
        for sign in (1, -1):
            lo, hi = max_min_bounds(r, N, sign, sharp=sharp)
            x = max_min_value(r, s, sign)
            if not lo <= x <= hi:
                fails += 1
                worst = (r, s, sign)
    return fails == 0, f"{fails} violations" + (f", e.g. r={worst[0]:.4f}, s={worst[1]:.4f}, sign={worst[2]:+d}" if worst else "")


def check_max_min_stated():
    return _max_min_samples(False)


def check_max_min_sharp():
    return _max_min_samples(True)


# asymptotics

MAIN_SAMPLES = (0.05, 0.1, 0.1 + 0.1j, 0.15 * cmath.exp(1j), 0.05 + 0.2j)
LADDER = tuple(100 * 2**k for k in range(7))
REAL_LADDER = tuple(5000 // 2**k for k in range(5, -1, -1))
SIGN_RS = (0.90 + 1 / (100 * math.pi), 0.93, 1.05)


def check_limit_is_h():
    worst = 0.0
    for u in MAIN_SAMPLES:
        fit = extrapolate(limit_sweep(u, LADDER))
        worst = max(worst, abs(fit.limit - h_of_u(u).value))
    return _report(worst, 1e-3)


def check_im_law():
    r = 0.93
    fit = extrapolate(real_r_sweep(r, REAL_LADDER))
    # Re(2 pi i r log J / N) = -2 pi r Im(log J)/N
    gap = abs(-fit.limit.real - 2 * math.pi**2 * (1 - r))
    return _report(gap, 5e-2)


def _sign_mismatches(rule: Callable[[float], int]) -> list[tuple[float, int]]:
    bad = []
    for r in SIGN_RS:
        for n in range(50, 501):
            if jones_eval_real_r(n, r).sign != (-1) ** (rule(n * (1 - r) / r) % 2):
                bad.append((r, n))
    return bad


def check_sign_law_stated():
    bad = _sign_mismatches(math.floor)
    return not bad, f"{len(bad)} mismatches" + (f", first r={bad[0][0]:.6g} N={bad[0][1]}" if bad else "")


def _near_integer_point(n: int, r: float) -> bool:
    # at decimal r such as 21/20 a factor vanishes exactly when N(1-r)/r is an
    # integer; the binary rounding of r then decides the sign
    q = Fraction(r).limit_denominator(10**6)
    return (n * (1 - q) / q).denominator == 1


def check_sign_law_trunc():
    bad = [(r, n) for r, n in _sign_mismatches(math.trunc) if not _near_integer_point(n, r)]
    return not bad, f"{len(bad)} mismatches off integer points"


# surgery

def _fillings():
    return {p: vol_cs_p1(p) for p in list(range(-12, -4)) + list(range(5, 13))}


def check_filling_residual():
    worst = 0.0
    for p, res in _fillings().items():
        worst = max(worst, abs(p * res.u + res.v - 2j * math.pi))
    u, v = solve_filling((5, 2))
    worst = max(worst, abs(5 * u + 2 * v - 2j * math.pi))
    return _report(worst, 1e-12)


def check_lambda_identity():
    worst = max(abs((2j * math.pi - r.v) / p - r.u) for p, r in _fillings().items())
    return _report(worst, 1e-12)


def check_volume_monotone():
    vols = [vol_cs_p1(p).vol for p in range(5, 101)]
    neg = [vol_cs_p1(-p).vol for p in range(5, 101)]
    inc = all(b > a for a, b in zip(vols, vols[1:])) and all(b > a for a, b in zip(neg, neg[1:]))
    bounded = max(vols + neg) < 2.0298833
    return inc and bounded, f"increasing {inc}, max {max(vols + neg):.10f}"


def check_canonical_cs():
    worst = 0.0
    ok = True
    for x in np.linspace(-40, 40, 801):
        c = canonical_cs(x)
        ok &= -math.pi**2 / 2 <= c < math.pi**2 / 2
        worst = max(worst, abs(canonical_cs(x + math.pi**2) - c))
    return ok and worst <= 1e-12, f"in range {ok}, shift gap {worst:.3g}"


# optimistic

def check_analytic_gradient():
    worst = 0.0
    for p in list(range(-12, -4)) + list(range(5, 13)):
        s = holonomy_state(vol_cs_p1(p).u)
        worst = max(worst, *(abs(g) for g in grad_v_p(s.y, s.m2, p)))
    return _report(worst, 1e-10)


def check_fd_gradient():
    rng = _rng(10)
    worst = 0.0
    h = 1e-6
    for _ in range(20):
        xi = BASE_POINT[0] + complex(*rng.uniform(-0.2, 0.2, 2))
        eta = BASE_POINT[1] + complex(*rng.uniform(-0.2, 0.2, 2))
        p = int(rng.integers(5, 13))
        gx, ge = grad_v_p(xi, eta, p)
        fx = (v_p(xi + h, eta, p) - v_p(xi - h, eta, p)) / (2 * h)
        fe = (v_p(xi, eta + h, p) - v_p(xi, eta - h, p)) / (2 * h)
        worst = max(worst, abs(fx - gx) / abs(gx), abs(fe - ge) / abs(ge))
    return _report(worst, 1e-6)


def check_mod_pi2():
    bad = []
    for p in (5, -7, 12):
        digits = {observation_check(p, shift=k).agree_digits for k in range(-2, 3)}
        if len(digits) != 1:
            bad.append(p)
    return not bad, f"unstable p: {bad}" if bad else "stable for p in (5, -7, 12)"


# cli

def check_thread_determinism():
    a = limit_sweep(0.1, LADDER, threads=1)
    b = limit_sweep(0.1, LADDER, threads=8)
    same = all(x == y for x, y in zip(a, b)) and len(a) == len(b)
    return same, "identical rows" if same else "rows differ"


CHECKS: list[tuple[str, Callable[[], tuple[bool, str]]]] = [
    ("special: dilog on unit circle", check_dilog_circle),
    ("special: lobachevsky odd and pi-periodic", check_lobachevsky_symmetry),
    ("special: lobachevsky duplication", check_duplication),
    ("special: li2 reflection", check_reflection),
    ("cusp: state invariants, 200 samples", check_state_invariants),
    ("cusp: radial continuity", check_continuity),
    ("cusp: conjugation symmetry (stated)", check_conjugation_stated),
    ("cusp: conjugation symmetry (measured)", check_conjugation_measured),
    ("potential: dH/dxi vanishes at y", check_critical_point_h),
    ("potential: dH/du = v/2 + pi i", check_dh_du),
    ("potential: Phi(0) = 0, dPhi/du = 2v", check_phi),
    ("jones: exact-sum equivalence N <= 50", check_exact_sum),
    ("jones: positivity at u = 0", check_positivity),
    ("jones: max/min bounds (stated)", check_max_min_stated),
    ("jones: max/min bounds (sharp)", check_max_min_sharp),
    ("asymptotics: limit equals H(u), 5 samples", check_limit_is_h),
    ("asymptotics: imaginary-part law r = 0.93", check_im_law),
    ("asymptotics: sign law, floor (stated)", check_sign_law_stated),
    ("asymptotics: sign law, trunc (measured)", check_sign_law_trunc),
    ("surgery: filling residual", check_filling_residual),
    ("surgery: lambda identity", check_lambda_identity),
    ("surgery: volume increasing in |p|", check_volume_monotone),
    ("surgery: cs canonicalization", check_canonical_cs),
    ("optimistic: analytic gradient vanishes", check_analytic_gradient),
    ("optimistic: finite-difference gradient", check_fd_gradient),
    ("optimistic: mod pi^2 stability", check_mod_pi2),
    ("cli: thread determinism", check_thread_determinism),
]


def run_all(checks=None) -> list[CheckResult]:
    out = []
    for name, fn in checks or CHECKS:
        try:
            ok, detail = fn()
        except Exception as exc:  # a crash is a failed check, not a crashed suite
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        out.append(CheckResult(name, bool(ok), detail))
    return out
