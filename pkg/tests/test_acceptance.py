"""Acceptance criteria, one test per criterion (split where a criterion bundles
independent claims). ``conftest.py`` prints a PASS/FAIL line for each.

Run alone with ``python tests/test_acceptance.py`` or
``pytest tests/test_acceptance.py``.
"""

from __future__ import annotations

import cmath
import math
import sys
import time

import numpy as np
import pytest

from volconj.asymptotics import cone_volume, extrapolate, limit_sweep, real_r_sweep
from volconj.cusp import gluing_residuals, holonomy_state
from volconj.jones import (
    JonesPoint,
    jones_direct,
    jones_eval,
    jones_eval_real_r,
    max_min_bounds,
    max_min_value,
    riemann_discrepancy,
)
from volconj.optimistic import critical_point, observation_check
from volconj.potential import (
    VOLUME,
    d2h_dz2_at_saddle,
    f_of_u,
    h_of_u,
    h_power,
    h_two,
    phi_of_u,
)
from volconj.special import li2, lobachevsky
from volconj.surgery import solve_filling, vol_cs_p1

criterion = pytest.mark.criterion

LADDER = [100 * 2**k for k in range(7)]
REAL_LADDER = [5000 // 2**k for k in range(5, -1, -1)]
REAL_RS = (0.93, 1.05)
FILLING_PS = [p for p in range(-12, 13) if abs(p) >= 5]


def random_disk(seed, count, radius):
    rng = np.random.default_rng(seed)
    rad = radius * np.sqrt(rng.uniform(size=count))
    ang = rng.uniform(0, 2 * np.pi, size=count)
    return [complex(a) for a in rad * np.exp(1j * ang)]


@criterion("1", "Kashaev limit u=0, N=100..6400 -> 2.0298832128 +- 1e-4 in <= 30 s")
def test_volume_from_kashaev_limit():
    t0 = time.perf_counter()
    rows = limit_sweep(0, LADDER, threads=1)
    assert all(abs(r.logJ.phase) <= 1e-10 for r in rows)
    pairs = [(r.N, 2 * math.pi * r.logJ.log_mag / r.N) for r in rows]
    fit = extrapolate(pairs)
    elapsed = time.perf_counter() - t0
    assert abs(fit.limit - VOLUME) <= 1e-4
    assert abs(VOLUME - 2.0298832128) <= 1e-10
    assert elapsed <= 30


@criterion("2", "H(0) = 4i L(pi/6) and 4 L(pi/6) = 6 L(pi/3)")
def test_h_at_zero():
    assert abs(h_of_u(0).value - 4j * lobachevsky(math.pi / 6)) <= 1e-12
    assert abs(4 * lobachevsky(math.pi / 6) - 6 * lobachevsky(math.pi / 3)) <= 1e-13


@criterion("3", "identity suite: dilog on circle, duplication, H on circle, gluing, y equation")
def test_identity_suite():
    betas = np.linspace(0, 2 * np.pi, 401)[1:-1]
    dilog = max(
        abs(li2(cmath.exp(1j * b)) - (math.pi**2 / 6 - b / 2 * (math.pi - b / 2) + 2j * lobachevsky(b / 2)))
        for b in betas
    )
    thetas = np.linspace(-3, 3, 301)
    dup = max(
        abs(lobachevsky(2 * t) - 2 * lobachevsky(t) + 2 * lobachevsky(math.pi / 2 - t)) for t in thetas
    )
    circle = max(
        abs(h_two(cmath.exp(1j * t), 1).value + 4j * lobachevsky(t / 2)) for t in np.linspace(0.05, 2 * np.pi - 0.05, 200)
    )
    glue = y_eq = 0.0
    for u in random_disk(3, 200, 0.3):
        first, second, third = gluing_residuals(holonomy_state(u))
        glue = max(glue, abs(first), abs(second))
        y_eq = max(y_eq, abs(third))
    assert dilog <= 1e-12
    assert dup <= 1e-12
    assert circle <= 1e-12
    assert glue <= 1e-12
    assert y_eq <= 1e-13


@criterion("4", "dH/du = v/2 + pi i, dPhi/du = 2v (rel 1e-7), Phi(0) = f(0) = 0")
def test_differential_identities():
    h = 1e-5
    worst_h = worst_phi = 0.0
    for u in random_disk(4, 20, 0.3):
        v = holonomy_state(u).v
        dh = (h_of_u(u + h).value - h_of_u(u - h).value) / (2 * h)
        dphi = (phi_of_u(u + h).value - phi_of_u(u - h).value) / (2 * h)
        worst_h = max(worst_h, abs(dh - (v / 2 + 1j * math.pi)) / abs(v / 2 + 1j * math.pi))
        worst_phi = max(worst_phi, abs(dphi - 2 * v) / abs(2 * v))
    assert worst_h <= 1e-7
    assert worst_phi <= 1e-7
    assert abs(phi_of_u(0).value) <= 1e-13
    assert abs(f_of_u(0).value) <= 1e-13


@criterion("5", "saddle data at r=1: second derivative and Re(H/(2 pi r i))")
def test_saddle_data():
    closed = d2h_dz2_at_saddle(1)
    assert abs(closed - (-3 - math.sqrt(3) * 1j) / 2) <= 1e-12
    s = holonomy_state(0)
    h = 1e-4
    fd = (h_power(s.y + h, 1, s.m2) - 2 * h_power(s.y, 1, s.m2) + h_power(s.y - h, 1, s.m2)) / h**2
    assert abs(fd - closed) <= 1e-6
    val = h_two(s.y, s.m2).value / (2j * math.pi)
    assert abs(val.real - 2 * lobachevsky(math.pi / 6) / math.pi) <= 1e-12


@pytest.fixture(scope="module")
def real_r_fits():
    t0 = time.perf_counter()
    fits = {r: extrapolate(real_r_sweep(r, REAL_LADDER)) for r in REAL_RS}
    return fits, time.perf_counter() - t0


@criterion("6a", "sign(J_N) = (-1)^floor(N(1-r)/r), N in [50,500], r in {0.93, 1.05}")
def test_sign_law_floor():
    bad = [
        (r, n)
        for r in REAL_RS
        for n in range(50, 501)
        if jones_eval_real_r(n, r).sign != (-1) ** (math.floor(n * (1 - r) / r) % 2)
    ]
    assert not bad, f"{len(bad)} mismatches, first {bad[0]}"


@criterion("6b", "2 pi r Im(log J_N)/N -> 2 pi^2 (1-r) within 5e-2")
def test_imaginary_part_law(real_r_fits):
    fits, _ = real_r_fits
    for r, fit in fits.items():
        # estimate is 2 pi i r log J / N, so its real part is -2 pi r Im(log J)/N
        assert abs(-fit.limit.real - 2 * math.pi**2 * (1 - r)) <= 5e-2


@criterion("6c", "cone_volume(r) = 2 pi r lim log|J_N|/N within 2e-2; real-r block <= 60 s")
def test_cone_volume_law(real_r_fits):
    t0 = time.perf_counter()
    fits, sweep_time = real_r_fits
    for r, fit in fits.items():
        assert abs(fit.limit.imag - cone_volume(r)) <= 2e-2
    for r in REAL_RS:
        for n in range(50, 501):
            jones_eval_real_r(n, r)
    assert sweep_time + time.perf_counter() - t0 <= 60


@criterion("7", "Dehn filling p=+-5..+-12: residual, lambda identity, monotone volume")
def test_dehn_filling():
    for p in FILLING_PS:
        u, v = solve_filling((p, 1))
        assert abs(p * u + v - 2j * math.pi) <= 1e-12
        assert abs((2j * math.pi - v) / p - u) <= 1e-12
    for sign in (1, -1):
        vols = [vol_cs_p1(sign * p).vol for p in range(5, 13)]
        assert all(b > a for a, b in zip(vols, vols[1:]))
        assert vols[-1] < VOLUME


@criterion("8", "optimistic limit p=+-5..+-12: critical point and >= 8 digits in <= 5 s")
def test_observation():
    t0 = time.perf_counter()
    for p in FILLING_PS:
        cp = critical_point(p)
        s = holonomy_state(solve_filling((p, 1))[0])
        assert cp.grad_norm <= 1e-10
        assert abs(cp.xi0 - s.y) <= 1e-8
        assert abs(cp.eta0 - s.m2) <= 1e-8
        assert observation_check(p).agree_digits >= 8
    assert time.perf_counter() - t0 <= 5


@criterion("9", "fast sum vs naive double sum to 1e-11, N <= 50, 20 random u")
def test_brute_force_equivalence():
    worst = 0.0
    for u in random_disk(9, 20, 1.0):
        for n in range(1, 51):
            direct = jones_direct(n, u)
            fast = jones_eval(JonesPoint(n, u)).to_complex()
            worst = max(worst, abs(fast - direct) / abs(direct))
    assert worst <= 1e-11


@criterion("10a", "max/min summand bounds (as stated) on 50 random (r, s)")
def test_max_min_stated():
    rng = np.random.default_rng(10)
    N = 100
    bad = []
    for _ in range(50):
        b = rng.uniform(0.001, 0.3) * rng.choice([-1, 1])
        r = complex(rng.uniform(5 / 6, 7 / 6), b)
        s = rng.uniform(0, 2 * math.pi - 2 * math.pi / N)
        for sign in (1, -1):
            lo, hi = max_min_bounds(r, N, sign)
            if not lo <= max_min_value(r, s, sign) <= hi:
                bad.append((r, s, sign))
    assert not bad, f"{len(bad)} violations, first {bad[0]}"


@criterion("10b", "Riemann-sum discrepancy scales like log N/N over N = 200..3200")
def test_discrepancy_decay():
    r = 1 + 0.1j
    ladder = [200, 400, 800, 1600, 3200]
    for sign in (1, -1):
        scaled = [abs(riemann_discrepancy(n, n // 2, r, sign)) * n / math.log(n) for n in ladder]
        assert max(scaled) / min(scaled) <= 2


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
