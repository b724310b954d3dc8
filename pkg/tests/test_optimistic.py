from __future__ import annotations

import cmath
import math
import time

import mpmath
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from volconj.cusp import holonomy_state
from volconj.errors import ExceptionalSlope, InvalidInput
from volconj.optimistic import (
    BASE_POINT,
    critical_point,
    grad_v_p,
    observation_check,
    v_p,
    v_p_expanded,
)
from volconj.potential import h_two
from volconj.special import lobachevsky
from volconj.surgery import solve_filling

HYPERBOLIC = [p for p in range(-12, 13) if abs(p) >= 5]


def near_base(rng, count, radius=0.2):
    out = []
    for _ in range(count):
        d = rng.normal(size=4) * radius / 2
        out.append((BASE_POINT[0] + complex(d[0], d[1]), BASE_POINT[1] + complex(d[2], d[3])))
    return out


def mp_v_p(xi, eta, p):
    xi, eta = mpmath.mpc(xi), mpmath.mpc(eta)
    le = mpmath.log(eta)
    val = (
        mpmath.polylog(2, 1 / (xi * eta))
        - mpmath.polylog(2, xi / eta)
        + mpmath.log(-xi) * le
        - 1j * mpmath.pi * le
        + mpmath.mpf(p) / 4 * le**2
    )
    return complex(val)


@given(st.complex_numbers(min_magnitude=0.3, max_magnitude=3, allow_nan=False, allow_infinity=False), st.integers(-50, 50))
def test_eta_one_reduces_to_h(xi, p):
    try:
        ref = h_two(xi, 1).value
    except Exception:
        return
    assert v_p(xi, 1, p) == ref


@pytest.mark.parametrize("p", [5, -7, 12])
def test_value_at_base_point(p):
    assert abs(v_p(*BASE_POINT, p) - 4j * lobachevsky(math.pi / 6)) <= 1e-13


def test_expanded_form_against_mpmath():
    rng = np.random.default_rng(7)
    mpmath.mp.dps = 30
    for xi, eta in near_base(rng, 30, radius=0.4):
        p = int(rng.integers(-12, 13))
        ref = mp_v_p(xi, eta, p)
        assert abs(v_p_expanded(xi, eta, p) - ref) <= 1e-13 * max(1.0, abs(ref))
        assert abs(v_p(xi, eta, p) - v_p_expanded(xi, eta, p)) <= 1e-13 * max(1.0, abs(ref))


def test_closed_gradient_matches_finite_differences():
    rng = np.random.default_rng(11)
    h = 1e-6
    for xi, eta in near_base(rng, 20):
        dx, de = grad_v_p(xi, eta, 5)
        fx = (v_p(xi + h, eta, 5) - v_p(xi - h, eta, 5)) / (2 * h)
        fe = (v_p(xi, eta + h, 5) - v_p(xi, eta - h, 5)) / (2 * h)
        assert abs(dx - fx) <= 1e-6 * max(1.0, abs(fx))
        assert abs(de - fe) <= 1e-6 * max(1.0, abs(fe))


@pytest.mark.parametrize("p", HYPERBOLIC)
def test_critical_point_is_the_filling_state(p):
    cp = critical_point(p)
    s = holonomy_state(solve_filling((p, 1))[0])
    assert cp.grad_norm <= 1e-10
    assert abs(cp.xi0 - s.y) <= 1e-8
    assert abs(cp.eta0 - s.m2) <= 1e-8
    # the closed-form partials vanish at the geometric point itself
    assert max(abs(g) for g in grad_v_p(s.y, s.m2, p)) <= 1e-10


@pytest.mark.parametrize("p", [5, 6, 9])
def test_opposite_p_relation(p):
    a, b = critical_point(p), critical_point(-p)
    # eta0 is conjugated; xi0 goes to the inverse of its conjugate
    assert abs(b.eta0 - a.eta0.conjugate()) <= 1e-8
    assert abs(b.xi0 - 1 / a.xi0.conjugate()) <= 1e-8
    assert abs(b.xi0 - a.xi0.conjugate()) > 0.1


def test_p_five_lies_beyond_unit_distance():
    assert critical_point(5).distance_from_base > 1
    assert critical_point(12).distance_from_base < 1


@pytest.mark.parametrize("p", HYPERBOLIC)
def test_observation_digits(p):
    assert observation_check(p).agree_digits >= 8


def test_observation_sweep_is_fast():
    t0 = time.perf_counter()
    for p in HYPERBOLIC:
        observation_check(p)
    assert time.perf_counter() - t0 <= 5


def test_perturbation_breaks_agreement():
    assert observation_check(5, perturb=1e-3).agree_digits < 6


@pytest.mark.parametrize("p", [5, -7, 12])
def test_shift_by_pi_squared_is_invisible(p):
    digits = {observation_check(p, shift=k).agree_digits for k in range(-2, 3)}
    assert len(digits) == 1


@pytest.mark.parametrize("p", [-4, 0, 1, 4])
def test_exceptional_p(p):
    with pytest.raises(ExceptionalSlope):
        critical_point(p)
    with pytest.raises(ExceptionalSlope):
        observation_check(p)


def test_non_integer_p():
    with pytest.raises(InvalidInput):
        critical_point(5.5)


def test_converges_from_a_nearby_start():
    cp = critical_point(8, start=(BASE_POINT[0] * cmath.exp(0.05j), 1.05))
    assert abs(cp.xi0 - critical_point(8).xi0) <= 1e-9
