"""Optimistic-limit potential ``V_p`` for ``(p, 1)`` fillings.

``V_p(xi, eta) = H(xi, eta) + (p/4) log(eta)^2 - 2 pi i log(eta)``.
Its critical point is ``(y(u), m(u)^2)`` where ``p u + v = 2 pi i``, and the
critical value reproduces ``-CS + i Vol`` of the filled manifold (mod pi^2 in
the real part). Note the CS sign flip relative to :mod:`volconj.surgery`.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import CriticalPointNotFound, ExceptionalSlope, InvalidInput
from .potential import dh_deta, dh_dxi, h_two
from .special import li2
from .surgery import canonical_cs, vol_cs_p1

__all__ = [
    "BASE_POINT",
    "CriticalPoint",
    "ObservationResult",
    "v_p",
    "v_p_expanded",
    "grad_v_p",
    "critical_point",
    "observation_check",
]

BASE_POINT = (cmath.exp(-1j * math.pi / 3), 1 + 0j)
GRAD_TOL = 1e-10
MAX_ITER = 60
_FD_STEP = 1e-7


@dataclass(frozen=True)
class CriticalPoint:
    p: int
    xi0: complex
    eta0: complex
    grad_norm: float
    value: complex
    iterations: int

    @property
    def distance_from_base(self) -> float:
        return math.hypot(abs(self.xi0 - BASE_POINT[0]), abs(self.eta0 - BASE_POINT[1]))


@dataclass(frozen=True)
class ObservationResult:
    p: int
    lhs: complex
    rhs: complex
    mismatch: float
    agree_digits: int


def _check_p(p: int) -> int:
    if int(p) != p:
        raise InvalidInput(f"p must be an integer, got {p!r}")
    p = int(p)
    if abs(p) <= 4:
        raise ExceptionalSlope(f"(p,1) = ({p},1) is an exceptional slope")
    return p


def v_p(xi: complex, eta: complex, p: float) -> complex:
    le = cmath.log(eta)
    return h_two(xi, eta).value + p / 4 * le * le - 2j * math.pi * le


def v_p_expanded(xi: complex, eta: complex, p: float) -> complex:
    """Same function written term by term, ``log(-xi) log(eta) - pi i log(eta)``."""
    xi, eta = complex(xi), complex(eta)
    le = cmath.log(eta)
    return li2(1 / (xi * eta)) - li2(xi / eta) + cmath.log(-xi) * le - 1j * math.pi * le + p / 4 * le * le


def grad_v_p(xi: complex, eta: complex, p: float) -> tuple[complex, complex]:
    """Closed-form ``(dV_p/dxi, dV_p/deta)``."""
    d_xi = dh_dxi(xi, eta)
    d_eta = dh_deta(xi, eta) + p * cmath.log(eta) / (2 * eta) - 2j * math.pi / eta
    return d_xi, d_eta


def _grad_vec(x: np.ndarray, p: float) -> np.ndarray:
    return np.array(grad_v_p(x[0], x[1], p), dtype=complex)


def critical_point(p: int, start: tuple[complex, complex] = BASE_POINT) -> CriticalPoint:
    """Damped 2-variable Newton for ``grad V_p = 0``.

    Uses the closed-form gradient and a forward-difference Jacobian of it.

    Raises:
        ExceptionalSlope: ``|p| <= 4``.
        CriticalPointNotFound: no convergence within 60 iterations.
    """
    p = _check_p(p)
    x = np.array(start, dtype=complex)
    g = _grad_vec(x, p)
    for it in range(MAX_ITER):
        norm = float(np.linalg.norm(g))
        if norm <= GRAD_TOL:
            return CriticalPoint(p, complex(x[0]), complex(x[1]), norm, v_p(x[0], x[1], p), it)
        jac = np.empty((2, 2), dtype=complex)
        for j in range(2):
            e = np.zeros(2, dtype=complex)
            e[j] = _FD_STEP
            jac[:, j] = (_grad_vec(x + e, p) - g) / _FD_STEP
        try:
            step = np.linalg.solve(jac, g)
        except np.linalg.LinAlgError as exc:
            raise CriticalPointNotFound(f"singular Jacobian at {x}") from exc
        lam = 1.0
        while True:
            trial = x - lam * step
            try:
                tg = _grad_vec(trial, p)
                ok = bool(np.all(np.isfinite(tg))) and np.linalg.norm(tg) < norm
            except (ValueError, ZeroDivisionError):
                ok = False
            if ok:
                break
            lam /= 2
            if lam < 1e-8:
                raise CriticalPointNotFound(f"line search failed at {x}, |grad|={norm:.3g}")
        x, g = trial, tg
    norm = float(np.linalg.norm(g))
    if norm <= GRAD_TOL:
        return CriticalPoint(p, complex(x[0]), complex(x[1]), norm, v_p(x[0], x[1], p), MAX_ITER)
    raise CriticalPointNotFound(f"no convergence in {MAX_ITER} iterations, |grad|={norm:.3g}")


def _mismatch(lhs: complex, rhs: complex) -> float:
    # real parts only matter mod pi^2
    return max(abs(canonical_cs(lhs.real - rhs.real)), abs(lhs.imag - rhs.imag))


def observation_check(p: int, perturb: complex = 0.0, shift: int = 0) -> ObservationResult:
    """Compare ``V_p`` at its critical point with ``-CS + i Vol`` of the filling.

    Args:
        p: filling coefficient, ``|p| >= 5``.
        perturb: added to both coordinates before evaluating ``V_p``; a
            nonzero value checks that the comparison is not vacuous.
        shift: adds ``shift * pi^2`` to the real part of the left side.

    Returns:
        ``agree_digits = floor(-log10(mismatch))``, capped at 16.
    """
    cp = critical_point(p)
    if perturb:
        lhs = v_p(cp.xi0 + perturb, cp.eta0 + perturb, cp.p)
    else:
        lhs = cp.value
    lhs += shift * math.pi**2
    res = vol_cs_p1(cp.p)
    rhs = complex(-res.cs, res.vol)
    mismatch = _mismatch(lhs, rhs)
    digits = 16 if mismatch == 0 else min(16, math.floor(-math.log10(mismatch)))
    return ObservationResult(cp.p, lhs, rhs, mismatch, digits)
