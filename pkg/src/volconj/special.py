"""Dilogarithm, Rogers dilogarithm and Lobachevsky function.

Branch conventions
------------------
``li2`` is the principal branch of ``-int_0^z log(1-u)/u du`` with its cut on
the real half-line ``(1, +inf)``. A real argument ``x > 1`` is evaluated as
the limit from the lower half-plane, ``Li2(x - i0)``, so that
``Im li2(x) = -pi*log(x)``. A complex argument whose imaginary part is a
signed zero follows the sign of that zero.

All logarithms are principal (``cmath.log``).
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from functools import lru_cache

from .errors import DomainError, InvalidInput

__all__ = ["li2", "lobachevsky", "rogers", "PI2_6"]

PI2_6 = math.pi**2 / 6

_MACLAURIN_RADIUS = 0.5
_MACLAURIN_TERMS = 60
_BERNOULLI_TERMS = 30


@lru_cache(maxsize=1)
def _bernoulli_coefficients() -> tuple[float, ...]:
    """Coefficients B_n/(n+1)! of the series sum_n c_n w^(n+1), w = -log(1-z)."""
    count = 2 * _BERNOULLI_TERMS + 2
    b = [Fraction(0)] * count
    b[0] = Fraction(1)
    for m in range(1, count):
        acc = Fraction(0)
        for k in range(m):
            acc += Fraction(math.comb(m + 1, k)) * b[k]
        b[m] = -acc / (m + 1)
    return tuple(float(b[n] / math.factorial(n + 1)) for n in range(count))


def _check_finite(z: complex) -> complex:
    z = complex(z)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise InvalidInput(f"non-finite argument {z!r}")
    return z


def _maclaurin(z: complex) -> complex:
    # |z| <= 0.5: 60 terms leave a tail below 0.5**60/3600
    total = 0j
    power = z
    for n in range(1, _MACLAURIN_TERMS + 1):
        total += power / (n * n)
        power *= z
    return total


def _bernoulli(z: complex) -> complex:
    # valid for |-log(1-z)| < 2*pi; used for |z| <= 1, Re z <= 1/2
    w = -cmath.log(1 - z)
    w2 = w * w
    c = _bernoulli_coefficients()
    total = w + c[1] * w2
    power = w
    for n in range(2, len(c), 2):
        power *= w2
        term = c[n] * power
        total += term
        if abs(term) < 1e-18 * abs(total):
            break
    return total


def _li2_unit_disk(z: complex) -> complex:
    if abs(z) <= _MACLAURIN_RADIUS:
        return _maclaurin(z)
    if z.real > 0.5:
        if z == 1:
            return complex(PI2_6, 0.0)
        # reflection; 1-z lands in Re <= 1/2 of the disk |1-z| <= 1
        return PI2_6 - cmath.log(z) * cmath.log(1 - z) - _li2_unit_disk(1 - z)
    return _bernoulli(z)


def li2(z: complex) -> complex:
    """Principal dilogarithm with the cut on (1, +inf).

    Args:
        z: finite complex argument. A real ``z > 1`` is read as ``z - i0``.

    Returns:
        ``Li2(z)`` to roughly machine precision for ``|z| <= 10``.

    Raises:
        InvalidInput: if ``z`` is not finite.
    """
    z = _check_finite(z)
    if z == 0:
        return 0j
    if z.imag == 0 and z.real > 1:
        z = complex(z.real, -0.0)
    if abs(z) > 1:
        # inversion: Li2(z) = -pi^2/6 - log(-z)^2/2 - Li2(1/z)
        lm = cmath.log(-z)
        return -PI2_6 - 0.5 * lm * lm - _li2_unit_disk(1 / z)
    return _li2_unit_disk(z)


def lobachevsky(theta: float) -> float:
    """Lobachevsky function ``Im Li2(exp(2 i theta)) / 2``.

    Odd and pi-periodic; the argument is reduced modulo pi first.
    """
    theta = float(theta)
    if not math.isfinite(theta):
        raise InvalidInput(f"non-finite angle {theta!r}")
    reduced = math.remainder(theta, math.pi)
    if reduced == 0.0 or abs(reduced) == math.pi / 2:
        return 0.0
    sign = 1.0
    if reduced < 0:
        sign, reduced = -1.0, -reduced
    return sign * 0.5 * li2(cmath.exp(2j * reduced)).imag


def rogers(xi: complex, limit: bool = False) -> complex:
    """Rogers dilogarithm ``log(xi) log(1-xi) / 2 + Li2(xi)``.

    Args:
        xi: argument, principal logarithms throughout.
        limit: if true, return the limiting values at ``xi = 0`` (0) and
            ``xi = 1`` (pi^2/6) instead of raising.

    Raises:
        DomainError: ``xi`` is 0 or 1 and ``limit`` is false.
    """
    xi = _check_finite(xi)
    if xi == 0 or xi == 1:
        if not limit:
            raise DomainError(f"rogers is singular at {xi!r}; pass limit=True")
        return 0j if xi == 0 else complex(PI2_6, 0.0)
    return 0.5 * cmath.log(xi) * cmath.log(1 - xi) + li2(xi)
