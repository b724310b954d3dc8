"""Potential functions of the figure-eight knot.

``H(xi, eta) = Li2(1/(xi eta)) - Li2(xi/eta) + (log(-xi) + pi i) log(eta)``
and ``H(u) = H(y, m^2)``. From ``H`` we build

* ``f(u) = H(u) - pi i u - u v / 4 - i Vol``,
* ``Phi(u) = 4 f(u) + u v``,

which satisfy ``f(0) = Phi(0) = 0`` and ``dPhi/du = 2 v``.

``f_rogers`` evaluates the alternative closed form
``(R(z) + R(w) - pi^2/6) / (2 pi) - i Vol / (2 pi)`` built from the Rogers
dilogarithm. It does not agree with ``f``; the gap is exposed through
:func:`f_discrepancy` rather than hidden.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .cusp import U_MAX, holonomy_state
from .errors import DomainError
from .special import li2, lobachevsky, rogers

__all__ = [
    "VOLUME",
    "PotentialValue",
    "h_two",
    "h_of_u",
    "f_of_u",
    "phi_of_u",
    "f_rogers",
    "f_discrepancy",
    "dh_dxi",
    "dh_deta",
    "d2h_dz2_at_saddle",
    "h_power",
]

# 6 L(pi/3), the hyperbolic volume of the figure-eight complement
VOLUME = 6 * lobachevsky(math.pi / 3)

_PRINCIPAL = "principal log; Li2 cut (1,+inf); log(-xi)+pi*i for log(xi)"


@dataclass(frozen=True)
class PotentialValue:
    value: complex
    branch_note: str = _PRINCIPAL

    def __complex__(self) -> complex:
        return self.value


def _on_li2_cut(x: complex) -> bool:
    return x.imag == 0 and x.real > 1


def h_two(xi: complex, eta: complex) -> PotentialValue:
    """Two-variable potential ``H(xi, eta)`` with principal branches."""
    xi, eta = complex(xi), complex(eta)
    if xi == 0 or eta == 0:
        raise DomainError("h_two needs nonzero xi and eta")
    a = 1 / (xi * eta)
    b = xi / eta
    if _on_li2_cut(a) or _on_li2_cut(b):
        raise DomainError(f"Li2 argument on the cut (1,+inf): {a!r}, {b!r}")
    value = li2(a) - li2(b) + (cmath.log(-xi) + math.pi * 1j) * cmath.log(eta)
    return PotentialValue(value)


def dh_dxi(xi: complex, eta: complex) -> complex:
    """Closed-form ``dH/dxi = log(eta + 1/eta - xi - 1/xi) / xi``."""
    return cmath.log(eta + 1 / eta - xi - 1 / xi) / xi


def dh_deta(xi: complex, eta: complex) -> complex:
    """Closed-form ``dH/deta = (log((1 - xi eta)/(eta - xi)) + pi i) / eta``."""
    return (cmath.log((1 - xi * eta) / (eta - xi)) + math.pi * 1j) / eta


def h_of_u(u: complex, u_max: float = U_MAX) -> PotentialValue:
    s = holonomy_state(u, u_max)
    return h_two(s.y, s.m2)


def f_of_u(u: complex, u_max: float = U_MAX) -> PotentialValue:
    s = holonomy_state(u, u_max)
    h = h_two(s.y, s.m2).value
    return PotentialValue(h - math.pi * 1j * s.u - s.u * s.v / 4 - 1j * VOLUME)


def phi_of_u(u: complex, u_max: float = U_MAX) -> PotentialValue:
    s = holonomy_state(u, u_max)
    f = f_of_u(s.u, u_max).value
    return PotentialValue(4 * f + s.u * s.v)


def f_rogers(u: complex, u_max: float = U_MAX) -> PotentialValue:
    """Rogers-dilogarithm form ``(R(z)+R(w)-pi^2/6)/(2 pi) - i Vol/(2 pi)``."""
    s = holonomy_state(u, u_max)
    bracket = rogers(s.z) + rogers(s.w) - math.pi**2 / 6
    value = bracket / (2 * math.pi) - 1j * VOLUME / (2 * math.pi)
    return PotentialValue(value, "principal log; Rogers dilogarithm form")


def f_discrepancy(u: complex, u_max: float = U_MAX) -> complex:
    """``f_rogers(u) - f_of_u(u)``; reported, not expected to vanish."""
    return f_rogers(u, u_max).value - f_of_u(u, u_max).value


def h_power(z: complex, r: complex, m2: complex) -> complex:
    """``H(z^r, m^2)`` with ``z^r = exp(r log z)``."""
    return h_two(cmath.exp(r * cmath.log(z)), m2).value


def d2h_dz2_at_saddle(r: complex, u_max: float = U_MAX) -> complex:
    """Closed form ``r^2 y^(-2/r) (1/y - y)`` for the second z-derivative of
    ``H(z^r, m^2)`` at ``z = y^(1/r)``, where ``u = 2 pi i (r - 1)``."""
    r = complex(r)
    s = holonomy_state(2j * math.pi * (r - 1), u_max)
    y = s.y
    return r * r * cmath.exp(-2 / r * cmath.log(y)) * (1 / y - y)
