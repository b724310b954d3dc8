"""Deformation data of the figure-eight knot complement as functions of u.

For a meridian log-holonomy ``u`` we compute

* ``m = -exp(u/2)``,
* the two tetrahedron shapes ``z``, ``w`` solving the gluing equations,
* the saddle parameter ``y`` with ``y + 1/y = m^2 - 1 + m^-2``,
* the longitude log-holonomy ``v = 2 log(z (1 - z))``.

All three of ``z``, ``w``, ``y`` share the square root of the discriminant
``(m^2+m+1)(m^2+m-1)(m^2-m+1)(m^2-m-1)``. Its branch is fixed at ``u = 0``
(``+i sqrt 3``) and continued along the straight segment from 0 to ``u`` by
picking, at each step, the root nearest the previous one.

The discriminant vanishes at ``u = +-arccosh(3/2) ~ +-0.9624`` (real) and at
``u = +-2 pi i / 3``. Paths through the real branch points are rejected with
:class:`BranchAmbiguity`.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .errors import BranchAmbiguity, InvalidInput, OutsideValidityDisk

__all__ = [
    "U_MAX",
    "PATH_STEP",
    "HolonomyState",
    "holonomy_state",
    "dv_du",
    "discriminant",
    "gluing_residuals",
]

U_MAX = 1.5
PATH_STEP = 0.02

_BASE_SQRT = complex(0.0, math.sqrt(3.0))


@dataclass(frozen=True)
class HolonomyState:
    u: complex
    m: complex
    z: complex
    w: complex
    y: complex
    v: complex
    sqrt_disc: complex

    @property
    def m2(self) -> complex:
        return self.m * self.m


def _as_u(u: complex) -> complex:
    u = complex(u)
    if not (math.isfinite(u.real) and math.isfinite(u.imag)):
        raise InvalidInput(f"non-finite u {u!r}")
    return u


def discriminant(m: complex) -> complex:
    m2 = m * m
    return (m2 + m + 1) * (m2 + m - 1) * (m2 - m + 1) * (m2 - m - 1)


def _tracked_sqrt(u: complex) -> complex:
    length = abs(u)
    if length == 0:
        return _BASE_SQRT
    root = _BASE_SQRT
    t = 0.0
    dt = min(1.0, PATH_STEP / length)
    min_dt = 1e-7 / length
    while t < 1.0:
        t_next = min(1.0, t + dt)
        cand = cmath.sqrt(discriminant(-cmath.exp(u * t_next / 2)))
        d_plus = abs(cand - root)
        d_minus = abs(cand + root)
        # accept only if the nearer root is clearly nearer than the other one
        if min(d_plus, d_minus) > 0.25 * abs(2 * cand):
            if dt <= min_dt:
                raise BranchAmbiguity(f"square-root branch ambiguous near u={u * t_next!r}")
            dt /= 2
            continue
        root = cand if d_plus <= d_minus else -cand
        t = t_next
        dt = min(dt * 2, PATH_STEP / length)
    return root


def holonomy_state(u: complex, u_max: float = U_MAX) -> HolonomyState:
    """Branch-tracked deformation data at ``u``.

    Raises:
        OutsideValidityDisk: ``|u| > u_max``.
        BranchAmbiguity: the path from 0 runs into a discriminant zero.
    """
    u = _as_u(u)
    if abs(u) > u_max:
        raise OutsideValidityDisk(f"|u|={abs(u):.6g} exceeds u_max={u_max}")
    s = _tracked_sqrt(u)
    m = -cmath.exp(u / 2)
    m2 = m * m
    m4 = m2 * m2
    den = 2 * m2
    z = (-m4 + m2 + 1 + s) / den
    w = (m4 + m2 - 1 + s) / den
    y = (m4 - m2 + 1 - s) / den
    v = 2 * cmath.log(z * (1 - z))
    return HolonomyState(u=u, m=m, z=z, w=w, y=y, v=v, sqrt_disc=s)


def gluing_residuals(state: HolonomyState) -> tuple[complex, complex, complex]:
    """Residuals of the two gluing equations and of ``y + 1/y = m^2 - 1 + m^-2``."""
    z, w, y, m2 = state.z, state.w, state.y, state.m2
    first = cmath.log(w) + cmath.log(1 - z) - state.u
    second = cmath.log(z) + cmath.log(1 - z) + cmath.log(w) + cmath.log(1 - w)
    third = y + 1 / y - (m2 - 1 + 1 / m2)
    return first, second, third


def dv_du(u: complex, h: float = 1e-6, u_max: float = U_MAX) -> complex:
    """Central difference of ``v`` along the real direction of ``u``."""
    u = _as_u(u)
    if abs(u) + h > u_max:
        raise OutsideValidityDisk(f"|u|+h={abs(u) + h:.6g} exceeds u_max={u_max}")
    plus = holonomy_state(u + h, u_max).v
    minus = holonomy_state(u - h, u_max).v
    return (plus - minus) / (2 * h)
