"""Generalized Dehn filling of the figure-eight complement.

The filled structure with slope ``(p, q)`` is found by solving
``p u + q v(u) = 2 pi i``. For the core geodesic of a ``(p, 1)`` filling the
complex length is ``lambda = (2 pi i - v)/p = u``, and

    Vol + i CS = H(u)/i - pi u - u v/(4 i) - (pi/2) lambda   (mod pi^2 i)

with CS reported in ``[-pi^2/2, pi^2/2)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .cusp import U_MAX, HolonomyState, dv_du, holonomy_state
from .errors import (
    BranchAmbiguity,
    ExceptionalSlope,
    InvalidInput,
    NonHyperbolicOrOutOfRange,
    OutsideValidityDisk,
)
from .potential import h_two

__all__ = [
    "FillingSlope",
    "SurgeryResult",
    "TAU0",
    "solve_filling",
    "vol_cs",
    "vol_cs_p1",
    "canonical_cs",
]

MAX_ITER = 50
TOL = 1e-12
# dv/du at the complete structure; exactly 2 sqrt(3) i
TAU0 = dv_du(0)


@dataclass(frozen=True)
class FillingSlope:
    p: float
    q: float

    def __post_init__(self):
        p, q = float(self.p), float(self.q)
        if not (math.isfinite(p) and math.isfinite(q)):
            raise InvalidInput("slope must be finite")
        if p == 0 and q == 0:
            raise InvalidInput("slope (0, 0) is not a filling")
        if p.is_integer() and q.is_integer() and math.gcd(int(p), int(q)) != 1:
            raise InvalidInput(f"integer slope ({int(p)}, {int(q)}) is not coprime")

    @property
    def is_integral(self) -> bool:
        return float(self.p).is_integer() and float(self.q).is_integer()


@dataclass(frozen=True)
class SurgeryResult:
    slope: FillingSlope
    u: complex
    v: complex
    lam: complex
    vol: float
    cs: float


def canonical_cs(x: float) -> float:
    """Representative of ``x`` mod pi^2 in ``[-pi^2/2, pi^2/2)``."""
    period = math.pi**2
    y = x - period * math.floor((x + period / 2) / period)
    # floating slop at the upper edge
    return -period / 2 if y >= period / 2 else y


def _residual(slope: FillingSlope, s: HolonomyState) -> complex:
    return slope.p * s.u + slope.q * s.v - 2j * math.pi


def _state(u: complex) -> HolonomyState:
    try:
        return holonomy_state(u)
    except (OutsideValidityDisk, BranchAmbiguity) as exc:
        raise NonHyperbolicOrOutOfRange(f"iterate u={u!r} left the usable disk: {exc}") from exc


def solve_filling(slope: FillingSlope | tuple[float, float], u0: complex | None = None) -> tuple[complex, complex]:
    """Solve ``p u + q v(u) = 2 pi i`` by damped Newton.

    Args:
        slope: ``FillingSlope`` or a ``(p, q)`` pair.
        u0: starting point; defaults to ``2 pi i / (p + q tau0)``.

    Returns:
        ``(u, v)`` with ``|p u + q v - 2 pi i| <= 1e-12``.

    Raises:
        NonHyperbolicOrOutOfRange: no convergence in 50 steps, or an iterate
            leaves the validity disk.
    """
    if not isinstance(slope, FillingSlope):
        slope = FillingSlope(*slope)
    p, q = slope.p, slope.q
    u = 2j * math.pi / (p + q * TAU0) if u0 is None else complex(u0)
    s = _state(u)
    g = _residual(slope, s)
    for _ in range(MAX_ITER):
        if abs(g) <= TOL:
            return s.u, s.v
        try:
            deriv = p + q * dv_du(s.u)
        except (OutsideValidityDisk, BranchAmbiguity) as exc:
            raise NonHyperbolicOrOutOfRange(str(exc)) from exc
        if deriv == 0:
            raise NonHyperbolicOrOutOfRange("vanishing derivative in Newton step")
        step = g / deriv
        lam = 1.0
        while True:
            trial = s.u - lam * step
            try:
                ts = _state(trial)
                tg = _residual(slope, ts)
            except NonHyperbolicOrOutOfRange:
                tg = None
            if tg is not None and abs(tg) < abs(g):
                break
            lam /= 2
            if lam < 1e-6:
                if abs(g) <= 10 * TOL and tg is not None:
                    # at the rounding floor; accept if within a hair of TOL
                    break
                raise NonHyperbolicOrOutOfRange(f"Newton stalled at u={s.u!r}, |g|={abs(g):.3g}")
        s, g = ts, tg
    if abs(g) <= TOL:
        return s.u, s.v
    raise NonHyperbolicOrOutOfRange(f"no convergence in {MAX_ITER} iterations (|g|={abs(g):.3g})")


def vol_cs(u: complex, lam: complex, u_max: float = U_MAX) -> tuple[float, float]:
    """Volume and Chern-Simons invariant of the deformed structure at ``u``.

    Returns:
        ``(vol, cs)`` with cs in ``[-pi^2/2, pi^2/2)``.
    """
    s = holonomy_state(u, u_max)
    h = h_two(s.y, s.m2).value
    raw = h / 1j - math.pi * s.u - s.u * s.v / 4j - math.pi / 2 * complex(lam)
    return raw.real, canonical_cs(raw.imag)


def vol_cs_p1(p: int) -> SurgeryResult:
    """Filling ``(p, 1)`` with core length ``lambda = u``.

    Raises:
        ExceptionalSlope: ``|p| <= 4``.
    """
    if int(p) != p:
        raise InvalidInput(f"p must be an integer, got {p!r}")
    p = int(p)
    if abs(p) <= 4:
        raise ExceptionalSlope(f"(p,1) = ({p},1) is an exceptional slope")
    slope = FillingSlope(p, 1)
    u, v = solve_filling(slope)
    vol, cs = vol_cs(u, u)
    return SurgeryResult(slope, u, v, u, vol, cs)
