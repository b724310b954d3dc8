"""Large-N behaviour of ``J_N``: limit sweeps, extrapolation, saddle data.

The quantity of interest is ``(u + 2 pi i) log J_N / N``. ``log`` is only
defined up to ``2 pi i``, which moves the estimate by ``2 pi i (u + 2 pi i)/N``;
that is ``O(1/N)`` and invisible in the limit, but a branch that jumps
between consecutive N ruins any extrapolation. Three representatives are
offered (see :func:`limit_sweep`).
"""

from __future__ import annotations

import cmath
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

import numpy as np

from .cusp import U_MAX, holonomy_state
from .errors import BranchAmbiguity, DomainError, FitError, InvalidInput
from .jones import (
    REAL_R_INTERVAL,
    JonesPoint,
    LogComplex,
    jones_eval,
    jones_eval_real_r,
    real_r_phase,
)
from .potential import h_two
from .special import lobachevsky

__all__ = [
    "ConvergenceRow",
    "FitResult",
    "BRANCHES",
    "limit_sweep",
    "real_r_sweep",
    "extrapolate",
    "saddle_prediction",
    "alpha",
    "cone_volume",
    "h_real_r",
]

BRANCHES = ("saddle", "continuation", "principal")


@dataclass(frozen=True)
class ConvergenceRow:
    N: int
    logJ: LogComplex
    estimate: complex


@dataclass(frozen=True)
class FitResult:
    limit: complex
    log_coeff: complex
    const_coeff: complex
    residual: float


def _ordered_map(fn: Callable, items: Sequence, threads: int) -> list:
    if threads <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        # map yields in submission order regardless of completion order
        return list(pool.map(fn, items))


def _check_ladder(N_list: Iterable[int], least: int = 2) -> list[int]:
    ns = [int(n) for n in N_list]
    if not ns:
        raise InvalidInput("empty N list")
    if any(n < least for n in ns):
        raise InvalidInput(f"every N must be >= {least}")
    if any(b <= a for a, b in zip(ns, ns[1:])):
        raise InvalidInput("N list must be strictly increasing")
    return ns


def saddle_prediction(pt: JonesPoint) -> LogComplex:
    """Leading saddle-point term for ``log J_N``.

    ``(N/(2 pi i)) sqrt(2 pi) / (r sqrt(N) sqrt(y - 1/y)) exp(N H(y, m^2) / (2 pi r i))``
    with principal square roots.
    """
    if pt.N < 2:
        raise InvalidInput("saddle_prediction needs N >= 2")
    s = holonomy_state(pt.u)
    r = pt.r
    h = h_two(s.y, s.m2).value
    pref = (pt.N / (2j * math.pi)) * math.sqrt(2 * math.pi) / (r * math.sqrt(pt.N) * cmath.sqrt(s.y - 1 / s.y))
    total = cmath.log(pref) + pt.N * h / (2j * math.pi * r)
    return LogComplex(total.real, total.imag)


def _shift_phase(lc: LogComplex, target: float) -> LogComplex:
    k = round((target - lc.phase) / (2 * math.pi))
    return LogComplex(lc.log_mag, lc.phase + 2 * math.pi * k, lc.is_zero)


def _continued_phase(N: int, u: complex, max_halvings: int = 40) -> LogComplex:
    """Unwrap the principal phase of ``J_N`` along the segment ``s u``, s in [0,1].

    A step is accepted only if one full step and two half steps agree on the
    phase increment, and that increment stays below pi/4.
    """
    def principal(s):
        return jones_eval(JonesPoint(N, s * u))

    def wrap(x):
        return (x + math.pi) % (2 * math.pi) - math.pi

    s, ds = 0.0, 0.05
    prev = principal(0.0)
    phase = prev.phase
    halvings = 0
    while s < 1.0:
        s2 = min(1.0, s + ds)
        mid = principal(0.5 * (s + s2))
        end = principal(s2)
        one = wrap(end.phase - prev.phase)
        two = wrap(mid.phase - prev.phase) + wrap(end.phase - mid.phase)
        if abs(one - two) > 1e-6 or abs(one) > math.pi / 4:
            halvings += 1
            if halvings > max_halvings:
                raise BranchAmbiguity(f"phase continuation stalled at s={s:.6g}, N={N}")
            ds /= 2
            continue
        phase += one
        prev = end
        s = s2
        halvings = 0
        ds = min(0.1, ds * 1.5)
    return LogComplex(prev.log_mag, phase, prev.is_zero)


def _row(N: int, u: complex, branch: str) -> ConvergenceRow:
    pt = JonesPoint(N, u)
    if branch == "principal":
        lj = jones_eval(pt)
    elif branch == "saddle":
        lj = _shift_phase(jones_eval(pt), saddle_prediction(pt).phase) if N >= 2 else jones_eval(pt)
    elif branch == "continuation":
        lj = _continued_phase(N, u)
    else:
        raise InvalidInput(f"unknown branch {branch!r}; use one of {BRANCHES}")
    return ConvergenceRow(N, lj, (u + 2j * math.pi) * lj.log() / N)


def limit_sweep(u: complex, N_list: Iterable[int], threads: int = 1, branch: str = "saddle") -> list[ConvergenceRow]:
    """Rows ``(N, log J_N, (u + 2 pi i) log J_N / N)`` in increasing N.

    Args:
        u: deformation parameter, ``|u| <= U_MAX``.
        N_list: strictly increasing, all ``>= 2``.
        threads: worker count; output order never depends on it.
        branch: choice of ``log`` representative.
            ``"saddle"`` takes the ``2 pi k`` shift nearest the phase of
            :func:`saddle_prediction`; ``"continuation"`` unwraps the phase
            from ``u = 0`` where ``J_N > 0``; ``"principal"`` leaves it alone.
            Continuation is path dependent once ``J_N`` has zeros close to
            the segment (seen at ``u = 0.05 + 0.2i`` for N >= 1600, where it
            lands 3 to 9 turns away) and is much slower; it is kept as a
            cross-check, not as the default.
    """
    u = complex(u)
    if abs(u) > U_MAX:
        raise DomainError(f"|u|={abs(u):.6g} exceeds u_max={U_MAX}")
    if branch not in BRANCHES:
        raise InvalidInput(f"unknown branch {branch!r}; use one of {BRANCHES}")
    ns = _check_ladder(N_list)
    return _ordered_map(lambda n: _row(n, u, branch), ns, threads)


def _real_row(N: int, r: float) -> ConvergenceRow:
    j = jones_eval_real_r(N, r)
    if j.sign == 0:
        raise DomainError(f"J_N vanishes at N={N}, r={r}")
    lj = LogComplex(j.log_abs, real_r_phase(N, r, j.sign))
    return ConvergenceRow(N, lj, 2j * math.pi * r * lj.log() / N)


def real_r_sweep(r: float, N_list: Iterable[int], threads: int = 1) -> list[ConvergenceRow]:
    """Rows at ``q_r = exp(2 pi i r/N)`` for real ``r``; estimate ``2 pi i r log J_N / N``.

    The phase representative is :func:`volconj.jones.real_r_phase`.
    """
    ns = _check_ladder(N_list)
    return _ordered_map(lambda n: _real_row(n, float(r)), ns, threads)


def extrapolate(rows: Sequence[ConvergenceRow] | Sequence[tuple[int, complex]]) -> FitResult:
    """Least-squares fit of ``estimate(N) = limit + (a log N + b)/N``.

    Accepts rows or plain ``(N, estimate)`` pairs.

    Raises:
        FitError: fewer than 4 rows or a rank-deficient design.
    """
    pairs = [(r.N, r.estimate) if isinstance(r, ConvergenceRow) else (int(r[0]), complex(r[1])) for r in rows]
    if len(pairs) < 4:
        raise FitError(f"need at least 4 rows, got {len(pairs)}")
    n = np.array([p[0] for p in pairs], dtype=float)
    y = np.array([p[1] for p in pairs], dtype=complex)
    design = np.column_stack([np.ones_like(n), np.log(n) / n, 1 / n]).astype(complex)
    if np.linalg.matrix_rank(design) < 3:
        raise FitError("rank-deficient design; need at least 3 distinct N")
    coef, *_ = np.linalg.lstsq(design, y, rcond=None)
    residual = float(np.linalg.norm(design @ coef - y))
    return FitResult(complex(coef[0]), complex(coef[1]), complex(coef[2]), residual)


def _check_interval(r: float) -> float:
    r = float(r)
    lo, hi = REAL_R_INTERVAL
    if not lo < r < hi:
        raise DomainError(f"r={r} outside ({lo:.6g}, {hi:.6g})")
    return r


def alpha(r: float) -> float:
    """``arccos(cos(2 pi r) - 1/2)`` in [0, pi]."""
    r = _check_interval(r)
    return math.acos(math.cos(2 * math.pi * r) - 0.5)


def cone_volume(r: float) -> float:
    """``2 (L(pi r + alpha/2) - L(pi r - alpha/2))`` for r in (5/6, 7/6)."""
    a = alpha(r)
    return 2 * (lobachevsky(math.pi * r + a / 2) - lobachevsky(math.pi * r - a / 2))


def h_real_r(r: float) -> complex:
    """Closed form of ``H(y, m^2)`` at ``u = 2 pi i (r - 1)``, r real."""
    return complex(-2 * math.pi**2 * (r - 1), cone_volume(r))
