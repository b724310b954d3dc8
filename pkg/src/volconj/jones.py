"""Colored Jones polynomial of the figure-eight knot near roots of unity.

We use the cyclotomic (Habiro-type) sum

    J_N(t) = sum_{n=0}^{N-1} prod_{k=1}^{n} t^N (1 - t^(-N-k)) (1 - t^(-N+k))

at ``t = exp((u + 2 pi i)/N)``. Terms grow like ``exp(N Vol / 2 pi)`` and
overflow doubles near N ~ 2200, so everything is kept in log form.
"""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy import integrate

from .cusp import U_MAX
from .errors import DomainError, InvalidInput, OutsideValidityDisk, ValidityWarning

__all__ = [
    "LogComplex",
    "SignedLog",
    "JonesPoint",
    "jones_eval",
    "jones_direct",
    "jones_eval_real_r",
    "real_r_phase",
    "riemann_discrepancy",
    "max_min_bounds",
    "max_min_value",
    "log_n_bound",
    "rational_approximation",
    "REAL_R_INTERVAL",
]

REAL_R_INTERVAL = (5 / 6, 7 / 6)


@dataclass(frozen=True)
class LogComplex:
    """A complex number ``exp(log_mag + i phase)``, or exactly zero."""

    log_mag: float
    phase: float = 0.0
    is_zero: bool = False

    @classmethod
    def zero(cls) -> LogComplex:
        return cls(-math.inf, 0.0, True)

    @classmethod
    def from_complex(cls, x: complex) -> LogComplex:
        x = complex(x)
        if x == 0:
            return cls.zero()
        return cls(math.log(abs(x)), cmath.phase(x))

    def __mul__(self, other: LogComplex) -> LogComplex:
        if self.is_zero or other.is_zero:
            return LogComplex.zero()
        return LogComplex(self.log_mag + other.log_mag, self.phase + other.phase)

    def __add__(self, other: LogComplex) -> LogComplex:
        if self.is_zero:
            return other
        if other.is_zero:
            return self
        big, small = (self, other) if self.log_mag >= other.log_mag else (other, self)
        ratio = cmath.exp(complex(small.log_mag - big.log_mag, small.phase - big.phase))
        total = 1 + ratio
        if total == 0:
            return LogComplex.zero()
        return LogComplex(big.log_mag + math.log(abs(total)), big.phase + cmath.phase(total))

    def log(self) -> complex:
        """``log_mag + i*phase``; raises on zero."""
        if self.is_zero:
            raise DomainError("log of zero")
        return complex(self.log_mag, self.phase)

    def to_complex(self) -> complex:
        """Plain complex value; overflows to inf for large ``log_mag``."""
        if self.is_zero:
            return 0j
        try:
            return cmath.rect(math.exp(self.log_mag), self.phase)
        except OverflowError:
            c, s = math.cos(self.phase), math.sin(self.phase)
            return complex(math.copysign(math.inf, c) if c else 0.0, math.copysign(math.inf, s) if s else 0.0)


@dataclass(frozen=True)
class SignedLog:
    """A real number ``sign * exp(log_abs)``."""

    log_abs: float
    sign: int

    @property
    def value(self) -> float:
        if self.sign == 0:
            return 0.0
        try:
            return self.sign * math.exp(self.log_abs)
        except OverflowError:
            return self.sign * math.inf

    def __float__(self) -> float:
        return self.value


@dataclass(frozen=True)
class JonesPoint:
    N: int
    u: complex = 0j

    def __post_init__(self):
        if int(self.N) != self.N or self.N < 1:
            raise InvalidInput(f"N must be a positive integer, got {self.N!r}")
        u = complex(self.u)
        if not (math.isfinite(u.real) and math.isfinite(u.imag)):
            raise InvalidInput(f"non-finite u {u!r}")
        if abs(u) > U_MAX:
            raise OutsideValidityDisk(f"|u|={abs(u):.6g} exceeds u_max={U_MAX}")
        object.__setattr__(self, "N", int(self.N))
        object.__setattr__(self, "u", u)

    @property
    def r(self) -> complex:
        return 1 + self.u / (2j * math.pi)

    @property
    def t(self) -> complex:
        return cmath.exp((self.u + 2j * math.pi) / self.N)


def _log_factors(N: int, u: complex) -> np.ndarray:
    # log of t^N (1 - t^(-N-k)) (1 - t^(-N+k)), k = 1..N-1, with t^N -> e^u.
    # Exponents are written out so that 2 pi i k / N is formed without
    # going through powers of t.
    k = np.arange(1, N, dtype=float)
    turn = 2j * np.pi * k / N
    a = -u * (N + k) / N - turn
    b = -u * (N - k) / N + turn
    return u + np.log(-np.expm1(a)) + np.log(-np.expm1(b))


def jones_eval(pt: JonesPoint) -> LogComplex:
    """``log J_N(t)`` for ``t = exp((u + 2 pi i)/N)``, in O(N).

    The partial products keep a continuous phase (sum of factor arguments);
    the returned phase is the principal argument of the final sum.
    """
    N, u = pt.N, pt.u
    if N == 1:
        return LogComplex(0.0, 0.0)
    logs = np.empty(N, dtype=complex)
    logs[0] = 0
    np.cumsum(_log_factors(N, u), out=logs[1:])
    shift = logs.real.max()
    total = np.exp(logs - shift).sum()
    if total == 0:
        return LogComplex.zero()
    return LogComplex(float(shift + np.log(abs(total))), float(np.angle(total)))


def jones_direct(N: int, u: complex) -> complex:
    """Naive O(N^2) evaluation straight from the defining sum (no overflow guard)."""
    t = cmath.exp((complex(u) + 2j * math.pi) / N)
    tn = t**N
    total = 0j
    for n in range(N):
        term = 1 + 0j
        for k in range(1, n + 1):
            term *= tn * (1 - t ** (-N - k)) * (1 - t ** (-N + k))
        total += term
    return total


def _sin_pi_ratio(a: int, d: int) -> float:
    # sin(pi a/d) for integers, reducing a/d exactly to [-1/2, 1/2]
    a %= 2 * d
    if a > d:
        a -= 2 * d
    if 2 * a > d:
        a = d - a
    elif 2 * a < -d:
        a = -d - a
    return math.sin(math.pi * (a / d))


def _real_factors(N: int, r: float) -> np.ndarray:
    # 2cos(2 pi r) - 2cos(2 pi r k/N) = -4 sin(pi r (N+k)/N) sin(pi r (N-k)/N)
    # r = P/Q exactly, so every angle is an exact integer ratio
    P, Q = r.as_integer_ratio()
    d = Q * N
    out = np.empty(N - 1)
    for k in range(1, N):
        out[k - 1] = -4 * _sin_pi_ratio(P * (N + k), d) * _sin_pi_ratio(P * (N - k), d)
    return out


def jones_eval_real_r(N: int, r: float) -> SignedLog:
    """``J_N`` at ``q_r = exp(2 pi i r/N)`` for real ``r``.

    Every factor ``t^N (1 - t^(-N-k)) (1 - t^(-N+k))`` collapses to the real
    number ``2cos(2 pi r) - 2cos(2 pi r k/N)``, so the sum is exactly real.
    Returned as sign and log-magnitude since it overflows for large N.

    Warns:
        ValidityWarning: ``r`` outside (5/6, 7/6).
    """
    if int(N) != N or N < 1:
        raise InvalidInput(f"N must be a positive integer, got {N!r}")
    r = float(r)
    if not math.isfinite(r):
        raise InvalidInput(f"non-finite r {r!r}")
    lo, hi = REAL_R_INTERVAL
    if not lo < r < hi:
        warnings.warn(f"r={r} outside ({lo:.6g}, {hi:.6g})", ValidityWarning, stacklevel=2)
    N = int(N)
    if N == 1:
        return SignedLog(0.0, 1)
    f = _real_factors(N, r)
    if np.any(f == 0):
        # the product vanishes from the first zero factor on
        f = f[: int(np.argmax(f == 0))]
    log_abs = np.concatenate([[0.0], np.cumsum(np.log(np.abs(f)))])
    signs = np.concatenate([[1.0], np.cumprod(np.sign(f))])
    shift = log_abs.max()
    total = float(np.sum(signs * np.exp(log_abs - shift)))
    if total == 0:
        return SignedLog(-math.inf, 0)
    return SignedLog(float(shift + math.log(abs(total))), 1 if total > 0 else -1)


def real_r_phase(N: int, r: float, sign: int) -> float:
    """Phase representative used for ``log J_N(q_r)`` at real ``r``.

    Each negative factor contributes ``+pi`` for ``r < 1`` and ``-pi`` for
    ``r > 1``; the count is ``trunc(N(1-r)/r)``. If the actual sign disagrees
    with that count's parity, one more half-turn is added in the same
    direction.
    """
    j = math.trunc(N * (1 - r) / r)
    if sign != (-1) ** (j % 2):
        j += 1 if r < 1 else -1
    return math.pi * j


def _check_r_complex(r: complex) -> complex:
    r = complex(r)
    if r.imag == 0:
        raise DomainError("riemann_discrepancy needs r off the real line")
    return r


def riemann_discrepancy(N: int, n: int, r: complex, sign: int) -> complex:
    """Riemann-sum error ``phi_{N,+-}(n)``.

    ``sum_{k=1}^n (2 pi/N) g(2 pi k/N) - int_0^{2 pi n/N} g(s) ds`` with
    ``g(s) = log(1 - exp(+-s r i - 2 pi r i))`` (principal log).

    Raises:
        DomainError: ``r`` is real.
    """
    r = _check_r_complex(r)
    if sign not in (1, -1):
        raise InvalidInput("sign must be +1 or -1")
    if not 0 <= n <= N - 1:
        raise InvalidInput(f"need 0 <= n <= N-1, got n={n}, N={N}")
    if n == 0:
        return 0j

    def g(s):
        return cmath.log(1 - cmath.exp(sign * s * r * 1j - 2j * math.pi * r))

    h = 2 * math.pi / N
    riemann = sum(g(k * h) for k in range(1, n + 1)) * h
    top = n * h
    # principal log jumps where the exponent's imaginary part hits 2 pi Z
    # with modulus > 1; split the integral there
    a = r.real
    points = []
    if a != 0:
        lo, hi = sorted(((-2 * math.pi * a), (sign * top * a - 2 * math.pi * a)))
        for j in range(math.ceil(lo / (2 * math.pi)), math.floor(hi / (2 * math.pi)) + 1):
            s = (2 * math.pi * j + 2 * math.pi * a) / (sign * a)
            if 0 < s < top:
                points.append(s)
    opts = dict(points=points or None, limit=400, epsabs=1e-12, epsrel=1e-12)
    re, _ = integrate.quad(lambda s: g(s).real, 0, top, **opts)
    im, _ = integrate.quad(lambda s: g(s).imag, 0, top, **opts)
    return riemann - complex(re, im)


def max_min_value(r: complex, s: float, sign: int) -> float:
    """``log|1 - exp(+-s r i - 2 pi r i)|``."""
    r = complex(r)
    return math.log(abs(1 - cmath.exp(sign * s * r * 1j - 2j * math.pi * r)))


def max_min_bounds(r: complex, N: int, sign: int, sharp: bool = False) -> tuple[float, float]:
    """Lower and upper bounds for :func:`max_min_value` on
    ``s in [0, 2 pi - 2 pi/N]`` with ``b = Im r != 0``.

    Upper bounds are ``log(1 + e^{2 pi b})`` (sign +1) and
    ``log(1 + e^{4 pi |b|})`` (sign -1). For sign +1 and ``b < 0`` the
    modulus ``e^{b(2 pi - s)}`` climbs to ``e^{2 pi b/N}`` at the right end,
    so the first upper bound is too small there; ``sharp=True`` uses
    ``log(1 + e^{2 pi b/N})`` in that case instead.
    """
    b = _check_r_complex(r).imag
    if sign == 1:
        upper_exp = 2 * math.pi * b / N if (sharp and b < 0) else 2 * math.pi * b
        return math.log(abs(1 - math.exp(2 * math.pi * b / N))), math.log1p(math.exp(upper_exp))
    return math.log(abs(1 - math.exp(2 * math.pi * b))), math.log1p(math.exp(4 * math.pi * abs(b)))


def log_n_bound(N: int, r: complex, sign: int, d: float = 1.0, delta: float = 0.5) -> float:
    """Envelope on ``|Re phi_{N,+-}(n)|`` with constants ``d >= 1``, ``0 < delta < 1``."""
    b = _check_r_complex(r).imag
    if sign == 1:
        inner = math.log1p(math.exp(2 * math.pi * b)) - math.log(2 * math.pi * abs(b) * delta / N)
    else:
        inner = math.log1p(math.exp(4 * math.pi * abs(b))) - math.log(abs(1 - math.exp(2 * math.pi * b)))
    return 2 * math.pi * d / N * inner


def rational_approximation(r: complex, max_den: int = 100, tol: float = 1e-12) -> Fraction | None:
    """Return ``p/q`` with ``q <= max_den`` if real ``r`` is within ``tol`` of it."""
    r = complex(r)
    if abs(r.imag) > tol:
        return None
    frac = Fraction(r.real).limit_denominator(max_den)
    if abs(float(frac) - r.real) <= tol:
        return frac
    return None
