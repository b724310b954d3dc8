"""Colored Jones polynomials of the figure-eight knot, the volume conjecture
and the optimistic limit, evaluated numerically."""

from __future__ import annotations

from .asymptotics import cone_volume, extrapolate, limit_sweep, real_r_sweep, saddle_prediction
from .cusp import U_MAX, HolonomyState, holonomy_state
from .errors import (
    BranchAmbiguity,
    ConvergenceError,
    CriticalPointNotFound,
    DomainError,
    ExceptionalSlope,
    FitError,
    InvalidInput,
    NonHyperbolicOrOutOfRange,
    OutsideValidityDisk,
    ValidityWarning,
    VolconjError,
)
from .jones import JonesPoint, LogComplex, jones_eval, jones_eval_real_r, riemann_discrepancy
from .optimistic import critical_point, observation_check, v_p
from .potential import VOLUME, f_of_u, h_of_u, h_two, phi_of_u
from .special import li2, lobachevsky, rogers
from .surgery import FillingSlope, SurgeryResult, solve_filling, vol_cs, vol_cs_p1

__version__ = "0.1.0"
