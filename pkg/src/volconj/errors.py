"""Exception and warning types shared across the package."""


class VolconjError(Exception):
    """Base class for all library errors."""


class InvalidInput(VolconjError, ValueError):
    """Non-finite or malformed argument."""


class DomainError(VolconjError, ValueError):
    """Argument outside the mathematical domain of an operation."""


class OutsideValidityDisk(DomainError):
    """Deformation parameter beyond the radius where branches are tracked."""


class ExceptionalSlope(DomainError):
    """Filling slope known to give a non-hyperbolic manifold."""


class BranchAmbiguity(VolconjError, ArithmeticError):
    """Square-root branch could not be continued (roots collide on the path)."""


class FitError(VolconjError, ValueError):
    """Extrapolation design matrix is rank deficient or too small."""


class ConvergenceError(VolconjError, RuntimeError):
    """An iterative solver did not reach its tolerance."""


class NonHyperbolicOrOutOfRange(ConvergenceError):
    """Dehn-filling Newton iteration failed or left the validity disk."""


class CriticalPointNotFound(ConvergenceError):
    """Newton iteration for a critical point of the optimistic potential failed."""


class ValidityWarning(UserWarning):
    """Input accepted but outside the range where the asymptotic statements apply."""
