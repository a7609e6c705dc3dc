"""Exception and warning types shared across the package."""


class QubitRetroError(Exception):
    """Base class for all errors raised by this package."""


class NotHermitianError(QubitRetroError):
    """Input matrix is not Hermitian within tolerance."""


class NotPSDError(QubitRetroError):
    """Matrix expected to be positive semidefinite has a negative eigenvalue."""


class NotUnitalError(QubitRetroError):
    """Channel does not preserve the maximally mixed state."""


class NotCPTPError(QubitRetroError):
    """Map is not completely positive and trace preserving."""


class InternalCPViolationError(QubitRetroError):
    """A channel produced output outside the Bloch ball; indicates a broken channel object."""


class SingularSError(QubitRetroError):
    """The contraction scalar S = sum_i lambda_i^2 r_i^2 is too close to 1."""


class EigenvalueOnBoundaryError(QubitRetroError):
    """Some |lambda_i| is too close to 1 for the interior construction."""


class RankDeficientError(QubitRetroError):
    """Anticommutator equation has no solution on a null eigenvalue pair."""


class NonUniqueSolutionWarning(UserWarning):
    """The linear system is solvable but not uniquely; a minimal-norm choice was made."""


class MonotonicityWarning(UserWarning):
    """A feasibility column was not monotone in t; bisection fell back to a grid scan."""
