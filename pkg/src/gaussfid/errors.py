"""Exception hierarchy for state validation, decomposition, and oracle failures."""


class GaussianStateError(ValueError):
    """Base class for every error raised by this package."""


class DimensionError(GaussianStateError):
    """Arguments have invalid or mutually incompatible shapes."""


class SymmetryError(GaussianStateError):
    """A matrix that must be symmetric (or Hermitian) is not, beyond tolerance."""


class DefinitenessError(GaussianStateError):
    """A matrix that must be positive definite is not."""


class UncertaintyViolationError(GaussianStateError):
    """The matrix fails the Heisenberg constraint: A + iJ has an eigenvalue below -tol."""


class ConditioningError(GaussianStateError):
    """Input is too ill-conditioned for reliable double-precision results."""


class SymplecticityError(GaussianStateError):
    """A matrix that must be symplectic is not, beyond tolerance."""


class DecompositionError(GaussianStateError):
    """A matrix decomposition failed its reconstruction residual check."""


class NumericalConsistencyError(GaussianStateError):
    """An internal cross-check failed, e.g. an imaginary residue grew too large."""


class FormError(GaussianStateError):
    """Input is not in the normal form required by the called routine."""


class TruncationError(GaussianStateError):
    """Request exceeds the reliability envelope of the truncated Fock-space oracle."""
