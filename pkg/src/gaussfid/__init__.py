"""Uhlmann fidelity between multimode Gaussian quantum states.

States are zero-mean Gaussians described by real symmetric correlation
matrices normalized so the vacuum is the identity, in (q_1..q_n, p_1..p_n)
ordering.  The package provides validation and symplectic factorizations
(:mod:`gaussfid.core`), closed-form fidelities and overlaps
(:mod:`gaussfid.fidelity`), a truncated number-basis oracle for independent
cross checks (:mod:`gaussfid.fock`), and a command line tool
(:mod:`gaussfid.cli`).
"""

from .core import (
    DEFAULT_TOLERANCES,
    CorrelationMatrix,
    EulerDecomposition,
    SymplecticForm,
    Tolerances,
    WilliamsonDecomposition,
    conjugate,
    euler_decompose,
    is_pure,
    phi,
    purity,
    squeezed_thermal_state,
    standard_form,
    symplectic_eigenvalues,
    tensor,
    thermal_state,
    validate,
    williamson,
)
from .errors import (
    ConditioningError,
    DecompositionError,
    DefinitenessError,
    DimensionError,
    FormError,
    GaussianStateError,
    NumericalConsistencyError,
    SymmetryError,
    SymplecticityError,
    TruncationError,
    UncertaintyViolationError,
)
from .fidelity import (
    FidelityBreakdown,
    fidelity,
    fidelity_general,
    fidelity_one_mode,
    fidelity_thermal,
    overlap,
    sqrt_fidelity,
    triple_overlap,
)
from .fock import (
    FockDensityMatrix,
    gaussian_density,
    ladder,
    second_moments,
    squeeze_unitary,
    thermal_density,
    trace_product_numeric,
    uhlmann_fidelity_numeric,
    unitarity_defect,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "Tolerances",
    "DEFAULT_TOLERANCES",
    "SymplecticForm",
    "CorrelationMatrix",
    "WilliamsonDecomposition",
    "EulerDecomposition",
    "standard_form",
    "validate",
    "is_pure",
    "purity",
    "symplectic_eigenvalues",
    "williamson",
    "euler_decompose",
    "phi",
    "tensor",
    "conjugate",
    "thermal_state",
    "squeezed_thermal_state",
    "FidelityBreakdown",
    "overlap",
    "triple_overlap",
    "fidelity_general",
    "fidelity_one_mode",
    "fidelity_thermal",
    "fidelity",
    "sqrt_fidelity",
    "FockDensityMatrix",
    "ladder",
    "thermal_density",
    "squeeze_unitary",
    "unitarity_defect",
    "gaussian_density",
    "second_moments",
    "uhlmann_fidelity_numeric",
    "trace_product_numeric",
    "GaussianStateError",
    "DimensionError",
    "SymmetryError",
    "DefinitenessError",
    "UncertaintyViolationError",
    "ConditioningError",
    "SymplecticityError",
    "DecompositionError",
    "NumericalConsistencyError",
    "FormError",
    "TruncationError",
]
