"""Nonlinearity and Wigner nonclassicality of the quantum Duffing oscillator ground state."""

from .errors import (
    AccuracyError,
    ContractViolation,
    DegenerateFitError,
    DomainError,
    DuffncError,
    InvalidConfigError,
    InvalidDimensionError,
    NumericalFailure,
    RegimeWarning,
    ResonanceError,
)
from .fock import (
    DEFAULT_DIM,
    FockState,
    basis_state,
    harmonic_wavefunction,
    inner_product,
    ladder_matrix,
    normalize,
    position_density,
    quadrature_matrices,
    quartic_matrix,
    wavefunction,
)
from .hamiltonian import DuffingParams, build_hamiltonian, fidelity, ground_state_numeric
from .measures import GaussianMoments, bures_nonlinearity, entropy_h, moments, non_gaussianity
from .perturbative import (
    driven_ground_state,
    first_order_coefficient,
    ground_state_perturbative,
    propagate,
)
from .sweep import (
    FitResult,
    MeasureRecord,
    fit_sqrt_linear_model,
    fit_sqrt_model,
    sweep_driven,
    sweep_undriven,
)
from .wigner import (
    QuadratureConfig,
    WignerGrid,
    negativity_volume,
    nonclassicality,
    wigner_grid,
    wigner_point,
)

__version__ = "0.1.0"
