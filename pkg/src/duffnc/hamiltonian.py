"""Undriven Duffing Hamiltonian, its numerical ground state, and state fidelity."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ContractViolation, DomainError, InvalidDimensionError, NumericalFailure
from .fock import DEFAULT_DIM, FockState, inner_product, normalize, quartic_matrix

RESIDUAL_TOL = 1e-10
NORM_TOL = 1e-6


@dataclass(frozen=True)
class DuffingParams:
    """Parameters of H = (x^2 + p^2)/2 + eps x^4/4 - x F cos(omega t).

    ``time`` is where driven states are evaluated; the undriven problem only
    reads ``epsilon``.  Defaults for the drive are the working point inside the
    classical bistability window.
    """

    epsilon: float = 0.0
    force: float = 0.0
    omega: float = 1.018
    time: float = 1.0

    def __post_init__(self):
        if not self.epsilon >= 0:
            raise DomainError(f"epsilon must be >= 0 (stiffening nonlinearity), got {self.epsilon}")
        if not self.force >= 0:
            raise DomainError(f"drive amplitude must be >= 0, got {self.force}")
        if not self.omega > 0:
            raise DomainError(f"drive frequency must be > 0, got {self.omega}")

    @property
    def driven(self):
        return self.force > 0


def build_hamiltonian(epsilon, dim=DEFAULT_DIM):
    """H = diag(n + 1/2) + (epsilon/4) x^4 in the number basis (real symmetric)."""
    if epsilon < 0:
        raise DomainError(f"epsilon must be >= 0, got {epsilon}")
    if dim < 5:
        raise InvalidDimensionError(f"the quartic term needs dim >= 5, got {dim}")
    h = (epsilon / 4.0) * quartic_matrix(dim)
    h[np.diag_indices(dim)] += np.arange(dim) + 0.5
    return h


def ground_state_numeric(epsilon, dim=DEFAULT_DIM):
    """Lowest eigenpair of :func:`build_hamiltonian` by dense diagonalization.

    Returns
    -------
    state : FockState
        Normalized, phase-fixed ground state.
    energy : float
    """
    h = build_hamiltonian(epsilon, dim)
    vals, vecs = np.linalg.eigh(h)
    energy = float(vals[0])
    state = normalize(FockState(vecs[:, 0]))
    residual = float(np.max(np.abs(h @ state.coeffs - energy * state.coeffs)))
    if not residual < RESIDUAL_TOL:
        raise NumericalFailure(
            f"ground state residual {residual:.3e} exceeds {RESIDUAL_TOL:g} (epsilon={epsilon}, dim={dim})",
            residual=residual,
        )
    return state, energy


def energy_expectation(state, epsilon, dim=None):
    """<state|H|state> for the undriven Hamiltonian."""
    dim = dim or max(state.dim, 5)
    c = state.padded(dim).coeffs if state.dim < dim else state.coeffs
    return float(np.vdot(c, build_hamiltonian(epsilon, c.size) @ c).real)


def _check_normalized(state, name):
    nrm = state.norm()
    if abs(nrm - 1.0) > NORM_TOL:
        raise ContractViolation(f"{name} is not normalized (norm {nrm:.9g})")


def fidelity(a, b):
    """|<a|b>|^2 for normalized pure states."""
    _check_normalized(a, "first state")
    _check_normalized(b, "second state")
    return min(1.0, abs(inner_product(a, b)) ** 2)
