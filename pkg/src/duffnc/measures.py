"""
Nonlinearity measures of a pure ground state.

``bures_nonlinearity`` compares the state with the harmonic vacuum;
``non_gaussianity`` is the entropy of the Gaussian state sharing the state's
first and second moments, which for a pure state equals its relative-entropy
distance from Gaussianity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .fock import quadrature_matrices
from .hamiltonian import _check_normalized

H_DOMAIN_TOL = 1e-12


@dataclass(frozen=True)
class GaussianMoments:
    """First moments and symmetrized covariance matrix (vacuum = diag(1/2, 1/2))."""

    mean: tuple
    cov: np.ndarray

    @property
    def det(self):
        c = self.cov
        return float(c[0, 0] * c[1, 1] - c[0, 1] * c[1, 0])


def bures_nonlinearity(state):
    """sqrt(1 - |<0|state>|), the Bures distance to the vacuum scaled onto [0, 1]."""
    _check_normalized(state, "state")
    overlap = min(1.0, abs(state.coeffs[0]))
    return math.sqrt(1.0 - overlap)


def moments(state):
    """Mean (<x>, <p>) and covariance of ``state``.

    The state is padded by two levels before taking second moments so that x^2
    and p^2 are exact projections even when the support reaches the basis edge.
    """
    _check_normalized(state, "state")
    c = state.padded(state.dim + 2).coeffs
    x, p = quadrature_matrices(c.size)
    xc, pc = x @ c, p @ c
    mx = np.vdot(c, xc).real
    mp = np.vdot(c, pc).real
    sxx = np.vdot(xc, xc).real - mx * mx
    spp = np.vdot(pc, pc).real - mp * mp
    sxp = np.vdot(xc, pc).real - mx * mp  # Re<xp> = <xp + px>/2
    cov = np.array([[sxx, sxp], [sxp, spp]])
    cov.flags.writeable = False
    return GaussianMoments(mean=(float(mx), float(mp)), cov=cov)


def _xlogx(v):
    return v * math.log(v) if v > 0 else 0.0


def entropy_h(x):
    """Von Neumann entropy of a single-mode Gaussian state with symplectic eigenvalue ``x``.

    h(x) = (x + 1/2) ln(x + 1/2) - (x - 1/2) ln(x - 1/2), with h(1/2) = 0.
    Values within 1e-12 below 1/2 are treated as 1/2 (rounding of pure states).
    """
    if x < 0.5 - H_DOMAIN_TOL:
        raise DomainError(f"symplectic eigenvalue {x!r} is below the uncertainty bound 1/2")
    x = max(x, 0.5)
    return _xlogx(x + 0.5) - _xlogx(x - 0.5)


def non_gaussianity(state):
    """h(sqrt(det sigma)) for the moment-matched reference Gaussian of ``state``."""
    det = moments(state).det
    return entropy_h(math.sqrt(max(det, 0.0)))
