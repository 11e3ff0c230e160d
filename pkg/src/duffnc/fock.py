"""
Truncated Fock-space representation of a single bosonic mode.

Conventions: hbar = 1, x = (a + a^dag)/sqrt(2), p = i(a^dag - a)/sqrt(2), so
[x, p] = i and the vacuum has <x^2> = <p^2> = 1/2.  Operator matrices are plain
numpy arrays indexed by number state.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidDimensionError

DEFAULT_DIM = 51

_SQRT2 = math.sqrt(2.0)


def _check_dim(dim):
    if int(dim) != dim or dim < 1:
        raise InvalidDimensionError(f"basis dimension must be a positive integer, got {dim!r}")
    return int(dim)


@dataclass(frozen=True, eq=False)
class FockState:
    """Pure state c_0|0> + ... + c_{D-1}|D-1> in a truncated number basis.

    The coefficient array is copied on construction and made read-only, so
    instances can be shared freely.
    """

    coeffs: np.ndarray

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=complex).ravel()
        if c.size < 1:
            raise InvalidDimensionError("a state needs at least one coefficient")
        c.flags.writeable = False
        object.__setattr__(self, "coeffs", c)

    @property
    def dim(self):
        return self.coeffs.size

    def norm(self):
        return float(np.sqrt(np.vdot(self.coeffs, self.coeffs).real))

    def padded(self, dim):
        """Return the same state embedded in a basis of size ``dim`` >= self.dim."""
        if dim < self.dim:
            raise InvalidDimensionError(f"cannot pad a dim-{self.dim} state down to {dim}")
        c = np.zeros(dim, dtype=complex)
        c[: self.dim] = self.coeffs
        return FockState(c)

    def support(self):
        """Index one past the last nonzero coefficient (0 for the zero vector)."""
        nz = np.flatnonzero(self.coeffs)
        return int(nz[-1]) + 1 if nz.size else 0

    def __repr__(self):
        return f"FockState(dim={self.dim}, support={self.support()})"


def basis_state(n, dim=DEFAULT_DIM):
    """Number state |n> in a basis of size ``dim``."""
    dim = _check_dim(dim)
    if not 0 <= n < dim:
        raise InvalidDimensionError(f"|{n}> does not fit in a basis of size {dim}")
    c = np.zeros(dim, dtype=complex)
    c[n] = 1.0
    return FockState(c)


def normalize(state):
    """Scale to unit norm and rotate so the first nonzero coefficient is real positive.

    Idempotent bit-for-bit: a state that is already normalized and phase-fixed
    comes back unchanged.
    """
    c = np.array(state.coeffs, dtype=complex)
    nz = np.flatnonzero(c)
    if nz.size == 0:
        raise ValueError("cannot normalize the zero vector")
    lead = nz[0]
    angle = np.angle(c[lead])
    if angle != 0.0:
        c *= np.exp(-1j * angle)
        c[lead] = abs(c[lead])
    nrm = math.sqrt(float(np.vdot(c, c).real))
    # already-unit vectors are left alone so repeated calls do not drift
    if abs(nrm - 1.0) > 4 * np.finfo(float).eps:
        c /= nrm
    return FockState(c)


def inner_product(a, b):
    """<a|b>; the shorter state is zero-padded."""
    n = min(a.dim, b.dim)
    return complex(np.vdot(a.coeffs[:n], b.coeffs[:n]))


def ladder_matrix(dim):
    """Annihilation operator with a[n-1, n] = sqrt(n)."""
    dim = _check_dim(dim)
    return np.diag(np.sqrt(np.arange(1, dim, dtype=float)), k=1)


def quadrature_matrices(dim):
    """Position and momentum matrices (x real symmetric, p imaginary antisymmetric)."""
    a = ladder_matrix(dim)
    x = (a + a.T) / _SQRT2
    p = 1j * (a.T - a) / _SQRT2
    return x, p


def quartic_matrix(dim):
    """Exact number-basis matrix elements of x^4.

    Built from the closed-form ladder-algebra elements rather than a product of
    truncated x matrices, so every entry is the projection of the true operator
    (no truncation artefacts in the last rows) and the result is exactly symmetric.
    """
    dim = _check_dim(dim)
    n = np.arange(dim, dtype=float)
    m = np.diag((6 * n * n + 6 * n + 3) / 4.0)
    if dim > 2:
        k = n[: dim - 2]
        off2 = (2 * k + 3) * np.sqrt((k + 1) * (k + 2)) / 2.0
        m += np.diag(off2, 2) + np.diag(off2, -2)
    if dim > 4:
        k = n[: dim - 4]
        off4 = np.sqrt((k + 1) * (k + 2) * (k + 3) * (k + 4)) / 4.0
        m += np.diag(off4, 4) + np.diag(off4, -4)
    return m


def harmonic_wavefunctions(nmax, x):
    """Array of psi_0(x) .. psi_nmax(x), shape (nmax + 1,) + x.shape.

    Uses the three-term recurrence on the normalized functions, which carries
    the Gaussian weight along and cannot overflow.
    """
    x = np.asarray(x, dtype=float)
    out = np.empty((nmax + 1,) + x.shape)
    out[0] = np.pi ** -0.25 * np.exp(-0.5 * x * x)
    if nmax >= 1:
        out[1] = _SQRT2 * x * out[0]
    for k in range(1, nmax):
        out[k + 1] = math.sqrt(2.0 / (k + 1)) * x * out[k] - math.sqrt(k / (k + 1)) * out[k - 1]
    return out


def harmonic_wavefunction(n, x):
    """psi_n(x) = <x|n> = pi^(-1/4) (2^n n!)^(-1/2) H_n(x) exp(-x^2/2)."""
    if n < 0:
        raise InvalidDimensionError(f"number state index must be >= 0, got {n}")
    vals = harmonic_wavefunctions(n, x)[n]
    return float(vals) if vals.ndim == 0 else vals


def wavefunction(state, x):
    """Position-space amplitude <x|state>."""
    support = max(state.support(), 1)
    psis = harmonic_wavefunctions(support - 1, x)
    return np.tensordot(state.coeffs[:support], psis, axes=1)


def position_density(state, x):
    """|<x|state>|^2 sampled at ``x``."""
    return np.abs(wavefunction(state, x)) ** 2
