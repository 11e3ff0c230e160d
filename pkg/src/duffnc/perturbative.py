"""
First-order perturbative ground states of the Duffing oscillator.

Two constructions live here: the stationary ground state from time-independent
perturbation theory, and the driven state obtained by first-order
time-dependent perturbation theory starting from |0> at t = 0.  A brute-force
RK4 propagator of the full time-dependent Hamiltonian is provided as an
independent check of the latter.
"""

from __future__ import annotations

import math
import warnings

import numpy as np

from .errors import DomainError, InvalidDimensionError, ResonanceError, RegimeWarning
from .fock import DEFAULT_DIM, FockState, normalize, quadrature_matrices, quartic_matrix
from .hamiltonian import DuffingParams, build_hamiltonian

VALIDATED_EPS_MAX = 0.8
RESONANCE_GUARD = 1e-6
PROPAGATION_STEP = 1e-4

_SQRT2 = math.sqrt(2.0)


def ground_state_perturbative(epsilon, dim=DEFAULT_DIM):
    """Normalized first-order ground state N[|0> - 3eps/(8 sqrt2)|2> - sqrt3 eps/(16 sqrt2)|4>].

    Issues a :class:`RegimeWarning` above epsilon = 0.8, beyond which the state
    was not checked against exact diagonalization.
    """
    if epsilon < 0:
        raise DomainError(f"epsilon must be >= 0, got {epsilon}")
    if dim < 5:
        raise InvalidDimensionError(f"the |4> admixture needs dim >= 5, got {dim}")
    if epsilon > VALIDATED_EPS_MAX:
        warnings.warn(
            f"epsilon={epsilon} is outside the validated range [0, {VALIDATED_EPS_MAX}]",
            RegimeWarning,
            stacklevel=2,
        )
    c = np.zeros(dim, dtype=complex)
    c[0] = 1.0
    c[2] = -3.0 * epsilon / (8.0 * _SQRT2)
    c[4] = -math.sqrt(3.0) * epsilon / (16.0 * _SQRT2)
    c *= 1.0 / math.sqrt(1.0 + 39.0 * epsilon**2 / 512.0)
    return normalize(FockState(c))


def _check_resonance(params):
    if params.force > 0 and abs(params.omega**2 - 1.0) <= RESONANCE_GUARD:
        raise ResonanceError(
            f"omega={params.omega} is within {RESONANCE_GUARD:g} of the harmonic resonance"
        )


def _phase_integral(w, t):
    """int_0^t exp(i w s) ds."""
    if w == 0:
        return complex(t)
    return (np.exp(1j * w * t) - 1.0) / (1j * w)


def _quartic_element(n, l):
    d = max(n, l) + 1
    return quartic_matrix(d)[n, l]


def _position_element(n, l):
    if abs(n - l) != 1:
        return 0.0
    return math.sqrt(max(n, l) / 2.0)


def first_order_coefficient(n, l, params):
    """Interaction-picture first-order amplitude c_n^(1)(t) out of the initial state |l>.

    c_n^(1)(t) = -i int_0^t exp(i (n - l) s) <n| eps x^4/4 - x F cos(omega s) |l> ds,
    evaluated in closed form.  The quartic part only connects |n - l| in {0, 2, 4},
    the drive only |n - l| = 1.
    """
    if n < 0 or l < 0:
        raise InvalidDimensionError("number-state indices must be >= 0")
    _check_resonance(params)
    t = params.time
    w = n - l
    amp = 0j
    if params.epsilon and abs(w) in (0, 2, 4):
        v = 0.25 * params.epsilon * _quartic_element(n, l)
        amp += -1j * v * _phase_integral(w, t)
    if params.force and abs(w) == 1:
        # cos(omega s) = (e^{i omega s} + e^{-i omega s}) / 2
        drive = 0.5 * (_phase_integral(w + params.omega, t) + _phase_integral(w - params.omega, t))
        amp += 1j * params.force * _position_element(n, l) * drive
    return complex(amp)


def _printed_amplitudes(params):
    """Coefficients on |0>, |1>, |2>, |4> exactly as in the published driven ground state."""
    eps, f, om, t = params.epsilon, params.force, params.omega, params.time
    e = lambda k: np.exp(-1j * k * t / 2.0)  # noqa: E731
    c0 = (1.0 - 3j * t * eps / 16.0) * e(1)
    if f:
        c1 = f * (1.0 - np.exp(1j * t) * (math.cos(om * t) - 1j * om * math.sin(om * t)))
        c1 = c1 / (_SQRT2 * (om**2 - 1.0)) * e(3)
    else:
        c1 = 0j
    c2 = eps / 16.0 * 3.0 * _SQRT2 * (e(5) - e(1))
    c4 = eps / 16.0 * (e(9) - e(1)) / 4.0
    return {0: c0, 1: c1, 2: c2, 4: c4}


def _first_order_amplitudes(params, dim):
    out = {}
    for n in range(min(dim, 5)):
        c = (1.0 if n == 0 else 0.0) + first_order_coefficient(n, 0, params)
        out[n] = c * np.exp(-1j * (n + 0.5) * params.time)
    return out


def driven_ground_state(params, dim=DEFAULT_DIM, amplitudes="printed"):
    """First-order state at time ``params.time`` grown from |0> under the driven Hamiltonian.

    Parameters
    ----------
    params : DuffingParams
    dim : int
        Basis size of the returned state (>= 5).
    amplitudes : {"printed", "first-order"}
        ``"printed"`` reproduces the published closed form term by term.
        ``"first-order"`` assembles the same state from
        :func:`first_order_coefficient`; the two differ only in the |4>
        amplitude, where the published form is smaller by a factor 2 sqrt(6).

    Coefficients carry the Schrodinger-picture phases exp(-i (n + 1/2) t).
    """
    if dim < 5:
        raise InvalidDimensionError(f"the |4> admixture needs dim >= 5, got {dim}")
    _check_resonance(params)
    if params.epsilon > VALIDATED_EPS_MAX:
        warnings.warn(
            f"epsilon={params.epsilon} is outside the validated range [0, {VALIDATED_EPS_MAX}]",
            RegimeWarning,
            stacklevel=2,
        )
    if amplitudes == "printed":
        amps = _printed_amplitudes(params)
    elif amplitudes == "first-order":
        amps = _first_order_amplitudes(params, dim)
    else:
        raise ValueError(f"unknown amplitude set {amplitudes!r}")
    c = np.zeros(dim, dtype=complex)
    for n, v in amps.items():
        c[n] = v
    return normalize(FockState(c))


def propagate(params, dim=DEFAULT_DIM, step=PROPAGATION_STEP, initial=None):
    """Integrate i d|psi>/dt = H(t)|psi> from t = 0 to ``params.time`` with fixed-step RK4.

    H(t) = diag(n + 1/2) + eps x^4/4 - x F cos(omega t) in a basis of size
    ``dim``; the start state defaults to |0>.  The step is shrunk so that an
    integer number of steps lands exactly on the final time.
    """
    h0 = build_hamiltonian(params.epsilon, dim).astype(complex)
    x, _ = quadrature_matrices(dim)
    if initial is None:
        psi = np.zeros(dim, dtype=complex)
        psi[0] = 1.0
    else:
        psi = initial.padded(dim).coeffs.copy()
    t_end = params.time
    nsteps = max(1, math.ceil(abs(t_end) / step - 1e-9))
    dt = t_end / nsteps
    f, om = params.force, params.omega

    def rhs(t, v):
        return -1j * (h0 @ v - (f * math.cos(om * t)) * (x @ v))

    t = 0.0
    for k in range(nsteps):
        t = k * dt
        k1 = rhs(t, psi)
        k2 = rhs(t + dt / 2, psi + (dt / 2) * k1)
        k3 = rhs(t + dt / 2, psi + (dt / 2) * k2)
        k4 = rhs(t + dt, psi + dt * k3)
        psi = psi + (dt / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)
    return normalize(FockState(psi))
