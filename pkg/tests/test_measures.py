import cmath
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from numpy.testing import assert_allclose

from duffnc import (
    ContractViolation,
    DomainError,
    FockState,
    basis_state,
    bures_nonlinearity,
    entropy_h,
    ground_state_numeric,
    ground_state_perturbative,
    moments,
    non_gaussianity,
    normalize,
)

EPS_GRID = [round(0.01 * k, 2) for k in range(81)]

random_states = st.lists(
    st.complex_numbers(max_magnitude=5, allow_nan=False, allow_infinity=False), min_size=1, max_size=10
).filter(lambda c: sum(abs(v) ** 2 for v in c) > 1e-6).map(lambda c: normalize(FockState(c)))


def thermal_entropy(nbar):
    return (nbar + 1) * math.log(nbar + 1) - (nbar * math.log(nbar) if nbar else 0.0)


def test_bures_extremes():
    assert bures_nonlinearity(basis_state(0, 5)) == 0.0
    assert bures_nonlinearity(basis_state(2, 5)) == 1.0


def test_bures_at_eps_0_8():
    norm = 1 / math.sqrt(1 + 39 * 0.64 / 512)
    assert norm == pytest.approx(0.97648, abs=1e-5)
    value = bures_nonlinearity(ground_state_perturbative(0.8))
    assert value == pytest.approx(math.sqrt(1 - norm), abs=1e-14)
    assert value == pytest.approx(0.1534, abs=1e-4)


def test_bures_rejects_unnormalized():
    with pytest.raises(ContractViolation):
        bures_nonlinearity(FockState([0.5, 0.5]))


def test_vacuum_and_one_photon_moments():
    m0 = moments(basis_state(0, 4))
    assert m0.mean == (0.0, 0.0)
    assert_allclose(m0.cov, np.diag([0.5, 0.5]), atol=1e-15)
    m1 = moments(basis_state(1, 4))
    assert_allclose(m1.cov, np.diag([1.5, 1.5]), atol=1e-15)


def test_moments_at_basis_edge_are_exact():
    # support touching the last basis level must not lose the n -> n+1 term
    m = moments(basis_state(3, 4))
    assert_allclose(m.cov, np.diag([3.5, 3.5]), atol=1e-14)


@pytest.mark.parametrize("eps", [0.1, 0.5, 0.8])
def test_even_states_are_centred(eps):
    for s in (ground_state_perturbative(eps), ground_state_numeric(eps, 51)[0]):
        m = moments(s)
        assert_allclose(m.mean, (0.0, 0.0), atol=1e-14)
        assert abs(m.cov[0, 1]) < 1e-14


def test_coherent_like_displacement():
    # (|0> + i|1>)/sqrt2 has <x> = 0, <p> = 1/sqrt2
    m = moments(normalize(FockState([1, 1j])))
    assert m.mean[0] == pytest.approx(0.0, abs=1e-15)
    assert m.mean[1] == pytest.approx(1 / math.sqrt(2))


def test_entropy_values():
    assert entropy_h(0.5) == 0.0
    assert entropy_h(1.5) == pytest.approx(2 * math.log(2), abs=1e-15)
    assert entropy_h(1.5) == pytest.approx(thermal_entropy(1.0))
    for nbar in (0.1, 0.7, 3.0):
        assert entropy_h(nbar + 0.5) == pytest.approx(thermal_entropy(nbar), rel=1e-13)
    assert entropy_h(0.5 - 5e-13) == 0.0


def test_entropy_domain():
    with pytest.raises(DomainError):
        entropy_h(0.49)


@given(st.floats(0.5, 50), st.floats(1e-6, 10))
def test_entropy_monotone(x, dx):
    assert entropy_h(x + dx) > entropy_h(x)


def test_non_gaussianity_fock_states():
    assert non_gaussianity(basis_state(0, 6)) == 0.0
    assert non_gaussianity(basis_state(1, 6)) == pytest.approx(2 * math.log(2), abs=1e-14)


def test_non_gaussianity_pipeline_points():
    low = non_gaussianity(ground_state_perturbative(0.1))
    assert low > 0
    assert low < non_gaussianity(ground_state_perturbative(0.2))


def test_measures_monotone_in_eps():
    eb = [bures_nonlinearity(ground_state_perturbative(e)) for e in EPS_GRID]
    ng = [non_gaussianity(ground_state_perturbative(e)) for e in EPS_GRID]
    assert eb[0] == 0.0 and ng[0] == 0.0
    assert np.all(np.diff(eb) > 0)
    assert np.all(np.diff(ng) > 0)
    assert all(0 <= v <= 1 for v in eb)


@given(random_states)
def test_uncertainty_bound(state):
    m = moments(state)
    assert m.det >= 0.25 - 1e-12
    assert m.cov[0, 0] > 0 and m.cov[1, 1] > 0
    assert non_gaussianity(state) >= 0


@given(random_states, st.floats(0, 2 * math.pi))
def test_non_gaussianity_phase_invariant(state, phi):
    rotated = FockState(state.coeffs * cmath.exp(1j * phi))
    assert non_gaussianity(rotated) == pytest.approx(non_gaussianity(state), abs=1e-12)
