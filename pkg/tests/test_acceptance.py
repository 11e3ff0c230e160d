"""Acceptance suite: one verdict line per criterion, shown in the terminal summary."""

import math

import numpy as np

from conftest import columns
from duffnc import (
    DuffingParams,
    FockState,
    basis_state,
    driven_ground_state,
    fidelity,
    fit_sqrt_linear_model,
    fit_sqrt_model,
    ground_state_numeric,
    ground_state_perturbative,
    negativity_volume,
    normalize,
    propagate,
    quartic_matrix,
    sweep_driven,
    sweep_undriven,
    wigner_grid,
    wigner_point,
)
from duffnc.sweep import records_to_csv
from duffnc.wigner import wigner_point_transform

FIDELITY_FLOOR = 0.95
FIDELITY_ORIGIN_TOL = 1e-12
BURES_A = (0.0, 0.01)
BURES_B = (0.29, 0.39)
BURES_RMS = 5e-3
NG_TARGET = (0.002, 0.207, 2.731)
NG_REL = 0.25
NG_RMS = 1e-2
ONE_PHOTON_ETA = 4 * math.exp(-0.5) - 2
NEG_TOL = 1e-4
VACUUM_NEG = 1e-6
NORM_TOL = 1e-4
BOUND_TOL = 1e-9
ORIGIN_TOL = 1e-10
TRANSFORM_TOL = 1e-6
PERT_TOL = 1e-12
PROP_FIDELITY = 1 - 1e-3


def test_criterion_1_fidelity_band(undriven_records, report):
    (fid,) = columns(undriven_records, "fidelity")
    direct = np.array([
        fidelity(ground_state_perturbative(e), ground_state_numeric(e, 51)[0])
        for e in (r.params.epsilon for r in undriven_records)
    ])
    ok = (
        np.array_equal(fid, direct)
        and fid.min() >= FIDELITY_FLOOR
        and abs(fid[0] - 1) <= FIDELITY_ORIGIN_TOL
        and bool(np.all(np.diff(fid) < 0))
    )
    assert report(1, ok, f"min F = {fid.min():.6f} (>= {FIDELITY_FLOOR}), |F(0)-1| = {abs(fid[0] - 1):.1e}, "
                         f"decreasing = {bool(np.all(np.diff(fid) < 0))}")


def test_criterion_2_bures_fit(undriven_records, report):
    eb, ng = columns(undriven_records, "eta_b", "eta_ng")
    fit = fit_sqrt_model(ng, eb)
    a, b = fit.coefficients
    ok = BURES_A[0] <= a <= BURES_A[1] and BURES_B[0] <= b <= BURES_B[1] and fit.residual_rms < BURES_RMS
    assert report(2, ok, f"a = {a:.5f} in {list(BURES_A)}, b = {b:.5f} in {list(BURES_B)}, "
                         f"rms = {fit.residual_rms:.2e} < {BURES_RMS}")


def test_criterion_3_negativity_fit(undriven_records, report):
    ng, nu = columns(undriven_records, "eta_ng", "nu")
    fit = fit_sqrt_linear_model(nu, ng)
    rel = [abs(c - t) / t for c, t in zip(fit.coefficients, NG_TARGET)]
    ok = max(rel) <= NG_REL and fit.residual_rms < NG_RMS
    coeffs = ", ".join(f"{c:.5g}" for c in fit.coefficients)
    assert report(3, ok, f"({coeffs}) max rel dev {max(rel):.3f} <= {NG_REL}, "
                         f"rms = {fit.residual_rms:.2e} < {NG_RMS}")


def test_criterion_4_fock_oracle(report):
    one = negativity_volume(basis_state(1, 3))
    vac = negativity_volume(basis_state(0, 3))
    ok = abs(one - ONE_PHOTON_ETA) <= NEG_TOL and vac < VACUUM_NEG
    assert report(4, ok, f"eta(|1>) = {one:.7f} vs {ONE_PHOTON_ETA:.7f} (tol {NEG_TOL}), eta(|0>) = {vac:.1e}")


def _random_states(count, max_support, seed):
    rng = np.random.default_rng(seed)
    for _ in range(count):
        n = int(rng.integers(1, max_support + 1))
        yield normalize(FockState(rng.normal(size=n) + 1j * rng.normal(size=n)))


def test_criterion_5_wigner_sanity(report):
    states = [
        basis_state(0, 5),
        basis_state(1, 5),
        ground_state_perturbative(0.1),
        ground_state_perturbative(0.8),
        driven_ground_state(DuffingParams(0.8, 0.015, 1.018, 1.0)),
    ]
    states += list(_random_states(6, 5, 11))
    norm_err, bound_excess = 0.0, -1.0
    for s in states:
        g = wigner_grid(s)
        norm_err = max(norm_err, abs(g.integral() - 1))
        bound_excess = max(bound_excess, np.abs(g.values).max() - 1 / math.pi)
    origin_err = max(
        abs(wigner_point(basis_state(0, 3), 0, 0) - 1 / math.pi),
        abs(wigner_point(basis_state(1, 3), 0, 0) + 1 / math.pi),
    )
    pts = np.linspace(-2, 2, 5)
    transform_err = max(
        abs(wigner_point(s, x, p) - wigner_point_transform(s, x, p))
        for s in _random_states(10, 5, 29)
        for x in pts
        for p in pts
    )
    ok = norm_err < NORM_TOL and bound_excess <= BOUND_TOL and origin_err <= ORIGIN_TOL and transform_err <= TRANSFORM_TOL
    assert report(5, ok, f"norm err {norm_err:.1e}, max|W| - 1/pi = {bound_excess:.1e}, "
                         f"origin err {origin_err:.1e}, kernel vs transform {transform_err:.1e}")


def _strict(a):
    return bool(np.all(np.diff(a) > 0))


def test_criterion_6_monotonicity(undriven_records, driven_records, report):
    eb, ng, nu = columns(undriven_records, "eta_b", "eta_ng", "nu")
    dng, dnu = columns(driven_records, "eta_ng", "nu")
    undriven_ok = _strict(eb) and _strict(ng) and _strict(nu)
    # parametric curves: both coordinates move in the same direction at every step
    curves_ok = bool(np.all(np.diff(ng) * np.diff(eb) > 0) and np.all(np.diff(nu) * np.diff(ng) > 0))
    driven_ok = _strict(dng) and bool(np.all(np.diff(dnu) >= 0))
    ok = undriven_ok and curves_ok and driven_ok
    assert report(6, ok, f"undriven strict = {undriven_ok}, parametric curves = {curves_ok}, "
                         f"driven (eta_NG strict, nu non-decreasing) = {driven_ok}")


def test_criterion_7_perturbation_oracles(report):
    coeff_err = 0.0
    for eps in (0.1, 0.4, 0.8):
        q = quartic_matrix(10)
        ref = np.array([1.0] + [0.25 * eps * q[k, 0] / -k for k in range(1, 10)])
        s = ground_state_perturbative(eps, 10)
        coeff_err = max(coeff_err, np.abs(s.coeffs / s.coeffs[0] - ref).max())
    worst = 1.0
    for eps in (0.0, 0.02, 0.05):
        for force in (0.0, 0.015):
            for t in (0.5, 1.0, 2.0):
                p = DuffingParams(eps, force, 1.018, t)
                worst = min(worst, fidelity(driven_ground_state(p), propagate(p)))
    ok = coeff_err <= PERT_TOL and worst >= PROP_FIDELITY
    assert report(7, ok, f"coefficient err {coeff_err:.1e} (tol {PERT_TOL}), "
                         f"min propagation fidelity {worst:.8f} (>= {PROP_FIDELITY})")


def test_criterion_8_determinism(undriven_records, driven_records, report):
    again_u = sweep_undriven(0.0, 0.8, 81, 51)
    again_d = sweep_driven(DuffingParams(force=0.015, omega=1.018, time=1.0), 0.0, 0.8, 81, 51)
    same_u = records_to_csv(again_u).encode() == records_to_csv(undriven_records).encode()
    same_d = records_to_csv(again_d).encode() == records_to_csv(driven_records).encode()
    assert report(8, same_u and same_d, f"undriven CSV identical = {same_u}, driven CSV identical = {same_d}")
