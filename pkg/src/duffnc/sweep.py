"""
Parameter sweeps over the anharmonicity, measure records, and the two
empirical nonlinearity/nonclassicality fits.
"""

from __future__ import annotations

import csv
import io
import json
import math
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import DegenerateFitError, DomainError, RegimeWarning
from .fock import DEFAULT_DIM
from .hamiltonian import DuffingParams, fidelity, ground_state_numeric
from .measures import bures_nonlinearity, non_gaussianity
from .perturbative import VALIDATED_EPS_MAX, driven_ground_state, ground_state_perturbative
from .wigner import QuadratureConfig, nonclassicality

CSV_FIELDS = ("epsilon", "force", "omega", "time", "eta_b", "eta_ng", "nu", "fidelity")


@dataclass(frozen=True)
class MeasureRecord:
    params: DuffingParams
    eta_b: float
    eta_ng: float
    nu: float
    fidelity: Optional[float] = None

    def as_dict(self):
        p = self.params
        return {
            "epsilon": p.epsilon,
            "force": p.force,
            "omega": p.omega,
            "time": p.time,
            "eta_b": self.eta_b,
            "eta_ng": self.eta_ng,
            "nu": self.nu,
            "fidelity": self.fidelity,
        }

    @classmethod
    def from_dict(cls, d):
        params = DuffingParams(
            epsilon=float(d["epsilon"]),
            force=float(d["force"]),
            omega=float(d["omega"]),
            time=float(d["time"]),
        )
        fid = d.get("fidelity")
        return cls(
            params,
            float(d["eta_b"]),
            float(d["eta_ng"]),
            float(d["nu"]),
            None if fid in (None, "") else float(fid),
        )


@dataclass(frozen=True)
class FitResult:
    coefficients: tuple
    residual_rms: float
    model_tag: str

    def predict(self, xs):
        return _design(np.asarray(xs, dtype=float), self.model_tag) @ np.asarray(self.coefficients)


def _eps_grid(eps_min, eps_max, steps):
    if steps < 2:
        raise ValueError(f"a sweep needs at least 2 steps, got {steps}")
    if not eps_min < eps_max:
        raise ValueError(f"sweep bounds must satisfy eps_min < eps_max, got [{eps_min}, {eps_max}]")
    if eps_min < 0:
        raise DomainError(f"epsilon must be >= 0, got {eps_min}")
    if eps_max > VALIDATED_EPS_MAX:
        warnings.warn(
            f"sweep reaches epsilon={eps_max}, beyond the validated range [0, {VALIDATED_EPS_MAX}]",
            RegimeWarning,
            stacklevel=3,
        )
    return [float(e) for e in np.linspace(eps_min, eps_max, steps)]


def _undriven_point(args):
    eps, dim, quad, numeric = args
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RegimeWarning)
        pert = ground_state_perturbative(eps, dim)
    exact, _ = ground_state_numeric(eps, dim)
    state = exact if numeric else pert
    return MeasureRecord(
        DuffingParams(epsilon=eps),
        eta_b=bures_nonlinearity(state),
        eta_ng=non_gaussianity(state),
        nu=nonclassicality(state, quad),
        fidelity=fidelity(pert, exact),
    )


def _driven_point(args):
    params, dim, quad, amplitudes = args
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RegimeWarning)
        state = driven_ground_state(params, dim, amplitudes=amplitudes)
    return MeasureRecord(
        params,
        eta_b=bures_nonlinearity(state),
        eta_ng=non_gaussianity(state),
        nu=nonclassicality(state, quad),
    )


def _run(func, jobs, workers):
    if workers and workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(func, jobs))
    return [func(j) for j in jobs]


def sweep_undriven(eps_min=0.0, eps_max=0.8, steps=81, dim=DEFAULT_DIM, quad=None, numeric=False, workers=None):
    """Measure records for the undriven ground state on a uniform epsilon grid.

    Measures are taken on the perturbative ground state unless ``numeric`` is
    set; the fidelity between the perturbative and diagonalized ground states is
    recorded either way.  ``workers`` > 1 evaluates points in separate
    processes; results are identical to the serial run.
    """
    quad = quad or QuadratureConfig()
    jobs = [(e, dim, quad, numeric) for e in _eps_grid(eps_min, eps_max, steps)]
    return _run(_undriven_point, jobs, workers)


def sweep_driven(params_base=None, eps_min=0.0, eps_max=0.8, steps=81, dim=DEFAULT_DIM, quad=None,
                 amplitudes="printed", workers=None):
    """Measure records for the driven first-order state, varying epsilon at fixed drive."""
    params_base = params_base or DuffingParams(force=0.015, omega=1.018, time=1.0)
    quad = quad or QuadratureConfig()
    jobs = [
        (DuffingParams(e, params_base.force, params_base.omega, params_base.time), dim, quad, amplitudes)
        for e in _eps_grid(eps_min, eps_max, steps)
    ]
    return _run(_driven_point, jobs, workers)


def _design(xs, model_tag):
    root = np.sqrt(xs)
    if model_tag == "sqrt":
        return np.column_stack([np.ones_like(xs), root])
    if model_tag == "sqrt_linear":
        return np.column_stack([np.ones_like(xs), root, xs])
    raise ValueError(f"unknown model {model_tag!r}")


def _fit(xs, ys, model_tag, min_points):
    xs = np.asarray(xs, dtype=float)
    ys = np.asarray(ys, dtype=float)
    if xs.shape != ys.shape or xs.ndim != 1:
        raise ValueError("xs and ys must be 1-D sequences of equal length")
    if xs.size < min_points:
        raise DegenerateFitError(f"model {model_tag} needs at least {min_points} points, got {xs.size}")
    if np.any(xs < 0):
        raise DomainError("square-root models need xs >= 0")
    a = _design(xs, model_tag)
    coef, _, rank, _ = np.linalg.lstsq(a, ys, rcond=None)
    if rank < a.shape[1]:
        raise DegenerateFitError(f"design matrix for model {model_tag} is rank deficient ({rank} < {a.shape[1]})")
    resid = a @ coef - ys
    rms = math.sqrt(float(np.mean(resid * resid)))
    return FitResult(tuple(float(v) for v in coef), rms, model_tag)


def fit_sqrt_model(xs, ys):
    """Least squares y = a + b sqrt(x)."""
    return _fit(xs, ys, "sqrt", 3)


def fit_sqrt_linear_model(xs, ys):
    """Least squares y = c0 + c1 sqrt(x) + c2 x."""
    return _fit(xs, ys, "sqrt_linear", 4)


def _fmt(v):
    return "" if v is None else format(v, ".17g")


def records_to_csv(records, fh=None):
    """Write records as CSV (17 significant digits; empty fidelity when absent).

    Returns the text when ``fh`` is None.
    """
    out = fh if fh is not None else io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(CSV_FIELDS)
    for rec in records:
        d = rec.as_dict()
        writer.writerow([_fmt(d[k]) for k in CSV_FIELDS])
    if fh is None:
        return out.getvalue()


def records_from_csv(fh_or_text):
    if isinstance(fh_or_text, str):
        fh_or_text = io.StringIO(fh_or_text)
    return [MeasureRecord.from_dict(row) for row in csv.DictReader(fh_or_text)]


def records_to_json(records):
    return json.dumps([r.as_dict() for r in records], indent=1)


def records_from_json(text):
    return [MeasureRecord.from_dict(d) for d in json.loads(text)]
