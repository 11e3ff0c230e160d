"""Command-line front end producing the data behind each figure.

Every command writes its artifact atomically (temp file + rename) and prints a
one-line summary.  Exit status: 0 success, 1 numerical or I/O failure, 2 usage.
"""

from __future__ import annotations

import argparse
import io
import json
import os
import sys
import tempfile
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

import numpy as np

from .errors import DuffncError
from .fock import DEFAULT_DIM, position_density
from .hamiltonian import DuffingParams, fidelity, ground_state_numeric
from .perturbative import driven_ground_state, ground_state_perturbative
from .sweep import (
    fit_sqrt_linear_model,
    fit_sqrt_model,
    records_from_csv,
    records_from_json,
    records_to_csv,
    records_to_json,
    sweep_driven,
    sweep_undriven,
)
from .wigner import QuadratureConfig, WignerGrid, negativity_volume, wigner_grid, write_grid

OUTPUT_DIR_ENV = "DUFFNC_OUTPUT_DIR"

COMMANDS = ("sweep-undriven", "sweep-driven", "wigner", "fidelity", "fit", "potential")

_DEFAULT_NAMES = {
    "sweep-undriven": "sweep_undriven",
    "sweep-driven": "sweep_driven",
    "wigner": "wigner",
    "fidelity": "fidelity",
    "fit": "fit",
    "potential": "potential",
}


@dataclass
class RunConfig:
    command: str
    epsilon: float = 0.1
    force: float = 0.0
    omega: float = 1.018
    time: float = 1.0
    eps_min: float = 0.0
    eps_max: float = 0.8
    steps: int = 81
    dim: int = DEFAULT_DIM
    quad: QuadratureConfig = field(default_factory=QuadratureConfig)
    output_path: Optional[Path] = None
    format: str = "csv"
    numeric: bool = False
    amplitudes: str = "printed"
    workers: Optional[int] = None
    input_path: Optional[Path] = None
    t_max: float = 0.0
    x_extent: float = 3.0
    x_points: int = 121
    t_points: int = 61
    density_path: Optional[Path] = None

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ValueError(f"unknown command {self.command!r}")
        if self.dim < 5:
            raise ValueError(f"--dim must be >= 5, got {self.dim}")
        if self.command in ("sweep-undriven", "sweep-driven", "fidelity") and not self.eps_min < self.eps_max:
            raise ValueError(f"need --eps-min < --eps-max, got {self.eps_min} and {self.eps_max}")
        if self.format not in ("csv", "json", "grid"):
            raise ValueError(f"unknown format {self.format!r}")

    def resolved_output(self):
        if self.output_path is not None:
            return Path(self.output_path)
        ext = {"csv": ".csv", "json": ".json", "grid": ".grid"}[self.format]
        base = Path(os.environ.get(OUTPUT_DIR_ENV, "."))
        return base / (_DEFAULT_NAMES[self.command] + ext)


def atomic_write(path, text):
    """Write ``text`` to ``path`` via a temporary sibling and rename."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name + ".", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _grid_text(grid, axis_names=("x", "p", "W")):
    buf = io.StringIO()
    write_grid(grid, buf, axis_names)
    return buf.getvalue()


def potential_grid(epsilon, force, omega, t_max, x_extent=3.0, x_points=121, t_points=61):
    """V^d(x, t) = eps x^4/4 - x F cos(omega t) on x in [-x_extent, x_extent], t in [0, t_max].

    The second grid axis is time; with ``t_max`` = 0 a single t = 0 column is
    produced, which is the undriven profile when ``force`` is zero.
    """
    xs = np.linspace(-x_extent, x_extent, x_points)
    nt = t_points if t_max > 0 else 1
    ts = np.linspace(0.0, t_max, nt)
    vals = 0.25 * epsilon * xs[:, None] ** 4 - xs[:, None] * force * np.cos(omega * ts[None, :])
    return WignerGrid(vals, float(xs[0]), float(xs[-1]), 0.0, float(t_max))


def emit_potential_profile(epsilon, force, omega, t_max, out, x_extent=3.0, x_points=121, t_points=61):
    grid = potential_grid(epsilon, force, omega, t_max, x_extent, x_points, t_points)
    atomic_write(out, _grid_text(grid, ("x", "t", "V")))
    return grid


def _state_for(cfg):
    params = DuffingParams(cfg.epsilon, cfg.force, cfg.omega, cfg.time)
    if cfg.numeric:
        return ground_state_numeric(cfg.epsilon, cfg.dim)[0]
    if params.driven:
        return driven_ground_state(params, cfg.dim, amplitudes=cfg.amplitudes)
    return ground_state_perturbative(cfg.epsilon, cfg.dim)


def _records_text(records, fmt):
    return records_to_json(records) if fmt == "json" else records_to_csv(records)


def _cmd_sweep_undriven(cfg, out):
    recs = sweep_undriven(cfg.eps_min, cfg.eps_max, cfg.steps, cfg.dim, cfg.quad, numeric=cfg.numeric,
                          workers=cfg.workers)
    atomic_write(out, _records_text(recs, cfg.format))
    return f"wrote {len(recs)} records to {out}"


def _cmd_sweep_driven(cfg, out):
    base = DuffingParams(0.0, cfg.force, cfg.omega, cfg.time)
    recs = sweep_driven(base, cfg.eps_min, cfg.eps_max, cfg.steps, cfg.dim, cfg.quad,
                        amplitudes=cfg.amplitudes, workers=cfg.workers)
    atomic_write(out, _records_text(recs, cfg.format))
    return f"wrote {len(recs)} records to {out}"


def _cmd_wigner(cfg, out):
    state = _state_for(cfg)
    grid = wigner_grid(state, cfg.quad)
    atomic_write(out, _grid_text(grid))
    eta = negativity_volume(state, cfg.quad)
    return (
        f"wrote {grid.nx}x{grid.np} grid to {out}: min {grid.values.min():.6g} "
        f"max {grid.values.max():.6g} integral {grid.integral():.8f} negative volume {eta:.6g}"
    )


def _cmd_fidelity(cfg, out):
    eps = np.linspace(cfg.eps_min, cfg.eps_max, cfg.steps)
    rows = []
    for e in eps:
        e = float(e)
        rows.append((e, fidelity(ground_state_perturbative(e, cfg.dim), ground_state_numeric(e, cfg.dim)[0])))
    if cfg.format == "json":
        text = json.dumps([{"epsilon": e, "fidelity": f} for e, f in rows], indent=1)
    else:
        text = "epsilon,fidelity\n" + "".join(f"{e:.17g},{f:.17g}\n" for e, f in rows)
    atomic_write(out, text)
    worst = min(f for _, f in rows)
    return f"min fidelity {worst:.6f} over {len(rows)} points (epsilon in [{cfg.eps_min}, {cfg.eps_max}])"


def _cmd_fit(cfg, out):
    if cfg.input_path is not None:
        text = Path(cfg.input_path).read_text()
        recs = records_from_json(text) if text.lstrip().startswith("[") else records_from_csv(text)
    else:
        recs = sweep_undriven(cfg.eps_min, cfg.eps_max, cfg.steps, cfg.dim, cfg.quad, numeric=cfg.numeric,
                              workers=cfg.workers)
    eta_b = [r.eta_b for r in recs]
    eta_ng = [r.eta_ng for r in recs]
    nu = [r.nu for r in recs]
    bures = fit_sqrt_model(eta_ng, eta_b)
    ng = fit_sqrt_linear_model(nu, eta_ng)
    payload = {
        "points": len(recs),
        "eta_b_vs_eta_ng": {"model": "a + b*sqrt(x)", "coefficients": list(bures.coefficients),
                            "residual_rms": bures.residual_rms},
        "eta_ng_vs_nu": {"model": "c0 + c1*sqrt(x) + c2*x", "coefficients": list(ng.coefficients),
                         "residual_rms": ng.residual_rms},
    }
    atomic_write(out, json.dumps(payload, indent=1) + "\n")
    a, b = bures.coefficients
    c0, c1, c2 = ng.coefficients
    return f"eta_B = {a:.4g} + {b:.4g} sqrt(eta_NG); eta_NG = {c0:.4g} + {c1:.4g} sqrt(nu) + {c2:.4g} nu"


def _cmd_potential(cfg, out):
    grid = emit_potential_profile(cfg.epsilon, cfg.force, cfg.omega, cfg.t_max, out,
                                  cfg.x_extent, cfg.x_points, cfg.t_points)
    msg = f"wrote {grid.nx}x{grid.np} potential grid to {out}"
    if cfg.density_path is not None:
        xs = grid.xs
        rho = position_density(_state_for(cfg), xs)
        atomic_write(cfg.density_path, "x,density\n" + "".join(f"{x:.17g},{d:.17g}\n" for x, d in zip(xs, rho)))
        msg += f"; ground-state density to {cfg.density_path}"
    return msg


_HANDLERS = {
    "sweep-undriven": _cmd_sweep_undriven,
    "sweep-driven": _cmd_sweep_driven,
    "wigner": _cmd_wigner,
    "fidelity": _cmd_fidelity,
    "fit": _cmd_fit,
    "potential": _cmd_potential,
}


def run(cfg):
    """Execute ``cfg`` and return (exit status, summary or diagnostic)."""
    out = cfg.resolved_output()
    try:
        return 0, _HANDLERS[cfg.command](cfg, out)
    except (DuffncError, OSError, ValueError) as exc:
        return 1, f"{cfg.command}: {type(exc).__name__}: {exc}"


def _add_quad(p):
    p.add_argument("--extent", type=float, default=6.0, help="half-width of the phase-space window")
    p.add_argument("--step", type=float, default=0.02, help="phase-space grid spacing")
    p.add_argument("--refine", action="store_true", help="check the negative volume on a refined grid")


def _add_sweep(p, eps_max=0.8, steps=81):
    p.add_argument("--eps-min", type=float, default=0.0)
    p.add_argument("--eps-max", type=float, default=eps_max)
    p.add_argument("--steps", type=int, default=steps)


def _add_drive(p, force=0.0):
    p.add_argument("--force", type=float, default=force)
    p.add_argument("--omega", type=float, default=1.018)
    p.add_argument("--time", type=float, default=1.0)
    p.add_argument("--amplitudes", choices=("printed", "first-order"), default="printed",
                   help="driven-state amplitude set")


def build_parser():
    parser = argparse.ArgumentParser(prog="duffnc", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--dim", type=int, default=DEFAULT_DIM, help="Fock-space truncation")
    common.add_argument("--out", type=Path, default=None,
                        help=f"output file (default: command name under ${OUTPUT_DIR_ENV} or .)")
    common.add_argument("--format", choices=("csv", "json", "grid"), default=None)

    p = sub.add_parser("sweep-undriven", parents=[common], help="measures of the undriven ground state vs epsilon")
    _add_sweep(p)
    _add_quad(p)
    p.add_argument("--numeric", action="store_true", help="measure the diagonalized ground state instead")
    p.add_argument("--workers", type=int, default=None)

    p = sub.add_parser("sweep-driven", parents=[common], help="measures of the driven state vs epsilon")
    _add_sweep(p)
    _add_quad(p)
    _add_drive(p, force=0.015)
    p.add_argument("--workers", type=int, default=None)

    p = sub.add_parser("wigner", parents=[common], help="Wigner function grid of a ground state")
    p.add_argument("--epsilon", type=float, default=0.1)
    _add_drive(p)
    _add_quad(p)
    p.add_argument("--numeric", action="store_true", help="use the diagonalized undriven ground state")

    p = sub.add_parser("fidelity", parents=[common], help="perturbative vs diagonalized ground-state fidelity")
    _add_sweep(p)

    p = sub.add_parser("fit", parents=[common], help="fit the two nonlinearity/nonclassicality relations")
    p.add_argument("--input", type=Path, default=None, help="records CSV/JSON from a sweep (else sweep now)")
    _add_sweep(p)
    _add_quad(p)
    p.add_argument("--numeric", action="store_true")
    p.add_argument("--workers", type=int, default=None)

    p = sub.add_parser("potential", parents=[common], help="Duffing potential profile V(x) or V^d(x, t)")
    p.add_argument("--epsilon", type=float, default=0.5)
    _add_drive(p)
    p.add_argument("--t-max", type=float, default=0.0)
    p.add_argument("--x-extent", type=float, default=3.0)
    p.add_argument("--x-points", type=int, default=121)
    p.add_argument("--t-points", type=int, default=61)
    p.add_argument("--density-out", type=Path, default=None,
                   help="also write the ground-state position density |psi(x)|^2")
    p.add_argument("--numeric", action="store_true")
    return parser


_FORMAT_DEFAULTS = {"wigner": "grid", "potential": "grid", "fit": "json"}


def config_from_args(ns):
    kw = {"command": ns.command, "dim": ns.dim, "output_path": ns.out}
    kw["format"] = ns.format or _FORMAT_DEFAULTS.get(ns.command, "csv")
    for name in ("epsilon", "force", "omega", "time", "eps_min", "eps_max", "steps", "numeric",
                 "amplitudes", "workers", "t_max", "x_extent", "x_points", "t_points"):
        if hasattr(ns, name):
            kw[name] = getattr(ns, name)
    if hasattr(ns, "extent"):
        kw["quad"] = QuadratureConfig(ns.extent, ns.step, ns.refine)
    if getattr(ns, "input", None) is not None:
        kw["input_path"] = ns.input
    if getattr(ns, "density_out", None) is not None:
        kw["density_path"] = ns.density_out
    return RunConfig(**kw)


def main(argv=None):
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        cfg = config_from_args(ns)
    except (DuffncError, ValueError) as exc:
        parser.error(str(exc))
    status, message = run(cfg)
    print(message, file=sys.stdout if status == 0 else sys.stderr)
    return status


if __name__ == "__main__":
    sys.exit(main())
