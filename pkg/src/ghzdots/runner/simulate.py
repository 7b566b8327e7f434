"""Sweep engine, built-in figure configurations and the cross-validation suite."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .. import __version__
from ..model import Hamiltonian4, SystemParams, build_hamiltonian
from ..observables import ghz_probability, ghz_probability_max, populations
from ..oracle import IntegratorConfig, integrate_schrodinger
from ..spectral import eigensystem, evolve
from .config import RunConfig, parse_config

VALIDATION_TOL = 1e-8

FIG1_CONFIG = """\
# weak-field series: Rabi frequency sweep on resonance
eta = 0.1
delta = 0
phi = 0
t_start = 0
t_end = 500
t_step = 0.5
sweep = omega_rabi: 0.1, 0.05, 0.03, 0.01
outputs = csv, svg
output_prefix = fig1
"""

FIG2_CONFIG = """\
# detuning series at Omega = 0.05 rad/fs; delta = 0.1, 0.3, 1.0, 3.0 times eta
eta = 0.1
omega_rabi = 0.05
phi = 0
t_start = 0
t_end = 500
t_step = 0.5
sweep = delta: 0.01, 0.03, 0.1, 0.3
outputs = csv, svg
output_prefix = fig2
"""


def figure_config(name: str) -> RunConfig:
    return parse_config({"fig1": FIG1_CONFIG, "fig2": FIG2_CONFIG}[name])


def figure_parameter_sets() -> list[SystemParams]:
    """The eight curves of both figures, in caption order."""
    return figure_config("fig1").members() + figure_config("fig2").members()


@dataclass
class Trajectory:
    times: np.ndarray
    amplitudes: np.ndarray
    p_ghz: np.ndarray
    p_ghz_max: np.ndarray
    params: SystemParams
    metadata: dict = field(default_factory=dict)
    label: str = ""

    @property
    def populations(self) -> np.ndarray:
        return populations(self.amplitudes)

    def __len__(self):
        return len(self.times)


def _amplitudes(h: Hamiltonian4, params: SystemParams, solver: str) -> np.ndarray:
    b0 = params.initial_vector()
    times = params.times()
    if solver == "oracle":
        return integrate_schrodinger(h, b0, times, IntegratorConfig())
    return evolve(eigensystem(h, b0), b0, times)


def _probability(values: np.ndarray) -> np.ndarray:
    # rounding may leave values a few ulp outside [0, 1]; anything more is a bug
    if np.any(values < -1e-12) or np.any(values > 1 + 1e-12):
        raise AssertionError("probability outside [0, 1]")
    return np.clip(values, 0.0, 1.0)


def _format_param(value) -> str:
    return f"{value:.12g}" if isinstance(value, float) else str(value)


def simulate_params(params: SystemParams, solver: str = "spectral", validate: bool = False,
                    label: str = "") -> Trajectory:
    h = build_hamiltonian(params)
    amps = _amplitudes(h, params, solver)
    p_ghz = _probability(ghz_probability(amps, params.tau))
    p_max = _probability(ghz_probability_max(amps)[0])

    meta = {name: _format_param(getattr(params, name)) for name in params.__dataclass_fields__}
    if params.initial_state != "custom":
        del meta["initial_amplitudes"]
    meta["solver"] = solver
    meta["version"] = __version__
    if validate:
        other = _amplitudes(h, params, "spectral" if solver == "oracle" else "oracle")
        meta["max_oracle_deviation"] = f"{np.max(np.abs(amps - other)):.3e}"
    return Trajectory(params.times(), amps, p_ghz, p_max, params, meta, label)


def run_simulation(cfg: RunConfig, solver: str | None = None) -> list[Trajectory]:
    """One trajectory per sweep value, in sweep order.

    Members are independent; results do not depend on sweep order or on
    whether a value is run alone.
    """
    solver = solver or cfg.solver
    trajectories = []
    for params in cfg.members():
        label = ""
        if cfg.sweep is not None:
            label = f"{cfg.sweep.axis}={getattr(params, cfg.sweep.axis):.12g}"
        traj = simulate_params(params, solver, cfg.validate, label)
        if cfg.sweep is not None:
            traj.metadata["sweep"] = label
        trajectories.append(traj)
    return trajectories


@dataclass
class ValidationReport:
    deviations: list  # (label, max |B_spectral - B_oracle|)
    tolerance: float = VALIDATION_TOL

    @property
    def passed(self) -> bool:
        return all(dev < self.tolerance for _, dev in self.deviations)

    def lines(self) -> list[str]:
        out = []
        for label, dev in self.deviations:
            verdict = "ok" if dev < self.tolerance else "FAIL"
            out.append(f"{label:<40s} max deviation {dev:.3e}  {verdict}")
        return out


def validate_suite(parameter_sets=None, hamiltonian_hook=None,
                   cfg: IntegratorConfig | None = None) -> ValidationReport:
    """Run each parameter set through both propagators and compare amplitudes.

    ``hamiltonian_hook`` maps the Hamiltonian handed to the spectral path
    only; a perturbing hook is the negative control for this check.
    """
    sets = figure_parameter_sets() if parameter_sets is None else parameter_sets
    deviations = []
    for params in sets:
        h = build_hamiltonian(params)
        h_spectral = hamiltonian_hook(h) if hamiltonian_hook else h
        b0 = params.initial_vector()
        times = params.times()
        spectral = evolve(eigensystem(h_spectral, b0), b0, times)
        reference = integrate_schrodinger(h, b0, times, cfg)
        label = (f"eta={params.eta:g} omega_rabi={params.omega_rabi:g} "
                 f"delta={params.delta:g}")
        deviations.append((label, float(np.max(np.abs(spectral - reference)))))
    return ValidationReport(deviations)
