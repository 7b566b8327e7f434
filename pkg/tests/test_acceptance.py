"""Acceptance gate: one test, and one printed PASS/FAIL line, per criterion."""

import math
import time

import numpy as np
import pytest

from conftest import random_params, spin_rotation_populations
from ghzdots import (
    StateVector4,
    SystemParams,
    build_hamiltonian,
    characteristic_coefficients,
    eigensystem,
    evolve,
    ghz_probability,
    ghz_probability_max,
    integrate_schrodinger,
    solve_quartic,
)
from ghzdots.cli import main
from ghzdots.runner import RunConfig, figure_config, figure_parameter_sets, run_simulation

VACUUM = StateVector4.basis(0)

# max |p_ghz - 0.5| over 0..500 fs at Omega = 0.01, computed once with the RK4
# oracle (0.0120967723314) and rounded up
EPS_WEAK = 0.012097
# first interior extremum of p_ghz at Omega = 0.1, from the RK4 oracle on a
# 1e-3 fs grid: a minimum p_ghz = 2/7 at t = 5.937 fs
FIRST_EXTREMUM_FS = 5.937
QUOTED_GHZ_TIME_FS = 13.0


def report(capsys, criterion, ok, detail):
    with capsys.disabled():
        print(f"\n[{'PASS' if ok else 'FAIL'}] criterion {criterion}: {detail}")


@pytest.fixture(scope="module")
def figure_runs():
    """Both propagators on all eight figure curves, timed."""
    runs = []
    start = time.perf_counter()
    for params in figure_parameter_sets():
        h = build_hamiltonian(params)
        t = params.times()
        spectral = evolve(eigensystem(h), VACUUM, t)
        oracle = integrate_schrodinger(h, VACUUM, t)
        runs.append((params, spectral, oracle))
    return runs, time.perf_counter() - start


def test_1_oracle_equivalence(figure_runs, capsys):
    runs, elapsed = figure_runs
    assert len(runs) == 8 and all(p.t_end == 500 and p.t_start == 0 for p, _, _ in runs)
    worst = max(np.max(np.abs(s - o)) for _, s, o in runs)
    ok = worst < 1e-8 and elapsed < 10.0
    report(capsys, 1, ok, f"max |B_spectral - B_oracle| = {worst:.2e} (< 1e-8), runtime {elapsed:.2f} s (< 10 s)")
    assert ok


def test_2a_norm_drift(figure_runs, capsys):
    runs, _ = figure_runs
    drift_s = max(np.max(np.abs(np.sum(np.abs(s) ** 2, axis=1) - 1)) for _, s, _ in runs)
    drift_o = max(np.max(np.abs(np.sum(np.abs(o) ** 2, axis=1) - 1)) for _, _, o in runs)
    ok = drift_s < 1e-12 and drift_o < 1e-9
    report(capsys, "2a", ok, f"norm drift spectral {drift_s:.1e} (< 1e-12), oracle {drift_o:.1e} (< 1e-9)")
    assert ok


def test_2b_probability_bounds(figure_runs, capsys):
    runs, _ = figure_runs
    ok = True
    for _, s, o in runs:
        for amps in (s, o):
            for p in (ghz_probability(amps), ghz_probability_max(amps)[0], np.abs(amps) ** 2):
                ok &= bool(np.all((p >= 0) & (p <= 1)))
    for traj in run_simulation(figure_config("fig1")) + run_simulation(figure_config("fig2")):
        ok &= bool(np.all((traj.p_ghz >= 0) & (traj.p_ghz <= 1)))
        ok &= bool(np.all((traj.p_ghz_max >= 0) & (traj.p_ghz_max <= 1)))
    report(capsys, "2b", ok, "all populations, p_ghz and p_ghz_max within [0, 1]")
    assert ok


def test_2c_hermiticity(capsys):
    rng = np.random.default_rng(2)
    worst = 0.0
    for _ in range(1000):
        h = build_hamiltonian(random_params(rng)).elements
        worst = max(worst, np.max(np.abs(h - h.conj().T)) / np.max(np.abs(h)))
    ok = worst <= 1e-14
    report(capsys, "2c", ok, f"Hermiticity over 1000 draws, worst relative defect {worst:.1e} (<= 1e-14)")
    assert ok


def test_2d_trace(capsys):
    """trace(H) = 8 eta, as the criterion is written.

    The four diagonal elements 1.5(eta - delta), 0.5(7 eta - delta),
    0.5(7 eta + delta), 1.5(eta + delta) add up to 10 eta, so this check
    cannot pass for eta != 0. The 10 eta identity is asserted in
    test_model.py.
    """
    rng = np.random.default_rng(3)
    worst_8, worst_10 = 0.0, 0.0
    for _ in range(1000):
        p = random_params(rng)
        tr = np.trace(build_hamiltonian(p).elements).real
        worst_8 = max(worst_8, abs(tr - 8 * p.eta))
        worst_10 = max(worst_10, abs(tr - 10 * p.eta))
    ok = worst_8 <= 1e-14
    report(capsys, "2d", ok, f"trace(H) = 8 eta: worst |tr - 8 eta| = {worst_8:.2e} (<= 1e-14); "
                             f"for reference |tr - 10 eta| <= {worst_10:.1e}")
    assert ok


def test_3_quartic_solver(capsys):
    rng = np.random.default_rng(4)
    worst_res, worst_match = 0.0, 0.0
    for _ in range(10_000):
        p = random_params(rng, omega_min=0.005)
        h = build_hamiltonian(p).elements
        shift, scale = h[1, 1].real, abs(h[2, 1])
        c = characteristic_coefficients(h, shift, scale)
        roots = solve_quartic(c)
        for mu in roots:
            worst_res = max(worst_res, abs(c(mu)) / max(1.0, mu**4))
        reference = np.linalg.eigvalsh((h - shift * np.eye(4)) / scale)
        worst_match = max(worst_match, np.max(np.abs(roots - reference)) / max(1.0, np.max(np.abs(reference))))
    ok = worst_res < 1e-10 and worst_match < 1e-10
    report(capsys, 3, ok, f"10000 quartics: worst residual {worst_res:.1e}, "
                          f"worst mismatch vs eigvalsh {worst_match:.1e} (both < 1e-10)")
    assert ok


def test_4_spin_rotation_special_case(capsys):
    omega = 0.05
    h = build_hamiltonian(SystemParams(eta=0.0, delta=0.0, omega_rabi=omega))
    t = np.linspace(0.0, 200.0, 201)
    t_quarter = math.pi / (4 * omega)
    expected = np.array([spin_rotation_populations(omega * x) for x in t])
    worst = 0.0
    p_max_err = 0.0
    for amps, at_quarter in (
        (evolve(eigensystem(h), VACUUM, t), evolve(eigensystem(h), VACUUM, [t_quarter])[0]),
        (integrate_schrodinger(h, VACUUM, t), integrate_schrodinger(h, VACUUM, [t_quarter])[0]),
    ):
        worst = max(worst, np.max(np.abs(np.abs(amps) ** 2 - expected)))
        worst = max(worst, np.max(np.abs(np.abs(at_quarter) ** 2 - [1 / 8, 3 / 8, 3 / 8, 1 / 8])))
        p_max_err = max(p_max_err, abs(ghz_probability_max(at_quarter)[0] - 0.25))
    ok = worst < 1e-9 and p_max_err < 1e-9
    report(capsys, 4, ok, f"binomial populations to {worst:.1e}, p_ghz_max(pi/4) - 0.25 = {p_max_err:.1e} (< 1e-9)")
    assert ok


def test_5_weak_field(capsys):
    (traj,) = run_simulation(RunConfig(params=SystemParams(eta=0.1, delta=0.0, omega_rabi=0.01)))
    excursion = np.max(np.abs(traj.p_ghz - 0.5))
    ok = excursion < EPS_WEAK and EPS_WEAK < 0.1
    report(capsys, 5, ok, f"Omega = 0.01: max |p_ghz - 0.5| = {excursion:.10f} < eps_weak = {EPS_WEAK} < 0.1")
    assert ok


def test_6_detuning_trend(capsys):
    trajs = run_simulation(figure_config("fig2"))
    assert [t.params.delta / t.params.eta for t in trajs] == pytest.approx([0.1, 0.3, 1.0, 3.0])
    excursions = [float(np.max(np.abs(t.p_ghz - 0.5))) for t in trajs]
    ok = all(a > b for a, b in zip(excursions, excursions[1:]))
    report(capsys, 6, ok, "max |p_ghz - 0.5| for delta = 0.1, 0.3, 1, 3 eta: "
                          + ", ".join(f"{e:.4f}" for e in excursions) + " (strictly decreasing)")
    assert ok


def first_interior_extremum(t, p):
    d = np.diff(p)
    turns = np.nonzero(np.sign(d[1:]) != np.sign(d[:-1]))[0] + 1
    i = turns[0]
    # vertex of the parabola through the three samples around the turn
    y0, y1, y2 = p[i - 1], p[i], p[i + 1]
    dt = t[1] - t[0]
    return t[i] + 0.5 * dt * (y0 - y2) / (y0 - 2 * y1 + y2)


def test_7_ghz_timescale(capsys):
    params = SystemParams(eta=0.1, delta=0.0, omega_rabi=0.1)
    h = build_hamiltonian(params)
    t = np.arange(0.01, 40.0, 0.01)
    t_ext = first_interior_extremum(t, ghz_probability(integrate_schrodinger(h, VACUUM, t)))
    assert abs(t_ext - FIRST_EXTREMUM_FS) < 1e-3
    ratio = QUOTED_GHZ_TIME_FS / t_ext
    ok = 0.5 <= ratio <= 2.0
    report(capsys, 7, ok, f"first extremum of p_ghz at Omega = 0.1 is t = {t_ext:.3f} fs; "
                          f"13 fs / t = {ratio:.3f} (needs 0.5..2)")
    assert ok


@pytest.mark.parametrize("figure", ["fig1", "fig2"])
def test_8_deterministic_csv(figure, tmp_path, capsys):
    outputs = []
    for run in ("a", "b"):
        prefix = tmp_path / run / figure
        assert main([figure, "--out", str(prefix), "--no-svg"]) == 0
        outputs.append({p.name: p.read_bytes() for p in sorted((tmp_path / run).glob("*.csv"))})
    ok = len(outputs[0]) == 4 and outputs[0] == outputs[1]
    report(capsys, 8, ok, f"{figure}: {len(outputs[0])} CSV files byte-identical across two runs")
    assert ok
