import math

import numpy as np
import pytest

from conftest import spin_rotation_populations
from ghzdots import (
    Hamiltonian4,
    IntegratorConfig,
    StateVector4,
    StepUnderflow,
    SystemParams,
    build_hamiltonian,
    eigensystem,
    evolve,
    integrate_schrodinger,
)
from ghzdots.oracle import rk4_step

VACUUM = StateVector4.basis(0)


def test_rk4_step_order():
    # y' = -i y, exact y(h) = exp(-i h); local error O(h^5)
    errs = [abs(rk4_step(lambda y: -1j * y, 1.0 + 0j, h) - np.exp(-1j * h)) for h in (0.1, 0.05)]
    assert 25 < errs[0] / errs[1] < 40


def test_undriven_phase():
    h = build_hamiltonian(SystemParams(eta=0.1, delta=0.0, omega_rabi=0.0))
    t = np.linspace(0, 500, 51)
    out = integrate_schrodinger(h, VACUUM, t)
    assert np.allclose(np.abs(out) ** 2, [[1, 0, 0, 0]] * len(t), atol=1e-12)
    phase_err = np.angle(out[:, 0] * np.exp(0.15j * t))
    assert np.max(np.abs(phase_err)) < 1e-9


def test_spin_rotation():
    omega = 0.05
    h = build_hamiltonian(SystemParams(eta=0.0, delta=0.0, omega_rabi=omega))
    t = math.pi / (4 * omega)
    out = integrate_schrodinger(h, VACUUM, [t])[0]
    assert np.allclose(np.abs(out) ** 2, spin_rotation_populations(omega * t), atol=1e-7)
    assert np.allclose(np.abs(out) ** 2, [1 / 8, 3 / 8, 3 / 8, 1 / 8], atol=1e-7)


def test_matches_closed_form_fig1_solid():
    p = SystemParams(eta=0.1, delta=0.0, omega_rabi=0.1, t_end=200)
    h = build_hamiltonian(p)
    t = p.times()
    diff = integrate_schrodinger(h, VACUUM, t) - evolve(eigensystem(h), VACUUM, t)
    assert np.max(np.abs(diff)) < 1e-8


@pytest.mark.parametrize("kwargs", [dict(omega_rabi=0.1), dict(delta=0.3)])
def test_convergence_and_norm(kwargs):
    p = SystemParams(**kwargs)
    h = build_hamiltonian(p)
    t = p.times()
    cfg = IntegratorConfig()
    coarse = integrate_schrodinger(h, VACUUM, t, cfg)
    fine = integrate_schrodinger(h, VACUUM, t, IntegratorConfig(dt_max=cfg.dt_max / 2))
    assert np.max(np.abs(coarse - fine)) < cfg.error_tol
    assert np.max(np.abs(np.linalg.norm(coarse, axis=1) ** 2 - 1)) < 10 * cfg.error_tol


def test_time_reversal():
    p = SystemParams(omega_rabi=0.1, delta=0.05, phi=0.4)
    h = build_hamiltonian(p)
    cfg = IntegratorConfig()
    b0 = StateVector4.normalized([0.2, 0.5j, -0.1, 0.8])
    forward = integrate_schrodinger(h, b0, [300.0], cfg)[0]
    back = integrate_schrodinger(Hamiltonian4(-h.elements), forward, [300.0], cfg)[0]
    assert np.max(np.abs(back - b0.b)) < 100 * cfg.error_tol


def test_deterministic():
    h = build_hamiltonian(SystemParams(omega_rabi=0.03))
    t = np.linspace(0, 50, 11)
    assert np.array_equal(integrate_schrodinger(h, VACUUM, t), integrate_schrodinger(h, VACUUM, t))


def test_includes_time_zero_and_nonuniform_grid():
    h = build_hamiltonian(SystemParams(omega_rabi=0.05))
    t = np.array([0.0, 0.3, 1.0, 7.77, 20.0])
    out = integrate_schrodinger(h, VACUUM, t)
    assert np.array_equal(out[0], VACUUM.b)
    assert np.max(np.abs(out - evolve(eigensystem(h), VACUUM, t))) < 1e-10


@pytest.mark.parametrize("times", [[1.0, 0.5], [-1.0, 2.0], [1.0, 1.0]])
def test_bad_time_grid(times):
    h = build_hamiltonian(SystemParams())
    with pytest.raises(ValueError):
        integrate_schrodinger(h, VACUUM, times)


def test_step_underflow():
    # a huge coupling forces steps below the floor at this tolerance
    h = build_hamiltonian(SystemParams(eta=0.0, omega_rabi=1e9))
    with pytest.raises(StepUnderflow):
        integrate_schrodinger(h, VACUUM, [1.0], IntegratorConfig(error_tol=1e-14))


@pytest.mark.parametrize("kwargs", [dict(dt_max=0.0), dict(error_tol=1e-2), dict(error_tol=1e-16)])
def test_config_validation(kwargs):
    with pytest.raises(ValueError):
        IntegratorConfig(**kwargs)
