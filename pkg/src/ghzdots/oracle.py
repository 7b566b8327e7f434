"""Reference integrator for i dB/dt = H B: classical RK4 with step doubling.

Shares nothing with the eigen-decomposition path, so the two cross-check
each other. Because H is time independent, one RK4 step is a fixed linear
map; it is built once per step size by running the four stages on the
identity matrix and then applied to the state vector step by step.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

MIN_STEP = 1e-8


class StepUnderflow(RuntimeError):
    """Error control asked for a step below MIN_STEP fs."""


@dataclass(frozen=True)
class IntegratorConfig:
    dt_max: float = 0.01
    error_tol: float = 1e-10
    method: str = "rk4-step-doubling"

    def __post_init__(self):
        if not self.dt_max > 0:
            raise ValueError("dt_max must be > 0")
        if not 1e-15 < self.error_tol < 1e-3:
            raise ValueError("error_tol must lie in (1e-15, 1e-3)")
        if self.method != "rk4-step-doubling":
            raise ValueError(f"unknown method {self.method!r}")


def rk4_increment(rhs, y, dt):
    k1 = rhs(y)
    k2 = rhs(y + 0.5 * dt * k1)
    k3 = rhs(y + 0.5 * dt * k2)
    k4 = rhs(y + dt * k3)
    return dt / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4)


def rk4_step(rhs, y, dt):
    return y + rk4_increment(rhs, y, dt)


def _step_increment(generator: np.ndarray, dt: float) -> np.ndarray:
    """D with one RK4 step y -> y + D y. Kept apart from the identity so
    its rounding does not compound over many steps."""
    return rk4_increment(lambda y: generator @ y, np.eye(4, dtype=complex), dt)


def _controlled_step(generator, dt, error_rate):
    """Largest step dt / 2**k whose doubling error is below error_rate * step.

    Returns the number of subdivisions of dt and the increment D of one
    accepted step (two half steps): y -> y + D y.
    """
    n = 1
    while True:
        h = dt / n
        if h < MIN_STEP:
            raise StepUnderflow(f"step {h:.3e} fs needed for error rate {error_rate:g}/fs")
        half = _step_increment(generator, h / 2)
        two_halves = 2 * half + half @ half
        err = np.max(np.abs(_step_increment(generator, h) - two_halves))
        if err <= error_rate * h:
            return n, two_halves
        n *= 2


def integrate_schrodinger(h, b0, times, cfg: IntegratorConfig | None = None) -> np.ndarray:
    """States at each requested time as an (N, 4) complex array.

    The integration starts from ``b0`` at t = 0. ``times`` must be strictly
    increasing with a non-negative first entry. Step doubling is held to an
    error per unit time of error_tol / t_final, so local errors summed over
    the run stay below error_tol. The mean energy tr(H)/4 is factored out as
    an exact phase so RK4 only sees the traceless part.
    """
    cfg = cfg or IntegratorConfig()
    t = np.asarray(times, dtype=float).reshape(-1)
    if t.size == 0:
        return np.zeros((0, 4), dtype=complex)
    if t[0] < 0 or np.any(np.diff(t) <= 0):
        raise ValueError("times must be strictly increasing and start at t >= 0")

    hm = np.asarray(h, dtype=complex)
    mean_energy = np.trace(hm).real / 4.0
    generator = -1j * (hm - mean_energy * np.eye(4))

    y = np.asarray(b0, dtype=complex).reshape(4).copy()
    out = np.empty((t.size, 4), dtype=complex)
    error_rate = cfg.error_tol / max(t[-1], cfg.dt_max)
    cache = {}
    now = 0.0
    for i, target in enumerate(t):
        span = target - now
        if span > 0:
            n_base = max(1, math.ceil(span / cfg.dt_max - 1e-9))
            key = (n_base, span)
            if key not in cache:
                n_sub, increment = _controlled_step(generator, span / n_base, error_rate)
                cache[key] = (n_base * n_sub, increment)
            n_steps, increment = cache[key]
            for _ in range(n_steps):
                y = y + increment @ y
            now = target
        out[i] = y
    return out * np.exp(-1j * mean_energy * t)[:, None]
