import numpy as np
import pytest

from ghzdots import SystemParams


def random_params(rng, omega_min=0.0):
    return SystemParams(
        eta=rng.uniform(0.0, 0.5),
        omega_rabi=rng.uniform(omega_min, 0.5),
        delta=rng.uniform(-0.5, 0.5),
        phi=rng.uniform(0.0, 2 * np.pi),
    )


def spin_rotation_populations(omega_t):
    """|B_m|^2 = C(3, m) cos^(2(3-m)) sin^(2m) of the spin-3/2 rotation angle."""
    c2, s2 = np.cos(omega_t) ** 2, np.sin(omega_t) ** 2
    return np.array([c2**3, 3 * c2**2 * s2, 3 * c2 * s2**2, s2**3])


@pytest.fixture
def rng():
    return np.random.default_rng(20261017)
