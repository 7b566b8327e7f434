"""Physical parameters and the effective four-level exciton-ladder Hamiltonian.

Three identical quantum dots coupled by Foerster hopping and driven by a
common laser reduce, in the optically active J=3/2 subspace and the rotating
frame, to a tridiagonal 4x4 Hamiltonian over the ladder states
|0> (vacuum), |1> (single exciton), |2> (biexciton), |3> (triexciton).

Units: hbar = 1, rates and energies in rad/fs, times in fs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .observables import BASIS_LABELS, StateVector4

SQRT3 = math.sqrt(3.0)
HERMITIAN_TOL = 1e-14

INITIAL_STATES = {"vacuum": 0, "single": 1, "bi": 2, "tri": 3}


@dataclass(frozen=True)
class SystemParams:
    """Inputs of one simulation run.

    ``omega_rabi`` is a non-negative magnitude; the laser phase lives in
    ``phi``. ``tau`` is the relative phase of the target GHZ state.
    ``initial_state`` names a ladder state or is ``"custom"``, in which case
    ``initial_amplitudes`` holds four complex numbers that are normalized here.
    """

    eta: float = 0.1
    omega_rabi: float = 0.05
    delta: float = 0.0
    phi: float = 0.0
    tau: float = 0.0
    t_start: float = 0.0
    t_end: float = 500.0
    t_step: float = 0.5
    initial_state: str = "vacuum"
    initial_amplitudes: tuple | None = field(default=None)

    def __post_init__(self):
        for name in ("eta", "omega_rabi", "delta", "phi", "tau", "t_start", "t_end", "t_step"):
            value = getattr(self, name)
            if not math.isfinite(value):
                raise ValueError(f"{name} must be finite, got {value!r}")
            object.__setattr__(self, name, float(value))
        if self.omega_rabi < 0:
            raise ValueError("omega_rabi must be >= 0 (carry any phase in phi)")
        if self.t_step <= 0:
            raise ValueError("t_step must be > 0")
        if self.t_end <= self.t_start:
            raise ValueError("t_end must be greater than t_start")
        if self.t_start < 0:
            raise ValueError("t_start must be >= 0")

        if self.initial_state == "custom":
            if self.initial_amplitudes is None:
                raise ValueError("initial_state 'custom' needs initial_amplitudes")
            amps = np.asarray(self.initial_amplitudes, dtype=complex).reshape(-1)
            if amps.shape != (4,):
                raise ValueError("initial_amplitudes needs exactly 4 values")
            state = StateVector4.normalized(amps)
            object.__setattr__(self, "initial_amplitudes", tuple(complex(a) for a in state.b))
        elif self.initial_state in INITIAL_STATES:
            if self.initial_amplitudes is not None:
                raise ValueError("initial_amplitudes is only allowed with initial_state 'custom'")
        else:
            choices = ", ".join([*INITIAL_STATES, "custom"])
            raise ValueError(f"initial_state must be one of {choices}; got {self.initial_state!r}")

    def initial_vector(self) -> StateVector4:
        if self.initial_state == "custom":
            return StateVector4(np.array(self.initial_amplitudes, dtype=complex))
        return StateVector4.basis(INITIAL_STATES[self.initial_state])

    def times(self) -> np.ndarray:
        """Uniform grid t_start, t_start + t_step, ... up to t_end inclusive."""
        n = int(math.floor((self.t_end - self.t_start) / self.t_step + 1e-9))
        return self.t_start + self.t_step * np.arange(n + 1)


@dataclass(frozen=True)
class Hamiltonian4:
    """Hermitian tridiagonal 4x4 matrix in the ladder basis, rad/fs."""

    elements: np.ndarray
    labels: tuple = BASIS_LABELS

    def __post_init__(self):
        h = np.array(self.elements, dtype=complex)
        if h.shape != (4, 4):
            raise ValueError(f"expected a 4x4 matrix, got {h.shape}")
        if not np.all(np.isfinite(h)):
            raise ValueError("Hamiltonian elements must be finite")
        scale = max(np.max(np.abs(h)), np.finfo(float).tiny)
        if np.max(np.abs(h - h.conj().T)) > HERMITIAN_TOL * scale:
            raise ValueError("Hamiltonian is not Hermitian")
        band = np.abs(np.subtract.outer(np.arange(4), np.arange(4))) <= 1
        if np.any(h[~band] != 0):
            raise ValueError("only adjacent exciton numbers may couple")
        h.flags.writeable = False
        object.__setattr__(self, "elements", h)

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.elements, dtype=dtype)

    @property
    def diagonal(self) -> np.ndarray:
        return self.elements.diagonal().real.copy()


def matrix_elements(params: SystemParams) -> dict:
    """Upper-triangle matrix elements <j|H|k> keyed by (j, k)."""
    eta, omega, delta, phi = params.eta, params.omega_rabi, params.delta, params.phi
    return {
        (0, 0): 1.5 * (eta - delta),
        (1, 1): 0.5 * (7 * eta - delta),
        (2, 2): 0.5 * (7 * eta + delta),
        (3, 3): 1.5 * (eta + delta),
        (0, 1): SQRT3 * omega * np.exp(1j * phi),
        (1, 2): 2.0 * omega * np.exp(-1j * phi),
        (2, 3): SQRT3 * omega * np.exp(-1j * phi),
    }


def build_hamiltonian(params: SystemParams) -> Hamiltonian4:
    # the element table fixes the upper triangle; the lower one is its conjugate
    h = np.zeros((4, 4), dtype=complex)
    for (j, k), value in matrix_elements(params).items():
        h[j, k] = value
        h[k, j] = np.conj(value)
    return Hamiltonian4(h)
