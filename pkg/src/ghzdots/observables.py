"""State vectors in the exciton ladder basis and the quantities read off them."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

NORM_TOL = 1e-9

BASIS_LABELS = ("vacuum", "single", "bi", "tri")


@dataclass(frozen=True)
class StateVector4:
    """Normalized amplitudes (B0, B1, B2, B3) over |0>, |1>, |2>, |3>.

    |0> is the zero-exciton vacuum (|000> of the three dots) and |3> the
    triexciton (|111>). Construction fails if the squared norm is off by
    more than ``NORM_TOL``; use :meth:`normalized` for raw vectors.
    """

    b: np.ndarray

    def __post_init__(self):
        b = np.array(self.b, dtype=complex).reshape(-1)
        if b.shape != (4,):
            raise ValueError(f"expected 4 amplitudes, got shape {b.shape}")
        if not np.all(np.isfinite(b)):
            raise ValueError("amplitudes must be finite")
        norm2 = float(np.vdot(b, b).real)
        if abs(norm2 - 1.0) > NORM_TOL:
            raise ValueError(f"state is not normalized: |b|^2 = {norm2!r}")
        b.flags.writeable = False
        object.__setattr__(self, "b", b)

    @classmethod
    def normalized(cls, amplitudes) -> "StateVector4":
        b = np.asarray(amplitudes, dtype=complex).reshape(-1)
        norm = np.linalg.norm(b)
        if norm == 0.0 or not np.isfinite(norm):
            raise ValueError("cannot normalize a zero or non-finite vector")
        return cls(b / norm)

    @classmethod
    def basis(cls, index: int) -> "StateVector4":
        b = np.zeros(4, dtype=complex)
        b[index] = 1.0
        return cls(b)

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.b, dtype=dtype)

    def __getitem__(self, index):
        return self.b[index]

    def __len__(self):
        return 4


def _amplitudes(state) -> np.ndarray:
    """Amplitude array of a StateVector4 or a bare (..., 4) array."""
    if isinstance(state, StateVector4):
        return state.b
    return np.asarray(state, dtype=complex)


def populations(state) -> np.ndarray:
    """Occupation probabilities |B_j|^2. Works row-wise on (N, 4) arrays."""
    b = _amplitudes(state)
    return b.real**2 + b.imag**2


def ghz_probability(state, tau: float = 0.0):
    """Overlap probability with (|000> + e^{i tau}|111>)/sqrt(2).

    Equals 0.5 * |B0 + exp(-i tau) B3|^2; at ``tau=0`` this is
    0.5 * |B0 + B3|^2. Accepts a single state or an (N, 4) array of rows.
    """
    b = _amplitudes(state)
    overlap = b[..., 0] + np.exp(-1j * tau) * b[..., 3]
    return 0.5 * (overlap.real**2 + overlap.imag**2)


def ghz_probability_max(state):
    """Largest GHZ overlap over tau, and the tau that reaches it.

    Returns ``(0.5 * (|B0| + |B3|)**2, arg(B3) - arg(B0))``. The phase is
    wrapped into (-pi, pi] and reported as 0 when either B0 or B3 vanishes.
    """
    b = _amplitudes(state)
    a0 = np.abs(b[..., 0])
    a3 = np.abs(b[..., 3])
    p_max = 0.5 * (a0 + a3) ** 2
    tau_star = np.angle(b[..., 3] * np.conj(b[..., 0]))
    tau_star = np.where((a0 == 0.0) | (a3 == 0.0), 0.0, tau_star)
    if np.ndim(p_max) == 0:
        return float(p_max), float(tau_star)
    return p_max, tau_star


@dataclass(frozen=True)
class GhzReport:
    p_ghz: float
    p_ghz_max: float
    tau_star: float
    # |B1|^2 + |B2|^2; separates real GHZ proximity from e.g. the bare vacuum,
    # which also gives p_ghz = 0.5
    residual_population: float


def ghz_report(state, tau: float = 0.0) -> GhzReport:
    b = _amplitudes(state)
    p_max, tau_star = ghz_probability_max(b)
    pops = populations(b)
    return GhzReport(
        p_ghz=float(ghz_probability(b, tau)),
        p_ghz_max=p_max,
        tau_star=tau_star,
        residual_population=float(pops[1] + pops[2]),
    )
