"""Closed-form propagation through the characteristic quartic of H.

The four eigenvalues are the roots of det(H - E) = 0. Written for the scaled
variable mu = (E - xi_11) / |xi_21|, with xi_11 = H[1, 1] the single-exciton
energy and |xi_21| = 2 Omega the single-to-biexciton coupling, the quartic is
solved in radicals (Ferrari's reduction to a resolvent cubic, Cardano for the
cubic). Amplitudes then evolve as

    B_j(t) = exp(-i xi_11 t) * sum_k lambda_jk exp(-i |xi_21| mu_k t),

with lambda_jk = O_jk c_k and c = O^{-1} B(0) for the eigenvector matrix O.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .model import Hamiltonian4
from .observables import StateVector4

SCALE_TOL = 1e-12
IMAG_TOL = 1e-9
DEGENERACY_RTOL = 1e-9
# radicands within this fraction of their terms' magnitude are rounding noise
RADICAND_RTOL = 1e-12

_EPS = np.finfo(float).eps
_CUBE_ROOTS_OF_UNITY = (1.0, complex(-0.5, math.sqrt(3) / 2), complex(-0.5, -math.sqrt(3) / 2))


class DegenerateScale(ValueError):
    """The requested eigenvalue scale is zero (no laser coupling)."""


class ComplexRootResidual(ArithmeticError):
    """A quartic root kept a significant imaginary part; input was not Hermitian-derived."""


@dataclass(frozen=True)
class QuarticCoefficients:
    """mu**4 + r1*mu**3 + r2*mu**2 + r3*mu + r4 = 0."""

    r1: float
    r2: float
    r3: float
    r4: float

    def __post_init__(self):
        for name in ("r1", "r2", "r3", "r4"):
            value = float(getattr(self, name))
            if not math.isfinite(value):
                raise ValueError(f"{name} must be finite")
            object.__setattr__(self, name, value)

    def __iter__(self):
        return iter((self.r1, self.r2, self.r3, self.r4))

    def __call__(self, mu):
        return (((mu + self.r1) * mu + self.r2) * mu + self.r3) * mu + self.r4

    def derivative(self, mu):
        return ((4 * mu + 3 * self.r1) * mu + 2 * self.r2) * mu + self.r3


def characteristic_coefficients(h, shift: float = 0.0, scale: float = 1.0) -> QuarticCoefficients:
    """Monic coefficients of det((H - shift) / scale - mu) = 0.

    Faddeev-LeVerrier recursion; valid for any 4x4 matrix. Imaginary parts,
    which vanish for Hermitian input, are discarded.
    """
    if not scale > SCALE_TOL:
        raise DegenerateScale(f"scale {scale!r} too small; use shift=0, scale=1")
    a = (np.asarray(h, dtype=complex) - shift * np.eye(4)) / scale
    m = np.zeros((4, 4), dtype=complex)
    coeffs = [1.0 + 0j]
    for k in range(1, 5):
        m = a @ m + coeffs[-1] * np.eye(4)
        coeffs.append(-np.trace(a @ m) / k)
    # det(mu - A) == det(A - mu) for even dimension
    return QuarticCoefficients(*(c.real for c in coeffs[1:]))


def _resolvent_root(p: float, q: float, r: float) -> float:
    """Largest root of u**3 + 2p u**2 + (p**2 - 4r) u - q**2 = 0.

    u is the square of a pair sum of the depressed quartic's roots, so for
    four real roots all three resolvent roots are real and non-negative.
    Cardano in complex arithmetic covers the three-real-root case; each
    branch's real part is taken and the largest is Newton-polished.
    """
    delta0 = p * p + 12.0 * r
    delta1 = 2.0 * p**3 - 72.0 * p * r + 27.0 * q * q
    disc = cmath.sqrt(delta1 * delta1 - 4.0 * delta0**3)
    big = (delta1 + disc) / 2.0
    if abs(big) < abs((delta1 - disc) / 2.0):
        big = (delta1 - disc) / 2.0
    base = big ** (1.0 / 3.0) if big != 0 else 0j

    candidates = []
    for w in _CUBE_ROOTS_OF_UNITY:
        cr = base * w
        u = (-2.0 * p + cr + (delta0 / cr if cr != 0 else 0.0)) / 3.0
        candidates.append(u.real)
    u = max(candidates)

    for _ in range(4):
        f = ((u + 2.0 * p) * u + (p * p - 4.0 * r)) * u - q * q
        df = (3.0 * u + 4.0 * p) * u + (p * p - 4.0 * r)
        if df == 0.0:
            break
        step = f / df
        if not abs(step) < abs(u) + 1.0:
            break
        u -= step
    return max(u, 0.0)


def _real_sqrt(radicand: float, magnitude: float) -> tuple[float, float]:
    """sqrt of a radicand that should be non-negative.

    Returns ``(root, imag)``. Radicands within rounding of zero, of either
    sign, give an exact zero root; larger negative ones are clamped to zero
    and ``imag`` reports sqrt(-radicand).
    """
    if abs(radicand) <= RADICAND_RTOL * magnitude:
        return 0.0, 0.0
    if radicand > 0.0:
        return math.sqrt(radicand), 0.0
    return 0.0, math.sqrt(-radicand)


def _depressed_roots(p: float, q: float, r: float) -> tuple[list[tuple[float, float]], float]:
    """Roots of y**4 + p y**2 + q y + r (coefficients of order 1).

    Returns the roots as (y_a, y_b) pairs, one pair per quadratic factor,
    and the largest imaginary part that was discarded.
    """
    u = _resolvent_root(p, q, r)
    if u <= 64.0 * _EPS * (abs(p) + 1.0):
        # no odd part: biquadratic in y**2
        inner, imag = _real_sqrt(p * p - 4.0 * r, p * p + 4.0 * abs(r))
        pairs = []
        for y2 in ((-p + inner) / 2.0, (-p - inner) / 2.0):
            y, im = _real_sqrt(y2, abs(p) + inner)
            imag = max(imag, im)
            pairs.append((y, -y))
        if pairs[0][0] == 0.0 and pairs[1][0] == 0.0:
            pairs = [(0.0, 0.0), (0.0, 0.0)]
        else:
            # pair equal roots, not +/-y, so clusters stay together
            ys = sorted(y for pair in pairs for y in pair)
            pairs = [(ys[0], ys[1]), (ys[2], ys[3])]
        return pairs, imag
    s = math.sqrt(u)  # a root-pair sum; factors are y**2 -/+ s*y + ...
    odd = 2.0 * q / s
    mag = u + 2.0 * abs(p) + abs(odd)
    root1, im1 = _real_sqrt(-u - 2.0 * p + odd, mag)
    root2, im2 = _real_sqrt(-u - 2.0 * p - odd, mag)
    pairs = [(-s / 2 + root1 / 2, -s / 2 - root1 / 2), (s / 2 + root2 / 2, s / 2 - root2 / 2)]
    return pairs, 0.5 * max(im1, im2)


def _polish(c: QuarticCoefficients, x: float) -> float:
    fx = c(x)
    for _ in range(3):
        dfx = c.derivative(x)
        if dfx == 0.0 or fx == 0.0:
            break
        trial = x - fx / dfx
        ftrial = c(trial)
        if not abs(ftrial) < abs(fx):
            break
        x, fx = trial, ftrial
    return x


def _split_pair(c: QuarticCoefficients, x0: float) -> tuple[float, float]:
    """Resolve a collapsed root pair with a local quadratic model.

    The pair stays exactly double unless p(x0) rises above the rounding
    floor of evaluating the polynomial there.
    """
    r1, r2, r3, r4 = c
    a = abs(x0)
    noise = 16 * _EPS * (a**4 + abs(r1) * a**3 + abs(r2) * a**2 + abs(r3) * a + abs(r4))
    f = c(x0)
    if abs(f) <= noise:
        return x0, x0
    df = c.derivative(x0)
    d2f = (12 * x0 + 6 * r1) * x0 + 2 * r2
    if d2f == 0.0:
        return x0, x0
    disc = df * df - 2.0 * f * d2f
    if disc <= 0.0:
        x = x0 - df / d2f
        return x, x
    w = math.sqrt(disc)
    return _polish(c, x0 + (-df + w) / d2f), _polish(c, x0 + (-df - w) / d2f)


def solve_quartic(c: QuarticCoefficients) -> np.ndarray:
    """Four real roots of the monic quartic, sorted ascending.

    Substitutes mu = y - r1/4 to remove the cubic term, rescales y so the
    depressed coefficients are O(1), factors into two quadratics through the
    resolvent cubic, then applies a guarded Newton polish on the original
    polynomial. Raises ComplexRootResidual when a root pair is genuinely
    complex (imaginary part above 1e-9 in the caller's units).
    """
    r1, r2, r3, r4 = c
    offset = -r1 / 4.0
    p = r2 - 3.0 * r1 * r1 / 8.0
    q = r3 - r1 * r2 / 2.0 + r1**3 / 8.0
    r = r4 - r1 * r3 / 4.0 + r1 * r1 * r2 / 16.0 - 3.0 * r1**4 / 256.0

    size = max(math.sqrt(abs(p)), abs(q) ** (1 / 3), abs(r) ** 0.25)
    if size == 0.0:
        return np.full(4, offset)
    pairs, imag = _depressed_roots(p / size**2, q / size**3, r / size**4)
    if imag * size > IMAG_TOL:
        raise ComplexRootResidual(f"root keeps imaginary part {imag * size:.3e}")

    roots = []
    for ya, yb in pairs:
        if ya == yb:
            roots += _split_pair(c, offset + size * ya)
        else:
            roots += [_polish(c, offset + size * ya), _polish(c, offset + size * yb)]
    return np.array(sorted(roots))


@dataclass(frozen=True)
class SpectralDecomposition:
    """Eigen-structure of one Hamiltonian plus mode coefficients for one start state.

    ``mu`` holds the scaled quartic roots and ``energies = shift + scale * mu``
    the eigenvalues in rad/fs. With no laser coupling the scaled form does
    not exist and ``shift = 0``, ``scale = 1``, ``scaled = False``.
    Column k of ``vectors`` is the eigenvector for ``energies[k]``.
    """

    mu: np.ndarray
    energies: np.ndarray
    vectors: np.ndarray
    lambda_coeffs: np.ndarray
    shift: float
    scale: float
    scaled: bool
    coefficients: QuarticCoefficients

    def mode_weights(self, b0) -> np.ndarray:
        """c = O^{-1} B(0), from a linear solve."""
        return np.linalg.solve(self.vectors, np.asarray(b0, dtype=complex))

    def with_initial(self, b0) -> "SpectralDecomposition":
        lam = self.vectors * self.mode_weights(b0)[None, :]
        return SpectralDecomposition(
            self.mu, self.energies, self.vectors, lam,
            self.shift, self.scale, self.scaled, self.coefficients,
        )


def _null_space(h: np.ndarray, energy: float, dim: int) -> np.ndarray:
    _, _, vh = np.linalg.svd(h - energy * np.eye(4))
    return vh[4 - dim:].conj().T


def _fix_phases(vectors: np.ndarray) -> np.ndarray:
    out = vectors.copy()
    for k in range(out.shape[1]):
        col = out[:, k]
        lead = col[np.argmax(np.abs(col) > 1e-12)]
        out[:, k] = col * (abs(lead) / lead)
    return out


def eigensystem(h, initial=None) -> SpectralDecomposition:
    """Eigenvalues from the quartic, eigenvectors from null spaces.

    Roots closer than 1e-9 of the spectral width are treated as one
    degenerate block; its energy is the block mean and its eigenvectors an
    orthonormal basis of the joint null space. A final QR pass keeps O
    unitary when nearby but distinct roots produced slightly skewed vectors.
    ``initial`` (default: vacuum) sets the mode coefficients.
    """
    hm = np.asarray(h, dtype=complex)
    coupling = abs(hm[2, 1])
    scaled = coupling > SCALE_TOL
    shift, scale = (hm[1, 1].real, coupling) if scaled else (0.0, 1.0)
    coeffs = characteristic_coefficients(hm, shift, scale)
    mu = solve_quartic(coeffs)
    energies = shift + scale * mu

    width = energies[-1] - energies[0]
    blocks = [[0]]
    for k in range(1, 4):
        if energies[k] - energies[k - 1] <= DEGENERACY_RTOL * width:
            blocks[-1].append(k)
        else:
            blocks.append([k])

    columns = []
    for block in blocks:
        if len(block) > 1:
            mean = energies[block].mean()
            energies[block] = mean
            mu[block] = (mean - shift) / scale
        columns.append(_null_space(hm, energies[block[0]], len(block)))
    vectors, _ = np.linalg.qr(np.hstack(columns))
    vectors = _fix_phases(vectors)

    b0 = StateVector4.basis(0) if initial is None else initial
    c = np.linalg.solve(vectors, np.asarray(b0, dtype=complex))
    return SpectralDecomposition(
        mu=mu,
        energies=energies,
        vectors=vectors,
        lambda_coeffs=vectors * c[None, :],
        shift=float(shift),
        scale=float(scale),
        scaled=bool(scaled),
        coefficients=coeffs,
    )


def evolve(sd: SpectralDecomposition, b0, times) -> np.ndarray:
    """Amplitudes at every time in ``times`` as an (N, 4) complex array."""
    t = np.atleast_1d(np.asarray(times, dtype=float))
    c = sd.mode_weights(b0)
    phases = np.exp(-1j * np.outer(t, sd.energies))
    return (phases * c[None, :]) @ sd.vectors.T


def propagate_closed_form(sd: SpectralDecomposition, b0, t: float) -> StateVector4:
    return StateVector4(evolve(sd, b0, [t])[0])
