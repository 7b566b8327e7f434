"""
The exciton ladder and its spectrum
===================================

Build the four-level Hamiltonian for the weakest and strongest resonant
drives, solve the characteristic quartic in radicals, and compare against
a generic eigensolver.
"""

import numpy as np

from ghzdots import SystemParams, build_hamiltonian, characteristic_coefficients, eigensystem, solve_quartic

np.set_printoptions(precision=5, suppress=True)

# %%
# Resonant drive, Omega = 0.1 rad/fs, hopping eta = 0.1 rad/fs.
params = SystemParams(eta=0.1, delta=0.0, omega_rabi=0.1)
h = build_hamiltonian(params)
print("H (rad/fs):")
print(h.elements.real)

# %%
# The quartic is written in the scaled variable mu = (E - H[1,1]) / (2 Omega).
shift, scale = h.elements[1, 1].real, 2 * params.omega_rabi
coeffs = characteristic_coefficients(h, shift, scale)
print("quartic coefficients r1..r4:", tuple(coeffs))   # (2, -1.5, -3.5, -0.4375)
mu = solve_quartic(coeffs)
print("scaled roots mu:", mu)
print("energies shift + scale*mu:", shift + scale * mu)
print("numpy eigvalsh:           ", np.linalg.eigvalsh(h.elements))

# %%
# Without drive the ladder is diagonal and doubly degenerate on resonance;
# the decomposition falls back to unscaled roots and keeps O unitary.
sd = eigensystem(build_hamiltonian(SystemParams(eta=0.1, omega_rabi=0.0)))
print("undriven energies:", sd.energies, "scaled form available:", sd.scaled)
print("|O|:")
print(np.abs(sd.vectors))
