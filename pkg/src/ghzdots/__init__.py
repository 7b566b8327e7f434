"""GHZ-state generation in three Foerster-coupled quantum dots.

Four-level exciton-ladder model, closed-form (quartic) propagation, an
independent RK4 reference integrator, and GHZ overlap observables.
"""

__version__ = "0.1.0"

from .model import Hamiltonian4, SystemParams, build_hamiltonian
from .observables import (
    GhzReport,
    StateVector4,
    ghz_probability,
    ghz_probability_max,
    ghz_report,
    populations,
)
from .oracle import IntegratorConfig, StepUnderflow, integrate_schrodinger
from .spectral import (
    ComplexRootResidual,
    DegenerateScale,
    QuarticCoefficients,
    SpectralDecomposition,
    characteristic_coefficients,
    eigensystem,
    evolve,
    propagate_closed_form,
    solve_quartic,
)
