"""Thermal pairwise entanglement in open alternating XY spin-1/2 chains."""

__version__ = "0.1.0"

from .correlator import (
    GreensMatrix,
    TwoSpinState,
    alpha33_closed_form,
    fermi_factor,
    greens_matrix,
    homogeneous_alphas,
    reduced_density_matrix,
)
from .entanglement import ConcurrenceResult, concurrence_general, concurrence_xstate, spin_flip
from .exceptions import NumericalError, PairNotSupported
from .spectrum import (
    ChainSpec,
    Spectrum,
    alternating_aux,
    analytic_spectrum,
    build_one_particle_matrix,
    homogeneous_spectrum,
    numeric_spectrum,
)
