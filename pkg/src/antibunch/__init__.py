"""Photon statistics of small dipole-interacting emitter ensembles.

Quantum-jump Monte Carlo trajectories for one and two driven two-level
atoms with collective decay, deterministic Lindblad oracles, g2(tau)
estimation from photon timestamps, and the electromagnetic parameter
layer for emitters near a dielectric nanofiber tip.
"""

__version__ = "0.1.0"

from .analytic import analytic_pee, doubly_excited_amplitude, single_excitation_product
from .collective import DecayMatrix, JumpBasis, decompose, jump_probabilities
from .correlations import (
    CorrelationEstimate,
    MixtureSpec,
    brightness,
    concat_g2,
    estimate_g2,
    g2_zero_fixed_n,
    mixture_g2_zero,
    poisson_weight,
    rate_weighted_average,
)
from .master_equation import (
    InvariantViolation,
    g2_regression,
    lindblad_integrate,
    steady_state,
)
from .montecarlo import (
    GROUND_1,
    GROUND_2,
    SimConfig,
    StepSizeError,
    Trajectory,
    qmc_excited_populations,
    qmc_trajectory,
    trajectory_seeds,
)
from .nanotip import (
    AtomSite,
    PairGeometry,
    TipGeometry,
    dipole_orientation,
    local_field,
    pair_coefficients,
    parameter_map,
    polarizability,
    purcell_rate,
    rabi_at,
    realize_parameters,
    sample_sites,
)
from .operators import (
    PhysicalParams,
    build_effective_hamiltonian,
    build_pair_hamiltonian,
    build_single_hamiltonian,
    matrix_exponential,
    propagate_no_jump,
)

__all__ = [name for name in dir() if not name.startswith("_")]
