"""Numerically exact ground states of few repulsive bosons in 1D traps."""

__version__ = "0.1.0"

from .units import PhysicalParams, ResonanceError, coupling_strength_1d
from .grid import Grid, OrbitalBasis, TrapSpec, build_potential, make_grid, solve_1p
from .interaction import (
    GridResolutionError,
    InteractionSpec,
    TwoBodyTensor,
    delta_sigma,
    g_of_R,
    two_body_tensor,
)
from .fock import (
    FockBasis,
    HamiltonianOperator,
    ManyBodyState,
    enumerate_basis,
    hamiltonian_action,
    one_body_expectations,
    two_body_expectations,
)
from .solver import (
    SolveReport,
    SolverError,
    convergence_sweep,
    ground_state_krylov,
    relax_imaginary_time,
)
from .observables import (
    DensityProfile,
    OneBodyDensityMatrix,
    count_humps,
    displacement,
    energy_slope_at_zero,
    one_body_density,
    tg_oracle,
    two_body_density,
)
