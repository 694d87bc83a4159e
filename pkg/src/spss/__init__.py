"""Steady states of the repulsive Schrodinger-Poisson model with a local
power correction: radial constrained minimization, variational identity
checks, sharp-constant estimation, and the existence phase diagram."""

from .grid import (
    RadialField,
    RadialGrid,
    integrate_volume,
    load_field_csv,
    make_grid,
    resample,
    save_field_csv,
)
from .functionals import (
    EnergyBreakdown,
    ModelParams,
    coulomb_energy,
    coulomb_potential,
    energy,
    g_from_breakdown,
    g_functional,
    gaussian_field,
    kinetic_integral,
    mass,
    multi_bump,
    power_integral,
    rescale,
    scale_to_mass,
)
from .minimizer import (
    CriticalMassIdentities,
    MinimizerReport,
    SolveOptions,
    SolveStatus,
    critical_mass_identities,
    decay_check,
    l2_gradient,
    lagrange_multiplier,
    minimize,
    virial_residual,
)
from .constants import (
    ConstantsReport,
    constants_report,
    critical_mass,
    estimate_gn_constant,
    estimate_interp_constant,
    v_critical,
)
from .phase import (
    NumericClass,
    PhasePoint,
    PredictedClass,
    classify_point,
    cubic_scaling_check,
    j_scaling_check,
    predict,
    subadditivity_check,
    sweep,
    verify_suite,
)

__version__ = "0.1.0"
