"""Pseudo-spectral simulator and Gevrey-regularity toolkit for a weakly
dissipative Camassa-Holm equation on the torus."""

from .analyticity import (
    CalibrationError,
    ContinuityReport,
    ExperimentError,
    InsufficientDecayError,
    LifespanBounds,
    RadiusEstimate,
    RadiusODEState,
    RadiusRecord,
    WindowError,
    calibrate_radius_constant,
    continuity_experiment,
    delta_of_tau,
    delta_of_tau_in_range,
    delta_of_tau_window,
    ea_norm,
    estimate_radius,
    lifespan_bounds,
    radius_ode_advance,
    radius_ode_init,
    track_radius,
)
from .integrate import (
    BlowUpError,
    PicardResult,
    SolverConfig,
    Trajectory,
    integrate,
    picard_iterate,
    step_rk4,
)
from .model import (
    ModelParams,
    formulation_residual,
    functional_H,
    h_of_u,
    lipschitz_ratio,
    nonlocal_source,
    rhs,
    small_data_check,
)
from .spectral import (
    GevreyIndex,
    GridMismatchError,
    ModeOverflowError,
    NonFiniteError,
    NormOverflowError,
    SpectralField,
    SymmetryError,
    TorusGrid,
    derivative,
    field_from_modes,
    gevrey_multiplier,
    gevrey_norm,
    gevrey_norm_bar,
    helmholtz,
    helmholtz_inv,
    product,
    product_direct,
    random_field,
    sobolev_norm,
    to_physical,
    to_spectral,
)
from .verify import (
    EmpiricalConstants,
    VerificationReport,
    compute_pins,
    load_pins,
    run_all_suites,
    save_pins,
    verify_H_monotone,
    verify_algebra,
    verify_commutator_estimate,
    verify_derivative_bound,
    verify_ea_integral,
    verify_embedding,
    verify_interpolation,
    verify_norm_equivalence,
    verify_symbol_lemma,
)

__version__ = "0.1.0"

__all__ = [
    "BlowUpError",
    "CalibrationError",
    "ContinuityReport",
    "EmpiricalConstants",
    "ExperimentError",
    "GevreyIndex",
    "GridMismatchError",
    "InsufficientDecayError",
    "LifespanBounds",
    "ModeOverflowError",
    "ModelParams",
    "NonFiniteError",
    "NormOverflowError",
    "PicardResult",
    "RadiusEstimate",
    "RadiusODEState",
    "RadiusRecord",
    "SolverConfig",
    "SpectralField",
    "SymmetryError",
    "TorusGrid",
    "Trajectory",
    "VerificationReport",
    "WindowError",
    "calibrate_radius_constant",
    "compute_pins",
    "continuity_experiment",
    "delta_of_tau",
    "delta_of_tau_in_range",
    "delta_of_tau_window",
    "derivative",
    "ea_norm",
    "estimate_radius",
    "field_from_modes",
    "formulation_residual",
    "functional_H",
    "gevrey_multiplier",
    "gevrey_norm",
    "gevrey_norm_bar",
    "h_of_u",
    "helmholtz",
    "helmholtz_inv",
    "integrate",
    "lifespan_bounds",
    "lipschitz_ratio",
    "load_pins",
    "nonlocal_source",
    "picard_iterate",
    "product",
    "product_direct",
    "radius_ode_advance",
    "radius_ode_init",
    "random_field",
    "rhs",
    "run_all_suites",
    "save_pins",
    "sobolev_norm",
    "small_data_check",
    "step_rk4",
    "to_physical",
    "to_spectral",
    "track_radius",
    "verify_H_monotone",
    "verify_algebra",
    "verify_commutator_estimate",
    "verify_derivative_bound",
    "verify_ea_integral",
    "verify_embedding",
    "verify_interpolation",
    "verify_norm_equivalence",
    "verify_symbol_lemma",
    "__version__",
]
