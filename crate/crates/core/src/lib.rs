//! Numerical functionals from the heat-semigroup analysis of BLO/BMO
//! function spaces: lower-oscillation and mean-oscillation norms, heat
//! oscillation defects, Hardy–Littlewood and signed-mean maximal operators,
//! A₁ weight constants (maximal and heat forms), the exponential A₁ probe,
//! the N(f) infimum functional, the Littlewood–Paley g-function, and
//! heat-equation regularity/oscillation checks — all evaluated at desk scale
//! on a curated family of closed-form test functions.

pub mod analytic;
pub mod error;
pub mod geometry;
pub mod gfunction;
pub mod grid;
pub mod heat;
pub mod maximal;
pub mod norms;
pub mod pde;
pub mod quadrature;
pub mod util;

pub use analytic::{neglog_blo_norm_oracle, neglog_interval_defect, AnalyticFunction, Classification};
pub use error::{Error, Result};
pub use geometry::{Ball, Cell, Point};
pub use gfunction::{
    g_blo_check, g_function, g_grids, gsquared_blo_check, truncated_g, GFirstPowerReport,
    GSquaredReport, GValue, SquareFunctionParams,
};
pub use grid::{
    default_radii, enumerate_balls, essinf_over_ball, mean_over_ball, sample, Domain, FieldRef,
    GridFunction, Provenance,
};
pub use heat::{
    apply_heat, apply_heat_grid, apply_tdt_heat, heat_kernel, time_derivative_kernel, HeatParams,
    HeatSource, QuadratureMode, TimeGrid,
};
pub use maximal::{
    a1_constant_heat, a1_constant_maximal, bennett_maximal, exp_a1_probe, hl_maximal,
    n_functional, A1Estimate, ExpA1Probe, NFunctionalResult, WeightFunction,
};
pub use norms::{
    ball_defect, blo_norm, bmo_norm, heat_blo_functional, heat_blo_functional_grid, heat_defect,
    perturbation_check, Mode, NormEstimate, PerturbationReport, Witness,
};
pub use pde::{
    comparison_chain_check, oscillation, regularity_defect, solve_heat, HeatSolutionSlice,
    PairCheckReport,
};
