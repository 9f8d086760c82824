//! Release-time decision support for software under test.
//!
//! The library models fault detection with an exponential (Goel–Okumoto type)
//! reliability-growth process, prices a release at time `T` as
//! `setup + removal-during-testing + testing effort + warranty repairs`, and
//! expresses "total cost about C_B but no more than C*" and "reliability at
//! least R₀ but no less than R*" as linear fuzzy goals. The solver picks the
//! release time that maximizes the smaller of the two satisfaction degrees;
//! when the goals cannot overlap it falls back to a weighted goal-programming
//! compromise that minimizes the total shortfall.
//!
//! Model parameters can be given directly or estimated from a failure history
//! by maximum likelihood (or least squares on cumulative counts). The `reltime`
//! binary wraps all of this behind `fit`, `solve`, `sweep`, and `report`
//! commands driven by a flat key-value config file.

pub mod cli;
pub mod config;
pub mod cost;
pub mod error;
pub mod fuzzy;
pub mod report;
mod scalar;
pub mod solver;
pub mod srgm;

pub use config::{load_config, ModelSource, RunConfig};
pub use cost::{
    testing_effort_cost, testing_removal_cost, total_cost, warranty_cost, CostParams,
    TruncatedExponential,
};
pub use error::{Error, Result};
pub use fuzzy::{intersect, unite, FuzzyTargets, RampDirection, RampMembership};
pub use report::{default_sweep_window, sweep, sweep_csv, SweepRow};
pub use solver::{
    decide, solve_goal_program, solve_maximin, DecisionStatus, Deviations, InfeasibilityReport,
    ReleaseDecision, ReleaseProblem, SolveOutcome, SolveRun, SolverOptions,
};
pub use srgm::{
    fit, fit_with, FailureDataset, FitMethod, FitOptions, FitOutcome, GoelOkumotoModel,
};
