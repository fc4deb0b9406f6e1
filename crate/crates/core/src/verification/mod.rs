//! Sampled property checks for piecewise continuous retractions and the
//! extension operator, with JSON-serializable reports.
//!
//! Every check visits its samples in a fixed order and evaluates them in
//! parallel, so reports depend only on the seed.

mod checks;
pub mod corrupt;
mod demo;
mod operator;
mod pairs;
mod report;
mod suite;

pub use checks::{
    check_cover, check_norm_identity_open_ball, check_piece_continuity, check_retraction_identity, lipschitz_oracle,
    MONOTONE_SAMPLES, ORACLE_DELTA,
};
pub use demo::{borsuk_discontinuity_demo, DemoRow, MAX_DEPTH};
pub use operator::{
    check_composition_continuity, check_operator_properties, check_operator_properties_with, OperatorUnderTest,
    LINEARITY_COEFFICIENTS,
};
pub use pairs::MIN_PAIR_DISTANCE;
pub use report::{CheckReport, CheckStatus, MAX_WITNESS_POINTS};
pub use suite::{run_suite, SuiteOptions};
