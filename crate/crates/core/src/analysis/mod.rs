//! Post-processing of solver and matching results: mismatch figures,
//! VSWR bandwidth, pattern statistics and jamming range.

mod bandwidth;
mod pattern;
mod range;
mod reflection;

pub use bandwidth::{bandwidth, Band, DEFAULT_VSWR_LIMIT};
pub use pattern::{pattern_stats, PatternSample, PatternStats, PatternUnit, RadiationPatternData, StatPoint};
pub use range::{
    free_space_path_loss_db, jamming_range, range_ratio, RangeEstimate, RangeModel, HELIX_GAIN_DBI, HELIX_RANGE_M,
};
pub use reflection::{reflection_coefficient, return_loss_db, vswr, vswr_from_magnitude, Reflection, ReturnLoss};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AnalysisError {
    #[error("reference impedance must be positive real, got {0} ohm")]
    InvalidReference(f64),
    #[error("load plus reference impedance is zero")]
    ZeroDenominator,
    #[error("|gamma| = {0} is not below 1: load is not passive")]
    NonPassive(f64),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("invalid pattern: {0}")]
    Pattern(String),
    #[error("path-loss exponent {0} outside [1.6, 6]")]
    PathLossExponent(f64),
}
