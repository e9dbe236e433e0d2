//! Coarse bookkeeping: cutoff sums, curve-graph estimates, twisting, the
//! wedge spectrum, thick-part constants and the quasi-isometry experiments.

mod constants;
mod experiments;
mod formula;
mod hempel;
mod pvt;
mod qi;
mod twisting;

use thiserror::Error;

use crate::disc::DiscError;
use crate::flat::FlatError;
use crate::veech::VeechError;

pub use constants::{choose_epsilon, compute_w, EpsilonChoice, Grid, WReport};
pub use experiments::{sample_thick_pairs, systole_qi_experiment, undistortion_experiment};
pub use formula::{distance_formula_rhs, FormulaRhs, WindingTerm};
pub use hempel::{hempel_estimate, hempel_term, HempelEstimate};
pub use pvt::{pvt_spectrum, SpectrumReport};
pub use qi::{fit_k, fit_k_upper, spearman, QIReport, QISample, RadiusRow};
pub use twisting::{twisting_interval, TwistInterval};

/// Default cutoff threshold for winding terms.
pub const DEFAULT_CUTOFF: f64 = 2.0;

/// Default enumeration radius for cusp holonomies.
pub const DEFAULT_ENUMERATION_RADIUS: i64 = 12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CoarseError {
    #[error("no parabolic holonomies to enumerate")]
    EmptyParabolics,
    #[error("grid has no sample points")]
    EmptyGrid,
    #[error("family has no cusp classes")]
    NoParabolics,
    #[error("basepoint lies strictly inside a horodisc of the family")]
    BasepointInHoroball,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error(transparent)]
    Disc(#[from] DiscError),
    #[error(transparent)]
    Veech(#[from] VeechError),
    #[error(transparent)]
    Flat(#[from] FlatError),
}

/// `[t]_c`: `t` if `t ≥ c`, else 0.
pub fn cutoff(t: f64, c: f64) -> f64 {
    if t >= c {
        t
    } else {
        0.0
    }
}
