//! Desk-scale cancellation experiments: the Linnik/Kuznetsov partial sums
//! on SL(2), absolute partial sums of the three Kloosterman zeta
//! functions, and the smoothed long-element sum with growth-exponent
//! fitting.

mod linnik;
mod series;
mod smoothed;
mod window;
mod zeta;

pub use linnik::{linnik_sum, LinnikSeries};
pub use series::{fit_growth, FitResult, GrowthRecord, GrowthSeries};
pub use smoothed::{smoothed_series, smoothed_wl_sum, support_pairs, SmoothedSum};
pub use window::SmoothWindow;
pub use zeta::zeta_partial_sum;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ExperimentError {
    #[error("growth fit needs at least 4 positive records, have {0}")]
    FitTooFewPoints(usize),
    #[error("invalid parameter: {0}")]
    InvalidParam(String),
    #[error(transparent)]
    Ksum(#[from] crate::ksums::KsumError),
}
