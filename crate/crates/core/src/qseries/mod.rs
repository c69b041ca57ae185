//! Truncated q-series, v-coefficients and divisor-sum series.

pub mod divisor;
pub mod series;
pub mod vlaurent;

pub use divisor::{divisor_series, sigma_k};
pub use series::QSeries;
pub use vlaurent::{VFrac, VLaurent};
