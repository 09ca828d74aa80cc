//! Exact arithmetic: scalars in Q[Π, Π⁻¹] and truncated q-series over them.

mod json;
mod qseries;
mod scalar;

pub use json::{parse_rational, rational_string};
pub use qseries::{ceil_div, sigma, QSeries};
pub use scalar::{int, rat, Scalar};
