//! Shared numeric substrate: exact Bernoulli numbers, compensated
//! summation, and the precision context every evaluator consumes.

mod bernoulli;
mod precision;
mod series;
mod summation;

pub use bernoulli::{bernoulli, bernoulli_f64, BernoulliTable, MAX_BERNOULLI_INDEX};
pub use precision::PrecisionContext;
pub use series::{sum_asymptotic, SeriesValue};
pub use summation::{compensated_sum, CompensatedSum};
