use serde::Serialize;

use super::{CompensatedSum, PrecisionContext};

/// A computed value together with its error accounting.
///
/// `error_bound` covers the method error (series truncation, quadrature
/// discretization) and is what the context's `abs_tol` is compared against.
/// `rounding` is a separate estimate of accumulated binary64 rounding, used
/// when propagating tolerances into identity checks.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SeriesValue {
    pub value: f64,
    pub error_bound: f64,
    pub rounding: f64,
    pub terms_used: usize,
    pub converged: bool,
}

impl SeriesValue {
    /// A value known to full binary64 precision.
    pub fn exact(value: f64) -> Self {
        Self {
            value,
            error_bound: 0.0,
            rounding: f64::EPSILON * value.abs(),
            terms_used: 0,
            converged: true,
        }
    }

    /// Total uncertainty: method error plus rounding estimate.
    pub fn uncertainty(&self) -> f64 {
        self.error_bound + self.rounding
    }
}

/// Sums an asymptotic (possibly divergent) series term by term.
///
/// Summation stops at the first term that is below `ctx.abs_tol`, or as
/// soon as term magnitudes stop decreasing, so the series is never continued
/// past its smallest term. The first omitted term is reported as the error
/// bound. A generator that runs dry is treated as non-convergent, with the
/// last term standing in for the bound.
pub fn sum_asymptotic<I>(terms: I, ctx: &PrecisionContext) -> SeriesValue
where
    I: IntoIterator<Item = f64>,
{
    let mut acc = CompensatedSum::new();
    let mut prev = f64::INFINITY;
    let mut used = 0usize;
    let mut iter = terms.into_iter();
    let (bound, exhausted) = loop {
        let Some(term) = iter.next() else {
            break (if used == 0 { 0.0 } else { prev }, true);
        };
        let mag = term.abs();
        if mag <= ctx.abs_tol() || mag >= prev || used >= ctx.max_series_terms() {
            break (mag, false);
        }
        acc.add(term);
        used += 1;
        prev = mag;
    };
    SeriesValue {
        value: acc.sum(),
        error_bound: bound,
        rounding: 2.0 * f64::EPSILON * acc.abs_sum(),
        terms_used: used,
        converged: !exhausted && bound <= ctx.abs_tol(),
    }
}
