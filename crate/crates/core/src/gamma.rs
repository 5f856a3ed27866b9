//! ln Γ, ln Γ₁ and exact hyperfactorials.
//!
//! Both logarithms are evaluated the same way: the argument is lifted above
//! [`SHIFT_THRESHOLD`] with the functional recurrence, then the asymptotic
//! expansion is summed with exact Bernoulli coefficients and truncated at
//! the tolerance or at its smallest term.

use num_bigint::BigUint;
use serde::Serialize;

use crate::constants::{EULER_GAMMA, LN_SQRT_2PI};
use crate::kernel::{bernoulli_f64, compensated_sum, sum_asymptotic, CompensatedSum};
use crate::{Error, PrecisionContext, Result, SeriesValue};

/// Smallest argument at which the asymptotic expansions are summed.
pub const SHIFT_THRESHOLD: f64 = 10.0;

/// Largest `n` accepted by [`hyperfactorial`].
pub const MAX_HYPERFACTORIAL_ARG: u32 = 1000;

/// Series are summed to this fraction of the requested tolerance; the
/// expansions at y ≥ 10 reach far below it for a few extra terms.
pub(crate) const SERIES_MARGIN: f64 = 1e-4;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GammaConstants {
    /// ln √(2π)
    pub l0: f64,
    /// Euler's constant C
    pub euler: f64,
    pub shift_threshold: f64,
}

impl Default for GammaConstants {
    fn default() -> Self {
        Self {
            l0: LN_SQRT_2PI,
            euler: EULER_GAMMA,
            shift_threshold: SHIFT_THRESHOLD,
        }
    }
}

fn check_positive(function: &'static str, x: f64) -> Result<()> {
    if x > 0.0 && x.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain {
            function,
            value: x,
            expected: "x > 0",
        })
    }
}

/// Number of unit shifts needed to bring `x` up to the threshold.
fn shift_count(x: f64) -> u32 {
    if x >= SHIFT_THRESHOLD {
        0
    } else {
        (SHIFT_THRESHOLD - x).ceil() as u32
    }
}

fn budget(what: &'static str, series: &SeriesValue, ctx: &PrecisionContext) -> Error {
    Error::Budget {
        what,
        achieved: series.error_bound,
        requested: ctx.abs_tol(),
    }
}

/// Σ B₂ₖ / (2k(2k−1) y^{2k−1}), k ≥ 1.
fn stirling_tail(y: f64, ctx: &PrecisionContext) -> SeriesValue {
    let inv = y.recip();
    let inv2 = inv * inv;
    let mut power = inv;
    let terms = (1usize..).map_while(move |k| {
        let b = bernoulli_f64(2 * k).ok()?;
        let two_k = (2 * k) as f64;
        let term = b / (two_k * (two_k - 1.0)) * power;
        power *= inv2;
        Some(term)
    });
    sum_asymptotic(terms, ctx)
}

/// −Σ B₂ₖ / ((2k−2)(2k−1)(2k) y^{2k−2}), k ≥ 2.
fn gamma1_tail(y: f64, ctx: &PrecisionContext) -> SeriesValue {
    let inv2 = (y * y).recip();
    let mut power = inv2;
    let terms = (2usize..).map_while(move |k| {
        let b = bernoulli_f64(2 * k).ok()?;
        let two_k = (2 * k) as f64;
        let term = -b / ((two_k - 2.0) * (two_k - 1.0) * two_k) * power;
        power *= inv2;
        Some(term)
    });
    sum_asymptotic(terms, ctx)
}

/// ln Γ(x) for x > 0.
pub fn log_gamma(x: f64, ctx: &PrecisionContext) -> Result<SeriesValue> {
    check_positive("log_gamma", x)?;
    let n = shift_count(x);
    let y = x + f64::from(n);
    // ln Γ(x) = ln Γ(y) − ln Π_{k<n} (x + k)
    let product: f64 = (0..n).map(|k| x + f64::from(k)).product();
    let tail = stirling_tail(y, &ctx.scaled(SERIES_MARGIN));
    if !tail.converged {
        return Err(budget("log_gamma asymptotic series", &tail, ctx));
    }
    let parts = [
        (y - 0.5) * y.ln(),
        -y,
        LN_SQRT_2PI,
        tail.value,
        -product.ln(),
    ];
    let scale: f64 = parts.iter().map(|p| p.abs()).sum();
    Ok(SeriesValue {
        value: compensated_sum(parts),
        error_bound: tail.error_bound,
        rounding: 4.0 * f64::EPSILON * scale + tail.rounding,
        terms_used: tail.terms_used,
        converged: true,
    })
}

/// Ψ(1) = −C.
pub fn digamma_at_1() -> f64 {
    -EULER_GAMMA
}

/// ln Γ₁(x) for x > 0, with the expansion constant `l1` supplied by the
/// caller (see [`crate::constants::l1_via_zeta_m1`]).
///
/// Uses ln Γ₁(t+1) = t ln t + ln Γ₁(t) to lift the argument, then the
/// expansion of ln Γ₁(y+1) = ln(1¹·2²···yʸ) at large y.
pub fn log_gamma1(x: f64, l1: f64, ctx: &PrecisionContext) -> Result<SeriesValue> {
    check_positive("log_gamma1", x)?;
    let n = shift_count(x);
    let y = x + f64::from(n);
    let shift: CompensatedSum = (0..=n)
        .map(|k| {
            let t = x + f64::from(k);
            t * t.ln()
        })
        .collect();
    let tail = gamma1_tail(y, &ctx.scaled(SERIES_MARGIN));
    if !tail.converged {
        return Err(budget("log_gamma1 asymptotic series", &tail, ctx));
    }
    let mut total: CompensatedSum = [
        l1,
        (0.5 * y * (y + 1.0) + 1.0 / 12.0) * y.ln(),
        -0.25 * y * y,
        tail.value,
    ]
    .into_iter()
    .collect();
    total.add(-shift.sum());
    let scale = total.abs_sum() + shift.abs_sum();
    Ok(SeriesValue {
        value: total.sum(),
        error_bound: tail.error_bound,
        rounding: 4.0 * f64::EPSILON * scale + tail.rounding,
        terms_used: tail.terms_used,
        converged: true,
    })
}

/// 1¹·2²·3³···nⁿ, exactly. `hyperfactorial(0)` is the empty product.
pub fn hyperfactorial(n: u32) -> Result<BigUint> {
    if n > MAX_HYPERFACTORIAL_ARG {
        return Err(Error::Capacity {
            what: "hyperfactorial argument",
            limit: MAX_HYPERFACTORIAL_ARG as usize,
        });
    }
    Ok((1..=n).fold(BigUint::from(1u32), |acc, k| acc * BigUint::from(k).pow(k)))
}
