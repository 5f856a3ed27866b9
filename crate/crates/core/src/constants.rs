//! Mathematical constants: L₀, Euler's C, L₁ = ln A by three routes and the
//! Glaisher–Kinkelin constant A by four.

use std::f64::consts::{LN_2, PI};

use serde::Serialize;

use crate::gamma::{log_gamma, SERIES_MARGIN};
use crate::kernel::{bernoulli_f64, sum_asymptotic, CompensatedSum};
use crate::quadrature::try_integrate;
use crate::zeta::{zeta_prime, zeta_prime_em};
use crate::{Error, IdentityReport, PrecisionContext, Result, SeriesValue};

/// L₀ = ln √(2π).
pub const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_741_780_329_736_405_617_639_9;

/// Euler–Mascheroni constant C.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_860_606_512_090_082_402_431_0;

pub const LN_2PI: f64 = 2.0 * LN_SQRT_2PI;
pub const LN_PI: f64 = 1.144_729_885_849_400_174_143_427_351_353_058_711_6;

/// Printed reference values.
pub mod printed {
    pub const L1: f64 = 0.248754477;
    pub const GLAISHER: f64 = 1.2824271291;
    pub const ZETA3: f64 = 1.202056903159;
    pub const ZETA_PRIME_2: f64 = -0.93754;
    pub const ZETA_PRIME_M1: f64 = -0.165421;
    pub const EULER_GAMMA: f64 = 0.577215665;
}

/// Smallest cutoff accepted by [`l1_via_asymptotic`].
pub const MIN_ASYMPTOTIC_CUTOFF: u32 = 10;

fn combine(terms: &[f64], parts: &[&SeriesValue], weights: &[f64]) -> SeriesValue {
    let sum: CompensatedSum = terms.iter().copied().collect();
    let error_bound = parts
        .iter()
        .zip(weights)
        .map(|(p, w)| w.abs() * p.error_bound)
        .sum();
    let rounding = parts
        .iter()
        .zip(weights)
        .map(|(p, w)| w.abs() * p.rounding)
        .sum::<f64>()
        + 4.0 * f64::EPSILON * sum.abs_sum();
    SeriesValue {
        value: sum.sum(),
        error_bound,
        rounding,
        terms_used: parts.iter().map(|p| p.terms_used).sum(),
        converged: parts.iter().all(|p| p.converged),
    }
}

/// L₁ = 1/12 − ζ′(−1), with ζ′(−1) summed directly by Euler–Maclaurin.
pub fn l1_via_zeta_m1(ctx: &PrecisionContext) -> Result<SeriesValue> {
    let zp = zeta_prime_em(-1.0, ctx)?;
    Ok(combine(&[1.0 / 12.0, -zp.value], &[&zp], &[1.0]))
}

/// L₁ = C/12 + (1/12) ln 2π − ζ′(2)/(2π²).
pub fn l1_via_zeta_2(ctx: &PrecisionContext) -> Result<SeriesValue> {
    let zp2 = zeta_prime(2.0, ctx)?;
    let w = 0.5 / (PI * PI);
    Ok(combine(
        &[EULER_GAMMA / 12.0, LN_2PI / 12.0, -w * zp2.value],
        &[&zp2],
        &[w],
    ))
}

/// L₁ from the asymptotic expansion of Σ_{k≤x} k ln k:
///
/// ```text
/// L₁ = Σ k ln k − [x(x+1)/2 + 1/12] ln x + x²/4 + Σ_{j≥2} B₂ⱼ / ((2j−2)(2j−1)(2j) x^{2j−2})
/// ```
///
/// The tail is summed up to its smallest term.
pub fn l1_via_asymptotic(x: u32, ctx: &PrecisionContext) -> Result<SeriesValue> {
    if x < MIN_ASYMPTOTIC_CUTOFF {
        return Err(Error::Domain {
            function: "l1_via_asymptotic",
            value: f64::from(x),
            expected: "cutoff x >= 10",
        });
    }
    let xf = f64::from(x);
    let ln_x = xf.ln();
    let inv_x2 = (xf * xf).recip();
    let terms = (2usize..).map_while(|j| {
        let b = bernoulli_f64(2 * j).ok()?;
        let m = (2 * j) as f64;
        Some(b / ((m - 2.0) * (m - 1.0) * m) * inv_x2.powi(j as i32 - 1))
    });
    let tail = sum_asymptotic(terms, &ctx.scaled(SERIES_MARGIN));
    if !tail.converged {
        return Err(Error::Budget {
            what: "l1_via_asymptotic",
            achieved: tail.error_bound,
            requested: ctx.abs_tol(),
        });
    }
    let mut acc: CompensatedSum = (2..=x)
        .map(|k| {
            let kf = f64::from(k);
            kf * kf.ln()
        })
        .collect();
    acc.add(-(0.5 * xf * (xf + 1.0)) * ln_x);
    acc.add(-ln_x / 12.0);
    acc.add(0.25 * xf * xf);
    acc.add(tail.value);
    Ok(SeriesValue {
        value: acc.sum(),
        error_bound: tail.error_bound,
        rounding: 4.0 * f64::EPSILON * acc.abs_sum() + tail.rounding,
        terms_used: tail.terms_used,
        converged: true,
    })
}

/// L₁ by its three routes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct L1Bundle {
    pub via_zeta_m1: SeriesValue,
    pub via_zeta_2: SeriesValue,
    pub via_asymptotic: SeriesValue,
    /// Largest pairwise difference between the three values.
    pub spread: f64,
}

fn spread(values: &[f64]) -> f64 {
    let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let min = values.iter().copied().fold(f64::INFINITY, f64::min);
    max - min
}

pub fn l1_bundle(ctx: &PrecisionContext) -> Result<L1Bundle> {
    let via_zeta_m1 = l1_via_zeta_m1(ctx)?;
    let via_zeta_2 = l1_via_zeta_2(ctx)?;
    let via_asymptotic = l1_via_asymptotic(MIN_ASYMPTOTIC_CUTOFF, ctx)?;
    Ok(L1Bundle {
        via_zeta_m1,
        via_zeta_2,
        via_asymptotic,
        spread: spread(&[via_zeta_m1.value, via_zeta_2.value, via_asymptotic.value]),
    })
}

/// ∫₀^{1/2} ln Γ(x + shift) dx.
pub(crate) fn half_log_gamma_integral(shift: f64, ctx: &PrecisionContext) -> Result<SeriesValue> {
    let inner = ctx.scaled(1e-2);
    try_integrate(|x| Ok(log_gamma(x + shift, &inner)?.value), 0.0, 0.5, ctx)
}

/// The Glaisher–Kinkelin constant by four representations.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GlaisherBundle {
    /// e^{1/12 − ζ′(−1)}
    pub via_zeta_m1: SeriesValue,
    /// (2π)^{1/12} [e^{(π²/6)C − ζ′(2)}]^{1/2π²}
    pub via_zeta_2: SeriesValue,
    /// 2^{−5/36} π^{−1/6} exp[(2/3) ∫₀^{1/2} ln Γ(x) dx]
    pub via_half_integral: SeriesValue,
    /// 2^{7/36} π^{−1/6} exp[1/3 + (2/3) ∫₀^{1/2} ln Γ(x+1) dx]
    pub via_half_integral_shifted: SeriesValue,
    pub spread: f64,
}

impl GlaisherBundle {
    pub fn values(&self) -> [f64; 4] {
        [
            self.via_zeta_m1.value,
            self.via_zeta_2.value,
            self.via_half_integral.value,
            self.via_half_integral_shifted.value,
        ]
    }
}

fn exp_of(log: SeriesValue) -> SeriesValue {
    let value = log.value.exp();
    SeriesValue {
        value,
        error_bound: value * log.error_bound,
        rounding: value * (log.rounding + f64::EPSILON),
        ..log
    }
}

pub fn glaisher_bundle(ctx: &PrecisionContext) -> Result<GlaisherBundle> {
    let via_zeta_m1 = exp_of(l1_via_zeta_m1(ctx)?);

    let zp2 = zeta_prime(2.0, ctx)?;
    let w = 0.5 / (PI * PI);
    let log_ii = combine(
        &[
            LN_2PI / 12.0,
            w * (PI * PI / 6.0) * EULER_GAMMA,
            -w * zp2.value,
        ],
        &[&zp2],
        &[w],
    );
    let via_zeta_2 = exp_of(log_ii);

    let third = 2.0 / 3.0;
    let i0 = half_log_gamma_integral(0.0, ctx)?;
    let log_iii = combine(
        &[-5.0 / 36.0 * LN_2, -LN_PI / 6.0, third * i0.value],
        &[&i0],
        &[third],
    );
    let i1 = half_log_gamma_integral(1.0, ctx)?;
    let log_iv = combine(
        &[7.0 / 36.0 * LN_2, -LN_PI / 6.0, 1.0 / 3.0, third * i1.value],
        &[&i1],
        &[third],
    );
    let via_half_integral = exp_of(log_iii);
    let via_half_integral_shifted = exp_of(log_iv);
    let mut bundle = GlaisherBundle {
        via_zeta_m1,
        via_zeta_2,
        via_half_integral,
        via_half_integral_shifted,
        spread: 0.0,
    };
    bundle.spread = spread(&bundle.values());
    Ok(bundle)
}

/// −1 + 12ζ′(−1) = −ln(2π e^C) + (6/π²) ζ′(2).
///
/// ζ′(−1) on the left is recovered from the asymptotic L₁, so the two sides
/// share no inputs.
pub fn zeta_prime_link(ctx: &PrecisionContext) -> Result<IdentityReport> {
    let l1 = l1_via_asymptotic(MIN_ASYMPTOTIC_CUTOFF, ctx)?;
    let zpm1 = 1.0 / 12.0 - l1.value;
    let lhs = -1.0 + 12.0 * zpm1;
    let zp2 = zeta_prime(2.0, ctx)?;
    let scale = 6.0 / (PI * PI);
    let rhs_sum: CompensatedSum = [-LN_2PI, -EULER_GAMMA, scale * zp2.value]
        .into_iter()
        .collect();
    Ok(IdentityReport::propagated(
        "-1 + 12 zeta'(-1) = -ln(2 pi e^C) + (6/pi^2) zeta'(2)",
        lhs,
        rhs_sum.sum(),
        [12.0 * l1.uncertainty(), scale * zp2.uncertainty()],
    ))
}
