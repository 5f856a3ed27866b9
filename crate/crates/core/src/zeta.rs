//! The Riemann zeta function and its derivative on the real line.
//!
//! Three evaluation paths are kept deliberately separate so that they can
//! check one another:
//!
//! - [`zeta`]: Dirichlet eta with Cohen–Villegas–Zagier acceleration for
//!   `s > 0`, and the reflection `ζ(s) = 2ˢπˢ⁻¹ sin(πs/2) Γ(1−s) ζ(1−s)` for
//!   `s < 0`.
//! - [`zeta_em`] / [`zeta_prime_em`]: Euler–Maclaurin summation of
//!   `Σ n⁻ˢ` (and `−Σ ln n · n⁻ˢ`) with Bernoulli tail corrections. Valid
//!   for every real `s ≠ 1`.
//! - [`zeta_prime`] at `s = −1, −2`: the closed forms obtained from
//!   differentiating the reflection formula.
//!
//! Riemann's ξ function is available both as a product ([`xi_product`]) and
//! through the Jacobi theta integral ([`xi_integral`]).

use std::f64::consts::{LN_2, PI};

use serde::Serialize;

use crate::constants::{EULER_GAMMA, LN_2PI, LN_PI};
use crate::gamma::{log_gamma, SERIES_MARGIN};
use crate::kernel::{bernoulli_f64, sum_asymptotic, CompensatedSum};
use crate::quadrature::integrate;
use crate::{Error, IdentityReport, PrecisionContext, Result, SeriesValue};

/// Cutoff `N` for the Euler–Maclaurin head sum when `s > 0`.
pub const EM_CUTOFF: u32 = 50;

/// ζ(2), ζ(3), ζ′(2), ζ′(−1) and ζ′(−2) as computed by this module.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ZetaConstants {
    pub zeta2: f64,
    pub zeta3: f64,
    pub zp2: f64,
    pub zpm1: f64,
    pub zpm2: f64,
}

impl ZetaConstants {
    pub fn compute(ctx: &PrecisionContext) -> Result<Self> {
        Ok(Self {
            zeta2: zeta(2.0, ctx)?.value,
            zeta3: zeta(3.0, ctx)?.value,
            zp2: zeta_prime(2.0, ctx)?.value,
            zpm1: zeta_prime(-1.0, ctx)?.value,
            zpm2: zeta_prime(-2.0, ctx)?.value,
        })
    }
}

/// sin(πx) with exact zeros at the integers.
pub(crate) fn sin_pi(x: f64) -> f64 {
    let n = x.round();
    let s = (PI * (x - n)).sin();
    if n.rem_euclid(2.0) == 0.0 {
        s
    } else {
        -s
    }
}

/// cos(πx) with exact zeros at the half-integers.
pub(crate) fn cos_pi(x: f64) -> f64 {
    sin_pi(x + 0.5)
}

fn is_odd_integer(s: f64) -> bool {
    s.fract() == 0.0 && s.rem_euclid(2.0) == 1.0
}

fn is_even_integer(s: f64) -> bool {
    s.fract() == 0.0 && s.rem_euclid(2.0) == 0.0
}

fn budget(what: &'static str, achieved: f64, ctx: &PrecisionContext) -> Error {
    Error::Budget {
        what,
        achieved,
        requested: ctx.abs_tol(),
    }
}

/// η(s) = Σ (−1)ᵏ (k+1)⁻ˢ with `n` accelerated terms.
///
/// For s > 0 the terms are moments of a positive measure on [0, 1], so
/// the truncation error is at most 2 / (3 + √8)ⁿ.
fn eta_accelerated(s: f64, n: usize) -> f64 {
    let nf = n as f64;
    let d0 = (3.0 + 8f64.sqrt()).powf(nf);
    let d = 0.5 * (d0 + d0.recip());
    let mut b = -1.0;
    let mut c = -d;
    let mut acc = CompensatedSum::new();
    for k in 0..n {
        let kf = k as f64;
        c = b - c;
        acc.add(c * (kf + 1.0).powf(-s));
        b = (kf + nf) * (kf - nf) * b / ((kf + 0.5) * (kf + 1.0));
    }
    acc.sum() / d
}

fn zeta_eta(s: f64, ctx: &PrecisionContext) -> Result<SeriesValue> {
    // 1 − 2^{1−s}, accurate near s = 1
    let denom = -((1.0 - s) * LN_2).exp_m1();
    let rate = (3.0 + 8f64.sqrt()).ln();
    let wanted = (2.0 / (SERIES_MARGIN * ctx.abs_tol() * denom.abs())).ln() / rate;
    let n = (wanted.ceil().max(1.0) as usize) + 1;
    if n > ctx.max_series_terms() {
        return Err(budget(
            "zeta eta series",
            2.0 * (-rate * ctx.max_series_terms() as f64).exp() / denom.abs(),
            ctx,
        ));
    }
    let eta = eta_accelerated(s, n);
    Ok(SeriesValue {
        value: eta / denom,
        error_bound: 2.0 * (-rate * n as f64).exp() / denom.abs(),
        rounding: 4.0 * n as f64 * f64::EPSILON / denom.abs(),
        terms_used: n,
        converged: true,
    })
}

/// ζ(s) for real s ≠ 1.
pub fn zeta(s: f64, ctx: &PrecisionContext) -> Result<SeriesValue> {
    if s.is_nan() {
        return Err(Error::Domain {
            function: "zeta",
            value: s,
            expected: "real s",
        });
    }
    if s == 1.0 {
        return Err(Error::Pole {
            function: "zeta",
            value: s,
        });
    }
    if s > 0.0 {
        return zeta_eta(s, ctx);
    }
    if s == 0.0 {
        return Ok(SeriesValue::exact(-0.5));
    }
    if is_even_integer(s) {
        return Ok(SeriesValue::exact(0.0));
    }
    reflected(s, ctx)
}

/// ζ(s) for s < 0 from ζ(1 − s) by the reflection formula.
fn reflected(s: f64, ctx: &PrecisionContext) -> Result<SeriesValue> {
    let t = 1.0 - s;
    let lg = log_gamma(t, &ctx.scaled(1e-3))?;
    let log_mag = s * LN_2 + (s - 1.0) * LN_PI + lg.value;
    let factor = log_mag.exp() * sin_pi(0.5 * s);
    if !factor.is_finite() {
        return Err(Error::Unsupported {
            function: "zeta",
            value: s,
            reason: "reflection factor overflows binary64",
        });
    }
    let inner = zeta_eta(t, &ctx.scaled(1.0 / factor.abs().max(1.0)))?;
    let value = factor * inner.value;
    let error_bound = factor.abs() * inner.error_bound + value.abs() * lg.error_bound;
    if error_bound > ctx.abs_tol() {
        return Err(budget("zeta reflection", error_bound, ctx));
    }
    let log_rounding = 4.0 * f64::EPSILON * (s.abs() * LN_2 + t * LN_PI + lg.value.abs());
    Ok(SeriesValue {
        value,
        error_bound,
        rounding: value.abs() * (log_rounding + lg.rounding) + factor.abs() * inner.rounding,
        terms_used: inner.terms_used + lg.terms_used,
        converged: true,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Summand {
    /// n⁻ˢ
    Power,
    /// −ln n · n⁻ˢ, the s-derivative of the above
    LogPower,
}

/// Euler–Maclaurin evaluation of Σ f(n) for f = n⁻ˢ or −ln n · n⁻ˢ.
fn euler_maclaurin(s: f64, summand: Summand, ctx: &PrecisionContext) -> Result<SeriesValue> {
    let what = match summand {
        Summand::Power => "zeta_em",
        Summand::LogPower => "zeta_prime_em",
    };
    if !s.is_finite() {
        return Err(Error::Domain {
            function: what,
            value: s,
            expected: "finite real s",
        });
    }
    if s == 1.0 {
        return Err(Error::Pole {
            function: what,
            value: s,
        });
    }
    if summand == Summand::Power && s <= 0.0 && s.fract() == 0.0 {
        return Ok(em_terminating(s));
    }
    let cutoff = if s > 0.0 {
        EM_CUTOFF
    } else {
        8 + s.abs().ceil() as u32
    };
    let big_n = f64::from(cutoff);
    let ln_n = big_n.ln();

    let head: CompensatedSum = (1..cutoff)
        .map(|n| {
            let nf = f64::from(n);
            let p = nf.powf(-s);
            match summand {
                Summand::Power => p,
                Summand::LogPower => -nf.ln() * p,
            }
        })
        .collect();

    let n_pow = big_n.powf(-s);
    let sm1 = s - 1.0;
    let (integral, half) = match summand {
        Summand::Power => (big_n * n_pow / sm1, 0.5 * n_pow),
        Summand::LogPower => (
            -big_n * n_pow * (ln_n / sm1 + 1.0 / (sm1 * sm1)),
            -0.5 * ln_n * n_pow,
        ),
    };

    // m-th x-derivative of x⁻ˢ at N is P_m(s) N^{−s−m}, P_m = Π_{j<m} (−s−j);
    // for −ln x · x⁻ˢ it is (P′_m − P_m ln N) N^{−s−m} with P′ = dP/ds.
    let mut p = 1.0;
    let mut dp = 0.0;
    let mut m = 0u32;
    let mut power = n_pow;
    let mut factorial = 1.0;
    let corrections = (1usize..).take(ctx.max_em_terms()).map_while(move |k| {
        let target = 2 * k as u32 - 1;
        while m < target {
            let step = -s - f64::from(m);
            dp = dp * step - p;
            p *= step;
            power /= big_n;
            m += 1;
        }
        let two_k = (2 * k) as f64;
        factorial *= (two_k - 1.0) * two_k;
        let derivative = match summand {
            Summand::Power => p * power,
            Summand::LogPower => (dp - p * ln_n) * power,
        };
        let b = bernoulli_f64(2 * k).ok()?;
        Some(-b / factorial * derivative)
    });
    // The remainder is bounded by the first omitted term only for completely
    // monotone summands; elsewhere allow a factor of two.
    let exact_bound = summand == Summand::Power && s > 0.0;
    let inner_ctx = ctx.scaled(if exact_bound {
        SERIES_MARGIN
    } else {
        0.5 * SERIES_MARGIN
    });
    let tail = sum_asymptotic(corrections, &inner_ctx);
    let error_bound = if exact_bound {
        tail.error_bound
    } else {
        2.0 * tail.error_bound
    };
    if !tail.converged {
        return Err(budget(what, error_bound, ctx));
    }

    let mut total = head;
    total.add(integral);
    total.add(half);
    total.add(tail.value);
    Ok(SeriesValue {
        value: total.sum(),
        error_bound,
        rounding: 4.0 * f64::EPSILON * total.abs_sum() + tail.rounding,
        terms_used: cutoff as usize - 1 + tail.terms_used,
        converged: true,
    })
}

/// At s = −n the summand is a polynomial and the expansion at N = 1 ends
/// after finitely many terms: ζ(−n) = 1/(s−1) + 1/2 − Σ B₂ₖ/(2k)! P₂ₖ₋₁(s).
fn em_terminating(s: f64) -> SeriesValue {
    let mut acc: CompensatedSum = [1.0 / (s - 1.0), 0.5].into_iter().collect();
    let mut p = 1.0;
    let mut m = 0usize;
    let mut factorial = 1.0;
    let last = ((1.0 - s) / 2.0).floor() as usize;
    for k in 1..=last {
        while m < 2 * k - 1 {
            p *= -s - m as f64;
            m += 1;
        }
        let two_k = (2 * k) as f64;
        factorial *= (two_k - 1.0) * two_k;
        let b = bernoulli_f64(2 * k).expect("index below table capacity");
        acc.add(-b / factorial * p);
    }
    SeriesValue {
        value: acc.sum(),
        error_bound: 0.0,
        rounding: 4.0 * f64::EPSILON * acc.abs_sum(),
        terms_used: last,
        converged: true,
    }
}

/// ζ(s) by Euler–Maclaurin summation, any real s ≠ 1.
pub fn zeta_em(s: f64, ctx: &PrecisionContext) -> Result<SeriesValue> {
    euler_maclaurin(s, Summand::Power, ctx)
}

/// ζ′(s) by Euler–Maclaurin summation, any real s ≠ 1.
pub fn zeta_prime_em(s: f64, ctx: &PrecisionContext) -> Result<SeriesValue> {
    euler_maclaurin(s, Summand::LogPower, ctx)
}

/// ζ′(s) for s ≥ 0 (s ≠ 1) by Euler–Maclaurin, and at s = −1, −2 by
/// the closed forms
///
/// ```text
/// ζ′(−1) = [1 − ln(2π) − C + (6/π²) ζ′(2)] / 12
/// ζ′(−2) = −ζ(3) / (4π²)
/// ```
pub fn zeta_prime(s: f64, ctx: &PrecisionContext) -> Result<SeriesValue> {
    if s.is_nan() {
        return Err(Error::Domain {
            function: "zeta_prime",
            value: s,
            expected: "real s",
        });
    }
    if s == 1.0 {
        return Err(Error::Pole {
            function: "zeta_prime",
            value: s,
        });
    }
    if s == -1.0 {
        let zp2 = zeta_prime(2.0, ctx)?;
        let scale = 6.0 / (PI * PI);
        let terms = [1.0, -LN_2PI, -EULER_GAMMA, scale * zp2.value];
        let sum: CompensatedSum = terms.into_iter().collect();
        let value = sum.sum() / 12.0;
        return Ok(SeriesValue {
            value,
            error_bound: scale * zp2.error_bound / 12.0,
            rounding: 4.0 * f64::EPSILON * sum.abs_sum() / 12.0 + scale * zp2.rounding / 12.0,
            terms_used: zp2.terms_used,
            converged: true,
        });
    }
    if s == -2.0 {
        let z3 = zeta(3.0, ctx)?;
        let scale = 0.25 / (PI * PI);
        return Ok(SeriesValue {
            value: -z3.value * scale,
            error_bound: z3.error_bound * scale,
            rounding: z3.rounding * scale + 2.0 * f64::EPSILON * z3.value.abs() * scale,
            terms_used: z3.terms_used,
            converged: true,
        });
    }
    if s < 0.0 {
        return Err(Error::Unsupported {
            function: "zeta_prime",
            value: s,
            reason: "negative arguments other than -1 and -2",
        });
    }
    zeta_prime_em(s, ctx)
}

/// Ψ(x) = Σ_{n≥1} exp(−n²πx), the theta sum in Riemann's integral.
///
/// Summation stops at the first term below `ctx.abs_tol`; the geometric
/// tail bound beyond it is reported.
pub fn jacobi_psi(x: f64, ctx: &PrecisionContext) -> Result<SeriesValue> {
    if !(x > 0.0 && x.is_finite()) {
        return Err(Error::Domain {
            function: "jacobi_psi",
            value: x,
            expected: "x > 0",
        });
    }
    let mut acc = CompensatedSum::new();
    for n in 1..=ctx.max_series_terms() {
        let nf = n as f64;
        let term = (-nf * nf * PI * x).exp();
        let ratio = (-(2.0 * nf + 1.0) * PI * x).exp();
        let bound = term / (1.0 - ratio);
        if bound <= ctx.abs_tol() {
            return Ok(SeriesValue {
                value: acc.sum(),
                error_bound: bound,
                rounding: 2.0 * f64::EPSILON * acc.abs_sum(),
                terms_used: n - 1,
                converged: true,
            });
        }
        acc.add(term);
    }
    let next = ctx.max_series_terms() as f64 + 1.0;
    Err(budget("jacobi_psi", (-next * next * PI * x).exp(), ctx))
}

/// Ψ(x) to full working precision, for use inside integrands.
fn psi_full(x: f64) -> f64 {
    let mut acc = 0.0;
    let mut n = 1.0f64;
    loop {
        let term = (-n * n * PI * x).exp();
        if term <= f64::EPSILON * 1e-3 * acc || term == 0.0 {
            return acc;
        }
        acc += term;
        n += 1.0;
    }
}

fn check_xi_domain(function: &'static str, s: f64, upper: f64) -> Result<()> {
    if s > 0.0 && s <= upper && s != 1.0 {
        Ok(())
    } else {
        Err(Error::Domain {
            function,
            value: s,
            expected: "s in (0, 1) or (1, upper limit]",
        })
    }
}

/// ξ(s) = ½ s(s−1) π^{−s/2} Γ(s/2) ζ(s), for s ∈ (0,1) ∪ (1,12].
pub fn xi_product(s: f64, ctx: &PrecisionContext) -> Result<SeriesValue> {
    check_xi_domain("xi_product", s, 12.0)?;
    let lg = log_gamma(0.5 * s, &ctx.scaled(1e-2))?;
    let log_factor = lg.value - 0.5 * s * LN_PI;
    let factor = 0.5 * s * (s - 1.0) * log_factor.exp();
    let z = zeta(s, &ctx.scaled(1.0 / factor.abs().max(1.0)))?;
    let value = factor * z.value;
    let error_bound = factor.abs() * z.error_bound + value.abs() * lg.error_bound;
    Ok(SeriesValue {
        value,
        error_bound,
        rounding: factor.abs() * z.rounding
            + value.abs() * (lg.rounding + 8.0 * f64::EPSILON * (1.0 + log_factor.abs())),
        terms_used: z.terms_used + lg.terms_used,
        converged: error_bound <= ctx.abs_tol(),
    })
}

/// ξ(s) from Riemann's theta-integral representation,
///
/// ```text
/// ξ(s) = ½ s(s−1) [ ∫₁^∞ Ψ(x) (x^{s/2−1} + x^{−s/2−1/2}) dx − 1/(s(1−s)) ]
/// ```
///
/// for s ∈ (0,1) ∪ (1,4). The upper limit is cut where the integrand bound
/// 2 e^{−πx} x^p falls below a tenth of the tolerance.
pub fn xi_integral(s: f64, ctx: &PrecisionContext) -> Result<SeriesValue> {
    check_xi_domain("xi_integral", s, 4.0 - f64::EPSILON * 4.0)?;
    let weight = 0.5 * (s * (s - 1.0)).abs();
    let target = ctx.abs_tol() / weight.max(1e-300);
    let p = (0.5 * s - 1.0).max(-0.5 * s - 0.5);
    let envelope = |x: f64| 2.0 * (-PI * x).exp() * x.powf(p);
    let mut upper = 2.0;
    while envelope(upper) >= 0.1 * target {
        upper += 0.5;
    }
    // ∫_X^∞ of the envelope, with p < 1 and X ≥ 2
    let tail_bound = 1.01 * envelope(upper) / (PI - p.max(0.0) / upper);
    let integral = integrate(
        |x| psi_full(x) * (x.powf(0.5 * s - 1.0) + x.powf(-0.5 * s - 0.5)),
        1.0,
        upper,
        &ctx.scaled(0.5 / weight.max(1.0)),
    )?;
    let pole_term = 1.0 / (s * (1.0 - s));
    let value = 0.5 * s * (s - 1.0) * (integral.value - pole_term);
    let error_bound = weight * (integral.error_bound + tail_bound);
    Ok(SeriesValue {
        value,
        error_bound,
        rounding: weight * (integral.rounding + 4.0 * f64::EPSILON * pole_term.abs())
            + 4.0 * f64::EPSILON * value.abs(),
        terms_used: integral.terms_used,
        converged: error_bound <= ctx.abs_tol(),
    })
}

/// Residual of ζ(s) = 2ˢ πˢ⁻¹ sin(πs/2) Γ(1−s) ζ(1−s).
///
/// The two sides are computed along different paths. For 0 < s < 1 both
/// zeta values come from the eta series. For s < 0 the left side is the
/// Euler–Maclaurin value. For s > 1 the right side uses Euler–Maclaurin
/// for ζ(1−s), with Γ(1−s) sin(πs/2) rewritten as π / (2 cos(πs/2) Γ(s));
/// at odd integers the limit brings in ζ′(1−s), also by Euler–Maclaurin.
pub fn functional_equation_residual(s: f64, ctx: &PrecisionContext) -> Result<IdentityReport> {
    if s == 1.0 || s == 0.0 || !s.is_finite() {
        return Err(Error::Domain {
            function: "functional_equation_residual",
            value: s,
            expected: "finite s other than 0 and 1",
        });
    }
    let name = format!("zeta reflection formula at s = {s}");
    let lhs = if s > 0.0 {
        zeta(s, ctx)?
    } else {
        zeta_em(s, ctx)?
    };

    let (rhs, component) = if s < 1.0 {
        let t = 1.0 - s;
        let lg = log_gamma(t, ctx)?;
        let z = zeta(t, ctx)?;
        let factor = (s * LN_2 + (s - 1.0) * LN_PI + lg.value).exp() * sin_pi(0.5 * s);
        let rhs = factor * z.value;
        (
            rhs,
            factor.abs() * z.uncertainty() + rhs.abs() * lg.uncertainty(),
        )
    } else {
        let lg = log_gamma(s, ctx)?;
        let scale = (s * LN_2PI - lg.value).exp();
        if is_odd_integer(s) {
            let dz = zeta_prime_em(1.0 - s, ctx)?;
            let factor = scale / (PI * sin_pi(0.5 * s));
            let rhs = factor * dz.value;
            (
                rhs,
                factor.abs() * dz.uncertainty() + rhs.abs() * lg.uncertainty(),
            )
        } else {
            let z = zeta_em(1.0 - s, ctx)?;
            let factor = scale / (2.0 * cos_pi(0.5 * s));
            let rhs = factor * z.value;
            (
                rhs,
                factor.abs() * z.uncertainty() + rhs.abs() * lg.uncertainty(),
            )
        }
    };
    Ok(IdentityReport::propagated(
        name,
        lhs.value,
        rhs,
        [lhs.uncertainty(), component],
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> PrecisionContext {
        PrecisionContext::default()
    }

    fn z(s: f64) -> f64 {
        zeta(s, &ctx()).unwrap().value
    }

    /// Partial sum to `n` plus the first Euler–Maclaurin tail terms; an
    /// oracle that shares nothing with the implementation.
    fn brute_zeta(s: f64, n: u32) -> f64 {
        let head: f64 = (1..n).rev().map(|k| f64::from(k).powf(-s)).sum();
        let nf = f64::from(n);
        head + nf.powf(1.0 - s) / (s - 1.0) + 0.5 * nf.powf(-s) + s / 12.0 * nf.powf(-s - 1.0)
    }

    #[test]
    fn printed_zeta_values() {
        assert!((z(2.0) - PI * PI / 6.0).abs() <= 1e-15);
        assert!((z(3.0) - 1.202_056_903_159_594_3).abs() <= 1e-14);
        assert!((z(3.0) - 1.202056903159).abs() <= 5e-12);
        // ζ(−1) = (2/4π²) cos π Γ(2) ζ(2) = −1/12
        assert!((z(-1.0) + 1.0 / 12.0).abs() <= 1e-15);
    }

    #[test]
    fn trivial_values() {
        assert_eq!(z(0.0), -0.5);
        assert_eq!(z(-2.0), 0.0);
        assert_eq!(z(-10.0), 0.0);
        // ζ(−3) = 1/120
        assert!((z(-3.0) - 1.0 / 120.0).abs() <= 1e-16);
    }

    #[test]
    fn critical_strip_values() {
        // mpmath zeta
        assert!((z(0.5) + 1.460_354_508_809_586_812_9).abs() <= 1e-13);
        assert!((z(0.3) + 0.904_559_257_253_983_968).abs() <= 1e-13);
        assert!((z(1.0 + 1e-6) - 1_000_000.577_298_004).abs() <= 1e-6);
    }

    #[test]
    fn pole_and_domain() {
        assert!(matches!(zeta(1.0, &ctx()), Err(Error::Pole { .. })));
        assert!(matches!(zeta(f64::NAN, &ctx()), Err(Error::Domain { .. })));
        assert!(matches!(zeta_prime(1.0, &ctx()), Err(Error::Pole { .. })));
        assert!(matches!(
            zeta_prime(-3.0, &ctx()),
            Err(Error::Unsupported { .. })
        ));
        assert!(matches!(
            zeta_prime(-0.5, &ctx()),
            Err(Error::Unsupported { .. })
        ));
        assert!(matches!(zeta_em(1.0, &ctx()), Err(Error::Pole { .. })));
    }

    #[test]
    fn eta_route_matches_direct_sum() {
        for s in [3.0, 5.0, 8.0] {
            let oracle = brute_zeta(s, 20_000);
            assert!((z(s) - oracle).abs() <= 1e-12, "s = {s}");
            let em = zeta_em(s, &ctx()).unwrap().value;
            assert!((em - oracle).abs() <= 1e-12, "s = {s}");
        }
    }

    #[test]
    fn euler_maclaurin_negative_integers_are_bernoulli() {
        // ζ(−n) = −B_{n+1}/(n+1)
        for n in 1..8usize {
            let expected = -bernoulli_f64(n + 1).unwrap() / (n + 1) as f64;
            let em = zeta_em(-(n as f64), &ctx()).unwrap().value;
            assert!((em - expected).abs() <= 1e-10, "n = {n}: {em}");
        }
    }

    #[test]
    fn zeta_prime_printed_values() {
        let zp2 = zeta_prime(2.0, &ctx()).unwrap().value;
        // printed to five decimals, truncated
        assert_eq!((zp2 * 1e5).trunc() / 1e5, -0.93754);
        assert!((zp2 + 0.937_548_254_315_843_75).abs() <= 1e-12);
        let zpm1 = zeta_prime(-1.0, &ctx()).unwrap().value;
        assert!((zpm1 + 0.165421).abs() < 5e-7);
        let zpm2 = zeta_prime(-2.0, &ctx()).unwrap().value;
        assert!((zpm2 + 1.202056903159 / (4.0 * PI * PI)).abs() <= 1e-13);
        assert!((zpm2 + 0.030_448_457_058_393_27).abs() <= 1e-13);
    }

    #[test]
    fn zeta_prime_em_off_the_closed_forms() {
        // mpmath zeta(s, derivative=1)
        let zpm1 = zeta_prime_em(-1.0, &ctx()).unwrap().value;
        assert!((zpm1 + 0.165_421_143_700_450_929).abs() <= 1e-11);
        let zpm2 = zeta_prime_em(-2.0, &ctx()).unwrap().value;
        assert!((zpm2 + 0.030_448_457_058_393_27).abs() <= 1e-11);
        let zp0 = zeta_prime(0.0, &ctx()).unwrap().value;
        assert!((zp0 + 0.5 * LN_2PI).abs() <= 1e-12);
    }

    #[test]
    fn zeta_prime_finite_difference_oracle() {
        for s in [1.5, 2.0, 4.0] {
            let h = 1e-5;
            let fd = (z(s + h) - z(s - h)) / (2.0 * h);
            let zp = zeta_prime(s, &ctx()).unwrap().value;
            assert!((fd - zp).abs() <= 1e-8, "s = {s}: {fd} vs {zp}");
        }
    }

    #[test]
    fn apery_from_zeta_prime_minus_two() {
        let zpm2 = zeta_prime(-2.0, &ctx()).unwrap().value;
        assert!((z(3.0) + 4.0 * PI * PI * zpm2).abs() <= 1e-11);
    }

    #[test]
    fn zeta_constants_bundle() {
        let c = ZetaConstants::compute(&ctx()).unwrap();
        assert!((c.zeta2 - PI * PI / 6.0).abs() <= 1e-15);
        assert!((c.zeta3 - 1.202056903159).abs() < 5e-12);
        assert_eq!(c.zpm2, -c.zeta3 / (4.0 * PI * PI));
    }

    #[test]
    fn jacobi_psi_values() {
        let oracle: f64 = (1..=10).map(|n| (-f64::from(n * n) * PI).exp()).sum();
        let v = jacobi_psi(1.0, &ctx()).unwrap();
        assert!((v.value - oracle).abs() <= 1e-12);
        assert!((v.value - 0.043_217_405_606_654_007).abs() <= 1e-12);
        assert!(jacobi_psi(50.0, &ctx()).unwrap().value < 1e-60);
        assert!(matches!(jacobi_psi(0.0, &ctx()), Err(Error::Domain { .. })));
        assert!(matches!(
            jacobi_psi(1e-9, &ctx()),
            Err(Error::Budget { .. })
        ));
    }

    #[test]
    fn theta_symmetry() {
        for x in [0.5, 0.7, 1.3] {
            let direct =
                |x: f64| -> f64 { (1..=60).map(|n| (-f64::from(n * n) * PI * x).exp()).sum() };
            let a = 2.0 * jacobi_psi(x, &ctx()).unwrap().value + 1.0;
            let b = (2.0 * jacobi_psi(1.0 / x, &ctx()).unwrap().value + 1.0) / x.sqrt();
            assert!((a - b).abs() <= 1e-12, "x = {x}");
            assert!((a - 2.0 * direct(x) - 1.0).abs() <= 1e-12);
        }
    }

    #[test]
    fn xi_closed_values() {
        assert!((xi_product(2.0, &ctx()).unwrap().value - PI / 6.0).abs() <= 1e-14);
        assert!((xi_product(4.0, &ctx()).unwrap().value - PI * PI / 15.0).abs() <= 1e-13);
        assert!(xi_product(1.0, &ctx()).is_err());
        assert!(xi_product(12.5, &ctx()).is_err());
        assert!(xi_integral(4.0, &ctx()).is_err());
    }

    #[test]
    fn xi_symmetry() {
        for s in [0.1, 0.25, 0.4, 0.5] {
            let a = xi_product(s, &ctx()).unwrap().value;
            let b = xi_product(1.0 - s, &ctx()).unwrap().value;
            assert!((a - b).abs() <= 1e-10, "s = {s}");
        }
    }

    #[test]
    fn xi_integral_matches_product() {
        for s in [0.3, 0.5, 0.8, 2.0, 3.0] {
            let a = xi_integral(s, &ctx()).unwrap().value;
            let b = xi_product(s, &ctx()).unwrap().value;
            assert!((a - b).abs() <= 1e-9, "s = {s}: {a} vs {b}");
        }
        let a = xi_integral(0.3, &ctx()).unwrap().value;
        let b = xi_integral(0.7, &ctx()).unwrap().value;
        assert!((a - b).abs() <= 1e-10);
    }

    #[test]
    fn functional_equation_points() {
        for s in [0.3, 0.5, 2.0, 3.0, 2.5, -1.5, -2.0] {
            let r = functional_equation_residual(s, &ctx()).unwrap();
            assert!(r.abs_residual() <= 1e-10, "s = {s}: {r:?}");
            assert!(r.pass(), "s = {s}: {r:?}");
        }
        // larger s amplifies the rounding of the Euler–Maclaurin head sum
        for s in [4.0, 5.0, 6.5] {
            let r = functional_equation_residual(s, &ctx()).unwrap();
            assert!(r.pass() && r.rel_residual() <= 1e-7, "s = {s}: {r:?}");
        }
        let at_two = functional_equation_residual(2.0, &ctx()).unwrap();
        assert!((at_two.lhs() - PI * PI / 6.0).abs() <= 1e-15);
        assert!(functional_equation_residual(1.0, &ctx()).is_err());
        assert!(functional_equation_residual(0.0, &ctx()).is_err());
    }

    #[test]
    fn trig_helpers_exact_zeros() {
        assert_eq!(sin_pi(3.0), 0.0);
        assert_eq!(cos_pi(1.5), 0.0);
        assert!((sin_pi(0.5) - 1.0).abs() < 1e-16);
        assert!((sin_pi(1.5) + 1.0).abs() < 1e-16);
        assert!((cos_pi(2.0) - 1.0).abs() < 1e-16);
    }
}
