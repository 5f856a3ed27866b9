//! One-loop Heisenberg–Euler correction L⁽¹⁾(B) in a constant magnetic field.
//!
//! Units are m = 1 and b = eB/m², so every Lagrangian value is in units of
//! m⁴. The fine-structure constant only enters through B² = b²/(4πα), which
//! cancels from every route; values therefore do not depend on `alpha`.
//!
//! Routes:
//! - proper time (Euclidean form), spinor and scalar;
//! - the zeta-regularized closed form, spinor only;
//! - the strong-field asymptotic forms in their zeta, Ritus and Γ₁ variants.

use std::f64::consts::{LN_2, PI};
use std::sync::OnceLock;

use serde::Serialize;

use crate::constants::{l1_via_asymptotic, EULER_GAMMA, LN_2PI, LN_PI, MIN_ASYMPTOTIC_CUTOFF};
use crate::gamma::log_gamma;
use crate::kernel::{bernoulli_f64, CompensatedSum};
use crate::quadrature::integrate_with_breakpoints;
use crate::zeta::zeta_prime;
use crate::{Error, PrecisionContext, Result, SeriesValue};

pub const ALPHA_DEFAULT: f64 = 1.0 / 137.035999;

/// Switch from the bracket's power series to its closed expression.
const SERIES_LIMIT: f64 = 1.0;
const BRACKET_TERMS: usize = 60;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FieldConfig {
    b: f64,
    alpha: f64,
}

impl FieldConfig {
    pub fn new(b: f64, alpha: f64) -> Result<Self> {
        if !(b > 0.0 && b.is_finite()) {
            return Err(Error::Domain {
                function: "FieldConfig::new",
                value: b,
                expected: "b > 0",
            });
        }
        if !(alpha > 0.0 && alpha.is_finite()) {
            return Err(Error::Domain {
                function: "FieldConfig::new",
                value: alpha,
                expected: "alpha > 0",
            });
        }
        Ok(Self { b, alpha })
    }

    pub fn with_b(b: f64) -> Result<Self> {
        Self::new(b, ALPHA_DEFAULT)
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// B² in units of m⁴.
    pub fn field_squared(&self) -> f64 {
        self.b * self.b / (4.0 * PI * self.alpha)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Spinor,
    Scalar,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum StrongVariant {
    Zeta,
    Ritus,
    Gamma1,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Route {
    ProperTime,
    ClosedForm,
    StrongZeta,
    StrongRitus,
    StrongGamma1,
}

impl Route {
    pub const ALL: [Route; 5] = [
        Route::ProperTime,
        Route::ClosedForm,
        Route::StrongZeta,
        Route::StrongRitus,
        Route::StrongGamma1,
    ];

    pub fn strong_variant(self) -> Option<StrongVariant> {
        match self {
            Route::StrongZeta => Some(StrongVariant::Zeta),
            Route::StrongRitus => Some(StrongVariant::Ritus),
            Route::StrongGamma1 => Some(StrongVariant::Gamma1),
            Route::ProperTime | Route::ClosedForm => None,
        }
    }
}

/// Power-series coefficients c_k (k ≥ 2) of the subtracted brackets
/// x coth x − 1 − x²/3 and x/sinh x + x²/6 − 1.
fn bracket_coefficients(kind: Kind) -> &'static [f64] {
    static SPINOR: OnceLock<Vec<f64>> = OnceLock::new();
    static SCALAR: OnceLock<Vec<f64>> = OnceLock::new();
    let build = |kind: Kind| {
        let mut factorial = 2.0;
        let mut coeffs = Vec::with_capacity(BRACKET_TERMS);
        for k in 2..BRACKET_TERMS + 2 {
            let two_k = (2 * k) as f64;
            factorial *= (two_k - 1.0) * two_k;
            let b = bernoulli_f64(2 * k).expect("index below table capacity") / factorial;
            let pow = 4f64.powi(k as i32);
            coeffs.push(match kind {
                Kind::Spinor => pow * b,
                Kind::Scalar => -(pow - 2.0) * b,
            });
        }
        coeffs
    };
    match kind {
        Kind::Spinor => SPINOR.get_or_init(|| build(Kind::Spinor)),
        Kind::Scalar => SCALAR.get_or_init(|| build(Kind::Scalar)),
    }
}

fn bracket_series(kind: Kind, x: f64) -> f64 {
    let x2 = x * x;
    let mut pow = x2 * x2;
    let mut acc = 0.0;
    for &c in bracket_coefficients(kind) {
        let term = c * pow;
        acc += term;
        if term.abs() <= 0.25 * f64::EPSILON * acc.abs() {
            break;
        }
        pow *= x2;
    }
    acc
}

fn bracket_direct(kind: Kind, x: f64) -> f64 {
    match kind {
        Kind::Spinor => x / x.tanh() - 1.0 - x * x / 3.0,
        Kind::Scalar => x / x.sinh() + x * x / 6.0 - 1.0,
    }
}

fn bracket(kind: Kind, x: f64) -> f64 {
    if x < SERIES_LIMIT {
        bracket_series(kind, x)
    } else {
        bracket_direct(kind, x)
    }
}

/// Proper-time integrand e^{−τ} B(bτ)/τ³, bracket from its power series.
pub fn proper_time_integrand_series(kind: Kind, b: f64, tau: f64) -> f64 {
    (-tau).exp() * bracket_series(kind, b * tau) / tau.powi(3)
}

/// Proper-time integrand e^{−τ} B(bτ)/τ³, bracket from coth / sinh.
pub fn proper_time_integrand_direct(kind: Kind, b: f64, tau: f64) -> f64 {
    if tau == 0.0 {
        return 0.0;
    }
    (-tau).exp() * bracket_direct(kind, b * tau) / tau.powi(3)
}

fn prefactor(kind: Kind) -> f64 {
    match kind {
        Kind::Spinor => -1.0 / (8.0 * PI * PI),
        Kind::Scalar => 1.0 / (16.0 * PI * PI),
    }
}

/// γ(n, x) e^{x} x^{−n} for integer n ≥ 1 and small x.
fn scaled_lower_gamma(n: usize, x: f64) -> f64 {
    let nf = n as f64;
    let mut term = nf.recip();
    let mut acc = term;
    for j in 1.. {
        term *= x / (nf + j as f64);
        acc += term;
        if term <= f64::EPSILON * acc {
            break;
        }
    }
    acc
}

/// ∫₀^{τ₀} e^{−τ} B(bτ)/τ³ dτ, term by term.
fn proper_time_head(kind: Kind, b: f64, tau0: f64) -> f64 {
    let x2 = (b * tau0).powi(2);
    let mut pow = x2 * x2;
    let mut acc = CompensatedSum::new();
    for (i, &c) in bracket_coefficients(kind).iter().enumerate() {
        let k = i + 2;
        let term = c * pow * scaled_lower_gamma(2 * k - 2, tau0);
        acc.add(term);
        if term.abs() <= 0.25 * f64::EPSILON * acc.sum().abs() {
            break;
        }
        pow *= x2;
    }
    acc.sum() * (-tau0).exp() / (tau0 * tau0)
}

/// Typical size of the bare proper-time integral, used to turn the absolute
/// tolerance into a relative one.
fn magnitude_scale(b: f64) -> f64 {
    0.02 * b.powi(4) / (1.0 + b * b)
}

fn proper_time(kind: Kind, cfg: &FieldConfig, ctx: &PrecisionContext) -> Result<SeriesValue> {
    let b = cfg.b;
    let tol = ctx.abs_tol() * magnitude_scale(b);
    let tau0 = (0.1 / b).min(0.1);
    let head = proper_time_head(kind, b, tau0);

    // |B(x)| ≤ x²/3 + x + 1, so the tail past T is below e^{−T}(b²/3 + b + 1)/T
    let tail_bound = |t: f64| (-t).exp() * (b * b / 3.0 + b + 1.0) / t;
    let mut upper = 2.0;
    while tail_bound(upper) >= 0.1 * tol {
        upper += 1.0;
    }
    let mut points = vec![tau0];
    let mut t = tau0;
    while 2.0 * t < upper {
        t *= 2.0;
        points.push(t);
    }
    points.push(upper);
    let body = integrate_with_breakpoints(
        |tau| Ok((-tau).exp() * bracket(kind, b * tau) / tau.powi(3)),
        &points,
        &ctx.with_abs_tol(tol.max(f64::MIN_POSITIVE))?,
    )?;
    let scale = prefactor(kind).abs();
    let value = prefactor(kind) * (head + body.value);
    Ok(SeriesValue {
        value,
        error_bound: scale * (body.error_bound + tail_bound(upper)),
        rounding: scale * (body.rounding + 4.0 * f64::EPSILON * head.abs()),
        terms_used: body.terms_used,
        converged: true,
    })
}

/// Spinor L⁽¹⁾ = −(1/8π²) ∫₀^∞ dτ/τ³ e^{−τ} [bτ coth(bτ) − 1 − (bτ)²/3].
///
/// Error bounds are relative to the size of the result, since the value
/// spans b⁴ at weak field to b² ln b at strong field.
pub fn lagrangian_proper_time_spinor(
    cfg: &FieldConfig,
    ctx: &PrecisionContext,
) -> Result<SeriesValue> {
    proper_time(Kind::Spinor, cfg, ctx)
}

/// Scalar L⁽¹⁾ = (1/16π²) ∫₀^∞ dτ/τ³ e^{−τ} [bτ/sinh(bτ) + (bτ)²/6 − 1].
pub fn lagrangian_proper_time_scalar(
    cfg: &FieldConfig,
    ctx: &PrecisionContext,
) -> Result<SeriesValue> {
    proper_time(Kind::Scalar, cfg, ctx)
}

/// b² ∫₁^{1+1/(2b)} ln Γ(x) dx, which tends to −C/8 as b → ∞.
pub fn gamma_integral_term(b: f64, ctx: &PrecisionContext) -> Result<SeriesValue> {
    if !(b > 0.0 && b.is_finite()) {
        return Err(Error::Domain {
            function: "gamma_integral_term",
            value: b,
            expected: "b > 0",
        });
    }
    let upper = 1.0 + 0.5 / b;
    let mut points = vec![1.0];
    let mut k = 2.0;
    while k < upper {
        points.push(k);
        k *= 2.0;
    }
    points.push(upper);
    let b2 = b * b;
    let inner = ctx.scaled(1e-2);
    let integral = integrate_with_breakpoints(
        |x| Ok(log_gamma(x, &inner)?.value),
        &points,
        &ctx.scaled(1.0 / b2.max(1.0)),
    )?;
    Ok(SeriesValue {
        value: b2 * integral.value,
        error_bound: b2 * integral.error_bound,
        rounding: b2 * integral.rounding,
        ..integral
    })
}

/// Spinor L⁽¹⁾ from the zeta-regularized closed form with m = 1, eB = b:
///
/// ```text
/// −(1/32π²) { −3 + 4b²(1/3 − 4ζ′(−1)) + 4b(ln 2π − 1) − 2 ln 2b − 4b ln 2b
///             − (4/3) b² ln 2b − 16 b² ∫₁^{1+1/2b} ln Γ(x) dx }
/// ```
pub fn lagrangian_closed_form_spinor(
    cfg: &FieldConfig,
    ctx: &PrecisionContext,
) -> Result<SeriesValue> {
    let b = cfg.b;
    let zpm1 = zeta_prime(-1.0, ctx)?;
    let g = gamma_integral_term(b, ctx)?;
    let b2 = b * b;
    let ln2b = (2.0 * b).ln();
    let terms = [
        -3.0,
        4.0 * b2 * (1.0 / 3.0 - 4.0 * zpm1.value),
        4.0 * b * (LN_2PI - 1.0),
        -2.0 * ln2b,
        -4.0 * b * ln2b,
        -4.0 / 3.0 * b2 * ln2b,
        -16.0 * g.value,
    ];
    let sum: CompensatedSum = terms.into_iter().collect();
    let scale = 1.0 / (32.0 * PI * PI);
    Ok(SeriesValue {
        value: -scale * sum.sum(),
        error_bound: scale * (16.0 * b2 * 4.0 * zpm1.error_bound + 16.0 * g.error_bound),
        rounding: scale
            * (16.0 * b2 * 4.0 * zpm1.rounding
                + 16.0 * g.rounding
                + 4.0 * f64::EPSILON * sum.abs_sum()),
        terms_used: g.terms_used,
        converged: true,
    })
}

/// Constants feeding the strong-field braces, each from a separate route:
/// ζ′(−1) from the ζ′(2) closed form, ζ′(2) by Euler–Maclaurin, and L₁ from
/// the asymptotic expansion of Σ k ln k.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StrongConstants {
    pub zeta_prime_m1: f64,
    pub zeta_prime_2: f64,
    pub l1: f64,
}

impl StrongConstants {
    pub fn compute(ctx: &PrecisionContext) -> Result<Self> {
        Ok(Self {
            zeta_prime_m1: zeta_prime(-1.0, ctx)?.value,
            zeta_prime_2: zeta_prime(2.0, ctx)?.value,
            l1: l1_via_asymptotic(MIN_ASYMPTOTIC_CUTOFF, ctx)?.value,
        })
    }
}

fn strong_brace(log_field: f64, variant: StrongVariant, c: &StrongConstants) -> f64 {
    let terms = match variant {
        StrongVariant::Zeta => [log_field, 12.0 * c.zeta_prime_m1, -1.0, LN_2],
        StrongVariant::Ritus => [
            log_field,
            -EULER_GAMMA,
            -LN_PI,
            6.0 / (PI * PI) * c.zeta_prime_2,
        ],
        StrongVariant::Gamma1 => [log_field, LN_2, -12.0 * c.l1, 0.0],
    };
    terms.into_iter().collect::<CompensatedSum>().sum()
}

/// Spinor strong-field form (αB²/6π){…} = (b²/24π²){…} with braces
///
/// - zeta: ln b + 12ζ′(−1) − 1 + ln 2
/// - ritus: ln(b/(e^C π)) + (6/π²) ζ′(2)
/// - gamma1: ln b + ln 2 − 12 L₁
pub fn lagrangian_strong_spinor(
    cfg: &FieldConfig,
    variant: StrongVariant,
    c: &StrongConstants,
) -> f64 {
    let b = cfg.b;
    b * b / (24.0 * PI * PI) * strong_brace(b.ln(), variant, c)
}

/// Scalar strong-field form (αB²/24π){…} = (b²/96π²){…} with braces
///
/// - zeta: ln 2b + 12ζ′(−1) − 1 + ln 2
/// - ritus: ln 2b − ln(e^C π) + (6/π²) ζ′(2)
///
/// There is no Γ₁ variant for the scalar case.
pub fn lagrangian_strong_scalar(
    cfg: &FieldConfig,
    variant: StrongVariant,
    c: &StrongConstants,
) -> Result<f64> {
    if variant == StrongVariant::Gamma1 {
        return Err(Error::Unsupported {
            function: "lagrangian_strong_scalar",
            value: cfg.b,
            reason: "no gamma1 variant for scalar QED",
        });
    }
    let b = cfg.b;
    Ok(b * b / (96.0 * PI * PI) * strong_brace((2.0 * b).ln(), variant, c))
}

/// All requested routes at one field strength.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LagrangianPoint {
    pub b: f64,
    pub proper_time: Option<f64>,
    pub closed_form: Option<f64>,
    pub strong_zeta: Option<f64>,
    pub strong_ritus: Option<f64>,
    pub strong_gamma1: Option<f64>,
    /// Largest relative deviation between any two present routes.
    pub pairwise_max_dev: f64,
}

impl LagrangianPoint {
    pub fn get(&self, route: Route) -> Option<f64> {
        match route {
            Route::ProperTime => self.proper_time,
            Route::ClosedForm => self.closed_form,
            Route::StrongZeta => self.strong_zeta,
            Route::StrongRitus => self.strong_ritus,
            Route::StrongGamma1 => self.strong_gamma1,
        }
    }

    fn present(&self) -> Vec<f64> {
        Route::ALL.iter().filter_map(|&r| self.get(r)).collect()
    }
}

/// Relative deviation |a − b| / max(|a|, |b|).
pub fn relative_deviation(a: f64, b: f64) -> f64 {
    let scale = a.abs().max(b.abs());
    if scale == 0.0 {
        0.0
    } else {
        (a - b).abs() / scale
    }
}

/// Evaluate the requested routes. Routes that do not exist for `kind`
/// (the closed form and the Γ₁ variant for scalar QED) are left empty.
pub fn lagrangian_point(
    kind: Kind,
    cfg: &FieldConfig,
    routes: &[Route],
    constants: &StrongConstants,
    ctx: &PrecisionContext,
) -> Result<LagrangianPoint> {
    let mut point = LagrangianPoint {
        b: cfg.b,
        proper_time: None,
        closed_form: None,
        strong_zeta: None,
        strong_ritus: None,
        strong_gamma1: None,
        pairwise_max_dev: 0.0,
    };
    for &route in routes {
        let value = match (route, kind) {
            (Route::ProperTime, _) => Some(proper_time(kind, cfg, ctx)?.value),
            (Route::ClosedForm, Kind::Spinor) => {
                Some(lagrangian_closed_form_spinor(cfg, ctx)?.value)
            }
            (Route::ClosedForm, Kind::Scalar) => None,
            (r, Kind::Spinor) => r
                .strong_variant()
                .map(|v| lagrangian_strong_spinor(cfg, v, constants)),
            (Route::StrongGamma1, Kind::Scalar) => None,
            (r, Kind::Scalar) => match r.strong_variant() {
                Some(v) => Some(lagrangian_strong_scalar(cfg, v, constants)?),
                None => None,
            },
        };
        match route {
            Route::ProperTime => point.proper_time = value,
            Route::ClosedForm => point.closed_form = value,
            Route::StrongZeta => point.strong_zeta = value,
            Route::StrongRitus => point.strong_ritus = value,
            Route::StrongGamma1 => point.strong_gamma1 = value,
        }
    }
    let values = point.present();
    for (i, &a) in values.iter().enumerate() {
        for &b in &values[i + 1..] {
            point.pairwise_max_dev = point.pairwise_max_dev.max(relative_deviation(a, b));
        }
    }
    Ok(point)
}

/// Least-squares slope of L⁽¹⁾/b² against ln b for one route, normalized so
/// that the strong-field coefficient reads 1: slope · 24π² for spinor and
/// slope · 96π² for scalar. In terms of B these are slope(L/B²) · 6π/α and
/// slope(L/B²) · 24π/α.
pub fn beta_log_slope(points: &[LagrangianPoint], kind: Kind, route: Route) -> Result<f64> {
    let data: Vec<(f64, f64)> = points
        .iter()
        .filter_map(|p| p.get(route).map(|v| (p.b.ln(), v / (p.b * p.b))))
        .collect();
    if data.len() < 2 {
        return Err(Error::InvalidArgument(format!(
            "slope fit needs at least two points with route {route:?}, got {}",
            data.len()
        )));
    }
    let n = data.len() as f64;
    let mean_x = data.iter().map(|d| d.0).sum::<f64>() / n;
    let mean_y = data.iter().map(|d| d.1).sum::<f64>() / n;
    let sxx: f64 = data.iter().map(|d| (d.0 - mean_x).powi(2)).sum();
    let sxy: f64 = data.iter().map(|d| (d.0 - mean_x) * (d.1 - mean_y)).sum();
    if sxx == 0.0 {
        return Err(Error::InvalidArgument(
            "slope fit needs at least two distinct field strengths".into(),
        ));
    }
    let norm = match kind {
        Kind::Spinor => 24.0 * PI * PI,
        Kind::Scalar => 96.0 * PI * PI,
    };
    Ok(sxy / sxx * norm)
}
