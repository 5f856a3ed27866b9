//! Adaptive Gauss–Kronrod quadrature and the Raabe / Γ₁ integral identities.
//!
//! The integrator is a globally adaptive 10/21-point Gauss–Kronrod scheme.
//! All nodes are interior, so integrands with an integrable logarithmic
//! singularity at an endpoint (ln Γ(t) near t = 0) are handled by repeated
//! bisection towards that endpoint.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::f64::consts::LN_2;

use crate::constants::{l1_via_zeta_m1, LN_PI, LN_SQRT_2PI};
use crate::gamma::{log_gamma, log_gamma1};
use crate::kernel::CompensatedSum;
use crate::{Error, IdentityReport, PrecisionContext, Result, SeriesValue};

/// Cap on the number of live subintervals.
pub const MAX_SEGMENTS: usize = 10_000;

// Kronrod abscissae on [-1, 1]; odd indices are the 10-point Gauss nodes.
const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];

const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_926_431_667_083,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

fn rescale_error(err: f64, res_abs: f64, res_asc: f64) -> f64 {
    let mut scaled = err.abs();
    if res_asc != 0.0 && scaled != 0.0 {
        let scale = (200.0 * scaled / res_asc).powf(1.5);
        scaled = if scale < 1.0 {
            res_asc * scale
        } else {
            res_asc
        };
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        scaled = scaled.max(50.0 * f64::EPSILON * res_abs);
    }
    scaled
}

#[derive(Debug, Clone, Copy)]
struct Segment {
    a: f64,
    b: f64,
    result: f64,
    error: f64,
    res_abs: f64,
    depth: usize,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.error.total_cmp(&other.error) == Ordering::Equal
    }
}

impl Eq for Segment {}

impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn eval<F>(f: &F, x: f64) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    let y = f(x)?;
    if y.is_finite() {
        Ok(y)
    } else {
        Err(Error::Domain {
            function: "integrate",
            value: x,
            expected: "finite integrand",
        })
    }
}

fn kronrod21<F>(f: &F, a: f64, b: f64, depth: usize) -> Result<Segment>
where
    F: Fn(f64) -> Result<f64>,
{
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = eval(f, center)?;
    let mut res_g = 0.0;
    let mut res_k = WGK[10] * fc;
    let mut res_abs = res_k.abs();
    let mut f1 = [0.0; 10];
    let mut f2 = [0.0; 10];
    for j in 0..10 {
        let dx = half * XGK[j];
        let lo = eval(f, center - dx)?;
        let hi = eval(f, center + dx)?;
        f1[j] = lo;
        f2[j] = hi;
        if j % 2 == 1 {
            res_g += WG[j / 2] * (lo + hi);
        }
        res_k += WGK[j] * (lo + hi);
        res_abs += WGK[j] * (lo.abs() + hi.abs());
    }
    let mean = 0.5 * res_k;
    let mut res_asc = WGK[10] * (fc - mean).abs();
    for j in 0..10 {
        res_asc += WGK[j] * ((f1[j] - mean).abs() + (f2[j] - mean).abs());
    }
    let scale = half.abs();
    Ok(Segment {
        a,
        b,
        result: res_k * half,
        error: rescale_error((res_k - res_g) * half, res_abs * scale, res_asc * scale),
        res_abs: res_abs * scale,
        depth,
    })
}

fn adaptive<F>(f: &F, points: &[f64], ctx: &PrecisionContext) -> Result<SeriesValue>
where
    F: Fn(f64) -> Result<f64>,
{
    let mut heap = BinaryHeap::new();
    let mut error_sum = 0.0;
    for w in points.windows(2) {
        if w[0] < w[1] {
            let seg = kronrod21(f, w[0], w[1], 0)?;
            error_sum += seg.error;
            heap.push(seg);
        }
    }
    let mut evaluations = 21 * heap.len();
    // Below this the Kronrod error estimate is pure rounding and further
    // bisection cannot reduce it.
    let floor = |heap: &BinaryHeap<Segment>| -> f64 {
        100.0 * f64::EPSILON * heap.iter().map(|s| s.res_abs).sum::<f64>()
    };
    while error_sum > ctx.abs_tol() && error_sum > floor(&heap) {
        let Some(worst) = heap.pop() else { break };
        let mid = 0.5 * (worst.a + worst.b);
        if worst.depth >= ctx.max_quadrature_depth()
            || heap.len() + 2 > MAX_SEGMENTS
            || mid <= worst.a
            || mid >= worst.b
        {
            return Err(Error::Budget {
                what: "adaptive quadrature",
                achieved: error_sum,
                requested: ctx.abs_tol(),
            });
        }
        let left = kronrod21(f, worst.a, mid, worst.depth + 1)?;
        let right = kronrod21(f, mid, worst.b, worst.depth + 1)?;
        evaluations += 42;
        error_sum += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
    }
    let mut value = CompensatedSum::new();
    let mut error = CompensatedSum::new();
    let mut res_abs = 0.0;
    for seg in &heap {
        value.add(seg.result);
        error.add(seg.error);
        res_abs += seg.res_abs;
    }
    Ok(SeriesValue {
        value: value.sum(),
        error_bound: error.sum(),
        rounding: 2.0 * f64::EPSILON * res_abs,
        terms_used: evaluations,
        converged: true,
    })
}

fn check_interval(a: f64, b: f64) -> Result<()> {
    if !(a.is_finite() && b.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "integration limits must be finite, got [{a}, {b}]"
        )));
    }
    if a > b {
        return Err(Error::InvalidArgument(format!(
            "integration limits out of order: {a} > {b}"
        )));
    }
    Ok(())
}

/// ∫ₐᵇ f with estimated error at most `ctx.abs_tol`.
pub fn integrate<F>(f: F, a: f64, b: f64, ctx: &PrecisionContext) -> Result<SeriesValue>
where
    F: Fn(f64) -> f64,
{
    try_integrate(|x| Ok(f(x)), a, b, ctx)
}

/// [`integrate`] for integrands that can fail.
pub fn try_integrate<F>(f: F, a: f64, b: f64, ctx: &PrecisionContext) -> Result<SeriesValue>
where
    F: Fn(f64) -> Result<f64>,
{
    check_interval(a, b)?;
    if a == b {
        return Ok(SeriesValue::exact(0.0));
    }
    adaptive(&f, &[a, b], ctx)
}

/// Integral over `[points[0], points[last]]`, with the interior points as
/// initial subdivisions.
pub fn integrate_with_breakpoints<F>(
    f: F,
    points: &[f64],
    ctx: &PrecisionContext,
) -> Result<SeriesValue>
where
    F: Fn(f64) -> Result<f64>,
{
    if points.len() < 2 {
        return Err(Error::InvalidArgument(
            "need at least two breakpoints".into(),
        ));
    }
    for w in points.windows(2) {
        check_interval(w[0], w[1])?;
    }
    adaptive(&f, points, ctx)
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

fn lg(ctx: &PrecisionContext) -> impl Fn(f64) -> Result<f64> {
    let inner = ctx.scaled(1e-2);
    move |t| Ok(log_gamma(t, &inner)?.value)
}

/// Breakpoints 0 < 1 < 2 < ... below `x`, then `x`.
fn unit_breaks(lo: f64, x: f64) -> Vec<f64> {
    let mut points = vec![lo];
    let mut k = lo.floor() + 1.0;
    while k < x {
        points.push(k);
        k += 1.0;
    }
    points.push(x);
    points
}

fn signed_integral<F>(f: F, a: f64, b: f64, ctx: &PrecisionContext) -> Result<SeriesValue>
where
    F: Fn(f64) -> Result<f64>,
{
    if a <= b {
        integrate_with_breakpoints(f, &unit_breaks(a, b), ctx)
    } else {
        let v = integrate_with_breakpoints(f, &unit_breaks(b, a), ctx)?;
        Ok(SeriesValue {
            value: -v.value,
            ..v
        })
    }
}

fn with_offset(v: SeriesValue, terms: &[f64]) -> SeriesValue {
    let mut sum: CompensatedSum = terms.iter().copied().collect();
    sum.add(v.value);
    SeriesValue {
        value: sum.sum(),
        rounding: v.rounding + 4.0 * f64::EPSILON * sum.abs_sum(),
        ..v
    }
}

/// ∫ₓ^{x+1} ln Γ(t) dt = x ln x − x + ln √(2π).
pub fn raabe_residual(x: f64, ctx: &PrecisionContext) -> Result<IdentityReport> {
    check_positive("raabe_residual", x)?;
    let lhs = integrate_with_breakpoints(lg(ctx), &unit_breaks(x, x + 1.0), ctx)?;
    let rhs: CompensatedSum = [x * x.ln(), -x, LN_SQRT_2PI].into_iter().collect();
    Ok(IdentityReport::propagated(
        format!("Raabe integral at x = {x}"),
        lhs.value,
        rhs.sum(),
        [lhs.uncertainty()],
    ))
}

/// ln Γ₁(x) = ∫₀ˣ ln Γ(t) dt + (x/2)(x − 1) − x ln √(2π).
pub fn log_gamma1_from_integral(x: f64, ctx: &PrecisionContext) -> Result<SeriesValue> {
    check_positive("log_gamma1_from_integral", x)?;
    let integral = integrate_with_breakpoints(lg(ctx), &unit_breaks(0.0, x), ctx)?;
    Ok(with_offset(
        integral,
        &[0.5 * x * (x - 1.0), -x * LN_SQRT_2PI],
    ))
}

/// ln Γ₁(x + 1) = ∫₀ˣ ln Γ(t + 1) dt + (x/2)(x + 1) − x ln √(2π).
pub fn log_gamma1_shifted_from_integral(x: f64, ctx: &PrecisionContext) -> Result<SeriesValue> {
    if !(x > -1.0 && x.is_finite()) {
        return Err(Error::Domain {
            function: "log_gamma1_shifted_from_integral",
            value: x,
            expected: "x > -1",
        });
    }
    let f = lg(ctx);
    let integral = signed_integral(|t| f(t + 1.0), 0.0, x, ctx)?;
    Ok(with_offset(
        integral,
        &[0.5 * x * (x + 1.0), -x * LN_SQRT_2PI],
    ))
}

/// ∫_{x−1}^{x} ln Γ₁(t + 1) dt with ln Γ₁(t + 1) taken from its integral
/// representation; the repeated integral is folded into single ones, so no
/// value of L₁ enters.
fn gamma1_raabe_lhs(x: f64, ctx: &PrecisionContext) -> Result<SeriesValue> {
    let lo = x - 1.0;
    let f = lg(ctx);
    let g = |u: f64| f(u + 1.0);
    let head = signed_integral(g, 0.0, lo, ctx)?;
    let weighted = integrate_with_breakpoints(|u| Ok((x - u) * g(u)?), &unit_breaks(lo, x), ctx)?;
    // ∫_{x−1}^{x} [t(t+1)/2 − t L₀] dt
    let cube = (x.powi(3) - lo.powi(3)) / 6.0;
    let square = (x * x - lo * lo) / 2.0;
    let poly = [cube, 0.5 * square, -LN_SQRT_2PI * square];
    let mut sum: CompensatedSum = poly.into_iter().collect();
    sum.add(head.value);
    sum.add(weighted.value);
    Ok(SeriesValue {
        value: sum.sum(),
        error_bound: head.error_bound + weighted.error_bound,
        rounding: head.rounding + weighted.rounding + 4.0 * f64::EPSILON * sum.abs_sum(),
        terms_used: head.terms_used + weighted.terms_used,
        converged: true,
    })
}

/// ∫_{x−1}^{x} ln Γ₁(t + 1) dt = (x²/2) ln x − x²/4 + L₁ − 1/12.
pub fn raabe_gamma1_residual(x: f64, ctx: &PrecisionContext) -> Result<IdentityReport> {
    check_positive("raabe_gamma1_residual", x)?;
    let lhs = gamma1_raabe_lhs(x, ctx)?;
    let l1 = l1_via_zeta_m1(ctx)?;
    let rhs: CompensatedSum = [0.5 * x * x * x.ln(), -0.25 * x * x, l1.value, -1.0 / 12.0]
        .into_iter()
        .collect();
    Ok(IdentityReport::propagated(
        format!("Gamma_1 Raabe integral at x = {x}"),
        lhs.value,
        rhs.sum(),
        [lhs.uncertainty(), l1.uncertainty()],
    ))
}

/// ∫₀¹ ln Γ₁(t + 1) dt = L₁ − 1/3.
pub fn gamma1_unit_integral_residual(ctx: &PrecisionContext) -> Result<IdentityReport> {
    let lhs = gamma1_raabe_lhs(1.0, ctx)?;
    let l1 = l1_via_zeta_m1(ctx)?;
    Ok(IdentityReport::propagated(
        "int_0^1 ln Gamma_1(x+1) dx = L1 - 1/3",
        lhs.value,
        l1.value - 1.0 / 3.0,
        [lhs.uncertainty(), l1.uncertainty()],
    ))
}

/// ∫₀¹ ln Γ₁(t) dt = L₁ − 1/12, with ln Γ₁(t) from ∫₀ᵗ ln Γ.
pub fn gamma1_unshifted_unit_integral_residual(ctx: &PrecisionContext) -> Result<IdentityReport> {
    // ∫₀¹ ∫₀ᵗ ln Γ(u) du dt = ∫₀¹ (1 − u) ln Γ(u) du
    let f = lg(ctx);
    let weighted = try_integrate(|u| Ok((1.0 - u) * f(u)?), 0.0, 1.0, ctx)?;
    let lhs = with_offset(weighted, &[-1.0 / 12.0, -0.5 * LN_SQRT_2PI]);
    let l1 = l1_via_zeta_m1(ctx)?;
    Ok(IdentityReport::propagated(
        "int_0^1 ln Gamma_1(x) dx = L1 - 1/12",
        lhs.value,
        l1.value - 1.0 / 12.0,
        [lhs.uncertainty(), l1.uncertainty()],
    ))
}

/// The half-argument identities:
///
/// - ∫₀^{1/2} ln Γ = (3/2)L₁ + (5/24) ln 2 + (1/4) ln π
/// - ln Γ₁(1/2) = (3/2)L₁ − 1/8 − (1/24) ln 2
/// - ln Γ₁(3/2) = ½ ln ½ + ln Γ₁(1/2)
/// - ln Γ₁(3/2) = −(13/24) ln 2 + (3/2)L₁ − 1/8
/// - ∫₀^{1/2} ln Γ(x+1) = −(7/24) ln 2 + (3/2)L₁ − ½ + (1/4) ln π
pub fn half_integral_residuals(ctx: &PrecisionContext) -> Result<Vec<IdentityReport>> {
    let l1 = l1_via_zeta_m1(ctx)?;
    let l1u = l1.uncertainty();
    let f = lg(ctx);

    let int0 = try_integrate(&f, 0.0, 0.5, ctx)?;
    let int1 = try_integrate(|x| f(x + 1.0), 0.0, 0.5, ctx)?;
    let lg1_half = log_gamma1_from_integral(0.5, ctx)?;
    let lg1_three_halves = log_gamma1_shifted_from_integral(0.5, ctx)?;
    let lg1_half_series = log_gamma1(0.5, l1.value, ctx)?;

    let sum = |terms: &[f64]| terms.iter().copied().collect::<CompensatedSum>().sum();
    Ok(vec![
        IdentityReport::propagated(
            "int_0^(1/2) ln Gamma(x) dx = (3/2) L1 + (5/24) ln 2 + (1/4) ln pi",
            int0.value,
            sum(&[1.5 * l1.value, 5.0 / 24.0 * LN_2, 0.25 * LN_PI]),
            [int0.uncertainty(), 1.5 * l1u],
        ),
        IdentityReport::propagated(
            "ln Gamma_1(1/2) = (3/2) L1 - 1/8 - (1/24) ln 2",
            lg1_half.value,
            sum(&[1.5 * l1.value, -0.125, -LN_2 / 24.0]),
            [lg1_half.uncertainty(), 1.5 * l1u],
        ),
        IdentityReport::propagated(
            "ln Gamma_1(3/2) = (1/2) ln(1/2) + ln Gamma_1(1/2)",
            lg1_three_halves.value,
            -0.5 * LN_2 + lg1_half_series.value,
            [
                lg1_three_halves.uncertainty(),
                lg1_half_series.uncertainty(),
            ],
        ),
        IdentityReport::propagated(
            "ln Gamma_1(3/2) = -(13/24) ln 2 + (3/2) L1 - 1/8",
            lg1_three_halves.value,
            sum(&[-13.0 / 24.0 * LN_2, 1.5 * l1.value, -0.125]),
            [lg1_three_halves.uncertainty(), 1.5 * l1u],
        ),
        IdentityReport::propagated(
            "int_0^(1/2) ln Gamma(x+1) dx = -(7/24) ln 2 + (3/2) L1 - 1/2 + (1/4) ln pi",
            int1.value,
            sum(&[-7.0 / 24.0 * LN_2, 1.5 * l1.value, -0.5, 0.25 * LN_PI]),
            [int1.uncertainty(), 1.5 * l1u],
        ),
    ])
}

/// ln Γ₁(x + 1) by ∫₀ˣ ln Γ(t + 1) against ∫₀ˣ ln Γ(t) plus x ln x.
pub fn gamma1_route_consistency(x: f64, ctx: &PrecisionContext) -> Result<IdentityReport> {
    check_positive("gamma1_route_consistency", x)?;
    let shifted = log_gamma1_shifted_from_integral(x, ctx)?;
    let plain = log_gamma1_from_integral(x, ctx)?;
    Ok(IdentityReport::propagated(
        format!("ln Gamma_1(x+1) integral routes at x = {x}"),
        shifted.value,
        plain.value + x * x.ln(),
        [shifted.uncertainty(), plain.uncertainty()],
    ))
}
