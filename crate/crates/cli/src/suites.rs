use std::f64::consts::{LN_2, PI};

use gamma1lab::constants::{
    glaisher_bundle, l1_bundle, l1_via_zeta_m1, printed, zeta_prime_link, EULER_GAMMA, LN_PI,
    LN_SQRT_2PI,
};
use gamma1lab::gamma::{hyperfactorial, log_gamma, log_gamma1};
use gamma1lab::qed::{
    beta_log_slope, gamma_integral_term, lagrangian_point, relative_deviation, FieldConfig, Kind,
    LagrangianPoint, Route, StrongConstants,
};
use gamma1lab::quadrature::{
    gamma1_route_consistency, gamma1_unit_integral_residual,
    gamma1_unshifted_unit_integral_residual, half_integral_residuals, log_gamma1_from_integral,
    raabe_gamma1_residual, raabe_residual, try_integrate,
};
use gamma1lab::zeta::{
    functional_equation_residual, jacobi_psi, xi_integral, xi_product, zeta, zeta_em, zeta_prime,
    zeta_prime_em,
};
use gamma1lab::{Error, IdentityReport, PrecisionContext, Result};
use num_traits::ToPrimitive;

use crate::document::{ReportDocument, Section, ValueRow};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Zeta,
    Gamma,
    Raabe,
    Qed,
    All,
}

pub const DEFAULT_TOL: f64 = 1e-9;
/// Internal target handed to the kernels whatever the report tolerance is.
pub const INTERNAL_TOL: f64 = 1e-12;

pub fn context_for(tol: f64) -> Result<PrecisionContext> {
    PrecisionContext::default().with_abs_tol(tol.min(INTERNAL_TOL))
}

/// `points` log-spaced values from `b_min` to `b_max` inclusive.
pub fn log_grid(b_min: f64, b_max: f64, points: usize) -> Result<Vec<f64>> {
    if !(b_min > 0.0 && b_min <= b_max && b_max.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "need 0 < b-min <= b-max, got b-min = {b_min}, b-max = {b_max}"
        )));
    }
    if points == 0 {
        return Err(Error::InvalidArgument("points must be at least 1".into()));
    }
    if points == 1 || b_min == b_max {
        return Ok(vec![b_min; points]);
    }
    let (lo, hi) = (b_min.log10(), b_max.log10());
    let step = (hi - lo) / (points - 1) as f64;
    Ok((0..points)
        .map(|i| match i {
            0 => b_min,
            i if i == points - 1 => b_max,
            i => 10f64.powf(lo + step * i as f64),
        })
        .collect())
}

fn floored(reports: Vec<IdentityReport>, tol: f64) -> Vec<IdentityReport> {
    reports
        .into_iter()
        .map(|r| {
            if r.tolerance() < tol {
                r.with_tolerance(tol)
            } else {
                r
            }
        })
        .collect()
}

fn identities(title: &str, reports: Vec<IdentityReport>) -> Section {
    Section::Identities {
        title: title.into(),
        reports,
    }
}

fn truncate(v: f64, decimals: i32) -> f64 {
    let scale = 10f64.powi(decimals);
    (v * scale).trunc() / scale
}

fn printed_check(name: &str, computed: f64, printed: f64, half_unit: f64) -> IdentityReport {
    IdentityReport::new(
        format!("{name} matches printed {printed}"),
        computed,
        printed,
        half_unit,
    )
}

pub fn constants_document(ctx: &PrecisionContext, tol: f64) -> Result<ReportDocument> {
    let l1 = l1_bundle(ctx)?;
    let a = glaisher_bundle(ctx)?;
    let zeta2 = zeta(2.0, ctx)?;
    let zeta3 = zeta(3.0, ctx)?;
    let zp2 = zeta_prime(2.0, ctx)?;
    let zpm1 = zeta_prime(-1.0, ctx)?;
    let zpm2 = zeta_prime(-2.0, ctx)?;

    let rows = vec![
        ValueRow::new(
            "L0 = ln sqrt(2 pi)",
            LN_SQRT_2PI,
            f64::EPSILON * LN_SQRT_2PI,
        ),
        ValueRow::new("C (Euler)", EULER_GAMMA, f64::EPSILON * EULER_GAMMA),
        ValueRow::from_series("L1 via zeta'(-1)", &l1.via_zeta_m1),
        ValueRow::from_series("L1 via zeta'(2)", &l1.via_zeta_2),
        ValueRow::from_series("L1 via asymptotic (x = 10)", &l1.via_asymptotic),
        ValueRow::new("L1 spread", l1.spread, 0.0),
        ValueRow::from_series("A via zeta'(-1)", &a.via_zeta_m1),
        ValueRow::from_series("A via zeta'(2)", &a.via_zeta_2),
        ValueRow::from_series("A via half integral", &a.via_half_integral),
        ValueRow::from_series("A via shifted half integral", &a.via_half_integral_shifted),
        ValueRow::new("A spread", a.spread, 0.0),
        ValueRow::from_series("zeta(2)", &zeta2),
        ValueRow::from_series("zeta(3)", &zeta3),
        ValueRow::from_series("zeta'(2)", &zp2),
        ValueRow::from_series("zeta'(-1)", &zpm1),
        ValueRow::from_series("zeta'(-2)", &zpm2),
    ];
    let worst_bound = rows.iter().map(|r| r.error_bound).fold(0.0, f64::max);

    let mut checks = Vec::new();
    for (route, v) in [
        ("L1 via zeta'(-1)", l1.via_zeta_m1.value),
        ("L1 via zeta'(2)", l1.via_zeta_2.value),
        ("L1 via asymptotic", l1.via_asymptotic.value),
    ] {
        checks.push(printed_check(route, v, printed::L1, 5e-10));
    }
    checks.push(IdentityReport::new(
        "L1 pairwise spread",
        l1.spread,
        0.0,
        1e-9,
    ));
    for (route, v) in [
        "A via zeta'(-1)",
        "A via zeta'(2)",
        "A via half integral",
        "A via shifted half integral",
    ]
    .into_iter()
    .zip(a.values())
    {
        checks.push(printed_check(route, v, printed::GLAISHER, 5e-10));
    }
    checks.push(IdentityReport::new(
        "zeta'(2) truncated to 5 decimals matches printed -0.93754",
        truncate(zp2.value, 5),
        printed::ZETA_PRIME_2,
        1e-15,
    ));
    checks.push(printed_check(
        "zeta'(-1)",
        zpm1.value,
        printed::ZETA_PRIME_M1,
        5e-7,
    ));
    checks.push(printed_check("zeta(3)", zeta3.value, printed::ZETA3, 5e-12));
    checks.push(printed_check("C", EULER_GAMMA, printed::EULER_GAMMA, 5e-10));
    checks.push(IdentityReport::new(
        "largest error bound within tolerance",
        worst_bound,
        0.0,
        tol,
    ));

    let mut doc = ReportDocument::new(*ctx);
    doc.push(Section::Values {
        title: "constants".into(),
        rows,
    });
    doc.push(identities("printed values", checks));
    Ok(doc)
}

fn zeta_suite(ctx: &PrecisionContext, tol: f64) -> Result<Vec<Section>> {
    let mut fe = Vec::new();
    for s in [0.3, 0.5, 2.0, 3.0, 2.5, -1.5] {
        fe.push(functional_equation_residual(s, ctx)?);
    }

    let mut xi = Vec::new();
    for s in [0.1, 0.25, 0.4] {
        let a = xi_product(s, ctx)?;
        let b = xi_product(1.0 - s, ctx)?;
        xi.push(IdentityReport::propagated(
            format!("xi({s}) = xi({})", 1.0 - s),
            a.value,
            b.value,
            [a.uncertainty(), b.uncertainty()],
        ));
    }
    for s in [0.3, 0.5, 2.0] {
        let a = xi_integral(s, ctx)?;
        let b = xi_product(s, ctx)?;
        xi.push(IdentityReport::propagated(
            format!("xi({s}) integral = product"),
            a.value,
            b.value,
            [a.uncertainty(), b.uncertainty()],
        ));
    }
    for x in [0.5, 0.7, 1.3] {
        let p = jacobi_psi(x, ctx)?;
        let q = jacobi_psi(1.0 / x, ctx)?;
        let lhs = 2.0 * p.value + 1.0;
        let rhs = (2.0 * q.value + 1.0) / x.sqrt();
        xi.push(IdentityReport::propagated(
            format!("2 psi(x) + 1 = (2 psi(1/x) + 1)/sqrt(x) at x = {x}"),
            lhs,
            rhs,
            [2.0 * p.uncertainty(), 2.0 * q.uncertainty() / x.sqrt()],
        ));
    }

    let mut values = Vec::new();
    for s in [3.0, 5.0, 8.0] {
        let a = zeta(s, ctx)?;
        let b = zeta_em(s, ctx)?;
        values.push(IdentityReport::propagated(
            format!("zeta({s}) eta route = Euler-Maclaurin"),
            a.value,
            b.value,
            [a.uncertainty(), b.uncertainty()],
        ));
    }
    let z2 = zeta(2.0, ctx)?;
    values.push(IdentityReport::propagated(
        "zeta(2) = pi^2/6",
        z2.value,
        PI * PI / 6.0,
        [z2.uncertainty()],
    ));
    let z3 = zeta(3.0, ctx)?;
    let zpm2 = zeta_prime_em(-2.0, ctx)?;
    values.push(IdentityReport::propagated(
        "zeta(3) = -4 pi^2 zeta'(-2)",
        z3.value,
        -4.0 * PI * PI * zpm2.value,
        [z3.uncertainty(), 4.0 * PI * PI * zpm2.uncertainty()],
    ));
    let closed = zeta_prime(-1.0, ctx)?;
    let em = zeta_prime_em(-1.0, ctx)?;
    values.push(IdentityReport::propagated(
        "zeta'(-1) closed form = Euler-Maclaurin",
        closed.value,
        em.value,
        [closed.uncertainty(), em.uncertainty()],
    ));
    values.push(zeta_prime_link(ctx)?);

    Ok(vec![
        identities("zeta functional equation", floored(fe, tol)),
        identities("xi and theta symmetry", floored(xi, tol)),
        identities("zeta values", floored(values, tol)),
    ])
}

fn gamma_suite(ctx: &PrecisionContext, tol: f64) -> Result<Vec<Section>> {
    let l1 = l1_via_zeta_m1(ctx)?.value;
    let lg = |x: f64| log_gamma(x, ctx);
    let lg1 = |x: f64| log_gamma1(x, l1, ctx);

    let mut rec = Vec::new();
    for x in [0.1, 0.5, 1.7, 3.3, 9.5, 12.25, 25.7] {
        let (a, b) = (lg(x + 1.0)?, lg(x)?);
        rec.push(IdentityReport::propagated(
            format!("ln G({}) - ln G({x}) = ln {x}", x + 1.0),
            a.value - b.value,
            x.ln(),
            [a.uncertainty(), b.uncertainty()],
        ));
    }
    for x in [0.1, 0.5, 1.7, 3.3, 9.5, 12.25] {
        let (a, b) = (lg1(x + 1.0)?, lg1(x)?);
        rec.push(IdentityReport::propagated(
            format!("ln G1({}) - ln G1({x}) = {x} ln {x}", x + 1.0),
            a.value - b.value,
            x * x.ln(),
            [a.uncertainty(), b.uncertainty()],
        ));
    }

    let mut hyper = Vec::new();
    for n in 1..=12u32 {
        let h = hyperfactorial(n)?
            .to_f64()
            .ok_or_else(|| Error::InvalidArgument(format!("H({n}) does not fit in f64")))?;
        let g = lg1(f64::from(n) + 1.0)?;
        hyper.push(IdentityReport::propagated(
            format!("ln H({n}) = ln G1({})", n + 1),
            h.ln(),
            g.value,
            [g.uncertainty()],
        ));
    }

    let mut special = Vec::new();
    for x in [0.3, 1.25, 4.5] {
        let (a, b, c) = (lg(x)?, lg(x + 0.5)?, lg(2.0 * x)?);
        special.push(IdentityReport::propagated(
            format!("duplication formula at x = {x}"),
            a.value + b.value,
            (1.0 - 2.0 * x) * LN_2 + 0.5 * LN_PI + c.value,
            [a.uncertainty(), b.uncertainty(), c.uncertainty()],
        ));
    }
    for x in [0.1, 0.3, 0.5] {
        let (a, b) = (lg(x)?, lg(1.0 - x)?);
        special.push(IdentityReport::propagated(
            format!("reflection formula at x = {x}"),
            a.value + b.value,
            (PI / (PI * x).sin()).ln(),
            [a.uncertainty(), b.uncertainty()],
        ));
    }
    let half = lg(0.5)?;
    special.push(IdentityReport::propagated(
        "ln G(1/2) = (1/2) ln pi",
        half.value,
        0.5 * LN_PI,
        [half.uncertainty()],
    ));
    for (x, expected) in [(1.0, 0.0), (2.0, 0.0), (3.0, 2.0 * LN_2)] {
        let g = lg1(x)?;
        special.push(IdentityReport::propagated(
            format!("ln G1({x}) = {expected}"),
            g.value,
            expected,
            [g.uncertainty()],
        ));
    }
    for x in [0.5, 1.5, 3.0] {
        let a = lg1(x)?;
        let b = log_gamma1_from_integral(x, ctx)?;
        special.push(IdentityReport::propagated(
            format!("ln G1({x}) series = integral"),
            a.value,
            b.value,
            [a.uncertainty(), b.uncertainty()],
        ));
    }

    Ok(vec![
        identities("gamma recurrences", floored(rec, tol)),
        identities("hyperfactorial", floored(hyper, tol)),
        identities("gamma special values", floored(special, tol)),
    ])
}

fn raabe_suite(ctx: &PrecisionContext, tol: f64) -> Result<Vec<Section>> {
    let mut raabe = Vec::new();
    for x in [1e-6, 0.5, 1.0, 7.5] {
        raabe.push(raabe_residual(x, ctx)?);
    }
    for x in [1.0, 2.0, 4.0] {
        raabe.push(raabe_gamma1_residual(x, ctx)?);
    }
    let unit = try_integrate(|x| Ok(log_gamma(x, ctx)?.value), 0.0, 1.0, ctx)?;
    raabe.push(IdentityReport::propagated(
        "int_0^1 ln G(x) dx = L0",
        unit.value,
        LN_SQRT_2PI,
        [unit.uncertainty()],
    ));

    let mut unit_integrals = vec![
        gamma1_unit_integral_residual(ctx)?,
        gamma1_unshifted_unit_integral_residual(ctx)?,
    ];
    unit_integrals.extend(half_integral_residuals(ctx)?);
    for x in [0.5, 2.0, 3.5] {
        unit_integrals.push(gamma1_route_consistency(x, ctx)?);
    }

    Ok(vec![
        identities("Raabe integrals", floored(raabe, tol)),
        identities("unit and half-unit integrals", floored(unit_integrals, tol)),
    ])
}

pub const QED_GRID: [f64; 4] = [1.0, 1e2, 1e3, 1e4];
const ASYMPTOTIC_GRID: [f64; 3] = [1e2, 1e3, 1e4];
const SLOPE_GRID: [f64; 2] = [1e4, 1e5];

/// Largest relative deviation allowed between proper time and the strong
/// form at b = 100.
pub const STRONG_ONSET_TOL: f64 = 5e-2;

fn points(
    kind: Kind,
    grid: &[f64],
    routes: &[Route],
    c: &StrongConstants,
    ctx: &PrecisionContext,
) -> Result<Vec<LagrangianPoint>> {
    grid.iter()
        .map(|&b| lagrangian_point(kind, &FieldConfig::with_b(b)?, routes, c, ctx))
        .collect()
}

fn at(points: &[LagrangianPoint], b: f64) -> &LagrangianPoint {
    points
        .iter()
        .find(|p| p.b == b)
        .expect("grid point was evaluated")
}

fn monotone_report(name: String, devs: &[f64]) -> IdentityReport {
    let worst = devs
        .windows(2)
        .map(|w| w[1] - w[0])
        .fold(f64::NEG_INFINITY, f64::max);
    IdentityReport::new(name, worst.max(0.0), 0.0, 0.0)
}

fn strong_agreement(points: &[LagrangianPoint], kind: Kind, reports: &mut Vec<IdentityReport>) {
    for p in points {
        let zeta = p.strong_zeta.unwrap_or(f64::NAN);
        for (label, other) in [("ritus", p.strong_ritus), ("gamma1", p.strong_gamma1)] {
            if let Some(v) = other {
                reports.push(IdentityReport::new(
                    format!("{kind:?} strong zeta = strong {label} at b = {}", p.b),
                    zeta,
                    v,
                    1e-12 * zeta.abs(),
                ));
            }
        }
    }
}

fn qed_suite(ctx: &PrecisionContext) -> Result<Vec<Section>> {
    let c = StrongConstants::compute(ctx)?;
    let mut grid: Vec<f64> = QED_GRID.to_vec();
    grid.extend(SLOPE_GRID.iter().filter(|b| !QED_GRID.contains(b)));
    let spinor = points(Kind::Spinor, &grid, &Route::ALL, &c, ctx)?;
    let scalar = points(Kind::Scalar, &grid, &Route::ALL, &c, ctx)?;

    let mut reports = Vec::new();
    let one = at(&spinor, 1.0);
    let (pt, cf) = (
        one.proper_time.unwrap_or(f64::NAN),
        one.closed_form.unwrap_or(f64::NAN),
    );
    reports.push(IdentityReport::new(
        "spinor proper time = closed form at b = 1",
        pt,
        cf,
        1e-8 * cf.abs(),
    ));

    for (kind, pts, onset) in [
        (Kind::Spinor, &spinor, STRONG_ONSET_TOL),
        (Kind::Scalar, &scalar, 3e-2),
    ] {
        let mut devs = Vec::new();
        for &b in &ASYMPTOTIC_GRID {
            let p = at(pts, b);
            let strong = p.strong_zeta.unwrap_or(f64::NAN);
            let pt = p.proper_time.unwrap_or(f64::NAN);
            devs.push(relative_deviation(pt, strong));
            if b == ASYMPTOTIC_GRID[0] {
                reports.push(IdentityReport::new(
                    format!("{kind:?} proper time = strong form at b = {b}"),
                    pt,
                    strong,
                    onset * strong.abs(),
                ));
            }
        }
        reports.push(monotone_report(
            format!("{kind:?} proper-time vs strong deviation decreasing over b = 1e2, 1e3, 1e4"),
            &devs,
        ));
    }

    strong_agreement(&spinor, Kind::Spinor, &mut reports);
    strong_agreement(&scalar, Kind::Scalar, &mut reports);

    let big = at(&spinor, 1e4);
    let strong = big.strong_zeta.unwrap_or(f64::NAN);
    reports.push(IdentityReport::new(
        "spinor closed form = strong form at b = 1e4 within 10/b",
        big.closed_form.unwrap_or(f64::NAN),
        strong,
        10.0 / 1e4 * strong.abs(),
    ));

    let target = -EULER_GAMMA / 8.0;
    let mut devs = Vec::new();
    for &b in &ASYMPTOTIC_GRID {
        let g = gamma_integral_term(b, ctx)?;
        devs.push((g.value - target).abs());
        reports.push(IdentityReport::new(
            format!("b^2 int_1^(1+1/2b) ln G = -C/8 at b = {b}"),
            g.value,
            target,
            if b == 1e4 { 1e-5 } else { 0.1 / b },
        ));
    }
    reports.push(monotone_report(
        "gamma-integral deviation decreasing in b".into(),
        &devs,
    ));

    let strong_slope_grid = [1e3, 1e4, 1e5];
    for (kind, pts) in [(Kind::Spinor, &spinor), (Kind::Scalar, &scalar)] {
        let strong: Vec<LagrangianPoint> = pts
            .iter()
            .filter(|p| strong_slope_grid.contains(&p.b))
            .copied()
            .collect();
        let slope = beta_log_slope(&strong, kind, Route::StrongZeta)?;
        reports.push(IdentityReport::new(
            format!("{kind:?} strong-form log slope = 1"),
            slope,
            1.0,
            1e-10,
        ));
        let tail: Vec<LagrangianPoint> = pts
            .iter()
            .filter(|p| SLOPE_GRID.contains(&p.b))
            .copied()
            .collect();
        let slope = beta_log_slope(&tail, kind, Route::ProperTime)?;
        reports.push(IdentityReport::new(
            format!("{kind:?} proper-time log slope over b = 1e4, 1e5 = 1"),
            slope,
            1.0,
            1e-2,
        ));
    }

    Ok(vec![
        identities("QED representation agreement", reports),
        Section::Lagrangian {
            title: "spinor Lagrangian".into(),
            field: Kind::Spinor,
            points: spinor,
        },
        Section::Lagrangian {
            title: "scalar Lagrangian".into(),
            field: Kind::Scalar,
            points: scalar,
        },
    ])
}

pub fn verify_document(suite: Suite, ctx: &PrecisionContext, tol: f64) -> Result<ReportDocument> {
    let mut doc = ReportDocument::new(*ctx);
    let mut sections = Vec::new();
    if matches!(suite, Suite::Zeta | Suite::All) {
        sections.extend(zeta_suite(ctx, tol)?);
    }
    if matches!(suite, Suite::Gamma | Suite::All) {
        sections.extend(gamma_suite(ctx, tol)?);
    }
    if matches!(suite, Suite::Raabe | Suite::All) {
        sections.extend(raabe_suite(ctx, tol)?);
    }
    if matches!(suite, Suite::Qed | Suite::All) {
        sections.extend(qed_suite(ctx)?);
    }
    for s in sections {
        doc.push(s);
    }
    Ok(doc)
}

pub fn lagrangian_document(
    kind: Kind,
    grid: &[f64],
    routes: &[Route],
    ctx: &PrecisionContext,
) -> Result<ReportDocument> {
    let c = StrongConstants::compute(ctx)?;
    let mut doc = ReportDocument::new(*ctx);
    doc.push(Section::Lagrangian {
        title: format!("{kind:?} Lagrangian").to_lowercase(),
        field: kind,
        points: points(kind, grid, routes, &c, ctx)?,
    });
    Ok(doc)
}
