use std::fmt::Write as _;
use std::io;

use gamma1lab::qed::LagrangianPoint;

use crate::document::{ReportDocument, Section, ValueRow};

pub const LAGRANGIAN_COLUMNS: [&str; 7] = [
    "b",
    "proper_time",
    "closed_form",
    "strong_zeta",
    "strong_ritus",
    "strong_gamma1",
    "max_pairwise_dev",
];

const SIGNIFICANT: i32 = 10;

fn exponent(v: f64) -> i32 {
    v.abs().log10().floor() as i32
}

/// `v` to ten significant digits.
pub fn significant(v: f64) -> String {
    if v == 0.0 || !v.is_finite() {
        return format!("{v}");
    }
    let e = exponent(v);
    if (-4..10).contains(&e) {
        let decimals = (SIGNIFICANT - 1 - e).max(0) as usize;
        format!("{v:.decimals$}")
    } else {
        format!("{v:.prec$e}", prec = (SIGNIFICANT - 1) as usize)
    }
}

/// Whether `error` exceeds half a unit in the tenth significant digit.
fn last_digit_uncertain(v: f64, error: f64) -> bool {
    if v == 0.0 || !v.is_finite() {
        return error > 0.0;
    }
    error > 0.5 * 10f64.powi(exponent(v) - (SIGNIFICANT - 1))
}

fn value_cell(row: &ValueRow) -> String {
    let flag = if last_digit_uncertain(row.value, row.error_bound) {
        "*"
    } else {
        ""
    };
    format!("{}{flag}", significant(row.value))
}

fn optional(v: Option<f64>) -> String {
    v.map(significant).unwrap_or_else(|| "-".into())
}

pub fn table(doc: &ReportDocument) -> String {
    let mut out = String::new();
    let ctx = &doc.context;
    let _ = writeln!(
        out,
        "gamma1lab {} ({})  abs_tol = {:e}",
        doc.tool_version,
        doc.timestamp,
        ctx.abs_tol()
    );
    let mut flagged = false;
    for section in &doc.sections {
        let _ = writeln!(out, "\n== {} ==", section.title());
        match section {
            Section::Values { rows, .. } => {
                let width = rows.iter().map(|r| r.name.len()).max().unwrap_or(0);
                for row in rows {
                    let cell = value_cell(row);
                    flagged |= cell.ends_with('*');
                    let _ = writeln!(
                        out,
                        "  {:width$}  {:>20}  ± {:.1e}",
                        row.name, cell, row.error_bound
                    );
                }
            }
            Section::Identities { reports, .. } => {
                for r in reports {
                    let _ = writeln!(
                        out,
                        "  [{}] {}\n         lhs = {}  rhs = {}  |diff| = {:.2e}  tol = {:.2e}",
                        if r.pass() { "PASS" } else { "FAIL" },
                        r.name(),
                        significant(r.lhs()),
                        significant(r.rhs()),
                        r.abs_residual(),
                        r.tolerance()
                    );
                }
            }
            Section::Lagrangian { points, .. } => {
                let _ = writeln!(
                    out,
                    "  {:>9} {:>18} {:>18} {:>18} {:>18} {:>18} {:>10}",
                    "b",
                    "proper_time",
                    "closed_form",
                    "strong_zeta",
                    "strong_ritus",
                    "strong_gamma1",
                    "max_dev"
                );
                for p in points {
                    let _ = writeln!(
                        out,
                        "  {:>9.3e} {:>18} {:>18} {:>18} {:>18} {:>18} {:>10.2e}",
                        p.b,
                        optional(p.proper_time),
                        optional(p.closed_form),
                        optional(p.strong_zeta),
                        optional(p.strong_ritus),
                        optional(p.strong_gamma1),
                        p.pairwise_max_dev
                    );
                }
            }
        }
    }
    let total = doc.reports().count();
    let failed = doc.failures().count();
    if total > 0 {
        let _ = writeln!(out, "\n{} of {total} checks passed", total - failed);
    }
    if flagged {
        let _ = writeln!(
            out,
            "* last printed digit is not covered by the error bound"
        );
    }
    out
}

pub fn json(doc: &ReportDocument) -> serde_json::Result<String> {
    serde_json::to_string_pretty(doc)
}

fn cell(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

pub fn write_lagrangian_csv<W: io::Write>(points: &[LagrangianPoint], sink: W) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(sink);
    w.write_record(LAGRANGIAN_COLUMNS)?;
    for p in points {
        w.write_record([
            p.b.to_string(),
            cell(p.proper_time),
            cell(p.closed_form),
            cell(p.strong_zeta),
            cell(p.strong_ritus),
            cell(p.strong_gamma1),
            p.pairwise_max_dev.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// The document's data table as CSV: Lagrangian points if there are any,
/// otherwise the identity checks, otherwise the value rows.
pub fn write_csv<W: io::Write>(doc: &ReportDocument, sink: W) -> csv::Result<()> {
    let points: Vec<LagrangianPoint> = doc
        .sections
        .iter()
        .filter_map(|s| match s {
            Section::Lagrangian { points, .. } => Some(points.iter().copied()),
            _ => None,
        })
        .flatten()
        .collect();
    if !points.is_empty() {
        return write_lagrangian_csv(&points, sink);
    }
    let mut w = csv::Writer::from_writer(sink);
    if doc.reports().next().is_some() {
        w.write_record([
            "name",
            "lhs",
            "rhs",
            "abs_residual",
            "rel_residual",
            "tolerance",
            "pass",
        ])?;
        for r in doc.reports() {
            w.write_record([
                r.name().to_string(),
                r.lhs().to_string(),
                r.rhs().to_string(),
                r.abs_residual().to_string(),
                r.rel_residual().to_string(),
                r.tolerance().to_string(),
                r.pass().to_string(),
            ])?;
        }
    } else {
        w.write_record(["name", "value", "error_bound"])?;
        for s in &doc.sections {
            if let Section::Values { rows, .. } = s {
                for row in rows {
                    w.write_record([
                        row.name.clone(),
                        row.value.to_string(),
                        row.error_bound.to_string(),
                    ])?;
                }
            }
        }
    }
    w.flush()?;
    Ok(())
}
