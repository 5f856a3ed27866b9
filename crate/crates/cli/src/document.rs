use chrono::{DateTime, SecondsFormat, Utc};
use gamma1lab::qed::{Kind, LagrangianPoint};
use gamma1lab::{IdentityReport, PrecisionContext, SeriesValue};
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ValueRow {
    pub name: String,
    pub value: f64,
    /// Method error plus rounding estimate.
    pub error_bound: f64,
}

impl ValueRow {
    pub fn new(name: impl Into<String>, value: f64, error_bound: f64) -> Self {
        Self {
            name: name.into(),
            value,
            error_bound,
        }
    }

    pub fn from_series(name: impl Into<String>, v: &SeriesValue) -> Self {
        Self::new(name, v.value, v.uncertainty())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Section {
    Values {
        title: String,
        rows: Vec<ValueRow>,
    },
    Identities {
        title: String,
        reports: Vec<IdentityReport>,
    },
    Lagrangian {
        title: String,
        field: Kind,
        points: Vec<LagrangianPoint>,
    },
}

impl Section {
    pub fn title(&self) -> &str {
        match self {
            Section::Values { title, .. }
            | Section::Identities { title, .. }
            | Section::Lagrangian { title, .. } => title,
        }
    }

    pub fn reports(&self) -> &[IdentityReport] {
        match self {
            Section::Identities { reports, .. } => reports,
            _ => &[],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportDocument {
    pub tool_version: String,
    pub timestamp: String,
    pub context: PrecisionContext,
    pub sections: Vec<Section>,
}

impl ReportDocument {
    pub fn new(context: PrecisionContext) -> Self {
        Self {
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            timestamp: timestamp(),
            context,
            sections: Vec::new(),
        }
    }

    pub fn push(&mut self, section: Section) {
        self.sections.push(section);
    }

    pub fn reports(&self) -> impl Iterator<Item = &IdentityReport> {
        self.sections.iter().flat_map(Section::reports)
    }

    pub fn all_pass(&self) -> bool {
        self.reports().all(IdentityReport::pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &IdentityReport> {
        self.reports().filter(|r| !r.pass())
    }
}

/// RFC 3339 UTC time, pinned by `SOURCE_DATE_EPOCH` when it is set.
fn timestamp() -> String {
    let pinned = std::env::var("SOURCE_DATE_EPOCH")
        .ok()
        .and_then(|s| s.trim().parse::<i64>().ok())
        .and_then(|secs| DateTime::<Utc>::from_timestamp(secs, 0));
    pinned
        .unwrap_or_else(Utc::now)
        .to_rfc3339_opts(SecondsFormat::Secs, true)
}
