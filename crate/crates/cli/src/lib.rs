//! Report assembly and rendering behind the `gamma1lab` binary.

pub mod document;
pub mod render;
pub mod suites;

pub use document::{ReportDocument, Section, ValueRow};
pub use suites::Suite;
