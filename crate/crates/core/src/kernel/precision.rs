use serde::Serialize;

use crate::{Error, Result};

/// Tolerance target and work budgets handed to every evaluator.
///
/// Operations taking a context either meet `abs_tol` or return an error;
/// they never hand back a value silently less accurate than requested.
/// Quadrature stops early only when its error estimate has reached the
/// rounding level of the integrand, and the Lagrangian routes read the
/// tolerance relative to the size of the result.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PrecisionContext {
    abs_tol: f64,
    max_series_terms: usize,
    max_quadrature_depth: usize,
    max_em_terms: usize,
}

impl Default for PrecisionContext {
    fn default() -> Self {
        Self {
            abs_tol: 1e-12,
            max_series_terms: 500,
            max_quadrature_depth: 64,
            max_em_terms: 40,
        }
    }
}

impl PrecisionContext {
    pub fn new(
        abs_tol: f64,
        max_series_terms: usize,
        max_quadrature_depth: usize,
        max_em_terms: usize,
    ) -> Result<Self> {
        if !(abs_tol > 0.0 && abs_tol.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "abs_tol must be positive and finite, got {abs_tol}"
            )));
        }
        if max_series_terms == 0 || max_quadrature_depth == 0 || max_em_terms == 0 {
            return Err(Error::InvalidArgument(
                "all budget caps must be at least 1".into(),
            ));
        }
        Ok(Self {
            abs_tol,
            max_series_terms,
            max_quadrature_depth,
            max_em_terms,
        })
    }

    /// Same budgets, different tolerance.
    pub fn with_abs_tol(self, abs_tol: f64) -> Result<Self> {
        Self::new(
            abs_tol,
            self.max_series_terms,
            self.max_quadrature_depth,
            self.max_em_terms,
        )
    }

    /// Tolerance scaled by `factor`, clamped so it stays positive.
    pub(crate) fn scaled(self, factor: f64) -> Self {
        Self {
            abs_tol: (self.abs_tol * factor).max(f64::MIN_POSITIVE),
            ..self
        }
    }

    pub fn abs_tol(&self) -> f64 {
        self.abs_tol
    }

    pub fn max_series_terms(&self) -> usize {
        self.max_series_terms
    }

    pub fn max_quadrature_depth(&self) -> usize {
        self.max_quadrature_depth
    }

    pub fn max_em_terms(&self) -> usize {
        self.max_em_terms
    }
}
