use serde::Serialize;

/// Outcome of checking one named identity `lhs = rhs`.
///
/// `pass` is derived: it holds exactly when `abs_residual ≤ tolerance`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IdentityReport {
    name: String,
    lhs: f64,
    rhs: f64,
    abs_residual: f64,
    rel_residual: f64,
    tolerance: f64,
    pass: bool,
}

/// Lowest tolerance the propagation policy will assign.
pub(crate) const TOLERANCE_FLOOR: f64 = 1e-12;

/// Ten times the summed component uncertainties, floored at 1e-12.
pub(crate) fn propagated_tolerance<I: IntoIterator<Item = f64>>(uncertainties: I) -> f64 {
    let total: f64 = uncertainties.into_iter().sum();
    (10.0 * total).max(TOLERANCE_FLOOR)
}

impl IdentityReport {
    pub fn new(name: impl Into<String>, lhs: f64, rhs: f64, tolerance: f64) -> Self {
        let abs_residual = (lhs - rhs).abs();
        let scale = lhs.abs().max(rhs.abs());
        let rel_residual = if scale > 0.0 {
            abs_residual / scale
        } else {
            0.0
        };
        Self {
            name: name.into(),
            lhs,
            rhs,
            abs_residual,
            rel_residual,
            tolerance,
            pass: abs_residual <= tolerance,
        }
    }

    /// Report whose tolerance follows the propagation policy for the given
    /// component uncertainties.
    pub fn propagated<I: IntoIterator<Item = f64>>(
        name: impl Into<String>,
        lhs: f64,
        rhs: f64,
        uncertainties: I,
    ) -> Self {
        let rounding = 16.0 * f64::EPSILON * (lhs.abs() + rhs.abs());
        let tol = propagated_tolerance(uncertainties.into_iter().chain([rounding]));
        Self::new(name, lhs, rhs, tol)
    }

    /// Same comparison against a different tolerance.
    pub fn with_tolerance(&self, tolerance: f64) -> Self {
        Self::new(self.name.clone(), self.lhs, self.rhs, tolerance)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn lhs(&self) -> f64 {
        self.lhs
    }

    pub fn rhs(&self) -> f64 {
        self.rhs
    }

    pub fn abs_residual(&self) -> f64 {
        self.abs_residual
    }

    pub fn rel_residual(&self) -> f64 {
        self.rel_residual
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    pub fn pass(&self) -> bool {
        self.pass
    }
}
