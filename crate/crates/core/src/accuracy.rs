//! Truncation and tolerance budget for series and quadratures.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Accuracy budget: a result is accepted once its error estimate drops below
/// `max(abs_tol, rel_tol * |result|)`. `max_terms` bounds both series length
/// and the number of adaptive quadrature subdivisions.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Accuracy {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_terms: usize,
}

impl Accuracy {
    pub fn new(abs_tol: f64, rel_tol: f64, max_terms: usize) -> Result<Self> {
        if !(abs_tol > 0.0) || !(rel_tol > 0.0) {
            return Err(Error::Domain(format!(
                "tolerances must be positive, got abs_tol={abs_tol}, rel_tol={rel_tol}"
            )));
        }
        if max_terms == 0 {
            return Err(Error::Domain("max_terms must be at least 1".into()));
        }
        Ok(Self {
            abs_tol,
            rel_tol,
            max_terms,
        })
    }

    /// Acceptance threshold for a result of magnitude `value`.
    pub fn target(&self, value: f64) -> f64 {
        self.abs_tol.max(self.rel_tol * value.abs())
    }

    /// Same budget with tolerances tightened by `factor` (used for inner
    /// integrals so their error stays below the outer target).
    pub fn tightened(&self, factor: f64) -> Self {
        Self {
            abs_tol: (self.abs_tol * factor).max(1e-300),
            rel_tol: (self.rel_tol * factor).max(1e-15),
            max_terms: self.max_terms,
        }
    }
}

impl Default for Accuracy {
    fn default() -> Self {
        Self {
            abs_tol: 1e-10,
            rel_tol: 1e-10,
            max_terms: 10_000,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_invalid_budgets() {
        assert!(Accuracy::new(0.0, 1e-8, 100).is_err());
        assert!(Accuracy::new(1e-8, -1.0, 100).is_err());
        assert!(Accuracy::new(1e-8, 1e-8, 0).is_err());
        assert!(Accuracy::new(1e-8, 1e-8, 1).is_ok());
    }

    #[test]
    fn target_mixes_abs_and_rel() {
        let acc = Accuracy::new(1e-10, 1e-6, 100).unwrap();
        assert_eq!(acc.target(0.0), 1e-10);
        assert!((acc.target(2.0) - 2e-6).abs() < 1e-18);
    }
}
