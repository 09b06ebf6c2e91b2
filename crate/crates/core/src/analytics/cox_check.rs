//! Numerical verification of the Laplace identities behind the Cox-process
//! characterization of the renewal fractional process:
//!
//! * spectral:   ∫₀^∞ e^{−rt} K_α(r) dr = E_α(−t^α);
//! * interarrival: the Laplace–Stieltjes transform of the Mittag-Leffler
//!   waiting-time CDF equals 1/(1+s^α), computed as s·∫₀^∞ e^{−st} F_J(t) dt
//!   with F_J(t) = 1 − E_α(−t^α).
//!
//! Both sides are evaluated by independent routes (adaptive quadrature of
//! K_α vs the Mittag-Leffler series/contour), so agreement is evidence, not
//! tautology.

use serde::{Deserialize, Serialize};

use crate::accuracy::Accuracy;
use crate::error::{Error, Result};
use crate::quad;
use crate::special::{cox_spectral_density, ml_one_param};

/// One evaluation point of an identity check.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct IdentityDeviation {
    pub point: f64,
    pub lhs: f64,
    pub rhs: f64,
}

impl IdentityDeviation {
    pub fn abs_dev(&self) -> f64 {
        (self.lhs - self.rhs).abs()
    }
}

/// Report of both identity families with their worst deviations.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CoxIdentityReport {
    pub alpha: f64,
    pub spectral: Vec<IdentityDeviation>,
    pub interarrival: Vec<IdentityDeviation>,
    pub max_dev_spectral: f64,
    pub max_dev_interarrival: f64,
}

/// Evaluates both identities at the given t and s grids.
pub fn cox_identity_check(
    alpha: f64,
    t_values: &[f64],
    s_values: &[f64],
    acc: &Accuracy,
) -> Result<CoxIdentityReport> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::Domain(format!(
            "identity check requires alpha in (0,1), got {alpha}"
        )));
    }

    let mut spectral = Vec::with_capacity(t_values.len());
    for &t in t_values {
        if !(t >= 0.0) {
            return Err(Error::Domain(format!("spectral check requires t ≥ 0, got {t}")));
        }
        let lhs = quad::integrate_0_inf_fallible(
            &|r| Ok((-r * t).exp() * cox_spectral_density(alpha, r)?),
            1.0f64.min(if t > 0.0 { 1.0 / t } else { 1.0 }),
            acc,
        )?
        .value;
        let rhs = ml_one_param(alpha, -(t.powf(alpha)), acc)?;
        spectral.push(IdentityDeviation { point: t, lhs, rhs });
    }

    let mut interarrival = Vec::with_capacity(s_values.len());
    for &s in s_values {
        if !(s > 0.0) {
            return Err(Error::Domain(format!(
                "interarrival transform requires s > 0, got {s}"
            )));
        }
        let lhs = s * quad::integrate_0_inf_fallible(
            &|t| {
                let damp = (-s * t).exp();
                if damp == 0.0 {
                    return Ok(0.0);
                }
                let surv = ml_one_param(alpha, -(t.powf(alpha)), acc)?;
                Ok(damp * (1.0 - surv))
            },
            (1.0 / s).max(1.0),
            acc,
        )?
        .value;
        let rhs = 1.0 / (1.0 + s.powf(alpha));
        interarrival.push(IdentityDeviation { point: s, lhs, rhs });
    }

    let max_dev_spectral = spectral.iter().map(|d| d.abs_dev()).fold(0.0, f64::max);
    let max_dev_interarrival = interarrival.iter().map(|d| d.abs_dev()).fold(0.0, f64::max);
    Ok(CoxIdentityReport {
        alpha,
        spectral,
        interarrival,
        max_dev_spectral,
        max_dev_interarrival,
    })
}
