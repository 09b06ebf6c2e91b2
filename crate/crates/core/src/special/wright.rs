//! Wright's generalized Bessel function
//!
//! ```text
//! W_{γ,β}(z) = Σ_{k≥0} z^k / (k! Γ(β + γk)),   γ > −1,
//! ```
//!
//! terms at the poles of Γ contribute exactly zero. For γ ∈ (−1, 0) this is
//! the series behind the one-sided stable density: g_α(z) = (1/z) W_{−α,0}(−z^{−α}).

use super::{ln_gamma, rgamma_ln};
use crate::accuracy::Accuracy;
use crate::error::{Error, Result};

const MAX_CANCELLATION: f64 = 3e4;

/// W_{γ,β}(z) for real z.
pub fn wright(gamma_: f64, beta: f64, z: f64, acc: &Accuracy) -> Result<f64> {
    if !(gamma_ > -1.0) {
        return Err(Error::Domain(format!(
            "Wright function requires gamma > -1, got {gamma_}"
        )));
    }
    if !z.is_finite() || !beta.is_finite() {
        return Err(Error::Domain(format!(
            "Wright function arguments must be finite, got beta={beta}, z={z}"
        )));
    }

    let ln_z = if z == 0.0 { f64::NEG_INFINITY } else { z.abs().ln() };

    // Log-magnitude pass with max-term normalization; exact-zero pole terms
    // are skipped without disturbing the termination logic.
    let mut entries: Vec<(f64, f64)> = Vec::with_capacity(32); // (sign, ln|term|)
    let mut max_ln = f64::NEG_INFINITY;
    let mut last_ln = f64::INFINITY;
    let mut converged = false;
    for k in 0..acc.max_terms {
        let kf = k as f64;
        let (rg_sign, rg_ln) = rgamma_ln(beta + gamma_ * kf);
        let sign = rg_sign * if z < 0.0 && k % 2 == 1 { -1.0 } else { 1.0 };
        let ln_t = if k == 0 {
            rg_ln
        } else {
            kf * ln_z - ln_gamma(kf + 1.0) + rg_ln
        };
        if sign != 0.0 {
            entries.push((sign, ln_t));
            if ln_t > max_ln {
                max_ln = ln_t;
            }
            if k >= 3 && ln_t < max_ln - 40.0 && ln_t < last_ln {
                converged = true;
                break;
            }
            last_ln = ln_t;
        }
        if z == 0.0 && k == 0 {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::NonConvergence {
            context: format!("wright series (gamma={gamma_}, beta={beta}, z={z})"),
            terms: acc.max_terms,
        });
    }
    if max_ln == f64::NEG_INFINITY {
        return Ok(0.0);
    }

    let mut sum = 0.0f64;
    for &(sign, ln_t) in &entries {
        sum += sign * (ln_t - max_ln).exp();
    }
    if sum.abs() < 1.0 / MAX_CANCELLATION {
        return Err(Error::NonConvergence {
            context: format!(
                "wright series cancellation (gamma={gamma_}, beta={beta}, z={z})"
            ),
            terms: entries.len(),
        });
    }
    Ok(max_ln.exp() * sum)
}
