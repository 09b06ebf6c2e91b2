//! Spectral density K_α of the Mittag-Leffler waiting-time law.
//!
//! K_α(r) = (1/π) r^{α−1} sin(απ) / (r^{2α} + 2 r^α cos(απ) + 1) is a
//! probability density on (0, ∞) whose Laplace transform is E_α(−t^α); it is
//! what makes the renewal process with Mittag-Leffler interarrivals a Cox
//! process.

use super::{cospi, sinpi};
use crate::error::{Error, Result};

/// K_α(r) for r > 0, 0 < α < 1.
pub fn cox_spectral_density(alpha: f64, r: f64) -> Result<f64> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::Domain(format!(
            "spectral density index must lie in (0,1), got {alpha}"
        )));
    }
    if !(r > 0.0) {
        return Err(Error::Domain(format!(
            "spectral density argument must be > 0, got {r}"
        )));
    }
    let ra = r.powf(alpha);
    let denom = ra * ra + 2.0 * ra * cospi(alpha) + 1.0;
    if !denom.is_finite() {
        return Ok(0.0);
    }
    Ok(r.powf(alpha - 1.0) * sinpi(alpha) / (std::f64::consts::PI * denom))
}
