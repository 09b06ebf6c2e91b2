//! Caputo fractional derivative by the L1 finite-difference scheme.
//!
//! For samples of f on a grid 0 = t₀ < t₁ < … < t_M,
//!
//! ```text
//! D^α f(t_m) ≈ (1/Γ(2−α)) Σ_{j<m} (f_{j+1} − f_j)/h_j ·
//!              [(t_m − t_j)^{1−α} − (t_m − t_{j+1})^{1−α}],
//! ```
//!
//! the classical piecewise-linear (L1) discretization with O(Δt^{2−α})
//! consistency for C² integrands. Functions behaving like t^α at the origin
//! (every zero-count probability here) lose that order near the first nodes;
//! the truncation error there decays like m^{−(1+α)} in the node index,
//! which is why residual assertions use a burn-in window.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::special::ln_gamma;

/// Samples of a function on an increasing time grid starting at 0.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CaputoGrid {
    times: Vec<f64>,
    values: Vec<f64>,
    alpha: f64,
}

impl CaputoGrid {
    pub fn new(times: Vec<f64>, values: Vec<f64>, alpha: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha < 1.0) {
            return Err(Error::Domain(format!(
                "Caputo order must lie in (0,1), got {alpha}"
            )));
        }
        if times.len() < 3 {
            return Err(Error::Grid("Caputo grid needs at least 3 points (M ≥ 2)".into()));
        }
        if times.len() != values.len() {
            return Err(Error::Grid(format!(
                "times ({}) and values ({}) must have equal length",
                times.len(),
                values.len()
            )));
        }
        if times[0] != 0.0 {
            return Err(Error::Grid(format!(
                "Caputo grid must start at 0, got {}",
                times[0]
            )));
        }
        if times.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::Grid("Caputo grid must be strictly increasing".into()));
        }
        Ok(Self {
            times,
            values,
            alpha,
        })
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }
}

/// D^α f at the grid points t₁, …, t_M (length M = grid.len() − 1).
pub fn caputo_l1(grid: &CaputoGrid) -> Result<Vec<f64>> {
    let alpha = grid.alpha;
    let ts = &grid.times;
    let fs = &grid.values;
    let inv_gamma = (-ln_gamma(2.0 - alpha)).exp();
    let one_minus = 1.0 - alpha;

    let mut out = Vec::with_capacity(ts.len() - 1);
    for m in 1..ts.len() {
        let tm = ts[m];
        let mut acc = 0.0f64;
        for j in 0..m {
            let slope = (fs[j + 1] - fs[j]) / (ts[j + 1] - ts[j]);
            let kernel = (tm - ts[j]).powf(one_minus) - (tm - ts[j + 1]).powf(one_minus);
            acc += slope * kernel;
        }
        out.push(inv_gamma * acc);
    }
    Ok(out)
}
