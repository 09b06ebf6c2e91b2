//! Residuals of the governing fractional differential-integral equation.
//!
//! The fractional marginals satisfy
//!
//! ```text
//! D_t^α f_x^α(t,v) = ∫₀^∞ λ(u+v) [p_{x−1}(u,v) − p_x(u,v)] h_α(t,u) du,
//! ```
//!
//! with f_x^α(0,v) = δ_{x,0} and p_{−1} ≡ 0. The checker samples the
//! left-hand side with the Caputo L1 scheme on a user grid and the right-hand
//! side by adaptive quadrature, reporting LHS − RHS per grid point. For a
//! constant rate the right-hand side collapses to −λ(f_x^α − f_{x−1}^α),
//! which the test suites verify separately.

use serde::{Deserialize, Serialize};

use crate::accuracy::Accuracy;
use crate::error::{Error, Result};
use crate::quad;
use crate::rates::RateFunction;
use crate::special::inv_sub_pdf;

use super::caputo::{caputo_l1, CaputoGrid};
use super::pmf::{fnpp_prob, pois_ln_pmf};

/// Per-grid-point left/right sides and residuals at the interior points
/// t₁, …, t_M of the input grid.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GoverningResidual {
    pub x: u64,
    pub v: f64,
    /// Interior grid points (input grid without the origin).
    pub times: Vec<f64>,
    pub lhs: Vec<f64>,
    pub rhs: Vec<f64>,
    pub residual: Vec<f64>,
}

impl GoverningResidual {
    /// Largest |residual| beyond a burn-in fraction of the nodes (the L1
    /// scheme has O(1) truncation error at the first nodes for x = 0; see
    /// the module notes in `caputo`).
    pub fn max_abs_residual_after(&self, burn_in_fraction: f64) -> f64 {
        let skip = (self.times.len() as f64 * burn_in_fraction).ceil() as usize;
        self.residual
            .iter()
            .skip(skip)
            .fold(0.0f64, |m, r| m.max(r.abs()))
    }
}

/// Evaluates LHS − RHS of the governing equation for count `x` and offset `v`
/// over `t_grid` (which must start at 0).
pub fn governing_residual(
    alpha: f64,
    rate: &RateFunction,
    x: u64,
    v: f64,
    t_grid: &[f64],
    acc: &Accuracy,
) -> Result<GoverningResidual> {
    if !(v >= 0.0) {
        return Err(Error::Domain(format!("offset must be ≥ 0, got {v}")));
    }
    if t_grid.len() < 3 || t_grid[0] != 0.0 {
        return Err(Error::Grid(
            "governing-equation grid must start at 0 with at least 3 points".into(),
        ));
    }

    // f_x^α(t_i, v) on the grid; the origin value is the initial condition.
    let mut values = Vec::with_capacity(t_grid.len());
    values.push(if x == 0 { 1.0 } else { 0.0 });
    for &t in &t_grid[1..] {
        values.push(fnpp_prob(alpha, rate, t, v, x, acc)?);
    }
    let lhs = caputo_l1(&CaputoGrid::new(t_grid.to_vec(), values, alpha)?)?;

    let inner = acc.tightened(0.1);
    let mut rhs = Vec::with_capacity(t_grid.len() - 1);
    for &t in &t_grid[1..] {
        let integral = quad::integrate_0_inf_fallible(
            &|u| {
                let m = rate.increment(v, u + v)?;
                let p_x = pois_ln_pmf(x, m).exp();
                let p_prev = if x == 0 {
                    0.0
                } else {
                    pois_ln_pmf(x - 1, m).exp()
                };
                let diff = p_prev - p_x;
                if diff == 0.0 {
                    return Ok(0.0);
                }
                let h = inv_sub_pdf(alpha, t, u, &inner)?;
                if h == 0.0 {
                    return Ok(0.0);
                }
                Ok(rate.intensity(u + v)? * diff * h)
            },
            t.powf(alpha),
            acc,
        )?;
        rhs.push(integral.value);
    }

    let residual = lhs.iter().zip(&rhs).map(|(l, r)| l - r).collect();
    Ok(GoverningResidual {
        x,
        v,
        times: t_grid[1..].to_vec(),
        lhs,
        rhs,
        residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn uniform_grid(t_max: f64, m: usize) -> Vec<f64> {
        (0..=m).map(|i| t_max * i as f64 / m as f64).collect()
    }

    fn acc() -> Accuracy {
        Accuracy {
            abs_tol: 1e-9,
            rel_tol: 1e-9,
            max_terms: 10_000,
        }
    }

    #[test]
    fn zero_count_rhs_is_nonpositive() {
        // x = 0: RHS = −∫ λ p₀ h ≤ 0 everywhere.
        let rate = RateFunction::weibull(1.0, 2.0).unwrap();
        let grid = uniform_grid(1.0, 40);
        let g = governing_residual(0.5, &rate, 0, 0.0, &grid, &acc()).unwrap();
        assert!(g.rhs.iter().all(|&r| r <= 0.0));
    }

    #[test]
    fn constant_rate_rhs_telescopes() {
        // For λ(t) = λ the RHS equals −λ(f_x − f_{x−1}).
        let lam = 1.0;
        let rate = RateFunction::constant(lam).unwrap();
        let grid = uniform_grid(1.0, 20);
        for x in 0..=2u64 {
            let g = governing_residual(0.5, &rate, x, 0.0, &grid, &acc()).unwrap();
            for (i, &t) in g.times.iter().enumerate() {
                let f_x = fnpp_prob(0.5, &rate, t, 0.0, x, &acc()).unwrap();
                let f_prev = if x == 0 {
                    0.0
                } else {
                    fnpp_prob(0.5, &rate, t, 0.0, x - 1, &acc()).unwrap()
                };
                let expect = -lam * (f_x - f_prev);
                assert!(
                    (g.rhs[i] - expect).abs() < 1e-7,
                    "x={x}, t={t}: {} vs {expect}",
                    g.rhs[i]
                );
            }
        }
    }

    #[test]
    fn constant_rate_residual_is_small_and_shrinks() {
        let rate = RateFunction::constant(1.0).unwrap();
        let coarse = governing_residual(
            0.5,
            &rate,
            1,
            0.0,
            &uniform_grid(1.0, 100),
            &acc(),
        )
        .unwrap();
        let fine = governing_residual(
            0.5,
            &rate,
            1,
            0.0,
            &uniform_grid(1.0, 200),
            &acc(),
        )
        .unwrap();
        let rc = coarse.max_abs_residual_after(0.03);
        let rf = fine.max_abs_residual_after(0.03);
        assert!(rc < 0.02, "coarse residual {rc}");
        assert!(rf < 1.1 * rc, "refinement must not grow the residual: {rf} vs {rc}");
    }

    #[test]
    fn grid_must_start_at_zero() {
        let rate = RateFunction::constant(1.0).unwrap();
        let bad = vec![0.1, 0.2, 0.3];
        assert!(governing_residual(0.5, &rate, 0, 0.0, &bad, &acc()).is_err());
    }
}
