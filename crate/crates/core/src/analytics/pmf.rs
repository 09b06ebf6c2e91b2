//! Marginal count distributions.
//!
//! Three layers, verified against each other:
//!
//! * classical Poissonian marginals p_x(t,v) = e^{−Λ(v,t+v)} Λ(v,t+v)^x / x!;
//! * the constant-rate fractional closed form
//!   p_x^α(t) = (λt^α)^x E_{α,αx+1}^{x+1}(−λt^α) (Prabhakar form);
//! * the general fractional marginals by quadrature against the
//!   inverse-subordinator density, f_x^α(t,v) = ∫₀^∞ p_x(u,v) h_α(t,u) du.

use serde::{Deserialize, Serialize};
use statrs::function::gamma::gamma_lr;

use crate::accuracy::Accuracy;
use crate::error::{Error, Result};
use crate::quad;
use crate::rates::RateFunction;
use crate::special::{inv_sub_pdf, ln_gamma, mittag_leffler, MLOrder};

/// Probabilities over counts {0, …, x_max} at a fixed time, with the mass
/// beyond x_max bounded by `tail_bound`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PmfTable {
    pub t: f64,
    pub x_max: usize,
    pub probs: Vec<f64>,
    pub tail_bound: f64,
}

impl PmfTable {
    pub fn new(t: f64, x_max: usize, mut probs: Vec<f64>, tail_bound: f64) -> Result<Self> {
        debug_assert_eq!(probs.len(), x_max + 1);
        for p in probs.iter_mut() {
            if *p < 0.0 {
                if *p < -1e-9 {
                    return Err(Error::Quadrature {
                        context: format!("pmf entry became negative: {p}"),
                        achieved: p.abs(),
                        requested: 1e-9,
                    });
                }
                *p = 0.0;
            }
        }
        let mass = probs.iter().sum::<f64>() + tail_bound;
        if (mass - 1.0).abs() > 1e-6 {
            return Err(Error::Quadrature {
                context: "pmf normalization drift".into(),
                achieved: (mass - 1.0).abs(),
                requested: 1e-6,
            });
        }
        Ok(Self {
            t,
            x_max,
            probs,
            tail_bound,
        })
    }

    /// Mean of the truncated table (no tail correction).
    pub fn truncated_mean(&self) -> f64 {
        self.probs
            .iter()
            .enumerate()
            .map(|(x, p)| x as f64 * p)
            .sum()
    }
}

/// log Poisson pmf: x ln m − m − ln x!, with the degenerate cases m = 0
/// (point mass at zero) and m = ∞ (Λ overflow deep in a tail: zero mass).
pub(crate) fn pois_ln_pmf(x: u64, m: f64) -> f64 {
    if m == 0.0 {
        return if x == 0 { 0.0 } else { f64::NEG_INFINITY };
    }
    if !m.is_finite() {
        return f64::NEG_INFINITY;
    }
    x as f64 * m.ln() - m - ln_gamma(x as f64 + 1.0)
}

/// P(Poisson(m) > x_max), stable through the regularized incomplete gamma.
pub(crate) fn pois_tail(x_max: usize, m: f64) -> f64 {
    if m <= 0.0 {
        return 0.0;
    }
    if !m.is_finite() {
        return 1.0;
    }
    gamma_lr(x_max as f64 + 1.0, m)
}

/// Classical marginals: probs[x] = P{N(t+v) − N(v) = x} for a Poisson count
/// with mean Λ(v, t+v); `tail_bound` is the exact Poisson tail.
pub fn npp_pmf(rate: &RateFunction, t: f64, v: f64, x_max: usize) -> Result<PmfTable> {
    if !(t > 0.0) || !(v >= 0.0) {
        return Err(Error::Domain(format!(
            "classical pmf requires t > 0 and v ≥ 0, got t={t}, v={v}"
        )));
    }
    let m = rate.increment(v, t + v)?;
    let probs: Vec<f64> = (0..=x_max as u64)
        .map(|x| pois_ln_pmf(x, m).exp())
        .collect();
    PmfTable::new(t, x_max, probs, pois_tail(x_max, m))
}

/// Constant-rate fractional pmf in Prabhakar closed form,
/// p_x^α(t) = (λ t^α)^x E_{α, αx+1}^{x+1}(−λ t^α); at α = 1 this is the
/// Poisson pmf with mean λt.
pub fn fhpp_pmf(alpha: f64, lam: f64, t: f64, x: u64, acc: &Accuracy) -> Result<f64> {
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(Error::Domain(format!(
            "fractional index must lie in (0,1], got {alpha}"
        )));
    }
    if !(lam > 0.0) || !(t > 0.0) {
        return Err(Error::Domain(format!(
            "closed-form pmf requires lam > 0, t > 0, got lam={lam}, t={t}"
        )));
    }
    if alpha == 1.0 {
        return Ok(pois_ln_pmf(x, lam * t).exp());
    }
    let w = lam * t.powf(alpha);
    let order = MLOrder::new(alpha, alpha * x as f64 + 1.0, x as f64 + 1.0)?;
    let e = mittag_leffler(&order, -w, acc)?;
    if e <= 0.0 {
        return Ok(0.0);
    }
    Ok((x as f64 * w.ln() + e.ln()).exp())
}

/// Single fractional marginal probability by quadrature,
/// f_x^α(t, v) = ∫₀^∞ e^{−Λ(v,u+v)} Λ(v,u+v)^x / x! · h_α(t,u) du.
pub fn fnpp_prob(
    alpha: f64,
    rate: &RateFunction,
    t: f64,
    v: f64,
    x: u64,
    acc: &Accuracy,
) -> Result<f64> {
    validate_fnpp_args(alpha, t, v)?;
    let inner = acc.tightened(0.1);
    let res = quad::integrate_0_inf_fallible(
        &|u| {
            let m = rate.increment(v, u + v)?;
            let p = pois_ln_pmf(x, m).exp();
            if p == 0.0 {
                return Ok(0.0);
            }
            Ok(p * inv_sub_pdf(alpha, t, u, &inner)?)
        },
        t.powf(alpha), // Y_α(t) lives on the scale t^α
        acc,
    )
    .map_err(|e| annotate_x(e, x))?;
    Ok(res.value)
}

/// Fractional marginals over {0, …, x_max} by per-entry quadrature; the tail
/// bound is itself a quadrature of the conditional Poisson tail, so
/// Σ probs + tail ≈ 1 is a genuine consistency check rather than an identity.
pub fn fnpp_pmf(
    alpha: f64,
    rate: &RateFunction,
    t: f64,
    v: f64,
    x_max: usize,
    acc: &Accuracy,
) -> Result<PmfTable> {
    validate_fnpp_args(alpha, t, v)?;
    let probs = (0..=x_max as u64)
        .map(|x| fnpp_prob(alpha, rate, t, v, x, acc))
        .collect::<Result<Vec<f64>>>()?;
    let inner = acc.tightened(0.1);
    let tail = quad::integrate_0_inf_fallible(
        &|u| {
            let m = rate.increment(v, u + v)?;
            let tail = pois_tail(x_max, m);
            if tail == 0.0 {
                return Ok(0.0);
            }
            Ok(tail * inv_sub_pdf(alpha, t, u, &inner)?)
        },
        t.powf(alpha),
        acc,
    )?;
    PmfTable::new(t, x_max, probs, tail.value)
}

fn validate_fnpp_args(alpha: f64, t: f64, v: f64) -> Result<()> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::Domain(format!(
            "fractional index must lie in (0,1), got {alpha}"
        )));
    }
    if !(t > 0.0) || !(v >= 0.0) {
        return Err(Error::Domain(format!(
            "fractional pmf requires t > 0 and v ≥ 0, got t={t}, v={v}"
        )));
    }
    Ok(())
}

fn annotate_x(e: Error, x: u64) -> Error {
    match e {
        Error::Quadrature {
            context,
            achieved,
            requested,
        } => Error::Quadrature {
            context: format!("{context} (pmf entry x={x})"),
            achieved,
            requested,
        },
        other => other,
    }
}
