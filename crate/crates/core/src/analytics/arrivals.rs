//! Arrival-time laws of the subordinated process.
//!
//! With Q_n(u) = P(Pois(Λ(u)) ≥ n), the event identity {T_n ≤ t} = {N_α(t) ≥ n}
//! gives F_{T_n}(t) = ∫₀^∞ h_α(t,u) Q_n(u) du, and integration by parts turns
//! this into the boundary constant minus an integral of the CDF of Y_α:
//!
//! ```text
//! F_{T_n}(t) = C_n − ∫₀^∞ H_α(t,u) λ(u) e^{−Λ(u)} Λ(u)^{n−1}/(n−1)! du,
//! C_n = lim_{u→∞} Q_n(u)  (= 1 for unbounded Λ; = P(Pois(sup Λ) ≥ n) else).
//! ```
//!
//! For bounded Λ the constant C_n < 1 is exactly the total mass
//! P(T_n < ∞): the arrival-time law is defective and [`arrival_total_mass`]
//! reports the deficit.

use crate::accuracy::Accuracy;
use crate::error::{Error, Result};
use crate::quad;
use crate::rates::RateFunction;
use crate::special::{inv_sub_cdf, ln_gamma};

use super::pmf::pois_tail;

/// P(T_n < ∞): 1 for unbounded rates, P(Pois(sup Λ) ≥ n) for bounded ones.
pub fn arrival_total_mass(rate: &RateFunction, n: u32) -> Result<f64> {
    if n == 0 {
        return Err(Error::Domain("arrival index must be ≥ 1".into()));
    }
    Ok(match rate.upper_bound() {
        None => 1.0,
        Some(sup) => pois_tail(n as usize - 1, sup),
    })
}

/// CDF of the n-th arrival time, P(T_n ≤ t).
pub fn arrival_cdf(
    alpha: f64,
    rate: &RateFunction,
    n: u32,
    t: f64,
    acc: &Accuracy,
) -> Result<f64> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::Domain(format!(
            "fractional index must lie in (0,1), got {alpha}"
        )));
    }
    if !(t > 0.0) {
        return Err(Error::Domain(format!("arrival CDF requires t > 0, got {t}")));
    }
    if n == 0 {
        return Err(Error::Domain("arrival index must be ≥ 1".into()));
    }

    let c = arrival_total_mass(rate, n)?;
    let ln_fact = ln_gamma(n as f64);
    let inner = acc.tightened(0.1);

    // The integrand carries two scales: the n-th epoch density peaks where
    // Λ(u) ≈ n, and H_α(t, ·) turns on around u ≈ t^α.
    let epoch_scale = match rate.support_end() {
        Some(end) => end,
        None => rate.inverse_cumulative(n as f64)?,
    };
    let scale = t.powf(alpha).max(epoch_scale);

    let integral = quad::integrate_0_inf_fallible(
        &|u| {
            let lam_u = rate.cumulative(u)?;
            if !lam_u.is_finite() {
                return Ok(0.0); // Λ overflow deep in the tail: e^{−Λ} wins
            }
            // density of the n-th classical epoch in operational time:
            // λ(u) e^{−Λ(u)} Λ(u)^{n−1}/(n−1)!
            let ln_density = if lam_u == 0.0 {
                if n == 1 {
                    0.0
                } else {
                    f64::NEG_INFINITY
                }
            } else {
                (n as f64 - 1.0) * lam_u.ln() - lam_u - ln_fact
            };
            let weight = ln_density.exp();
            if weight == 0.0 {
                return Ok(0.0);
            }
            let intensity = rate.intensity(u)?;
            if intensity == 0.0 {
                return Ok(0.0);
            }
            let h_cdf = inv_sub_cdf(alpha, t, u, &inner)?;
            if h_cdf == 0.0 {
                return Ok(0.0);
            }
            Ok(h_cdf * intensity * weight)
        },
        scale,
        acc,
    )?;

    Ok(c - integral.value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use statrs::function::erf::erfc;

    fn acc() -> Accuracy {
        Accuracy {
            abs_tol: 1e-8,
            rel_tol: 1e-8,
            max_terms: 10_000,
        }
    }

    #[test]
    fn first_arrival_constant_rate_spot_value() {
        // n = 1, λ = 1, α = 1/2, t = 1: F = 1 − E_{1/2}(−1) = 1 − e·erfc(1).
        let rate = RateFunction::constant(1.0).unwrap();
        let f = arrival_cdf(0.5, &rate, 1, 1.0, &acc()).unwrap();
        let expect = 1.0 - std::f64::consts::E * erfc(1.0);
        assert!((f - expect).abs() < 1e-6, "{f} vs {expect}");
    }

    #[test]
    fn matches_pmf_tail_sum() {
        // F_{T_n}(t) = Σ_{x≥n} f_x^α(t) = 1 − Σ_{x<n} f_x^α(t).
        use crate::analytics::pmf::fnpp_prob;
        let rate = RateFunction::weibull(1.0, 2.0).unwrap();
        for n in 1..=3u32 {
            let f = arrival_cdf(0.5, &rate, n, 1.0, &acc()).unwrap();
            let mut head = 0.0;
            for x in 0..n as u64 {
                head += fnpp_prob(0.5, &rate, 1.0, 0.0, x, &acc()).unwrap();
            }
            assert!(
                (f - (1.0 - head)).abs() < 1e-5,
                "n={n}: {f} vs {}",
                1.0 - head
            );
        }
    }

    #[test]
    fn monotone_in_t_and_n() {
        let rate = RateFunction::makeham(1.0, 0.5, 0.0).unwrap();
        let mut prev = 0.0;
        for &t in &[0.25, 0.5, 1.0, 2.0, 4.0] {
            let f = arrival_cdf(0.6, &rate, 2, t, &acc()).unwrap();
            assert!(f >= prev - 1e-9, "CDF must be nondecreasing in t");
            prev = f;
        }
        let mut prev = 1.0;
        for n in 1..=5u32 {
            let f = arrival_cdf(0.6, &rate, n, 1.0, &acc()).unwrap();
            assert!(f <= prev + 1e-9, "CDF must be nonincreasing in n");
            prev = f;
        }
    }

    #[test]
    fn bounded_rate_gives_defective_law() {
        let rate = RateFunction::tabulated(vec![(0.0, 0.0), (1.0, 1.2), (2.0, 1.5)]).unwrap();
        let mass1 = arrival_total_mass(&rate, 1).unwrap();
        let mass3 = arrival_total_mass(&rate, 3).unwrap();
        assert!(mass1 < 1.0 && mass1 > mass3);
        // F(t) stays below the total mass.
        let f = arrival_cdf(0.5, &rate, 1, 50.0, &acc()).unwrap();
        assert!(f <= mass1 + 1e-8);
        assert!(f > 0.5 * mass1);
    }

    #[test]
    fn domain_errors() {
        let rate = RateFunction::constant(1.0).unwrap();
        assert!(arrival_cdf(0.5, &rate, 0, 1.0, &acc()).is_err());
        assert!(arrival_cdf(0.5, &rate, 1, 0.0, &acc()).is_err());
        assert!(arrival_cdf(1.0, &rate, 1, 1.0, &acc()).is_err());
    }
}
