//! Moments of the subordinated process via conditioning on Y_α(t):
//! mean E[Λ(Y_α(t))], variance by the law of total variance, and higher
//! moments through Stirling numbers of the second kind,
//! E[N^k] = E[Σ_i S(k,i) Λ(Y_α(t))^i].

use crate::accuracy::Accuracy;
use crate::error::{Error, Result};
use crate::quad;
use crate::rates::RateFunction;
use crate::special::{inv_sub_pdf, stirling2};

/// ∫₀^∞ Λ(x)^i h_α(t,x) dx.
fn lambda_power_moment(
    alpha: f64,
    rate: &RateFunction,
    t: f64,
    i: u32,
    acc: &Accuracy,
) -> Result<f64> {
    let inner = acc.tightened(0.1);
    let res = quad::integrate_0_inf_fallible(
        &|x| {
            let h = inv_sub_pdf(alpha, t, x, &inner)?;
            if h == 0.0 {
                return Ok(0.0);
            }
            let lam = rate.cumulative(x)?;
            Ok(lam.powi(i as i32) * h)
        },
        t.powf(alpha),
        acc,
    )?;
    Ok(res.value)
}

fn validate(alpha: f64, t: f64) -> Result<()> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::Domain(format!(
            "fractional index must lie in (0,1), got {alpha}"
        )));
    }
    if !(t > 0.0) {
        return Err(Error::Domain(format!("moment time must be > 0, got {t}")));
    }
    Ok(())
}

/// E[N_α(t)] = ∫₀^∞ Λ(x) h_α(t,x) dx.
pub fn fnpp_mean(alpha: f64, rate: &RateFunction, t: f64, acc: &Accuracy) -> Result<f64> {
    validate(alpha, t)?;
    lambda_power_moment(alpha, rate, t, 1, acc)
}

/// Var[N_α(t)] = E[Λ(Y_α(t))] + Var[Λ(Y_α(t))] (law of total variance).
pub fn fnpp_variance(alpha: f64, rate: &RateFunction, t: f64, acc: &Accuracy) -> Result<f64> {
    validate(alpha, t)?;
    let m1 = lambda_power_moment(alpha, rate, t, 1, acc)?;
    let m2 = lambda_power_moment(alpha, rate, t, 2, acc)?;
    let var_lambda = m2 - m1 * m1;
    if var_lambda < -acc.abs_tol {
        return Err(Error::NegativeVariance(var_lambda));
    }
    Ok(m1 + var_lambda.max(0.0))
}

/// k-th raw moment E[N_α(t)^k] = Σ_{i=1}^k S(k,i) ∫ Λ(x)^i h_α(t,x) dx.
pub fn fnpp_moment(
    alpha: f64,
    rate: &RateFunction,
    t: f64,
    k: u32,
    acc: &Accuracy,
) -> Result<f64> {
    validate(alpha, t)?;
    if k == 0 {
        return Err(Error::Domain("moment order must be ≥ 1".into()));
    }
    let mut sum = 0.0f64;
    for i in 1..=k {
        let s = stirling2(k, i)? as f64;
        sum += s * lambda_power_moment(alpha, rate, t, i, acc)?;
    }
    Ok(sum)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use statrs::function::gamma::gamma;

    fn acc() -> Accuracy {
        Accuracy::default()
    }

    #[test]
    fn constant_rate_mean_is_scaled_inverse_subordinator_mean() {
        // E[N] = λ E[Y_α(t)] = λ t^α / Γ(1+α); α = 1/2, t = 1, λ = 2.
        let rate = RateFunction::constant(2.0).unwrap();
        let m = fnpp_mean(0.5, &rate, 1.0, &acc()).unwrap();
        assert_relative_eq!(m, 2.0 / gamma(1.5), max_relative = 1e-8);
    }

    #[test]
    fn near_classical_limit() {
        // α = 0.99: mean ≈ Λ(t) within 2%, variance ≈ Λ(t) within 3%.
        let rate = RateFunction::weibull(1.0, 2.0).unwrap();
        let lam_t = rate.cumulative(1.5).unwrap();
        let m = fnpp_mean(0.99, &rate, 1.5, &acc()).unwrap();
        assert!((m - lam_t).abs() / lam_t < 0.02, "mean {m} vs {lam_t}");
        let v = fnpp_variance(0.99, &rate, 1.5, &acc()).unwrap();
        assert!((v - lam_t).abs() / lam_t < 0.03, "variance {v} vs {lam_t}");
    }

    #[test]
    fn first_moment_equals_mean_exactly() {
        let rate = RateFunction::makeham(1.0, 0.5, 0.1).unwrap();
        let m = fnpp_mean(0.6, &rate, 1.2, &acc()).unwrap();
        let m1 = fnpp_moment(0.6, &rate, 1.2, 1, &acc()).unwrap();
        assert_relative_eq!(m, m1, max_relative = 1e-12);
    }

    #[test]
    fn second_moment_consistency() {
        // E[N²] = Var + mean² to 1e-8 relative.
        for rate in [
            RateFunction::constant(1.0).unwrap(),
            RateFunction::weibull(1.0, 2.0).unwrap(),
        ] {
            let mean = fnpp_mean(0.5, &rate, 1.0, &acc()).unwrap();
            let var = fnpp_variance(0.5, &rate, 1.0, &acc()).unwrap();
            let m2 = fnpp_moment(0.5, &rate, 1.0, 2, &acc()).unwrap();
            assert_relative_eq!(m2, var + mean * mean, max_relative = 1e-8);
        }
    }

    #[test]
    fn overdispersion_is_strict() {
        for &alpha in &[0.3, 0.5, 0.8] {
            for rate in [
                RateFunction::constant(1.0).unwrap(),
                RateFunction::weibull(1.0, 2.0).unwrap(),
                RateFunction::makeham(1.0, 1.0, 0.5).unwrap(),
            ] {
                for &t in &[0.5, 1.0, 2.0] {
                    let mean = fnpp_mean(alpha, &rate, t, &acc()).unwrap();
                    let var = fnpp_variance(alpha, &rate, t, &acc()).unwrap();
                    assert!(
                        var > mean,
                        "α={alpha}, t={t}: var {var} must exceed mean {mean}"
                    );
                }
            }
        }
    }

    #[test]
    fn mean_agrees_with_pmf_first_moment() {
        use crate::analytics::pmf::fnpp_pmf;
        let rate = RateFunction::weibull(1.0, 2.0).unwrap();
        let mean = fnpp_mean(0.5, &rate, 1.0, &acc()).unwrap();
        let table = fnpp_pmf(0.5, &rate, 1.0, 0.0, 40, &acc()).unwrap();
        // tail mass beyond 40 counts is far below 1e-8 here
        assert!((mean - table.truncated_mean()).abs() < 1e-4);
    }

    #[test]
    fn zero_order_moment_rejected() {
        let rate = RateFunction::constant(1.0).unwrap();
        assert!(fnpp_moment(0.5, &rate, 1.0, 0, &acc()).is_err());
    }
}
