//! Covariance structure.
//!
//! Classical process: Cov(N(s), N(t)) = Λ(0, s∧t). Subordinated process, by
//! the law of total covariance:
//!
//! ```text
//! Cov[N(Y_α(s)), N(Y_α(t))] = E[Λ(Y_α(s∧t))] + Cov[Λ(Y_α(s)), Λ(Y_α(t))],
//! ```
//!
//! first term by quadrature, second by Monte Carlo over joint draws of
//! (Y_α(s), Y_α(t)) from a shared subordinator path.

use crate::accuracy::Accuracy;
use crate::error::{Error, Result};
use crate::mc;
use crate::rates::RateFunction;
use crate::rng::RngStream;

use super::moments::fnpp_mean;

/// Cov(N(s), N(t)) = Λ(0, min(s,t)) for the classical process.
pub fn npp_covariance(rate: &RateFunction, s: f64, t: f64) -> Result<f64> {
    if !(s >= 0.0) || !(t >= 0.0) {
        return Err(Error::Domain(format!(
            "covariance requires s, t ≥ 0, got s={s}, t={t}"
        )));
    }
    rate.cumulative(s.min(t))
}

/// Covariance of the subordinated process at (s, t) (symmetrized), returned
/// as (estimate, standard error of the Monte Carlo term).
pub fn fnpp_covariance(
    alpha: f64,
    rate: &RateFunction,
    s: f64,
    t: f64,
    n_paths: u64,
    grid_step: f64,
    stream: RngStream,
) -> Result<(f64, f64)> {
    if !(s > 0.0) || !(t > 0.0) {
        return Err(Error::Domain(format!(
            "covariance times must be > 0, got s={s}, t={t}"
        )));
    }
    if n_paths < 1_000 {
        return Err(Error::Domain(format!(
            "covariance estimation needs ≥ 1000 paths, got {n_paths}"
        )));
    }
    let (lo, hi) = if s <= t { (s, t) } else { (t, s) };

    let term1 = fnpp_mean(alpha, rate, lo, &Accuracy::default())?;

    let draws = mc::run_replicas(stream, n_paths, |_, rng| {
        crate::subordinator::sample_joint_inverse(alpha, lo, hi, grid_step, rng).and_then(
            |(ys, yt)| {
                Ok((rate.cumulative(ys)?, rate.cumulative(yt)?))
            },
        )
    });
    let mut xs = Vec::with_capacity(n_paths as usize);
    let mut ys = Vec::with_capacity(n_paths as usize);
    for d in draws {
        let (a, b) = d?;
        xs.push(a);
        ys.push(b);
    }
    let n = n_paths as f64;
    let mean_x = xs.iter().sum::<f64>() / n;
    let mean_y = ys.iter().sum::<f64>() / n;
    let prods: Vec<f64> = xs
        .iter()
        .zip(&ys)
        .map(|(&a, &b)| (a - mean_x) * (b - mean_y))
        .collect();
    let cov = prods.iter().sum::<f64>() / (n - 1.0);
    // Asymptotic standard error of the covariance estimator.
    let var_prod = prods.iter().map(|p| (p - cov) * (p - cov)).sum::<f64>() / (n - 1.0);
    let se = (var_prod / n).sqrt();

    Ok((term1 + cov, se))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn classical_covariance_closed_form() {
        let c = RateFunction::constant(2.0).unwrap();
        assert_relative_eq!(npp_covariance(&c, 1.0, 3.0).unwrap(), 2.0);
        assert_relative_eq!(npp_covariance(&c, 3.0, 1.0).unwrap(), 2.0); // symmetric
        assert_eq!(npp_covariance(&c, 0.0, 5.0).unwrap(), 0.0);
        assert!(npp_covariance(&c, -1.0, 1.0).is_err());
    }

    #[test]
    fn diagonal_matches_variance_within_monte_carlo_error() {
        use crate::analytics::moments::fnpp_variance;
        let rate = RateFunction::constant(1.0).unwrap();
        let (est, se) = fnpp_covariance(
            0.5,
            &rate,
            1.0,
            1.0,
            4_000,
            1e-3,
            RngStream::new(31, 0),
        )
        .unwrap();
        let var = fnpp_variance(0.5, &rate, 1.0, &Accuracy::default()).unwrap();
        assert!(
            (est - var).abs() < 4.0 * se.max(1e-3),
            "estimate {est} vs variance {var} (se {se})"
        );
    }

    #[test]
    fn widely_separated_times_stay_positively_correlated() {
        let rate = RateFunction::constant(1.0).unwrap();
        let (est, _) = fnpp_covariance(
            0.5,
            &rate,
            0.01,
            10.0,
            2_000,
            2e-3,
            RngStream::new(32, 0),
        )
        .unwrap();
        assert!(est > 0.0);
    }

    #[test]
    fn too_few_paths_rejected() {
        let rate = RateFunction::constant(1.0).unwrap();
        assert!(
            fnpp_covariance(0.5, &rate, 1.0, 2.0, 10, 1e-2, RngStream::new(33, 0)).is_err()
        );
    }
}
