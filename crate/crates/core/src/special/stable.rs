//! Density and CDF of the standard one-sided α-stable law (Laplace transform
//! e^{−s^α}, 0 < α < 1), the distribution of the subordinator at unit time.
//!
//! Two complementary representations:
//!
//! * the alternating tail series
//!   g_α(z) = (1/π) Σ_{k≥1} (−1)^{k+1} Γ(αk+1)/k! · sin(παk) · z^{−αk−1},
//!   excellent for large z but catastrophically cancelling as z → 0⁺;
//! * the exact finite-interval integral (Zolotarev/Kanter form)
//!   g_α(z) = (α/(1−α)) z^{−1/(1−α)} (1/π) ∫₀^π A(u) e^{−A(u) z^{−α/(1−α)}} du,
//!   A(u) = [sin(αu)/sin u]^{α/(1−α)} · sin((1−α)u)/sin u,
//!   valid for all z > 0 and evaluated log-safely.
//!
//! The series is used for z ≥ z*(α) and the integral below; z*(α) comes from
//! the saddle estimate of the series' cancellation (see `switch_point`) and
//! the two branches agree to better than 1e−8 at the boundary. The same A(u)
//! gives the CDF F_α(z) = (1/π) ∫₀^π exp(−A(u) z^{−α/(1−α)}) du.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use super::{ln_gamma, sinpi};
use crate::accuracy::Accuracy;
use crate::error::{Error, Result};
use crate::quad;

const K_MAX: usize = 512;
const MAX_CANCELLATION: f64 = 3e4;

fn validate_alpha(alpha: f64) -> Result<()> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::Domain(format!(
            "stable index must lie in (0,1), got {alpha}"
        )));
    }
    Ok(())
}

/// Tail-series coefficients c_k = (−1)^{k+1} Γ(αk+1) sin(παk) / (π k!),
/// cached per α: the inverse-subordinator density is evaluated millions of
/// times inside quadratures with a fixed index.
fn tail_coeffs(alpha: f64) -> Arc<Vec<f64>> {
    static CACHE: OnceLock<RwLock<HashMap<u64, Arc<Vec<f64>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| RwLock::new(HashMap::new()));
    let key = alpha.to_bits();
    if let Some(hit) = cache.read().expect("coefficient cache poisoned").get(&key) {
        return Arc::clone(hit);
    }
    let mut coeffs = Vec::with_capacity(K_MAX + 1);
    coeffs.push(0.0); // k = 0 unused
    for k in 1..=K_MAX {
        let kf = k as f64;
        let s = sinpi(alpha * kf);
        if s == 0.0 {
            coeffs.push(0.0);
            continue;
        }
        let ln_mag =
            ln_gamma(alpha * kf + 1.0) - ln_gamma(kf + 1.0) + s.abs().ln() - std::f64::consts::PI.ln();
        let sign = if k % 2 == 1 { 1.0 } else { -1.0 } * s.signum();
        coeffs.push(sign * ln_mag.exp());
    }
    let arc = Arc::new(coeffs);
    cache
        .write()
        .expect("coefficient cache poisoned")
        .insert(key, Arc::clone(&arc));
    arc
}

/// Series/integral switch point. The series peak index is
/// k* = (α^α z^{−α})^{1/(1−α)} and its cancellation is ≈ exp(2(1−α)k*);
/// keeping that below `MAX_CANCELLATION` gives
/// z*(α) = α (ln MAX_CANCEL / (2(1−α)))^{−(1−α)/α}.
fn switch_point(alpha: f64) -> f64 {
    let guard = MAX_CANCELLATION.ln() / (2.0 * (1.0 - alpha));
    alpha * guard.powf(-(1.0 - alpha) / alpha)
}

/// Attempts the tail series; `None` means it failed to converge cleanly
/// (budget, overflow, or cancellation) and the integral should be used.
fn tail_series(alpha: f64, z: f64, acc: &Accuracy) -> Option<f64> {
    let coeffs = tail_coeffs(alpha);
    let w = (-alpha * z.ln()).exp(); // z^{-α}
    if !w.is_finite() {
        return None;
    }
    let mut pow = 1.0f64;
    let mut sum = 0.0f64;
    let mut max_abs = 0.0f64;
    let mut small_run = 0usize;
    let k_cap = K_MAX.min(acc.max_terms);
    for k in 1..=k_cap {
        pow *= w;
        if !pow.is_finite() {
            return None;
        }
        let term = coeffs[k] * pow;
        sum += term;
        max_abs = max_abs.max(term.abs());
        if k >= 8 && term.abs() <= 1e-17 * sum.abs().max(1e-300) {
            small_run += 1;
            if small_run >= 2 {
                if max_abs > MAX_CANCELLATION * sum.abs() || sum <= 0.0 {
                    return None;
                }
                return Some(sum / z);
            }
        } else {
            small_run = 0;
        }
    }
    None
}

/// ln A(u) for u ∈ (0, π).
fn ln_a(alpha: f64, u: f64) -> f64 {
    let r = alpha / (1.0 - alpha);
    let ls = u.sin().ln();
    r * ((alpha * u).sin().ln() - ls) + ((1.0 - alpha) * u).sin().ln() - ls
}

/// The Zolotarev pdf integral, evaluated with all exponentials assembled in
/// log space so extreme α or z cannot overflow.
fn zolotarev_pdf(alpha: f64, z: f64, acc: &Accuracy) -> Result<f64> {
    let r = alpha / (1.0 - alpha);
    let ln_y = -r * z.ln();
    let ln_pref = r.ln() - z.ln() / (1.0 - alpha) - std::f64::consts::PI.ln();

    // A(u) ≥ A(0) = α^{α/(1−α)}(1−α); if even the best exponent underflows,
    // the density is zero at f64 resolution.
    let ln_a0 = (r * alpha.ln()) + (1.0 - alpha).ln();
    let ln_a0y = ln_a0 + ln_y;
    if ln_a0y > 0.0 {
        // integrand peak is at u = 0: magnitude A₀ e^{−A₀ y}
        if ln_pref + ln_a0 - ln_a0y.exp() < -745.0 {
            return Ok(0.0);
        }
    }

    let integrand = |u: f64| -> f64 {
        if u <= 0.0 || u >= std::f64::consts::PI {
            return 0.0;
        }
        let la = ln_a(alpha, u);
        let lay = la + ln_y;
        if lay > 700.0 {
            return 0.0;
        }
        let ex = la - lay.exp();
        if ex < -745.0 {
            0.0
        } else {
            ex.exp()
        }
    };

    let local = Accuracy {
        abs_tol: 1e-300,
        rel_tol: acc.rel_tol.min(1e-11),
        max_terms: acc.max_terms,
    };
    let integral = quad::integrate(&integrand, 0.0, std::f64::consts::PI, &local).map_err(|e| {
        match e {
            Error::Quadrature { achieved, requested, .. } => Error::Quadrature {
                context: format!("stable pdf integral branch (alpha={alpha}, z={z})"),
                achieved,
                requested,
            },
            other => other,
        }
    })?;
    if integral.value <= 0.0 {
        return Ok(0.0);
    }
    Ok((ln_pref + integral.value.ln()).exp())
}

/// Density g_α(z) of the one-sided stable law, z > 0.
pub fn stable_pdf(alpha: f64, z: f64, acc: &Accuracy) -> Result<f64> {
    validate_alpha(alpha)?;
    if !(z > 0.0) {
        return Err(Error::Domain(format!(
            "stable density argument must be > 0, got {z}"
        )));
    }
    if z >= switch_point(alpha) {
        if let Some(v) = tail_series(alpha, z, acc) {
            return Ok(v);
        }
        // Series refused (cancellation near the boundary): the integral is
        // valid everywhere.
    }
    zolotarev_pdf(alpha, z, acc)
}

/// CDF F_α(z) = P(S ≤ z) of the one-sided stable law, z > 0; from the Kanter
/// representation F(z) = (1/π) ∫₀^π exp(−A(u) z^{−α/(1−α)}) du.
pub fn stable_cdf(alpha: f64, z: f64, acc: &Accuracy) -> Result<f64> {
    validate_alpha(alpha)?;
    if !(z > 0.0) {
        return Err(Error::Domain(format!(
            "stable CDF argument must be > 0, got {z}"
        )));
    }
    let r = alpha / (1.0 - alpha);
    let ln_y = -r * z.ln();
    let integrand = |u: f64| -> f64 {
        if u <= 0.0 || u >= std::f64::consts::PI {
            return 0.0;
        }
        let lay = ln_a(alpha, u) + ln_y;
        if lay > 700.0 {
            return 0.0;
        }
        let ex = -lay.exp();
        if ex < -745.0 {
            0.0
        } else {
            ex.exp()
        }
    };
    let local = Accuracy {
        abs_tol: acc.abs_tol.min(1e-12),
        rel_tol: acc.rel_tol.min(1e-11),
        max_terms: acc.max_terms,
    };
    let integral = quad::integrate(&integrand, 0.0, std::f64::consts::PI, &local)?;
    Ok((integral.value / std::f64::consts::PI).clamp(0.0, 1.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use statrs::function::erf::erfc;

    fn acc() -> Accuracy {
        Accuracy::default()
    }

    /// Closed form for α = 1/2: g(z) = z^{-3/2} e^{-1/(4z)} / (2√π).
    fn levy_pdf(z: f64) -> f64 {
        z.powf(-1.5) * (-0.25 / z).exp() / (2.0 * std::f64::consts::PI.sqrt())
    }

    #[test]
    fn half_stable_matches_levy_closed_form() {
        for &z in &[0.05, 0.2, 0.5, 1.0, 4.0, 20.0, 1000.0] {
            let v = stable_pdf(0.5, z, &acc()).unwrap();
            assert_relative_eq!(v, levy_pdf(z), max_relative = 1e-9, epsilon = 1e-300);
        }
    }

    #[test]
    fn named_spot_values() {
        // g_{1/2}(1) = e^{-1/4}/(2√π), g_{1/2}(4) = e^{-1/16}/(16√π)
        let v = stable_pdf(0.5, 1.0, &acc()).unwrap();
        assert_relative_eq!(
            v,
            (-0.25f64).exp() / (2.0 * std::f64::consts::PI.sqrt()),
            max_relative = 1e-10
        );
        let v = stable_pdf(0.5, 4.0, &acc()).unwrap();
        assert_relative_eq!(
            v,
            (-1.0f64 / 16.0).exp() / (16.0 * std::f64::consts::PI.sqrt()),
            max_relative = 1e-10
        );
    }

    #[test]
    fn branches_agree_at_switch_point() {
        for &alpha in &[0.3, 0.5, 0.8] {
            let z_star = switch_point(alpha);
            let series = tail_series(alpha, z_star, &acc()).expect("series side of the boundary");
            let integral = zolotarev_pdf(alpha, z_star, &acc()).unwrap();
            assert_relative_eq!(series, integral, max_relative = 1e-8);
            // And slightly inside each branch's own region.
            for &f in &[1.02, 1.2, 2.0] {
                let s = stable_pdf(alpha, z_star * f, &acc()).unwrap();
                let i = zolotarev_pdf(alpha, z_star * f, &acc()).unwrap();
                assert_relative_eq!(s, i, max_relative = 1e-8);
            }
        }
    }

    #[test]
    fn tail_follows_first_series_term() {
        // g_α(z) ~ α z^{-α-1}/Γ(1-α) for z → ∞ (the k = 1 term).
        for &alpha in &[0.3, 0.5, 0.8] {
            let z = 1e6f64;
            let v = stable_pdf(alpha, z, &acc()).unwrap();
            let lead = alpha * z.powf(-alpha - 1.0)
                / statrs::function::gamma::gamma(1.0 - alpha);
            assert_relative_eq!(v, lead, max_relative = 1e-3);
        }
    }

    #[test]
    fn monotone_decay_for_large_arguments() {
        for &alpha in &[0.3, 0.5, 0.8] {
            let mut prev = f64::INFINITY;
            for i in 0..60 {
                let z = 2.0f64 + i as f64;
                let v = stable_pdf(alpha, z, &acc()).unwrap();
                assert!(v < prev, "g_{alpha} must decay at z={z}");
                assert!(v > 0.0);
                prev = v;
            }
        }
    }

    #[test]
    fn cdf_matches_levy_erfc_form() {
        // α = 1/2: F(z) = erfc(1/(2√z)).
        for &z in &[0.1, 0.5, 1.0, 3.0, 10.0] {
            let v = stable_cdf(0.5, z, &acc()).unwrap();
            assert_relative_eq!(v, erfc(0.5 / z.sqrt()), epsilon = 1e-10);
        }
    }

    #[test]
    fn domain_errors() {
        assert!(matches!(stable_pdf(0.5, 0.0, &acc()), Err(Error::Domain(_))));
        assert!(matches!(stable_pdf(0.5, -1.0, &acc()), Err(Error::Domain(_))));
        assert!(matches!(stable_pdf(1.0, 1.0, &acc()), Err(Error::Domain(_))));
        assert!(matches!(stable_pdf(0.0, 1.0, &acc()), Err(Error::Domain(_))));
    }

    #[test]
    fn deep_left_tail_underflows_to_zero() {
        // For α = 0.8, g(10^{-3}) has log-density ≈ -8·10^{10}.
        let v = stable_pdf(0.8, 1e-3, &acc()).unwrap();
        assert_eq!(v, 0.0);
    }
}
