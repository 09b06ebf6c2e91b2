//! Distribution-comparison helpers used by the verification suites:
//! Kolmogorov–Smirnov statistics, total-variation distance, the Hill tail
//! estimator, and basic sample moments.

/// One-sample KS statistic sup_x |F̂(x) − F(x)| over a sorted sample against
/// an exact CDF.
pub fn ks_statistic_sorted<F: Fn(f64) -> f64>(sorted: &[f64], cdf: F) -> f64 {
    let n = sorted.len() as f64;
    let mut d = 0.0f64;
    for (i, &x) in sorted.iter().enumerate() {
        let f = cdf(x);
        let hi = (i as f64 + 1.0) / n - f;
        let lo = f - i as f64 / n;
        d = d.max(hi.abs()).max(lo.abs());
    }
    d
}

/// One-sample KS statistic restricted to a grid of evaluation points with
/// precomputed CDF values (for CDFs that are expensive to evaluate).
pub fn ks_statistic_grid(sorted: &[f64], grid: &[f64], cdf_values: &[f64]) -> f64 {
    assert_eq!(grid.len(), cdf_values.len());
    let n = sorted.len() as f64;
    let mut d = 0.0f64;
    for (&g, &f) in grid.iter().zip(cdf_values) {
        let emp = sorted.partition_point(|&x| x <= g) as f64 / n;
        d = d.max((emp - f).abs());
    }
    d
}

/// Two-sample KS statistic between sorted samples.
pub fn ks_two_sample_sorted(a: &[f64], b: &[f64]) -> f64 {
    let (na, nb) = (a.len() as f64, b.len() as f64);
    let (mut i, mut j) = (0usize, 0usize);
    let mut d = 0.0f64;
    while i < a.len() && j < b.len() {
        let (xa, xb) = (a[i], b[j]);
        if xa <= xb {
            i += 1;
        }
        if xb <= xa {
            j += 1;
        }
        d = d.max((i as f64 / na - j as f64 / nb).abs());
    }
    d
}

/// Asymptotic two-sided p-value of the KS statistic `d` at effective sample
/// size `n_eff` (n for one sample, n·m/(n+m) for two), with the standard
/// finite-n correction.
pub fn ks_p_value(d: f64, n_eff: f64) -> f64 {
    let sqrt_n = n_eff.sqrt();
    let lambda = (sqrt_n + 0.12 + 0.11 / sqrt_n) * d;
    if lambda < 1e-3 {
        return 1.0;
    }
    let mut sum = 0.0f64;
    for j in 1..=100 {
        let jf = j as f64;
        let term = (-2.0 * jf * jf * lambda * lambda).exp();
        sum += if j % 2 == 1 { term } else { -term };
        if term < 1e-16 {
            break;
        }
    }
    (2.0 * sum).clamp(0.0, 1.0)
}

/// Total-variation distance ½ Σ |p − q| between pmf vectors over a common
/// support (shorter vector padded with zeros).
pub fn tv_distance(p: &[f64], q: &[f64]) -> f64 {
    let len = p.len().max(q.len());
    let mut s = 0.0f64;
    for i in 0..len {
        let pi = p.get(i).copied().unwrap_or(0.0);
        let qi = q.get(i).copied().unwrap_or(0.0);
        s += (pi - qi).abs();
    }
    0.5 * s
}

/// Hill estimator of the tail index from the top `k` order statistics of a
/// sorted sample: 1 / mean(ln X_{(n-i+1)} − ln X_{(n-k)}).
pub fn hill_tail_index(sorted: &[f64], k: usize) -> f64 {
    let n = sorted.len();
    assert!(k >= 2 && k < n, "need 2 ≤ k < n");
    let x_k = sorted[n - k - 1];
    let mean_log: f64 = sorted[n - k..]
        .iter()
        .map(|&x| (x / x_k).ln())
        .sum::<f64>()
        / k as f64;
    1.0 / mean_log
}

/// Empirical pmf over counts 0..=x_max.
pub fn pmf_from_counts(samples: &[u64], x_max: usize) -> Vec<f64> {
    let mut pmf = vec![0.0; x_max + 1];
    let n = samples.len() as f64;
    for &s in samples {
        if (s as usize) <= x_max {
            pmf[s as usize] += 1.0 / n;
        }
    }
    pmf
}

/// Sample mean and standard error of the mean.
pub fn mean_and_se(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let var = xs.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}

/// Unbiased sample variance.
pub fn sample_variance(xs: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    xs.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / (n - 1.0)
}
