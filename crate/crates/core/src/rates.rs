//! Rate functions λ(t) and cumulative rate functions Λ(t).
//!
//! A rate function is the pair (λ, Λ) with Λ(t) = ∫₀^t λ(u) du, Λ(0) = 0 and
//! Λ nondecreasing; increments Λ(s,t) = Λ(t) − Λ(s) and the generalized
//! inverse Λ⁻¹(y) = inf{t : Λ(t) ≥ y} drive the exact time-change samplers.
//!
//! Families: constant λ, Weibull Λ(t) = (t/b)^c, Makeham
//! Λ(t) = (c/b)(e^{bt} − 1) + μt, and a tabulated form interpolating Λ with a
//! monotone piecewise cubic (interpolating Λ rather than λ guarantees a
//! nondecreasing cumulative; interpolating λ can go negative).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A named rate family or a tabulated cumulative rate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum RateFunction {
    /// λ(t) = λ.
    Constant { lambda: f64 },
    /// Λ(t) = (t/b)^c, λ(t) = (c/b)(t/b)^{c-1}.
    Weibull { b: f64, c: f64 },
    /// Λ(t) = (c/b)(e^{bt} − 1) + μt, λ(t) = c e^{bt} + μ.
    Makeham { c: f64, b: f64, mu: f64 },
    /// Monotone-cubic interpolation of (t, Λ(t)) knots; constant beyond the
    /// last knot (a bounded rate).
    Tabulated(MonotoneCubic),
}

impl RateFunction {
    pub fn constant(lambda: f64) -> Result<Self> {
        if !(lambda > 0.0) || !lambda.is_finite() {
            return Err(Error::Domain(format!(
                "constant rate requires lambda > 0, got {lambda}"
            )));
        }
        Ok(Self::Constant { lambda })
    }

    pub fn weibull(b: f64, c: f64) -> Result<Self> {
        if !(b > 0.0) || !b.is_finite() {
            return Err(Error::Domain(format!("Weibull rate requires b > 0, got {b}")));
        }
        if !(c > 0.0) || !c.is_finite() {
            // c = 0 would force Λ(t) ≡ 1 for t > 0, contradicting Λ(0) = 0.
            return Err(Error::Domain(format!(
                "Weibull rate requires c > 0 (c = 0 breaks the cumulative-rate origin), got {c}"
            )));
        }
        Ok(Self::Weibull { b, c })
    }

    pub fn makeham(c: f64, b: f64, mu: f64) -> Result<Self> {
        if !(c > 0.0) || !(b > 0.0) || !(mu >= 0.0) {
            return Err(Error::Domain(format!(
                "Makeham rate requires c > 0, b > 0, mu ≥ 0, got c={c}, b={b}, mu={mu}"
            )));
        }
        Ok(Self::Makeham { c, b, mu })
    }

    /// Tabulated cumulative rate from (t, Λ(t)) knots. The first knot must be
    /// (0, 0), times strictly increasing, values nondecreasing.
    pub fn tabulated(knots: Vec<(f64, f64)>) -> Result<Self> {
        Ok(Self::Tabulated(MonotoneCubic::new(knots)?))
    }

    /// Λ(t) = Λ(0, t).
    pub fn cumulative(&self, t: f64) -> Result<f64> {
        if !(t >= 0.0) {
            return Err(Error::Domain(format!("cumulative rate requires t ≥ 0, got {t}")));
        }
        Ok(match self {
            Self::Constant { lambda } => lambda * t,
            Self::Weibull { b, c } => (t / b).powf(*c),
            Self::Makeham { c, b, mu } => {
                let ebt = (b * t).exp_m1(); // e^{bt} - 1, accurate near 0
                c / b * ebt + mu * t
            }
            Self::Tabulated(cubic) => cubic.eval(t),
        })
    }

    /// Λ(s, t) = Λ(t) − Λ(s), s ≤ t.
    pub fn increment(&self, s: f64, t: f64) -> Result<f64> {
        if s > t {
            return Err(Error::Order { s, t });
        }
        let inc = self.cumulative(t)? - self.cumulative(s)?;
        // Closed forms are monotone up to rounding; clamp the crumbs.
        Ok(inc.max(0.0))
    }

    /// λ(t). For a Weibull rate with c < 1 the intensity diverges as t → 0⁺
    /// and `intensity(0)` reports the +∞ sentinel; use `cumulative` or
    /// `increment` near the origin instead.
    pub fn intensity(&self, t: f64) -> Result<f64> {
        if !(t >= 0.0) {
            return Err(Error::Domain(format!("intensity requires t ≥ 0, got {t}")));
        }
        Ok(match self {
            Self::Constant { lambda } => *lambda,
            Self::Weibull { b, c } => {
                if t == 0.0 {
                    if *c < 1.0 {
                        f64::INFINITY
                    } else if *c == 1.0 {
                        1.0 / b
                    } else {
                        0.0
                    }
                } else {
                    c / b * (t / b).powf(c - 1.0)
                }
            }
            Self::Makeham { c, b, mu } => c * (b * t).exp() + mu,
            Self::Tabulated(cubic) => cubic.derivative(t),
        })
    }

    /// Generalized inverse Λ⁻¹(y) = inf{t : Λ(t) ≥ y}.
    pub fn inverse_cumulative(&self, y: f64) -> Result<f64> {
        if !(y >= 0.0) {
            return Err(Error::Domain(format!(
                "inverse cumulative rate requires y ≥ 0, got {y}"
            )));
        }
        if y == 0.0 {
            return Ok(0.0);
        }
        match self {
            Self::Constant { lambda } => Ok(y / lambda),
            Self::Weibull { b, c } => Ok(b * y.powf(1.0 / c)),
            Self::Makeham { c, b, mu } => {
                if *mu == 0.0 {
                    Ok((b / c * y).ln_1p() / b)
                } else {
                    Ok(invert_monotone(|t| self.cumulative(t).unwrap_or(f64::NAN), y))
                }
            }
            Self::Tabulated(cubic) => cubic.inverse(y),
        }
    }

    /// sup Λ for bounded rates (`None` when Λ(t) → ∞).
    pub fn upper_bound(&self) -> Option<f64> {
        match self {
            Self::Tabulated(cubic) => Some(cubic.last_value()),
            _ => None,
        }
    }

    /// Time beyond which the intensity is identically zero (tabulated rates
    /// are constant past their last knot); `None` for unbounded families.
    pub fn support_end(&self) -> Option<f64> {
        match self {
            Self::Tabulated(cubic) => Some(cubic.last_time()),
            _ => None,
        }
    }
}

/// Bracketed bisection for strictly increasing unbounded Λ: grows the bracket
/// geometrically, then bisects to relative tolerance ~1e-15 (well inside the
/// 1e-12·(1+t) contract).
fn invert_monotone<F: Fn(f64) -> f64>(f: F, y: f64) -> f64 {
    let mut hi = 1.0f64;
    while f(hi) < y {
        hi *= 2.0;
        if hi > 1e300 {
            return f64::INFINITY;
        }
    }
    let mut lo = 0.0f64;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if f(mid) >= y {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}

/// Monotone piecewise-cubic (Fritsch–Carlson / PCHIP) interpolant of a
/// nondecreasing table; the interpolant is nondecreasing on every interval.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MonotoneCubic {
    ts: Vec<f64>,
    ys: Vec<f64>,
    slopes: Vec<f64>,
}

impl MonotoneCubic {
    pub fn new(knots: Vec<(f64, f64)>) -> Result<Self> {
        if knots.len() < 2 {
            return Err(Error::Grid("tabulated rate needs at least 2 knots".into()));
        }
        if knots[0] != (0.0, 0.0) {
            return Err(Error::Grid(format!(
                "tabulated rate must start at (0, 0), got ({}, {})",
                knots[0].0, knots[0].1
            )));
        }
        for w in knots.windows(2) {
            if !(w[1].0 > w[0].0) {
                return Err(Error::Grid(format!(
                    "tabulated times must be strictly increasing, got {} then {}",
                    w[0].0, w[1].0
                )));
            }
            if !(w[1].1 >= w[0].1) {
                return Err(Error::Grid(format!(
                    "tabulated cumulative rate must be nondecreasing, got {} then {}",
                    w[0].1, w[1].1
                )));
            }
        }
        if knots
            .iter()
            .any(|&(t, y)| !t.is_finite() || !y.is_finite())
        {
            return Err(Error::Grid("tabulated knots must be finite".into()));
        }

        let n = knots.len();
        let ts: Vec<f64> = knots.iter().map(|k| k.0).collect();
        let ys: Vec<f64> = knots.iter().map(|k| k.1).collect();
        let h: Vec<f64> = ts.windows(2).map(|w| w[1] - w[0]).collect();
        let d: Vec<f64> = (0..n - 1).map(|i| (ys[i + 1] - ys[i]) / h[i]).collect();

        let mut slopes = vec![0.0; n];
        // Interior: weighted harmonic mean when the secants agree in sign.
        for i in 1..n - 1 {
            if d[i - 1] * d[i] > 0.0 {
                let w1 = 2.0 * h[i] + h[i - 1];
                let w2 = h[i] + 2.0 * h[i - 1];
                slopes[i] = (w1 + w2) / (w1 / d[i - 1] + w2 / d[i]);
            }
        }
        // Endpoints: one-sided three-point estimate, clamped for monotonicity.
        slopes[0] = endpoint_slope(h[0], h.get(1).copied().unwrap_or(h[0]), d[0], d.get(1).copied().unwrap_or(d[0]));
        slopes[n - 1] = endpoint_slope(
            h[n - 2],
            if n >= 3 { h[n - 3] } else { h[n - 2] },
            d[n - 2],
            if n >= 3 { d[n - 3] } else { d[n - 2] },
        );

        Ok(Self { ts, ys, slopes })
    }

    fn segment(&self, t: f64) -> usize {
        // index i with ts[i] <= t < ts[i+1]
        match self.ts.binary_search_by(|x| x.partial_cmp(&t).unwrap()) {
            Ok(i) => i.min(self.ts.len() - 2),
            Err(0) => 0,
            Err(i) => (i - 1).min(self.ts.len() - 2),
        }
    }

    pub fn eval(&self, t: f64) -> f64 {
        let n = self.ts.len();
        if t <= self.ts[0] {
            return self.ys[0];
        }
        if t >= self.ts[n - 1] {
            return self.ys[n - 1]; // constant beyond the table: bounded rate
        }
        let i = self.segment(t);
        let h = self.ts[i + 1] - self.ts[i];
        let s = (t - self.ts[i]) / h;
        let (y0, y1) = (self.ys[i], self.ys[i + 1]);
        let (m0, m1) = (self.slopes[i] * h, self.slopes[i + 1] * h);
        let s2 = s * s;
        let s3 = s2 * s;
        y0 * (2.0 * s3 - 3.0 * s2 + 1.0)
            + m0 * (s3 - 2.0 * s2 + s)
            + y1 * (-2.0 * s3 + 3.0 * s2)
            + m1 * (s3 - s2)
    }

    pub fn derivative(&self, t: f64) -> f64 {
        let n = self.ts.len();
        if t <= self.ts[0] {
            return self.slopes[0].max(0.0);
        }
        if t >= self.ts[n - 1] {
            return 0.0;
        }
        let i = self.segment(t);
        let h = self.ts[i + 1] - self.ts[i];
        let s = (t - self.ts[i]) / h;
        let (y0, y1) = (self.ys[i], self.ys[i + 1]);
        let (m0, m1) = (self.slopes[i] * h, self.slopes[i + 1] * h);
        let ds = (y0 * (6.0 * s * s - 6.0 * s)
            + m0 * (3.0 * s * s - 4.0 * s + 1.0)
            + y1 * (-6.0 * s * s + 6.0 * s)
            + m1 * (3.0 * s * s - 2.0 * s))
            / h;
        ds.max(0.0)
    }

    pub fn inverse(&self, y: f64) -> Result<f64> {
        let n = self.ts.len();
        if y > self.ys[n - 1] {
            return Err(Error::OutOfRange(format!(
                "requested cumulative level {y} exceeds the table maximum {}",
                self.ys[n - 1]
            )));
        }
        if y <= self.ys[0] {
            return Ok(self.ts[0]);
        }
        // Leftmost segment whose right value reaches y, then bisect inside.
        let j = self.ys.partition_point(|&v| v < y);
        let (mut lo, mut hi) = (self.ts[j - 1], self.ts[j]);
        for _ in 0..100 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if self.eval(mid) >= y {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        Ok(hi)
    }

    pub fn last_value(&self) -> f64 {
        *self.ys.last().expect("cubic has knots")
    }

    pub fn last_time(&self) -> f64 {
        *self.ts.last().expect("cubic has knots")
    }

    pub fn knots(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.ts.iter().copied().zip(self.ys.iter().copied())
    }
}

fn endpoint_slope(h0: f64, h1: f64, d0: f64, d1: f64) -> f64 {
    let m = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
    if m * d0 <= 0.0 {
        0.0
    } else if d0 * d1 < 0.0 && m.abs() > 3.0 * d0.abs() {
        3.0 * d0
    } else {
        m
    }
}
