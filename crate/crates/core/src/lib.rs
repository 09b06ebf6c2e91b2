//! Fractional non-homogeneous Poisson processes.
//!
//! The central object is the counting process obtained by running a unit-rate
//! Poisson process through a cumulative rate function Λ and an inverse
//! α-stable subordinator Y_α:
//!
//! ```text
//! N_α(t) = N₁(Λ(Y_α(t))),   0 < α < 1.
//! ```
//!
//! The crate provides three independent routes to its law — exact path
//! simulation, closed forms built on the three-parameter Mittag-Leffler
//! function, and adaptive quadrature against the inverse-subordinator density
//! h_α — plus numerical verification of the fractional governing equations.
//!
//! Module map:
//!
//! * [`special`] — Mittag-Leffler family, Wright function, one-sided stable
//!   density g_α, inverse-subordinator density/CDF h_α/H_α, the Cox spectral
//!   density K_α, Stirling numbers of the second kind.
//! * [`rates`] — rate functions λ(t) and cumulative rates Λ(t): constant,
//!   Weibull, Makeham, tabulated; increments and generalized inverses.
//! * [`subordinator`] — sampling L_α and Y_α: exact single-time draws,
//!   discretized paths, first-passage inversion, joint draws.
//! * [`processes`] — event-stream simulation: classical, renewal-fractional,
//!   subordinated-fractional, and the fractional increment process.
//! * [`analytics`] — pmfs, moments, covariance, arrival-time laws, the Caputo
//!   L1 scheme, governing-equation residuals, Cox/Laplace identity checks.
//! * [`mc`] — reproducible Monte Carlo batches; with the default `parallel`
//!   feature replicas run on rayon, partitioned by RNG stream so results are
//!   independent of worker count.
//! * [`stats`] — Kolmogorov–Smirnov / total-variation / Hill helpers used by
//!   the verification suites.

pub mod accuracy;
pub mod analytics;
pub mod error;
pub mod mc;
pub mod processes;
pub mod quad;
pub mod rates;
pub mod rng;
pub mod special;
pub mod stats;
pub mod subordinator;

pub use accuracy::Accuracy;
pub use error::{Error, Result};
pub use rates::RateFunction;
pub use rng::RngStream;
