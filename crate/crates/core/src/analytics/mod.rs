//! Closed-form and quadrature evaluation of the process laws, and numerical
//! verification of the governing fractional equations.
//!
//! The module's central property is three-way agreement: for every tested
//! (α, rate, t) the quadrature pmf, the Prabhakar closed form (when the rate
//! is constant) and the Monte Carlo pmf must coincide within their stated
//! tolerances. Everything here is pure; batch jobs parallelize through
//! [`crate::mc`] with deterministic reduction.

mod arrivals;
mod caputo;
mod covariance;
mod cox_check;
mod governing;
mod moments;
mod pmf;

pub use arrivals::{arrival_cdf, arrival_total_mass};
pub use caputo::{caputo_l1, CaputoGrid};
pub use covariance::{fnpp_covariance, npp_covariance};
pub use cox_check::{cox_identity_check, CoxIdentityReport, IdentityDeviation};
pub use governing::{governing_residual, GoverningResidual};
pub use moments::{fnpp_mean, fnpp_moment, fnpp_variance};
pub use pmf::{fhpp_pmf, fnpp_pmf, fnpp_prob, npp_pmf, PmfTable};
