//! Exact integrals of products of Bernoulli polynomials.
//!
//! For indices `k_1, ..., k_r >= 0` the crate evaluates
//!
//! ```text
//! I(x) = ∫_0^x B_{k_1}(z) ··· B_{k_r}(z) dz
//! ```
//!
//! with exact rational arithmetic, through several independent routes:
//!
//! * [`integrals::closed_form_integral`]: the alternating sum over
//!   compositions with multinomial weights of boundary terms
//!   `C̃ = (B_{m_1}(x)···B_{m_r}(x) - B_{m_1}···B_{m_r}) / (m_1!···m_r!)`;
//! * [`integrals::recurrence_integral`]: the depth-`mu` integration-by-parts
//!   recurrence, whose leftover integrals are evaluated directly;
//! * the two-, three- and four-factor specialisations;
//! * [`integrals::oracle_integral`]: brute-force polynomial expansion, used as
//!   ground truth everywhere.
//!
//! [`verify`] packages the cross-checks as sweeps and [`cli`] exposes all of
//! it through the `bernint` binary.

pub mod bernoulli;
pub mod cli;
mod error;
pub mod exact;
pub mod integrals;
pub mod verify;

pub use bernoulli::{BernoulliCache, Polynomial};
pub use error::{Error, Result};
pub use exact::{MultiIndex, Rational};
pub use integrals::{IntegralSpec, ScaledValue};
