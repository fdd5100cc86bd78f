//! Exact decision procedures for the canonical map from divided powers to
//! symmetric tensors, and for symmetric-tensor base change, over quotients
//! of polynomial rings with GF(p) or QQ coefficients.
//!
//! The pipeline: `polyring` provides exact arithmetic, `modgb` provides
//! Groebner bases for submodules of free modules, `tensoralg` the symmetric
//! group action and divided-power combinatorics, `gammats` the decision
//! procedures themselves, `basechange` and `extalg` the derived checks, and
//! `oracle` an independent graded linear-algebra verifier.

pub mod basechange;
pub mod error;
pub mod extalg;
pub mod gammats;
pub mod modgb;
pub mod oracle;
pub mod polyring;
pub mod tensoralg;

pub use error::Error;
