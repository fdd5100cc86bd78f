//! Exact polynomial arithmetic over GF(p) and QQ: coefficients, monomials,
//! monomial orders, sparse polynomials, and multigradings.

mod coef;
mod grading;
mod monomial;
mod poly;

pub use coef::{Coef, FieldKind};
pub use grading::{Grading, MultiDeg};
pub use monomial::{Monomial, MonomialOrder};
pub use poly::{Polynomial, Ring};
