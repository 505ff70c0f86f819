//! Exact polynomial algebra over Q for studying the Jacobian condition
//! through irreducible and square-free polynomials.
//!
//! The crate provides sparse multivariate polynomials, gcd / square-free /
//! factorization machinery, Groebner-basis subalgebra membership, Jacobian
//! minors with the differential gcd, and executable harnesses that search
//! for certified witnesses and counterexamples.

pub mod arith;
pub mod cli;
pub mod error;
pub mod factor;
pub mod groebner;
pub mod harness;
pub mod jacobian;
pub mod linalg;
pub mod parse;
pub mod poly;

pub use arith::{int_gcd, Rational};
pub use error::{Error, Result};
pub use parse::{parse_poly, print_poly, ParseError};
pub use poly::{substitute, Monomial, MonomialOrder, PolyMap, PolyRing, Polynomial, Ring};
