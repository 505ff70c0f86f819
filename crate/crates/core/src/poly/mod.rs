//! Sparse multivariate polynomials over Q.

mod map;
mod polynomial;
mod ring;

pub use map::PolyMap;
pub use polynomial::{substitute, Polynomial};
pub use ring::{same_ring, Monomial, MonomialOrder, PolyRing, Ring};
