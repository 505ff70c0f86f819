use crate::error::{Error, Result};
use crate::poly::polynomial::{substitute, Polynomial};
use crate::poly::ring::{same_ring, PolyRing, Ring};

/// A tuple `(f_1, ..., f_r)` of polynomials in a common ring with
/// `1 <= r <= n`. When `r == n` it is the endomorphism `x_i -> f_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMap {
    target: Ring,
    images: Vec<Polynomial>,
}

impl PolyMap {
    pub fn new(images: Vec<Polynomial>) -> Result<Self> {
        let target = images.first().ok_or(Error::EmptyGenerators)?.ring().clone();
        if images.iter().any(|f| !same_ring(f.ring(), &target)) {
            return Err(Error::RingMismatch);
        }
        let (r, n) = (images.len(), target.nvars());
        if r > n {
            return Err(Error::BadMapArity { r, n });
        }
        Ok(PolyMap { target, images })
    }

    pub fn identity(ring: &Ring) -> Self {
        let images = (0..ring.nvars()).map(|i| Polynomial::var(ring, i).unwrap()).collect();
        PolyMap { target: ring.clone(), images }
    }

    pub fn target(&self) -> &Ring {
        &self.target
    }

    pub fn images(&self) -> &[Polynomial] {
        &self.images
    }

    /// Number of component polynomials `r`.
    pub fn arity(&self) -> usize {
        self.images.len()
    }

    pub fn nvars(&self) -> usize {
        self.target.nvars()
    }

    pub fn is_endomorphism(&self) -> bool {
        self.arity() == self.nvars()
    }

    /// Ring the source polynomials `w` live in (`T` or `y1..yr`).
    pub fn source_ring(&self) -> Ring {
        PolyRing::witness_ring(self.arity())
    }

    /// `w(f_1, ..., f_r)`.
    pub fn substitute(&self, w: &Polynomial) -> Result<Polynomial> {
        substitute(w, &self.images, &self.target)
    }

    /// Composition as endomorphisms: the tuple `(g_1(f), ..., g_n(f))`,
    /// i.e. the map `w -> self(other(w))`.
    pub fn then(&self, other: &PolyMap) -> Result<PolyMap> {
        if !self.is_endomorphism() || !other.is_endomorphism() {
            return Err(Error::NotSquare { r: self.arity(), n: self.nvars() });
        }
        let n = self.nvars();
        let src = other.target.clone();
        if !same_ring(&src, &self.target) {
            return Err(Error::RingMismatch);
        }
        let images = other
            .images
            .iter()
            .map(|g| substitute(g, &self.images, &self.target))
            .collect::<Result<Vec<_>>>()?;
        debug_assert_eq!(images.len(), n);
        Ok(PolyMap { target: self.target.clone(), images })
    }

    /// Reads a polynomial written in the target ring's own variables as a
    /// source polynomial (endomorphism case).
    pub fn as_source(&self, w: &Polynomial) -> Result<Polynomial> {
        if w.nvars() != self.arity() {
            return Err(Error::ArityMismatch { expected: self.arity(), found: w.nvars() });
        }
        let src = self.source_ring();
        let mapping: Vec<usize> = (0..w.nvars()).collect();
        Ok(w.embed(&src, &mapping))
    }
}
