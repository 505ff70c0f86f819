//! Seeded generators for harness inputs. A fixed seed reproduces every
//! sample exactly (ChaCha8).

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::Rational;
use crate::factor::{is_irreducible, is_squarefree};
use crate::jacobian::jacobian_minors;
use crate::poly::{substitute, Monomial, PolyMap, Polynomial, Ring};

pub struct Gen {
    rng: ChaCha8Rng,
}

impl Gen {
    pub fn new(seed: u64) -> Self {
        Gen { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn range(&mut self, lo: i64, hi: i64) -> i64 {
        self.rng.gen_range(lo..=hi)
    }

    pub fn index(&mut self, n: usize) -> usize {
        self.rng.gen_range(0..n)
    }

    fn nonzero(&mut self, c: i64) -> i64 {
        loop {
            let v = self.range(-c, c);
            if v != 0 {
                return v;
            }
        }
    }

    fn monomial(&mut self, nvars: usize, vars: &[usize], degree: u32) -> Monomial {
        let mut e = vec![0u32; nvars];
        for _ in 0..degree {
            e[*vars.choose(&mut self.rng).expect("some variable")] += 1;
        }
        Monomial(e)
    }

    /// Random polynomial in the listed variables with at most `max_terms`
    /// terms, total degree at most `max_degree` and coefficients in `[-c, c]`.
    pub fn poly_in(&mut self, ring: &Ring, vars: &[usize], max_degree: u32, max_terms: usize, c: i64) -> Polynomial {
        let terms = self.rng.gen_range(1..=max_terms);
        let items: Vec<(Monomial, Rational)> = (0..terms)
            .map(|_| {
                let d = self.rng.gen_range(0..=max_degree);
                (self.monomial(ring.nvars(), vars, d), Rational::from_i64(self.nonzero(c)))
            })
            .collect();
        Polynomial::from_terms(ring, items)
    }

    pub fn poly(&mut self, ring: &Ring, max_degree: u32, max_terms: usize, c: i64) -> Polynomial {
        let vars: Vec<usize> = (0..ring.nvars()).collect();
        self.poly_in(ring, &vars, max_degree, max_terms, c)
    }

    pub fn nonconstant(&mut self, ring: &Ring, max_degree: u32, max_terms: usize, c: i64) -> Polynomial {
        loop {
            let p = self.poly(ring, max_degree.max(1), max_terms, c);
            if !p.is_constant() {
                return p;
            }
        }
    }

    pub fn squarefree(&mut self, ring: &Ring, max_degree: u32, max_terms: usize) -> Polynomial {
        loop {
            let p = self.nonconstant(ring, max_degree, max_terms, 3);
            if is_squarefree(&p).expect("nonzero") {
                return p;
            }
        }
    }

    pub fn irreducible(&mut self, ring: &Ring, max_degree: u32, max_terms: usize) -> Polynomial {
        loop {
            let p = self.nonconstant(ring, max_degree, max_terms, 3);
            if is_irreducible(&p).expect("nonconstant") {
                return crate::factor::normalize(&p);
            }
        }
    }

    /// One elementary automorphism: a triangular shear
    /// `x_i -> x_i + p(other variables)`, a transposition, or a scaling.
    pub fn elementary(&mut self, ring: &Ring, part_degree: u32) -> PolyMap {
        let n = ring.nvars();
        let mut images: Vec<Polynomial> = (0..n).map(|i| Polynomial::var(ring, i).unwrap()).collect();
        let choice = if n == 1 { [0, 2][self.index(2)] } else { self.index(3) };
        match choice {
            0 => {
                let i = self.index(n);
                let others: Vec<usize> = (0..n).filter(|&j| j != i).collect();
                let p = if others.is_empty() {
                    Polynomial::constant(ring, Rational::from_i64(self.nonzero(3)))
                } else {
                    self.poly_in(ring, &others, part_degree, 2, 3)
                };
                images[i] = &images[i] + &p;
            }
            1 => {
                let i = self.index(n);
                let j = (i + 1 + self.index(n - 1)) % n;
                images.swap(i, j);
            }
            _ => {
                let i = self.index(n);
                let c = [(-1, 1), (2, 1), (-2, 1), (1, 2), (3, 1)][self.index(5)];
                let c = Rational::new(c.0.into(), c.1.into()).unwrap();
                images[i] = images[i].scale(&c);
            }
        }
        PolyMap::new(images).expect("square map")
    }

    /// Composition of at most `steps` elementary automorphisms whose
    /// images stay within total degree `max_degree`.
    pub fn keller_map(&mut self, ring: &Ring, steps: usize, max_degree: u32) -> PolyMap {
        let mut acc = PolyMap::identity(ring);
        let count = self.rng.gen_range(1..=steps);
        for _ in 0..count {
            for _attempt in 0..8 {
                let e = self.elementary(ring, 2);
                let next = acc.then(&e).expect("square maps");
                if next.images().iter().all(|f| f.total_degree().unwrap_or(0) <= max_degree) {
                    acc = next;
                    break;
                }
            }
        }
        acc
    }

    /// `F(G)` for a Keller map `G` and a fixed non-Keller outer map `F`
    /// (`y1^2`, `y1^3 + y1`, `y1 * y2` or `y2^3` in one slot).
    pub fn non_keller_map(&mut self, ring: &Ring, steps: usize, max_degree: u32) -> PolyMap {
        let n = ring.nvars();
        let g = self.keller_map(ring, steps, max_degree);
        let mut outer: Vec<Polynomial> = (0..n).map(|i| Polynomial::var(ring, i).unwrap()).collect();
        let y = |i: usize| Polynomial::var(ring, i).unwrap();
        let kind = if n == 1 { self.index(2) } else { self.index(4) };
        match kind {
            0 => outer[0] = y(0).pow(2),
            1 => outer[0] = &y(0).pow(3) + &y(0),
            2 => outer[1] = &y(0) * &y(1),
            _ => outer[1] = y(1).pow(3),
        }
        let images = outer
            .iter()
            .map(|f| substitute(f, g.images(), ring))
            .collect::<crate::Result<Vec<_>>>()
            .expect("arity");
        PolyMap::new(images).expect("square map")
    }

    /// A map with `r` components and an irreducible `g` that fails to
    /// divide at least one maximal minor.
    pub fn pair_without_divisibility(&mut self, ring: &Ring, r: usize, max_degree: u32) -> (PolyMap, Polynomial) {
        loop {
            let f: Vec<Polynomial> = (0..r).map(|_| self.nonconstant(ring, max_degree, 3, 3)).collect();
            let f = PolyMap::new(f).expect("r <= n");
            let minors = jacobian_minors(&f);
            if minors.all_zero() {
                continue;
            }
            let g = self.irreducible(ring, 2, 3);
            let fails = minors.values().any(|m| m.exact_div(&g).expect("nonzero").is_none());
            if fails {
                return (f, g);
            }
        }
    }

    pub fn shuffle<T>(&mut self, items: &mut [T]) {
        items.shuffle(&mut self.rng);
    }
}
