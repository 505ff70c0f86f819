//! Linear-algebra search for `w` with `g^2 | w(f_1, ..., f_r)`.
//!
//! Division by the single polynomial `g^2` gives a unique normal form, so
//! `w -> NF(w(f))` is linear in the coefficients of `w` and the admissible
//! `w` of degree at most `d` form the nullspace of an exact matrix.
//! Monomial images are built incrementally as `NF(m * y_i) = NF(NF(m) * f_i)`.

use std::collections::{BTreeMap, HashMap, HashSet};

use serde::Serialize;

use super::certificate::{Certificate, Ctx};
use crate::arith::Rational;
use crate::error::{Error, Result};
use crate::factor::{gcd_all, is_irreducible, is_squarefree, normalize};
use crate::linalg::nullspace;
use crate::poly::{Monomial, PolyMap, Polynomial, Ring};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum WitnessKind {
    Irreducible,
    SquareFree,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Outcome {
    Found,
    NoneUpToBound,
}

#[derive(Clone, Debug, Serialize)]
pub struct WitnessResult {
    pub outcome: Outcome,
    pub witness: Option<Polynomial>,
    pub witness_kind: WitnessKind,
    pub degree_searched: u32,
    /// `w(f) / g^2`.
    pub certificate: Option<Polynomial>,
    /// Nullspace dimension at each degree `1..=degree_searched`.
    pub nullspace_dims: Vec<usize>,
    /// Number of nullspace elements whose kind was tested.
    pub candidates_tested: usize,
    /// Degrees whose whole nullspace shares a repeated factor, so no element
    /// can be square-free and no scan was needed.
    pub square_gcd_degrees: Vec<u32>,
}

impl WitnessResult {
    pub fn found(&self) -> bool {
        self.outcome == Outcome::Found
    }
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct WitnessConfig {
    pub max_degree: u32,
    /// Integer combination coefficients range over `[-C, C]`.
    pub combination_bound: i64,
    /// Cap on combinations scanned per degree.
    pub max_combinations: usize,
}

impl Default for WitnessConfig {
    fn default() -> Self {
        WitnessConfig { max_degree: 8, combination_bound: 2, max_combinations: 5000 }
    }
}

/// Exponent vectors in `r` variables of total degree exactly `d`, in
/// decreasing lexicographic order.
pub fn monomials_of_degree(r: usize, d: u32) -> Vec<Vec<u32>> {
    fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i + 1 == cur.len() {
            cur[i] = left;
            out.push(cur.clone());
            return;
        }
        for e in (0..=left).rev() {
            cur[i] = e;
            rec(i + 1, left - e, cur, out);
        }
    }
    let mut out = Vec::new();
    rec(0, d, &mut vec![0; r], &mut out);
    out
}

/// Caches `NF(m(f))` modulo one polynomial.
pub(crate) struct ImageTable<'a> {
    images: &'a [Polynomial],
    modulus: Polynomial,
    table: HashMap<Vec<u32>, Polynomial>,
}

impl<'a> ImageTable<'a> {
    pub(crate) fn new(images: &'a [Polynomial], modulus: Polynomial) -> Self {
        let r = images.len();
        let ring = modulus.ring().clone();
        let mut table = HashMap::new();
        table.insert(vec![0; r], Polynomial::one(&ring).div_rem(&modulus).expect("nonzero").1);
        ImageTable { images, modulus, table }
    }

    pub(crate) fn get(&mut self, e: &[u32]) -> Polynomial {
        if let Some(p) = self.table.get(e) {
            return p.clone();
        }
        let i = e.iter().position(|&k| k > 0).expect("constant is cached");
        let mut prev = e.to_vec();
        prev[i] -= 1;
        let base = self.get(&prev);
        let nf = (&base * &self.images[i]).div_rem(&self.modulus).expect("nonzero").1;
        self.table.insert(e.to_vec(), nf.clone());
        nf
    }
}

fn to_poly(ring: &Ring, cols: &[Vec<u32>], v: &[Rational]) -> Polynomial {
    Polynomial::from_terms(ring, cols.iter().zip(v).filter(|(_, c)| !c.is_zero()).map(|(e, c)| (Monomial(e.clone()), c.clone())))
}

/// Odometer step over `idx` with per-position limits; false when exhausted.
fn advance(idx: &mut [usize], lims: &[usize]) -> bool {
    for p in (0..idx.len()).rev() {
        idx[p] += 1;
        if idx[p] < lims[p] {
            return true;
        }
        idx[p] = 0;
    }
    false
}

/// Coefficient vectors over `[-c, c]` with support of size at least 2,
/// by support size, first nonzero entry positive. Returns the number visited.
fn combinations(k: usize, c: i64, cap: usize, mut visit: impl FnMut(&[i64]) -> bool) -> usize {
    let first: Vec<i64> = (1..=c).collect();
    let rest: Vec<i64> = (-c..=c).filter(|&x| x != 0).collect();
    let mut count = 0;
    for size in 2..=k {
        let mut lims = vec![rest.len(); size];
        lims[0] = first.len();
        for support in crate::jacobian::subsets(k, size) {
            let mut idx = vec![0usize; size];
            loop {
                let mut v = vec![0i64; k];
                for (p, (&s, &i)) in support.iter().zip(&idx).enumerate() {
                    v[s] = if p == 0 { first[i] } else { rest[i] };
                }
                count += 1;
                if visit(&v) || count >= cap {
                    return count;
                }
                if !advance(&mut idx, &lims) {
                    break;
                }
            }
        }
    }
    count
}

fn passes(w: &Polynomial, kind: WitnessKind) -> Result<bool> {
    if w.is_constant() {
        return Ok(false);
    }
    match kind {
        WitnessKind::Irreducible => is_irreducible(w),
        WitnessKind::SquareFree => is_squarefree(w),
    }
}

fn check_inputs(f: &PolyMap, g: &Polynomial) -> Result<()> {
    if !crate::poly::same_ring(g.ring(), f.target()) {
        return Err(Error::RingMismatch);
    }
    if g.is_zero() {
        return Err(Error::ZeroPolynomial("witness_search"));
    }
    if g.is_constant() {
        return Err(Error::ConstantPolynomial("witness_search"));
    }
    if f.images().iter().any(Polynomial::is_zero) {
        return Err(Error::ZeroPolynomial("witness_search map"));
    }
    if !is_irreducible(g)? {
        return Err(Error::Reducible);
    }
    Ok(())
}

/// Searches degrees `1..=max_degree` with the default combination bound.
pub fn witness_search(f: &PolyMap, g: &Polynomial, max_degree: u32, kind: WitnessKind) -> Result<WitnessResult> {
    witness_search_with(f, g, kind, &WitnessConfig { max_degree, ..WitnessConfig::default() })
}

pub fn witness_search_with(f: &PolyMap, g: &Polynomial, kind: WitnessKind, cfg: &WitnessConfig) -> Result<WitnessResult> {
    check_inputs(f, g)?;
    let src = f.source_ring();
    let r = f.arity();
    let g2 = g.pow(2);
    let mut table = ImageTable::new(f.images(), g2.clone());
    let mut cols: Vec<Vec<u32>> = monomials_of_degree(r, 0);
    let mut dims = Vec::new();
    let mut tested: HashSet<String> = HashSet::new();
    let mut candidates_tested = 0;
    let mut square_gcd = Vec::new();
    for d in 1..=cfg.max_degree {
        cols.extend(monomials_of_degree(r, d));
        let mut rows: BTreeMap<Monomial, usize> = BTreeMap::new();
        let images: Vec<Polynomial> = cols.iter().map(|e| table.get(e)).collect();
        for p in &images {
            for (m, _) in p.terms() {
                let next = rows.len();
                rows.entry(m.clone()).or_insert(next);
            }
        }
        let mut matrix = vec![vec![Rational::zero(); cols.len()]; rows.len()];
        for (j, p) in images.iter().enumerate() {
            for (m, c) in p.terms() {
                matrix[rows[m]][j] = c.clone();
            }
        }
        let basis = nullspace(&matrix, cols.len());
        dims.push(basis.len());
        if basis.is_empty() {
            continue;
        }
        let span: Vec<Polynomial> = basis.iter().map(|v| to_poly(&src, &cols, v)).collect();
        let common = gcd_all(&span).expect("nonzero basis");
        if !common.is_constant() && !is_squarefree(&common)? {
            square_gcd.push(d);
            continue;
        }
        let mut hit: Option<Polynomial> = None;
        let mut consider = |w: Polynomial, tested: &mut HashSet<String>, n: &mut usize| -> Result<bool> {
            let w = normalize(&w);
            if w.is_zero() || !tested.insert(w.to_string()) {
                return Ok(false);
            }
            *n += 1;
            if passes(&w, kind)? {
                hit = Some(w);
                return Ok(true);
            }
            Ok(false)
        };
        let mut done = false;
        for w in span {
            if consider(w, &mut tested, &mut candidates_tested)? {
                done = true;
                break;
            }
        }
        if !done && basis.len() > 1 {
            let mut err = None;
            combinations(basis.len(), cfg.combination_bound, cfg.max_combinations, |coeffs| {
                let mut v = vec![Rational::zero(); cols.len()];
                for (b, &k) in basis.iter().zip(coeffs) {
                    if k != 0 {
                        let k = Rational::from_i64(k);
                        for (x, y) in v.iter_mut().zip(b) {
                            *x += &(&k * y);
                        }
                    }
                }
                match consider(to_poly(&src, &cols, &v), &mut tested, &mut candidates_tested) {
                    Ok(found) => found,
                    Err(e) => {
                        err = Some(e);
                        true
                    }
                }
            });
            if let Some(e) = err {
                return Err(e);
            }
        }
        if let Some(w) = hit {
            let image = f.substitute(&w)?;
            let quotient = image.exact_div(&g2)?.expect("nullspace element is divisible by g^2");
            return Ok(WitnessResult {
                outcome: Outcome::Found,
                witness: Some(w),
                witness_kind: kind,
                degree_searched: d,
                certificate: Some(quotient),
                nullspace_dims: dims,
                candidates_tested,
                square_gcd_degrees: square_gcd,
            });
        }
    }
    Ok(WitnessResult {
        outcome: Outcome::NoneUpToBound,
        witness: None,
        witness_kind: kind,
        degree_searched: cfg.max_degree,
        certificate: None,
        nullspace_dims: dims,
        candidates_tested,
        square_gcd_degrees: square_gcd,
    })
}

impl WitnessResult {
    /// Divisibility certificate for a found witness.
    pub fn to_certificate(&self, f: &PolyMap, g: &Polynomial) -> Option<Certificate> {
        let w = self.witness.as_ref()?;
        Some(Certificate::Divisibility {
            ctx: Ctx::new(f.target(), f.images()),
            w: w.to_string(),
            g: g.to_string(),
            quotient: self.certificate.as_ref()?.to_string(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;
    use crate::poly::PolyRing;

    fn setup(vars: &str, map: &[&str], g: &str) -> (PolyMap, Polynomial) {
        let ring = PolyRing::parse_vars(vars).unwrap();
        let f = PolyMap::new(map.iter().map(|s| parse_poly(s, &ring).unwrap()).collect()).unwrap();
        (f, parse_poly(g, &ring).unwrap())
    }

    #[test]
    fn cubic_example() {
        let (f, g) = setup("x", &["x^3+3*x"], "x^2+1");
        let res = witness_search(&f, &g, 2, WitnessKind::Irreducible).unwrap();
        assert!(res.found());
        assert_eq!(res.witness.as_ref().unwrap().to_string(), "T^2 + 4");
        assert_eq!(res.degree_searched, 2);
        assert_eq!(res.certificate.as_ref().unwrap().to_string(), "x^2 + 4");
        assert!(res.to_certificate(&f, &g).unwrap().verify().unwrap());
    }

    #[test]
    fn identity_has_only_squares() {
        let (f, g) = setup("x", &["x"], "x");
        for kind in [WitnessKind::Irreducible, WitnessKind::SquareFree] {
            let res = witness_search(&f, &g, 2, kind).unwrap();
            assert_eq!(res.outcome, Outcome::NoneUpToBound);
            assert_eq!(res.nullspace_dims, vec![0, 1]);
        }
    }

    #[test]
    fn square_map() {
        let (f, g) = setup("x,y", &["x^2", "y"], "x");
        let res = witness_search(&f, &g, 1, WitnessKind::SquareFree).unwrap();
        assert_eq!(res.witness.as_ref().unwrap().to_string(), "y1");
        assert!(res.certificate.as_ref().unwrap().is_one());
    }

    #[test]
    fn rejects_bad_g() {
        let (f, g) = setup("x", &["x"], "x^2");
        assert!(matches!(witness_search(&f, &g, 2, WitnessKind::Irreducible), Err(Error::Reducible)));
        let (f, g) = setup("x", &["x"], "3");
        assert!(witness_search(&f, &g, 2, WitnessKind::Irreducible).is_err());
    }

    #[test]
    fn combination_enumeration() {
        let mut seen = Vec::new();
        combinations(2, 1, 100, |v| {
            seen.push(v.to_vec());
            false
        });
        assert_eq!(seen, vec![vec![1, -1], vec![1, 1]]);
        let n = combinations(3, 2, 10_000, |_| false);
        // supports of size 2: 3 * (2 * 4), size 3: 2 * 4 * 4
        assert_eq!(n, 24 + 32);
    }

    #[test]
    fn monomial_lists() {
        assert_eq!(monomials_of_degree(2, 2), vec![vec![2, 0], vec![1, 1], vec![0, 2]]);
        assert_eq!(monomials_of_degree(1, 3), vec![vec![3]]);
        assert_eq!(monomials_of_degree(3, 1).len(), 3);
    }
}
