//! Gcd, square-free decomposition and factorization over Q.
//!
//! Normalization convention: a normalized polynomial has coprime integer
//! coefficients and a positive leading coefficient under its ring's order.
//! Gcds are returned normalized, so "the gcd is a nonzero constant" is the
//! test `gcd.is_one()`.

mod dense;
mod gcd;
mod kronecker;
pub(crate) mod modp;
mod zassenhaus;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::arith::{int_gcd, int_lcm, Rational};
use crate::error::{Error, Result};
use crate::poly::Polynomial;

pub(crate) use gcd::content_in;

/// `unit * prod(part^multiplicity)`, parts square-free, pairwise coprime,
/// normalized and nonconstant, multiplicities distinct and increasing.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SquareFreeDecomposition {
    pub unit: Rational,
    pub parts: Vec<(Polynomial, u32)>,
}

impl SquareFreeDecomposition {
    pub fn expand(&self, like: &Polynomial) -> Polynomial {
        self.parts.iter().fold(Polynomial::constant(like.ring(), self.unit.clone()), |acc, (s, i)| {
            &acc * &s.pow(*i)
        })
    }
}

/// `unit * prod(factor^multiplicity)` with irreducible, normalized,
/// pairwise non-associate factors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Factorization {
    pub unit: Rational,
    pub factors: Vec<(Polynomial, u32)>,
}

impl Factorization {
    pub fn expand(&self, like: &Polynomial) -> Polynomial {
        self.factors.iter().fold(
            Polynomial::constant(like.ring(), self.unit.clone()),
            |acc, (s, i)| &acc * &s.pow(*i),
        )
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|(_, m)| *m == 1)
    }
}

fn content_of(p: &Polynomial) -> Rational {
    let mut den = BigInt::one();
    let mut num = BigInt::zero();
    for (_, c) in p.terms() {
        den = int_lcm(&den, c.denom());
        num = int_gcd(&num, c.numer());
    }
    let mut c = Rational::new(num, den).expect("positive lcm");
    if p.leading_coefficient().is_some_and(|lc| lc.is_negative()) {
        c = -c;
    }
    c
}

/// Splits `p` into `content * primitive` where the primitive part has
/// coprime integer coefficients and a positive leading coefficient.
pub fn content_primitive(p: &Polynomial) -> Result<(Rational, Polynomial)> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial("content_primitive"));
    }
    let c = content_of(p);
    let inv = c.recip()?;
    Ok((c, p.scale(&inv)))
}

/// Primitive part with positive leading coefficient; zero stays zero.
pub fn normalize(p: &Polynomial) -> Polynomial {
    if p.is_zero() {
        return p.clone();
    }
    let c = content_of(p);
    p.scale(&c.recip().expect("nonzero content"))
}

/// Normalized greatest common divisor.
pub fn gcd_multi(p: &Polynomial, q: &Polynomial) -> Result<Polynomial> {
    if p.ring() != q.ring() {
        return Err(Error::RingMismatch);
    }
    if p.is_zero() && q.is_zero() {
        return Err(Error::ZeroPolynomial("gcd"));
    }
    Ok(gcd::gcd_raw(p, q))
}

/// Normalized gcd of several polynomials (zeros ignored); `None` if all are zero.
pub fn gcd_all(items: &[Polynomial]) -> Option<Polynomial> {
    let nonzero: Vec<Polynomial> = items.iter().filter(|p| !p.is_zero()).cloned().collect();
    if nonzero.is_empty() {
        None
    } else {
        Some(gcd::gcd_list(&nonzero))
    }
}

/// `Some(q / p)` when `p` divides `q`.
pub fn divides(p: &Polynomial, q: &Polynomial) -> Result<Option<Polynomial>> {
    if p.ring() != q.ring() {
        return Err(Error::RingMismatch);
    }
    if p.is_zero() {
        return Err(Error::ZeroPolynomial("divides"));
    }
    q.exact_div(p)
}

/// True iff no nonconstant square divides `p`; decided by
/// `gcd(p, dp/dx_1, ..., dp/dx_n) == 1`.
pub fn is_squarefree(p: &Polynomial) -> Result<bool> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial("is_squarefree"));
    }
    let mut g = normalize(p);
    if g.is_constant() {
        return Ok(true);
    }
    for v in p.variables() {
        let d = p.partial_derivative(v)?;
        g = gcd::gcd_raw(&g, &d);
        if g.is_one() {
            return Ok(true);
        }
    }
    Ok(g.is_constant())
}

/// Square-free decomposition. Contents are split off one variable at a time
/// and each primitive part goes through Yun's algorithm in that variable.
pub fn squarefree_decompose(p: &Polynomial) -> Result<SquareFreeDecomposition> {
    let (_, prim) = content_primitive(p)?;
    let mut by_mult: BTreeMap<u32, Polynomial> = BTreeMap::new();
    squarefree_rec(&prim, &mut by_mult);
    let parts: Vec<(Polynomial, u32)> =
        by_mult.into_iter().map(|(i, s)| (normalize(&s), i)).collect();
    let expanded = parts.iter().fold(Polynomial::one(p.ring()), |acc, (s, i)| &acc * &s.pow(*i));
    let unit = p.leading_coefficient().unwrap() * &expanded.leading_coefficient().unwrap().recip()?;
    Ok(SquareFreeDecomposition { unit, parts })
}

fn merge_part(acc: &mut BTreeMap<u32, Polynomial>, s: Polynomial, i: u32) {
    if s.is_constant() {
        return;
    }
    acc.entry(i).and_modify(|e| *e = &*e * &s).or_insert(s);
}

fn squarefree_rec(f: &Polynomial, acc: &mut BTreeMap<u32, Polynomial>) {
    if f.is_constant() {
        return;
    }
    let v = f.variables()[0];
    let cont = content_in(f, v);
    let pp = f.exact_div(&cont).expect("nonzero").expect("content divides");
    for (s, i) in yun(&pp, v) {
        merge_part(acc, s, i);
    }
    squarefree_rec(&cont, acc);
}

/// Yun's algorithm in variable `v` for `f` primitive in `v`.
fn yun(f: &Polynomial, v: usize) -> Vec<(Polynomial, u32)> {
    let d = |p: &Polynomial| p.partial_derivative(v).expect("valid index");
    let q = |a: &Polynomial, b: &Polynomial| a.exact_div(b).expect("nonzero").expect("exact in Yun");
    let mut out = Vec::new();
    if f.degree_in(v).unwrap_or(0) == 0 {
        return out;
    }
    let df = d(f);
    let a0 = gcd::gcd_raw(f, &df);
    let mut b = q(f, &a0);
    let c = q(&df, &a0);
    let mut dd = &c - &d(&b);
    let mut i = 1;
    while !b.is_constant() {
        let a = gcd::gcd_raw(&b, &dd);
        let nb = q(&b, &a);
        let c = q(&dd, &a);
        dd = &c - &d(&nb);
        if !a.is_constant() {
            out.push((normalize(&a), i));
        }
        b = nb;
        i += 1;
    }
    out
}

fn sort_factors(v: &mut [(Polynomial, u32)]) {
    v.sort_by(|(a, i), (b, j)| {
        a.total_degree()
            .cmp(&b.total_degree())
            .then_with(|| a.len().cmp(&b.len()))
            .then_with(|| a.to_string().cmp(&b.to_string()))
            .then_with(|| i.cmp(j))
    });
}

/// Complete factorization of a univariate polynomial over Q.
pub fn factor_univariate(p: &Polynomial) -> Result<Factorization> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial("factor_univariate"));
    }
    let vars = p.variables();
    if vars.len() > 1 {
        return Err(Error::NotUnivariate("factor_univariate"));
    }
    let mut factors = Vec::new();
    if let Some(&v) = vars.first() {
        for (s, i) in dense::yun_q(&dense::to_dense(p, v)) {
            let z = dense::to_primitive_z(&s);
            for g in zassenhaus::factor_squarefree_z(&z) {
                factors.push((dense::from_dense_z(&g, p.ring(), v), i));
            }
        }
    }
    sort_factors(&mut factors);
    let unit = unit_of(p, &factors)?;
    Ok(Factorization { unit, factors })
}

fn unit_of(p: &Polynomial, factors: &[(Polynomial, u32)]) -> Result<Rational> {
    let expanded = factors.iter().fold(Polynomial::one(p.ring()), |acc, (s, i)| &acc * &s.pow(*i));
    p.leading_coefficient().unwrap().checked_div(expanded.leading_coefficient().unwrap())
}

/// Complete factorization over Q of a polynomial in any number of variables.
/// Multivariate square-free parts are split by Kronecker substitution.
pub fn factor(p: &Polynomial) -> Result<Factorization> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial("factor"));
    }
    if p.variables().len() <= 1 {
        return factor_univariate(p);
    }
    let sqf = squarefree_decompose(p)?;
    let mut factors = Vec::new();
    for (s, i) in &sqf.parts {
        for g in kronecker::factor_squarefree(s, false) {
            factors.push((g, *i));
        }
    }
    sort_factors(&mut factors);
    let unit = unit_of(p, &factors)?;
    Ok(Factorization { unit, factors })
}

/// Irreducibility over Q of the primitive part of a nonconstant polynomial.
pub fn is_irreducible(p: &Polynomial) -> Result<bool> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial("is_irreducible"));
    }
    if p.is_constant() {
        return Err(Error::ConstantPolynomial("is_irreducible"));
    }
    let prim = normalize(p);
    if prim.total_degree() == Some(1) {
        return Ok(true);
    }
    if prim.variables().len() == 1 {
        let f = factor_univariate(&prim)?;
        return Ok(f.factors.len() == 1 && f.factors[0].1 == 1);
    }
    if !is_squarefree(&prim)? {
        return Ok(false);
    }
    Ok(kronecker::factor_squarefree(&prim, true).len() == 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;
    use crate::poly::{PolyRing, Ring};

    fn ring(v: &str) -> Ring {
        PolyRing::parse_vars(v).unwrap()
    }

    fn p(r: &Ring, s: &str) -> Polynomial {
        parse_poly(s, r).unwrap()
    }

    #[test]
    fn content_and_primitive() {
        let x = ring("x");
        assert_eq!(content_primitive(&p(&x, "6*x+9")).unwrap(), (3.into(), p(&x, "2*x+3")));
        assert_eq!(content_primitive(&p(&x, "-x")).unwrap(), ((-1).into(), p(&x, "x")));
        assert_eq!(
            content_primitive(&p(&x, "3/2*x^2")).unwrap(),
            ("3/2".parse().unwrap(), p(&x, "x^2"))
        );
        assert!(matches!(content_primitive(&Polynomial::zero(&x)), Err(Error::ZeroPolynomial(_))));
    }

    #[test]
    fn gcds() {
        let r = ring("x,y");
        assert_eq!(gcd_multi(&p(&r, "x^2-y^2"), &p(&r, "(x+y)^2")).unwrap(), p(&r, "x+y"));
        assert_eq!(gcd_multi(&p(&r, "x^2-y^2"), &p(&r, "1")).unwrap(), p(&r, "1"));
        let t = ring("x1,x2,x3");
        assert_eq!(gcd_multi(&p(&t, "2*x1*x2"), &p(&t, "x1^2")).unwrap(), p(&t, "x1"));
        assert_eq!(gcd_multi(&p(&r, "-2*x-4"), &Polynomial::zero(&r)).unwrap(), p(&r, "x+2"));
        assert!(gcd_multi(&Polynomial::zero(&r), &Polynomial::zero(&r)).is_err());
        let a = p(&t, "(x1*x2 + x3^2 - 1)*(x1 + x2*x3)^2*(x3 - 2)");
        let b = p(&t, "(x1 + x2*x3)*(x1*x2 + x3^2 - 1)^2*(x1 - x2 + 5)");
        assert_eq!(gcd_multi(&a, &b).unwrap(), p(&t, "(x1*x2 + x3^2 - 1)*(x1 + x2*x3)"));
    }

    #[test]
    fn squarefree_checks() {
        let r = ring("x,y");
        assert!(!is_squarefree(&p(&r, "x^2*y")).unwrap());
        let x = ring("x");
        assert!(is_squarefree(&p(&x, "x^2+1")).unwrap());
        assert!(!is_squarefree(&p(&x, "x^6+6*x^4+9*x^2+4")).unwrap());
        assert!(is_squarefree(&p(&x, "7")).unwrap());
        assert!(is_squarefree(&Polynomial::zero(&x)).is_err());
    }

    #[test]
    fn decompositions() {
        let x = ring("x");
        let d = squarefree_decompose(&p(&x, "x^6+6*x^4+9*x^2+4")).unwrap();
        assert_eq!(d.unit, Rational::one());
        assert_eq!(d.parts, vec![(p(&x, "x^2+4"), 1), (p(&x, "x^2+1"), 2)]);
        assert_eq!(squarefree_decompose(&p(&x, "x")).unwrap().parts, vec![(p(&x, "x"), 1)]);
        assert_eq!(squarefree_decompose(&p(&x, "x^3")).unwrap().parts, vec![(p(&x, "x"), 3)]);
        let r = ring("x,y");
        let f = p(&r, "-3*(x*y+1)^2*(x-y)^3*y");
        let d = squarefree_decompose(&f).unwrap();
        assert_eq!(d.expand(&f), f);
        assert_eq!(
            d.parts,
            vec![(p(&r, "y"), 1), (p(&r, "x*y+1"), 2), (p(&r, "x-y"), 3)]
        );
    }

    #[test]
    fn univariate_factorizations() {
        let x = ring("x");
        let f = factor_univariate(&p(&x, "x^2-1")).unwrap();
        assert_eq!(f.factors, vec![(p(&x, "x+1"), 1), (p(&x, "x-1"), 1)]);
        let f = factor_univariate(&p(&x, "x^6+6*x^4+9*x^2+4")).unwrap();
        assert_eq!(f.factors, vec![(p(&x, "x^2+1"), 2), (p(&x, "x^2+4"), 1)]);
        let f = factor_univariate(&p(&x, "x^2+1")).unwrap();
        assert_eq!(f.factors, vec![(p(&x, "x^2+1"), 1)]);
        let f = factor_univariate(&p(&x, "-6*x^3 + 6*x")).unwrap();
        assert_eq!(f.unit, (-6).into());
        assert_eq!(f.expand(&p(&x, "x")), p(&x, "-6*x^3 + 6*x"));
    }

    #[test]
    fn irreducibility() {
        let x = ring("x");
        assert!(is_irreducible(&p(&x, "x^2+1")).unwrap());
        let r = ring("x,y");
        assert!(!is_irreducible(&p(&r, "x^2-y^2")).unwrap());
        let t = ring("x1,x2,x3");
        assert!(!is_irreducible(&p(&t, "x1^2*x2")).unwrap());
        assert!(is_irreducible(&p(&r, "x^2+y^2")).unwrap());
        assert!(is_irreducible(&p(&r, "x^2*y+y^3+x")).unwrap());
        assert!(!is_irreducible(&p(&r, "x^4-y^4+x^2+y^2")).unwrap());
        assert!(matches!(is_irreducible(&p(&r, "3")), Err(Error::ConstantPolynomial(_))));
        assert!(matches!(is_irreducible(&Polynomial::zero(&r)), Err(Error::ZeroPolynomial(_))));
    }

    #[test]
    fn multivariate_factor() {
        let t = ring("x,y,z");
        let f = p(&t, "2*(x^2+y*z+1)*(x-y)^2*(y*z-x^2*z+3)*z^3");
        let fac = factor(&f).unwrap();
        assert_eq!(fac.expand(&f), f);
        assert_eq!(fac.factors.len(), 4);
        for (g, _) in &fac.factors {
            assert!(is_irreducible(g).unwrap(), "{g}");
        }
    }

    #[test]
    fn division_checks() {
        let x = ring("x");
        let q = divides(&p(&x, "(x^2+1)^2"), &p(&x, "x^6+6*x^4+9*x^2+4")).unwrap();
        assert_eq!(q, Some(p(&x, "x^2+4")));
        let r = ring("x,y");
        assert_eq!(divides(&p(&r, "x"), &p(&r, "x^2*y")).unwrap(), Some(p(&r, "x*y")));
        assert_eq!(divides(&p(&x, "x^2+1"), &p(&x, "x^3+3*x-1")).unwrap(), None);
        assert!(divides(&Polynomial::zero(&x), &p(&x, "x")).is_err());
    }
}
