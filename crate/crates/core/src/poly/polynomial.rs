use std::cmp::Ordering;
use std::collections::HashMap;
use std::ops::{Add, Mul, Neg, Sub};

use crate::arith::Rational;
use crate::error::{Error, Result};
use crate::poly::ring::{same_ring, Monomial, Ring};

/// Sparse polynomial over Q.
///
/// Terms are kept sorted in descending order under the ring's monomial
/// order and never carry a zero coefficient, so structural equality is
/// polynomial equality.
#[derive(Clone, Debug)]
pub struct Polynomial {
    ring: Ring,
    terms: Vec<(Monomial, Rational)>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl Polynomial {
    pub fn zero(ring: &Ring) -> Self {
        Polynomial { ring: ring.clone(), terms: Vec::new() }
    }

    pub fn constant(ring: &Ring, c: Rational) -> Self {
        if c.is_zero() {
            return Self::zero(ring);
        }
        Polynomial { ring: ring.clone(), terms: vec![(Monomial::one(ring.nvars()), c)] }
    }

    pub fn one(ring: &Ring) -> Self {
        Self::constant(ring, Rational::one())
    }

    pub fn var(ring: &Ring, i: usize) -> Result<Self> {
        if i >= ring.nvars() {
            return Err(Error::VariableIndex { index: i, nvars: ring.nvars() });
        }
        Ok(Polynomial {
            ring: ring.clone(),
            terms: vec![(Monomial::var(ring.nvars(), i), Rational::one())],
        })
    }

    pub fn monomial(ring: &Ring, m: Monomial, c: Rational) -> Self {
        assert_eq!(m.0.len(), ring.nvars(), "monomial arity");
        if c.is_zero() {
            return Self::zero(ring);
        }
        Polynomial { ring: ring.clone(), terms: vec![(m, c)] }
    }

    /// Builds a polynomial from arbitrary (possibly repeated) terms.
    pub fn from_terms<I>(ring: &Ring, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        let mut acc: HashMap<Monomial, Rational> = HashMap::new();
        for (m, c) in terms {
            assert_eq!(m.0.len(), ring.nvars(), "monomial arity");
            *acc.entry(m).or_default() += &c;
        }
        Self::from_map(ring, acc)
    }

    fn from_map(ring: &Ring, acc: HashMap<Monomial, Rational>) -> Self {
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        let order = ring.order();
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        Polynomial { ring: ring.clone(), terms }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn nvars(&self) -> usize {
        self.ring.nvars()
    }

    /// Terms in descending monomial order.
    pub fn terms(&self) -> &[(Monomial, Rational)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, Rational)> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    /// Value of a constant polynomial (zero included).
    pub fn constant_value(&self) -> Option<Rational> {
        match self.terms.as_slice() {
            [] => Some(Rational::zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.first().map(|(m, c)| (m, c))
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|(m, _)| m)
    }

    pub fn leading_coefficient(&self) -> Option<&Rational> {
        self.terms.first().map(|(_, c)| c)
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms
            .iter()
            .find(|(t, _)| t == m)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Rational::zero)
    }

    /// Total degree, `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    /// Degree in variable `i`, `None` for the zero polynomial.
    pub fn degree_in(&self, i: usize) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.0[i]).max()
    }

    pub fn degrees(&self) -> Vec<u32> {
        let mut d = vec![0; self.nvars()];
        for (m, _) in &self.terms {
            for (a, b) in d.iter_mut().zip(&m.0) {
                *a = (*a).max(*b);
            }
        }
        d
    }

    /// Indices of variables that occur with positive exponent.
    pub fn variables(&self) -> Vec<usize> {
        let d = self.degrees();
        (0..d.len()).filter(|&i| d[i] > 0).collect()
    }

    fn check_ring(&self, other: &Polynomial) -> Result<()> {
        if same_ring(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    fn merge(&self, other: &Polynomial, negate: bool) -> Polynomial {
        let order = self.ring.order();
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let a = &self.terms;
        let b = &other.terms;
        while i < a.len() && j < b.len() {
            match order.cmp(&a[i].0, &b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let c = if negate { -&b[j].1 } else { b[j].1.clone() };
                    out.push((b[j].0.clone(), c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().map(|(m, c)| (m.clone(), if negate { -c } else { c.clone() })));
        Polynomial { ring: self.ring.clone(), terms: out }
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(self.merge(other, false))
    }

    pub fn try_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(self.merge(other, true))
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Polynomial::zero(&self.ring));
        }
        if self.terms.len() == 1 {
            return Ok(other.mul_term(&self.terms[0].0, &self.terms[0].1));
        }
        if other.terms.len() == 1 {
            return Ok(self.mul_term(&other.terms[0].0, &other.terms[0].1));
        }
        let mut acc: HashMap<Monomial, Rational> =
            HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                *acc.entry(ma.mul(mb)).or_default() += &(ca * cb);
            }
        }
        Ok(Polynomial::from_map(&self.ring, acc))
    }

    /// Multiplication by a single term; monomial orders are multiplicative,
    /// so the term order is preserved.
    pub fn mul_term(&self, m: &Monomial, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(t, d)| (t.mul(m), d * c)).collect(),
        }
    }

    /// The polynomial without its leading term.
    pub fn tail(&self) -> Polynomial {
        Polynomial { ring: self.ring.clone(), terms: self.terms.iter().skip(1).cloned().collect() }
    }

    /// `self - c * m * g` in a single merge pass.
    pub fn sub_mul_term(&self, g: &Polynomial, m: &Monomial, c: &Rational) -> Polynomial {
        let order = self.ring.order();
        let a = &self.terms;
        let mut out = Vec::with_capacity(a.len() + g.terms.len());
        let mut i = 0;
        for (t, d) in &g.terms {
            let tm = t.mul(m);
            while i < a.len() && order.cmp(&a[i].0, &tm) == Ordering::Greater {
                out.push(a[i].clone());
                i += 1;
            }
            let prod = d * c;
            if i < a.len() && a[i].0 == tm {
                let v = &a[i].1 - &prod;
                if !v.is_zero() {
                    out.push((tm, v));
                }
                i += 1;
            } else {
                out.push((tm, -prod));
            }
        }
        out.extend(a[i..].iter().cloned());
        Polynomial { ring: self.ring.clone(), terms: out }
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, d)| (m.clone(), d * c)).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Polynomial {
        let mut base = self.clone();
        let mut acc = Polynomial::one(&self.ring);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Formal partial derivative with respect to variable `i` (0-based).
    pub fn partial_derivative(&self, i: usize) -> Result<Polynomial> {
        if i >= self.nvars() {
            return Err(Error::VariableIndex { index: i, nvars: self.nvars() });
        }
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.0[i] > 0)
            .map(|(m, c)| {
                let mut e = m.clone();
                e.0[i] -= 1;
                (e, c * &Rational::from_i64(m.0[i] as i64))
            })
            .collect::<Vec<_>>();
        // lowering one exponent can reorder terms under graded orders
        Ok(Polynomial::from_terms(&self.ring, terms))
    }

    pub fn evaluate(&self, point: &[Rational]) -> Result<Rational> {
        if point.len() != self.nvars() {
            return Err(Error::ArityMismatch { expected: self.nvars(), found: point.len() });
        }
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                if e > 0 {
                    t *= &x.pow(e);
                }
            }
            total += &t;
        }
        Ok(total)
    }

    /// Moves the polynomial into `target`, sending variable `i` to
    /// `target` variable `mapping[i]`.
    pub fn embed(&self, target: &Ring, mapping: &[usize]) -> Polynomial {
        assert_eq!(mapping.len(), self.nvars());
        let n = target.nvars();
        Polynomial::from_terms(
            target,
            self.terms.iter().map(|(m, c)| {
                let mut e = vec![0; n];
                for (i, &k) in m.0.iter().enumerate() {
                    e[mapping[i]] += k;
                }
                (Monomial(e), c.clone())
            }),
        )
    }

    /// Re-sorts the terms under a ring with the same variables but another order.
    pub fn reorder(&self, target: &Ring) -> Polynomial {
        assert_eq!(target.names(), self.ring.names());
        let mut terms = self.terms.clone();
        let order = target.order();
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        Polynomial { ring: target.clone(), terms }
    }

    /// Coefficients with respect to variable `i`: entry `k` holds the
    /// coefficient of `x_i^k`, a polynomial free of `x_i` in the same ring.
    pub fn coefficients_in(&self, i: usize) -> Vec<Polynomial> {
        let deg = match self.degree_in(i) {
            Some(d) => d as usize,
            None => return Vec::new(),
        };
        let mut buckets: Vec<Vec<(Monomial, Rational)>> = vec![Vec::new(); deg + 1];
        for (m, c) in &self.terms {
            let k = m.0[i] as usize;
            let mut e = m.clone();
            e.0[i] = 0;
            buckets[k].push((e, c.clone()));
        }
        // each bucket is already in descending order
        buckets
            .into_iter()
            .map(|terms| Polynomial { ring: self.ring.clone(), terms })
            .collect()
    }

    /// Inverse of [`Polynomial::coefficients_in`].
    pub fn from_coefficients_in(ring: &Ring, i: usize, coeffs: &[Polynomial]) -> Polynomial {
        let n = ring.nvars();
        let mut xi = Monomial::one(n);
        let mut acc = Polynomial::zero(ring);
        for (k, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                xi.0[i] = k as u32;
                acc = &acc + &c.mul_term(&xi, &Rational::one());
            }
        }
        acc
    }

    /// Multivariate division by a single divisor under the ring order.
    /// Returns `(quotient, remainder)`; the remainder is zero iff `d` divides `self`.
    pub fn div_rem(&self, d: &Polynomial) -> Result<(Polynomial, Polynomial)> {
        self.check_ring(d)?;
        let (lm, lc) = d.leading_term().ok_or(Error::ZeroPolynomial("division"))?;
        let lc_inv = lc.recip()?;
        let mut q: Vec<(Monomial, Rational)> = Vec::new();
        let mut rem: Vec<(Monomial, Rational)> = Vec::new();
        let mut p = self.clone();
        while let Some((m, c)) = p.terms.first().cloned() {
            match m.div(lm) {
                Some(t) => {
                    let coef = &c * &lc_inv;
                    p = p.sub_mul_term(d, &t, &coef);
                    q.push((t, coef));
                }
                None => {
                    rem.push((m, c));
                    p.terms.remove(0);
                }
            }
        }
        Ok((Polynomial::from_terms(&self.ring, q), Polynomial::from_terms(&self.ring, rem)))
    }

    /// Exact quotient `self / d` if `d` divides `self`.
    pub fn exact_div(&self, d: &Polynomial) -> Result<Option<Polynomial>> {
        if d.is_zero() {
            return Err(Error::ZeroPolynomial("division"));
        }
        if self.is_zero() {
            return Ok(Some(Polynomial::zero(&self.ring)));
        }
        // cheap degree obstruction
        let (ds, dd) = (self.degrees(), d.degrees());
        if ds.iter().zip(&dd).any(|(a, b)| b > a) {
            return Ok(None);
        }
        let (q, r) = self.div_rem(d)?;
        Ok(if r.is_zero() { Some(q) } else { None })
    }

    /// Makes the leading coefficient 1.
    pub fn monic(&self) -> Polynomial {
        match self.leading_coefficient() {
            None => self.clone(),
            Some(c) => self.scale(&c.recip().expect("nonzero leading coefficient")),
        }
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.try_add(rhs).expect("ring mismatch in +")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.try_sub(rhs).expect("ring mismatch in -")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.try_mul(rhs).expect("ring mismatch in *")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: Polynomial) -> Polynomial {
        &self + &rhs
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: Polynomial) -> Polynomial {
        &self - &rhs
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Polynomial) -> Polynomial {
        &self * &rhs
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

/// `w(f_1, ..., f_r)` where `w` lives in a ring with `r` variables and the
/// images share a target ring. Evaluated Horner-style, one variable at a time.
pub fn substitute(w: &Polynomial, images: &[Polynomial], target: &Ring) -> Result<Polynomial> {
    if w.nvars() != images.len() {
        return Err(Error::ArityMismatch { expected: w.nvars(), found: images.len() });
    }
    if images.iter().any(|f| !same_ring(f.ring(), target)) {
        return Err(Error::RingMismatch);
    }
    let terms: Vec<&(Monomial, Rational)> = w.terms().iter().collect();
    Ok(horner(&terms, 0, images, target))
}

fn horner(terms: &[&(Monomial, Rational)], var: usize, images: &[Polynomial], target: &Ring) -> Polynomial {
    if terms.is_empty() {
        return Polynomial::zero(target);
    }
    if var == images.len() {
        let mut c = Rational::zero();
        for (_, t) in terms {
            c += t;
        }
        return Polynomial::constant(target, c);
    }
    let max = terms.iter().map(|(m, _)| m.0[var]).max().unwrap_or(0);
    let mut groups: Vec<Vec<&(Monomial, Rational)>> = vec![Vec::new(); max as usize + 1];
    for t in terms {
        groups[t.0 .0[var] as usize].push(t);
    }
    let mut acc = Polynomial::zero(target);
    for (k, group) in groups.iter().enumerate().rev() {
        if k < max as usize {
            acc = &acc * &images[var];
        }
        if !group.is_empty() {
            acc = &acc + &horner(group, var + 1, images, target);
        }
    }
    acc
}
