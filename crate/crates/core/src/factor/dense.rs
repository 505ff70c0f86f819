//! Dense univariate polynomials over Q and Z, low degree first.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{int_gcd, int_lcm, Rational};
use crate::poly::{Monomial, Polynomial, Ring};

pub type QPoly = Vec<Rational>;
pub type ZPoly = Vec<BigInt>;

pub fn trim_q(mut a: QPoly) -> QPoly {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
    a
}

pub fn trim_z(mut a: ZPoly) -> ZPoly {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
    a
}

/// Dense view of `p` in variable `var`; all other exponents must be zero.
pub fn to_dense(p: &Polynomial, var: usize) -> QPoly {
    let deg = p.degree_in(var).unwrap_or(0) as usize;
    let mut out = vec![Rational::zero(); if p.is_zero() { 0 } else { deg + 1 }];
    for (m, c) in p.terms() {
        debug_assert!(m.0.iter().enumerate().all(|(i, &e)| i == var || e == 0));
        out[m.0[var] as usize] = c.clone();
    }
    out
}

pub fn from_dense(a: &[Rational], ring: &Ring, var: usize) -> Polynomial {
    let n = ring.nvars();
    Polynomial::from_terms(
        ring,
        a.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(k, c)| {
            let mut m = Monomial::one(n);
            m.0[var] = k as u32;
            (m, c.clone())
        }),
    )
}

pub fn from_dense_z(a: &[BigInt], ring: &Ring, var: usize) -> Polynomial {
    let q: QPoly = a.iter().map(|c| Rational::from_integer(c.clone())).collect();
    from_dense(&q, ring, var)
}

pub fn sub_q(a: &QPoly, b: &QPoly) -> QPoly {
    let n = a.len().max(b.len());
    let z = Rational::zero();
    trim_q((0..n).map(|i| a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z)).collect())
}

pub fn derivative_q(a: &QPoly) -> QPoly {
    trim_q(
        a.iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * &Rational::from_i64(k as i64))
            .collect(),
    )
}

pub fn div_rem_q(a: &QPoly, b: &QPoly) -> (QPoly, QPoly) {
    let db = b.len().checked_sub(1).expect("division by zero polynomial");
    let inv = b[db].recip().expect("trimmed");
    let mut r = a.clone();
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let mut q = vec![Rational::zero(); r.len() - db];
    for k in (0..q.len()).rev() {
        let c = &r[k + db] * &inv;
        if !c.is_zero() {
            for (j, bj) in b.iter().enumerate() {
                let t = &c * bj;
                r[k + j] -= &t;
            }
        }
        q[k] = c;
    }
    r.truncate(db);
    (trim_q(q), trim_q(r))
}

fn monic_q(a: &QPoly) -> QPoly {
    match a.last() {
        None => Vec::new(),
        Some(lc) => {
            let inv = lc.recip().expect("trimmed");
            a.iter().map(|c| c * &inv).collect()
        }
    }
}

/// Monic gcd over Q.
pub fn gcd_q(a: &QPoly, b: &QPoly) -> QPoly {
    let (mut a, mut b) = (trim_q(a.clone()), trim_q(b.clone()));
    while !b.is_empty() {
        let r = div_rem_q(&a, &b).1;
        a = b;
        b = primitive_q(&r);
    }
    monic_q(&a)
}

/// Scales to integer coefficients with gcd 1 (sign preserved).
pub fn primitive_q(a: &QPoly) -> QPoly {
    if a.is_empty() {
        return Vec::new();
    }
    let z = to_primitive_z(a);
    z.into_iter().map(Rational::from_integer).collect()
}

/// Integer primitive version of `a` with positive leading coefficient.
pub fn to_primitive_z(a: &QPoly) -> ZPoly {
    let mut den = BigInt::one();
    for c in a {
        den = int_lcm(&den, c.denom());
    }
    let mut z: ZPoly = a.iter().map(|c| c.numer() * (&den / c.denom())).collect();
    let mut g = BigInt::zero();
    for c in &z {
        g = int_gcd(&g, c);
    }
    if g.is_zero() {
        return Vec::new();
    }
    if z.last().is_some_and(|c| c.is_negative()) {
        g = -g;
    }
    for c in z.iter_mut() {
        *c = &*c / &g;
    }
    trim_z(z)
}

/// Yun's square-free decomposition of a monic-normalized polynomial over Q:
/// returns `(s_i, i)` with `s_i` monic, square-free and pairwise coprime.
pub fn yun_q(f: &QPoly) -> Vec<(QPoly, u32)> {
    let f = monic_q(f);
    let mut out = Vec::new();
    if f.len() <= 1 {
        return out;
    }
    let df = derivative_q(&f);
    let a0 = gcd_q(&f, &df);
    let mut b = div_rem_q(&f, &a0).0;
    let c = div_rem_q(&df, &a0).0;
    let mut d = sub_q(&c, &derivative_q(&b));
    let mut i = 1;
    while b.len() > 1 {
        let a = gcd_q(&b, &d);
        let nb = div_rem_q(&b, &a).0;
        let c = div_rem_q(&d, &a).0;
        d = sub_q(&c, &derivative_q(&nb));
        if a.len() > 1 {
            out.push((a, i));
        }
        b = nb;
        i += 1;
    }
    out
}

pub fn mul_z(a: &ZPoly, b: &ZPoly) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim_z(out)
}

/// Exact quotient over Z, if `b` divides `a` with an integer quotient.
pub fn exact_div_z(a: &ZPoly, b: &ZPoly) -> Option<ZPoly> {
    let db = b.len().checked_sub(1)?;
    if a.is_empty() {
        return Some(Vec::new());
    }
    if a.len() <= db {
        return None;
    }
    let lc = &b[db];
    let mut r = a.clone();
    let mut q = vec![BigInt::zero(); r.len() - db];
    for k in (0..q.len()).rev() {
        let (c, rem) = r[k + db].div_rem(lc);
        if !rem.is_zero() {
            return None;
        }
        if !c.is_zero() {
            for (j, bj) in b.iter().enumerate() {
                r[k + j] -= &c * bj;
            }
        }
        q[k] = c;
    }
    if r.iter().all(|c| c.is_zero()) {
        Some(trim_z(q))
    } else {
        None
    }
}

pub fn content_z(a: &ZPoly) -> BigInt {
    a.iter().fold(BigInt::zero(), |g, c| int_gcd(&g, c))
}
