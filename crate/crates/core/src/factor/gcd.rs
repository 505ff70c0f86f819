//! Multivariate gcd by recursive content / primitive-part reduction and
//! subresultant pseudo-remainder sequences.
//!
//! A modular (Brown / Zippel) gcd would slot in behind [`gcd_multi`]
//! without touching callers; the recursive scheme is enough at the sizes
//! the harnesses use.

use crate::arith::Rational;
use crate::poly::{Monomial, Polynomial};

use super::dense::{from_dense, gcd_q, to_dense};
use super::normalize;

/// Coefficients in one variable, low degree first.
type Uni = Vec<Polynomial>;

fn deg(a: &Uni) -> usize {
    a.len() - 1
}

fn trim(mut a: Uni) -> Uni {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
    a
}

/// Pseudo-remainder `lc(b)^(deg a - deg b + 1) * a mod b`.
fn prem(a: &Uni, b: &Uni) -> Uni {
    let db = deg(b);
    let lcb = &b[db];
    let mut r = a.clone();
    let mut steps = (deg(a) + 1).saturating_sub(db);
    while !r.is_empty() && r.len() > db {
        let dr = deg(&r);
        let lcr = r[dr].clone();
        let shift = dr - db;
        let mut next: Uni = r.iter().map(|c| c * lcb).collect();
        for (j, bj) in b.iter().enumerate() {
            next[shift + j] = &next[shift + j] - &(&lcr * bj);
        }
        r = trim(next);
        steps -= 1;
    }
    if steps > 0 {
        let f = lcb.pow(steps as u32);
        r = r.iter().map(|c| c * &f).collect();
    }
    r
}

fn exact(a: &Polynomial, b: &Polynomial) -> Polynomial {
    a.exact_div(b).expect("nonzero divisor").expect("subresultant division is exact")
}

/// Gcd of a list, early exit on 1.
pub(crate) fn gcd_list(items: &[Polynomial]) -> Polynomial {
    let mut it = items.iter().filter(|p| !p.is_zero());
    let first = match it.next() {
        Some(p) => normalize(p),
        None => return items.first().map(|p| Polynomial::zero(p.ring())).expect("nonempty list"),
    };
    let mut g = first;
    for p in it {
        if g.is_one() {
            break;
        }
        g = gcd_nonzero(&g, p);
    }
    g
}

/// Content with respect to `var`: gcd of the coefficients in `var`.
pub(crate) fn content_in(p: &Polynomial, var: usize) -> Polynomial {
    gcd_list(&p.coefficients_in(var))
}

/// Normalized gcd; `gcd(p, 0) = normalize(p)`, `gcd(0, 0) = 0`.
pub(crate) fn gcd_raw(p: &Polynomial, q: &Polynomial) -> Polynomial {
    if p.is_zero() {
        return normalize(q);
    }
    if q.is_zero() {
        return normalize(p);
    }
    gcd_nonzero(p, q)
}

fn gcd_nonzero(p: &Polynomial, q: &Polynomial) -> Polynomial {
    let ring = p.ring();
    if p.is_constant() || q.is_constant() {
        return Polynomial::one(ring);
    }
    if p.len() == 1 && q.len() == 1 {
        let m = p.terms()[0].0.gcd(&q.terms()[0].0);
        return Polynomial::monomial(ring, m, Rational::one());
    }
    if p.len() == 1 || q.len() == 1 {
        // gcd with a monomial is the monomial gcd with every term
        let (mono, other) = if p.len() == 1 { (p, q) } else { (q, p) };
        let mut m: Monomial = mono.terms()[0].0.clone();
        for (t, _) in other.terms() {
            m = m.gcd(t);
        }
        return Polynomial::monomial(ring, m, Rational::one());
    }
    let vp = p.degrees();
    let vq = q.degrees();
    let shared: Vec<usize> = (0..vp.len()).filter(|&i| vp[i] > 0 && vq[i] > 0).collect();
    if shared.is_empty() {
        return Polynomial::one(ring);
    }
    // a variable of p absent from q: the gcd divides the content in it
    if let Some(v) = (0..vp.len()).find(|&i| vp[i] > 0 && vq[i] == 0) {
        return gcd_nonzero(&content_in(p, v), q);
    }
    if let Some(v) = (0..vq.len()).find(|&i| vq[i] > 0 && vp[i] == 0) {
        return gcd_nonzero(&content_in(q, v), p);
    }
    if shared.len() == 1 && p.variables().len() == 1 && q.variables().len() == 1 {
        let v = shared[0];
        let g = gcd_q(&to_dense(p, v), &to_dense(q, v));
        return normalize(&from_dense(&g, ring, v));
    }
    let v = *shared.iter().min_by_key(|&&i| (vp[i].max(vq[i]), i)).unwrap();
    let cp = content_in(p, v);
    let cq = content_in(q, v);
    let pp = exact(p, &cp);
    let qq = exact(q, &cq);
    let c = gcd_nonzero(&cp, &cq);
    let g = if certainly_coprime(&pp, &qq, v) {
        Polynomial::one(ring)
    } else {
        subresultant(&pp, &qq, v)
    };
    normalize(&(&c * &g))
}

/// Specializes every variable except `v` to small integers; a constant
/// univariate gcd with both leading coefficients surviving proves that
/// the gcd has degree 0 in `v`. Both inputs must be primitive in `v`, so
/// the gcd is then 1.
fn certainly_coprime(p: &Polynomial, q: &Polynomial, v: usize) -> bool {
    let n = p.nvars();
    let cp = p.coefficients_in(v);
    let cq = q.coefficients_in(v);
    for attempt in 0..3i64 {
        let point: Vec<Rational> = (0..n)
            .map(|i| Rational::from_i64(if i == v { 0 } else { 2 + attempt * 3 + (i as i64 * 7) % 11 }))
            .collect();
        let eval = |cs: &[Polynomial]| -> Vec<Rational> {
            cs.iter().map(|c| c.evaluate(&point).expect("arity")).collect()
        };
        let a = eval(&cp);
        let b = eval(&cq);
        if a.last().is_some_and(|c| c.is_zero()) || b.last().is_some_and(|c| c.is_zero()) {
            continue;
        }
        return gcd_q(&a, &b).len() == 1;
    }
    false
}

/// Gcd of two polynomials primitive in `v`, via the subresultant PRS.
fn subresultant(p: &Polynomial, q: &Polynomial, v: usize) -> Polynomial {
    let ring = p.ring();
    let (mut a, mut b) = (p.coefficients_in(v), q.coefficients_in(v));
    if deg(&a) < deg(&b) {
        std::mem::swap(&mut a, &mut b);
    }
    let mut g = Polynomial::one(ring);
    let mut h = Polynomial::one(ring);
    loop {
        let delta = deg(&a) - deg(&b);
        let r = prem(&a, &b);
        if r.is_empty() {
            break;
        }
        if r.len() == 1 {
            return Polynomial::one(ring);
        }
        a = b;
        let div = &g * &h.pow(delta as u32);
        b = r.iter().map(|c| exact(c, &div)).collect();
        g = a[deg(&a)].clone();
        h = match delta {
            0 => h,
            1 => g.clone(),
            d => exact(&g.pow(d as u32), &h.pow(d as u32 - 1)),
        };
    }
    let last = Polynomial::from_coefficients_in(ring, v, &b);
    let c = content_in(&last, v);
    normalize(&exact(&last, &c))
}
