//! Multivariate factorization by Kronecker substitution.
//!
//! `x_k -> t^(w_k)` with mixed-radix weights `w_k = prod_{j<k} (d_j + 1)`
//! is injective on polynomials whose degree in each `x_j` is at most `d_j`,
//! which covers every divisor of the input. The univariate image is
//! factored over Z, subsets of its factors are mapped back, and a candidate
//! is kept only if it divides the input exactly. Subsets are tried by
//! increasing size, so each accepted candidate is irreducible.
//!
//! The search is exponential in the number of univariate factors of the
//! image; images of moderately sized inputs routinely split into many
//! small factors, which is the practical ceiling of this method.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::arith::Rational;
use crate::poly::{Monomial, Polynomial};

use super::dense::{self, ZPoly};
use super::{content_in, normalize, zassenhaus};

struct Substitution {
    vars: Vec<usize>,
    radix: Vec<u64>,
    weight: Vec<u64>,
}

impl Substitution {
    fn for_poly(f: &Polynomial) -> Self {
        let degs = f.degrees();
        let vars = f.variables();
        let mut weight = Vec::with_capacity(vars.len());
        let mut radix = Vec::with_capacity(vars.len());
        let mut w = 1u64;
        for &v in &vars {
            weight.push(w);
            radix.push(degs[v] as u64 + 1);
            w = w.checked_mul(degs[v] as u64 + 1).expect("Kronecker degree overflow");
        }
        Substitution { vars, radix, weight }
    }

    fn image(&self, f: &Polynomial) -> ZPoly {
        let mut out: ZPoly = Vec::new();
        for (m, c) in f.terms() {
            let e: u64 = self.vars.iter().zip(&self.weight).map(|(&v, w)| m.0[v] as u64 * w).sum();
            let e = e as usize;
            if out.len() <= e {
                out.resize(e + 1, BigInt::zero());
            }
            debug_assert!(c.is_integer());
            out[e] = c.numer().clone();
        }
        out
    }

    fn preimage(&self, a: &ZPoly, like: &Polynomial) -> Polynomial {
        let n = like.nvars();
        let last = self.vars.len() - 1;
        let terms = a.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(e, c)| {
            let mut m = Monomial::one(n);
            for (k, &v) in self.vars.iter().enumerate() {
                let digit = e as u64 / self.weight[k];
                m.0[v] = if k == last { digit } else { digit % self.radix[k] } as u32;
            }
            (m, Rational::from_integer(c.clone()))
        });
        Polynomial::from_terms(like.ring(), terms)
    }
}

fn univariate_factors(image: &ZPoly) -> Vec<ZPoly> {
    let q: dense::QPoly = image.iter().map(|c| Rational::from_integer(c.clone())).collect();
    let mut out = Vec::new();
    for (s, mult) in dense::yun_q(&q) {
        let z = dense::to_primitive_z(&s);
        for g in zassenhaus::factor_squarefree_z(&z) {
            for _ in 0..mult {
                out.push(g.clone());
            }
        }
    }
    out
}

fn subsets(n: usize, k: usize, mut visit: impl FnMut(&[usize]) -> bool) {
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        if visit(&idx) {
            return;
        }
        let mut i = k;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if idx[i] < n - k + i {
                break;
            }
            if i == 0 {
                return;
            }
        }
        if idx[i] >= n - k + i {
            return;
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Irreducible factors of a square-free polynomial, normalized. With
/// `early_exit`, stops after the first proper factor is found (the result
/// then has two entries, the second not necessarily irreducible).
pub(crate) fn factor_squarefree(f: &Polynomial, early_exit: bool) -> Vec<Polynomial> {
    let f = normalize(f);
    if f.is_constant() {
        return Vec::new();
    }
    let vars = f.variables();
    if vars.len() == 1 {
        let v = vars[0];
        let z = dense::to_primitive_z(&dense::to_dense(&f, v));
        let mut out: Vec<Polynomial> = zassenhaus::factor_squarefree_z(&z)
            .iter()
            .map(|g| dense::from_dense_z(g, f.ring(), v))
            .collect();
        if early_exit {
            out.truncate(2);
        }
        return out;
    }
    for &v in &vars {
        let c = content_in(&f, v);
        if !c.is_constant() {
            let rest = f.exact_div(&c).expect("nonzero").expect("content divides");
            if early_exit {
                return vec![c, normalize(&rest)];
            }
            let mut out = factor_squarefree(&c, false);
            out.extend(factor_squarefree(&rest, false));
            return out;
        }
    }
    // primitive and linear in some variable
    if vars.iter().any(|&v| f.degree_in(v) == Some(1)) {
        return vec![f];
    }

    let sub = Substitution::for_poly(&f);
    let mut pool = univariate_factors(&sub.image(&f));
    if pool.len() == 1 {
        return vec![f];
    }
    let mut current = f.clone();
    let mut found: Vec<Polynomial> = Vec::new();
    let mut size = 1;
    while 2 * size <= pool.len() {
        let mut hit: Option<(Vec<usize>, Polynomial)> = None;
        subsets(pool.len(), size, |s| {
            let prod = s.iter().fold(vec![BigInt::from(1)], |acc, &i| dense::mul_z(&acc, &pool[i]));
            let cand = sub.preimage(&prod, &current);
            if cand.is_constant() {
                return false;
            }
            if let Ok(Some(_)) = current.exact_div(&cand) {
                hit = Some((s.to_vec(), normalize(&cand)));
                return true;
            }
            false
        });
        match hit {
            Some((s, g)) => {
                current = normalize(&current.exact_div(&g).unwrap().unwrap());
                if early_exit {
                    return vec![g, current];
                }
                found.push(g);
                let mut k = 0;
                pool.retain(|_| {
                    let keep = !s.contains(&k);
                    k += 1;
                    keep
                });
            }
            None => size += 1,
        }
    }
    if !current.is_constant() {
        found.push(current);
    }
    found
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subset_enumeration() {
        let mut seen = Vec::new();
        subsets(4, 2, |s| {
            seen.push(s.to_vec());
            false
        });
        assert_eq!(seen, vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]);
        let mut count = 0;
        subsets(5, 5, |_| {
            count += 1;
            false
        });
        assert_eq!(count, 1);
    }
}
