//! Dense univariate polynomials over a small prime field F_p.
//!
//! Coefficients are stored low degree first, always reduced into `[0, p)`
//! and trimmed of trailing zeros. Only used internally by the univariate
//! factorizer.

use num_bigint::BigUint;
use rand::Rng;

#[derive(Clone, Copy, Debug)]
pub struct Fp {
    pub p: u64,
}

pub type ZpPoly = Vec<u64>;

impl Fp {
    pub fn new(p: u64) -> Self {
        assert!(p >= 2 && p < (1 << 31));
        Fp { p }
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        (a + b) % self.p
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        (a + self.p - b) % self.p
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    pub fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut acc = 1;
        a %= self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: u64) -> u64 {
        assert!(a % self.p != 0, "inverse of zero mod p");
        self.pow(a, self.p - 2)
    }

    pub fn trim(&self, mut a: ZpPoly) -> ZpPoly {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    pub fn from_signed(&self, coeffs: &[num_bigint::BigInt]) -> ZpPoly {
        let p = num_bigint::BigInt::from(self.p);
        let v = coeffs
            .iter()
            .map(|c| {
                let r = ((c % &p) + &p) % &p;
                u64::try_from(r).expect("reduced residue fits")
            })
            .collect();
        self.trim(v)
    }

    pub fn degree(a: &ZpPoly) -> Option<usize> {
        if a.is_empty() {
            None
        } else {
            Some(a.len() - 1)
        }
    }

    pub fn add_poly(&self, a: &ZpPoly, b: &ZpPoly) -> ZpPoly {
        let n = a.len().max(b.len());
        let v = (0..n)
            .map(|i| self.add(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0)))
            .collect();
        self.trim(v)
    }

    pub fn sub_poly(&self, a: &ZpPoly, b: &ZpPoly) -> ZpPoly {
        let n = a.len().max(b.len());
        let v = (0..n)
            .map(|i| self.sub(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0)))
            .collect();
        self.trim(v)
    }

    pub fn mul_poly(&self, a: &ZpPoly, b: &ZpPoly) -> ZpPoly {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x * y) % self.p;
            }
        }
        self.trim(out)
    }

    pub fn scale(&self, a: &ZpPoly, c: u64) -> ZpPoly {
        self.trim(a.iter().map(|&x| self.mul(x, c)).collect())
    }

    pub fn monic(&self, a: &ZpPoly) -> ZpPoly {
        match a.last() {
            None => Vec::new(),
            Some(&lc) => self.scale(a, self.inv(lc)),
        }
    }

    pub fn div_rem(&self, a: &ZpPoly, b: &ZpPoly) -> (ZpPoly, ZpPoly) {
        let db = Fp::degree(b).expect("division by zero polynomial");
        let inv = self.inv(b[db]);
        let mut r = a.clone();
        if r.len() <= db {
            return (Vec::new(), r);
        }
        let mut q = vec![0u64; r.len() - db];
        for k in (0..q.len()).rev() {
            let c = self.mul(r[k + db], inv);
            q[k] = c;
            if c != 0 {
                for (j, &bj) in b.iter().enumerate() {
                    r[k + j] = self.sub(r[k + j], self.mul(c, bj));
                }
            }
        }
        r.truncate(db);
        (self.trim(q), self.trim(r))
    }

    pub fn rem(&self, a: &ZpPoly, b: &ZpPoly) -> ZpPoly {
        self.div_rem(a, b).1
    }

    pub fn gcd(&self, a: &ZpPoly, b: &ZpPoly) -> ZpPoly {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_empty() {
            let r = self.rem(&a, &b);
            a = b;
            b = r;
        }
        self.monic(&a)
    }

    /// Returns `(g, s, t)` with `s a + t b = g`, `g` monic.
    pub fn ext_gcd(&self, a: &ZpPoly, b: &ZpPoly) -> (ZpPoly, ZpPoly, ZpPoly) {
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (vec![1u64], Vec::new());
        let (mut t0, mut t1) = (Vec::new(), vec![1u64]);
        while !r1.is_empty() {
            let (q, r) = self.div_rem(&r0, &r1);
            let s2 = self.sub_poly(&s0, &self.mul_poly(&q, &s1));
            let t2 = self.sub_poly(&t0, &self.mul_poly(&q, &t1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s2;
            t0 = t1;
            t1 = t2;
        }
        let lc = *r0.last().expect("gcd of two zero polynomials");
        let inv = self.inv(lc);
        (self.scale(&r0, inv), self.scale(&s0, inv), self.scale(&t0, inv))
    }

    pub fn derivative(&self, a: &ZpPoly) -> ZpPoly {
        let v = a.iter().enumerate().skip(1).map(|(i, &c)| self.mul(c, i as u64 % self.p)).collect();
        self.trim(v)
    }

    pub fn powmod(&self, base: &ZpPoly, exp: &BigUint, modulus: &ZpPoly) -> ZpPoly {
        let mut acc = vec![1u64];
        let b = self.rem(base, modulus);
        let bits = exp.bits();
        for i in (0..bits).rev() {
            acc = self.rem(&self.mul_poly(&acc, &acc), modulus);
            if exp.bit(i) {
                acc = self.rem(&self.mul_poly(&acc, &b), modulus);
            }
        }
        self.rem(&acc, modulus)
    }

    /// Distinct-degree factorization of a monic square-free polynomial:
    /// pairs `(g, d)` where `g` is the product of all irreducible factors of degree `d`.
    pub fn distinct_degree(&self, f: &ZpPoly) -> Vec<(ZpPoly, usize)> {
        let mut out = Vec::new();
        let mut rest = f.clone();
        let x = vec![0u64, 1];
        let mut h = x.clone();
        let p = BigUint::from(self.p);
        let mut d = 1;
        while Fp::degree(&rest).unwrap_or(0) >= 2 * d {
            h = self.powmod(&h, &p, &rest);
            let g = self.gcd(&self.sub_poly(&h, &x), &rest);
            if g.len() > 1 {
                rest = self.div_rem(&rest, &g).0;
                h = self.rem(&h, &rest);
                out.push((g, d));
            }
            d += 1;
        }
        if rest.len() > 1 {
            let deg = rest.len() - 1;
            out.push((rest, deg));
        }
        out
    }

    /// Cantor-Zassenhaus equal-degree splitting (odd `p`).
    pub fn equal_degree<R: Rng>(&self, f: &ZpPoly, d: usize, rng: &mut R) -> Vec<ZpPoly> {
        let n = f.len() - 1;
        if n == d {
            return vec![f.clone()];
        }
        let exp = (BigUint::from(self.p).pow(d as u32) - 1u32) >> 1;
        loop {
            let a: ZpPoly = self.trim((0..n).map(|_| rng.gen_range(0..self.p)).collect());
            if a.len() < 2 {
                continue;
            }
            let g = self.gcd(&a, f);
            let split = if g.len() > 1 && g.len() < f.len() {
                g
            } else {
                let b = self.sub_poly(&self.powmod(&a, &exp, f), &vec![1u64]);
                if b.is_empty() {
                    continue;
                }
                self.gcd(&b, f)
            };
            if split.len() > 1 && split.len() < f.len() {
                let other = self.div_rem(f, &split).0;
                let mut out = self.equal_degree(&split, d, rng);
                out.extend(self.equal_degree(&other, d, rng));
                return out;
            }
        }
    }

    /// Complete factorization of a monic square-free polynomial into monic irreducibles.
    pub fn factor_squarefree<R: Rng>(&self, f: &ZpPoly, rng: &mut R) -> Vec<ZpPoly> {
        let mut out = Vec::new();
        for (g, d) in self.distinct_degree(f) {
            out.extend(self.equal_degree(&g, d, rng));
        }
        out.sort();
        out
    }

    pub fn is_squarefree(&self, f: &ZpPoly) -> bool {
        let df = self.derivative(f);
        !df.is_empty() && self.gcd(f, &df).len() == 1
    }
}
