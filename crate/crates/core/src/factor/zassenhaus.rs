//! Factorization of square-free primitive polynomials in Z[x]:
//! modular factorization, Hensel lifting and subset recombination.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::dense::{content_z, exact_div_z, mul_z, trim_z, ZPoly};
use super::modp::{Fp, ZpPoly};

fn small_odd_primes() -> impl Iterator<Item = u64> {
    (3u64..).step_by(2).filter(|&n| (3..).step_by(2).take_while(|d| d * d <= n).all(|d| n % d != 0))
}

/// Smallest odd prime not dividing the leading coefficient for which `f`
/// stays square-free modulo p.
pub fn choose_prime(f: &ZPoly) -> u64 {
    let lc = f.last().expect("nonzero");
    for p in small_odd_primes() {
        if (lc % BigInt::from(p)).is_zero() {
            continue;
        }
        let fp = Fp::new(p);
        let reduced = fp.from_signed(f);
        if fp.is_squarefree(&reduced) {
            return p;
        }
    }
    unreachable!("a square-free polynomial stays square-free modulo all but finitely many primes")
}

fn to_biguint_mod(c: &BigInt, m: &BigInt) -> BigInt {
    c.mod_floor(m)
}

fn symmetric(c: &BigInt, m: &BigInt) -> BigInt {
    let r = c.mod_floor(m);
    if &r + &r > *m {
        r - m
    } else {
        r
    }
}

fn zp_to_z(a: &ZpPoly) -> ZPoly {
    a.iter().map(|&c| BigInt::from(c)).collect()
}

/// Lifts `f == g * h (mod p)` with `g` monic to a factorization modulo `p^k`.
/// `h` carries the exact leading coefficient of `f`.
fn hensel_lift(f: &ZPoly, g0: &ZpPoly, h0: &ZpPoly, fp: &Fp, k: u32) -> ZPoly {
    let p = BigInt::from(fp.p);
    let (one, s, t) = fp.ext_gcd(g0, h0);
    debug_assert_eq!(one, vec![1]);
    let mut g = zp_to_z(g0);
    let mut h = zp_to_z(h0);
    let dh = h.len() - 1;
    h[dh] = f.last().unwrap().clone();
    let mut m = p.clone();
    for _ in 1..k {
        let gh = mul_z(&g, &h);
        let n = f.len().max(gh.len());
        let zero = BigInt::zero();
        let diff: ZPoly = (0..n)
            .map(|i| f.get(i).unwrap_or(&zero) - gh.get(i).unwrap_or(&zero))
            .collect();
        let e: ZPoly = diff.iter().map(|c| {
            debug_assert!((c % &m).is_zero());
            c / &m
        }).collect();
        let e = fp.from_signed(&e);
        if !e.is_empty() {
            let hp = fp.from_signed(&h);
            let gp = fp.from_signed(&g);
            let (q, sigma) = fp.div_rem(&fp.mul_poly(&e, &s), &hp);
            let tau = fp.add_poly(&fp.mul_poly(&e, &t), &fp.mul_poly(&q, &gp));
            for (i, c) in tau.iter().enumerate() {
                if i >= g.len() {
                    g.resize(i + 1, BigInt::zero());
                }
                g[i] += &m * BigInt::from(*c);
            }
            for (i, c) in sigma.iter().enumerate() {
                h[i] += &m * BigInt::from(*c);
            }
        }
        m *= &p;
        for c in g.iter_mut() {
            *c = to_biguint_mod(c, &m);
        }
        for c in h.iter_mut().take(dh) {
            *c = to_biguint_mod(c, &m);
        }
    }
    trim_z(g)
}

fn coefficient_bound(f: &ZPoly) -> BigInt {
    // Mignotte: any factor's coefficients are at most 2^deg * ||f||_2
    let norm2: BigInt = f.iter().map(|c| c * c).sum();
    let norm = norm2.sqrt() + 1;
    let deg = f.len() - 1;
    (BigInt::one() << deg) * norm * f.last().unwrap().abs()
}

fn primitive_positive(mut a: ZPoly) -> ZPoly {
    let mut g = content_z(&a);
    if g.is_zero() {
        return a;
    }
    if a.last().is_some_and(|c| c.sign() == Sign::Minus) {
        g = -g;
    }
    for c in a.iter_mut() {
        *c = &*c / &g;
    }
    a
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Irreducible factors of a square-free primitive `f` (positive leading
/// coefficient, degree >= 1). Factors are primitive with positive leading
/// coefficient, sorted by degree then coefficients.
pub fn factor_squarefree_z(f: &ZPoly) -> Vec<ZPoly> {
    let f = primitive_positive(trim_z(f.clone()));
    let deg = f.len() - 1;
    assert!(deg >= 1);
    if deg == 1 {
        return vec![f];
    }
    let p = choose_prime(&f);
    let fp = Fp::new(p);
    let reduced = fp.from_signed(&f);
    let mut rng = ChaCha8Rng::seed_from_u64(p);
    let modular = fp.factor_squarefree(&fp.monic(&reduced), &mut rng);
    if modular.len() == 1 {
        return vec![f];
    }

    let bound = coefficient_bound(&f) * 2;
    let pb = BigInt::from(p);
    let mut k = 1u32;
    let mut modulus = pb.clone();
    while modulus <= bound {
        modulus *= &pb;
        k += 1;
    }
    let lc_p = fp.from_signed(&[f.last().unwrap().clone()])[0];
    let lifted: Vec<ZPoly> = (0..modular.len())
        .map(|i| {
            let others = modular
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .fold(vec![lc_p], |acc, (_, g)| fp.mul_poly(&acc, g));
            hensel_lift(&f, &modular[i], &others, &fp, k)
        })
        .collect();

    let mut remaining: Vec<usize> = (0..lifted.len()).collect();
    let mut current = f;
    let mut found = Vec::new();
    let mut size = 1;
    'outer: while 2 * size <= remaining.len() {
        for subset in subsets(remaining.len(), size) {
            let lc = current.last().unwrap().clone();
            let mut cand: ZPoly = vec![lc];
            for &i in &subset {
                cand = mul_z(&cand, &lifted[remaining[i]]);
                for c in cand.iter_mut() {
                    *c = symmetric(c, &modulus);
                }
            }
            let cand = primitive_positive(trim_z(cand));
            if let Some(q) = exact_div_z(&current, &cand) {
                found.push(cand);
                current = primitive_positive(q);
                let drop: Vec<usize> = subset.iter().map(|&i| remaining[i]).collect();
                remaining.retain(|i| !drop.contains(i));
                continue 'outer;
            }
        }
        size += 1;
    }
    if current.len() > 1 {
        found.push(current);
    }
    found.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    found
}
