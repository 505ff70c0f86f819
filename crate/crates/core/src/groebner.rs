//! Buchberger's algorithm and subalgebra membership by elimination.
//!
//! Membership of `h` in `Q[f_1, ..., f_r]` is decided in the ring
//! `Q[x_1..x_n, y_1..y_r]` under a block order with the x-block first:
//! `h` is a member iff its normal form modulo a Groebner basis of
//! `(y_1 - f_1, ..., y_r - f_r)` involves only the y-variables, and that
//! normal form is then a representation `w` with `h = w(f)`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::factor::normalize;
use crate::poly::{same_ring, Monomial, MonomialOrder, PolyMap, PolyRing, Polynomial, Ring};

pub use crate::jacobian::is_algebraic_over;

/// A reduced Groebner basis, generators normalized and sorted by
/// decreasing leading monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis {
    ring: Ring,
    generators: Vec<Polynomial>,
}

impl GroebnerBasis {
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn order(&self) -> MonomialOrder {
        self.ring.order()
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.generators.len() == 1 && self.generators[0].is_constant()
    }
}

fn lm(p: &Polynomial) -> &Monomial {
    p.leading_monomial().expect("nonzero")
}

/// Full reduction of `p` modulo `basis` (all monic).
fn reduce(p: &Polynomial, basis: &[Polynomial]) -> Polynomial {
    let mut p = p.clone();
    let mut rem: Vec<(Monomial, crate::Rational)> = Vec::new();
    while let Some((m, c)) = p.leading_term().map(|(m, c)| (m.clone(), c.clone())) {
        match basis.iter().find_map(|g| m.div(lm(g)).map(|t| (g, t))) {
            Some((g, t)) => p = p.sub_mul_term(g, &t, &c),
            None => {
                rem.push((m, c));
                p = p.tail();
            }
        }
    }
    Polynomial::from_terms(p.ring(), rem)
}

fn s_polynomial(f: &Polynomial, g: &Polynomial) -> Polynomial {
    let l = lm(f).lcm(lm(g));
    let tf = l.div(lm(f)).unwrap();
    let tg = l.div(lm(g)).unwrap();
    f.mul_term(&tf, &crate::Rational::one()).sub_mul_term(g, &tg, &crate::Rational::one())
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    sugar: u32,
}

fn pair(basis: &[Polynomial], sugar: &[u32], i: usize, j: usize) -> Pair {
    let (li, lj) = (lm(&basis[i]), lm(&basis[j]));
    let lcm = li.lcm(lj);
    let d = lcm.degree();
    let sugar = (sugar[i] + d - li.degree()).max(sugar[j] + d - lj.degree());
    Pair { i, j, lcm, sugar }
}

/// Gebauer-Moeller update after appending `basis[h]`.
fn update(basis: &[Polynomial], sugar: &[u32], active: &mut Vec<usize>, pairs: &mut Vec<Pair>, h: usize) {
    let lh = lm(&basis[h]).clone();
    let mut fresh: Vec<(Pair, bool)> = active
        .iter()
        .map(|&i| (pair(basis, sugar, i, h), lm(&basis[i]).is_coprime(&lh)))
        .collect();
    // M: drop (i, h) when another new lcm properly divides it.
    let keep: Vec<bool> = fresh
        .iter()
        .map(|(p, _)| !fresh.iter().any(|(q, _)| q.lcm != p.lcm && q.lcm.divides(&p.lcm)))
        .collect();
    fresh = fresh.into_iter().zip(keep).filter(|(_, k)| *k).map(|(p, _)| p).collect();
    // F: one pair per lcm, none at all if any of them is coprime.
    let mut chosen: Vec<(Pair, bool)> = Vec::new();
    for (p, coprime) in fresh {
        match chosen.iter_mut().find(|(q, _)| q.lcm == p.lcm) {
            Some(slot) => slot.1 |= coprime,
            None => chosen.push((p, coprime)),
        }
    }
    // B: old pairs whose lcm is divisible by lm(h) in a nontrivial way.
    pairs.retain(|p| {
        !(lh.divides(&p.lcm)
            && lm(&basis[p.i]).lcm(&lh) != p.lcm
            && lm(&basis[p.j]).lcm(&lh) != p.lcm)
    });
    pairs.extend(chosen.into_iter().filter(|(_, coprime)| !coprime).map(|(p, _)| p));
    active.retain(|&i| !lh.divides(lm(&basis[i])));
    active.push(h);
}

/// Reduced Groebner basis of the ideal generated by `generators` under `order`.
///
/// Pairs are selected by lowest sugar degree, then smallest lcm, and pruned
/// with the Gebauer-Moeller criteria.
pub fn buchberger(generators: &[Polynomial], order: MonomialOrder) -> Result<GroebnerBasis> {
    let first = generators.first().ok_or(Error::EmptyGenerators)?;
    if generators.iter().any(|g| !same_ring(g.ring(), first.ring())) {
        return Err(Error::RingMismatch);
    }
    let ring = if first.ring().order() == order { first.ring().clone() } else { first.ring().with_order(order) };
    let unit = |ring: Ring| GroebnerBasis { generators: vec![Polynomial::one(&ring)], ring };
    let mut basis: Vec<Polynomial> = Vec::new();
    let mut sugar: Vec<u32> = Vec::new();
    let mut active: Vec<usize> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();
    for g in generators.iter().filter(|g| !g.is_zero()) {
        let g = g.reorder(&ring).monic();
        if g.is_constant() {
            return Ok(unit(ring));
        }
        sugar.push(g.total_degree().unwrap_or(0));
        basis.push(g);
        update(&basis, &sugar, &mut active, &mut pairs, basis.len() - 1);
    }
    while !pairs.is_empty() {
        let best = (0..pairs.len())
            .min_by(|&a, &b| {
                let (p, q) = (&pairs[a], &pairs[b]);
                p.sugar.cmp(&q.sugar).then_with(|| order.cmp(&p.lcm, &q.lcm)).then_with(|| (p.j, p.i).cmp(&(q.j, q.i)))
            })
            .unwrap();
        let p = pairs.swap_remove(best);
        let reducers: Vec<Polynomial> = active.iter().map(|&k| basis[k].clone()).collect();
        let r = reduce(&s_polynomial(&basis[p.i], &basis[p.j]), &reducers);
        if r.is_zero() {
            continue;
        }
        let r = r.monic();
        if r.is_constant() {
            return Ok(unit(ring));
        }
        sugar.push(p.sugar.max(r.total_degree().unwrap_or(0)));
        basis.push(r);
        update(&basis, &sugar, &mut active, &mut pairs, basis.len() - 1);
    }
    let reduced: Vec<Polynomial> = active.iter().map(|&k| basis[k].clone()).collect();
    Ok(GroebnerBasis { generators: interreduce(reduced, order), ring })
}

fn interreduce(mut basis: Vec<Polynomial>, order: MonomialOrder) -> Vec<Polynomial> {
    basis.sort_by(|a, b| order.cmp(lm(a), lm(b)));
    let mut minimal: Vec<Polynomial> = Vec::new();
    for g in basis {
        if !minimal.iter().any(|h| lm(h).divides(lm(&g))) {
            minimal.push(g);
        }
    }
    let mut out = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<Polynomial> =
            minimal.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, g)| g.clone()).collect();
        let (m, c) = minimal[i].leading_term().map(|(m, c)| (m.clone(), c.clone())).unwrap();
        let reduced = &Polynomial::monomial(minimal[i].ring(), m, c) + &reduce(&minimal[i].tail(), &others);
        out.push(normalize(&reduced));
    }
    out.sort_by(|a, b| order.cmp(lm(b), lm(a)));
    out
}

/// Remainder of `h` modulo the basis; zero iff `h` lies in the ideal.
pub fn normal_form(h: &Polynomial, gb: &GroebnerBasis) -> Result<Polynomial> {
    if h.ring().names() != gb.ring.names() {
        return Err(Error::RingMismatch);
    }
    let h = if same_ring(h.ring(), &gb.ring) { h.clone() } else { h.reorder(&gb.ring) };
    let monic: Vec<Polynomial> = gb.generators.iter().map(Polynomial::monic).collect();
    Ok(reduce(&h, &monic))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Member,
    NonMember,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MembershipResult {
    pub verdict: Verdict,
    /// `w` in the witness ring with `h = w(f_1, ..., f_r)`.
    pub representation: Option<Polynomial>,
}

impl MembershipResult {
    pub fn is_member(&self) -> bool {
        self.verdict == Verdict::Member
    }
}

/// The subalgebra `Q[f_1, ..., f_r]` of an ambient polynomial ring, with
/// its elimination basis computed once. Any number of generators is
/// accepted, so `Q[x^2, x^3]` inside `Q[x]` is expressible.
#[derive(Clone, Debug)]
pub struct Subring {
    generators: Vec<Polynomial>,
    source: Ring,
    elim: GroebnerBasis,
}

impl Subring {
    pub fn new(generators: Vec<Polynomial>) -> Result<Self> {
        let ambient = generators.first().ok_or(Error::EmptyGenerators)?.ring().clone();
        if generators.iter().any(|g| !same_ring(g.ring(), &ambient)) {
            return Err(Error::RingMismatch);
        }
        let n = ambient.nvars();
        let r = generators.len();
        let mut names: Vec<String> = ambient.names().to_vec();
        let mut prefix = String::from("_y");
        while ambient.names().iter().any(|s| s.starts_with(&prefix)) {
            prefix.insert(0, '_');
        }
        names.extend((1..=r).map(|i| format!("{prefix}{i}")));
        let ring = PolyRing::new(&names, MonomialOrder::Block { split: n })?;
        let mapping: Vec<usize> = (0..n).collect();
        let ideal: Vec<Polynomial> = generators
            .iter()
            .enumerate()
            .map(|(i, f)| &Polynomial::var(&ring, n + i).unwrap() - &f.embed(&ring, &mapping))
            .collect();
        let elim = buchberger(&ideal, ring.order())?;
        Ok(Subring { generators, source: PolyRing::witness_ring(r), elim })
    }

    pub fn from_map(f: &PolyMap) -> Result<Self> {
        Subring::new(f.images().to_vec())
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn ambient(&self) -> &Ring {
        self.generators[0].ring()
    }

    /// Ring of representations: `T` or `y1..yr`.
    pub fn source_ring(&self) -> &Ring {
        &self.source
    }

    pub fn elimination_basis(&self) -> &GroebnerBasis {
        &self.elim
    }

    /// `w(f_1, ..., f_r)` for `w` in the source ring.
    pub fn substitute(&self, w: &Polynomial) -> Result<Polynomial> {
        crate::poly::substitute(w, &self.generators, self.ambient())
    }

    pub fn membership(&self, h: &Polynomial) -> Result<MembershipResult> {
        if !same_ring(h.ring(), self.ambient()) {
            return Err(Error::RingMismatch);
        }
        let n = self.ambient().nvars();
        let mapping: Vec<usize> = (0..n).collect();
        let nf = normal_form(&h.embed(self.elim.ring(), &mapping), &self.elim)?;
        if nf.terms().iter().any(|(m, _)| m.0[..n].iter().any(|&e| e > 0)) {
            return Ok(MembershipResult { verdict: Verdict::NonMember, representation: None });
        }
        let back: Vec<usize> = (0..n).map(|_| 0).chain(0..self.generators.len()).collect();
        let w = nf.embed(&self.source, &back);
        Ok(MembershipResult { verdict: Verdict::Member, representation: Some(w) })
    }

    pub fn contains(&self, h: &Polynomial) -> Result<bool> {
        Ok(self.membership(h)?.is_member())
    }
}

/// Decides `h in Q[f_1, ..., f_r]`.
pub fn subalgebra_membership(h: &Polynomial, f: &PolyMap) -> Result<MembershipResult> {
    Subring::from_map(f)?.membership(h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;

    fn ring(vars: &str, order: MonomialOrder) -> Ring {
        let names: Vec<&str> = vars.split(',').collect();
        PolyRing::new(&names, order).unwrap()
    }

    fn polys(r: &Ring, items: &[&str]) -> Vec<Polynomial> {
        items.iter().map(|s| parse_poly(s, r).unwrap()).collect()
    }

    fn strs(gb: &GroebnerBasis) -> Vec<String> {
        gb.generators().iter().map(|g| g.to_string()).collect()
    }

    #[test]
    fn small_bases() {
        let r = ring("x", MonomialOrder::Lex);
        assert_eq!(strs(&buchberger(&polys(&r, &["x"]), MonomialOrder::Lex).unwrap()), vec!["x"]);
        assert_eq!(strs(&buchberger(&polys(&r, &["1"]), MonomialOrder::Lex).unwrap()), vec!["1"]);
        assert!(buchberger(&[], MonomialOrder::Lex).is_err());

        let r = ring("x,y", MonomialOrder::Lex);
        let gb = buchberger(&polys(&r, &["x^2-y", "x*y-1"]), MonomialOrder::Lex).unwrap();
        assert_eq!(strs(&gb), vec!["x - y^2", "y^3 - 1"]);
        // oracle: the S-polynomial of the pair reduces to zero under plain division
        let g = gb.generators();
        let s = &g[0].mul_term(&Monomial(vec![0, 3]), &crate::Rational::one())
            - &g[1].mul_term(&Monomial(vec![1, 0]), &crate::Rational::one());
        let (_, r1) = s.div_rem(&g[1]).unwrap();
        let (_, r2) = r1.div_rem(&g[0]).unwrap();
        let (_, r3) = r2.div_rem(&g[1]).unwrap();
        assert!(r3.is_zero());
        // and each original generator lies in the ideal of the basis
        for h in polys(&r, &["x^2-y", "x*y-1"]) {
            assert!(normal_form(&h, &gb).unwrap().is_zero());
        }
    }

    #[test]
    fn normal_forms() {
        let r = ring("x,y", MonomialOrder::Lex);
        let gx = buchberger(&polys(&r, &["x"]), MonomialOrder::Lex).unwrap();
        assert!(normal_form(&parse_poly("x^3", &r).unwrap(), &gx).unwrap().is_zero());
        assert_eq!(normal_form(&parse_poly("y+1", &r).unwrap(), &gx).unwrap().to_string(), "y + 1");
        let gb = buchberger(&polys(&r, &["x-y^2", "y^3-1"]), MonomialOrder::Lex).unwrap();
        // by hand: x -> y^2 turns x^2*y^2 into y^6 = (y^3)^2 -> 1
        let nf = normal_form(&parse_poly("x^2*y^2", &r).unwrap(), &gb).unwrap();
        assert_eq!(nf.to_string(), "1");
        let nf = normal_form(&parse_poly("x*y^2 + x", &r).unwrap(), &gb).unwrap();
        assert_eq!(nf.to_string(), "y^2 + y");
        assert_eq!(normal_form(&nf, &gb).unwrap(), nf);
        let other = ring("a,b", MonomialOrder::Lex);
        assert!(normal_form(&parse_poly("a", &other).unwrap(), &gb).is_err());
    }

    #[test]
    fn membership_examples() {
        let r = PolyRing::parse_vars("x1,x2,x3").unwrap();
        let f = PolyMap::new(polys(&r, &["x1^2*x2", "x3"])).unwrap();
        let m = subalgebra_membership(&parse_poly("x1^2*x2 + x3", &r).unwrap(), &f).unwrap();
        assert!(m.is_member());
        assert_eq!(m.representation.unwrap().to_string(), "y1 + y2");
        let m = subalgebra_membership(&parse_poly("5", &r).unwrap(), &f).unwrap();
        assert_eq!(m.representation.unwrap().to_string(), "5");
        let m = subalgebra_membership(&parse_poly("x1", &r).unwrap(), &f).unwrap();
        assert_eq!(m.verdict, Verdict::NonMember);

        let rx = PolyRing::parse_vars("x").unwrap();
        let cusp = Subring::new(polys(&rx, &["x^2", "x^3"])).unwrap();
        assert!(!cusp.contains(&parse_poly("x", &rx).unwrap()).unwrap());
        let m = cusp.membership(&parse_poly("x^5 + x^4", &rx).unwrap()).unwrap();
        let w = m.representation.unwrap();
        assert_eq!(cusp.substitute(&w).unwrap(), parse_poly("x^5 + x^4", &rx).unwrap());
    }

    #[test]
    fn fresh_names_avoid_collisions() {
        let r = PolyRing::parse_vars("_y1,x").unwrap();
        let s = Subring::new(polys(&r, &["_y1 + x^2"])).unwrap();
        let h = parse_poly("(_y1 + x^2)^2", &r).unwrap();
        assert_eq!(s.membership(&h).unwrap().representation.unwrap().to_string(), "T^2");
    }
}
