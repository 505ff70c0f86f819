//! Bounded falsifiers: algebraic closedness of `Q[f]` under the constant
//! dgcd hypothesis, square-factorial closedness and root closedness.

use std::collections::HashMap;

use serde::Serialize;

use super::certificate::{Certificate, Ctx};
use super::verdict::{EquivalenceVerdict, FalsifierReport, Status};
use super::witness::monomials_of_degree;
use crate::arith::Rational;
use crate::error::{Error, Result};
use crate::factor::{normalize, squarefree_decompose};
use crate::groebner::Subring;
use crate::jacobian::{bordered_minor, dgcd_of, jacobian_minors, subsets};
use crate::linalg::nullspace;
use crate::poly::{Monomial, PolyMap, Polynomial, Ring};

fn monomials_up_to(ring: &Ring, lo: u32, hi: u32) -> Vec<Monomial> {
    (lo..=hi).flat_map(|d| monomials_of_degree(ring.nvars(), d)).map(Monomial).collect()
}

/// Basis of `{ h : deg h <= degree, h(0) = 0, every (r+1)-minor of (f, h) vanishes }`.
/// The conditions are linear in the coefficients of `h`.
pub fn algebraic_solution_space(f: &PolyMap, degree: u32) -> Vec<Polynomial> {
    let ring = f.target();
    let cols = monomials_up_to(ring, 1, degree);
    let (n, r) = (f.nvars(), f.arity());
    let as_poly = |v: &[Rational]| {
        Polynomial::from_terms(ring, cols.iter().zip(v).filter(|(_, c)| !c.is_zero()).map(|(m, c)| (m.clone(), c.clone())))
    };
    if r == n {
        return (0..cols.len())
            .map(|j| Polynomial::monomial(ring, cols[j].clone(), Rational::one()))
            .collect();
    }
    let fm = jacobian_minors(f);
    let sets = subsets(n, r + 1);
    let mut rows: HashMap<(usize, Monomial), usize> = HashMap::new();
    let mut entries: Vec<(usize, usize, Rational)> = Vec::new();
    for (j, m) in cols.iter().enumerate() {
        let h = Polynomial::monomial(ring, m.clone(), Rational::one());
        let grad: Vec<Polynomial> = (0..n).map(|k| h.partial_derivative(k).expect("index")).collect();
        for (s, set) in sets.iter().enumerate() {
            for (t, c) in bordered_minor(&fm, &grad, set).terms() {
                let next = rows.len();
                let row = *rows.entry((s, t.clone())).or_insert(next);
                entries.push((row, j, c.clone()));
            }
        }
    }
    let mut matrix = vec![vec![Rational::zero(); cols.len()]; rows.len()];
    for (i, j, c) in entries {
        matrix[i][j] = c;
    }
    nullspace(&matrix, cols.len()).iter().map(|v| as_poly(v)).collect()
}

/// Searches `h` of degree at most `search_degree` algebraic over `Q[f]`
/// but outside it. Requires a nonzero constant dgcd.
pub fn jc_falsifier(f: &PolyMap, search_degree: u32) -> Result<FalsifierReport> {
    let d = dgcd_of(&jacobian_minors(f))?;
    if !d.is_constant_nonzero {
        return Err(Error::Hypothesis(format!("dgcd is {} (not a nonzero constant)", d.value)));
    }
    let sub = Subring::from_map(f)?;
    let basis = algebraic_solution_space(f, search_degree);
    let mut report = FalsifierReport::new();
    report.bound("search_degree", search_degree as u64);
    report.bound("solution_dimension", basis.len() as u64);
    let ctx = Ctx::new(f.target(), f.images());
    for h in basis {
        report.samples_tried += 1;
        if !sub.contains(&h)? {
            report.counterexamples.push(Certificate::JcCounterexample { ctx: ctx.clone(), h: h.to_string() });
        }
    }
    Ok(report)
}

/// `p = x^2 * y` with `y` square-free; `x` is normalized, the unit sits in `y`.
pub fn square_factorial_split(p: &Polynomial) -> Result<(Polynomial, Polynomial)> {
    let d = squarefree_decompose(p)?;
    let ring = p.ring();
    let mut x = Polynomial::one(ring);
    let mut y = Polynomial::constant(ring, d.unit.clone());
    for (s, i) in &d.parts {
        x = &x * &s.pow(i / 2);
        if i % 2 == 1 {
            y = &y * s;
        }
    }
    Ok((normalize(&x), y))
}

/// Square-factorial closedness of `Q[f]` on samples `w` (in the source ring).
pub fn sqf_closed_check(f: &PolyMap, sample_elements: &[Polynomial]) -> Result<FalsifierReport> {
    let minors = jacobian_minors(f);
    if minors.all_zero() {
        return Err(Error::Dependent { minors: minors.len() });
    }
    sqf_closed_check_subring(&Subring::from_map(f)?, sample_elements)
}

/// As [`sqf_closed_check`] for an arbitrary generator list.
pub fn sqf_closed_check_subring(sub: &Subring, sample_elements: &[Polynomial]) -> Result<FalsifierReport> {
    let ctx = Ctx::new(sub.ambient(), sub.generators());
    let mut report = FalsifierReport::new();
    report.bound("samples", sample_elements.len() as u64);
    for w in sample_elements {
        let p = sub.substitute(w)?;
        if p.is_constant() {
            continue;
        }
        report.samples_tried += 1;
        let (x, y) = square_factorial_split(&p)?;
        if x.is_constant() {
            continue;
        }
        let mut out = Vec::new();
        if !sub.contains(&x)? {
            out.push("x".to_string());
        }
        if !sub.contains(&y)? {
            out.push("y".to_string());
        }
        if !out.is_empty() {
            report.counterexamples.push(Certificate::SqfClosedViolation {
                ctx: ctx.clone(),
                w: w.to_string(),
                x_part: x.to_string(),
                y_part: y.to_string(),
                outside: out,
            });
        }
    }
    Ok(report)
}

/// Candidate grid for root closedness.
#[derive(Clone, Debug, Serialize)]
pub struct RootGrid {
    pub candidate_degree: u32,
    pub max_power: u32,
    /// Coefficients `c` for binomials `m1 + c*m2`.
    pub coefficients: Vec<i64>,
    pub max_candidates: usize,
}

impl RootGrid {
    pub fn new(candidate_degree: u32, max_power: u32) -> Self {
        RootGrid { candidate_degree, max_power, coefficients: vec![1, -1], max_candidates: 2000 }
    }
}

/// Nonconstant monomials of degree at most `d`, then binomials `m1 + c*m2`
/// with `m1 > m2` (`m2` may be 1).
pub fn root_candidates(ring: &Ring, grid: &RootGrid) -> Vec<Polynomial> {
    let mons = monomials_up_to(ring, 0, grid.candidate_degree);
    let mut out: Vec<Polynomial> =
        mons.iter().filter(|m| !m.is_one()).map(|m| Polynomial::monomial(ring, m.clone(), Rational::one())).collect();
    for a in &mons {
        if a.is_one() {
            continue;
        }
        for b in &mons {
            if ring.order().cmp(a, b) != std::cmp::Ordering::Greater {
                continue;
            }
            for &c in &grid.coefficients {
                out.push(&Polynomial::monomial(ring, a.clone(), Rational::one())
                    + &Polynomial::monomial(ring, b.clone(), Rational::from_i64(c)));
            }
        }
    }
    out.truncate(grid.max_candidates);
    out
}

/// Reports candidates `a` outside `Q[f]` with `a^m` inside for some `2 <= m <= max_power`.
pub fn root_closed_check(sub: &Subring, grid: &RootGrid) -> Result<FalsifierReport> {
    let ctx = Ctx::new(sub.ambient(), sub.generators());
    let mut report = FalsifierReport::new();
    report.bound("candidate_degree", grid.candidate_degree as u64);
    report.bound("max_power", grid.max_power as u64);
    for a in root_candidates(sub.ambient(), grid) {
        report.samples_tried += 1;
        if sub.contains(&a)? {
            continue;
        }
        let mut power = a.clone();
        for m in 2..=grid.max_power {
            power = &power * &a;
            if let Some(w) = sub.membership(&power)?.representation {
                report.counterexamples.push(Certificate::RootClosedViolation {
                    ctx: ctx.clone(),
                    a: a.to_string(),
                    m,
                    representation: w.to_string(),
                });
                break;
            }
        }
    }
    Ok(report)
}

#[derive(Clone, Debug, Serialize)]
pub struct PairingCheck {
    pub verdict: EquivalenceVerdict,
    pub root: FalsifierReport,
    pub sqf: FalsifierReport,
}

/// Whenever root closedness fails at `a`, square-factorial closedness is
/// probed on the powers `a^j` (`m <= j <= 2m + 1`) lying in `Q[f]`.
///
/// Hypothesis flags: `units` holds for polynomial subalgebras over a field;
/// `fraction_field_meet` is assumed unless refuted by `a^m, a^(m+1)` both in
/// `Q[f]`, which puts `a = a^(m+1) / a^m` in the fraction field of `Q[f]`.
pub fn check_thm62_pairing(sub: &Subring, grid: &RootGrid) -> Result<PairingCheck> {
    let root = root_closed_check(sub, grid)?;
    let ring = sub.ambient();
    let mut samples = Vec::new();
    let mut refuted_meet = false;
    for cert in &root.counterexamples {
        let Certificate::RootClosedViolation { a, m, .. } = cert else { continue };
        let a = crate::parse::parse_poly(a, ring)?;
        let mut in_r = Vec::new();
        for j in *m..=2 * m + 1 {
            if let Some(w) = sub.membership(&a.pow(j))?.representation {
                samples.push(w);
                in_r.push(j);
            }
        }
        refuted_meet |= in_r.windows(2).any(|p| p[1] == p[0] + 1);
    }
    let sqf = sqf_closed_check_subring(sub, &samples)?;
    let mut v = EquivalenceVerdict::new();
    v.set("units", Status::Holds);
    v.set("fraction_field_meet", if refuted_meet { Status::Fails } else { Status::Assumed });
    v.set("root_closed", if root.counterexamples.is_empty() { Status::UnknownUpToBound } else { Status::Fails });
    v.set("sqf_closed", if sqf.counterexamples.is_empty() { Status::UnknownUpToBound } else { Status::Fails });
    v.certificates.extend(root.counterexamples.iter().cloned());
    v.certificates.extend(sqf.counterexamples.iter().cloned());
    Ok(PairingCheck { verdict: v, root, sqf })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;
    use crate::poly::PolyRing;

    fn gens(vars: &str, items: &[&str]) -> Vec<Polynomial> {
        let ring = PolyRing::parse_vars(vars).unwrap();
        items.iter().map(|s| parse_poly(s, &ring).unwrap()).collect()
    }

    #[test]
    fn jc_examples() {
        let f = PolyMap::new(gens("x1,x2,x3", &["x1", "x2"])).unwrap();
        let rep = jc_falsifier(&f, 2).unwrap();
        assert!(rep.counterexamples.is_empty());
        // h in Q[x1, x2] of degree 1..=2: five monomials
        assert_eq!(rep.samples_tried, 5);

        let f = PolyMap::new(gens("x1,x2", &["x1+x2"])).unwrap();
        let rep = jc_falsifier(&f, 3).unwrap();
        assert!(rep.counterexamples.is_empty());
        assert_eq!(rep.samples_tried, 3);

        let f = PolyMap::new(gens("x,y", &["x", "y"])).unwrap();
        assert!(jc_falsifier(&f, 2).unwrap().counterexamples.is_empty());

        let f = PolyMap::new(gens("x,y", &["x^2"])).unwrap();
        assert!(matches!(jc_falsifier(&f, 2), Err(Error::Hypothesis(_))));
    }

    #[test]
    fn cusp_falsifiers() {
        let sub = Subring::new(gens("x", &["x^2", "x^3"])).unwrap();
        let src = sub.source_ring().clone();
        let w = |s: &str| parse_poly(s, &src).unwrap();
        let rep = sqf_closed_check_subring(&sub, &[w("y1^2"), w("3"), w("y1*y2")]).unwrap();
        assert_eq!(rep.samples_tried, 2);
        assert_eq!(rep.counterexamples.len(), 1);
        match &rep.counterexamples[0] {
            Certificate::SqfClosedViolation { x_part, y_part, outside, .. } => {
                assert_eq!((x_part.as_str(), y_part.as_str()), ("x^2", "x"));
                assert_eq!(outside, &vec!["y".to_string()]);
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(rep.reverify().unwrap());

        let root = root_closed_check(&sub, &RootGrid::new(2, 3)).unwrap();
        match &root.counterexamples[0] {
            Certificate::RootClosedViolation { a, m, .. } => assert_eq!((a.as_str(), *m), ("x", 2)),
            other => panic!("unexpected {other:?}"),
        }
        assert!(root.reverify().unwrap());

        let pair = check_thm62_pairing(&sub, &RootGrid::new(2, 3)).unwrap();
        assert!(pair.verdict.consistent_with_theorem);
        assert_eq!(pair.verdict.status("root_closed"), Some(Status::Fails));
        assert_eq!(pair.verdict.status("sqf_closed"), Some(Status::Fails));
        assert_eq!(pair.verdict.status("fraction_field_meet"), Some(Status::Fails));
    }

    #[test]
    fn closed_subrings() {
        let f = PolyMap::new(gens("x1,x2,x3", &["x1", "x2"])).unwrap();
        let src = f.source_ring();
        let samples: Vec<Polynomial> =
            ["y1^2*y2", "y1^3", "(y1+y2)^2*(y1-1)", "y1*y2"].iter().map(|s| parse_poly(s, &src).unwrap()).collect();
        assert!(sqf_closed_check(&f, &samples).unwrap().counterexamples.is_empty());

        let sub = Subring::new(gens("x1,x2", &["x1"])).unwrap();
        assert!(root_closed_check(&sub, &RootGrid::new(2, 3)).unwrap().counterexamples.is_empty());
        let sub = Subring::from_map(&f).unwrap();
        let pair = check_thm62_pairing(&sub, &RootGrid::new(2, 2)).unwrap();
        assert!(pair.verdict.consistent_with_theorem);
        assert_eq!(pair.verdict.status("root_closed"), Some(Status::UnknownUpToBound));
        assert!(sqf_closed_check(&PolyMap::new(gens("x,y", &["x", "x^2"])).unwrap(), &[]).is_err());
    }

    #[test]
    fn split_is_forced() {
        let ring = PolyRing::parse_vars("x,y").unwrap();
        let p = parse_poly("-2*x^5*(y+1)^2*(x+y)^3", &ring).unwrap();
        let (x, y) = square_factorial_split(&p).unwrap();
        assert_eq!(&x.pow(2) * &y, p);
        assert_eq!(x, parse_poly("x^2*(y+1)*(x+y)", &ring).unwrap());
    }
}
