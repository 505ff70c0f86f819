//! The divisibility criterion for `g^2 | w(f)` and Keller-map preservation
//! of square-freeness.
//!
//! Condition keys: `"i"` is the Jacobian-side condition, `"ii"` the
//! irreducible-`w` condition and `"iii"` the square-free-`w` condition.
//! Universally quantified conditions checked on samples report `holds`
//! when no sampled instance violates them.

use super::certificate::{square_split, Certificate, Ctx};
use super::verdict::{EquivalenceVerdict, Status};
use super::witness::{witness_search_with, WitnessConfig, WitnessKind, WitnessResult};
use crate::error::{Error, Result};
use crate::factor::{factor, is_irreducible, is_squarefree};
use crate::jacobian::{jacobian_determinant, jacobian_minors};
use crate::poly::{PolyMap, Polynomial};

/// Searches for an irreducible witness first, then a square-free one.
fn both_kinds(f: &PolyMap, g: &Polynomial, cfg: &WitnessConfig) -> Result<(WitnessResult, Option<WitnessResult>)> {
    let irr = witness_search_with(f, g, WitnessKind::Irreducible, cfg)?;
    if irr.found() {
        return Ok((irr, None));
    }
    let sqf = witness_search_with(f, g, WitnessKind::SquareFree, cfg)?;
    Ok((irr, Some(sqf)))
}

/// `g | every maximal minor` (exact) against the witness search up to `max_degree`.
pub fn check_thm24(f: &PolyMap, g: &Polynomial, max_degree: u32) -> Result<EquivalenceVerdict> {
    check_thm24_with(f, g, &WitnessConfig { max_degree, ..WitnessConfig::default() })
}

pub fn check_thm24_with(f: &PolyMap, g: &Polynomial, cfg: &WitnessConfig) -> Result<EquivalenceVerdict> {
    let (irr, sqf) = both_kinds(f, g, cfg)?;
    let minors = jacobian_minors(f);
    let mut failing = None;
    for (cols, m) in &minors.minors {
        if m.exact_div(g)?.is_none() {
            failing = Some(cols.clone());
            break;
        }
    }
    let mut v = EquivalenceVerdict::new();
    v.set("i", if failing.is_none() { Status::Holds } else { Status::Fails });
    v.set("ii", if irr.found() { Status::Holds } else { Status::UnknownUpToBound });
    let found = if irr.found() { Some(&irr) } else { sqf.as_ref().filter(|s| s.found()) };
    v.set("iii", if found.is_some() { Status::Holds } else { Status::UnknownUpToBound });
    if let Some(res) = found {
        let cert = res.to_certificate(f, g).expect("found witness");
        match failing {
            Some(cols) => v.violate(Certificate::WitnessWithoutDivisibility {
                ctx: Ctx::new(f.target(), f.images()),
                columns: cols.iter().map(|c| c + 1).collect(),
                witness: Box::new(cert),
            }),
            None => v.certificates.push(cert),
        }
    }
    Ok(v)
}

/// Per-sample classification recorded by [`check_keller_preservation`].
#[derive(Clone, Debug, serde::Serialize)]
pub struct SampleOutcome {
    pub w: Polynomial,
    pub irreducible: bool,
    pub squarefree: bool,
    pub image_squarefree: bool,
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct KellerCheck {
    pub verdict: EquivalenceVerdict,
    pub jacobian: Polynomial,
    pub samples: Vec<SampleOutcome>,
    /// Witness search on an irreducible factor of a nonconstant Jacobian.
    pub witness: Option<WitnessResult>,
    pub factor: Option<Polynomial>,
}

/// Checks sampled `w` against the Keller condition of `phi`; when the
/// condition fails, exhibits a witness from an irreducible factor of the
/// Jacobian determinant.
pub fn check_keller_preservation(phi: &PolyMap, sample_ws: &[Polynomial], max_degree: u32) -> Result<KellerCheck> {
    check_keller_preservation_with(phi, sample_ws, &WitnessConfig { max_degree, ..WitnessConfig::default() })
}

pub fn check_keller_preservation_with(phi: &PolyMap, sample_ws: &[Polynomial], cfg: &WitnessConfig) -> Result<KellerCheck> {
    let det = jacobian_determinant(phi)?;
    let keller = det.is_constant() && !det.is_zero();
    let ctx = Ctx::new(phi.target(), phi.images());
    let mut v = EquivalenceVerdict::new();
    v.set("i", if keller { Status::Holds } else { Status::Fails });
    let (mut ii_fails, mut iii_fails) = (false, false);
    let mut samples = Vec::new();
    for w in sample_ws {
        if w.is_zero() {
            return Err(Error::ZeroPolynomial("sample"));
        }
        if w.is_constant() {
            continue;
        }
        let squarefree = is_squarefree(w)?;
        let irreducible = squarefree && is_irreducible(w)?;
        let image = phi.substitute(w)?;
        let image_squarefree = is_squarefree(&image)?;
        if squarefree && !image_squarefree {
            iii_fails = true;
            ii_fails |= irreducible;
            let (a, b) = square_split(&image)?.expect("image has a repeated factor");
            let cert = if keller {
                Certificate::KellerViolation { ctx: ctx.clone(), w: w.to_string(), factor: a.to_string(), cofactor: b.to_string() }
            } else {
                Certificate::NonSquarefree { ctx: ctx.clone(), w: w.to_string(), factor: a.to_string(), cofactor: b.to_string() }
            };
            if keller {
                v.violate(cert);
            } else {
                v.certificates.push(cert);
            }
        }
        samples.push(SampleOutcome { w: w.clone(), irreducible, squarefree, image_squarefree });
    }
    let mut witness = None;
    let mut factor_g = None;
    if !keller && !det.is_zero() {
        let g = factor(&det)?.factors[0].0.clone();
        let (irr, sqf) = both_kinds(phi, &g, cfg)?;
        let res = if irr.found() { irr } else { sqf.expect("searched") };
        if let Some(w) = &res.witness {
            iii_fails = true;
            ii_fails |= res.witness_kind == WitnessKind::Irreducible;
            v.certificates.push(Certificate::NonSquarefree {
                ctx: ctx.clone(),
                w: w.to_string(),
                factor: g.to_string(),
                cofactor: res.certificate.as_ref().expect("quotient").to_string(),
            });
        }
        witness = Some(res);
        factor_g = Some(g);
    }
    let status = |fails: bool| {
        if fails {
            Status::Fails
        } else if keller {
            Status::Holds
        } else {
            Status::UnknownUpToBound
        }
    };
    v.set("ii", status(ii_fails));
    v.set("iii", status(iii_fails));
    Ok(KellerCheck { verdict: v, jacobian: det, samples, witness, factor: factor_g })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;
    use crate::poly::PolyRing;

    fn map(vars: &str, polys: &[&str]) -> PolyMap {
        let ring = PolyRing::parse_vars(vars).unwrap();
        PolyMap::new(polys.iter().map(|s| parse_poly(s, &ring).unwrap()).collect()).unwrap()
    }

    fn src(f: &PolyMap, items: &[&str]) -> Vec<Polynomial> {
        items.iter().map(|s| parse_poly(s, &f.source_ring()).unwrap()).collect()
    }

    #[test]
    fn thm24_examples() {
        let f = map("x", &["x^3+3*x"]);
        let g = parse_poly("x^2+1", f.target()).unwrap();
        let v = check_thm24(&f, &g, 2).unwrap();
        assert!(v.consistent_with_theorem);
        assert_eq!(v.status("i"), Some(Status::Holds));
        assert_eq!(v.status("ii"), Some(Status::Holds));
        assert!(v.certificates[0].verify().unwrap());

        let f = map("x", &["x"]);
        let g = parse_poly("x^2+2", f.target()).unwrap();
        let v = check_thm24(&f, &g, 4).unwrap();
        assert!(v.consistent_with_theorem);
        assert_eq!(v.status("i"), Some(Status::Fails));
        assert_eq!(v.status("iii"), Some(Status::UnknownUpToBound));

        let f = map("x1,x2,x3", &["x1^2*x2", "x3"]);
        let g = parse_poly("x1", f.target()).unwrap();
        let v = check_thm24(&f, &g, 2).unwrap();
        assert!(v.consistent_with_theorem);
        assert_eq!(v.status("i"), Some(Status::Holds));
        assert_eq!(v.status("ii"), Some(Status::Holds));
    }

    #[test]
    fn keller_examples() {
        let phi = map("x,y", &["x+y^2", "y"]);
        let c = check_keller_preservation(&phi, &src(&phi, &["y1", "y2", "y1+y2", "y1*y2"]), 2).unwrap();
        assert!(c.verdict.consistent_with_theorem);
        assert_eq!(c.verdict.status("i"), Some(Status::Holds));
        assert!(c.samples.iter().all(|s| s.image_squarefree));

        let phi = map("x,y", &["x^2", "y"]);
        let c = check_keller_preservation(&phi, &src(&phi, &["y1"]), 2).unwrap();
        assert!(c.verdict.consistent_with_theorem);
        assert_eq!(c.verdict.status("i"), Some(Status::Fails));
        assert_eq!(c.verdict.status("iii"), Some(Status::Fails));
        assert!(!c.samples[0].image_squarefree);
        assert!(c.verdict.certificates.iter().all(|cert| cert.verify().unwrap()));

        let phi = map("x,y", &["x", "y"]);
        let c = check_keller_preservation(&phi, &src(&phi, &["y1^2+y2", "y1*y2-1"]), 2).unwrap();
        assert!(c.verdict.consistent_with_theorem);
        assert!(c.witness.is_none());

        assert!(check_keller_preservation(&map("x,y", &["x"]), &[], 2).is_err());
    }
}
