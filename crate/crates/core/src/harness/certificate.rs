//! Self-contained certificates. Every polynomial is stored as text together
//! with the variable names needed to parse it, so a certificate can be
//! checked from its JSON form alone.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::factor::{is_squarefree, normalize};
use crate::groebner::Subring;
use crate::jacobian::{bordered_minor, jacobian_determinant, jacobian_minors, subsets};
use crate::parse::parse_poly;
use crate::poly::{substitute, PolyMap, PolyRing, Polynomial, Ring};

/// Polynomials in text form plus the ring they are written in.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ctx {
    pub vars: Vec<String>,
    pub generators: Vec<String>,
}

impl Ctx {
    pub fn new(ring: &Ring, generators: &[Polynomial]) -> Self {
        Ctx { vars: ring.names().to_vec(), generators: generators.iter().map(|g| g.to_string()).collect() }
    }

    fn ring(&self) -> Result<Ring> {
        PolyRing::new(&self.vars, crate::poly::MonomialOrder::GrLex)
    }

    fn source(&self) -> Ring {
        PolyRing::witness_ring(self.generators.len())
    }

    fn gens(&self, ring: &Ring) -> Result<Vec<Polynomial>> {
        self.generators.iter().map(|s| Ok(parse_poly(s, ring)?)).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Certificate {
    /// `w(f) = g^2 * quotient`.
    Divisibility { ctx: Ctx, w: String, g: String, quotient: String },
    /// `w(f) = factor^2 * cofactor` with `factor` nonconstant.
    NonSquarefree { ctx: Ctx, w: String, factor: String, cofactor: String },
    /// `element = representation(f)`.
    Membership { ctx: Ctx, element: String, representation: String },
    /// `element` is not in `Q[f]`; checked by recomputing the elimination basis.
    NonMembership { ctx: Ctx, element: String },
    /// A Keller map with a square-free `w` whose image is not square-free.
    KellerViolation { ctx: Ctx, w: String, factor: String, cofactor: String },
    /// `(i)` fails at the minor on `columns` (1-based) while a witness exists.
    WitnessWithoutDivisibility { ctx: Ctx, columns: Vec<usize>, witness: Box<Certificate> },
    /// `h` algebraic over `Q[f]` (all bordered minors vanish) but not a member.
    JcCounterexample { ctx: Ctx, h: String },
    /// `p = w(f) = x^2 * y`, `y` square-free, `x` or `y` outside `Q[f]`.
    SqfClosedViolation { ctx: Ctx, w: String, x_part: String, y_part: String, outside: Vec<String> },
    /// `a^m = representation(f)` while `a` is not in `Q[f]`.
    RootClosedViolation { ctx: Ctx, a: String, m: u32, representation: String },
}

fn nonconstant(p: &Polynomial) -> bool {
    !p.is_constant()
}

fn outside(gens: &[Polynomial], p: &Polynomial) -> Result<bool> {
    Ok(!Subring::new(gens.to_vec())?.contains(p)?)
}

impl Certificate {
    /// Re-checks the claim exactly, without any search.
    pub fn verify(&self) -> Result<bool> {
        match self {
            Certificate::Divisibility { ctx, w, g, quotient } => {
                let ring = ctx.ring()?;
                let gens = ctx.gens(&ring)?;
                let w = parse_poly(w, &ctx.source())?;
                let g = parse_poly(g, &ring)?;
                let q = parse_poly(quotient, &ring)?;
                Ok(nonconstant(&w) && substitute(&w, &gens, &ring)? == &g.pow(2) * &q)
            }
            Certificate::NonSquarefree { ctx, w, factor, cofactor } => {
                let ring = ctx.ring()?;
                let gens = ctx.gens(&ring)?;
                let w = parse_poly(w, &ctx.source())?;
                let a = parse_poly(factor, &ring)?;
                let b = parse_poly(cofactor, &ring)?;
                Ok(nonconstant(&a) && substitute(&w, &gens, &ring)? == &a.pow(2) * &b)
            }
            Certificate::Membership { ctx, element, representation } => {
                let ring = ctx.ring()?;
                let gens = ctx.gens(&ring)?;
                let h = parse_poly(element, &ring)?;
                let w = parse_poly(representation, &ctx.source())?;
                Ok(substitute(&w, &gens, &ring)? == h)
            }
            Certificate::NonMembership { ctx, element } => {
                let ring = ctx.ring()?;
                let gens = ctx.gens(&ring)?;
                let h = parse_poly(element, &ring)?;
                outside(&gens, &h)
            }
            Certificate::KellerViolation { ctx, w, factor, cofactor } => {
                let ring = ctx.ring()?;
                let gens = ctx.gens(&ring)?;
                let map = PolyMap::new(gens.clone())?;
                let det = jacobian_determinant(&map)?;
                let wp = parse_poly(w, &ctx.source())?;
                let a = parse_poly(factor, &ring)?;
                let b = parse_poly(cofactor, &ring)?;
                Ok(det.is_constant()
                    && !det.is_zero()
                    && nonconstant(&wp)
                    && is_squarefree(&wp)?
                    && nonconstant(&a)
                    && map.substitute(&wp)? == &a.pow(2) * &b)
            }
            Certificate::WitnessWithoutDivisibility { ctx, columns, witness } => {
                let Certificate::Divisibility { g, .. } = witness.as_ref() else {
                    return Ok(false);
                };
                let ring = ctx.ring()?;
                let map = PolyMap::new(ctx.gens(&ring)?)?;
                let g = parse_poly(g, &ring)?;
                let cols: Vec<usize> = columns.iter().map(|c| c.wrapping_sub(1)).collect();
                let minors = jacobian_minors(&map);
                let Some(m) = minors.get(&cols) else {
                    return Ok(false);
                };
                Ok(m.exact_div(&g)?.is_none() && witness.verify()?)
            }
            Certificate::JcCounterexample { ctx, h } => {
                let ring = ctx.ring()?;
                let gens = ctx.gens(&ring)?;
                let map = PolyMap::new(gens.clone())?;
                let h = parse_poly(h, &ring)?;
                let fm = jacobian_minors(&map);
                let grad: Vec<Polynomial> = (0..ring.nvars()).map(|j| h.partial_derivative(j)).collect::<Result<_>>()?;
                let algebraic = map.arity() == map.nvars()
                    || subsets(map.nvars(), map.arity() + 1).iter().all(|c| bordered_minor(&fm, &grad, c).is_zero());
                Ok(algebraic && outside(&gens, &h)?)
            }
            Certificate::SqfClosedViolation { ctx, w, x_part, y_part, outside: which } => {
                let ring = ctx.ring()?;
                let gens = ctx.gens(&ring)?;
                let w = parse_poly(w, &ctx.source())?;
                let x = parse_poly(x_part, &ring)?;
                let y = parse_poly(y_part, &ring)?;
                let p = substitute(&w, &gens, &ring)?;
                if p.is_constant() || p != &x.pow(2) * &y || y.is_zero() || !is_squarefree(&y)? || which.is_empty() {
                    return Ok(false);
                }
                for part in which {
                    let e = match part.as_str() {
                        "x" => &x,
                        "y" => &y,
                        _ => return Ok(false),
                    };
                    if !outside(&gens, e)? {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
            Certificate::RootClosedViolation { ctx, a, m, representation } => {
                let ring = ctx.ring()?;
                let gens = ctx.gens(&ring)?;
                let a = parse_poly(a, &ring)?;
                let w = parse_poly(representation, &ctx.source())?;
                Ok(*m >= 2
                    && nonconstant(&a)
                    && substitute(&w, &gens, &ring)? == a.pow(*m)
                    && outside(&gens, &a)?)
            }
        }
    }

    /// Parses a JSON certificate and verifies it.
    pub fn verify_json(text: &str) -> Result<bool> {
        let cert: Certificate =
            serde_json::from_str(text).map_err(|e| Error::Hypothesis(format!("malformed certificate: {e}")))?;
        cert.verify()
    }
}

/// `p = factor^2 * cofactor` from the square-free decomposition, if `p`
/// has a repeated factor.
pub fn square_split(p: &Polynomial) -> Result<Option<(Polynomial, Polynomial)>> {
    if p.is_zero() || p.is_constant() {
        return Ok(None);
    }
    let d = crate::factor::squarefree_decompose(p)?;
    let Some((s, _)) = d.parts.iter().find(|(_, i)| *i >= 2) else {
        return Ok(None);
    };
    let s = normalize(s);
    let q = p.exact_div(&s.pow(2))?.expect("square part divides");
    Ok(Some((s, q)))
}
