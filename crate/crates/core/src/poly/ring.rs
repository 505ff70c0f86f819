use std::cmp::Ordering;
use std::collections::HashSet;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Exponent vector, one entry per ring variable.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self / other`, if `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(Monomial)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.min(b)).collect())
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    /// Total degree first, ties broken lexicographically with x1 > x2 > ...
    GrLex,
    /// Pure lexicographic, x1 > x2 > ...
    Lex,
    /// Elimination order: graded-lex on the first `split` variables decides,
    /// graded-lex on the remaining variables breaks ties.
    Block { split: usize },
}

fn grlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    da.cmp(&db).then_with(|| a.cmp(b))
}

impl MonomialOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match *self {
            MonomialOrder::GrLex => grlex(&a.0, &b.0),
            MonomialOrder::Lex => a.0.cmp(&b.0),
            MonomialOrder::Block { split } => grlex(&a.0[..split], &b.0[..split])
                .then_with(|| grlex(&a.0[split..], &b.0[split..])),
        }
    }
}

/// Ordered list of variable names plus a monomial order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolyRing {
    names: Vec<String>,
    order: MonomialOrder,
}

pub type Ring = Arc<PolyRing>;

fn valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl PolyRing {
    pub fn new<S: AsRef<str>>(names: &[S], order: MonomialOrder) -> Result<Ring> {
        if names.is_empty() {
            return Err(Error::InvalidRing("at least one variable is required".into()));
        }
        let mut seen = HashSet::new();
        let mut owned = Vec::with_capacity(names.len());
        for n in names {
            let n = n.as_ref().trim();
            if !valid_name(n) {
                return Err(Error::InvalidRing(format!("invalid variable name `{n}`")));
            }
            if !seen.insert(n.to_string()) {
                return Err(Error::InvalidRing(format!("duplicate variable `{n}`")));
            }
            owned.push(n.to_string());
        }
        if let MonomialOrder::Block { split } = order {
            if split > names.len() {
                return Err(Error::InvalidRing("block split exceeds variable count".into()));
            }
        }
        Ok(Arc::new(PolyRing { names: owned, order }))
    }

    /// Graded-lex ring from a comma separated list such as `"x1,x2,x3"`.
    pub fn parse_vars(csv: &str) -> Result<Ring> {
        let names: Vec<&str> = csv.split(',').map(str::trim).collect();
        PolyRing::new(&names, MonomialOrder::GrLex)
    }

    /// Ring for representation/witness polynomials in `r` variables:
    /// `T` when `r == 1`, otherwise `y1..yr`.
    pub fn witness_ring(r: usize) -> Ring {
        let names: Vec<String> = if r == 1 {
            vec!["T".to_string()]
        } else {
            (1..=r).map(|i| format!("y{i}")).collect()
        };
        PolyRing::new(&names, MonomialOrder::GrLex).expect("generated names are valid")
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn with_order(&self, order: MonomialOrder) -> Ring {
        Arc::new(PolyRing { names: self.names.clone(), order })
    }
}

pub fn same_ring(a: &Ring, b: &Ring) -> bool {
    Arc::ptr_eq(a, b) || a == b
}
