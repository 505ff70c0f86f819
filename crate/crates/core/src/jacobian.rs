//! Jacobian matrices, maximal minors and the differential gcd.

use std::collections::BTreeMap;

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::factor::gcd_all;
use crate::poly::{PolyMap, Polynomial};

pub type Matrix = Vec<Vec<Polynomial>>;

/// `r x n` matrix of partial derivatives `df_i/dx_j`.
pub fn jacobian_matrix(f: &PolyMap) -> Matrix {
    f.images()
        .iter()
        .map(|fi| (0..f.nvars()).map(|j| fi.partial_derivative(j).expect("index in range")).collect())
        .collect()
}

/// Determinant of a square polynomial matrix: cofactor expansion up to
/// size 3, fraction-free Bareiss elimination beyond.
pub fn determinant(m: &[Vec<Polynomial>]) -> Polynomial {
    let n = m.len();
    assert!(n > 0 && m.iter().all(|row| row.len() == n), "square matrix required");
    match n {
        1 => m[0][0].clone(),
        2 => &(&m[0][0] * &m[1][1]) - &(&m[0][1] * &m[1][0]),
        3 => {
            let minor = |a: usize, b: usize| &(&m[1][a] * &m[2][b]) - &(&m[1][b] * &m[2][a]);
            let t0 = &m[0][0] * &minor(1, 2);
            let t1 = &m[0][1] * &minor(0, 2);
            let t2 = &m[0][2] * &minor(0, 1);
            &(&t0 - &t1) + &t2
        }
        _ => bareiss(m),
    }
}

fn bareiss(m: &[Vec<Polynomial>]) -> Polynomial {
    let n = m.len();
    let ring = m[0][0].ring().clone();
    let mut a: Matrix = m.to_vec();
    let mut prev = Polynomial::one(&ring);
    let mut negate = false;
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    negate = !negate;
                }
                None => return Polynomial::zero(&ring),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = num.exact_div(&prev).expect("nonzero pivot").expect("Bareiss division is exact");
            }
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    if negate {
        -det
    } else {
        det
    }
}

/// All `r x r` minors, keyed by the sorted 0-based column subset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JacobianMinors {
    pub minors: BTreeMap<Vec<usize>, Polynomial>,
}

impl JacobianMinors {
    pub fn len(&self) -> usize {
        self.minors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.minors.is_empty()
    }

    pub fn get(&self, cols: &[usize]) -> Option<&Polynomial> {
        self.minors.get(cols)
    }

    pub fn all_zero(&self) -> bool {
        self.minors.values().all(Polynomial::is_zero)
    }

    pub fn values(&self) -> impl Iterator<Item = &Polynomial> {
        self.minors.values()
    }
}

/// Keys are rendered 1-based as `"1,3"`.
impl Serialize for JacobianMinors {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.minors.len()))?;
        for (k, v) in &self.minors {
            let key: Vec<String> = k.iter().map(|j| (j + 1).to_string()).collect();
            map.serialize_entry(&key.join(","), v)?;
        }
        map.end()
    }
}

/// Increasing `k`-subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
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

fn columns(m: &Matrix, cols: &[usize]) -> Matrix {
    m.iter().map(|row| cols.iter().map(|&j| row[j].clone()).collect()).collect()
}

pub fn jacobian_minors(f: &PolyMap) -> JacobianMinors {
    let jm = jacobian_matrix(f);
    let minors = subsets(f.nvars(), f.arity())
        .into_iter()
        .map(|cols| {
            let d = determinant(&columns(&jm, &cols));
            (cols, d)
        })
        .collect();
    JacobianMinors { minors }
}

/// Determinant of an endomorphism's Jacobian matrix.
pub fn jacobian_determinant(f: &PolyMap) -> Result<Polynomial> {
    if !f.is_endomorphism() {
        return Err(Error::NotSquare { r: f.arity(), n: f.nvars() });
    }
    Ok(determinant(&jacobian_matrix(f)))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DgcdResult {
    pub value: Polynomial,
    pub is_constant_nonzero: bool,
}

/// Normalized gcd of all maximal minors.
pub fn dgcd(f: &PolyMap) -> Result<DgcdResult> {
    dgcd_of(&jacobian_minors(f))
}

pub fn dgcd_of(minors: &JacobianMinors) -> Result<DgcdResult> {
    let items: Vec<Polynomial> = minors.values().cloned().collect();
    let value = gcd_all(&items).ok_or(Error::Dependent { minors: items.len() })?;
    let is_constant_nonzero = value.is_constant() && !value.is_zero();
    Ok(DgcdResult { value, is_constant_nonzero })
}

/// Jacobian condition: the determinant is a nonzero constant.
pub fn is_keller(f: &PolyMap) -> Result<bool> {
    let det = jacobian_determinant(f)?;
    Ok(det.is_constant() && !det.is_zero())
}

/// Jacobian rank criterion: some maximal minor is nonzero.
pub fn is_algebraically_independent(f: &PolyMap) -> bool {
    !jacobian_minors(f).all_zero()
}

/// The `(r+1) x (r+1)` minors of the Jacobian of `(f_1, ..., f_r, h)` on
/// the column set `cols`, expanded along the last row:
/// `sum_k (-1)^(r+k) * dh/dx_{cols[k]} * M(cols \ cols[k])`.
/// `fminors` must hold the `r x r` minors of `f`.
pub fn bordered_minor(fminors: &JacobianMinors, grad_h: &[Polynomial], cols: &[usize]) -> Polynomial {
    let r = cols.len() - 1;
    let ring = grad_h[0].ring();
    let mut acc = Polynomial::zero(ring);
    for k in 0..cols.len() {
        let dh = &grad_h[cols[k]];
        if dh.is_zero() {
            continue;
        }
        let rest: Vec<usize> = cols.iter().enumerate().filter(|(i, _)| *i != k).map(|(_, &c)| c).collect();
        let m = fminors.get(&rest).expect("r-subset present");
        if m.is_zero() {
            continue;
        }
        let t = dh * m;
        acc = if (r + k) % 2 == 0 { &acc + &t } else { &acc - &t };
    }
    acc
}

/// True iff `h` is algebraic over `Q[f_1..f_r]`, i.e. every bordered
/// `(r+1)`-minor of `(f, h)` vanishes. Requires `f` independent.
pub fn is_algebraic_over(h: &Polynomial, f: &PolyMap) -> Result<bool> {
    if !crate::poly::same_ring(h.ring(), f.target()) {
        return Err(Error::RingMismatch);
    }
    let fm = jacobian_minors(f);
    if fm.all_zero() {
        return Err(Error::Dependent { minors: fm.len() });
    }
    let n = f.nvars();
    let r = f.arity();
    if r == n {
        return Ok(true);
    }
    let grad: Vec<Polynomial> = (0..n).map(|j| h.partial_derivative(j).expect("index")).collect();
    Ok(subsets(n, r + 1).iter().all(|cols| bordered_minor(&fm, &grad, cols).is_zero()))
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

    fn strs(m: &Matrix) -> Vec<Vec<String>> {
        m.iter().map(|r| r.iter().map(|p| p.to_string()).collect()).collect()
    }

    #[test]
    fn matrices() {
        let f = map("x1,x2,x3", &["x1^2*x2", "x3"]);
        assert_eq!(strs(&jacobian_matrix(&f)), vec![vec!["2*x1*x2", "x1^2", "0"], vec!["0", "0", "1"]]);
        let id = map("a,b", &["a", "b"]);
        assert_eq!(strs(&jacobian_matrix(&id)), vec![vec!["1", "0"], vec!["0", "1"]]);
        let c = map("a,b", &["1", "1"]);
        assert!(jacobian_matrix(&c).iter().flatten().all(Polynomial::is_zero));
    }

    #[test]
    fn minors_and_dgcd() {
        let f = map("x1,x2,x3", &["x1^2*x2", "x3"]);
        let m = jacobian_minors(&f);
        assert_eq!(m.len(), 3);
        assert!(m.get(&[0, 1]).unwrap().is_zero());
        assert_eq!(m.get(&[0, 2]).unwrap().to_string(), "2*x1*x2");
        assert_eq!(m.get(&[1, 2]).unwrap().to_string(), "x1^2");
        let d = dgcd(&f).unwrap();
        assert_eq!(d.value.to_string(), "x1");
        assert!(!d.is_constant_nonzero);

        let d = dgcd(&map("x1,x2,x3", &["x1", "x2"])).unwrap();
        assert!(d.value.is_one() && d.is_constant_nonzero);
        let d = dgcd(&map("x", &["x^2"])).unwrap();
        assert_eq!(d.value.to_string(), "x");
        assert!(!d.is_constant_nonzero);

        assert!(jacobian_minors(&map("x,y", &["x+y", "x+y"])).get(&[0, 1]).unwrap().is_zero());
        assert!(matches!(dgcd(&map("x,y", &["x+y", "x+y"])), Err(Error::Dependent { minors: 1 })));
        assert_eq!(serde_json::to_string(&m).unwrap(), r#"{"1,2":"0","1,3":"2*x1*x2","2,3":"x1^2"}"#);
    }

    #[test]
    fn keller_and_independence() {
        assert!(is_keller(&map("x,y", &["x", "y"])).unwrap());
        assert!(is_keller(&map("x,y", &["x+y^2", "y"])).unwrap());
        assert!(!is_keller(&map("x,y", &["x^2", "y"])).unwrap());
        assert!(is_keller(&map("x,y,z", &["x", "y"])).is_err());
        assert!(is_algebraically_independent(&map("x,y", &["x+y", "x-y"])));
        assert!(!is_algebraically_independent(&map("x,y", &["x", "x^2"])));
        assert!(is_algebraically_independent(&map("x1,x2,x3", &["x1^2*x2", "x3"])));
    }

    #[test]
    fn algebraic_over() {
        let ring = PolyRing::parse_vars("x1,x2").unwrap();
        let f = map("x1,x2", &["x1+x2"]);
        assert!(is_algebraic_over(&parse_poly("(x1+x2)^2", &ring).unwrap(), &f).unwrap());
        assert!(!is_algebraic_over(&parse_poly("x1", &ring).unwrap(), &f).unwrap());

        let ring3 = PolyRing::parse_vars("x1,x2,x3").unwrap();
        let f = map("x1,x2,x3", &["x1", "x2"]);
        assert!(!is_algebraic_over(&parse_poly("x3", &ring3).unwrap(), &f).unwrap());
        let f = map("x1,x2,x3", &["x1^2*x2", "x3"]);
        assert!(!is_algebraic_over(&parse_poly("x1", &ring3).unwrap(), &f).unwrap());
        // expansion along the last row [1, 0, 0]: + (x1^2 * 1 - 0 * 0)
        let g = map("x1,x2,x3", &["x1^2*x2", "x3", "x1"]);
        assert_eq!(jacobian_determinant(&g).unwrap().to_string(), "x1^2");
        assert!(is_algebraic_over(&parse_poly("x1*x2", &ring3).unwrap(), &map("x1,x2,x3", &["x3", "x1", "x2"])).unwrap());
    }

    #[test]
    fn bareiss_matches_cofactor() {
        let ring = PolyRing::parse_vars("a,b,c").unwrap();
        let p = |s: &str| parse_poly(s, &ring).unwrap();
        let m = vec![
            vec![p("a"), p("b"), p("1"), p("0")],
            vec![p("0"), p("a+c"), p("b"), p("1")],
            vec![p("c^2"), p("0"), p("a"), p("b")],
            vec![p("1"), p("c"), p("0"), p("a*b")],
        ];
        // Laplace expansion along the first row as the oracle
        let mut expected = Polynomial::zero(&ring);
        for j in 0..4 {
            let sub: Matrix = m[1..].iter().map(|r| r.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, x)| x.clone()).collect()).collect();
            let t = &m[0][j] * &determinant(&sub);
            expected = if j % 2 == 0 { &expected + &t } else { &expected - &t };
        }
        assert_eq!(bareiss(&m), expected);
        let mut zero_pivot = m.clone();
        zero_pivot.swap(0, 1);
        assert_eq!(bareiss(&zero_pivot), -expected);
    }
}
