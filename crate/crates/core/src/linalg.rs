//! Exact row reduction over Q.

use crate::arith::Rational;

/// Reduced row echelon form in place; returns the pivot column of each
/// nonzero row.
pub fn rref(rows: &mut Vec<Vec<Rational>>, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip().expect("nonzero pivot");
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x -= &(&f * y);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

/// Basis of `{ v : A v = 0 }` for `A` given by rows of length `ncols`.
/// Each basis vector has a 1 in one free column and zeros in the others.
pub fn nullspace(rows: &[Vec<Rational>], ncols: usize) -> Vec<Vec<Rational>> {
    let mut m: Vec<Vec<Rational>> = rows.iter().filter(|r| r.iter().any(|x| !x.is_zero())).cloned().collect();
    let pivots = rref(&mut m, ncols);
    let mut is_pivot = vec![false; ncols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    (0..ncols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![Rational::zero(); ncols];
            v[free] = Rational::one();
            for (row, &p) in m.iter().zip(&pivots) {
                v[p] = -row[free].clone();
            }
            v
        })
        .collect()
}

pub fn rank(rows: &[Vec<Rational>], ncols: usize) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m, ncols).len()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| Rational::from_i64(x)).collect()
    }

    fn apply(rows: &[Vec<Rational>], v: &[Rational]) -> Vec<Rational> {
        rows.iter()
            .map(|r| r.iter().zip(v).fold(Rational::zero(), |acc, (a, b)| &acc + &(a * b)))
            .collect()
    }

    #[test]
    fn kernel_of_small_matrices() {
        let a = vec![q(&[1, 2, 3]), q(&[2, 4, 6])];
        let ns = nullspace(&a, 3);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            assert!(apply(&a, v).iter().all(Rational::is_zero));
        }
        assert_eq!(rank(&a, 3), 1);

        let id = vec![q(&[1, 0]), q(&[0, 1])];
        assert!(nullspace(&id, 2).is_empty());
        assert_eq!(nullspace(&[], 2).len(), 2);
    }
}
