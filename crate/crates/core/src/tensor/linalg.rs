use crate::error::{Error, Result};
use crate::scalars::Scalar;

use super::Tensor;

/// Reduces `rows` (each of length `ncols`) to reduced row echelon form in
/// place and returns the pivot columns. Zero rows are dropped.
pub fn row_echelon(rows: &mut Vec<Vec<Scalar>>, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&k| !rows[k][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].inv().unwrap();
        if !inv.is_one() {
            for x in rows[r].iter_mut() {
                if !x.is_zero() {
                    *x = &*x * &inv;
                }
            }
        }
        let pivot_row = rows[r].clone();
        for (k, row) in rows.iter_mut().enumerate() {
            if k == r || row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x = &*x - &(&factor * y);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

fn rows_of(a: &Tensor) -> Vec<Vec<Scalar>> {
    (0..a.rows())
        .map(|r| (0..a.cols()).map(|c| a.get(r, c).clone()).collect())
        .collect()
}

pub(super) fn rank(a: &Tensor) -> usize {
    let mut rows = rows_of(a);
    row_echelon(&mut rows, a.cols()).len()
}

fn null_vectors(rows: &[Vec<Scalar>], pivots: &[usize], ncols: usize) -> Vec<Vec<Scalar>> {
    let free = (0..ncols).filter(|c| !pivots.contains(c));
    free.map(|f| {
        let mut v = vec![Scalar::zero(); ncols];
        v[f] = Scalar::one();
        for (row, &p) in rows.iter().zip(pivots) {
            v[p] = -&row[f];
        }
        v
    })
    .collect()
}

pub(super) fn nullspace(a: &Tensor) -> Vec<Tensor> {
    let mut rows = rows_of(a);
    let pivots = row_echelon(&mut rows, a.cols());
    null_vectors(&rows, &pivots, a.cols())
        .into_iter()
        .map(|v| Tensor::new(a.domain().to_vec(), vec![], v).unwrap())
        .collect()
}

pub(super) fn inverse(a: &Tensor) -> Result<Tensor> {
    if !a.is_square() {
        return Err(Error::Shape(format!(
            "cannot invert a {}x{} tensor",
            a.rows(),
            a.cols()
        )));
    }
    let n = a.rows();
    let mut rows: Vec<Vec<Scalar>> = rows_of(a)
        .into_iter()
        .enumerate()
        .map(|(r, mut row)| {
            row.extend((0..n).map(|c| if c == r { Scalar::one() } else { Scalar::zero() }));
            row
        })
        .collect();
    let pivots = row_echelon(&mut rows, 2 * n);
    if pivots.len() < n || pivots[n - 1] >= n {
        let witness = nullspace(a)
            .into_iter()
            .next()
            .map(|v| {
                let parts: Vec<String> = v.entries().iter().map(ToString::to_string).collect();
                format!("({})", parts.join(", "))
            })
            .unwrap_or_default();
        return Err(Error::NotInvertible { witness });
    }
    let data = rows.into_iter().flat_map(|row| row.into_iter().skip(n)).collect();
    Tensor::new(a.domain().to_vec(), a.codomain().to_vec(), data)
}

/// Coefficients expressing `target` as a combination of `basis`, compared
/// by flattened entries, or `None` when it lies outside their span.
pub fn express_in_span(basis: &[Tensor], target: &Tensor) -> Option<Vec<Scalar>> {
    let len = target.entries().len();
    if basis.iter().any(|b| b.entries().len() != len) {
        return None;
    }
    let k = basis.len();
    let mut rows: Vec<Vec<Scalar>> = (0..len)
        .map(|e| {
            let mut row: Vec<Scalar> = basis.iter().map(|b| b.entries()[e].clone()).collect();
            row.push(target.entries()[e].clone());
            row
        })
        .filter(|row| row.iter().any(|x| !x.is_zero()))
        .collect();
    let pivots = row_echelon(&mut rows, k + 1);
    if pivots.contains(&k) {
        return None;
    }
    let mut coeffs = vec![Scalar::zero(); k];
    for (row, &p) in rows.iter().zip(&pivots) {
        coeffs[p] = row[k].clone();
    }
    Some(coeffs)
}

/// An incrementally grown basis of a space of flattened vectors, kept in
/// reduced echelon form so membership is a single reduction pass.
#[derive(Clone, Debug, Default)]
pub struct SpanBasis {
    rows: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl SpanBasis {
    pub fn new() -> Self {
        SpanBasis::default()
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        let mut v = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let f = v[p].clone();
            for (x, y) in v.iter_mut().zip(row) {
                if !y.is_zero() {
                    *x = &*x - &(&f * y);
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.reduce(v).iter().all(Scalar::is_zero)
    }

    /// Adds `v`; returns false when it was already in the span.
    pub fn insert(&mut self, v: &[Scalar]) -> bool {
        let mut r = self.reduce(v);
        let Some(p) = r.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = r[p].inv().unwrap();
        for x in r.iter_mut() {
            if !x.is_zero() {
                *x = &*x * &inv;
            }
        }
        for row in self.rows.iter_mut() {
            if row[p].is_zero() {
                continue;
            }
            let f = row[p].clone();
            for (x, y) in row.iter_mut().zip(&r) {
                if !y.is_zero() {
                    *x = &*x - &(&f * y);
                }
            }
        }
        self.rows.push(r);
        self.pivots.push(p);
        true
    }

    pub fn vectors(&self) -> &[Vec<Scalar>] {
        &self.rows
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn span_membership() {
        let mut s = SpanBasis::new();
        let v = |xs: &[i64]| xs.iter().map(|&x| Scalar::from_int(x)).collect::<Vec<_>>();
        assert!(s.insert(&v(&[1, 2, 0])));
        assert!(s.insert(&v(&[0, 1, 1])));
        assert!(!s.insert(&v(&[1, 3, 1])));
        assert!(s.contains(&v(&[2, 5, 1])));
        assert!(!s.contains(&v(&[0, 0, 1])));
        assert_eq!(s.dim(), 2);
    }

    #[test]
    fn span_coefficients() {
        let b1 = Tensor::from_ints(vec![2], vec![], &[1, 0]).unwrap();
        let b2 = Tensor::from_ints(vec![2], vec![], &[1, 1]).unwrap();
        let t = Tensor::from_ints(vec![2], vec![], &[3, 2]).unwrap();
        let c = express_in_span(&[b1.clone(), b2.clone()], &t).unwrap();
        assert_eq!(c, vec![Scalar::from_int(1), Scalar::from_int(2)]);
        assert!(express_in_span(&[b1], &t).is_none());
    }
}
