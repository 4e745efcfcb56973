//! Leg-typed matrices over [`Scalar`].
//!
//! A tensor maps the space `C^{d_1} ⊗ … ⊗ C^{d_n}` of its domain legs to the
//! space of its codomain legs. Entries are stored densely in row-major order,
//! and a multi-index over several legs is flattened with the leftmost leg
//! varying slowest. Every index convention elsewhere in the crate is
//! expressed through this one rule.

mod linalg;

use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::scalars::{ConjMode, Gauss, Scalar};

pub use linalg::{express_in_span, row_echelon, SpanBasis};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Tensor {
    cod: Vec<usize>,
    dom: Vec<usize>,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

/// Flattens a multi-index over `legs`, leftmost leg slowest.
pub fn flatten_index(legs: &[usize], idx: &[usize]) -> usize {
    debug_assert_eq!(legs.len(), idx.len());
    legs.iter().zip(idx).fold(0, |acc, (&d, &i)| {
        debug_assert!(i < d);
        acc * d + i
    })
}

/// Inverse of [`flatten_index`].
pub fn unflatten_index(legs: &[usize], mut flat: usize) -> Vec<usize> {
    let mut idx = vec![0; legs.len()];
    for (slot, &d) in idx.iter_mut().zip(legs).rev() {
        *slot = flat % d;
        flat /= d;
    }
    idx
}

// Parallel multiplication only pays off once the work is nontrivial.
const PAR_THRESHOLD: usize = 4096;

impl Tensor {
    pub fn new(cod: Vec<usize>, dom: Vec<usize>, data: Vec<Scalar>) -> Result<Self> {
        if cod.contains(&0) || dom.contains(&0) {
            return Err(Error::Shape("leg dimensions must be positive".into()));
        }
        let rows: usize = cod.iter().product();
        let cols: usize = dom.iter().product();
        if data.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{} entries given for a {rows}x{cols} tensor",
                data.len()
            )));
        }
        Ok(Tensor {
            cod,
            dom,
            rows,
            cols,
            data,
        })
    }

    pub fn zeros(cod: Vec<usize>, dom: Vec<usize>) -> Self {
        let rows: usize = cod.iter().product();
        let cols: usize = dom.iter().product();
        Tensor {
            cod,
            dom,
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn from_fn(cod: Vec<usize>, dom: Vec<usize>, f: impl Fn(usize, usize) -> Scalar) -> Self {
        let mut t = Tensor::zeros(cod, dom);
        for r in 0..t.rows {
            for c in 0..t.cols {
                t.data[r * t.cols + c] = f(r, c);
            }
        }
        t
    }

    /// Identity on the tensor product of `legs`.
    pub fn identity(legs: &[usize]) -> Self {
        Tensor::from_fn(legs.to_vec(), legs.to_vec(), |r, c| {
            if r == c {
                Scalar::one()
            } else {
                Scalar::zero()
            }
        })
    }

    /// Identity on `C^n` as a single leg; `n = 1` gives the leg-free unit.
    pub fn id(n: usize) -> Self {
        if n == 1 {
            Tensor::identity(&[])
        } else {
            Tensor::identity(&[n])
        }
    }

    /// A 1×1 tensor with no legs.
    pub fn scalar(s: Scalar) -> Self {
        Tensor {
            cod: vec![],
            dom: vec![],
            rows: 1,
            cols: 1,
            data: vec![s],
        }
    }

    /// A column vector (empty domain).
    pub fn column(legs: Vec<usize>, entries: Vec<Scalar>) -> Result<Self> {
        Tensor::new(legs, vec![], entries)
    }

    /// A row vector (empty codomain).
    pub fn row(legs: Vec<usize>, entries: Vec<Scalar>) -> Result<Self> {
        Tensor::new(vec![], legs, entries)
    }

    /// Builds a tensor from small integers, row by row.
    pub fn from_ints(cod: Vec<usize>, dom: Vec<usize>, entries: &[i64]) -> Result<Self> {
        Tensor::new(cod, dom, entries.iter().map(|&n| Scalar::from_int(n)).collect())
    }

    pub fn codomain(&self) -> &[usize] {
        &self.cod
    }

    pub fn domain(&self) -> &[usize] {
        &self.dom
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.data[r * self.cols + c] = v;
    }

    /// Entry addressed by codomain and domain multi-indices.
    pub fn at(&self, row: &[usize], col: &[usize]) -> &Scalar {
        self.get(flatten_index(&self.cod, row), flatten_index(&self.dom, col))
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Same entries with new leg structure of equal flattened size.
    pub fn with_legs(&self, cod: Vec<usize>, dom: Vec<usize>) -> Result<Self> {
        let rows: usize = cod.iter().product();
        let cols: usize = dom.iter().product();
        if rows != self.rows || cols != self.cols {
            return Err(Error::Shape(format!(
                "cannot view a {}x{} tensor as {rows}x{cols}",
                self.rows, self.cols
            )));
        }
        Tensor::new(cod, dom, self.data.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|r| {
                (0..self.cols).all(|c| {
                    let v = self.get(r, c);
                    if r == c {
                        v.is_one()
                    } else {
                        v.is_zero()
                    }
                })
            })
    }

    /// First nonzero entry in row-major order, as (row multi-index ++ column
    /// multi-index, value).
    pub fn first_nonzero(&self) -> Option<(Vec<usize>, Scalar)> {
        let k = self.data.iter().position(|s| !s.is_zero())?;
        let (r, c) = (k / self.cols, k % self.cols);
        let mut idx = unflatten_index(&self.cod, r);
        idx.extend(unflatten_index(&self.dom, c));
        Some((idx, self.data[k].clone()))
    }

    fn zip_with(&self, other: &Tensor, f: impl Fn(&Scalar, &Scalar) -> Scalar) -> Result<Tensor> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Shape(format!(
                "cannot combine {}x{} with {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let data = self.data.iter().zip(&other.data).map(|(a, b)| f(a, b)).collect();
        Ok(Tensor {
            cod: self.cod.clone(),
            dom: self.dom.clone(),
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn add(&self, other: &Tensor) -> Result<Tensor> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Tensor) -> Result<Tensor> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn neg(&self) -> Tensor {
        self.map(|s| -s)
    }

    pub fn scale(&self, s: &Scalar) -> Tensor {
        if s.is_one() {
            return self.clone();
        }
        self.map(|x| x * s)
    }

    pub fn map(&self, f: impl Fn(&Scalar) -> Scalar) -> Tensor {
        Tensor {
            cod: self.cod.clone(),
            dom: self.dom.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn try_map(&self, f: impl Fn(&Scalar) -> Result<Scalar>) -> Result<Tensor> {
        let data = self.data.iter().map(f).collect::<Result<Vec<_>>>()?;
        Ok(Tensor {
            cod: self.cod.clone(),
            dom: self.dom.clone(),
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    /// Composition `self ∘ other`; flattened sizes must agree.
    pub fn compose(&self, other: &Tensor) -> Result<Tensor> {
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "cannot compose {}x{} after {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let n = other.cols;
        let row_of = |r: usize| -> Vec<Scalar> {
            let mut acc = vec![Scalar::zero(); n];
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for (c, slot) in acc.iter_mut().enumerate() {
                    let b = other.get(k, c);
                    if !b.is_zero() {
                        *slot = &*slot + &(a * b);
                    }
                }
            }
            acc
        };
        let rows: Vec<Vec<Scalar>> = if self.rows * self.cols * n >= PAR_THRESHOLD {
            (0..self.rows).into_par_iter().map(row_of).collect()
        } else {
            (0..self.rows).map(row_of).collect()
        };
        Ok(Tensor {
            cod: self.cod.clone(),
            dom: other.dom.clone(),
            rows: self.rows,
            cols: n,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Composes a chain left to right: `chain(&[a, b, c]) = a ∘ b ∘ c`.
    pub fn chain(parts: &[&Tensor]) -> Result<Tensor> {
        let (first, rest) = parts
            .split_first()
            .ok_or_else(|| Error::Shape("empty composition".into()))?;
        rest.iter().try_fold((*first).clone(), |acc, t| acc.compose(t))
    }

    /// Kronecker product with `(a ⊗ b)_{ij,kl} = a_{ik} b_{jl}`.
    pub fn kron(&self, other: &Tensor) -> Tensor {
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        let mut data = vec![Scalar::zero(); rows * cols];
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.rows {
                    for l in 0..other.cols {
                        let b = other.get(j, l);
                        if !b.is_zero() {
                            data[(i * other.rows + j) * cols + k * other.cols + l] = a * b;
                        }
                    }
                }
            }
        }
        let mut cod = self.cod.clone();
        cod.extend(&other.cod);
        let mut dom = self.dom.clone();
        dom.extend(&other.dom);
        Tensor {
            cod,
            dom,
            rows,
            cols,
            data,
        }
    }

    /// The flip `x ⊗ y ↦ y ⊗ x` from `C^{d1} ⊗ C^{d2}` to `C^{d2} ⊗ C^{d1}`.
    pub fn flip(d1: usize, d2: usize) -> Tensor {
        let mut t = Tensor::zeros(vec![d2, d1], vec![d1, d2]);
        for a in 0..d1 {
            for b in 0..d2 {
                t.set(b * d1 + a, a * d2 + b, Scalar::one());
            }
        }
        t.drop_unit_legs()
    }

    /// `1_left ⊗ op ⊗ 1_right`.
    pub fn embed(&self, left: usize, right: usize) -> Tensor {
        let mut t = self.clone();
        if left > 1 {
            t = Tensor::identity(&[left]).kron(&t);
        }
        if right > 1 {
            t = t.kron(&Tensor::identity(&[right]));
        }
        t
    }

    fn drop_unit_legs(mut self) -> Tensor {
        self.cod.retain(|&d| d != 1);
        self.dom.retain(|&d| d != 1);
        self
    }

    pub fn transpose(&self) -> Tensor {
        Tensor::from_fn(self.dom.clone(), self.cod.clone(), |r, c| self.get(c, r).clone())
    }

    /// Entrywise complex conjugate.
    pub fn conj(&self, mode: ConjMode) -> Tensor {
        self.map(|s| s.conjugate(mode))
    }

    pub fn adjoint(&self, mode: ConjMode) -> Tensor {
        self.transpose().conj(mode)
    }

    /// `τ ā τ` for a square tensor on `C^d ⊗ C^d`.
    pub fn tauconj(&self, mode: ConjMode) -> Result<Tensor> {
        let d = match (self.cod.as_slice(), self.dom.as_slice()) {
            ([a, b], [c, e]) if a == b && b == c && c == e => *a,
            _ => {
                return Err(Error::Shape(format!(
                    "tauconj needs legs [d,d]x[d,d], got {:?}x{:?}",
                    self.cod, self.dom
                )))
            }
        };
        let f = Tensor::flip(d, d);
        Tensor::chain(&[&f, &self.conj(mode), &f])
    }

    /// Substitutes `t = value` in every entry.
    pub fn eval_at(&self, value: &Gauss) -> Result<Tensor> {
        self.try_map(|s| s.eval_scalar(value))
    }

    pub fn inverse(&self) -> Result<Tensor> {
        linalg::inverse(self)
    }

    /// Basis of the right nullspace, each vector a column on the domain legs.
    pub fn nullspace(&self) -> Vec<Tensor> {
        linalg::nullspace(self)
    }

    pub fn rank(&self) -> usize {
        linalg::rank(self)
    }

    /// Integer power of a square tensor.
    pub fn pow(&self, e: i32) -> Result<Tensor> {
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut acc = Tensor::identity(&self.cod).with_legs(self.cod.clone(), self.dom.clone())?;
        for _ in 0..e.unsigned_abs() {
            acc = acc.compose(&base)?;
        }
        Ok(acc)
    }

    /// Column `c` as a vector on the codomain legs.
    pub fn column_at(&self, c: usize) -> Tensor {
        Tensor {
            cod: self.cod.clone(),
            dom: vec![],
            rows: self.rows,
            cols: 1,
            data: (0..self.rows).map(|r| self.get(r, c).clone()).collect(),
        }
    }
}

impl fmt::Display for Tensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.data.iter().map(ToString::to_string).collect();
        let width = cells.iter().map(|s| s.chars().count()).max().unwrap_or(1);
        writeln!(f, "{:?} <- {:?}", self.cod, self.dom)?;
        for r in 0..self.rows {
            write!(f, "[")?;
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{:>width$}", cells[r * self.cols + c])?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e_vec() -> Tensor {
        Tensor::column(
            vec![2, 2],
            vec![Scalar::zero(), Scalar::one(), -Scalar::q(), Scalar::zero()],
        )
        .unwrap()
    }

    #[test]
    fn flip_examples() {
        let f = Tensor::flip(2, 2);
        assert_eq!(f.compose(&f).unwrap(), Tensor::identity(&[2, 2]));
        assert_eq!(f.get(1, 2), &Scalar::one());
        assert_eq!(f.get(2, 1), &Scalar::one());
        let fe = f.compose(&e_vec()).unwrap();
        let expected = Tensor::column(
            vec![2, 2],
            vec![Scalar::zero(), -Scalar::q(), Scalar::one(), Scalar::zero()],
        )
        .unwrap();
        assert_eq!(fe, expected);
        assert_eq!(Tensor::flip(1, 3), Tensor::identity(&[3]));
    }

    #[test]
    fn kron_shapes() {
        assert_eq!(
            Tensor::identity(&[2]).kron(&Tensor::identity(&[2])),
            Tensor::identity(&[2, 2])
        );
        let ee = e_vec().kron(&e_vec());
        assert_eq!(ee.codomain(), &[2, 2, 2, 2]);
        assert!(ee.domain().is_empty());
    }

    #[test]
    fn inverse_of_e_matrix() {
        let e = Tensor::new(
            vec![2],
            vec![2],
            vec![Scalar::zero(), Scalar::one(), -Scalar::q(), Scalar::zero()],
        )
        .unwrap();
        let qi = Scalar::q().inv().unwrap();
        let expected =
            Tensor::new(vec![2], vec![2], vec![Scalar::zero(), -qi, Scalar::one(), Scalar::zero()])
                .unwrap();
        assert_eq!(e.inverse().unwrap(), expected);
        let rank_one = e_vec().compose(&e_vec().transpose()).unwrap();
        assert!(matches!(rank_one.inverse(), Err(Error::NotInvertible { .. })));
    }

    #[test]
    fn nullspace_dimensions() {
        let ep = Tensor::row(
            vec![2, 2],
            vec![Scalar::zero(), -Scalar::q().inv().unwrap(), Scalar::one(), Scalar::zero()],
        )
        .unwrap();
        assert_eq!(ep.nullspace().len(), 3);
        assert!(Tensor::identity(&[4]).nullspace().is_empty());
    }

    #[test]
    fn tauconj_examples() {
        let f = Tensor::flip(2, 2);
        assert_eq!(f.tauconj(ConjMode::Real).unwrap(), f);
        let ii = Tensor::identity(&[2, 2]).scale(&Scalar::i());
        assert_eq!(ii.tauconj(ConjMode::Real).unwrap(), ii.neg());
        assert!(Tensor::identity(&[4]).tauconj(ConjMode::Real).is_err());
    }

    #[test]
    fn index_roundtrip() {
        let legs = [2, 3, 4];
        for k in 0..24 {
            assert_eq!(flatten_index(&legs, &unflatten_index(&legs, k)), k);
        }
    }
}
