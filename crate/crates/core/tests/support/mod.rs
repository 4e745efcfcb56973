#![allow(dead_code)]

use cqtkit::{Gauss, Scalar, Tensor};
use num_rational::BigRational;
use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRunner};

pub fn gauss() -> impl Strategy<Value = Gauss> {
    (-6i64..=6, 1i64..=4, -6i64..=6, 1i64..=4).prop_map(|(a, b, c, d)| {
        Gauss::new(BigRational::new(a.into(), b.into()), BigRational::new(c.into(), d.into()))
    })
}

/// `(c0 + c1 t + c2 t^2) / (1 + k t)` with small Gaussian-rational
/// coefficients; the denominator never vanishes at the sample points.
pub fn scalar() -> impl Strategy<Value = Scalar> {
    (gauss(), gauss(), gauss(), -2i64..=2).prop_map(|(c0, c1, c2, k)| {
        let t = Scalar::t();
        let num = &(&Scalar::from_gauss(c0) + &(&Scalar::from_gauss(c1) * &t))
            + &(&Scalar::from_gauss(c2) * &(&t * &t));
        let den = &Scalar::one() + &(&Scalar::from_int(k) * &t);
        num.checked_div(&den).expect("denominator is a nonzero polynomial")
    })
}

/// `a + b t` with small Gaussian-integer coefficients.
pub fn linear() -> impl Strategy<Value = Scalar> {
    (-3i64..=3, -2i64..=2, -2i64..=2).prop_map(|(a, b, c)| {
        &(&Scalar::from_int(a) + &(&Scalar::from_int(b) * &Scalar::i())) + &(&Scalar::from_int(c) * &Scalar::t())
    })
}

pub fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = Tensor> {
    proptest::collection::vec(linear(), rows * cols).prop_map(move |v| {
        Tensor::new(vec![rows], vec![cols], v).expect("sized entries")
    })
}

/// Matrices with small integer entries, so that singular ones come up.
pub fn int_matrix(rows: usize, cols: usize) -> impl Strategy<Value = Tensor> {
    proptest::collection::vec(-1i64..=1, rows * cols).prop_map(move |v| {
        Tensor::from_ints(vec![rows], vec![cols], &v).expect("sized entries")
    })
}

/// Points away from the poles `t = -1/k` of [`scalar`].
pub fn sample_points() -> Vec<Gauss> {
    vec![Gauss::from_int(3), &Gauss::from_int(2) + &Gauss::i(), Gauss::from_ratio(5, 7)]
}

fn ensure(ok: bool, what: &str) -> Result<(), TestCaseError> {
    if ok {
        Ok(())
    } else {
        Err(TestCaseError::fail(what.to_string()))
    }
}

/// The field operations commute with evaluation, which is computed in
/// plain `Q(i)` arithmetic.
pub fn field_axioms(a: &Scalar, b: &Scalar, c: &Scalar) -> Result<(), TestCaseError> {
    ensure(&(a + b) + c == a + &(b + c), "associative addition")?;
    ensure(&(a * b) * c == a * &(b * c), "associative multiplication")?;
    ensure(a * b == b * a && a + b == b + a, "commutativity")?;
    ensure(a * &(b + c) == &(a * b) + &(a * c), "distributivity")?;
    ensure((a + &-a).is_zero() && (a + &Scalar::zero()) == *a && (a * &Scalar::one()) == *a, "units")?;
    if let Some(ai) = a.inv() {
        ensure((a * &ai).is_one(), "inverse")?;
    } else {
        ensure(a.is_zero(), "only zero lacks an inverse")?;
    }
    for t in sample_points() {
        let (ea, eb) = (a.eval_at(&t).unwrap(), b.eval_at(&t).unwrap());
        ensure((a * b).eval_at(&t).unwrap() == &ea * &eb, "evaluation of a product")?;
        ensure((a + b).eval_at(&t).unwrap() == &ea + &eb, "evaluation of a sum")?;
    }
    Ok(())
}

/// Entry formula for `A ⊗ B`, written out independently of `Tensor::kron`.
pub fn kron_by_index(a: &Tensor, b: &Tensor) -> Vec<Scalar> {
    let (ar, ac, br, bc) = (a.rows(), a.cols(), b.rows(), b.cols());
    let mut out = Vec::new();
    for row in 0..ar * br {
        for col in 0..ac * bc {
            out.push(a.get(row / br, col / bc) * b.get(row % br, col % bc));
        }
    }
    out
}

pub fn kron_mixed_product(a: &Tensor, b: &Tensor, c: &Tensor, d: &Tensor) -> Result<(), TestCaseError> {
    ensure(a.kron(b).entries() == kron_by_index(a, b).as_slice(), "kron entries")?;
    let lhs = a.kron(b).compose(&c.kron(d)).unwrap();
    let rhs = a.compose(c).unwrap().kron(&b.compose(d).unwrap());
    ensure(lhs.entries() == rhs.entries(), "(A⊗B)(C⊗D) = AC⊗BD")
}

pub fn flip_naturality(a: &Tensor, b: &Tensor) -> Result<(), TestCaseError> {
    let (m, n, p, k) = (a.rows(), a.cols(), b.rows(), b.cols());
    let lhs = Tensor::flip(m, p).compose(&a.kron(b)).unwrap();
    let rhs = b.kron(a).compose(&Tensor::flip(n, k)).unwrap();
    ensure(lhs.entries() == rhs.entries(), "τ(A⊗B) = (B⊗A)τ")?;
    let tt = Tensor::flip(p, m).compose(&Tensor::flip(m, p)).unwrap();
    ensure(tt.is_identity(), "τ∘τ = 1")
}

/// 3×3 determinant by cofactor expansion, as an independent singularity test.
pub fn det3(a: &Tensor) -> Scalar {
    let g = |r: usize, c: usize| a.get(r, c).clone();
    let minor = |c1: usize, c2: usize| &(&g(1, c1) * &g(2, c2)) - &(&g(1, c2) * &g(2, c1));
    &(&(&g(0, 0) * &minor(1, 2)) - &(&g(0, 1) * &minor(0, 2))) + &(&g(0, 2) * &minor(0, 1))
}

pub fn inverse_exact(a: &Tensor) -> Result<(), TestCaseError> {
    let singular = det3(a).is_zero();
    ensure(singular == (a.rank() < 3), "rank agrees with the determinant")?;
    match a.inverse() {
        Ok(ai) => {
            ensure(!singular, "singular matrix inverted")?;
            ensure(a.compose(&ai).unwrap().is_identity(), "A A⁻¹ = 1")?;
            ensure(ai.compose(a).unwrap().is_identity(), "A⁻¹ A = 1")
        }
        Err(_) => ensure(singular, "invertible matrix rejected"),
    }
}

pub fn nullspace_exact(a: &Tensor) -> Result<(), TestCaseError> {
    let basis = a.nullspace();
    ensure(a.rank() + basis.len() == a.cols(), "rank + nullity = columns")?;
    for v in &basis {
        ensure(a.compose(v).unwrap().is_zero(), "A v = 0")?;
    }
    if !basis.is_empty() {
        let stacked = Tensor::from_fn(vec![basis.len()], vec![a.cols()], |r, c| basis[r].get(c, 0).clone());
        ensure(stacked.rank() == basis.len(), "independent basis")?;
    }
    Ok(())
}

/// Runs every property for `cases` random cases each; returns the first
/// failure message.
pub fn run_all(cases: u32) -> Result<(), String> {
    let mut runner = TestRunner::new(Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    });
    runner
        .run(&(scalar(), scalar(), scalar()), |(a, b, c)| field_axioms(&a, &b, &c))
        .map_err(|e| format!("field axioms: {e}"))?;
    runner
        .run(&(matrix(2, 3), matrix(2, 2), matrix(3, 2), matrix(2, 3)), |(a, b, c, d)| {
            kron_mixed_product(&a, &b, &c, &d)
        })
        .map_err(|e| format!("kron mixed product: {e}"))?;
    runner
        .run(&(matrix(2, 3), matrix(3, 2)), |(a, b)| flip_naturality(&a, &b))
        .map_err(|e| format!("flip naturality: {e}"))?;
    runner
        .run(&prop_oneof![int_matrix(3, 3), matrix(3, 3)], |a| inverse_exact(&a))
        .map_err(|e| format!("inverse: {e}"))?;
    runner
        .run(&int_matrix(3, 4), |a| nullspace_exact(&a))
        .map_err(|e| format!("nullspace: {e}"))?;
    Ok(())
}
