use std::fmt;

use num_rational::BigRational;
use num_traits::Signed;

use super::gauss::Gauss;
use super::scalar::Scalar;
use crate::error::{Error, Result};

/// An element `a + b·√r` of Q(i)(√r) for a fixed positive rational `r`
/// that is not a square. Conjugation fixes `√r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadExt {
    pub a: Gauss,
    pub b: Gauss,
}

impl QuadExt {
    pub fn constant(a: Gauss) -> Self {
        QuadExt { a, b: Gauss::zero() }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn conj(&self) -> Self {
        QuadExt {
            a: self.a.conj(),
            b: self.b.conj(),
        }
    }

    fn mul(&self, other: &QuadExt, r: &Gauss) -> QuadExt {
        QuadExt {
            a: &(&self.a * &other.a) + &(&(&self.b * &other.b) * r),
            b: &(&self.a * &other.b) + &(&self.b * &other.a),
        }
    }
}

/// A point at which `t` is specialised. `q = t²` is given; when `q` has a
/// square root in Q(i) the point is exact, otherwise `q` must be a positive
/// rational and values live in Q(i)(√q).
#[derive(Clone, Debug)]
pub struct SamplePoint {
    q: Gauss,
    t: Option<Gauss>,
}

impl SamplePoint {
    pub fn from_q(q: Gauss) -> Result<Self> {
        if q.is_zero() {
            return Err(Error::UnsupportedSample("q = 0".into()));
        }
        if let Some(t) = q.sqrt() {
            return Ok(SamplePoint { q, t: Some(t) });
        }
        if q.is_real() && q.re.is_positive() {
            return Ok(SamplePoint { q, t: None });
        }
        Err(Error::UnsupportedSample(format!(
            "q = {q} has no square root in Q(i) and is not a positive rational"
        )))
    }

    pub fn from_t(t: Gauss) -> Self {
        SamplePoint {
            q: &t * &t,
            t: Some(t),
        }
    }

    pub fn q(&self) -> &Gauss {
        &self.q
    }

    /// The exact value of `t`, when it lies in Q(i).
    pub fn t(&self) -> Option<&Gauss> {
        self.t.as_ref()
    }

    pub fn eval(&self, x: &Scalar) -> Result<QuadExt> {
        if let Some(t) = &self.t {
            return x.eval_at(t).map(QuadExt::constant);
        }
        let (na, nb) = x.numerator().eval_even_odd(&self.q);
        let (da, db) = x.denominator().eval_even_odd(&self.q);
        // (na + nb√r) / (da + db√r) = (na + nb√r)(da − db√r) / (da² − db² r)
        let norm = &(&da * &da) - &(&(&db * &db) * &self.q);
        let inv = norm.inv().ok_or_else(|| Error::EvaluationPole {
            value: format!("sqrt({})", self.q),
        })?;
        let prod = QuadExt { a: na, b: nb }.mul(&QuadExt { a: da, b: -&db }, &self.q);
        Ok(QuadExt {
            a: &prod.a * &inv,
            b: &prod.b * &inv,
        })
    }

    pub fn positive_real_q(&self) -> bool {
        self.q.is_real() && BigRational::is_positive(&self.q.re)
    }
}

impl fmt::Display for SamplePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.t {
            Some(t) => write!(f, "t={t}"),
            None => write!(f, "q={}", self.q),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn irrational_sample_evaluates_consistently() {
        let s = SamplePoint::from_q(Gauss::from_ratio(1, 2)).unwrap();
        assert!(s.t().is_none());
        // t² evaluates to exactly 1/2
        let v = s.eval(&Scalar::q()).unwrap();
        assert_eq!(v, QuadExt::constant(Gauss::from_ratio(1, 2)));
        // t · (1/t) = 1
        let x = s.eval(&Scalar::t()).unwrap();
        let y = s.eval(&Scalar::t().inv().unwrap()).unwrap();
        assert_eq!(x.mul(&y, s.q()), QuadExt::constant(Gauss::one()));
    }

    #[test]
    fn square_samples_are_exact() {
        let s = SamplePoint::from_q(Gauss::from_int(-4)).unwrap();
        assert_eq!(s.t(), Some(&(&Gauss::i() * &Gauss::from_int(2))));
        assert!(SamplePoint::from_q(Gauss::from_int(-2)).is_err());
    }
}
