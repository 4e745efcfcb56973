use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::gauss::Gauss;
use super::poly::Poly;
use crate::error::{Error, Result};

/// How complex conjugation acts on the transcendental `t`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum ConjMode {
    /// `t̄ = t` (q real)
    #[default]
    Real,
    /// `t̄ = 1/t` (|q| = 1)
    Unimodular,
}

/// An element of Q(i)(t) in canonical form: the denominator is monic and
/// coprime to the numerator, and zero is `0/1`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Scalar {
    num: Poly,
    den: Poly,
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

/// Degree of `den` when it is exactly `t^k`.
fn monomial_power(den: &Poly) -> Option<usize> {
    if den.is_monomial() && den.leading().is_some_and(Gauss::is_one) {
        den.degree()
    } else {
        None
    }
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> Self {
        Scalar::from_gauss(Gauss::one())
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::from_gauss(Gauss::from_int(n))
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        Scalar::from_gauss(Gauss::from_ratio(n, d))
    }

    pub fn from_gauss(c: Gauss) -> Self {
        Scalar {
            num: Poly::constant(c),
            den: Poly::one(),
        }
    }

    pub fn from_poly(p: Poly) -> Self {
        Scalar {
            num: p,
            den: Poly::one(),
        }
    }

    pub fn i() -> Self {
        Scalar::from_gauss(Gauss::i())
    }

    pub fn t() -> Self {
        Scalar::from_poly(Poly::monomial(Gauss::one(), 1))
    }

    /// `q = t²`
    pub fn q() -> Self {
        Scalar::from_poly(Poly::monomial(Gauss::one(), 2))
    }

    /// `c · t^k` for any integer `k`.
    pub fn laurent_monomial(c: Gauss, k: i32) -> Self {
        if c.is_zero() {
            return Scalar::zero();
        }
        if k >= 0 {
            Scalar::from_poly(Poly::monomial(c, k as usize))
        } else {
            Scalar {
                num: Poly::constant(c),
                den: Poly::monomial(Gauss::one(), k.unsigned_abs() as usize),
            }
        }
    }

    /// Builds the canonical form of `num / den`.
    pub fn normalize(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Scalar::reduce(num, den))
    }

    fn reduce(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return Scalar::zero();
        }
        if den.is_constant() {
            let c = den.constant_term();
            let num = if c.is_one() {
                num
            } else {
                num.scale(&c.inv().unwrap())
            };
            return Scalar::from_poly(num);
        }
        if den.is_monomial() {
            let lead = den.leading().unwrap().clone();
            let k = den.degree().unwrap().min(num.valuation());
            let num = num.shift_down(k);
            let den = den.shift_down(k);
            let num = if lead.is_one() {
                num
            } else {
                num.scale(&lead.inv().unwrap())
            };
            return Scalar {
                num,
                den: den.monic(),
            };
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_rem(&g).0, den.div_rem(&g).0)
        };
        let lead = den.leading().unwrap().clone();
        if lead.is_one() {
            Scalar { num, den }
        } else {
            let inv = lead.inv().unwrap();
            Scalar {
                num: num.scale(&inv),
                den: den.scale(&inv),
            }
        }
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num.is_one()
    }

    /// The value when the scalar does not depend on `t`.
    pub fn as_constant(&self) -> Option<Gauss> {
        if self.den.is_one() && self.num.is_constant() {
            Some(self.num.constant_term())
        } else {
            None
        }
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        Some(Scalar::reduce(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Self> {
        let inv = other.inv().ok_or(Error::DivisionByZero)?;
        Ok(self * &inv)
    }

    /// Integer power; negative exponents need a nonzero base.
    pub fn pow(&self, e: i32) -> Result<Self> {
        let base = if e < 0 {
            self.inv().ok_or(Error::DivisionByZero)?
        } else {
            self.clone()
        };
        let e = e.unsigned_abs();
        Ok(Scalar {
            num: base.num.pow(e),
            den: base.den.pow(e),
        })
    }

    pub fn scale_gauss(&self, c: &Gauss) -> Self {
        if c.is_zero() {
            return Scalar::zero();
        }
        Scalar {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn conjugate(&self, mode: ConjMode) -> Self {
        let num = self.num.map_coeffs(Gauss::conj);
        let den = self.den.map_coeffs(Gauss::conj);
        match mode {
            ConjMode::Real => Scalar { num, den },
            ConjMode::Unimodular => {
                // p(1/t) = rev(p)(t) / t^deg p
                let dn = num.degree().unwrap_or(0);
                let dd = den.degree().unwrap_or(0);
                let rn = num.reversed(dn);
                let rd = den.reversed(dd);
                let (num, den) = if dn >= dd {
                    (rn, rd.shift_up(dn - dd))
                } else {
                    (rn.shift_up(dd - dn), rd)
                };
                Scalar::reduce(num, den)
            }
        }
    }

    /// Substitutes `t = value`.
    pub fn eval_at(&self, value: &Gauss) -> Result<Gauss> {
        let d = self.den.eval(value);
        if d.is_zero() {
            return Err(Error::EvaluationPole {
                value: value.to_string(),
            });
        }
        Ok(&self.num.eval(value) / &d)
    }

    /// Substitutes `t = value` and returns the result as a constant scalar.
    pub fn eval_scalar(&self, value: &Gauss) -> Result<Scalar> {
        self.eval_at(value).map(Scalar::from_gauss)
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            let num = self.num.add(&rhs.num);
            if self.den.is_one() {
                return Scalar::from_poly(num);
            }
            return Scalar::reduce(num, self.den.clone());
        }
        if let (Some(j), Some(k)) = (monomial_power(&self.den), monomial_power(&rhs.den)) {
            let m = j.max(k);
            let num = self.num.shift_up(m - j).add(&rhs.num.shift_up(m - k));
            return Scalar::reduce(num, Poly::monomial(Gauss::one(), m));
        }
        let num = self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den));
        Scalar::reduce(num, self.den.mul(&rhs.den))
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        if self.is_zero() || rhs.is_zero() {
            return Scalar::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return Scalar::from_poly(self.num.mul(&rhs.num));
        }
        if let (Some(_), Some(_)) = (monomial_power(&self.den), monomial_power(&rhs.den)) {
            return Scalar::reduce(self.num.mul(&rhs.num), self.den.mul(&rhs.den));
        }
        // cross-cancel before multiplying to keep degrees small
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let (a, d) = if g1.is_one() {
            (self.num.clone(), rhs.den.clone())
        } else {
            (self.num.div_rem(&g1).0, rhs.den.div_rem(&g1).0)
        };
        let (c, b) = if g2.is_one() {
            (rhs.num.clone(), self.den.clone())
        } else {
            (rhs.num.div_rem(&g2).0, self.den.div_rem(&g2).0)
        };
        let num = a.mul(&c);
        let den = b.mul(&d);
        let lead = den.leading().unwrap().clone();
        if lead.is_one() {
            Scalar { num, den }
        } else {
            let inv = lead.inv().unwrap();
            Scalar {
                num: num.scale(&inv),
                den: den.scale(&inv),
            }
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl From<Gauss> for Scalar {
    fn from(c: Gauss) -> Self {
        Scalar::from_gauss(c)
    }
}

fn is_single_term(p: &Poly) -> bool {
    p.coeffs().iter().filter(|c| !c.is_zero()).count() <= 1
}

impl fmt::Display for Scalar {
    /// Canonical text such as `(t^2-1)/(t+2)`; the DSL scalar parser reads it back.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        let num = if is_single_term(&self.num) {
            self.num.to_string()
        } else {
            format!("({})", self.num)
        };
        if is_single_term(&self.den) {
            write!(f, "{num}/{}", self.den)
        } else {
            write!(f, "{num}/({})", self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(cs: &[i64]) -> Poly {
        Poly::from_coeffs(cs.iter().map(|&c| Gauss::from_int(c)).collect())
    }

    #[test]
    fn normalize_examples() {
        let s = Scalar::normalize(poly(&[-1, 0, 1]), poly(&[-1, 1])).unwrap();
        assert_eq!(s, Scalar::from_poly(poly(&[1, 1])));
        let z = Scalar::normalize(Poly::zero(), poly(&[0, 0, 0, 1])).unwrap();
        assert_eq!(z, Scalar::zero());
        assert_eq!(z.denominator(), &Poly::one());
        let h = Scalar::normalize(poly(&[0, 2]), poly(&[4])).unwrap();
        assert_eq!(h, &Scalar::t() * &Scalar::from_ratio(1, 2));
        assert!(matches!(
            Scalar::normalize(poly(&[1]), Poly::zero()),
            Err(Error::DivisionByZero)
        ));
    }

    #[test]
    fn conjugation_examples() {
        let it = &Scalar::i() * &Scalar::t();
        assert_eq!(it.conjugate(ConjMode::Real), -&it);
        let sym = &Scalar::t() + &Scalar::t().inv().unwrap();
        assert_eq!(sym.conjugate(ConjMode::Unimodular), sym);
        let x = Scalar::normalize(
            poly(&[0, 0, 1]).scale(&(&Gauss::from_int(3) + &Gauss::i())),
            poly(&[-2, 1]),
        )
        .unwrap();
        for mode in [ConjMode::Real, ConjMode::Unimodular] {
            assert_eq!(x.conjugate(mode).conjugate(mode), x);
        }
    }

    #[test]
    fn evaluation_examples() {
        let x = Scalar::normalize(poly(&[1, 0, 1]), poly(&[0, 1])).unwrap();
        assert_eq!(x.eval_at(&Gauss::from_int(2)).unwrap(), Gauss::from_ratio(5, 2));
        let y = Scalar::from_poly(poly(&[1, 1]));
        assert!(y.eval_at(&Gauss::from_int(-1)).unwrap().is_zero());
        let p = Scalar::normalize(poly(&[1]), poly(&[-1, 1])).unwrap();
        assert!(matches!(
            p.eval_at(&Gauss::one()),
            Err(Error::EvaluationPole { .. })
        ));
    }

    #[test]
    fn display_forms() {
        let x = Scalar::normalize(poly(&[-1, 0, 1]), poly(&[2, 1])).unwrap();
        assert_eq!(x.to_string(), "(t^2-1)/(t+2)");
        assert_eq!(Scalar::t().inv().unwrap().to_string(), "1/t");
        assert_eq!(Scalar::zero().to_string(), "0");
    }
}
