use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::poly::{integer_coprime, PolyQ};
use super::rational::{to_text, Rational};
use super::series::SeriesQ;
use crate::error::{Error, Result};

/// Quotient of two rational polynomials, defined at 0.
///
/// Stored canonically: coprime parts, both with integer coefficients of
/// joint content 1, and a positive constant term in the denominator.
/// Structural equality is therefore equality of functions.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunctionQ {
    num: PolyQ,
    den: PolyQ,
}

impl RationalFunctionQ {
    pub fn new(num: PolyQ, den: PolyQ) -> Result<Self> {
        if den.coeff(0).is_zero() {
            return Err(Error::domain("denominator vanishes at 0"));
        }
        Ok(Self::normalize(num, den))
    }

    /// Builds from integer coefficient vectors (low degree first), taking an
    /// all-integer route to the canonical form when the parts are coprime.
    pub fn from_integer_parts(mut num: Vec<BigInt>, mut den: Vec<BigInt>) -> Result<Self> {
        for v in [&mut num, &mut den] {
            while v.last().is_some_and(Zero::is_zero) {
                v.pop();
            }
        }
        if den.first().map_or(true, Zero::is_zero) {
            return Err(Error::domain("denominator vanishes at 0"));
        }
        let to_poly =
            |v: &[BigInt]| PolyQ::new(v.iter().cloned().map(Rational::from_integer).collect());
        if num.is_empty() || !integer_coprime(&num, &den) {
            return Self::new(to_poly(&num), to_poly(&den));
        }
        let mut content = num
            .iter()
            .chain(&den)
            .fold(BigInt::zero(), |acc, c| acc.gcd(c));
        if den[0].is_negative() {
            content = -content;
        }
        for c in num.iter_mut().chain(den.iter_mut()) {
            *c /= &content;
        }
        Ok(RationalFunctionQ {
            num: to_poly(&num),
            den: to_poly(&den),
        })
    }

    pub fn from_poly(p: PolyQ) -> Self {
        Self::normalize(p, PolyQ::one())
    }

    pub fn one() -> Self {
        Self::from_poly(PolyQ::one())
    }

    fn normalize(num: PolyQ, den: PolyQ) -> Self {
        let (num, den) = if num.is_zero() {
            (PolyQ::zero(), PolyQ::one())
        } else {
            let g = num.gcd(&den);
            (num.div_rem(&g).0, den.div_rem(&g).0)
        };
        // Common scale making both parts integral with joint content 1.
        let lcm = num.denominator_lcm().lcm(&den.denominator_lcm());
        let scale = Rational::from_integer(lcm);
        let (num, den) = (num.scale(&scale), den.scale(&scale));
        let content = num.integer_content().gcd(&den.integer_content());
        let mut factor = Rational::new(BigInt::from(1), content);
        if den.coeff(0).is_negative() {
            factor = -factor;
        }
        RationalFunctionQ {
            num: num.scale(&factor),
            den: den.scale(&factor),
        }
    }

    pub fn numerator(&self) -> &PolyQ {
        &self.num
    }

    pub fn denominator(&self) -> &PolyQ {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.degree() == Some(0)
    }

    pub fn eval(&self, x: &Rational) -> Result<Rational> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return Err(Error::Pole(to_text(x)));
        }
        Ok(self.num.eval(x) / d)
    }

    pub fn to_series(&self, order: usize) -> SeriesQ {
        SeriesQ::from_poly(&self.num, order)
            .div(&SeriesQ::from_poly(&self.den, order))
            .expect("canonical denominator is a unit")
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::normalize(&self.num * &other.num, &self.den * &other.den)
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Self::new(&self.num * &other.den, &self.den * &other.num)
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::normalize(
            &(&self.num * &other.den) + &(&other.num * &self.den),
            &self.den * &other.den,
        )
    }

    /// Equality checked by cross-multiplication, independent of normal form.
    pub fn same_function(&self, other: &Self) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }
}

impl fmt::Display for RationalFunctionQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_polynomial() {
            let c = self.den.coeff(0);
            return write!(f, "{}", self.num.scale(&c.recip()));
        }
        write!(f, "({}) / ({})", self.num, self.den)
    }
}

impl fmt::Debug for RationalFunctionQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalFunctionQ({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratcore::rational::{int, ratio};

    fn poly(c: &[(i64, i64)]) -> PolyQ {
        PolyQ::new(c.iter().map(|&(n, d)| ratio(n, d)).collect())
    }

    #[test]
    fn canonical_equality() {
        // (1 + x/2)(1 - x) / ((1 - x) * 3)  ==  (2 + x) / 6
        let a = RationalFunctionQ::new(
            &poly(&[(1, 1), (1, 2)]) * &poly(&[(1, 1), (-1, 1)]),
            &poly(&[(1, 1), (-1, 1)]) * &PolyQ::constant(int(3)),
        )
        .unwrap();
        let b = RationalFunctionQ::new(poly(&[(2, 1), (1, 1)]), PolyQ::constant(int(6))).unwrap();
        assert_eq!(a, b);
        assert!(a.same_function(&b));
        assert_eq!(a.numerator(), &PolyQ::from_integers([2, 1]));
        assert_eq!(a.denominator(), &PolyQ::from_integers([6]));
    }

    #[test]
    fn sign_convention() {
        let r = RationalFunctionQ::new(PolyQ::from_integers([1, 1]), PolyQ::from_integers([-2, 1]))
            .unwrap();
        assert!(r.denominator().coeff(0) > Rational::zero());
    }

    #[test]
    fn zero_constant_denominator_rejected() {
        assert!(RationalFunctionQ::new(PolyQ::one(), PolyQ::from_integers([0, 1])).is_err());
    }

    #[test]
    fn evaluation_and_poles() {
        let r = RationalFunctionQ::new(PolyQ::from_integers([2, 1]), PolyQ::from_integers([1, -1]))
            .unwrap();
        assert_eq!(r.eval(&int(3)).unwrap(), ratio(-5, 2));
        assert!(matches!(r.eval(&int(1)), Err(Error::Pole(_))));
    }
}
