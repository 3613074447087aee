//! Truncated power series with exact rational coefficients.
//!
//! A series of order `O` holds exactly `O + 1` coefficients (degrees `0..=O`).
//! Binary operations require equal orders; there is no silent truncation.

use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::poly::PolyQ;
use super::rational::{self, int, Rational};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SeriesQ {
    coeffs: Vec<Rational>,
}

impl SeriesQ {
    pub fn zero(order: usize) -> Self {
        SeriesQ {
            coeffs: vec![Rational::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = Rational::one();
        s
    }

    /// `x` truncated at `order` (order 0 gives the zero series).
    pub fn x(order: usize) -> Self {
        let mut s = Self::zero(order);
        if order >= 1 {
            s.coeffs[1] = Rational::one();
        }
        s
    }

    /// Builds a series from the given coefficients, padding with zeros or
    /// truncating to exactly `order + 1` entries.
    pub fn from_coeffs(mut coeffs: Vec<Rational>, order: usize) -> Self {
        coeffs.resize(order + 1, Rational::zero());
        SeriesQ { coeffs }
    }

    pub fn from_poly(p: &PolyQ, order: usize) -> Self {
        Self::from_coeffs(p.coeffs().iter().take(order + 1).cloned().collect(), order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> &Rational {
        &self.coeffs[k]
    }

    pub fn into_coeffs(self) -> Vec<Rational> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Index of the first nonzero coefficient, if any.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    fn check_order(&self, other: &SeriesQ) -> Result<()> {
        if self.order() != other.order() {
            return Err(Error::OrderMismatch {
                left: self.order(),
                right: other.order(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &SeriesQ) -> Result<SeriesQ> {
        self.check_order(other)?;
        Ok(SeriesQ {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &SeriesQ) -> Result<SeriesQ> {
        self.check_order(other)?;
        Ok(SeriesQ {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    /// Cauchy product truncated to the common order.
    pub fn mul(&self, other: &SeriesQ) -> Result<SeriesQ> {
        self.check_order(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn mul_unchecked(&self, other: &SeriesQ) -> SeriesQ {
        let n = self.coeffs.len();
        let mut out = vec![Rational::zero(); n];
        let lo_a = self.valuation().unwrap_or(n);
        let lo_b = other.valuation().unwrap_or(n);
        for i in lo_a..n {
            let a = &self.coeffs[i];
            if a.is_zero() {
                continue;
            }
            for j in lo_b..n - i {
                let b = &other.coeffs[j];
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        SeriesQ { coeffs: out }
    }

    pub fn scale(&self, c: &Rational) -> SeriesQ {
        SeriesQ {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// `q` with `q * divisor = self` up to the order.
    pub fn div(&self, divisor: &SeriesQ) -> Result<SeriesQ> {
        self.check_order(divisor)?;
        let b0 = &divisor.coeffs[0];
        if b0.is_zero() {
            return Err(Error::NonUnit);
        }
        let inv0 = b0.recip();
        let n = self.coeffs.len();
        let mut q: Vec<Rational> = Vec::with_capacity(n);
        for k in 0..n {
            let mut acc = self.coeffs[k].clone();
            for i in 1..=k {
                let b = &divisor.coeffs[i];
                if !b.is_zero() {
                    acc -= b * &q[k - i];
                }
            }
            q.push(acc * &inv0);
        }
        Ok(SeriesQ { coeffs: q })
    }

    pub fn derivative(&self) -> SeriesQ {
        let order = self.order();
        let coeffs = (0..=order)
            .map(|k| {
                if k < order {
                    &self.coeffs[k + 1] * int(k as i64 + 1)
                } else {
                    Rational::zero()
                }
            })
            .collect();
        SeriesQ { coeffs }
    }

    /// Antiderivative with zero constant term; the top coefficient of the
    /// input is dropped so the order is preserved.
    pub fn integral(&self) -> SeriesQ {
        let order = self.order();
        let coeffs = (0..=order)
            .map(|k| {
                if k == 0 {
                    Rational::zero()
                } else {
                    &self.coeffs[k - 1] / int(k as i64)
                }
            })
            .collect();
        SeriesQ { coeffs }
    }

    /// Formal logarithm of a series with constant term 1, via `∫ f'/f`.
    pub fn log(&self) -> Result<SeriesQ> {
        if !self.coeffs[0].is_one() {
            return Err(Error::domain("log needs constant term 1"));
        }
        Ok(self.derivative().div(self)?.integral())
    }

    /// Formal exponential of a series with constant term 0, as `Σ g^k / k!`.
    pub fn exp(&self) -> Result<SeriesQ> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::domain("exp needs constant term 0"));
        }
        let order = self.order();
        let mut sum = SeriesQ::one(order);
        let mut term = SeriesQ::one(order);
        for k in 1..=order {
            term = term.mul_unchecked(self).scale(&int(k as i64).recip());
            if term.is_zero() {
                break;
            }
            sum = sum.add(&term)?;
        }
        Ok(sum)
    }

    /// `self^k` for `k >= 0`.
    pub fn pow(&self, k: u32) -> SeriesQ {
        let mut out = SeriesQ::one(self.order());
        for _ in 0..k {
            out = out.mul_unchecked(self);
        }
        out
    }
}

/// JSON array of `num/den` strings, degree 0 first.
impl Serialize for SeriesQ {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let text: Vec<String> = self.coeffs.iter().map(rational::to_text).collect();
        text.serialize(s)
    }
}

impl<'de> Deserialize<'de> for SeriesQ {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let text = Vec::<String>::deserialize(d)?;
        if text.is_empty() {
            return Err(serde::de::Error::custom(
                "a series has at least one coefficient",
            ));
        }
        let coeffs = text
            .iter()
            .map(|t| rational::parse(t))
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(serde::de::Error::custom)?;
        Ok(SeriesQ { coeffs })
    }
}
