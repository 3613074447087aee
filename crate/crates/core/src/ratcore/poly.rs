use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::rational::{int, to_text, Rational};

/// Dense univariate polynomial over the rationals, index = degree.
///
/// The coefficient vector never ends in a zero; the zero polynomial is empty.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct PolyQ {
    coeffs: Vec<Rational>,
}

impl PolyQ {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        PolyQ { coeffs }
    }

    pub fn zero() -> Self {
        PolyQ { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// `c * x^k`
    pub fn monomial(c: Rational, k: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    pub fn from_integers<I: IntoIterator<Item = i64>>(it: I) -> Self {
        Self::new(it.into_iter().map(int).collect())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        PolyQ {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * int(k as i64))
                .collect(),
        )
    }

    /// `p(c x)`
    pub fn rescale_var(&self, c: &Rational) -> Self {
        let mut pow = Rational::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            out.push(a * &pow);
            pow *= c;
        }
        Self::new(out)
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(lc) => self.scale(&lc.recip()),
        }
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &PolyQ) -> (PolyQ, PolyQ) {
        let d_deg = divisor.degree().expect("division by the zero polynomial");
        let lc_inv = divisor.coeffs[d_deg].recip();
        let mut rem = self.coeffs.clone();
        if rem.len() <= d_deg {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![Rational::zero(); rem.len() - d_deg];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + d_deg] * &lc_inv;
            if c.is_zero() {
                continue;
            }
            for (i, d) in divisor.coeffs.iter().enumerate() {
                rem[k + i] -= &c * d;
            }
            quot[k] = c;
        }
        rem.truncate(d_deg);
        (Self::new(quot), Self::new(rem))
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &PolyQ) -> PolyQ {
        if !self.is_zero() && !other.is_zero() && gcd_degree_mod(self, other) == Some(0) {
            return PolyQ::one();
        }
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            // Keep coefficient growth in check.
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    /// Least common multiple of the coefficient denominators.
    pub fn denominator_lcm(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }

    /// Gcd of the numerators (coefficients assumed integral); zero for the zero polynomial.
    pub fn integer_content(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::zero(), |acc, c| acc.gcd(c.numer()))
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.denom().is_one())
    }

    pub fn pow(&self, k: u32) -> PolyQ {
        (0..k).fold(PolyQ::one(), |acc, _| &acc * self)
    }

    /// Square-free decomposition (Yun): returns `(factor, multiplicity)` pairs
    /// with pairwise coprime monic square-free factors of positive degree.
    pub fn square_free_decomposition(&self) -> Vec<(PolyQ, u32)> {
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return out;
        }
        let f = self.monic();
        let df = f.derivative();
        let a = f.gcd(&df);
        let mut b = f.div_rem(&a).0;
        let mut c = df.div_rem(&a).0;
        let mut d = &c - &b.derivative();
        let mut i = 1;
        loop {
            let g = b.gcd(&d);
            if g.degree().unwrap_or(0) > 0 {
                out.push((g.clone(), i));
            }
            b = b.div_rem(&g).0;
            if b.degree().unwrap_or(0) == 0 {
                break;
            }
            c = d.div_rem(&g).0;
            d = &c - &b.derivative();
            i += 1;
        }
        out
    }
}

/// Mersenne prime used for the modular coprimality test.
const MOD_Q: u64 = (1 << 61) - 1;

fn mul_mod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % MOD_Q as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64) -> u64 {
    let mut acc = 1;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a);
        }
        a = mul_mod(a, a);
        e >>= 1;
    }
    acc
}

fn inv_mod(a: u64) -> u64 {
    pow_mod(a, MOD_Q - 2)
}

fn bigint_mod(n: &BigInt) -> u64 {
    let q = BigInt::from(MOD_Q);
    let r = n.mod_floor(&q);
    r.iter_u64_digits().next().unwrap_or(0)
}

/// Image modulo `MOD_Q`, or `None` when a denominator or the leading
/// coefficient vanishes there.
fn reduce_mod(p: &PolyQ) -> Option<Vec<u64>> {
    let mut out = Vec::with_capacity(p.coeffs.len());
    for c in &p.coeffs {
        let den = bigint_mod(c.denom());
        if den == 0 {
            return None;
        }
        out.push(mul_mod(bigint_mod(c.numer()), inv_mod(den)));
    }
    (out.last() != Some(&0)).then_some(out)
}

/// Degree of `gcd(a mod q, b mod q)`. When both leading coefficients survive
/// the reduction this bounds the degree of the rational gcd from above.
fn gcd_degree_mod(a: &PolyQ, b: &PolyQ) -> Option<usize> {
    Some(gcd_degree_images(reduce_mod(a)?, reduce_mod(b)?))
}

/// True only if the integer polynomials (low degree first, no trailing
/// zeros) are certainly coprime over the rationals.
pub(crate) fn integer_coprime(a: &[BigInt], b: &[BigInt]) -> bool {
    let image = |p: &[BigInt]| -> Option<Vec<u64>> {
        let out: Vec<u64> = p.iter().map(bigint_mod).collect();
        (out.last().is_some_and(|&c| c != 0)).then_some(out)
    };
    match (image(a), image(b)) {
        (Some(a), Some(b)) => gcd_degree_images(a, b) == 0,
        _ => false,
    }
}

fn gcd_degree_images(mut a: Vec<u64>, mut b: Vec<u64>) -> usize {
    loop {
        while b.last() == Some(&0) {
            b.pop();
        }
        if b.is_empty() {
            return a.len() - 1;
        }
        if a.len() < b.len() {
            std::mem::swap(&mut a, &mut b);
            continue;
        }
        let inv = inv_mod(*b.last().unwrap());
        while a.len() >= b.len() {
            let c = mul_mod(*a.last().unwrap(), inv);
            let shift = a.len() - b.len();
            for (i, &d) in b.iter().enumerate() {
                let t = mul_mod(c, d);
                a[shift + i] = (a[shift + i] + MOD_Q - t) % MOD_Q;
            }
            a.pop();
            while a.last() == Some(&0) {
                a.pop();
            }
            if a.is_empty() {
                break;
            }
        }
        std::mem::swap(&mut a, &mut b);
    }
}

impl Add for &PolyQ {
    type Output = PolyQ;
    fn add(self, rhs: &PolyQ) -> PolyQ {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        PolyQ::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &PolyQ {
    type Output = PolyQ;
    fn sub(self, rhs: &PolyQ) -> PolyQ {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        PolyQ::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Neg for &PolyQ {
    type Output = PolyQ;
    fn neg(self) -> PolyQ {
        PolyQ {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &PolyQ {
    type Output = PolyQ;
    fn mul(self, rhs: &PolyQ) -> PolyQ {
        if self.is_zero() || rhs.is_zero() {
            return PolyQ::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        PolyQ::new(out)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for PolyQ {
            type Output = PolyQ;
            fn $m(self, rhs: PolyQ) -> PolyQ {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// Renders like `2 + x + 2x^2 + 4x^3`, ascending degree.
impl fmt::Display for PolyQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let a = c.abs();
            let coef = if k > 0 && a.is_one() {
                String::new()
            } else if k > 0 && !a.denom().is_one() {
                format!("{}*", to_text(&a))
            } else {
                to_text(&a)
            };
            match k {
                0 => write!(f, "{coef}")?,
                1 => write!(f, "{coef}x")?,
                _ => write!(f, "{coef}x^{k}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for PolyQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PolyQ({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratcore::rational::ratio;

    #[test]
    fn trailing_zeros_dropped() {
        let p = PolyQ::from_integers([1, 2, 0, 0]);
        assert_eq!(p.degree(), Some(1));
        assert!(PolyQ::from_integers([0, 0]).is_zero());
    }

    #[test]
    fn display_matches_row_polynomial_style() {
        assert_eq!(
            PolyQ::from_integers([2, 1, 2, 4]).to_string(),
            "2 + x + 2x^2 + 4x^3"
        );
        let p = PolyQ::new(vec![int(1), ratio(-1, 2), Rational::zero(), int(-3)]);
        assert_eq!(p.to_string(), "1 - 1/2*x - 3x^3");
    }

    #[test]
    fn division_and_gcd() {
        // (x+1)(x+2) and (x+1)(x-3)
        let a = PolyQ::from_integers([2, 3, 1]);
        let b = PolyQ::from_integers([-3, -2, 1]);
        assert_eq!(a.gcd(&b), PolyQ::from_integers([1, 1]));
        let (q, r) = a.div_rem(&PolyQ::from_integers([1, 1]));
        assert_eq!(q, PolyQ::from_integers([2, 1]));
        assert!(r.is_zero());
    }

    #[test]
    fn yun_decomposition() {
        // (x+1)^2 (x-2)^3 (x^2+1)
        let f = &(&PolyQ::from_integers([1, 1]).pow(2) * &PolyQ::from_integers([-2, 1]).pow(3))
            * &PolyQ::from_integers([1, 0, 1]);
        let mut parts = f.square_free_decomposition();
        parts.sort_by_key(|(_, m)| *m);
        assert_eq!(parts.len(), 3);
        assert_eq!(parts[0], (PolyQ::from_integers([1, 0, 1]), 1));
        assert_eq!(parts[1], (PolyQ::from_integers([1, 1]), 2));
        assert_eq!(parts[2], (PolyQ::from_integers([-2, 1]), 3));
    }
}
