use num_bigint::BigUint;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::arith::ensure_prime;
use crate::error::{Error, Result};
use crate::ratcore::rational::{int, ratio};
use crate::ratcore::{Rational, SeriesQ};

/// Constants of the term-count asymptotics.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AsymptoticConstants {
    pub p: u32,
    /// `(p-1)^2 / p`
    pub mu: f64,
    /// `Σ_{k≥2} 1 / (k (p^{k-1} - 1))`
    pub sigma: f64,
}

impl AsymptoticConstants {
    pub fn new(p: u32) -> Result<Self> {
        ensure_prime(p)?;
        let pf = p as f64;
        let mut sigma = 0.0;
        let mut k = 2;
        loop {
            let term = 1.0 / (k as f64 * (pf.powi(k - 1) - 1.0));
            sigma += term;
            if term < 1e-15 {
                break;
            }
            k += 1;
        }
        Ok(AsymptoticConstants {
            p,
            mu: (pf - 1.0).powi(2) / pf,
            sigma,
        })
    }

    /// `e^{μ(σ-1/2)} p μ^{1/4} / (2 (p-1) √π)`
    pub fn prefactor(&self) -> f64 {
        let pf = self.p as f64;
        (self.mu * (self.sigma - 0.5)).exp() * pf * self.mu.powf(0.25)
            / (2.0 * (pf - 1.0) * std::f64::consts::PI.sqrt())
    }
}

/// `B_j = [x^j] 1/(1-x) · exp(Σ_{k≥1} (1/k)(p-1)^2 x^k / (1 - p x^k))`
/// for `j = 0..=j_max`.
///
/// The exponential is the multiset construction over the `(p-1)^2 p^{k-1}`
/// admissible words of weight `k`, so the series equals
/// `1/(1-x) · Π_k (1 - x^k)^{-(p-1)^2 p^{k-1}}`, expanded here in exact
/// integers.
pub fn term_bound_series(p: u32, j_max: usize) -> Result<Vec<BigUint>> {
    ensure_prime(p)?;
    let mut a = vec![BigUint::zero(); j_max + 1];
    a[0] = BigUint::one();
    for k in 1..=j_max {
        let c = BigUint::from((p - 1) * (p - 1)) * BigUint::from(p).pow(k as u32 - 1);
        // (1 - x^k)^{-c} = Σ_m C(c+m-1, m) x^{km}; multiply in place, high
        // degrees first.
        let mut binom = vec![BigUint::one()];
        for m in 1..=j_max / k {
            let next = &binom[m - 1] * (&c + BigUint::from(m - 1)) / BigUint::from(m);
            binom.push(next);
        }
        for i in (0..=j_max).rev() {
            let mut add = BigUint::zero();
            for m in 1..=i / k {
                if !a[i - k * m].is_zero() {
                    add += &a[i - k * m] * &binom[m];
                }
            }
            a[i] += add;
        }
    }
    let mut acc = BigUint::zero();
    Ok(a.into_iter()
        .map(|v| {
            acc += v;
            acc.clone()
        })
        .collect())
}

/// The same bound through the exact rational exponential; kept as an
/// independent route for cross-checking.
pub fn term_bound_series_exp(p: u32, j_max: usize) -> Result<Vec<BigUint>> {
    ensure_prime(p)?;
    let pp = int(p as i64);
    let sq = int(((p - 1) * (p - 1)) as i64);
    let mut inner = vec![Rational::zero(); j_max + 1];
    for k in 1..=j_max {
        // (1/k)(p-1)^2 Σ_{m≥0} p^m x^{k(m+1)}
        let mut c = &sq * ratio(1, k as i64);
        let mut e = k;
        while e <= j_max {
            inner[e] += &c;
            c *= &pp;
            e += k;
        }
    }
    let g = SeriesQ::from_coeffs(inner, j_max).exp()?;
    let mut out = Vec::with_capacity(j_max + 1);
    let mut acc = Rational::zero();
    for c in g.coeffs() {
        acc += c;
        if !acc.is_integer() || acc.is_negative() {
            return Err(Error::Numeric(format!(
                "non-integral bound coefficient {acc}"
            )));
        }
        out.push(acc.to_integer().to_biguint().expect("nonnegative"));
    }
    Ok(out)
}

/// Leading-order estimate of `B_j`:
/// `e^{μ(σ-1/2)} p μ^{1/4} / (2 (p-1) √π) · e^{2√(μj)} p^j / j^{3/4}`.
///
/// Near `x = 1/p` the bound's generating function behaves like
/// `S · exp(μ/(1-px))` with `S = e^{μ(σ-1)} p/(p-1)`, and
/// `[z^j] exp(μ/(1-z)) ~ e^{μ/2} μ^{1/4} e^{2√(μj)} / (2√π j^{3/4})`.
pub fn term_bound_asymptotic(p: u32, j: usize) -> Result<f64> {
    if j == 0 {
        return Err(Error::usage("the asymptotic bound needs j >= 1"));
    }
    let c = AsymptoticConstants::new(p)?;
    let (pf, jf) = (p as f64, j as f64);
    let log_growth = 2.0 * (c.mu * jf).sqrt() + jf * pf.ln() - 0.75 * jf.ln();
    Ok(c.prefactor() * log_growth.exp())
}
