//! Brute-force ground truth.
//!
//! Valuations of binomial coefficients are computed three independent
//! ways, rows of Pascal's triangle are scanned directly, and column
//! densities are sampled. Nothing here uses the generating-function
//! machinery except the final comparisons.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{digit_sum, ensure_prime};
use crate::error::{Error, Result};
use crate::ratcore::rational::{int, ratio, to_f64, to_text};
use crate::ratcore::Rational;
use crate::synth::{build_pj, BlockPolynomial};
use crate::theta::t_poly;
use crate::words::factor_count_of;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ValuationTriple {
    pub by_borrows: u32,
    pub by_digit_sums: u32,
    pub by_factorials: u32,
}

impl ValuationTriple {
    pub fn agree(&self) -> bool {
        self.by_borrows == self.by_digit_sums && self.by_digit_sums == self.by_factorials
    }
}

/// Number of `k ≥ 1` with `n mod p^k < t mod p^k`.
pub fn nu_by_borrows(n: u64, t: u64, p: u32) -> u32 {
    let (n, t, p) = (n as u128, t as u128, p as u128);
    let mut count = 0;
    let mut pk = p;
    while pk <= n {
        if n % pk < t % pk {
            count += 1;
        }
        pk *= p;
    }
    count
}

/// `(s_p(n-t) + s_p(t) - s_p(n)) / (p-1)`.
pub fn nu_by_digit_sums(n: u64, t: u64, p: u32) -> u32 {
    ((digit_sum(p, n - t) + digit_sum(p, t) - digit_sum(p, n)) / (p as u64 - 1)) as u32
}

/// `ν_p(m!) = Σ_{i≥1} ⌊m/p^i⌋`.
pub fn nu_factorial(m: u64, p: u32) -> u64 {
    let mut total = 0;
    let mut q = m;
    while q > 0 {
        q /= p as u64;
        total += q;
    }
    total
}

pub fn nu_by_factorials(n: u64, t: u64, p: u32) -> u32 {
    (nu_factorial(n, p) - nu_factorial(t, p) - nu_factorial(n - t, p)) as u32
}

/// `ν_p(C(n, t))` by factoring the integer `C(n, t)`; for spot checks with
/// small `n` only.
pub fn nu_by_direct_factorization(n: u64, t: u64, p: u32) -> Result<u32> {
    if t > n {
        return Err(Error::usage(format!("t = {t} exceeds n = {n}")));
    }
    let mut c = BigUint::one();
    for i in 0..t {
        c = c * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    let p = BigUint::from(p);
    let mut v = 0;
    while (&c % &p).is_zero() {
        c /= &p;
        v += 1;
    }
    Ok(v)
}

pub fn valuation(n: u64, t: u64, p: u32) -> Result<ValuationTriple> {
    ensure_prime(p)?;
    if t > n {
        return Err(Error::usage(format!("t = {t} exceeds n = {n}")));
    }
    Ok(ValuationTriple {
        by_borrows: nu_by_borrows(n, t, p),
        by_digit_sums: nu_by_digit_sums(n, t, p),
        by_factorials: nu_by_factorials(n, t, p),
    })
}

/// `θ_p(j, n)` for all `j`, by scanning row `n`.
pub fn row_counts_bruteforce(p: u32, n: u64) -> Result<Vec<u64>> {
    ensure_prime(p)?;
    let mut hist: Vec<u64> = Vec::new();
    for t in 0..=n {
        let v = nu_by_digit_sums(n, t, p) as usize;
        if hist.len() <= v {
            hist.resize(v + 1, 0);
        }
        hist[v] += 1;
    }
    Ok(hist)
}

#[derive(Debug, Clone, Serialize)]
pub struct ItemResult {
    pub index: u64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Counterexample {
    pub n: u64,
    pub t: Option<u64>,
    pub j: Option<usize>,
    pub expected: String,
    pub got: String,
}

/// Outcome of a scan with one pass/fail entry per `n` (or `t`).
#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub check: String,
    pub p: u32,
    pub range: u64,
    pub passed: bool,
    pub checked: u64,
    pub items: Vec<ItemResult>,
    pub first_counterexample: Option<Counterexample>,
}

impl VerifyReport {
    fn from_items(
        check: &str,
        p: u32,
        range: u64,
        results: Vec<(u64, u64, Option<Counterexample>)>,
    ) -> Self {
        let checked = results.iter().map(|r| r.1).sum();
        let first_counterexample = results.iter().find_map(|r| r.2.clone());
        let items: Vec<ItemResult> = results
            .iter()
            .map(|r| ItemResult {
                index: r.0,
                pass: r.2.is_none(),
            })
            .collect();
        VerifyReport {
            check: check.to_string(),
            p,
            range,
            passed: first_counterexample.is_none(),
            checked,
            items,
            first_counterexample,
        }
    }
}

/// Agreement of the three valuation routes for all `t ≤ n < n_max`.
pub fn verify_valuations(p: u32, n_max: u64) -> Result<VerifyReport> {
    ensure_prime(p)?;
    let results = (0..n_max)
        .into_par_iter()
        .map(|n| {
            let mut bad = None;
            for t in 0..=n {
                let v = valuation(n, t, p).expect("t <= n");
                if !v.agree() {
                    bad = Some(Counterexample {
                        n,
                        t: Some(t),
                        j: None,
                        expected: v.by_factorials.to_string(),
                        got: format!("{}/{}", v.by_borrows, v.by_digit_sums),
                    });
                    break;
                }
            }
            (n, n + 1, bad)
        })
        .collect();
    Ok(VerifyReport::from_items("valuations", p, n_max, results))
}

/// Row scans against the recurrence polynomial `T_n`.
pub fn verify_rows(p: u32, n_max: u64) -> Result<VerifyReport> {
    ensure_prime(p)?;
    let results = (0..n_max)
        .into_par_iter()
        .map(|n| {
            let brute = row_counts_bruteforce(p, n).expect("prime checked");
            let row = t_poly(n, p);
            let bad = (brute.as_slice() != row.coeffs()).then(|| Counterexample {
                n,
                t: None,
                j: None,
                expected: format!("{brute:?}"),
                got: format!("{:?}", row.coeffs()),
            });
            (n, 1, bad)
        })
        .collect();
    Ok(VerifyReport::from_items("rows", p, n_max, results))
}

/// Largest `ν_p(C(n, t))` over `n < n_max`.
pub fn max_row_degree(p: u32, n_max: u64) -> usize {
    if n_max <= 1 {
        return 0;
    }
    (1..n_max).map(|n| t_poly(n, p).degree()).max().unwrap_or(0)
}

/// `P_j(|n|_w) · θ_p(0, n) = θ_p(j, n)` for all `n < n_max` and every `j` up
/// to the largest row degree. The polynomials are passed in (index = `j`).
pub fn verify_polynomials_with(
    p: u32,
    n_max: u64,
    polys: &[BlockPolynomial],
) -> Result<VerifyReport> {
    ensure_prime(p)?;
    let results = (0..n_max)
        .into_par_iter()
        .map(|n| {
            let brute = row_counts_bruteforce(p, n).expect("prime checked");
            let theta0 = int(brute[0] as i64);
            let mut bad = None;
            for (j, poly) in polys.iter().enumerate() {
                let expect = int(brute.get(j).copied().unwrap_or(0) as i64);
                let got = poly.evaluate_at(n) * &theta0;
                if got != expect {
                    bad = Some(Counterexample {
                        n,
                        t: None,
                        j: Some(j),
                        expected: to_text(&expect),
                        got: to_text(&got),
                    });
                    break;
                }
            }
            (n, polys.len() as u64, bad)
        })
        .collect();
    Ok(VerifyReport::from_items("polynomials", p, n_max, results))
}

pub fn verify_polynomials(p: u32, n_max: u64) -> Result<VerifyReport> {
    ensure_prime(p)?;
    let degree = max_row_degree(p, n_max);
    let polys = (0..=degree)
        .map(|j| build_pj(p, j))
        .collect::<Result<Vec<_>>>()?;
    verify_polynomials_with(p, n_max, &polys)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ColumnDensityEstimate {
    pub t: u64,
    pub j: usize,
    pub m_max: u64,
    pub count: u64,
    #[serde(with = "crate::ratcore::rational::serde_text")]
    pub estimate: Rational,
}

/// `ν_2(C(m + t, m)) = s_2(m) + s_2(t) - s_2(m + t)`.
fn nu2_column(m: u64, t: u64) -> usize {
    (m.count_ones() + t.count_ones() - (m + t).count_ones()) as usize
}

/// Histogram of `ν_2(C(m + t, m))` over `m < m_max`.
pub fn column_histogram(t: u64, m_max: u64) -> Vec<u64> {
    const CHUNK: u64 = 1 << 14;
    let chunks = m_max.div_ceil(CHUNK);
    (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut h = vec![0u64; 66];
            for m in c * CHUNK..((c + 1) * CHUNK).min(m_max) {
                h[nu2_column(m, t)] += 1;
            }
            h
        })
        .reduce(
            || vec![0u64; 66],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        )
}

pub fn column_density_estimate(t: u64, j: usize, m_max: u64) -> Result<ColumnDensityEstimate> {
    if m_max == 0 {
        return Err(Error::usage("m_max must be positive"));
    }
    let count = column_histogram(t, m_max).get(j).copied().unwrap_or(0);
    Ok(ColumnDensityEstimate {
        t,
        j,
        m_max,
        count,
        estimate: Rational::new(count.into(), m_max.into()),
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct ColumnRow {
    pub j: usize,
    pub empirical: f64,
    /// `P_j(|t|_{w̄}) · 2^{-|t|_1}`
    #[serde(with = "crate::ratcore::rational::serde_text")]
    pub predicted: Rational,
    pub deviation: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct ColumnReport {
    pub t: u64,
    pub m_max: u64,
    /// Stated sampling tolerance, not an exactness claim.
    pub tolerance: f64,
    pub rows: Vec<ColumnRow>,
    pub max_deviation: f64,
    pub passed: bool,
}

pub const COLUMN_TOLERANCE: f64 = 5e-3;

/// Column prediction `ρ_2(j, t) = P_j((|t|_{w̄})_w) · 2^{-|t|_1}` where `w̄` is
/// the bitwise complement.
pub fn column_prediction(poly: &BlockPolynomial, t: u64) -> Result<Rational> {
    if poly.p != 2 {
        return Err(Error::domain("column densities are implemented for p = 2"));
    }
    let mut err = None;
    let value = poly.evaluate_with(|w| {
        w.complement()
            .and_then(|c| factor_count_of(t, &c))
            .unwrap_or_else(|e| {
                err = Some(e);
                0
            })
    });
    if let Some(e) = err {
        return Err(e);
    }
    Ok(value * ratio(1, 1i64 << t.count_ones()))
}

pub fn column_check_with(
    polys: &[BlockPolynomial],
    t: u64,
    m_max: u64,
    tolerance: f64,
) -> Result<ColumnReport> {
    if m_max == 0 {
        return Err(Error::usage("m_max must be positive"));
    }
    let hist = column_histogram(t, m_max);
    let mut rows = Vec::with_capacity(polys.len());
    for (j, poly) in polys.iter().enumerate() {
        let empirical = hist[j] as f64 / m_max as f64;
        let predicted = column_prediction(poly, t)?;
        let deviation = (empirical - to_f64(&predicted)).abs();
        rows.push(ColumnRow {
            j,
            empirical,
            predicted,
            deviation,
        });
    }
    let max_deviation = rows.iter().map(|r| r.deviation).fold(0.0, f64::max);
    Ok(ColumnReport {
        t,
        m_max,
        tolerance,
        rows,
        max_deviation,
        passed: max_deviation < tolerance,
    })
}

pub fn column_check(t: u64, j_max: usize, m_max: u64) -> Result<ColumnReport> {
    let polys = (0..=j_max)
        .map(|j| build_pj(2, j))
        .collect::<Result<Vec<_>>>()?;
    column_check_with(&polys, t, m_max, COLUMN_TOLERANCE)
}
