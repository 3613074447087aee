use std::fmt;

use num_complex::Complex64;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use super::roots::{
    factored_roots, poly_roots, ser_complex, simple_roots, sort_roots, FactorRoots, Root,
};
use crate::error::{Error, Result};
use crate::ratcore::rational::{factorial, int, ratio, to_f64, to_text};
use crate::ratcore::{PolyQ, Rational, RationalFunctionQ};
use crate::synth::{r_w_quotient, Monomial};
use crate::theta::tbar_word;
use crate::words::{enumerate_admissible, Word};

pub const DEFAULT_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Classification {
    Convergent,
    Divergent,
    Boundary,
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Classification::Convergent => "convergent",
            Classification::Divergent => "divergent",
            Classification::Boundary => "boundary",
        })
    }
}

/// Zeros and poles of `r_w` with the resulting coefficient behaviour.
///
/// Writing `r_w = Π (1 - ξ_i x)^{ε_i}`, zeros carry `ε_i > 0` and poles
/// `ε_i < 0`; `ξ_i` is the reciprocal of the root.
#[derive(Debug, Clone, Serialize)]
pub struct RootProfile {
    pub word: Word,
    pub zeros: Vec<Root>,
    pub poles: Vec<Root>,
    pub numerator_degree: usize,
    pub denominator_degree: usize,
    pub max_xi_modulus: f64,
    /// Root of smallest modulus; `None` when `r_w = 1`.
    #[serde(serialize_with = "ser_opt_complex")]
    pub dominant_singularity: Option<Complex64>,
    pub classification: Classification,
    /// Set when any `|ξ_i|` lies within the tolerance of 1.
    pub boundary_flag: bool,
    /// For boundary words: whether every near-unit `|ξ_i|` was certified
    /// to equal 1 exactly.
    pub unit_circle_certified: Option<bool>,
    #[serde(with = "crate::ratcore::rational::serde_text")]
    pub r_at_one: Rational,
    /// `log r_w(1)`, attached when `|ξ_0| ≤ 1` is established.
    pub coefficient_sum: Option<f64>,
}

fn ser_opt_complex<S: serde::Serializer>(
    z: &Option<Complex64>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match z {
        Some(z) => ser_complex(z, s),
        None => s.serialize_none(),
    }
}

impl RootProfile {
    pub fn is_complete(&self) -> bool {
        let total = |r: &[Root]| r.iter().map(|r| r.multiplicity as usize).sum::<usize>();
        total(&self.zeros) == self.numerator_degree && total(&self.poles) == self.denominator_degree
    }

    /// `(ξ_i, ε_i)` pairs.
    pub fn xi(&self) -> Vec<(Complex64, i64)> {
        let zeros = self
            .zeros
            .iter()
            .map(|r| (r.x.inv(), r.multiplicity as i64));
        let poles = self
            .poles
            .iter()
            .map(|r| (r.x.inv(), -(r.multiplicity as i64)));
        zeros.chain(poles).collect()
    }

    pub fn csv_row(&self) -> String {
        let dom = self
            .dominant_singularity
            .map(format_complex)
            .unwrap_or_default();
        let sum = self
            .coefficient_sum
            .map(|s| format!("{s:.15}"))
            .unwrap_or_default();
        format!(
            "{},{},{:.12},{},{}",
            self.word, self.classification, self.max_xi_modulus, dom, sum
        )
    }
}

pub const CSV_HEADER: &str = "word,class,max_xi_modulus,dominant_singularity,coefficient_sum";

pub fn classification_csv(profiles: &[RootProfile]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for p in profiles {
        out.push_str(&p.csv_row());
        out.push('\n');
    }
    out
}

pub fn format_complex(z: Complex64) -> String {
    if z.im.abs() < 1e-12 {
        format!("{:.12}", z.re)
    } else {
        format!("{:.12}{:+.12}i", z.re, z.im)
    }
}

/// `[x^n] log r(x) = -(1/n) Σ ε_i ξ_i^n`.
pub fn log_rat_coeff_exact(profile: &RootProfile, n: usize) -> Result<Complex64> {
    if n == 0 {
        return Err(Error::usage("coefficient index must be at least 1"));
    }
    if !profile.is_complete() {
        return Err(Error::usage(format!(
            "root profile of {} is incomplete",
            profile.word
        )));
    }
    let sum: Complex64 = profile
        .xi()
        .iter()
        .map(|&(xi, eps)| xi.powu(n as u32) * eps as f64)
        .sum();
    Ok(-sum / n as f64)
}

/// Locates the zeros and poles of the canonical `r_w` and classifies the
/// coefficient sequence of `log r_w`.
pub fn classify_word(w: &Word, tol: f64) -> Result<RootProfile> {
    if !w.is_admissible() {
        return Err(Error::domain(format!("{w} is not an admissible word")));
    }
    let r = r_w_quotient(w)?;
    let num = factored_roots(r.numerator())?;
    let den = factored_roots(r.denominator())?;
    let zeros = flatten(&num);
    let poles = flatten(&den);
    let all = || zeros.iter().chain(poles.iter());
    let max_xi_modulus = all().map(|r| 1.0 / r.x.norm()).fold(0.0, f64::max);
    let boundary_flag = all().any(|r| (1.0 / r.x.norm() - 1.0).abs() <= tol);
    let dominant_singularity = dominant(all());
    let classification = if max_xi_modulus < 1.0 - tol {
        Classification::Convergent
    } else if max_xi_modulus > 1.0 + tol {
        Classification::Divergent
    } else {
        Classification::Boundary
    };
    let unit_circle_certified = if classification == Classification::Boundary {
        let mut ok = true;
        for f in num.iter().chain(den.iter()) {
            ok &= unit_circle_certified(f, tol)?;
        }
        Some(ok)
    } else {
        None
    };
    let r_at_one = r.eval(&Rational::one())?;
    let case_a =
        classification == Classification::Convergent || unit_circle_certified == Some(true);
    let coefficient_sum = case_a.then(|| to_f64(&r_at_one).ln());
    Ok(RootProfile {
        word: w.clone(),
        numerator_degree: r.numerator().degree().unwrap_or(0),
        denominator_degree: r.denominator().degree().unwrap_or(0),
        zeros,
        poles,
        max_xi_modulus,
        dominant_singularity,
        classification,
        boundary_flag,
        unit_circle_certified,
        r_at_one,
        coefficient_sum,
    })
}

fn flatten(factors: &[FactorRoots]) -> Vec<Root> {
    let mut out: Vec<Root> = factors
        .iter()
        .flat_map(|f| {
            f.roots.iter().map(|&x| Root {
                x,
                multiplicity: f.multiplicity,
            })
        })
        .collect();
    sort_roots(&mut out);
    out
}

/// Exact follow-up for roots found numerically on the unit circle.
///
/// For a real square-free factor `f`, a root `z` with `|z| = 1` satisfies
/// `1/z̄ = z`, so it is a root of `g = gcd(f, f*)` with `f*` the reciprocal
/// polynomial. Conversely, if `z` is a root of `g` then so is `1/z̄`; when no
/// other root of `f` lies near `z`, the two must coincide and `|z| = 1`
/// holds exactly. Returns `false` when the argument does not go through.
pub fn unit_circle_certified(f: &FactorRoots, tol: f64) -> Result<bool> {
    let near: Vec<Complex64> = f
        .roots
        .iter()
        .copied()
        .filter(|z| (z.norm() - 1.0).abs() <= tol)
        .collect();
    if near.is_empty() {
        return Ok(true);
    }
    let mut rev = f.factor.coeffs().to_vec();
    rev.reverse();
    let g = f.factor.gcd(&PolyQ::new(rev));
    if g.degree().unwrap_or(0) == 0 {
        return Ok(false);
    }
    let g_roots = simple_roots(&g)?;
    for z in near {
        if !g_roots.iter().any(|r| (r - z).norm() < 1e-8) {
            return Ok(false);
        }
        let separation = f
            .roots
            .iter()
            .filter(|&&r| r != z)
            .map(|r| (r - z).norm())
            .fold(f64::INFINITY, f64::min);
        // 1/z̄ sits at distance ||z|^2 - 1| / |z| from z; it must be z itself
        // unless another root is that close.
        let gap = (z.norm_sqr() - 1.0).abs() / z.norm();
        if separation <= 1e3 * (gap + 1e-12) || gap > 1e-9 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Smallest-modulus root; ties prefer the real root, then nonnegative
/// imaginary part.
fn dominant<'a>(roots: impl Iterator<Item = &'a Root>) -> Option<Complex64> {
    let mut best: Option<Complex64> = None;
    for r in roots {
        let z = r.x;
        best = Some(match best {
            None => z,
            Some(b) => {
                let (nz, nb) = (z.norm(), b.norm());
                if nz < nb - 1e-9 {
                    z
                } else if (nz - nb).abs() <= 1e-9 && rank(z) < rank(b) {
                    z
                } else {
                    b
                }
            }
        });
    }
    best
}

fn rank(z: Complex64) -> u8 {
    if z.im.abs() < 1e-12 {
        0
    } else if z.im > 0.0 {
        1
    } else {
        2
    }
}

/// Known families of convergent binary words.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    /// `1^s 0`, `s ≥ 1`
    OnesZero,
    /// `1^{4s+1} 00`, `s ≥ 0`; `s = 0` gives `100`, whose zeros lie on
    /// `|x| = 1` exactly.
    OnesZeroZero,
    /// `1^s 0 1^t 0`, `s ≥ 1`, `t ≥ 2`
    OnesZeroOnesZero,
}

/// The family of a base-2 word, if any.
pub fn family_of(w: &Word) -> Option<Family> {
    if w.base() != 2 {
        return None;
    }
    let d = w.digits();
    let ones = |slice: &[u32]| slice.iter().take_while(|&&b| b == 1).count();
    let s = ones(d);
    if s == 0 {
        return None;
    }
    let rest = &d[s..];
    match rest {
        [0] => Some(Family::OnesZero),
        [0, 0] if (s - 1) % 4 == 0 => Some(Family::OnesZeroZero),
        [0, tail @ ..] => {
            let t = ones(tail);
            (t >= 2 && tail.len() == t + 1 && tail[t] == 0).then_some(Family::OnesZeroOnesZero)
        }
        _ => None,
    }
}

/// Every base-2 family word of length at most `max_len`.
pub fn family_members(max_len: usize) -> Vec<Word> {
    enumerate_admissible(2, max_len.saturating_sub(1))
        .into_iter()
        .filter(|w| family_of(w).is_some())
        .collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct ScanReport {
    pub max_len: usize,
    pub tol: f64,
    pub convergent: Vec<Word>,
    pub ones_zero: Vec<Word>,
    pub ones_zero_zero: Vec<Word>,
    pub ones_zero_ones_zero: Vec<Word>,
    pub exceptional: Vec<Word>,
    /// Words whose dominant `|ξ|` is within `tol` of 1. Those certified
    /// to lie exactly on the unit circle also appear in `convergent`.
    pub boundary: Vec<BoundaryWord>,
    #[serde(skip)]
    pub profiles: Vec<RootProfile>,
}

#[derive(Debug, Clone, Serialize)]
pub struct BoundaryWord {
    pub word: Word,
    pub max_xi_modulus: f64,
    pub certified: bool,
}

impl ScanReport {
    pub fn unresolved(&self) -> Vec<&Word> {
        self.boundary
            .iter()
            .filter(|b| !b.certified)
            .map(|b| &b.word)
            .collect()
    }
}

pub const MAX_SCAN_LEN: usize = 12;

/// Classifies every admissible base-2 word of length at most `max_len`.
pub fn scan_convergent_words(max_len: usize, tol: f64) -> Result<ScanReport> {
    if max_len > MAX_SCAN_LEN {
        return Err(Error::usage(format!(
            "max_len {max_len} exceeds the scan limit {MAX_SCAN_LEN}"
        )));
    }
    let words = enumerate_admissible(2, max_len.saturating_sub(1));
    let profiles: Vec<RootProfile> = words
        .par_iter()
        .map(|w| classify_word(w, tol))
        .collect::<Result<_>>()?;
    let mut report = ScanReport {
        max_len,
        tol,
        convergent: Vec::new(),
        ones_zero: Vec::new(),
        ones_zero_zero: Vec::new(),
        ones_zero_ones_zero: Vec::new(),
        exceptional: Vec::new(),
        boundary: Vec::new(),
        profiles: Vec::new(),
    };
    for prof in &profiles {
        let w = prof.word.clone();
        let certified = prof.unit_circle_certified == Some(true);
        if prof.classification == Classification::Boundary {
            report.boundary.push(BoundaryWord {
                word: w.clone(),
                max_xi_modulus: prof.max_xi_modulus,
                certified,
            });
        }
        match prof.classification {
            Classification::Divergent => {}
            Classification::Boundary if !certified => {}
            Classification::Boundary | Classification::Convergent => {
                report.convergent.push(w.clone());
                match family_of(&w) {
                    Some(Family::OnesZero) => report.ones_zero.push(w),
                    Some(Family::OnesZeroZero) => report.ones_zero_zero.push(w),
                    Some(Family::OnesZeroOnesZero) => report.ones_zero_ones_zero.push(w),
                    None => report.exceptional.push(w),
                }
            }
        }
    }
    report.profiles = profiles;
    Ok(report)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyVariant {
    OnesZero,
    OnesZeroZero,
}

/// The two roots of `q_r(t) = 4t^{r+1} + t^r - 4t^2 - 1` near `±i/2`.
#[derive(Debug, Clone, Serialize)]
pub struct QRoots {
    pub r: usize,
    #[serde(serialize_with = "ser_complex")]
    pub upper: Complex64,
    #[serde(serialize_with = "ser_complex")]
    pub lower: Complex64,
    /// `i/2 + (i/2)^r (1/2 - i/4)`
    #[serde(serialize_with = "ser_complex")]
    pub approximation: Complex64,
    pub modulus: f64,
    pub outside_half: bool,
    /// `r ≡ 1, 2 (mod 4)`
    pub predicted_outside: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct FamilyReport {
    pub word: Word,
    pub variant: FamilyVariant,
    #[serde(serialize_with = "ser_display")]
    pub closed_form: RationalFunctionQ,
    /// Whether the closed form equals the function it describes:
    /// `T̄_{1^s0}` or `r_{1^s00}`.
    pub matches: bool,
    pub q_roots: Vec<QRoots>,
}

fn ser_display<T: fmt::Display, S: serde::Serializer>(
    v: &T,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}

/// `1 - (x/2)^k`
fn one_minus_half_power(k: usize) -> PolyQ {
    &PolyQ::one() - &PolyQ::monomial(ratio(1, 1 << k.min(62)), k)
}

/// `q_r(x/2)`
fn q_half(r: usize) -> PolyQ {
    let q = q_poly(r);
    q.rescale_var(&ratio(1, 2))
}

fn q_poly(r: usize) -> PolyQ {
    let mut c = vec![Rational::zero(); r + 2];
    c[0] = int(-1);
    c[2] -= int(4);
    c[r] += int(1);
    c[r + 1] += int(4);
    PolyQ::new(c)
}

pub fn q_roots(r: usize) -> Result<QRoots> {
    if r < 3 {
        return Err(Error::domain("q_r roots near ±i/2 are tracked for r >= 3"));
    }
    let roots = poly_roots(&q_poly(r))?;
    let half_i = Complex64::new(0.0, 0.5);
    let nearest = |target: Complex64| {
        roots
            .iter()
            .map(|r| r.x)
            .min_by(|a, b| {
                (a - target)
                    .norm()
                    .partial_cmp(&(b - target).norm())
                    .unwrap()
            })
            .expect("q_r has roots")
    };
    let upper = nearest(half_i);
    let lower = nearest(-half_i);
    let approximation = half_i + half_i.powu(r as u32) * Complex64::new(0.5, -0.25);
    Ok(QRoots {
        r,
        upper,
        lower,
        approximation,
        modulus: upper.norm(),
        outside_half: upper.norm() > 0.5,
        predicted_outside: matches!(r % 4, 1 | 2),
    })
}

pub fn closed_form_family(s: usize, variant: FamilyVariant) -> Result<FamilyReport> {
    if s == 0 {
        return Err(Error::domain("family index s must be at least 1"));
    }
    let ones = Word::new(2, vec![1; s])?;
    match variant {
        FamilyVariant::OnesZero => {
            let word = ones.concat(&Word::new(2, vec![0])?);
            let closed =
                RationalFunctionQ::new(one_minus_half_power(s + 1), one_minus_half_power(1))?;
            let matches = closed == RationalFunctionQ::from_poly(tbar_word(&word));
            Ok(FamilyReport {
                word,
                variant,
                closed_form: closed,
                matches,
                q_roots: Vec::new(),
            })
        }
        FamilyVariant::OnesZeroZero => {
            let word = ones.concat(&Word::new(2, vec![0, 0])?);
            let r = s;
            let closed = RationalFunctionQ::new(q_half(r + 1), q_half(r))?.mul(
                &RationalFunctionQ::new(one_minus_half_power(r), one_minus_half_power(r + 1))?,
            );
            let matches = closed == r_w_quotient(&word)?;
            let q_roots = if r >= 3 {
                vec![q_roots(r)?, q_roots(r + 1)?]
            } else {
                Vec::new()
            };
            Ok(FamilyReport {
                word,
                variant,
                closed_form: closed,
                matches,
                q_roots,
            })
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SumFactor {
    pub word: Word,
    pub exponent: u32,
    #[serde(with = "crate::ratcore::rational::serde_text")]
    pub r_at_one: Rational,
    pub log_r_at_one: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct CoefficientSum {
    pub monomial: String,
    pub factors: Vec<SumFactor>,
    /// `Π (log r_w(1))^k / k!`
    pub value: f64,
    pub error_bound: f64,
}

/// `Σ_j [x^j] Π (log r_w)^k / k!` for monomials built from strictly
/// convergent words.
pub fn coefficient_sum(m: &Monomial, tol: f64) -> Result<CoefficientSum> {
    let mut factors = Vec::new();
    let mut value = 1.0;
    for (w, k) in m.factors() {
        let prof = classify_word(w, tol)?;
        if prof.classification != Classification::Convergent {
            return Err(Error::domain(format!(
                "coefficient sum refused: {w} is {} (max |xi| = {:.9})",
                prof.classification, prof.max_xi_modulus
            )));
        }
        let log = to_f64(&prof.r_at_one).ln();
        value *= log.powi(*k as i32) / to_f64(&factorial(*k));
        factors.push(SumFactor {
            word: w.clone(),
            exponent: *k,
            r_at_one: prof.r_at_one,
            log_r_at_one: log,
        });
    }
    let ops = factors.iter().map(|f| f.exponent as f64 + 2.0).sum::<f64>() + 1.0;
    let error_bound = ops * f64::EPSILON * value.abs().max(f64::MIN_POSITIVE);
    Ok(CoefficientSum {
        monomial: m.to_string(),
        factors,
        value,
        error_bound,
    })
}

/// Rational text of `r_w(1)`, shown in reports.
pub fn r_at_one_text(profile: &RootProfile) -> String {
    to_text(&profile.r_at_one)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        Word::parse(s, 2).unwrap()
    }

    #[test]
    fn dominant_singularity_1010() {
        let prof = classify_word(&w("1010"), DEFAULT_TOL).unwrap();
        assert_eq!(prof.classification, Classification::Divergent);
        let x0 = prof.dominant_singularity.unwrap();
        assert!(
            (x0.re + 0.86408).abs() < 1e-4 && x0.im.abs() < 1e-12,
            "{x0}"
        );
        assert!(prof.coefficient_sum.is_none());
        let prof = classify_word(&w("10100"), DEFAULT_TOL).unwrap();
        assert!((prof.dominant_singularity.unwrap().re + 0.86408).abs() < 1e-4);
    }

    #[test]
    fn convergent_examples() {
        let p10 = classify_word(&w("10"), DEFAULT_TOL).unwrap();
        assert_eq!(p10.classification, Classification::Convergent);
        assert!((p10.dominant_singularity.unwrap().norm() - 2.0).abs() < 1e-12);
        assert!((p10.coefficient_sum.unwrap() - 1.5f64.ln()).abs() < 1e-14);
        let p110 = classify_word(&w("110"), DEFAULT_TOL).unwrap();
        assert!(p110
            .zeros
            .iter()
            .chain(&p110.poles)
            .all(|r| (r.x.norm() - 2.0).abs() < 1e-12));
        assert!((p110.coefficient_sum.unwrap() - (7.0f64 / 6.0).ln()).abs() < 1e-14);
    }

    #[test]
    fn word_100_sits_on_the_unit_circle() {
        let p = classify_word(&w("100"), DEFAULT_TOL).unwrap();
        assert_eq!(p.classification, Classification::Boundary);
        assert!(p.boundary_flag);
        assert_eq!(p.unit_circle_certified, Some(true));
        assert!((p.coefficient_sum.unwrap() - (5.0f64 / 3.0).ln()).abs() < 1e-14);
        // 1010 has a real zero inside the unit disc: nothing to certify.
        assert_eq!(
            classify_word(&w("1010"), DEFAULT_TOL)
                .unwrap()
                .unit_circle_certified,
            None
        );
    }

    #[test]
    fn exact_coefficients_for_110() {
        let prof = classify_word(&w("110"), DEFAULT_TOL).unwrap();
        for n in 1..=12 {
            let got = log_rat_coeff_exact(&prof, n).unwrap();
            let th = std::f64::consts::TAU * n as f64 / 3.0;
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            let expect = 0.5f64.powi(n as i32) / n as f64 * (sign - 2.0 * th.cos());
            assert!(
                (got.re - expect).abs() < 1e-13 && got.im.abs() < 1e-13,
                "n = {n}"
            );
        }
        assert!(log_rat_coeff_exact(&prof, 0).is_err());
        let mut partial = prof.clone();
        partial.zeros.pop();
        assert!(log_rat_coeff_exact(&partial, 1).is_err());
    }

    #[test]
    fn families() {
        assert_eq!(family_of(&w("1110")), Some(Family::OnesZero));
        assert_eq!(family_of(&w("111110")), Some(Family::OnesZero));
        assert_eq!(family_of(&w("1111100")), Some(Family::OnesZeroZero));
        assert_eq!(family_of(&w("11100")), None);
        assert_eq!(family_of(&w("100")), Some(Family::OnesZeroZero));
        assert_eq!(family_of(&w("1100")), None);
        assert_eq!(family_of(&w("10110")), Some(Family::OnesZeroOnesZero));
        assert_eq!(family_of(&w("1010")), None);
        assert_eq!(family_of(&w("101100")), None);
    }

    #[test]
    fn tiny_scan() {
        let s = scan_convergent_words(2, DEFAULT_TOL).unwrap();
        assert_eq!(s.convergent, vec![w("10")]);
        assert!(scan_convergent_words(13, DEFAULT_TOL).is_err());
    }

    #[test]
    fn closed_forms() {
        for s in 1..=12 {
            assert!(
                closed_form_family(s, FamilyVariant::OnesZero)
                    .unwrap()
                    .matches,
                "s = {s}"
            );
        }
        for r in 1..=9 {
            assert!(
                closed_form_family(r, FamilyVariant::OnesZeroZero)
                    .unwrap()
                    .matches,
                "r = {r}"
            );
        }
        for r in [5, 9, 13] {
            let q = q_roots(r).unwrap();
            // The Newton correction leaves an error of order r·4^{-r}.
            let err = (q.upper - q.approximation).norm();
            assert!(err < r as f64 * 0.25f64.powi(r as i32), "r = {r}: {err}");
            assert_eq!(q.outside_half, q.predicted_outside);
            assert!((q.lower - q.upper.conj()).norm() < 1e-12);
        }
    }

    #[test]
    fn sums() {
        let s = coefficient_sum(&Monomial::from_factors([(w("10"), 2)]), DEFAULT_TOL).unwrap();
        assert!((s.value - 0.5 * 1.5f64.ln().powi(2)).abs() < 1e-15);
        let s = coefficient_sum(&Monomial::var(w("110")), DEFAULT_TOL).unwrap();
        assert!((s.value - (7.0f64 / 6.0).ln()).abs() < 1e-15);
        assert!(coefficient_sum(&Monomial::var(w("1010")), DEFAULT_TOL).is_err());
    }
}
