//! Base-p digit words: expansion, overlapping factor counts with zero
//! padding, left/right truncations and the admissible word sets `W_j`.
//!
//! Words are written most significant digit first, as in `1010` for 10.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::arith::ensure_prime;
use crate::error::{Error, ParseError, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Word {
    base: u32,
    /// Most significant digit first.
    digits: Vec<u32>,
}

/// Membership flags for the word families used throughout the crate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WordClass {
    /// Length ≥ 2, leading digit nonzero, trailing digit not `p-1`.
    pub in_w: bool,
    /// Length ≥ 1, leading digit nonzero.
    pub in_w_tilde: bool,
    /// `in_w` and length ≤ `j + 1`.
    pub in_w_j: bool,
}

impl Word {
    pub fn new(base: u32, digits: Vec<u32>) -> Result<Self> {
        ensure_prime(base)?;
        if digits.iter().any(|&d| d >= base) {
            return Err(Error::domain(format!("digit out of range for base {base}")));
        }
        Ok(Word { base, digits })
    }

    pub fn empty(base: u32) -> Self {
        Word {
            base,
            digits: Vec::new(),
        }
    }

    /// Parses the one-character-per-digit text form; `eps` is the empty word.
    pub fn parse(text: &str, base: u32) -> Result<Self> {
        ensure_prime(base)?;
        let bad = || ParseError::Word {
            text: text.to_string(),
            base,
        };
        let t = text.trim();
        if t == "eps" || t == "ε" {
            return Ok(Self::empty(base));
        }
        if t.is_empty() {
            return Err(bad().into());
        }
        let digits = t
            .chars()
            .map(|c| c.to_digit(36).filter(|&d| d < base).ok_or_else(bad))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(Word { base, digits })
    }

    /// Proper base-`p` expansion of `n`; the empty word for 0.
    pub fn expand(n: u64, base: u32) -> Self {
        let mut digits = Vec::new();
        let mut m = n;
        while m > 0 {
            digits.push((m % base as u64) as u32);
            m /= base as u64;
        }
        digits.reverse();
        Word { base, digits }
    }

    pub fn value(&self) -> BigUint {
        self.digits
            .iter()
            .fold(BigUint::zero(), |acc, &d| acc * self.base + d)
    }

    pub fn value_u64(&self) -> Option<u64> {
        self.value().to_u64()
    }

    pub fn base(&self) -> u32 {
        self.base
    }

    pub fn digits(&self) -> &[u32] {
        &self.digits
    }

    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }

    /// Digit at position `i` counted from the least significant end, with
    /// infinite zero padding on the left.
    pub fn digit_at(&self, i: usize) -> u32 {
        let n = self.digits.len();
        if i < n {
            self.digits[n - 1 - i]
        } else {
            0
        }
    }

    pub fn first(&self) -> Option<u32> {
        self.digits.first().copied()
    }

    pub fn last(&self) -> Option<u32> {
        self.digits.last().copied()
    }

    pub fn class(&self, j: usize) -> WordClass {
        let top = self.base - 1;
        let in_w_tilde = self.first().is_some_and(|d| d != 0);
        let in_w = in_w_tilde && self.len() >= 2 && self.last() != Some(top);
        WordClass {
            in_w,
            in_w_tilde,
            in_w_j: in_w && self.len() <= j + 1,
        }
    }

    pub fn is_admissible(&self) -> bool {
        self.class(0).in_w
    }

    pub fn in_w_tilde(&self) -> bool {
        self.class(0).in_w_tilde
    }

    /// `|w| - 1`.
    pub fn weight(&self) -> Result<usize> {
        self.len()
            .checked_sub(1)
            .ok_or_else(|| Error::domain("the empty word has no weight"))
    }

    /// Drop the last digit; single digits and ε map to ε.
    pub fn right(&self) -> Result<Word> {
        self.check_truncatable()?;
        let mut digits = self.digits.clone();
        digits.pop();
        Ok(Word {
            base: self.base,
            digits,
        })
    }

    /// Drop the leading block `c0^r`.
    pub fn left(&self) -> Result<Word> {
        self.check_truncatable()?;
        if self.is_empty() {
            return Ok(self.clone());
        }
        let rest = &self.digits[1..];
        let start = rest.iter().position(|&d| d != 0).unwrap_or(rest.len());
        Ok(Word {
            base: self.base,
            digits: rest[start..].to_vec(),
        })
    }

    fn check_truncatable(&self) -> Result<()> {
        if self.first() == Some(0) {
            return Err(Error::domain(format!("{self} starts with 0")));
        }
        Ok(())
    }

    /// `(w_L, w_R, w_LR)`.
    pub fn truncations(&self) -> Result<(Word, Word, Word)> {
        let l = self.left()?;
        let r = self.right()?;
        let lr = l.right()?;
        Ok((l, r, lr))
    }

    /// Boolean complement; base 2 only.
    pub fn complement(&self) -> Result<Word> {
        if self.base != 2 {
            return Err(Error::domain("complement is defined for base 2 only"));
        }
        Ok(Word {
            base: 2,
            digits: self.digits.iter().map(|&d| 1 - d).collect(),
        })
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut digits = self.digits.clone();
        digits.extend_from_slice(&other.digits);
        Word {
            base: self.base,
            digits,
        }
    }

    pub fn repeat(&self, k: usize) -> Word {
        Word {
            base: self.base,
            digits: self.digits.repeat(k),
        }
    }
}

/// Number of (possibly overlapping) occurrences of `w` in `v`, reading `v`
/// with infinite zero padding on the left.
pub fn factor_count(v: &Word, w: &Word) -> Result<u64> {
    if v.base != w.base {
        return Err(Error::domain("words in different bases"));
    }
    if w.digits.iter().all(|&d| d == 0) {
        return Err(Error::domain("factor must contain a nonzero digit"));
    }
    let mu = w.len();
    // Windows starting at or beyond len(v) are all zeros and cannot match.
    let count = (0..v.len())
        .filter(|&i| (0..mu).all(|k| v.digit_at(i + k) == w.digits[mu - 1 - k]))
        .count();
    Ok(count as u64)
}

/// `|n|_w`.
pub fn factor_count_of(n: u64, w: &Word) -> Result<u64> {
    factor_count(&Word::expand(n, w.base), w)
}

/// Counts of every factor of `v` that starts with a nonzero digit and has
/// length at most `max_len`. Any such factor lies inside `v` itself.
pub fn nonzero_led_factors(v: &Word, max_len: usize) -> HashMap<Word, u64> {
    let mut out = HashMap::new();
    let d = &v.digits;
    for start in 0..d.len() {
        if d[start] == 0 {
            continue;
        }
        for end in start + 1..=d.len().min(start + max_len) {
            let w = Word {
                base: v.base,
                digits: d[start..end].to_vec(),
            };
            *out.entry(w).or_insert(0) += 1;
        }
    }
    out
}

/// All of `W_j`, ordered by length and then lexicographically.
pub fn enumerate_admissible(p: u32, j: usize) -> Vec<Word> {
    let mut out = Vec::new();
    for mu in 2..=j + 1 {
        let mut digits = vec![0u32; mu];
        digits[0] = 1;
        loop {
            if digits[mu - 1] != p - 1 {
                out.push(Word {
                    base: p,
                    digits: digits.clone(),
                });
            }
            // Odometer increment, leading digit stays nonzero.
            let mut k = mu - 1;
            loop {
                digits[k] += 1;
                if digits[k] < p {
                    break;
                }
                digits[k] = 0;
                if k == 0 {
                    break;
                }
                k -= 1;
            }
            if digits[0] == 0 {
                break;
            }
        }
    }
    out
}

/// Test integer `n(a)` whose base-`p` expansion is `v_{M-1} … v_0` with
/// `v_m = (w_m N^ℓ 0^ℓ)^{a_m} (N^ℓ 0^ℓ)^{R - a_m}` for the canonical
/// enumeration `w_0, …, w_{M-1}` of `W_ℓ`. Returned as its digit word.
pub fn separator_integer(a: &[u32], ell: usize, r_max: u32, p: u32) -> Result<Word> {
    ensure_prime(p)?;
    let words = enumerate_admissible(p, ell);
    if a.len() != words.len() {
        return Err(Error::usage(format!(
            "expected {} block multiplicities, got {}",
            words.len(),
            a.len()
        )));
    }
    if let Some(bad) = a.iter().find(|&&x| x > r_max) {
        return Err(Error::usage(format!(
            "multiplicity {bad} exceeds R = {r_max}"
        )));
    }
    let mut sep = vec![p - 1; ell];
    sep.extend(std::iter::repeat(0).take(ell));
    let mut digits = Vec::new();
    for (w, &am) in words.iter().zip(a).rev() {
        for _ in 0..am {
            digits.extend_from_slice(&w.digits);
            digits.extend_from_slice(&sep);
        }
        for _ in am..r_max {
            digits.extend_from_slice(&sep);
        }
    }
    let lead = digits.iter().position(|&d| d != 0).unwrap_or(digits.len());
    Ok(Word {
        base: p,
        digits: digits[lead..].to_vec(),
    })
}

impl Ord for Word {
    /// Base, then length, then lexicographic on digits.
    fn cmp(&self, other: &Self) -> Ordering {
        self.base
            .cmp(&other.base)
            .then(self.len().cmp(&other.len()))
            .then_with(|| self.digits.cmp(&other.digits))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "eps");
        }
        for &d in &self.digits {
            match char::from_digit(d, 36) {
                Some(c) => write!(f, "{c}")?,
                None => write!(f, "({d})")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self}; p={})", self.base)
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w2(s: &str) -> Word {
        Word::parse(s, 2).unwrap()
    }

    #[test]
    fn expansion() {
        assert_eq!(Word::expand(42, 2).to_string(), "101010");
        assert!(Word::expand(0, 3).is_empty());
        assert_eq!(Word::empty(5).value(), BigUint::zero());
        assert_eq!(Word::expand(0, 2).to_string(), "eps");
    }

    #[test]
    fn factor_counts_from_notation() {
        assert_eq!(factor_count_of(42, &w2("1010")).unwrap(), 2);
        assert_eq!(factor_count_of(1, &w2("01")).unwrap(), 1);
        assert_eq!(factor_count_of(1, &w2("001")).unwrap(), 1);
        assert_eq!(factor_count_of(1, &w2("10")).unwrap(), 0);
        assert_eq!(factor_count_of(1, &w2("1")).unwrap(), 1);
    }

    #[test]
    fn all_zero_factor_rejected() {
        assert!(factor_count_of(5, &w2("00")).is_err());
    }

    #[test]
    fn parse_rejects_bad_digits() {
        assert!(Word::parse("102", 2).is_err());
        assert!(Word::parse("", 2).is_err());
        assert!(Word::parse("10", 4).is_err());
        assert_eq!(Word::parse("eps", 3).unwrap(), Word::empty(3));
        assert_eq!(Word::parse("2601", 7).unwrap().digits(), &[2, 6, 0, 1]);
    }

    #[test]
    fn truncation_rules() {
        let (l, r, lr) = w2("1010").truncations().unwrap();
        assert_eq!(
            (l.to_string(), r.to_string(), lr.to_string()),
            ("10".into(), "101".into(), "1".into())
        );
        assert_eq!(w2("1000").left().unwrap(), Word::empty(2));
        assert_eq!(
            w2("1").truncations().unwrap(),
            (Word::empty(2), Word::empty(2), Word::empty(2))
        );
        let e = Word::empty(2);
        assert_eq!(e.truncations().unwrap(), (e.clone(), e.clone(), e.clone()));
        assert!(w2("01").truncations().is_err());
        let w = Word::parse("2031", 5).unwrap();
        assert_eq!(w.left().unwrap().to_string(), "31");
        assert_eq!(w.right().unwrap().to_string(), "203");
    }

    #[test]
    fn admissible_sets() {
        assert!(enumerate_admissible(2, 0).is_empty());
        let w: Vec<String> = enumerate_admissible(2, 2)
            .iter()
            .map(|w| w.to_string())
            .collect();
        assert_eq!(w, vec!["10", "100", "110"]);
        let w3 = enumerate_admissible(3, 1);
        let s: Vec<String> = w3.iter().map(|w| w.to_string()).collect();
        assert_eq!(s, vec!["10", "11", "20", "21"]);
    }

    #[test]
    fn weights_and_complements() {
        assert_eq!(w2("10").weight().unwrap(), 1);
        assert_eq!(w2("1010").weight().unwrap(), 3);
        assert!(Word::empty(2).weight().is_err());
        assert_eq!(w2("10").complement().unwrap().to_string(), "01");
        assert_eq!(w2("110").complement().unwrap().to_string(), "001");
        assert!(Word::parse("12", 3).unwrap().complement().is_err());
    }

    #[test]
    fn word_classes() {
        let c = w2("110").class(2);
        assert!(c.in_w && c.in_w_tilde && c.in_w_j);
        assert!(!w2("110").class(1).in_w_j);
        let c = w2("101").class(5);
        assert!(!c.in_w && c.in_w_tilde);
        assert!(!w2("1").is_admissible());
    }

    #[test]
    fn separator_with_no_inserted_blocks() {
        // All a_m = 0: only separators 1100 repeated R*M times.
        let n = separator_integer(&[0, 0, 0], 2, 2, 2).unwrap();
        assert_eq!(n.to_string(), "110011001100110011001100");
        assert_eq!(factor_count(&n, &w2("10")).unwrap(), 6);
        assert_eq!(factor_count(&n, &w2("100")).unwrap(), 6);
        assert_eq!(factor_count(&n, &w2("110")).unwrap(), 6);
        assert!(separator_integer(&[0, 3, 0], 2, 2, 2).is_err());
        assert!(separator_integer(&[0, 0], 2, 2, 2).is_err());
    }
}
