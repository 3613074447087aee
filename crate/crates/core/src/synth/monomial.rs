use std::cmp::Ordering;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::words::{enumerate_admissible, Word};

/// Product `X_{w1}^{k1} ⋯ X_{wl}^{kl}` of admissible-word variables.
///
/// Factors are kept sorted (length-then-lex) with distinct words and
/// positive exponents; the empty product is the constant monomial 1.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    factors: Vec<(Word, u32)>,
}

#[derive(Serialize)]
struct FactorJson<'a> {
    word: &'a Word,
    exp: u32,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial {
            factors: Vec::new(),
        }
    }

    pub fn var(w: Word) -> Self {
        Monomial {
            factors: vec![(w, 1)],
        }
    }

    /// Builds a monomial from arbitrary `(word, exponent)` pairs, merging
    /// repeated words and dropping zero exponents.
    pub fn from_factors<I: IntoIterator<Item = (Word, u32)>>(it: I) -> Self {
        let mut factors: Vec<(Word, u32)> = it.into_iter().filter(|(_, k)| *k > 0).collect();
        factors.sort_by(|a, b| a.0.cmp(&b.0));
        let mut merged: Vec<(Word, u32)> = Vec::with_capacity(factors.len());
        for (w, k) in factors {
            match merged.last_mut() {
                Some((last, e)) if *last == w => *e += k,
                _ => merged.push((w, k)),
            }
        }
        Monomial { factors: merged }
    }

    /// Caller guarantees canonical order, distinct words, positive exponents.
    pub(crate) fn from_sorted(factors: Vec<(Word, u32)>) -> Self {
        debug_assert!(factors.windows(2).all(|f| f[0].0 < f[1].0));
        Monomial { factors }
    }

    /// Parses `X[10]^2*X[110]`, or the bare form `10^2*110`; `1` is the
    /// constant monomial. Every word must be admissible.
    pub fn parse(text: &str, p: u32) -> Result<Self> {
        let text = text.trim();
        if text == "1" || text.is_empty() {
            return Ok(Monomial::one());
        }
        let mut factors = Vec::new();
        for part in text.split('*') {
            let part = part.trim();
            let (base, exp) = match part.split_once('^') {
                Some((b, e)) => {
                    let k: u32 = e
                        .trim()
                        .parse()
                        .map_err(|_| Error::usage(format!("bad exponent in '{part}'")))?;
                    (b.trim(), k)
                }
                None => (part, 1),
            };
            let inner = base
                .strip_prefix("X[")
                .and_then(|b| b.strip_suffix(']'))
                .unwrap_or(base);
            let w = Word::parse(inner, p)?;
            if !w.is_admissible() {
                return Err(Error::domain(format!(
                    "{w} is not an admissible word for p = {p}"
                )));
            }
            factors.push((w, exp));
        }
        Ok(Monomial::from_factors(factors))
    }

    pub fn factors(&self) -> &[(Word, u32)] {
        &self.factors
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    /// `Σ k_i (|w_i| - 1)`: the first `j` with a nonzero coefficient in `P_j`.
    pub fn weight(&self) -> usize {
        self.factors
            .iter()
            .map(|(w, k)| (w.len() - 1) * *k as usize)
            .sum()
    }

    pub fn degree(&self) -> u32 {
        self.factors.iter().map(|(_, k)| k).sum()
    }

    pub fn max_word_len(&self) -> usize {
        self.factors.iter().map(|(w, _)| w.len()).max().unwrap_or(0)
    }

    fn expanded(&self) -> impl Iterator<Item = &Word> {
        self.factors
            .iter()
            .flat_map(|(w, k)| std::iter::repeat(w).take(*k as usize))
    }

    pub fn to_json(&self) -> serde_json::Value {
        let f: Vec<FactorJson> = self
            .factors
            .iter()
            .map(|(word, exp)| FactorJson { word, exp: *exp })
            .collect();
        serde_json::to_value(f).expect("monomial serializes")
    }
}

impl Ord for Monomial {
    /// Total weight, then the longest word, then the sorted word sequence
    /// lexicographically. Reproduces the customary display order
    /// `X[10], X[10]^2, X[100], X[110], X[10]^3, …`.
    fn cmp(&self, other: &Self) -> Ordering {
        self.weight()
            .cmp(&other.weight())
            .then(self.max_word_len().cmp(&other.max_word_len()))
            .then_with(|| self.expanded().cmp(other.expanded()))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        for (i, (w, k)) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            write!(f, "X[{w}]")?;
            if *k > 1 {
                write!(f, "^{k}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Monomial({self})")
    }
}

/// Every monomial in the variables of `W_j` with total weight at most `j`,
/// including the constant monomial, in canonical order.
pub fn monomials_up_to_weight(p: u32, j: usize) -> Vec<Monomial> {
    let words = enumerate_admissible(p, j);
    let mut out = vec![Monomial::one()];
    let mut stack: Vec<(Word, u32)> = Vec::new();
    extend(&words, 0, j, &mut stack, &mut out);
    out.sort();
    out
}

fn extend(
    words: &[Word],
    start: usize,
    budget: usize,
    stack: &mut Vec<(Word, u32)>,
    out: &mut Vec<Monomial>,
) {
    for (i, w) in words.iter().enumerate().skip(start) {
        let wt = w.len() - 1;
        if wt > budget {
            break;
        }
        let mut k = 1;
        while k * wt <= budget {
            stack.push((w.clone(), k as u32));
            out.push(Monomial {
                factors: stack.clone(),
            });
            extend(words, i + 1, budget - k * wt, stack, out);
            stack.pop();
            k += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        Word::parse(s, 2).unwrap()
    }

    #[test]
    fn weight_two_monomials() {
        let m: Vec<String> = monomials_up_to_weight(2, 2)
            .iter()
            .map(|m| m.to_string())
            .collect();
        assert_eq!(m, vec!["1", "X[10]", "X[10]^2", "X[100]", "X[110]"]);
        assert_eq!(monomials_up_to_weight(3, 0), vec![Monomial::one()]);
    }

    #[test]
    fn cumulative_counts_base_two() {
        let counts: Vec<usize> = (0..=8)
            .map(|j| monomials_up_to_weight(2, j).len())
            .collect();
        assert_eq!(counts, vec![1, 2, 5, 12, 30, 72, 176, 420, 1005]);
    }

    #[test]
    fn weight_of_product() {
        let m = Monomial::from_factors([(w("110"), 1), (w("10"), 1)]);
        assert_eq!(m.weight(), 3);
        assert_eq!(m.to_string(), "X[10]*X[110]");
        let merged = Monomial::from_factors([(w("10"), 1), (w("10"), 2), (w("100"), 0)]);
        assert_eq!(merged.to_string(), "X[10]^3");
    }

    #[test]
    fn parse_round_trip() {
        let m = Monomial::parse("X[10]^2*X[110]", 2).unwrap();
        assert_eq!(m, Monomial::parse("110*10^2", 2).unwrap());
        assert_eq!(Monomial::parse(&m.to_string(), 2).unwrap(), m);
        assert!(Monomial::parse("1", 3).unwrap().is_one());
        assert!(Monomial::parse("X[11]", 2).is_err());
        assert!(Monomial::parse("X[10]^x", 2).is_err());
    }

    #[test]
    fn display_order_weight_four() {
        let mut m = vec![
            Monomial::from_factors([(w("10"), 1), (w("1000"), 1)]),
            Monomial::from_factors([(w("100"), 2)]),
            Monomial::from_factors([(w("10"), 2), (w("110"), 1)]),
            Monomial::from_factors([(w("10"), 4)]),
            Monomial::var(w("10000")),
        ];
        m.sort();
        let s: Vec<String> = m.iter().map(|m| m.to_string()).collect();
        assert_eq!(
            s,
            vec![
                "X[10]^4",
                "X[10]^2*X[110]",
                "X[100]^2",
                "X[10]*X[1000]",
                "X[10000]"
            ]
        );
    }
}
