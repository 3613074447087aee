use std::collections::BTreeMap;
use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::monomial::Monomial;
use crate::error::{Error, Result};
use crate::ratcore::rational::{self, Rational};
use crate::words::{nonzero_led_factors, Word};

/// A polynomial in the block-count variables `X_w`, kept as a sorted map
/// from monomials to their nonzero rational coefficients.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BlockPolynomial {
    pub p: u32,
    pub j: usize,
    terms: BTreeMap<Monomial, Rational>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct FactorJson {
    pub word: String,
    pub exp: u32,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct TermJson {
    pub monomial: Vec<FactorJson>,
    pub coeff: String,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
struct PolyJson {
    p: u32,
    j: usize,
    terms: Vec<TermJson>,
}

impl BlockPolynomial {
    pub fn zero(p: u32, j: usize) -> Self {
        BlockPolynomial {
            p,
            j,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(
        p: u32,
        j: usize,
        it: I,
    ) -> Self {
        let mut terms: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (m, c) in it {
            *terms.entry(m).or_insert_with(Rational::zero) += c;
        }
        terms.retain(|_, c| !c.is_zero());
        BlockPolynomial { p, j, terms }
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Rational> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Coefficientwise sum; keeps `self.j`.
    pub fn add(&self, other: &BlockPolynomial) -> BlockPolynomial {
        let it = self
            .terms
            .iter()
            .chain(other.terms.iter())
            .map(|(m, c)| (m.clone(), c.clone()));
        BlockPolynomial::from_terms(self.p, self.j, it)
    }

    pub fn max_word_len(&self) -> usize {
        self.terms
            .keys()
            .map(Monomial::max_word_len)
            .max()
            .unwrap_or(0)
    }

    /// Substitutes `X_w := value(w)`.
    pub fn evaluate_with<F: FnMut(&Word) -> u64>(&self, mut value: F) -> Rational {
        let mut cache: HashMap<Word, u64> = HashMap::new();
        let mut acc = Rational::zero();
        'terms: for (m, c) in &self.terms {
            let mut prod = BigInt::one();
            for (w, k) in m.factors() {
                let v = *cache.entry(w.clone()).or_insert_with(|| value(w));
                if v == 0 {
                    continue 'terms;
                }
                prod *= BigInt::from(v).pow(*k);
            }
            acc += c * prod;
        }
        acc
    }

    /// Substitutes `X_w := |n|_w`.
    pub fn evaluate_at(&self, n: u64) -> Rational {
        let counts = nonzero_led_factors(&Word::expand(n, self.p), self.max_word_len());
        self.evaluate_with(|w| counts.get(w).copied().unwrap_or(0))
    }

    pub fn to_json_terms(&self) -> Vec<TermJson> {
        self.terms
            .iter()
            .map(|(m, c)| TermJson {
                monomial: m
                    .factors()
                    .iter()
                    .map(|(w, k)| FactorJson {
                        word: w.to_string(),
                        exp: *k,
                    })
                    .collect(),
                coeff: rational::to_text(c),
            })
            .collect()
    }

    /// `{ "p": .., "j": .., "terms": [ { "monomial": [ {"word", "exp"} ], "coeff" } ] }`
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(PolyJson {
            p: self.p,
            j: self.j,
            terms: self.to_json_terms(),
        })
        .expect("block polynomial serializes")
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        let parsed: PolyJson =
            serde_json::from_value(value.clone()).map_err(|e| Error::usage(e.to_string()))?;
        let mut terms = Vec::with_capacity(parsed.terms.len());
        for t in parsed.terms {
            let factors = t
                .monomial
                .iter()
                .map(|f| Word::parse(&f.word, parsed.p).map(|w| (w, f.exp)))
                .collect::<Result<Vec<_>>>()?;
            terms.push((Monomial::from_factors(factors), rational::parse(&t.coeff)?));
        }
        Ok(BlockPolynomial::from_terms(parsed.p, parsed.j, terms))
    }
}

/// Plain-text form, e.g. `-1/8*X[10] + 1/8*X[10]^2 + X[100] + 1/4*X[110]`.
impl fmt::Display for BlockPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let a = c.abs();
            if m.is_one() {
                write!(f, "{}", rational::to_text(&a))?;
            } else if a.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{}*{m}", rational::to_text(&a))?;
            }
        }
        Ok(())
    }
}
