//! Synthesis of the block polynomials `P_j`.
//!
//! The coefficient of `X_{w1}^{k1} ⋯ X_{wl}^{kl}` in `P_j` is
//! `[x^j] Π_i (log r_{wi}(x))^{ki} / ki!`. `build_pj` tabulates
//! `log r_w` once for every `w ∈ W_j` and walks the monomials of weight
//! at most `j` depth-first, reusing partial products.

mod block;
mod monomial;
mod rw;

pub use block::{BlockPolynomial, TermJson};
pub use monomial::{monomials_up_to_weight, Monomial};
pub use rw::{
    alpha, r_w_at_zero, r_w_closed, r_w_closed_with, r_w_quotient, r_w_quotient_with, r_w_series,
    telescope_check,
};

use std::collections::HashMap;

use num_traits::Zero;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::ratcore::rational::{factorial, int};
use crate::ratcore::{Rational, SeriesQ};
use crate::theta::RowTable;
use crate::words::{enumerate_admissible, Word};

/// `log r_w` truncated at a fixed order for a set of words.
#[derive(Debug, Clone)]
pub struct LogTable {
    order: usize,
    logs: HashMap<Word, SeriesQ>,
}

impl LogTable {
    pub fn build(words: &[Word], order: usize) -> Result<Self> {
        let mut logs = HashMap::with_capacity(words.len());
        let mut tables: HashMap<u32, RowTable> = HashMap::new();
        for w in words {
            let table = tables
                .entry(w.base())
                .or_insert_with(|| RowTable::new(w.base()));
            let r = r_w_series(table, w, order)?;
            logs.insert(w.clone(), r.log()?);
        }
        Ok(LogTable { order, logs })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, w: &Word) -> Option<&SeriesQ> {
        self.logs.get(w)
    }
}

/// `Π (log r_w)^k / k!` over the factors of `m`, truncated at `order`.
pub fn monomial_coefficient_series(m: &Monomial, order: usize) -> Result<SeriesQ> {
    let words: Vec<Word> = m.factors().iter().map(|(w, _)| w.clone()).collect();
    for w in &words {
        if !w.is_admissible() {
            return Err(Error::domain(format!("{w} is not admissible")));
        }
    }
    let table = LogTable::build(&words, order)?;
    let mut out = SeriesQ::one(order);
    for (w, k) in m.factors() {
        let term = table
            .get(w)
            .expect("tabulated")
            .pow(*k)
            .scale(&factorial(*k).recip());
        out = out.mul(&term)?;
    }
    Ok(out)
}

/// `P_j` for base `p`.
pub fn build_pj(p: u32, j: usize) -> Result<BlockPolynomial> {
    crate::arith::ensure_prime(p)?;
    let words = enumerate_admissible(p, j);
    let table = LogTable::build(&words, j)?;
    let start = SeriesQ::one(j);
    let mut terms: Vec<(Monomial, Rational)> = Vec::new();
    if j == 0 {
        terms.push((Monomial::one(), int(1)));
    }
    // Branch on the first (smallest) word of each monomial in parallel.
    let branches: Vec<Vec<(Monomial, Rational)>> = (0..words.len())
        .into_par_iter()
        .map(|i| {
            let mut out = Vec::new();
            let mut stack = Vec::new();
            walk_from(&words, &table, i, j, j, &start, &mut stack, &mut out);
            out
        })
        .collect();
    terms.extend(branches.into_iter().flatten());
    Ok(BlockPolynomial::from_terms(p, j, terms))
}

/// Visits every monomial whose smallest word is `words[i]`, with weight at
/// most `budget`, multiplying onto `prefix`.
#[allow(clippy::too_many_arguments)]
fn walk_from(
    words: &[Word],
    table: &LogTable,
    i: usize,
    budget: usize,
    j: usize,
    prefix: &SeriesQ,
    stack: &mut Vec<(Word, u32)>,
    out: &mut Vec<(Monomial, Rational)>,
) {
    let w = &words[i];
    let wt = w.len() - 1;
    if wt > budget {
        return;
    }
    let log = table.get(w).expect("tabulated");
    let mut power = SeriesQ::one(j);
    let mut k = 1u32;
    while (k as usize) * wt <= budget {
        power = power.mul_unchecked(log).scale(&int(k as i64).recip());
        let rest = budget - k as usize * wt;
        stack.push((w.clone(), k));
        // Any extension needs a later word, which is at least as long as w.
        let extendable = i + 1 < words.len() && words[i + 1].len() - 1 <= rest;
        if extendable {
            let product = prefix.mul_unchecked(&power);
            let c = product.coeff(j).clone();
            if !c.is_zero() {
                out.push((Monomial::from_sorted(stack.clone()), c));
            }
            for next in i + 1..words.len() {
                if words[next].len() - 1 > rest {
                    break;
                }
                walk_from(words, table, next, rest, j, &product, stack, out);
            }
        } else {
            let c = top_coefficient(prefix, &power, j);
            if !c.is_zero() {
                out.push((Monomial::from_sorted(stack.clone()), c));
            }
        }
        stack.pop();
        k += 1;
    }
}

/// `[x^j] (a · b)` without forming the full product.
fn top_coefficient(a: &SeriesQ, b: &SeriesQ, j: usize) -> Rational {
    let mut acc = Rational::zero();
    for i in 0..=j {
        let (x, y) = (a.coeff(i), b.coeff(j - i));
        if !x.is_zero() && !y.is_zero() {
            acc += x * y;
        }
    }
    acc
}

/// `P'_j = P_0 + ⋯ + P_{j-1}`.
pub fn cumulative_pj(p: u32, j: usize) -> Result<BlockPolynomial> {
    if j == 0 {
        return Err(Error::usage("P'_j needs j >= 1"));
    }
    let mut acc = BlockPolynomial::zero(p, j);
    for i in 0..j {
        acc = acc.add(&build_pj(p, i)?);
    }
    Ok(acc)
}

/// `P_j((|n|_w)_w)`, which equals `θ_p(j, n) / θ_p(0, n)`.
pub fn evaluate_p(poly: &BlockPolynomial, n: u64) -> Rational {
    poly.evaluate_at(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratcore::rational::ratio;

    fn w(s: &str, p: u32) -> Word {
        Word::parse(s, p).unwrap()
    }

    #[test]
    fn p0_and_p1() {
        assert_eq!(build_pj(2, 0).unwrap().to_string(), "1");
        assert_eq!(build_pj(2, 1).unwrap().to_string(), "1/2*X[10]");
    }

    #[test]
    fn p2_base_two() {
        assert_eq!(
            build_pj(2, 2).unwrap().to_string(),
            "-1/8*X[10] + 1/8*X[10]^2 + X[100] + 1/4*X[110]"
        );
    }

    #[test]
    fn p1_other_primes() {
        for p in [3u32, 5] {
            let p1 = build_pj(p, 1).unwrap();
            assert_eq!(p1.terms().len(), ((p - 1) * (p - 1)) as usize);
            for c in 1..p {
                for a in 0..p - 1 {
                    let m = Monomial::var(Word::new(p, vec![c, a]).unwrap());
                    let expect =
                        ratio(c as i64, c as i64 + 1) * ratio((p - a - 1) as i64, a as i64 + 1);
                    assert_eq!(p1.coefficient(&m), expect);
                }
            }
        }
    }

    #[test]
    fn series_for_single_variable() {
        let s = monomial_coefficient_series(&Monomial::var(w("10", 2)), 5).unwrap();
        let expect: Vec<Rational> = [(0, 1), (1, 2), (-1, 8), (1, 24), (-1, 64), (1, 160)]
            .iter()
            .map(|&(a, b)| ratio(a, b))
            .collect();
        assert_eq!(s.coeffs(), expect.as_slice());
        assert_eq!(
            monomial_coefficient_series(&Monomial::one(), 3).unwrap(),
            SeriesQ::one(3)
        );
    }

    #[test]
    fn x110_vanishes_at_six_l_plus_minus_one() {
        let s = monomial_coefficient_series(&Monomial::var(w("110", 2)), 13).unwrap();
        for j in [5, 7, 11, 13] {
            assert!(s.coeff(j).is_zero(), "j = {j}");
        }
        for j in [2, 3, 4, 6, 8, 9, 10, 12] {
            assert!(!s.coeff(j).is_zero(), "j = {j}");
        }
    }

    #[test]
    fn evaluation_small() {
        let p1 = build_pj(2, 1).unwrap();
        assert_eq!(evaluate_p(&p1, 2), ratio(1, 2));
        let p0 = build_pj(3, 0).unwrap();
        for n in 0..50 {
            assert_eq!(evaluate_p(&p0, n), int(1));
        }
    }

    #[test]
    fn cumulative_basics() {
        assert_eq!(cumulative_pj(2, 1).unwrap().to_string(), "1");
        assert!(cumulative_pj(2, 0).is_err());
        let c3 = cumulative_pj(2, 3).unwrap();
        assert_eq!(
            c3.coefficient(&Monomial::var(w("10", 2))),
            ratio(1, 2) - ratio(1, 8)
        );
    }
}
