//! Row counts `θ_p(j, n)` through their generating polynomials
//! `T_n(x) = Σ_j θ_p(j, n) x^j`, the companion counts `ψ_p`, and the
//! rarefied table `θ̃_p(k, n)` with its infinite-product form.

use std::collections::HashMap;
use std::fmt::Write as _;

use num_bigint::BigInt;

use crate::arith::{digit_sum, nu};
use crate::ratcore::{PolyQ, Rational};
use crate::words::Word;

/// `T_n` for one row, with nonnegative integer coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RowPolynomial {
    pub n: u64,
    pub p: u32,
    coeffs: Vec<u64>,
}

impl RowPolynomial {
    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn coeff(&self, j: usize) -> u64 {
        self.coeffs.get(j).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// `T_n(1)`, the row length.
    pub fn at_one(&self) -> u64 {
        self.coeffs.iter().sum()
    }

    pub fn to_poly(&self) -> PolyQ {
        PolyQ::new(
            self.coeffs
                .iter()
                .map(|&c| Rational::from_integer(BigInt::from(c)))
                .collect(),
        )
    }

    /// `T̄_n = T_n / T_n(0)`.
    pub fn normalized(&self) -> PolyQ {
        let c0 = Rational::from_integer(BigInt::from(self.coeffs[0]));
        self.to_poly().scale(&c0.recip())
    }
}

/// Memo table for `T_v` keyed by digit strings, confined to one owner.
#[derive(Debug)]
pub struct RowTable {
    p: u32,
    cache: HashMap<Vec<u32>, Vec<u64>>,
}

impl RowTable {
    pub fn new(p: u32) -> Self {
        RowTable {
            p,
            cache: HashMap::new(),
        }
    }

    pub fn row(&mut self, n: u64) -> RowPolynomial {
        let coeffs = self.coeffs_for(Word::expand(n, self.p).digits());
        RowPolynomial {
            n,
            p: self.p,
            coeffs,
        }
    }

    /// `T_v` for a word, read as the base-`p` integer it represents.
    pub fn row_of_word(&mut self, w: &Word) -> Vec<u64> {
        let lead = w.digits().iter().position(|&d| d != 0).unwrap_or(w.len());
        self.coeffs_for(&w.digits()[lead..])
    }

    pub fn tbar_word(&mut self, w: &Word) -> PolyQ {
        let c = self.row_of_word(w);
        let c0 = Rational::from_integer(BigInt::from(c[0]));
        PolyQ::new(
            c.iter()
                .map(|&v| Rational::from_integer(BigInt::from(v)) / &c0)
                .collect(),
        )
    }

    // `digits` is canonical: no leading zero.
    fn coeffs_for(&mut self, digits: &[u32]) -> Vec<u64> {
        if digits.len() <= 1 {
            return vec![digits.first().map_or(1, |&a| a as u64 + 1)];
        }
        if let Some(c) = self.cache.get(digits) {
            return c.clone();
        }
        let p = self.p as u64;
        let a = *digits.last().unwrap() as u64;
        let head = &digits[..digits.len() - 1];
        // T_{pn+a} = (a+1) T_n + (p-a-1) x^{ν(n)+1} T_{n-1}
        let t_head = self.coeffs_for(head);
        let mut out: Vec<u64> = t_head.iter().map(|&c| c * (a + 1)).collect();
        if a + 1 < p {
            let shift = head.iter().rev().take_while(|&&d| d == 0).count() + 1;
            let prev = decrement(head, self.p);
            let t_prev = self.coeffs_for(&prev);
            if out.len() < t_prev.len() + shift {
                out.resize(t_prev.len() + shift, 0);
            }
            for (k, c) in t_prev.iter().enumerate() {
                out[k + shift] += (p - a - 1) * c;
            }
        }
        while out.len() > 1 && out.last() == Some(&0) {
            out.pop();
        }
        self.cache.insert(digits.to_vec(), out.clone());
        out
    }
}

/// Digits of `v - 1` for a canonical nonzero digit string, canonicalized.
fn decrement(digits: &[u32], p: u32) -> Vec<u32> {
    let mut d = digits.to_vec();
    for k in (0..d.len()).rev() {
        if d[k] > 0 {
            d[k] -= 1;
            break;
        }
        d[k] = p - 1;
    }
    let lead = d.iter().position(|&x| x != 0).unwrap_or(d.len());
    d.drain(..lead);
    d
}

/// `T_n(x)` for base `p`.
pub fn t_poly(n: u64, p: u32) -> RowPolynomial {
    RowTable::new(p).row(n)
}

/// `θ_p(j, n)`.
pub fn theta(p: u32, j: usize, n: u64) -> u64 {
    t_poly(n, p).coeff(j)
}

/// `T̄_n`.
pub fn tbar(n: u64, p: u32) -> PolyQ {
    t_poly(n, p).normalized()
}

/// `T̄_w` for a word; `T̄_ε = 1`.
pub fn tbar_word(w: &Word) -> PolyQ {
    RowTable::new(w.base()).tbar_word(w)
}

/// `ψ_p(j, n)`; zero for negative arguments.
pub fn psi(p: u32, j: i64, n: i64) -> u64 {
    if n < 0 || j < 0 {
        return 0;
    }
    let shift = nu(p, n as u64 + 1) as i64;
    if j < shift {
        0
    } else {
        theta(p, (j - shift) as usize, n as u64)
    }
}

/// `θ̃_p(k, n)` by its definition in terms of `θ_p`.
pub fn tilde_theta_from_theta(p: u32, k: u64, n: u64) -> u64 {
    let s = digit_sum(p, n);
    let step = p as u64 - 1;
    if k < s || (k - s) % step != 0 {
        return 0;
    }
    theta(p, ((k - s) / step) as usize, n)
}

/// `θ̃_p(k, n)` for `k ≤ k_max`, `n ≤ n_max`, filled by the simplified
/// recurrence `θ̃(k, pn+a) = (a+1) θ̃(k-a, n) + (p-a-1) θ̃(k-p-a, n-1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TildeTable {
    pub p: u32,
    /// `entries[k][n]`
    entries: Vec<Vec<u64>>,
}

impl TildeTable {
    pub fn build(p: u32, k_max: usize, n_max: usize) -> Self {
        let mut entries = vec![vec![0u64; n_max + 1]; k_max + 1];
        entries[0][0] = 1;
        let pu = p as usize;
        for n in 1..=n_max {
            let (q, a) = (n / pu, n % pu);
            for k in 1..=k_max {
                let mut v = 0;
                if k >= a {
                    v += (a as u64 + 1) * entries[k - a][q];
                }
                if q >= 1 && k >= pu + a {
                    v += (p as u64 - a as u64 - 1) * entries[k - pu - a][q - 1];
                }
                entries[k][n] = v;
            }
        }
        TildeTable { p, entries }
    }

    pub fn get(&self, k: usize, n: usize) -> u64 {
        self.entries[k][n]
    }

    pub fn k_max(&self) -> usize {
        self.entries.len() - 1
    }

    pub fn n_max(&self) -> usize {
        self.entries[0].len() - 1
    }

    pub fn rows(&self) -> &[Vec<u64>] {
        &self.entries
    }

    /// Rows `k`, columns `n`, blank for zero; trailing all-zero rows dropped.
    pub fn render(&self) -> String {
        let mut last = self.k_max();
        while last > 0 && self.entries[last].iter().all(|&v| v == 0) {
            last -= 1;
        }
        let width = self
            .entries
            .iter()
            .flatten()
            .map(|v| v.to_string().len())
            .max()
            .unwrap_or(1)
            .max(self.n_max().to_string().len());
        let kw = last.to_string().len();
        let mut out = String::new();
        let _ = write!(out, "{:>kw$} |", "");
        for n in 0..=self.n_max() {
            let _ = write!(out, " {n:>width$}");
        }
        out.push('\n');
        for (k, row) in self.entries.iter().enumerate().take(last + 1) {
            let mut line = format!("{k:>kw$} |");
            for &v in row {
                if v == 0 {
                    let _ = write!(line, " {:>width$}", "");
                } else {
                    let _ = write!(line, " {v:>width$}");
                }
            }
            out.push_str(line.trim_end());
            out.push('\n');
        }
        out
    }
}

/// `θ̃_p(k, n)`, single value.
pub fn tilde_theta(p: u32, k: usize, n: usize) -> u64 {
    TildeTable::build(p, k, n).get(k, n)
}

/// Coefficients `[x^k z^n]` of `Π_{i≥0} (1 + x z^{p^i} + … + x^{p-1} z^{(p-1)p^i})^2`
/// for `k ≤ x_order`, `n ≤ z_order`, indexed `[k][n]`.
pub fn tilde_product_gf(p: u32, x_order: usize, z_order: usize) -> Vec<Vec<u64>> {
    let mut acc = vec![vec![0u64; z_order + 1]; x_order + 1];
    acc[0][0] = 1;
    let mut step = 1usize;
    while step <= z_order {
        // Each factor appears squared.
        for _ in 0..2 {
            let mut next = vec![vec![0u64; z_order + 1]; x_order + 1];
            for k in 0..=x_order {
                for n in 0..=z_order {
                    let c = acc[k][n];
                    if c == 0 {
                        continue;
                    }
                    for d in 0..p as usize {
                        let (kk, nn) = (k + d, n + d * step);
                        if kk > x_order || nn > z_order {
                            break;
                        }
                        next[kk][nn] += c;
                    }
                }
            }
            acc = next;
        }
        step = match step.checked_mul(p as usize) {
            Some(s) => s,
            None => break,
        };
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_rows_base_two() {
        let expect: [&[u64]; 10] = [
            &[1],
            &[2],
            &[2, 1],
            &[4],
            &[2, 1, 2],
            &[4, 2],
            &[4, 2, 1],
            &[8],
            &[2, 1, 2, 4],
            &[4, 2, 4],
        ];
        for (n, e) in expect.iter().enumerate() {
            assert_eq!(t_poly(n as u64, 2).coeffs(), *e, "T_{n}");
        }
    }

    #[test]
    fn constant_rows_below_prime_powers() {
        for p in [2u32, 3, 5, 7] {
            for c in 1..p as u64 {
                for t in 0..6 {
                    let n = c * (p as u64).pow(t) - 1;
                    assert_eq!(t_poly(n, p).coeffs(), &[n + 1]);
                }
            }
        }
    }

    #[test]
    fn glaisher_and_row_two() {
        assert_eq!(theta(2, 0, 3), 4);
        assert_eq!(theta(2, 2, 6), 1);
        assert_eq!(
            tbar(2, 2),
            PolyQ::new(vec![
                Rational::from_integer(1.into()),
                Rational::new(1.into(), 2.into())
            ])
        );
        assert_eq!(tbar_word(&Word::empty(2)), PolyQ::one());
    }

    #[test]
    fn psi_identity_cases() {
        assert_eq!(psi(2, 3, -1), 0);
        assert_eq!(psi(2, 1, 3), 0);
        // ν_2(3) = 0 so ψ_2(j, 2) = θ_2(j, 2)
        assert_eq!(psi(2, 1, 2), theta(2, 1, 2));
    }

    #[test]
    fn tilde_cells_from_tables() {
        assert_eq!(tilde_theta(2, 2, 3), 4);
        assert_eq!(tilde_theta(3, 2, 4), 4);
        assert_eq!(tilde_theta(5, 4, 8), 8);
    }

    #[test]
    fn product_corner_cells() {
        let t = tilde_product_gf(2, 3, 3);
        assert_eq!(t[0][0], 1);
        assert_eq!(t[1][1], 2);
    }

    #[test]
    fn render_blank_zeros() {
        let t = TildeTable::build(2, 2, 3);
        let s = t.render();
        let lines: Vec<&str> = s.lines().collect();
        assert_eq!(lines[1], "0 | 1");
        assert_eq!(lines[2], "1 |   2 2");
        assert_eq!(lines[3], "2 |     1 4");
    }
}
