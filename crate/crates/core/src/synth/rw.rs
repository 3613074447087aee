//! The rational functions `r_w = T̄_w T̄_{w_LR} / (T̄_{w_R} T̄_{w_L})`.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::ratcore::{PolyQ, Rational, RationalFunctionQ, SeriesQ};
use crate::theta::RowTable;
use crate::words::{factor_count, Word};

/// The four normalized row polynomials entering `r_w`.
struct Parts {
    w: PolyQ,
    l: PolyQ,
    r: PolyQ,
    lr: PolyQ,
}

fn parts(table: &mut RowTable, w: &Word) -> Result<Parts> {
    let (l, r, lr) = w.truncations()?;
    Ok(Parts {
        w: table.tbar_word(w),
        l: table.tbar_word(&l),
        r: table.tbar_word(&r),
        lr: table.tbar_word(&lr),
    })
}

fn require_w_tilde(w: &Word) -> Result<()> {
    if !w.in_w_tilde() {
        return Err(Error::domain(format!(
            "{w} is not in W~ (must be nonempty with a nonzero leading digit)"
        )));
    }
    Ok(())
}

fn require_admissible(w: &Word) -> Result<()> {
    if !w.is_admissible() {
        return Err(Error::domain(format!("{w} is not an admissible word")));
    }
    Ok(())
}

/// `r_w` from its defining quotient, in canonical form.
pub fn r_w_quotient(w: &Word) -> Result<RationalFunctionQ> {
    r_w_quotient_with(&mut RowTable::new(w.base()), w)
}

pub fn r_w_quotient_with(table: &mut RowTable, w: &Word) -> Result<RationalFunctionQ> {
    require_w_tilde(w)?;
    let (l, r, lr) = w.truncations()?;
    let (tw, tl, tr, tlr) = (
        table.row_of_word(w),
        table.row_of_word(&l),
        table.row_of_word(&r),
        table.row_of_word(&lr),
    );
    // T̄_w T̄_LR / (T̄_R T̄_L) with the constant terms moved across.
    let num = scaled(
        convolve(&tw, &tlr),
        &BigInt::from(tr[0] as u128 * tl[0] as u128),
    );
    let den = scaled(
        convolve(&tr, &tl),
        &BigInt::from(tw[0] as u128 * tlr[0] as u128),
    );
    RationalFunctionQ::from_integer_parts(num, den)
}

fn convolve(a: &[u64], b: &[u64]) -> Vec<BigInt> {
    let mut out = vec![0u128; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x as u128 * y as u128;
        }
    }
    out.into_iter().map(BigInt::from).collect()
}

fn scaled(v: Vec<BigInt>, c: &BigInt) -> Vec<BigInt> {
    v.into_iter().map(|x| x * c).collect()
}

/// The leading correction coefficient
/// `α = p^{μ-2} · w_{μ-1}/(w_{μ-1}+1) · (p-w_0-1)/(w_0+1) · Π_{2≤d≤p} d^{-2|w'|_{d-1}}`
/// with `w'` the interior digits.
pub fn alpha(w: &Word) -> Result<Rational> {
    require_admissible(w)?;
    let p = w.base() as i64;
    let mu = w.len();
    let r = |n: i64, d: i64| Rational::new(BigInt::from(n), BigInt::from(d));
    let c = w.first().unwrap() as i64;
    let a = w.last().unwrap() as i64;
    let mut value = r(p, 1).pow(mu as i32 - 2) * r(c, c + 1) * r(p - a - 1, a + 1);
    let interior = &w.digits()[1..mu - 1];
    for &digit in interior {
        // Each interior digit e contributes (e+1)^{-2}.
        value /= r((digit as i64 + 1).pow(2), 1);
    }
    Ok(value)
}

/// `r_w = 1 + α x^{μ-1} / (T̄_{w_L} T̄_{w_R})` for admissible `w`.
pub fn r_w_closed(w: &Word) -> Result<RationalFunctionQ> {
    r_w_closed_with(&mut RowTable::new(w.base()), w)
}

pub fn r_w_closed_with(table: &mut RowTable, w: &Word) -> Result<RationalFunctionQ> {
    require_admissible(w)?;
    let alpha = alpha(w)?;
    let (l, r, _) = w.truncations()?;
    let (tl, tr) = (table.row_of_word(&l), table.row_of_word(&r));
    // With α = a/b and T̄_L T̄_R = C/c0: r_w = (bC + a c0 x^{μ-1}) / (bC).
    let den = scaled(convolve(&tl, &tr), alpha.denom());
    let mut num = den.clone();
    let shift = w.len() - 1;
    if num.len() <= shift {
        num.resize(shift + 1, BigInt::zero());
    }
    num[shift] += alpha.numer() * BigInt::from(tl[0] as u128 * tr[0] as u128);
    RationalFunctionQ::from_integer_parts(num, den)
}

/// Power series of `r_w` to the given order, computed without the
/// polynomial gcd of the canonical form.
pub fn r_w_series(table: &mut RowTable, w: &Word, order: usize) -> Result<SeriesQ> {
    require_w_tilde(w)?;
    let t = parts(table, w)?;
    let num = SeriesQ::from_poly(&(&t.w * &t.lr), order);
    let den = SeriesQ::from_poly(&(&t.r * &t.l), order);
    num.div(&den)
}

/// Checks `T̄_v = Π_{w ∈ W~} r_w^{|v|_w}` as series of the given order.
pub fn telescope_check(v: &Word, order: usize) -> Result<bool> {
    if !v.is_empty() && !v.in_w_tilde() {
        return Err(Error::domain(format!("{v} is not in W~ or ε")));
    }
    let mut table = RowTable::new(v.base());
    let lhs = SeriesQ::from_poly(&table.tbar_word(v), order);
    let mut rhs = SeriesQ::one(order);
    // Factors of v led by a nonzero digit; every occurrence lies inside v.
    let mut seen = std::collections::BTreeSet::new();
    let d = v.digits();
    for start in 0..d.len() {
        if d[start] == 0 {
            continue;
        }
        for end in start + 1..=d.len() {
            seen.insert(Word::new(v.base(), d[start..end].to_vec())?);
        }
    }
    for w in &seen {
        let k = factor_count(v, w)?;
        let r = r_w_series(&mut table, w, order)?;
        rhs = rhs.mul(&r.pow(k as u32))?;
    }
    Ok(lhs == rhs)
}

/// `r_w(0) = 1` holds for every `w`; exposed for property tests.
pub fn r_w_at_zero(w: &Word) -> Result<Rational> {
    let r = r_w_quotient(w)?;
    r.eval(&Rational::zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratcore::rational::ratio;

    fn w(s: &str, p: u32) -> Word {
        Word::parse(s, p).unwrap()
    }

    fn rf(num: &[(i64, i64)], den: &[(i64, i64)]) -> RationalFunctionQ {
        let p = |c: &[(i64, i64)]| PolyQ::new(c.iter().map(|&(n, d)| ratio(n, d)).collect());
        RationalFunctionQ::new(p(num), p(den)).unwrap()
    }

    #[test]
    fn listed_r_w_for_base_two() {
        // r_10 = 1 + x/2
        assert_eq!(
            r_w_quotient(&w("10", 2)).unwrap(),
            rf(&[(1, 1), (1, 2)], &[(1, 1)])
        );
        // r_100 = 1 + x^2/(1 + x/2)
        assert_eq!(
            r_w_quotient(&w("100", 2)).unwrap(),
            rf(&[(1, 1), (1, 2), (1, 1)], &[(1, 1), (1, 2)])
        );
        // r_110 = 1 + (x^2/4)/(1 + x/2)
        assert_eq!(
            r_w_quotient(&w("110", 2)).unwrap(),
            rf(&[(1, 1), (1, 2), (1, 4)], &[(1, 1), (1, 2)])
        );
        // r_1000 = 1 + 2x^3/(1 + x/2 + x^2)
        assert_eq!(
            r_w_quotient(&w("1000", 2)).unwrap(),
            rf(&[(1, 1), (1, 2), (1, 1), (2, 1)], &[(1, 1), (1, 2), (1, 1)])
        );
        // r_1010 = 1 + (x^3/2)/(1 + x/2)^2
        assert_eq!(
            r_w_quotient(&w("1010", 2)).unwrap(),
            rf(&[(1, 1), (1, 1), (1, 4), (1, 2)], &[(1, 1), (1, 1), (1, 4)])
        );
        // r_1100 = 1 + (x^3/2)/((1 + x/2 + x^2)(1 + x/2 + x^2/4))
        let den = &PolyQ::new(vec![ratio(1, 1), ratio(1, 2), ratio(1, 1)])
            * &PolyQ::new(vec![ratio(1, 1), ratio(1, 2), ratio(1, 4)]);
        let num = &den + &PolyQ::monomial(ratio(1, 2), 3);
        assert_eq!(
            r_w_quotient(&w("1100", 2)).unwrap(),
            RationalFunctionQ::new(num, den).unwrap()
        );
    }

    #[test]
    fn trivial_r_w_outside_w() {
        for (s, p) in [
            ("1", 2),
            ("11", 2),
            ("101", 2),
            ("2", 3),
            ("12", 3),
            ("1202", 3),
            ("344", 5),
        ] {
            assert_eq!(
                r_w_quotient(&w(s, p)).unwrap(),
                RationalFunctionQ::one(),
                "{s}"
            );
        }
    }

    #[test]
    fn alpha_examples() {
        assert_eq!(alpha(&w("1010", 2)).unwrap(), ratio(1, 2));
        for p in [3u32, 5] {
            for c in 1..p {
                for a in 0..p - 1 {
                    let word = Word::new(p, vec![c, a]).unwrap();
                    let expect =
                        ratio(c as i64, c as i64 + 1) * ratio((p - a - 1) as i64, a as i64 + 1);
                    assert_eq!(alpha(&word).unwrap(), expect);
                }
            }
        }
        assert!(alpha(&w("101", 2)).is_err());
    }

    #[test]
    fn closed_form_1010() {
        let r = r_w_closed(&w("1010", 2)).unwrap();
        assert_eq!(r, r_w_quotient(&w("1010", 2)).unwrap());
    }

    #[test]
    fn domain_errors() {
        assert!(r_w_quotient(&w("01", 2)).is_err());
        assert!(r_w_quotient(&Word::empty(2)).is_err());
        assert!(r_w_closed(&w("11", 2)).is_err());
    }

    #[test]
    fn telescope_example_and_empty() {
        assert!(telescope_check(&w("10010", 2), 10).unwrap());
        assert!(telescope_check(&Word::empty(2), 5).unwrap());
    }
}
