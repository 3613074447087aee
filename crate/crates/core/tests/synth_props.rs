use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;

use ppk_core::ratcore::rational::{int, ratio};
use ppk_core::synth::{
    build_pj, cumulative_pj, evaluate_p, monomial_coefficient_series, monomials_up_to_weight,
    r_w_at_zero, r_w_closed, r_w_quotient, r_w_series, telescope_check, BlockPolynomial, Monomial,
};
use ppk_core::theta::{t_poly, RowTable};
use ppk_core::words::{enumerate_admissible, factor_count_of, Word};
use ppk_core::{RationalFunctionQ, SeriesQ};

fn word_in(p: u32, min_len: usize, max_len: usize) -> impl Strategy<Value = Word> {
    (1..p, prop::collection::vec(0..p, min_len - 1..max_len)).prop_map(move |(lead, rest)| {
        Word::new(p, std::iter::once(lead).chain(rest).collect()).unwrap()
    })
}

fn prime() -> impl Strategy<Value = u32> {
    prop::sample::select(vec![2u32, 3, 5, 7])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn r_w_is_one_at_zero(w in prime().prop_flat_map(|p| word_in(p, 1, 10))) {
        prop_assert_eq!(r_w_at_zero(&w).unwrap(), int(1));
    }

    #[test]
    fn closed_form_matches_quotient(w in prime().prop_flat_map(|p| word_in(p, 2, 12))) {
        prop_assume!(w.is_admissible());
        prop_assert_eq!(r_w_closed(&w).unwrap(), r_w_quotient(&w).unwrap());
    }

    #[test]
    fn telescoping_product(v in prop::sample::select(vec![2u32, 3, 5]).prop_flat_map(|p| word_in(p, 1, 12))) {
        prop_assert!(telescope_check(&v, 12).unwrap());
    }
}

#[test]
fn r_w_is_one_outside_admissible_set() {
    for p in [2u32, 3, 5] {
        for c in 1..p {
            assert_eq!(
                r_w_quotient(&Word::new(p, vec![c]).unwrap()).unwrap(),
                RationalFunctionQ::one()
            );
        }
        for w in enumerate_admissible(p, 4) {
            let top = w.concat(&Word::new(p, vec![p - 1]).unwrap());
            assert_eq!(
                r_w_quotient(&top).unwrap(),
                RationalFunctionQ::one(),
                "{top}"
            );
        }
    }
    assert!(r_w_closed(&Word::parse("11", 2).unwrap()).is_err());
    assert!(r_w_quotient(&Word::parse("01", 2).unwrap()).is_err());
}

#[test]
fn telescope_trivial_cases() {
    assert!(telescope_check(&Word::empty(2), 12).unwrap());
    assert!(telescope_check(&Word::parse("10010", 2).unwrap(), 12).unwrap());
}

#[test]
fn first_occurrence_is_sharp_up_to_weight_8() {
    for m in monomials_up_to_weight(2, 8) {
        let w = m.weight();
        let s = monomial_coefficient_series(&m, w).unwrap();
        assert!((0..w).all(|j| s.coeff(j).is_zero()), "{m}");
        assert!(!s.coeff(w).is_zero(), "{m}");
    }
}

#[test]
fn x110_gaps() {
    let m = Monomial::parse("110", 2).unwrap();
    let s = monomial_coefficient_series(&m, 13).unwrap();
    for j in [5, 7, 11, 13] {
        assert!(s.coeff(j).is_zero(), "j = {j}");
    }
    for j in [2, 3, 4, 6, 8] {
        assert!(!s.coeff(j).is_zero(), "j = {j}");
    }
}

fn polys(p: u32, j_max: usize) -> Vec<BlockPolynomial> {
    (0..=j_max).map(|j| build_pj(p, j).unwrap()).collect()
}

#[test]
fn monomial_weights_bounded_by_j() {
    for (p, j_max) in [(2u32, 8usize), (3, 4), (5, 3)] {
        for poly in polys(p, j_max) {
            let words = enumerate_admissible(p, poly.j);
            for m in poly.terms().keys() {
                assert!(m.weight() <= poly.j, "p = {p}: {m} in P_{}", poly.j);
                assert!(m.factors().iter().all(|(w, _)| words.contains(w)));
            }
        }
    }
}

#[test]
fn row_sum_through_polynomials() {
    for (p, j_max) in [(2u32, 8usize), (3, 5)] {
        let ps = polys(p, j_max);
        for n in 0..512u64 {
            let row = t_poly(n, p);
            assert!(row.degree() <= j_max);
            let total: ppk_core::Rational = ps.iter().map(|poly| evaluate_p(poly, n)).sum();
            assert_eq!(
                total * int(row.coeff(0) as i64),
                int(n as i64 + 1),
                "p = {p}, n = {n}"
            );
        }
    }
}

#[test]
fn exp_log_consistency_below_256() {
    let order = 7;
    let ps = polys(2, order);
    let words = enumerate_admissible(2, order);
    let mut table = RowTable::new(2);
    let series: HashMap<Word, SeriesQ> = words
        .iter()
        .map(|w| (w.clone(), r_w_series(&mut table, w, order).unwrap()))
        .collect();
    for n in 0..256u64 {
        let mut product = SeriesQ::one(order);
        for w in &words {
            let k = factor_count_of(n, w).unwrap();
            if k > 0 {
                product = product.mul(&series[w].pow(k as u32)).unwrap();
            }
        }
        for (j, poly) in ps.iter().enumerate() {
            assert_eq!(product.coeff(j), &evaluate_p(poly, n), "n = {n}, j = {j}");
        }
    }
}

#[test]
fn first_polynomial_for_odd_primes() {
    for p in [3u32, 5] {
        let p1 = build_pj(p, 1).unwrap();
        for c in 1..p {
            for a in 0..p - 1 {
                let m = Monomial::var(Word::new(p, vec![c, a]).unwrap());
                let expected =
                    ratio(c as i64, c as i64 + 1) * ratio((p - a - 1) as i64, a as i64 + 1);
                assert_eq!(p1.coefficient(&m), expected, "p = {p}, ca = {c}{a}");
            }
        }
        assert_eq!(p1.len(), ((p - 1) * (p - 1)) as usize);
    }
}

#[test]
fn base_polynomials() {
    let p0 = build_pj(2, 0).unwrap();
    assert_eq!(p0.len(), 1);
    assert_eq!(p0.coefficient(&Monomial::one()), int(1));
    assert_eq!(build_pj(2, 1).unwrap().to_string(), "1/2*X[10]");
    assert_eq!(
        build_pj(2, 2).unwrap().to_string(),
        "-1/8*X[10] + 1/8*X[10]^2 + X[100] + 1/4*X[110]"
    );
    assert_eq!(evaluate_p(&build_pj(2, 1).unwrap(), 2), ratio(1, 2));
    for n in 0..64 {
        assert!(evaluate_p(&p0, n).is_one());
    }
}

#[test]
fn cumulative_polynomials() {
    assert!(cumulative_pj(2, 0).is_err());
    assert_eq!(
        cumulative_pj(2, 1).unwrap().terms(),
        build_pj(2, 0).unwrap().terms()
    );
    let x10 = Monomial::parse("10", 2).unwrap();
    let mut partial = ppk_core::Rational::zero();
    for j in 1..=8 {
        let c = cumulative_pj(2, j + 1).unwrap();
        let sign = if j % 2 == 1 { 1 } else { -1 };
        partial += ratio(sign, j as i64 * (1 << j));
        assert_eq!(c.coefficient(&x10), partial, "j = {j}");
    }
}

#[test]
fn json_round_trip() {
    for j in 0..=5 {
        let poly = build_pj(2, j).unwrap();
        let value = poly.to_json();
        assert_eq!(value["p"], 2);
        assert_eq!(value["j"], j);
        let back = BlockPolynomial::from_json(&value).unwrap();
        assert_eq!(back.terms(), poly.terms());
    }
    let p2 = build_pj(2, 2).unwrap().to_json();
    assert_eq!(p2["terms"][0]["monomial"][0]["word"], "10");
    assert_eq!(p2["terms"][0]["monomial"][0]["exp"], 1);
    assert_eq!(p2["terms"][0]["coeff"], "-1/8");
}

#[test]
fn monomial_enumeration() {
    let two: Vec<String> = monomials_up_to_weight(2, 2)
        .iter()
        .map(|m| m.to_string())
        .collect();
    assert_eq!(two, ["1", "X[10]", "X[10]^2", "X[100]", "X[110]"]);
    assert_eq!(monomials_up_to_weight(2, 0), vec![Monomial::one()]);
    let counts: Vec<usize> = (0..=9)
        .map(|j| monomials_up_to_weight(2, j).len())
        .collect();
    assert_eq!(counts, [1, 2, 5, 12, 30, 72, 176, 420, 1005, 2378]);
    let x = Monomial::parse("10*110", 2).unwrap();
    assert_eq!(x.weight(), 3);
    assert_eq!(BigInt::from(x.degree()), BigInt::from(2));
}
