use proptest::prelude::*;

use ppk_core::oracle::{
    column_check, column_density_estimate, column_histogram, nu_by_direct_factorization,
    row_counts_bruteforce, valuation, verify_rows, verify_valuations,
};
use ppk_core::ratcore::rational::to_f64;
use ppk_core::theta::t_poly;

#[test]
fn rows_match_row_polynomials() {
    for p in [2u32, 3, 5] {
        let report = verify_rows(p, 512).unwrap();
        assert!(report.passed, "p = {p}: {:?}", report.first_counterexample);
        for n in 0..512u64 {
            let row = row_counts_bruteforce(p, n).unwrap();
            assert_eq!(row.iter().sum::<u64>(), n + 1);
            assert_eq!(row, t_poly(n, p).coeffs());
        }
    }
    assert_eq!(row_counts_bruteforce(2, 8).unwrap(), [2, 1, 2, 4]);
    assert_eq!(row_counts_bruteforce(2, 3).unwrap(), [4]);
}

#[test]
fn valuation_routes_agree_exhaustively() {
    for p in [2u32, 3, 5] {
        let report = verify_valuations(p, 1024).unwrap();
        assert!(report.passed);
        assert_eq!(report.checked, 1024 * 1025 / 2);
    }
}

#[test]
fn direct_factorization_spot_checks() {
    for p in [2u32, 3, 5, 7] {
        for n in 0..=64u64 {
            for t in 0..=n {
                let v = valuation(n, t, p).unwrap();
                assert_eq!(v.by_borrows, nu_by_direct_factorization(n, t, p).unwrap());
            }
        }
    }
    assert_eq!(valuation(4, 2, 2).unwrap().by_borrows, 1);
    assert_eq!(valuation(9, 0, 3).unwrap().by_digit_sums, 0);
    assert!(valuation(2, 3, 2).is_err());
}

proptest! {
    #[test]
    fn valuation_routes_agree_on_large_rows(n in 0u64..1 << 48, frac in 0.0f64..=1.0, p in prop::sample::select(vec![2u32, 3, 5, 7, 11])) {
        let t = ((n as f64) * frac) as u64;
        let v = valuation(n, t.min(n), p).unwrap();
        prop_assert!(v.agree());
    }
}

#[test]
fn column_densities_small_t() {
    let m = 1 << 20;
    let e0 = column_density_estimate(2, 0, m).unwrap();
    assert!((to_f64(&e0.estimate) - 0.5).abs() < 5e-3);
    let e1 = column_density_estimate(2, 1, m).unwrap();
    assert!((to_f64(&e1.estimate) - 0.25).abs() < 5e-3);
    let hist = column_histogram(7, m);
    assert_eq!(hist.iter().sum::<u64>(), m);
    let zero = column_check(0, 4, 1 << 12).unwrap();
    assert_eq!(zero.rows[0].empirical, 1.0);
    assert!(zero.rows[1..]
        .iter()
        .all(|r| r.empirical == 0.0 && r.deviation == 0.0));
    assert!(zero.passed);
}

#[test]
fn column_prediction_for_t2_at_j2() {
    // -1/8·1 + 1/8·1 + |2|_{011} + 1/4·|2|_{001} = 1/4, times 2^{-1}.
    let report = column_check(2, 2, 1 << 20).unwrap();
    assert_eq!(
        report.rows[2].predicted,
        ppk_core::ratcore::rational::ratio(1, 8)
    );
    assert!(report.passed);
}
