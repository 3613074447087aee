//! Term-count bounds, root profiles of `r_w`, and the convergence
//! behaviour of the coefficient sequences of `log r_w`.

mod bounds;
mod classify;
mod roots;

pub use bounds::{
    term_bound_asymptotic, term_bound_series, term_bound_series_exp, AsymptoticConstants,
};
pub use classify::{
    classification_csv, classify_word, closed_form_family, coefficient_sum, family_members,
    family_of, format_complex, log_rat_coeff_exact, q_roots, r_at_one_text, scan_convergent_words,
    unit_circle_certified, BoundaryWord, Classification, CoefficientSum, Family, FamilyReport,
    FamilyVariant, QRoots, RootProfile, ScanReport, SumFactor, CSV_HEADER, DEFAULT_TOL,
    MAX_SCAN_LEN,
};
pub use roots::{aberth, factored_roots, poly_roots, simple_roots, FactorRoots, Root};
