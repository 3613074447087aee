//! Exact block-count polynomials for Pascal's triangle modulo prime powers.
//!
//! `θ_p(j, n)` counts the entries of row `n` of Pascal's triangle that are
//! exactly divisible by `p^j`. The ratio `θ_p(j, n) / θ_p(0, n)` is a
//! polynomial `P_j` in the factor counts `|n|_w` of admissible base-`p`
//! words `w`; this crate synthesizes `P_j` from the logarithms of rational
//! generating functions `r_w` and checks it against brute-force row scans.

pub mod analysis;
pub mod arith;
pub mod error;
pub mod oracle;
pub mod ratcore;
pub mod synth;
pub mod theta;
pub mod words;

pub use error::{Error, ParseError, Result};
pub use ratcore::{PolyQ, Rational, RationalFunctionQ, SeriesQ};
pub use words::Word;
