//! Exact rational arithmetic: numbers, dense polynomials, truncated power
//! series and rational functions.

pub mod poly;
pub mod ratfunc;
pub mod rational;
pub mod series;

pub use poly::PolyQ;
pub use ratfunc::RationalFunctionQ;
pub use rational::Rational;
pub use series::SeriesQ;

use crate::error::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeriesOp {
    Add,
    Mul,
}

pub fn series_arith(a: &SeriesQ, b: &SeriesQ, op: SeriesOp) -> Result<SeriesQ> {
    match op {
        SeriesOp::Add => a.add(b),
        SeriesOp::Mul => a.mul(b),
    }
}

pub fn series_div(a: &SeriesQ, b: &SeriesQ) -> Result<SeriesQ> {
    a.div(b)
}

pub fn series_log(f: &SeriesQ) -> Result<SeriesQ> {
    f.log()
}

pub fn series_exp(g: &SeriesQ) -> Result<SeriesQ> {
    g.exp()
}

pub fn ratfunc_eval(r: &RationalFunctionQ, x: &Rational) -> Result<Rational> {
    r.eval(x)
}
