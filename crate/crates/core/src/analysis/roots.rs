//! Numerical roots of rational polynomials.
//!
//! Each square-free factor from Yun's decomposition is solved with the
//! Aberth–Ehrlich simultaneous iteration, so every root returned is simple
//! within its factor and multiplicities are exact.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ratcore::rational::to_f64;
use crate::ratcore::PolyQ;

const MAX_ITER: usize = 1000;
const STEP_TOL: f64 = 1e-14;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Root {
    #[serde(serialize_with = "ser_complex")]
    pub x: Complex64,
    pub multiplicity: u32,
}

pub(crate) fn ser_complex<S: serde::Serializer>(
    z: &Complex64,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeTuple;
    let mut t = s.serialize_tuple(2)?;
    t.serialize_element(&z.re)?;
    t.serialize_element(&z.im)?;
    t.end()
}

/// Roots of one square-free factor of a polynomial.
#[derive(Debug, Clone)]
pub struct FactorRoots {
    pub factor: PolyQ,
    pub multiplicity: u32,
    pub roots: Vec<Complex64>,
}

/// Square-free decomposition with the roots of each factor.
pub fn factored_roots(poly: &PolyQ) -> Result<Vec<FactorRoots>> {
    if poly.is_zero() {
        return Err(Error::domain("the zero polynomial has no isolated roots"));
    }
    let mut out = Vec::new();
    for (factor, multiplicity) in poly.square_free_decomposition() {
        if factor.degree().unwrap_or(0) == 0 {
            continue;
        }
        let roots = simple_roots(&factor)?;
        out.push(FactorRoots {
            factor,
            multiplicity,
            roots,
        });
    }
    Ok(out)
}

/// Roots of a polynomial known to be square-free.
pub fn simple_roots(poly: &PolyQ) -> Result<Vec<Complex64>> {
    let coeffs: Vec<f64> = poly.monic().coeffs().iter().map(to_f64).collect();
    aberth(&coeffs)
}

/// All complex roots of `poly` with multiplicities, sorted by modulus then
/// argument.
pub fn poly_roots(poly: &PolyQ) -> Result<Vec<Root>> {
    let mut out: Vec<Root> = factored_roots(poly)?
        .into_iter()
        .flat_map(|f| {
            f.roots.into_iter().map(move |x| Root {
                x,
                multiplicity: f.multiplicity,
            })
        })
        .collect();
    sort_roots(&mut out);
    Ok(out)
}

pub(crate) fn sort_roots(roots: &mut [Root]) {
    roots.sort_by(|a, b| {
        a.x.norm()
            .partial_cmp(&b.x.norm())
            .unwrap()
            .then(a.x.arg().partial_cmp(&b.x.arg()).unwrap())
    });
}

fn horner(coeffs: &[f64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for &c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

/// Roots of the monic polynomial with ascending coefficients `coeffs`.
pub fn aberth(coeffs: &[f64]) -> Result<Vec<Complex64>> {
    let d = coeffs.len() - 1;
    match d {
        0 => return Ok(Vec::new()),
        1 => return Ok(vec![Complex64::new(-coeffs[0], 0.0)]),
        _ => {}
    }
    // Fujiwara bound on the root moduli.
    let bound = (0..d)
        .map(|i| {
            let c = coeffs[i].abs();
            let k = d - i;
            if i == 0 {
                (c / 2.0).powf(1.0 / k as f64)
            } else {
                c.powf(1.0 / k as f64)
            }
        })
        .fold(0.0, f64::max)
        * 2.0;
    let radius = if bound > 0.0 { bound } else { 1.0 };
    let mut z: Vec<Complex64> = (0..d)
        .map(|k| {
            Complex64::from_polar(
                radius * 0.5,
                std::f64::consts::TAU * k as f64 / d as f64 + 0.4,
            )
        })
        .collect();
    for _ in 0..MAX_ITER {
        let mut worst: f64 = 0.0;
        for k in 0..d {
            let (p, dp) = horner(coeffs, z[k]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let repulsion: Complex64 = (0..d)
                .filter(|&i| i != k)
                .map(|i| (z[k] - z[i]).inv())
                .sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            z[k] -= step;
            worst = worst.max(step.norm() / (1.0 + z[k].norm()));
        }
        if worst < STEP_TOL {
            return Ok(z);
        }
    }
    // Accept the iterate when residuals are at rounding level.
    let scale: f64 = coeffs.iter().map(|c| c.abs()).sum();
    let residual = z
        .iter()
        .map(|&r| horner(coeffs, r).0.norm() / (scale * (1.0 + r.norm()).powi(d as i32)))
        .fold(0.0, f64::max);
    if residual < 1e-12 {
        Ok(z)
    } else {
        Err(Error::Numeric(format!(
            "root iteration did not converge for degree {d} (relative residual {residual:e})"
        )))
    }
}
