use std::fmt;
use std::fmt::Write as _;

use serde_json::json;

use ppk_core::analysis::{
    self, classification_csv, classify_word, closed_form_family, format_complex,
    scan_convergent_words, term_bound_series, FamilyVariant,
};
use ppk_core::oracle::{self, column_check_with, VerifyReport, COLUMN_TOLERANCE};
use ppk_core::ratcore::rational::to_text;
use ppk_core::synth::{
    self, build_pj, cumulative_pj, monomial_coefficient_series, r_w_quotient, Monomial,
};
use ppk_core::theta::{t_poly, TildeTable};
use ppk_core::{Error, Word};

use crate::args::{Check, Cli, Command, FamilyArg, Format};
use crate::output::{csv_line, json};

pub const SUPPORTED_PRIMES: [u32; 4] = [2, 3, 5, 7];
pub const J_LIMIT: usize = 12;
pub const NMAX_LIMIT: u64 = 10_000;
pub const TMAX_LIMIT: u64 = 4096;
pub const MMAX_LIMIT: u64 = 1 << 26;
pub const TABLE_LIMIT: usize = 512;

pub struct Outcome {
    pub stdout: String,
    /// `false` when a verification found a counterexample.
    pub success: bool,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            stdout,
            success: true,
        }
    }
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Failure(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Failure(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Failure(m) => f.write_str(m),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Numeric(_) | Error::Pole(_) => CliError::Failure(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

type Result<T> = std::result::Result<T, CliError>;

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn check_prime(p: u32) -> Result<u32> {
    if SUPPORTED_PRIMES.contains(&p) {
        Ok(p)
    } else {
        Err(usage(format!(
            "unsupported prime {p}; use one of 2, 3, 5, 7"
        )))
    }
}

fn check_j(j: usize, force: bool) -> Result<()> {
    if j > J_LIMIT && !force {
        return Err(usage(format!(
            "j = {j} exceeds the limit {J_LIMIT}; pass --force to override"
        )));
    }
    Ok(())
}

pub fn dispatch(cli: &Cli) -> Result<Outcome> {
    let f = cli.global.format;
    match &cli.command {
        Command::Poly {
            p,
            j,
            cumulative,
            force,
        } => poly(check_prime(*p)?, *j, *cumulative, *force, f),
        Command::Theta { p, n } => theta(check_prime(*p)?, *n, f),
        Command::Rw { p, word, order } => rw(check_prime(*p)?, word, *order, f),
        Command::Coeffs {
            p,
            monomial,
            j,
            order,
        } => coeffs(check_prime(*p)?, monomial, order.unwrap_or(*j), f),
        Command::Verify { p, nmax, check } => verify(check_prime(*p)?, *nmax, *check, f),
        Command::Terms { p, jmax, force } => terms(check_prime(*p)?, *jmax, *force, f),
        Command::Classify {
            p,
            word,
            max_len,
            family,
            s,
            tol,
        } => {
            let p = check_prime(*p)?;
            if let Some(fam) = family {
                return family_cmd(*fam, s.expect("clap enforces --s"), f);
            }
            match (word, max_len) {
                (Some(w), _) => classify_one(p, w, *tol, f),
                (None, Some(len)) => scan(p, *len, *tol, f),
                (None, None) => Err(usage("classify needs --word, --max-len or --family")),
            }
        }
        Command::Tildetheta { p, kmax, nmax } => tildetheta(check_prime(*p)?, *kmax, *nmax, f),
        Command::Columns {
            t,
            tmax,
            jmax,
            mmax,
        } => columns(*t, *tmax, *jmax, *mmax, f),
    }
}

fn poly(p: u32, j: usize, cumulative: bool, force: bool, f: Format) -> Result<Outcome> {
    check_j(j, force)?;
    let poly = if cumulative {
        cumulative_pj(p, j)?
    } else {
        build_pj(p, j)?
    };
    Ok(Outcome::ok(match f {
        Format::Text => format!("{poly}\n"),
        Format::Json => json(&poly.to_json()),
        Format::Csv => {
            let mut out = csv_line(&["monomial", "coeff"]);
            for (m, c) in poly.terms() {
                out += &csv_line(&[m.to_string(), to_text(c)]);
            }
            out
        }
    }))
}

fn theta(p: u32, n: u64, f: Format) -> Result<Outcome> {
    let row = t_poly(n, p);
    Ok(Outcome::ok(match f {
        Format::Text => format!("{}\n", row.to_poly()),
        Format::Json => json(&json!({ "p": p, "n": n, "coeffs": row.coeffs() })),
        Format::Csv => {
            let mut out = csv_line(&["j", "theta"]);
            for (j, c) in row.coeffs().iter().enumerate() {
                out += &csv_line(&[j.to_string(), c.to_string()]);
            }
            out
        }
    }))
}

fn parse_word(text: &str, p: u32) -> Result<Word> {
    Word::parse(text, p).map_err(|e| usage(e.to_string()))
}

fn rw(p: u32, word: &str, order: Option<usize>, f: Format) -> Result<Outcome> {
    let w = parse_word(word, p)?;
    let r = r_w_quotient(&w)?;
    let alpha = if w.is_admissible() {
        Some(synth::alpha(&w)?)
    } else {
        None
    };
    let series = order.map(|o| r.to_series(o));
    let coeff_texts = |c: &[ppk_core::Rational]| c.iter().map(to_text).collect::<Vec<_>>();
    Ok(Outcome::ok(match f {
        Format::Text => {
            let mut out = format!("{r}\n");
            if let Some(s) = &series {
                out += &format!("{}\n", coeff_texts(s.coeffs()).join(", "));
            }
            out
        }
        Format::Json => json(&json!({
            "p": p,
            "word": w.to_string(),
            "numerator": coeff_texts(r.numerator().coeffs()),
            "denominator": coeff_texts(r.denominator().coeffs()),
            "alpha": alpha.as_ref().map(to_text),
            "series": series.as_ref().map(|s| coeff_texts(s.coeffs())),
        })),
        Format::Csv => {
            let mut out = csv_line(&["part", "k", "coeff"]);
            for (name, poly) in [
                ("numerator", r.numerator()),
                ("denominator", r.denominator()),
            ] {
                for (k, c) in poly.coeffs().iter().enumerate() {
                    out += &csv_line(&[name.to_string(), k.to_string(), to_text(c)]);
                }
            }
            if let Some(s) = &series {
                for (k, c) in s.coeffs().iter().enumerate() {
                    out += &csv_line(&["series".to_string(), k.to_string(), to_text(c)]);
                }
            }
            out
        }
    }))
}

fn coeffs(p: u32, monomial: &str, order: usize, f: Format) -> Result<Outcome> {
    let m = Monomial::parse(monomial, p)?;
    check_j(order, false)?;
    let s = monomial_coefficient_series(&m, order)?;
    let texts: Vec<String> = s.coeffs().iter().map(to_text).collect();
    Ok(Outcome::ok(match f {
        Format::Text => format!("{}\n", texts.join(", ")),
        Format::Json => {
            json(&json!({ "p": p, "monomial": m.to_json(), "order": order, "coeffs": texts }))
        }
        Format::Csv => {
            let mut out = csv_line(&["j", "coeff"]);
            for (j, c) in texts.iter().enumerate() {
                out += &csv_line(&[j.to_string(), c.clone()]);
            }
            out
        }
    }))
}

fn verify(p: u32, nmax: u64, check: Check, f: Format) -> Result<Outcome> {
    if nmax > NMAX_LIMIT {
        return Err(usage(format!(
            "nmax = {nmax} exceeds the limit {NMAX_LIMIT}"
        )));
    }
    let degree = oracle::max_row_degree(p, nmax);
    if matches!(check, Check::All | Check::Polynomials) && degree > J_LIMIT {
        return Err(usage(format!(
            "rows below {nmax} need P_{degree}, beyond the limit {J_LIMIT}"
        )));
    }
    let mut reports: Vec<VerifyReport> = Vec::new();
    if matches!(check, Check::All | Check::Valuations) {
        reports.push(oracle::verify_valuations(p, nmax)?);
    }
    if matches!(check, Check::All | Check::Rows) {
        reports.push(oracle::verify_rows(p, nmax)?);
    }
    if matches!(check, Check::All | Check::Polynomials) {
        reports.push(oracle::verify_polynomials(p, nmax)?);
    }
    let success = reports.iter().all(|r| r.passed);
    let stdout = match f {
        Format::Text => {
            let mut out = String::new();
            for r in &reports {
                match &r.first_counterexample {
                    None => writeln!(
                        out,
                        "{} p={} n<{}: pass ({} checks)",
                        r.check, r.p, r.range, r.checked
                    ),
                    Some(c) => writeln!(
                        out,
                        "{} p={} n<{}: FAIL at n={}{}{}: expected {}, got {}",
                        r.check,
                        r.p,
                        r.range,
                        c.n,
                        c.t.map(|t| format!(" t={t}")).unwrap_or_default(),
                        c.j.map(|j| format!(" j={j}")).unwrap_or_default(),
                        c.expected,
                        c.got
                    ),
                }
                .expect("write to string");
            }
            out
        }
        Format::Json => json(&reports),
        Format::Csv => {
            let mut out = csv_line(&["check", "p", "n", "pass"]);
            for r in &reports {
                for item in &r.items {
                    out += &csv_line(&[
                        r.check.clone(),
                        r.p.to_string(),
                        item.index.to_string(),
                        item.pass.to_string(),
                    ]);
                }
            }
            out
        }
    };
    Ok(Outcome { stdout, success })
}

/// Two lines: actual term counts `N_j`, then the bounds `B_j`.
pub fn emit_terms_table(p: u32, j_max: usize) -> ppk_core::Result<(Vec<usize>, Vec<String>)> {
    let n: Vec<usize> = (0..=j_max)
        .map(|j| build_pj(p, j).map(|b| b.len()))
        .collect::<ppk_core::Result<_>>()?;
    let b: Vec<String> = term_bound_series(p, j_max)?
        .iter()
        .map(|b| b.to_string())
        .collect();
    Ok((n, b))
}

fn terms(p: u32, jmax: usize, force: bool, f: Format) -> Result<Outcome> {
    check_j(jmax, force)?;
    let (n, b) = emit_terms_table(p, jmax)?;
    let n_text: Vec<String> = n.iter().map(|v| v.to_string()).collect();
    Ok(Outcome::ok(match f {
        Format::Text => format!("{}\n{}\n", n_text.join(","), b.join(",")),
        Format::Json => json(&json!({ "p": p, "j_max": jmax, "terms": n, "bounds": b })),
        Format::Csv => {
            let mut out = csv_line(&["j", "terms", "bound"]);
            for j in 0..=jmax {
                out += &csv_line(&[j.to_string(), n_text[j].clone(), b[j].clone()]);
            }
            out
        }
    }))
}

fn classify_one(p: u32, word: &str, tol: f64, f: Format) -> Result<Outcome> {
    let w = parse_word(word, p)?;
    let prof = classify_word(&w, tol)?;
    Ok(Outcome::ok(match f {
        Format::Text => {
            let mut out = format!(
                "word {}\nclass {}\nmax_xi_modulus {:.12}\n",
                prof.word, prof.classification, prof.max_xi_modulus
            );
            if let Some(z) = prof.dominant_singularity {
                out += &format!("dominant_singularity {}\n", format_complex(z));
            }
            if let Some(c) = prof.unit_circle_certified {
                out += &format!("unit_circle_certified {c}\n");
            }
            out += &format!("r_at_one {}\n", analysis::r_at_one_text(&prof));
            if let Some(s) = prof.coefficient_sum {
                out += &format!("coefficient_sum {s:.15}\n");
            }
            out
        }
        Format::Json => json(&prof),
        Format::Csv => classification_csv(std::slice::from_ref(&prof)),
    }))
}

fn scan(p: u32, max_len: usize, tol: f64, f: Format) -> Result<Outcome> {
    if p != 2 {
        return Err(usage("the word scan is implemented for p = 2"));
    }
    let report = scan_convergent_words(max_len, tol)?;
    let list = |v: &[Word]| {
        v.iter()
            .map(|w| w.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    };
    Ok(Outcome::ok(match f {
        Format::Text => {
            let mut out = String::new();
            writeln!(
                out,
                "convergent words of length <= {max_len}: {}",
                report.convergent.len()
            )
            .unwrap();
            writeln!(out, "1^s0: {}", list(&report.ones_zero)).unwrap();
            writeln!(out, "1^(4s+1)00: {}", list(&report.ones_zero_zero)).unwrap();
            writeln!(out, "1^s01^t0: {}", list(&report.ones_zero_ones_zero)).unwrap();
            writeln!(out, "exceptional: {}", list(&report.exceptional)).unwrap();
            let boundary: Vec<String> = report
                .boundary
                .iter()
                .map(|b| {
                    format!(
                        "{}{}",
                        b.word,
                        if b.certified { "" } else { "(uncertified)" }
                    )
                })
                .collect();
            writeln!(out, "boundary: {}", boundary.join(" ")).unwrap();
            out
        }
        Format::Json => json(&report),
        Format::Csv => classification_csv(&report.profiles),
    }))
}

fn family_cmd(family: FamilyArg, s: usize, f: Format) -> Result<Outcome> {
    let variant = match family {
        FamilyArg::OnesZero => FamilyVariant::OnesZero,
        FamilyArg::OnesZeroZero => FamilyVariant::OnesZeroZero,
    };
    let rep = closed_form_family(s, variant)?;
    Ok(Outcome::ok(match f {
        Format::Text | Format::Csv => {
            let mut out = format!(
                "word {}\nclosed_form {}\nmatches {}\n",
                rep.word, rep.closed_form, rep.matches
            );
            for q in &rep.q_roots {
                out += &format!(
                    "q_{} root {} approximation {} modulus {:.12} outside_half {}\n",
                    q.r,
                    format_complex(q.upper),
                    format_complex(q.approximation),
                    q.modulus,
                    q.outside_half
                );
            }
            out
        }
        Format::Json => json(&rep),
    }))
}

fn tildetheta(p: u32, kmax: usize, nmax: usize, f: Format) -> Result<Outcome> {
    if kmax > TABLE_LIMIT || nmax > TABLE_LIMIT {
        return Err(usage(format!("table bounds are limited to {TABLE_LIMIT}")));
    }
    let table = TildeTable::build(p, kmax, nmax);
    Ok(Outcome::ok(match f {
        Format::Text => table.render(),
        Format::Json => {
            json(&json!({ "p": p, "k_max": kmax, "n_max": nmax, "rows": table.rows() }))
        }
        Format::Csv => {
            let mut header = vec!["k".to_string()];
            header.extend((0..=nmax).map(|n| format!("n{n}")));
            let mut out = csv_line(&header);
            for (k, row) in table.rows().iter().enumerate() {
                let mut fields = vec![k.to_string()];
                fields.extend(row.iter().map(|v| v.to_string()));
                out += &csv_line(&fields);
            }
            out
        }
    }))
}

fn columns(t: Option<u64>, tmax: u64, jmax: usize, mmax: u64, f: Format) -> Result<Outcome> {
    check_j(jmax, false)?;
    if mmax == 0 || mmax > MMAX_LIMIT {
        return Err(usage(format!("mmax must be in 1..={MMAX_LIMIT}")));
    }
    if t.is_none() && tmax > TMAX_LIMIT {
        return Err(usage(format!(
            "tmax = {tmax} exceeds the limit {TMAX_LIMIT}"
        )));
    }
    let polys = (0..=jmax)
        .map(|j| build_pj(2, j))
        .collect::<ppk_core::Result<Vec<_>>>()?;
    let ts: Vec<u64> = match t {
        Some(t) => vec![t],
        None => (0..=tmax).collect(),
    };
    let reports = ts
        .iter()
        .map(|&t| column_check_with(&polys, t, mmax, COLUMN_TOLERANCE))
        .collect::<ppk_core::Result<Vec<_>>>()?;
    let success = reports.iter().all(|r| r.passed);
    let stdout = match f {
        Format::Text => {
            let mut out = format!("tolerance {COLUMN_TOLERANCE} (sampling budget, m < {mmax})\n");
            for r in &reports {
                for row in &r.rows {
                    writeln!(
                        out,
                        "t={} j={} empirical={:.6} predicted={} deviation={:.2e}",
                        r.t,
                        row.j,
                        row.empirical,
                        to_text(&row.predicted),
                        row.deviation
                    )
                    .unwrap();
                }
            }
            out
        }
        Format::Json => json(&reports),
        Format::Csv => {
            let mut out = csv_line(&["t", "j", "empirical", "predicted", "deviation"]);
            for r in &reports {
                for row in &r.rows {
                    out += &csv_line(&[
                        r.t.to_string(),
                        row.j.to_string(),
                        format!("{:.9}", row.empirical),
                        to_text(&row.predicted),
                        format!("{:.3e}", row.deviation),
                    ]);
                }
            }
            out
        }
    };
    Ok(Outcome { stdout, success })
}
