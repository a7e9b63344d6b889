//! Parameter sweeps over a family, written as CSV.

use bonafide::families::generate;
use bonafide::separability::{classify_global, simon_inequality_margin};
use bonafide::{heisenberg_oracle, Tolerance};
use rayon::prelude::*;

use crate::error::CliError;
use crate::family::{swept, FamilyName};

pub const HEADER: [&str; 9] = [
    "param",
    "det_v",
    "delta",
    "delta_tilde",
    "nu_minus",
    "nu_tilde_minus",
    "heisenberg_margin",
    "simon_margin",
    "tag",
];

#[derive(Debug, Clone, PartialEq)]
pub struct Row {
    pub param: f64,
    pub det_v: f64,
    pub delta: f64,
    pub delta_tilde: f64,
    pub nu_minus: Option<f64>,
    pub nu_tilde_minus: Option<f64>,
    pub heisenberg_margin: f64,
    pub simon_margin: f64,
    pub tag: &'static str,
}

/// `from + k·step` for `k = 0, 1, …` while the value stays within `to`
/// (up to rounding). Values are rounded to 12 significant digits so that
/// decimal grids hit their nominal points.
pub fn grid(from: f64, to: f64, step: f64) -> Result<Vec<f64>, CliError> {
    if !(from.is_finite() && to.is_finite() && step.is_finite()) || step <= 0.0 || to < from {
        return Err(CliError::Usage(format!(
            "need finite from <= to and step > 0 (from={from}, to={to}, step={step})"
        )));
    }
    let count = ((to - from) / step * (1.0 + 1e-12) + 1e-9).floor() as usize + 1;
    if count > 10_000_000 {
        return Err(CliError::Usage(format!(
            "grid of {count} points is too large"
        )));
    }
    Ok((0..count)
        .map(|k| {
            let v = from + k as f64 * step;
            format!("{v:.11e}").parse().expect("formatted float")
        })
        .collect())
}

pub fn evaluate(family: FamilyName, p: f64, tol: &Tolerance) -> Result<Row, CliError> {
    let v = generate(&swept(family, p)?)?;
    let c = classify_global(&v, tol)?;
    let (_, heisenberg) = heisenberg_oracle(&v, tol)?;
    let inv = c.invariants;
    Ok(Row {
        param: p,
        det_v: inv.det_v,
        delta: inv.delta,
        delta_tilde: inv.delta_tilde,
        nu_minus: c.nu_minus,
        nu_tilde_minus: c.nu_tilde_minus,
        heisenberg_margin: heisenberg,
        simon_margin: simon_inequality_margin(&inv),
        tag: c.tag.as_str(),
    })
}

/// Evaluates the grid in parallel; rows come back in grid order.
pub fn run(family: FamilyName, params: &[f64], tol: &Tolerance) -> Result<Vec<Row>, CliError> {
    params
        .par_iter()
        .map(|&p| evaluate(family, p, tol))
        .collect()
}

fn real(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn write_csv<W: std::io::Write>(out: W, rows: &[Row]) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(HEADER)?;
    for r in rows {
        let opt = |x: Option<f64>| x.map(real).unwrap_or_default();
        w.write_record([
            real(r.param),
            real(r.det_v),
            real(r.delta),
            real(r.delta_tilde),
            opt(r.nu_minus),
            opt(r.nu_tilde_minus),
            real(r.heisenberg_margin),
            real(r.simon_margin),
            r.tag.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}
