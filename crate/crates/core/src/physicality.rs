//! Bona fide checks for two-mode correlation matrices.
//!
//! Three routes decide the same question and are kept independent of one
//! another so they can cross-validate:
//!
//! * [`heisenberg_oracle`]: the smallest eigenvalue of `V + iΩ`.
//! * [`check_global`]: positivity of `V` plus `det V ≥ 1` and `Δ ≤ 1 + det V`.
//! * [`check_local`]: positivity of the diagonal blocks plus two inequalities
//!   on block determinants. It never reduces to standard form.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::invariants::{spectrum_from_invariants, two_mode_invariants};
use crate::matrix::{min_sym_eigenvalue, MatrixValue, Tolerance};
use crate::standard_form::StandardFormCoefficients;
use crate::symplectic::{blocks, omega};

/// One named inequality, stored as `value` compared against `threshold`.
///
/// Inclusive margins pass when `value ≥ −threshold`; strict margins (matrix
/// positivity) pass only when `value > threshold`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Margin {
    pub name: &'static str,
    pub value: f64,
    pub threshold: f64,
    pub strict: bool,
}

impl Margin {
    pub fn inclusive(name: &'static str, value: f64, threshold: f64) -> Self {
        Self {
            name,
            value,
            threshold,
            strict: false,
        }
    }

    pub fn strict(name: &'static str, value: f64, threshold: f64) -> Self {
        Self {
            name,
            value,
            threshold,
            strict: true,
        }
    }

    pub fn passes(&self) -> bool {
        if self.strict {
            self.value > self.threshold
        } else {
            self.value >= -self.threshold
        }
    }

    /// Within the tolerance band around zero.
    pub fn is_borderline(&self) -> bool {
        self.value.abs() <= self.threshold
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Route {
    Oracle,
    Global,
    Local,
}

impl Route {
    pub fn as_str(&self) -> &'static str {
        match self {
            Route::Oracle => "oracle",
            Route::Global => "global",
            Route::Local => "local",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BonaFideReport {
    pub verdict: bool,
    pub route: Route,
    pub margins: Vec<Margin>,
    /// Smallest symplectic eigenvalue, when `V > 0` lets it exist.
    pub nu_minus: Option<f64>,
}

impl BonaFideReport {
    fn from_margins(route: Route, margins: Vec<Margin>, nu_minus: Option<f64>) -> Self {
        Self {
            verdict: margins.iter().all(Margin::passes),
            route,
            margins,
            nu_minus,
        }
    }

    pub fn margin(&self, name: &str) -> Option<&Margin> {
        self.margins.iter().find(|m| m.name == name)
    }

    /// True if any margin sits inside its tolerance band.
    pub fn borderline(&self) -> bool {
        self.margins.iter().any(Margin::is_borderline)
    }
}

pub const MIN_EIG_V: &str = "min_eig_V";
pub const MIN_EIG_A: &str = "min_eig_A";
pub const MIN_EIG_B: &str = "min_eig_B";
pub const DET_V_MINUS_ONE: &str = "det_V - 1";
pub const DELTA_MARGIN: &str = "(1 + det_V) - Delta";
pub const LOCAL_CROSS_MARGIN: &str = "(det_V + det_A det_B) - (2 sqrt(det_A det_B) + det_C^2)";
pub const ORACLE_MIN_EIG: &str = "min_eig(V + i Omega)";

/// Smallest eigenvalue of a symmetric matrix.
pub fn min_eigenvalue(m: &MatrixValue, tol: &Tolerance) -> Result<f64> {
    m.require_symmetric(tol)?;
    Ok(min_sym_eigenvalue(m.as_dmatrix()))
}

/// Strict positivity: the smallest eigenvalue must exceed the tolerance.
pub fn is_positive_definite(m: &MatrixValue, tol: &Tolerance) -> Result<bool> {
    Ok(positivity_margin(m, tol)?.passes())
}

pub(crate) fn positivity_margin(m: &MatrixValue, tol: &Tolerance) -> Result<Margin> {
    let min = min_eigenvalue(m, tol)?;
    Ok(Margin::strict(MIN_EIG_V, min, tol.threshold(m.max_abs())))
}

pub(crate) fn require_positive_definite(m: &MatrixValue, tol: &Tolerance) -> Result<()> {
    let margin = positivity_margin(m, tol)?;
    if !margin.passes() {
        return Err(Error::NotPositiveDefinite {
            min_eigenvalue: margin.value,
        });
    }
    Ok(())
}

/// Decides `V + iΩ ⪰ 0` for any `2n × 2n` symmetric `V` and returns the
/// smallest eigenvalue.
///
/// The Hermitian matrix is realized as the real symmetric embedding
/// `[[V, −Ω], [Ω, V]]`, whose spectrum is that of `V + iΩ` with every
/// eigenvalue doubled.
pub fn heisenberg_oracle(v: &MatrixValue, tol: &Tolerance) -> Result<(bool, f64)> {
    let margin = oracle_margin(v, tol)?;
    Ok((margin.passes(), margin.value))
}

fn oracle_margin(v: &MatrixValue, tol: &Tolerance) -> Result<Margin> {
    let n_modes = v.require_even_square()?;
    v.require_symmetric(tol)?;
    let dim = 2 * n_modes;
    let om = omega(n_modes);
    let mut embedding = DMatrix::zeros(2 * dim, 2 * dim);
    embedding
        .view_mut((0, 0), (dim, dim))
        .copy_from(v.as_dmatrix());
    embedding
        .view_mut((dim, dim), (dim, dim))
        .copy_from(v.as_dmatrix());
    embedding
        .view_mut((0, dim), (dim, dim))
        .copy_from(&(-om.as_dmatrix()));
    embedding
        .view_mut((dim, 0), (dim, dim))
        .copy_from(om.as_dmatrix());
    let min = min_sym_eigenvalue(&embedding);
    Ok(Margin::inclusive(
        ORACLE_MIN_EIG,
        min,
        tol.threshold(v.max_abs().max(1.0)),
    ))
}

/// The oracle route packaged as a report.
pub fn check_oracle(v: &MatrixValue, tol: &Tolerance) -> Result<BonaFideReport> {
    Ok(BonaFideReport::from_margins(
        Route::Oracle,
        vec![oracle_margin(v, tol)?],
        None,
    ))
}

/// `V > 0`, `det V ≥ 1`, `Δ ≤ 1 + det V`.
pub fn check_global(v: &MatrixValue, tol: &Tolerance) -> Result<BonaFideReport> {
    let inv = two_mode_invariants(v, tol)?;
    let positivity = positivity_margin(v, tol)?;
    let det_margin = Margin::inclusive(
        DET_V_MINUS_ONE,
        inv.det_v - 1.0,
        tol.threshold(inv.det_v.abs().max(1.0)),
    );
    let delta_margin = Margin::inclusive(
        DELTA_MARGIN,
        1.0 + inv.det_v - inv.delta,
        tol.threshold((1.0 + inv.det_v.abs()).max(inv.delta.abs())),
    );
    let nu_minus = if positivity.passes() {
        spectrum_from_invariants(inv.delta, inv.det_v, tol)
            .ok()
            .map(|s| s.nu_minus)
    } else {
        None
    };
    Ok(BonaFideReport::from_margins(
        Route::Global,
        vec![positivity, det_margin, delta_margin],
        nu_minus,
    ))
}

/// `A > 0`, `B > 0`, `Δ ≤ 1 + det V` and
/// `2√(det A det B) + det C² ≤ det V + det A det B`.
pub fn check_local(v: &MatrixValue, tol: &Tolerance) -> Result<BonaFideReport> {
    Ok(BonaFideReport::from_margins(
        Route::Local,
        local_margins(v, tol)?,
        None,
    ))
}

pub(crate) fn local_margins(v: &MatrixValue, tol: &Tolerance) -> Result<Vec<Margin>> {
    let inv = two_mode_invariants(v, tol)?;
    let b = blocks(v, tol)?;
    let block_margin = |name, m: &MatrixValue| {
        Margin::strict(
            name,
            min_sym_eigenvalue(m.as_dmatrix()),
            tol.threshold(m.max_abs()),
        )
    };
    let prod = inv.det_a * inv.det_b;
    let lhs = 2.0 * prod.max(0.0).sqrt() + inv.det_c * inv.det_c;
    let rhs = inv.det_v + prod;
    Ok(vec![
        block_margin(MIN_EIG_A, &b.a),
        block_margin(MIN_EIG_B, &b.b),
        Margin::inclusive(
            DELTA_MARGIN,
            1.0 + inv.det_v - inv.delta,
            tol.threshold((1.0 + inv.det_v.abs()).max(inv.delta.abs())),
        ),
        Margin::inclusive(
            LOCAL_CROSS_MARGIN,
            rhs - lhs,
            tol.threshold(
                lhs.abs()
                    .max(rhs.abs())
                    .max(inv.det_v.abs())
                    .max(prod.abs()),
            ),
        ),
    ])
}

/// Closed-form eigenvalues of `V_std + iΩ` for a standard-form matrix.
///
/// Names follow `λ_{sign of inner root}^{sign of outer root}`:
/// `lambda_pm = (a + b − √(μ + 2√ν))/2` is the smallest.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StandardFormEigs {
    pub lambda_pp: f64,
    pub lambda_mp: f64,
    pub lambda_pm: f64,
    pub lambda_mm: f64,
    pub mu_aux: f64,
    pub nu_aux: f64,
}

impl StandardFormEigs {
    /// All four eigenvalues, ascending.
    pub fn sorted(&self) -> [f64; 4] {
        [
            self.lambda_pm,
            self.lambda_mm,
            self.lambda_mp,
            self.lambda_pp,
        ]
    }

    pub fn min(&self) -> f64 {
        self.lambda_pm
    }
}

pub fn standard_form_hermitian_eigs(p: &StandardFormCoefficients) -> StandardFormEigs {
    let StandardFormCoefficients {
        a,
        b,
        c_plus,
        c_minus,
    } = *p;
    let diff = a - b;
    let mu = 4.0 + diff * diff + 2.0 * (c_plus * c_plus + c_minus * c_minus);
    let sum_c = c_plus + c_minus;
    let gap_c = c_plus - c_minus;
    let nu = 4.0 * diff * diff + sum_c * sum_c * (4.0 + gap_c * gap_c);
    let root_nu = nu.sqrt();
    let outer_plus = (mu + 2.0 * root_nu).sqrt();
    let outer_minus = (mu - 2.0 * root_nu).max(0.0).sqrt();
    let s = a + b;
    StandardFormEigs {
        lambda_pp: 0.5 * (s + outer_plus),
        lambda_mp: 0.5 * (s + outer_minus),
        lambda_pm: 0.5 * (s - outer_plus),
        lambda_mm: 0.5 * (s - outer_minus),
        mu_aux: mu,
        nu_aux: nu,
    }
}
