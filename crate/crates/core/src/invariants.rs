//! Local and global symplectic invariants, and symplectic spectra.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::{hermitian_eigen, sym_function, MatrixValue, Tolerance};
use crate::physicality::require_positive_definite;
use crate::symplectic::{blocks, omega, omega2, partial_transpose, TwoModeBlocks};

/// Determinants and symplectic invariants of a 4×4 symmetric matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoModeInvariants {
    pub det_a: f64,
    pub det_b: f64,
    pub det_c: f64,
    pub det_v: f64,
    /// `Tr(A ω C ω B ω Cᵀ ω)`.
    pub i4: f64,
    /// `det A + det B + 2 det C`.
    pub delta: f64,
    /// `det A + det B − 2 det C`, i.e. `Δ` of the partial transpose.
    pub delta_tilde: f64,
    /// `det A + det B + 2 |det C|`.
    pub gamma_sep: f64,
}

impl TwoModeInvariants {
    /// `det V − (det A det B + det C² − I₄)`; zero for every symmetric `V`.
    pub fn i4_identity_residual(&self) -> f64 {
        self.det_v - (self.det_a * self.det_b + self.det_c * self.det_c - self.i4)
    }

    /// Magnitude of the terms in the `I₄` identity, for relative comparisons.
    pub fn i4_identity_scale(&self) -> f64 {
        [
            self.det_v.abs(),
            (self.det_a * self.det_b).abs(),
            self.det_c * self.det_c,
            self.i4.abs(),
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }
}

/// Computes every field from the blocks. `I₄` is taken from its trace
/// formula, so the determinant identity is an independent check.
pub fn two_mode_invariants(v: &MatrixValue, tol: &Tolerance) -> Result<TwoModeInvariants> {
    let b = blocks(v, tol)?;
    Ok(invariants_from_blocks(&b, v.determinant()))
}

pub(crate) fn invariants_from_blocks(b: &TwoModeBlocks, det_v: f64) -> TwoModeInvariants {
    let det_a = b.det_a();
    let det_b = b.det_b();
    let det_c = b.det_c();
    let w = omega2();
    let chain = &(&(&(&(&(&(&b.a * &w) * &b.c) * &w) * &b.b) * &w) * &b.c.transpose()) * &w;
    let i4 = chain.get(0, 0) + chain.get(1, 1);
    let local = det_a + det_b;
    TwoModeInvariants {
        det_a,
        det_b,
        det_c,
        det_v,
        i4,
        delta: local + 2.0 * det_c,
        delta_tilde: local - 2.0 * det_c,
        gamma_sep: local + 2.0 * det_c.abs(),
    }
}

/// The two symplectic eigenvalues of a two-mode matrix, `ν₋ ≤ ν₊`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SymplecticSpectrum2 {
    pub nu_minus: f64,
    pub nu_plus: f64,
}

/// `ν∓² = (Δ ∓ √(Δ² − 4 det V))/2`.
///
/// `ν₊²` is taken from the formula and `ν₋²` from `det V / ν₊²`, which is the
/// same quantity without the cancellation in `Δ − √(…)`.
pub fn symplectic_spectrum_2mode(v: &MatrixValue, tol: &Tolerance) -> Result<SymplecticSpectrum2> {
    let inv = two_mode_invariants(v, tol)?;
    require_positive_definite(v, tol)?;
    spectrum_from_invariants(inv.delta, inv.det_v, tol)
}

pub(crate) fn spectrum_from_invariants(
    delta: f64,
    det_v: f64,
    tol: &Tolerance,
) -> Result<SymplecticSpectrum2> {
    let mut radicand = delta * delta - 4.0 * det_v;
    if radicand < 0.0 {
        let band = tol.threshold(delta * delta);
        if radicand < -band {
            return Err(Error::Numerical(format!(
                "negative discriminant {radicand:e} (Δ = {delta}, det V = {det_v})"
            )));
        }
        radicand = 0.0;
    }
    let plus_sq = 0.5 * (delta + radicand.sqrt());
    if plus_sq <= 0.0 {
        return Err(Error::Numerical(format!("non-positive ν₊² = {plus_sq:e}")));
    }
    let minus_sq = (det_v / plus_sq).max(0.0);
    Ok(SymplecticSpectrum2 {
        nu_minus: minus_sq.sqrt(),
        nu_plus: plus_sq.sqrt(),
    })
}

/// Symplectic spectrum of the partial transpose `ΛVΛ`.
pub fn ppt_spectrum_2mode(v: &MatrixValue, tol: &Tolerance) -> Result<SymplecticSpectrum2> {
    symplectic_spectrum_2mode(&partial_transpose(v)?, tol)
}

/// Symplectic eigenvalues of a `2n × 2n` positive-definite matrix, ascending.
///
/// They are the moduli of the eigenvalues of `iΩV`. That matrix is similar to
/// the Hermitian `i V^{1/2} Ω V^{1/2}`, which is what gets diagonalized; its
/// real eigenvalues come in `±ν` pairs.
pub fn symplectic_spectrum_general(v: &MatrixValue, tol: &Tolerance) -> Result<Vec<f64>> {
    let n = v.require_even_square()?;
    v.require_symmetric(tol)?;
    require_positive_definite(v, tol)?;
    let sqrt_v = sym_function(v.as_dmatrix(), f64::sqrt);
    let k = &sqrt_v * omega(n).as_dmatrix() * &sqrt_v;
    let h: DMatrix<Complex64> = k.map(|x| Complex64::new(0.0, x));
    let (values, _) = hermitian_eigen(&h);
    pair_plus_minus(&values, tol)
}

/// Collapses a `±ν` spectrum into `n` moduli, ascending.
pub(crate) fn pair_plus_minus(values: &[f64], tol: &Tolerance) -> Result<Vec<f64>> {
    let positives = values.iter().filter(|x| **x > 0.0).count();
    if 2 * positives != values.len() {
        return Err(Error::Pairing(format!(
            "{positives} positive eigenvalues out of {}",
            values.len()
        )));
    }
    let mut moduli: Vec<f64> = values.iter().map(|x| x.abs()).collect();
    moduli.sort_by(f64::total_cmp);
    let scale = moduli.last().copied().unwrap_or(0.0);
    moduli
        .chunks_exact(2)
        .map(|pair| {
            let gap = pair[1] - pair[0];
            if gap > tol.threshold(scale) {
                Err(Error::Pairing(format!(
                    "moduli {} and {} differ by {gap:e}",
                    pair[0], pair[1]
                )))
            } else {
                Ok(0.5 * (pair[0] + pair[1]))
            }
        })
        .collect()
}
