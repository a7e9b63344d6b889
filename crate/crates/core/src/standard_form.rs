//! Reduction of a two-mode matrix to standard form by local symplectics.
//!
//! Each diagonal block is first brought to a multiple of the identity, then a
//! pair of local rotations diagonalizes the transformed correlation block.
//! The rotations come from the closed-form 2×2 singular value decomposition
//! restricted to proper rotations, which lands directly in the canonical
//! cell `c₊ ≥ |c₋|`.

use crate::error::{Block, Error, Result};
use crate::matrix::{min_sym_eigenvalue, sym_function, MatrixValue, Tolerance};
use crate::symplectic::{blocks, congruence, rotation, TwoModeBlocks};

/// `(a, b, c₊, c₋)` of the matrix `[[aI, diag(c₊, c₋)], [diag(c₊, c₋), bI]]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StandardFormCoefficients {
    pub a: f64,
    pub b: f64,
    pub c_plus: f64,
    pub c_minus: f64,
}

impl StandardFormCoefficients {
    pub fn new(a: f64, b: f64, c_plus: f64, c_minus: f64) -> Self {
        Self {
            a,
            b,
            c_plus,
            c_minus,
        }
    }

    pub fn assemble(&self) -> Result<MatrixValue> {
        Ok(TwoModeBlocks::standard(self.a, self.b, self.c_plus, self.c_minus)?.reassemble())
    }

    /// `(ab − c₊²)(ab − c₋²)`, equal to `det V`.
    pub fn determinant(&self) -> f64 {
        let ab = self.a * self.b;
        (ab - self.c_plus * self.c_plus) * (ab - self.c_minus * self.c_minus)
    }
}

/// Standard-form coefficients together with the local symplectic reaching
/// them: `S_local V S_localᵀ = V_std`.
#[derive(Debug, Clone, PartialEq)]
pub struct StandardFormParams {
    pub a: f64,
    pub b: f64,
    pub c_plus: f64,
    pub c_minus: f64,
    pub s_local: MatrixValue,
}

impl StandardFormParams {
    pub fn coefficients(&self) -> StandardFormCoefficients {
        StandardFormCoefficients::new(self.a, self.b, self.c_plus, self.c_minus)
    }

    pub fn assemble(&self) -> Result<MatrixValue> {
        self.coefficients().assemble()
    }
}

/// Symplectic `S_A` with `S_A A S_Aᵀ = aI`, `a = √det A`.
///
/// `S_A = √a · A^{-1/2}` is symmetric with unit determinant.
pub fn single_mode_williamson(
    a_block: &MatrixValue,
    tol: &Tolerance,
) -> Result<(MatrixValue, f64)> {
    a_block.require_shape(2, 2)?;
    a_block.require_symmetric(tol)?;
    let min = min_sym_eigenvalue(a_block.as_dmatrix());
    if min <= tol.threshold(a_block.max_abs()) {
        return Err(Error::NotPositiveDefinite {
            min_eigenvalue: min,
        });
    }
    let sym = a_block.symmetrized();
    let det = sym.get(0, 0) * sym.get(1, 1) - sym.get(0, 1) * sym.get(1, 0);
    let a = det.sqrt();
    let inv_sqrt = sym_function(sym.as_dmatrix(), |x| 1.0 / x.sqrt());
    let s = MatrixValue::from_dmatrix(inv_sqrt * a.sqrt())?;
    Ok((s, a))
}

/// Rotations `R₁`, `R₂` with `R₁ M R₂ᵀ = diag(s₁, s₂)`, `s₁ ≥ |s₂|`.
fn rotation_svd(m: &MatrixValue) -> (MatrixValue, MatrixValue, f64, f64) {
    let e = 0.5 * (m.get(0, 0) + m.get(1, 1));
    let f = 0.5 * (m.get(0, 0) - m.get(1, 1));
    let g = 0.5 * (m.get(1, 0) + m.get(0, 1));
    let h = 0.5 * (m.get(1, 0) - m.get(0, 1));
    let q = e.hypot(h);
    let r = f.hypot(g);
    let rot_angle = h.atan2(e);
    // M = R(φ) diag(q + r, q − r) R(θ)
    let (phi, theta) = if r <= 1e-15 * q {
        (0.0, rot_angle)
    } else {
        let refl_angle = g.atan2(f);
        (
            0.5 * (rot_angle + refl_angle),
            0.5 * (rot_angle - refl_angle),
        )
    };
    (rotation(-phi), rotation(theta), q + r, q - r)
}

/// Brings a 4×4 symmetric matrix with positive-definite diagonal blocks to
/// standard form.
pub fn reduce_to_standard_form(v: &MatrixValue, tol: &Tolerance) -> Result<StandardFormParams> {
    let blk = blocks(v, tol)?;
    let williamson = |block: Block, m: &MatrixValue| match single_mode_williamson(m, tol) {
        Err(Error::NotPositiveDefinite { min_eigenvalue }) => {
            Err(Error::BlockNotPositiveDefinite {
                block,
                min_eigenvalue,
            })
        }
        other => other,
    };
    let (s_a, a) = williamson(Block::A, &blk.a)?;
    let (s_b, b) = williamson(Block::B, &blk.b)?;
    let m = &(&s_a * &blk.c) * &s_b.transpose();
    let (rot_a, rot_b, c_plus, c_minus) = rotation_svd(&m);
    let s_local = MatrixValue::direct_sum(&[&(&rot_a * &s_a), &(&rot_b * &s_b)]);
    Ok(StandardFormParams {
        a,
        b,
        c_plus,
        c_minus,
        s_local,
    })
}

/// `‖S_local V S_localᵀ − V_std‖_max`.
pub fn round_trip_residual(v: &MatrixValue, params: &StandardFormParams) -> Result<f64> {
    Ok(congruence(v, &params.s_local)?.max_abs_diff(&params.assemble()?))
}
