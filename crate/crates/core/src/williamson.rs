//! Williamson decomposition `S V Sᵀ = W` of a positive-definite matrix.
//!
//! The symplectic is built as `S = W^{1/2} R V^{-1/2}` where the proper
//! rotation `R` block-diagonalizes the antisymmetric `X = V^{-1/2} Ω V^{-1/2}`
//! into `⊕ ν_k^{-1} ω`. `R` itself is `Γ U†`, with `U` a unitary
//! diagonalizing `X` whose columns are conjugate eigenvector pairs and `Γ`
//! the fixed unitary `⊕ γ`, `γ = [[i, −i], [1, 1]]/√2`.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::invariants::symplectic_spectrum_general;
use crate::matrix::{hermitian_eigen, sym_function, MatrixValue, Tolerance};
use crate::physicality::require_positive_definite;
use crate::symplectic::{omega, symplectic_residual};

/// Largest number of modes accepted by [`williamson_decompose`].
pub const MAX_MODES: usize = 8;

/// `V^{-1/2}` for symmetric positive-definite `V`.
pub fn inv_sqrt(v: &MatrixValue, tol: &Tolerance) -> Result<MatrixValue> {
    v.require_square()?;
    v.require_symmetric(tol)?;
    require_positive_definite(v, tol)?;
    MatrixValue::from_dmatrix(sym_function(v.as_dmatrix(), |x| 1.0 / x.sqrt()))
}

/// `X = V^{-1/2} Ω V^{-1/2}`, re-antisymmetrized.
pub fn build_x(v: &MatrixValue, tol: &Tolerance) -> Result<MatrixValue> {
    let n = v.require_even_square()?;
    let m = inv_sqrt(v, tol)?;
    Ok((&(&m * &omega(n)) * &m).antisymmetrized())
}

/// `Γ = ⊕ γ` with `γ = [[i, −i], [1, 1]]/√2`, unitary.
pub fn gamma_matrix(n_modes: usize) -> DMatrix<Complex64> {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let mut g = DMatrix::zeros(2 * n_modes, 2 * n_modes);
    for k in 0..n_modes {
        let (r, c) = (2 * k, 2 * k);
        g[(r, c)] = Complex64::new(0.0, h);
        g[(r, c + 1)] = Complex64::new(0.0, -h);
        g[(r + 1, c)] = Complex64::new(h, 0.0);
        g[(r + 1, c + 1)] = Complex64::new(h, 0.0);
    }
    g
}

/// Order of the 2×2 blocks produced by the skew block-diagonalization.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BlockOrder {
    Ascending,
    Descending,
}

/// Proper rotation `O` with `O X Oᵀ = ⊕ a_k ω`.
#[derive(Debug, Clone, PartialEq)]
pub struct SkewBlockForm {
    pub o: MatrixValue,
    pub a: Vec<f64>,
}

/// Block-diagonalizes a nonsingular antisymmetric matrix, blocks ascending.
pub fn skew_block_rotation(xs: &MatrixValue, tol: &Tolerance) -> Result<SkewBlockForm> {
    skew_block_rotation_with(xs, tol, BlockOrder::Ascending, None)
}

/// As [`skew_block_rotation`], with a block order and optional per-pair
/// eigenvector phases. Any phases give a valid `U`, so they only change `O`
/// by a block-diagonal rotation.
pub fn skew_block_rotation_with(
    xs: &MatrixValue,
    tol: &Tolerance,
    order: BlockOrder,
    phases: Option<&[f64]>,
) -> Result<SkewBlockForm> {
    let n = xs.require_even_square()?;
    let dim = 2 * n;
    if let Some(p) = phases {
        if p.len() != n {
            return Err(Error::InvalidParameter(format!(
                "expected {n} phases, got {}",
                p.len()
            )));
        }
    }
    let scale = xs.max_abs();
    let asym = (xs + &xs.transpose()).max_abs();
    if asym > tol.threshold(scale) {
        return Err(Error::Dimension(format!(
            "input is not antisymmetric: max |X + X^T| = {asym:e}"
        )));
    }

    // X u = +i a u  <=>  (iX) u = −a u: the +ia eigenvectors of X are the
    // negative-eigenvalue eigenvectors of the Hermitian iX.
    let h: DMatrix<Complex64> = xs
        .antisymmetrized()
        .as_dmatrix()
        .map(|x| Complex64::new(0.0, x));
    let (values, vectors) = hermitian_eigen(&h);
    let min_abs = values.iter().map(|x| x.abs()).fold(f64::INFINITY, f64::min);
    if min_abs <= tol.threshold(scale) {
        return Err(Error::SingularInput {
            min_abs_eigenvalue: min_abs,
        });
    }
    let negatives = values.iter().filter(|x| **x < 0.0).count();
    if negatives != n {
        return Err(Error::Pairing(format!(
            "{negatives} eigenvalues of iX below zero, expected {n}"
        )));
    }
    // The spectrum must be symmetric: λ_k = −λ_{2n−1−k}.
    for k in 0..n {
        let gap = (values[k] + values[dim - 1 - k]).abs();
        if gap > tol.threshold(scale) {
            return Err(Error::Pairing(format!(
                "eigenvalues {} and {} are not opposite",
                values[k],
                values[dim - 1 - k]
            )));
        }
    }

    // Ascending eigenvalues of iX put the largest a first.
    let mut picked: Vec<usize> = (0..n).collect();
    if order == BlockOrder::Ascending {
        picked.reverse();
    }
    let a: Vec<f64> = picked.iter().map(|&k| -values[k]).collect();
    let mut plus_vectors: Vec<DVector<Complex64>> = picked
        .iter()
        .map(|&k| vectors.column(k).into_owned())
        .collect();
    orthonormalize(&mut plus_vectors)?;
    if let Some(p) = phases {
        for (u, phi) in plus_vectors.iter_mut().zip(p) {
            *u *= Complex64::from_polar(1.0, *phi);
        }
    }

    // U = (u₂*, u₂, …, u₂ₙ*, u₂ₙ): the −ia partner is the conjugate.
    let mut u = DMatrix::<Complex64>::zeros(dim, dim);
    for (k, plus) in plus_vectors.iter().enumerate() {
        u.set_column(2 * k, &plus.map(|z| z.conj()));
        u.set_column(2 * k + 1, plus);
    }

    let o_complex = gamma_matrix(n) * u.adjoint();
    let imag = o_complex.map(|z| z.im.abs()).max();
    if imag > tol.threshold(1.0) {
        return Err(Error::Numerical(format!(
            "Gamma U^dagger is not real (max |Im| = {imag:e})"
        )));
    }
    let o = MatrixValue::from_dmatrix(o_complex.map(|z| z.re))?;
    let ortho = (&o * &o.transpose()).max_abs_diff(&MatrixValue::identity(dim));
    if ortho > tol.threshold(1.0) {
        return Err(Error::Numerical(format!(
            "Gamma U^dagger is not orthogonal (residual {ortho:e})"
        )));
    }
    if o.determinant() < 0.0 {
        return Err(Error::NegativeOrientation);
    }
    Ok(SkewBlockForm { o, a })
}

/// Modified Gram–Schmidt on complex column vectors.
fn orthonormalize(vectors: &mut [DVector<Complex64>]) -> Result<()> {
    for i in 0..vectors.len() {
        let (done, rest) = vectors.split_at_mut(i);
        let v = &mut rest[0];
        for q in done.iter() {
            let proj = q.dotc(v);
            *v -= q * proj;
        }
        let norm = v.norm();
        if norm < 1e-8 {
            return Err(Error::Pairing("eigenvectors are linearly dependent".into()));
        }
        *v /= Complex64::new(norm, 0.0);
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq)]
pub struct WilliamsonDecomposition {
    /// `diag(ν₁, ν₁, …, ν_n, ν_n)`, ascending.
    pub w: MatrixValue,
    pub s: MatrixValue,
    pub r: MatrixValue,
    /// `V^{-1/2} Ω V^{-1/2}`.
    pub x: MatrixValue,
    pub symplectic_eigenvalues: Vec<f64>,
    /// Some symplectic eigenvalues coincide within tolerance. The
    /// decomposition is still valid; `S` is then only unique up to a
    /// symplectic-orthogonal mixing within the degenerate subspace.
    pub degenerate: bool,
}

impl WilliamsonDecomposition {
    /// `‖S Ω Sᵀ − Ω‖_max`.
    pub fn symplectic_residual(&self) -> f64 {
        symplectic_residual(&self.s).expect("S is even and square")
    }

    /// `‖S V Sᵀ − W‖_max`.
    pub fn diagonalization_residual(&self, v: &MatrixValue) -> f64 {
        (&(&self.s * v) * &self.s.transpose()).max_abs_diff(&self.w)
    }
}

/// Runs the six-step construction on a `2n × 2n` positive-definite matrix.
pub fn williamson_decompose(v: &MatrixValue, tol: &Tolerance) -> Result<WilliamsonDecomposition> {
    decompose(v, tol, None)
}

/// As [`williamson_decompose`], with explicit eigenvector phases (one per
/// conjugate pair).
pub fn williamson_decompose_with_phases(
    v: &MatrixValue,
    tol: &Tolerance,
    phases: &[f64],
) -> Result<WilliamsonDecomposition> {
    decompose(v, tol, Some(phases))
}

fn decompose(
    v: &MatrixValue,
    tol: &Tolerance,
    phases: Option<&[f64]>,
) -> Result<WilliamsonDecomposition> {
    let n = v.require_even_square()?;
    if n > MAX_MODES {
        return Err(Error::Dimension(format!(
            "{n} modes exceeds the supported maximum of {MAX_MODES}"
        )));
    }
    // 1. symplectic spectrum
    let nus = symplectic_spectrum_general(v, tol)?;
    let top = nus.last().copied().unwrap_or(1.0);
    let degenerate = nus.windows(2).any(|p| p[1] - p[0] <= tol.threshold(top));
    let w_diag: Vec<f64> = nus.iter().flat_map(|&nu| [nu, nu]).collect();
    let w = MatrixValue::from_diagonal(&w_diag)?;
    // 2. W^{1/2} and V^{-1/2}
    let w_sqrt = MatrixValue::from_diagonal(&w_diag.iter().map(|x| x.sqrt()).collect::<Vec<_>>())?;
    let v_inv_sqrt = inv_sqrt(v, tol)?;
    // 3. X
    let x = (&(&v_inv_sqrt * &omega(n)) * &v_inv_sqrt).antisymmetrized();
    // 4–5. R = Γ U†, blocks ν_k^{-1} in descending order to match ascending ν.
    let form = skew_block_rotation_with(&x, tol, BlockOrder::Descending, phases)?;
    for (k, (&a, &nu)) in form.a.iter().zip(&nus).enumerate() {
        if (a * nu - 1.0).abs() > 1e-6 {
            return Err(Error::InternalInconsistency(format!(
                "block {k}: 1/a = {} but symplectic eigenvalue is {nu}",
                1.0 / a
            )));
        }
    }
    // 6. S = W^{1/2} R V^{-1/2}
    let s = &(&w_sqrt * &form.o) * &v_inv_sqrt;
    Ok(WilliamsonDecomposition {
        w,
        s,
        r: form.o,
        x,
        symplectic_eigenvalues: nus,
        degenerate,
    })
}
