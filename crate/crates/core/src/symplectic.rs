//! The symplectic form, congruences, two-mode block structure and the
//! partial-transpose map.
//!
//! Quadratures are ordered mode-major, `(q1, p1, q2, p2, ...)`.

use crate::error::{Error, Result};
use crate::matrix::{MatrixValue, Tolerance};

/// `ω = [[0, 1], [-1, 0]]`.
pub fn omega2() -> MatrixValue {
    MatrixValue::new(2, 2, vec![0.0, 1.0, -1.0, 0.0]).expect("finite")
}

/// `Ω = ⊕ ω` over `n_modes` modes.
///
/// # Panics
/// If `n_modes` is zero.
pub fn omega(n_modes: usize) -> MatrixValue {
    assert!(n_modes >= 1, "omega needs at least one mode");
    let n = 2 * n_modes;
    let mut elements = vec![0.0; n * n];
    for k in 0..n_modes {
        elements[(2 * k) * n + 2 * k + 1] = 1.0;
        elements[(2 * k + 1) * n + 2 * k] = -1.0;
    }
    MatrixValue::new(n, n, elements).expect("finite")
}

/// Proper 2×2 rotation `[[cos φ, -sin φ], [sin φ, cos φ]]`.
pub fn rotation(phi: f64) -> MatrixValue {
    let (s, c) = phi.sin_cos();
    MatrixValue::new(2, 2, vec![c, -s, s, c]).expect("finite")
}

/// Single-mode squeezer `diag(ξ^{1/2}, ξ^{-1/2})`.
pub fn squeezer(xi: f64) -> Result<MatrixValue> {
    if !(xi > 0.0 && xi.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "squeezing parameter must be positive, got {xi}"
        )));
    }
    MatrixValue::from_diagonal(&[xi.sqrt(), 1.0 / xi.sqrt()])
}

/// `‖S Ω Sᵀ − Ω‖_max`.
pub fn symplectic_residual(s: &MatrixValue) -> Result<f64> {
    let n = s.require_even_square()?;
    let om = omega(n);
    Ok((&(s * &om) * &s.transpose()).max_abs_diff(&om))
}

/// True iff `S Ω Sᵀ = Ω` to within the tolerance at the scale of `S Sᵀ`.
pub fn is_symplectic(s: &MatrixValue, tol: &Tolerance) -> Result<bool> {
    let residual = symplectic_residual(s)?;
    let scale = s.max_abs().powi(2).max(1.0);
    Ok(residual <= tol.threshold(scale))
}

/// `S V Sᵀ`, re-symmetrized.
pub fn congruence(v: &MatrixValue, s: &MatrixValue) -> Result<MatrixValue> {
    let n = v.require_square()?;
    if s.cols() != n {
        return Err(Error::Dimension(format!(
            "cannot form S V S^T with V {n}x{n} and S {}x{}",
            s.rows(),
            s.cols()
        )));
    }
    Ok((&(s * v) * &s.transpose()).symmetrized())
}

/// Diagonal blocks `A`, `B` and off-diagonal block `C` of a two-mode matrix
/// `V = [[A, C], [Cᵀ, B]]`.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoModeBlocks {
    pub a: MatrixValue,
    pub b: MatrixValue,
    pub c: MatrixValue,
}

impl TwoModeBlocks {
    pub fn new(a: MatrixValue, b: MatrixValue, c: MatrixValue, tol: &Tolerance) -> Result<Self> {
        for m in [&a, &b, &c] {
            m.require_shape(2, 2)?;
        }
        a.require_symmetric(tol)?;
        b.require_symmetric(tol)?;
        Ok(Self { a, b, c })
    }

    /// Standard form `A = aI, B = bI, C = diag(c₊, c₋)`.
    pub fn standard(a: f64, b: f64, c_plus: f64, c_minus: f64) -> Result<Self> {
        Ok(Self {
            a: MatrixValue::from_diagonal(&[a, a])?,
            b: MatrixValue::from_diagonal(&[b, b])?,
            c: MatrixValue::from_diagonal(&[c_plus, c_minus])?,
        })
    }

    pub fn reassemble(&self) -> MatrixValue {
        let mut rows = vec![vec![0.0; 4]; 4];
        for i in 0..2 {
            for j in 0..2 {
                rows[i][j] = self.a.get(i, j);
                rows[i + 2][j + 2] = self.b.get(i, j);
                rows[i][j + 2] = self.c.get(i, j);
                rows[j + 2][i] = self.c.get(i, j);
            }
        }
        MatrixValue::from_rows(&rows).expect("finite blocks")
    }

    /// Exchange the two modes: `A ↔ B`, `C → Cᵀ`.
    pub fn swapped(&self) -> Self {
        Self {
            a: self.b.clone(),
            b: self.a.clone(),
            c: self.c.transpose(),
        }
    }

    pub fn det_a(&self) -> f64 {
        det2(&self.a)
    }

    pub fn det_b(&self) -> f64 {
        det2(&self.b)
    }

    pub fn det_c(&self) -> f64 {
        det2(&self.c)
    }
}

pub(crate) fn det2(m: &MatrixValue) -> f64 {
    m.get(0, 0) * m.get(1, 1) - m.get(0, 1) * m.get(1, 0)
}

/// Splits a symmetric 4×4 matrix into its 2×2 blocks.
pub fn blocks(v: &MatrixValue, tol: &Tolerance) -> Result<TwoModeBlocks> {
    v.require_shape(4, 4)?;
    v.require_symmetric(tol)?;
    let sub = |r: usize, c: usize| {
        MatrixValue::new(
            2,
            2,
            vec![
                v.get(r, c),
                v.get(r, c + 1),
                v.get(r + 1, c),
                v.get(r + 1, c + 1),
            ],
        )
        .expect("finite")
    };
    Ok(TwoModeBlocks {
        a: sub(0, 0),
        b: sub(2, 2),
        c: sub(0, 2),
    })
}

/// `Λ = diag(1, 1, 1, -1)`: momentum reversal of the second mode.
pub fn lambda() -> MatrixValue {
    MatrixValue::from_diagonal(&[1.0, 1.0, 1.0, -1.0]).expect("finite")
}

/// `Ṽ = Λ V Λ`. Implemented as an exact sign flip of row and column 4
/// (the diagonal entry is untouched), so it is an involution bit-for-bit.
pub fn partial_transpose(v: &MatrixValue) -> Result<MatrixValue> {
    v.require_shape(4, 4)?;
    let mut rows = v.to_rows();
    for (i, row) in rows.iter_mut().enumerate() {
        for (j, x) in row.iter_mut().enumerate() {
            if (i == 3) != (j == 3) {
                *x = -*x;
            }
        }
    }
    MatrixValue::from_rows(&rows)
}

/// Exchanges the two modes of a 4×4 matrix.
pub fn swap_modes(v: &MatrixValue) -> Result<MatrixValue> {
    v.require_shape(4, 4)?;
    let perm = [2, 3, 0, 1];
    let rows: Vec<Vec<f64>> = (0..4)
        .map(|i| (0..4).map(|j| v.get(perm[i], perm[j])).collect())
        .collect();
    MatrixValue::from_rows(&rows)
}
