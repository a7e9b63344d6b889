#![allow(dead_code)]

use bonafide::families::{
    random_local_symplectic, random_physical_with, random_symplectic, thermal,
};
use bonafide::symplectic::omega;
use bonafide::{congruence, MatrixValue, StandardFormCoefficients};
use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;

/// Symplectic eigenvalues from the real Schur eigenvalues of `ΩV`
/// (they come as `±iν`), ascending.
pub fn schur_symplectic_spectrum(v: &MatrixValue) -> Vec<f64> {
    let n = v.rows() / 2;
    let m = omega(n).as_dmatrix() * v.as_dmatrix();
    let mut im: Vec<f64> = m.complex_eigenvalues().iter().map(|z| z.im.abs()).collect();
    im.sort_by(f64::total_cmp);
    (0..n).map(|k| 0.5 * (im[2 * k] + im[2 * k + 1])).collect()
}

/// Smallest eigenvalue of the complex Hermitian `V + iΩ`.
pub fn hermitian_heisenberg_min(v: &MatrixValue) -> f64 {
    let n = v.rows() / 2;
    let om = omega(n);
    let h = DMatrix::<Complex64>::from_fn(v.rows(), v.cols(), |i, j| {
        Complex64::new(v.get(i, j), om.get(i, j))
    });
    h.symmetric_eigenvalues()
        .iter()
        .cloned()
        .fold(f64::INFINITY, f64::min)
}

pub fn min_real_eig(v: &MatrixValue) -> f64 {
    v.as_dmatrix().clone().symmetric_eigenvalues().min()
}

/// Wishart-like SPD matrix `GGᵀ/d + 0.1·I`, entries of `G` uniform in `[−1, 1]`.
pub fn random_spd<R: Rng>(rng: &mut R, dim: usize) -> MatrixValue {
    let g = DMatrix::<f64>::from_fn(dim, dim, |_, _| rng.gen_range(-1.0..1.0));
    let m = &g * g.transpose() / dim as f64 + DMatrix::identity(dim, dim) * 0.1;
    MatrixValue::from_dmatrix(m).unwrap().symmetrized()
}

pub fn random_symmetric_4<R: Rng>(rng: &mut R, scale: f64) -> MatrixValue {
    let mut rows = vec![vec![0.0; 4]; 4];
    for (i, j) in (0..4).flat_map(|i| (i..4).map(move |j| (i, j))) {
        let x = scale * rng.gen_range(-1.0..1.0);
        rows[i][j] = x;
        rows[j][i] = x;
    }
    MatrixValue::from_rows(&rows).unwrap()
}

/// Random standard-form coefficients with positive `a`, `b`.
pub fn random_coefficients<R: Rng>(rng: &mut R) -> StandardFormCoefficients {
    StandardFormCoefficients::new(
        rng.gen_range(0.5..3.0),
        rng.gen_range(0.5..3.0),
        rng.gen_range(-3.0..3.0),
        rng.gen_range(-3.0..3.0),
    )
}

/// A symmetric matrix with positive diagonal blocks: random standard form
/// dressed by a random local symplectic.
pub fn random_local_dressed<R: Rng>(rng: &mut R) -> MatrixValue {
    let v0 = random_coefficients(rng).assemble().unwrap();
    congruence(&v0, &random_local_symplectic(rng, 2)).unwrap()
}

/// Physical matrix whose smallest symplectic eigenvalue is exactly 1,
/// scaled by `1 + ε`.
pub fn near_heisenberg_boundary<R: Rng>(rng: &mut R) -> MatrixValue {
    let w = thermal(&[1.0, rng.gen_range(1.0..3.0)]).unwrap();
    let v = congruence(&w, &random_symplectic(rng, 2)).unwrap();
    v.scale(1.0 + rng.gen_range(-0.05..0.05))
}

/// Thermal two-mode squeezed matrix `S(r)(ν I)S(r)ᵀ` under random local
/// symplectics; the partial transpose has `ν̃₋ = ν e^{−2r}`.
pub fn near_ppt_boundary<R: Rng>(rng: &mut R) -> MatrixValue {
    let nu: f64 = rng.gen_range(1.0..2.0);
    let r: f64 = 0.5 * nu.ln() + rng.gen_range(-0.05..0.05);
    let r = r.max(0.0);
    let (ch, sh) = ((2.0 * r).cosh(), (2.0 * r).sinh());
    let v0 = StandardFormCoefficients::new(nu * ch, nu * ch, nu * sh, -nu * sh)
        .assemble()
        .unwrap();
    congruence(&v0, &random_local_symplectic(rng, 2)).unwrap()
}

/// Simon-type matrices `V(x)` dressed by random local symplectics.
pub fn dressed_simon<R: Rng>(rng: &mut R) -> MatrixValue {
    let x = rng.gen_range(0.01..1.5);
    let v0 = bonafide::families::simon_vx(x).unwrap();
    congruence(&v0, &random_local_symplectic(rng, 2)).unwrap()
}

/// Mixture used to probe agreement between physicality and separability
/// routes, with a large share of samples near a boundary.
pub fn boundary_biased<R: Rng>(rng: &mut R) -> MatrixValue {
    match rng.gen_range(0..7) {
        0 => random_symmetric_4(rng, 2.0),
        1 => random_physical_with(rng),
        2 => near_heisenberg_boundary(rng),
        3 => near_ppt_boundary(rng),
        4 => dressed_simon(rng),
        5 => random_local_dressed(rng),
        _ => random_physical_with(rng).scale(-1.0),
    }
}
