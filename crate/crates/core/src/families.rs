//! Named matrix families and seeded random generators.
//!
//! Random symplectics are products of local layers (rotation, squeezer,
//! rotation on every mode) interleaved with a fixed mixer: the balanced
//! beam splitter `[[I, I], [−I, I]]/√2` acting on neighbouring modes, which
//! is both orthogonal and symplectic.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::matrix::MatrixValue;
use crate::symplectic::{congruence, rotation, squeezer};

/// `V(x)`: positive definite for every `x > 0`, bona fide only for `x ≥ 1/2`.
pub fn simon_vx(x: f64) -> Result<MatrixValue> {
    if !(x > 0.0 && x.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "simon_vx needs x > 0, got {x}"
        )));
    }
    let d = 0.5 * (1.0 + 4.0 * x);
    let c1 = 0.5 * (4.0 * x - 1.0);
    let c2 = -2.0 * x;
    MatrixValue::new(
        4,
        4,
        vec![
            d, 0.0, c1, 0.0, //
            0.0, d, 0.0, c2, //
            c1, 0.0, d, 0.0, //
            0.0, c2, 0.0, d,
        ],
    )
}

pub fn vacuum() -> MatrixValue {
    MatrixValue::identity(4)
}

/// `diag(ν₁, ν₁, ν₂, ν₂, …)` with every `ν ≥ 1`.
pub fn thermal(nus: &[f64]) -> Result<MatrixValue> {
    if nus.is_empty() {
        return Err(Error::InvalidParameter(
            "thermal needs at least one mode".into(),
        ));
    }
    if let Some(bad) = nus.iter().find(|nu| !(**nu >= 1.0 && nu.is_finite())) {
        return Err(Error::InvalidParameter(format!(
            "thermal occupation must satisfy nu >= 1, got {bad}"
        )));
    }
    let diag: Vec<f64> = nus.iter().flat_map(|&nu| [nu, nu]).collect();
    MatrixValue::from_diagonal(&diag)
}

/// Two-mode squeezed vacuum in standard form: `a = b = cosh 2r`,
/// `c₊ = −c₋ = sinh 2r`.
pub fn two_mode_squeezed(r: f64) -> Result<MatrixValue> {
    if !(r >= 0.0 && r.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "two_mode_squeezed needs r >= 0, got {r}"
        )));
    }
    let ch = (2.0 * r).cosh();
    let sh = (2.0 * r).sinh();
    MatrixValue::new(
        4,
        4,
        vec![
            ch, 0.0, sh, 0.0, //
            0.0, ch, 0.0, -sh, //
            sh, 0.0, ch, 0.0, //
            0.0, -sh, 0.0, ch,
        ],
    )
}

/// Balanced beam splitter between modes `i` and `j` of an `n`-mode system.
pub fn beam_splitter(n_modes: usize, i: usize, j: usize) -> MatrixValue {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let mut rows = MatrixValue::identity(2 * n_modes).to_rows();
    for q in 0..2 {
        let (a, b) = (2 * i + q, 2 * j + q);
        rows[a][a] = h;
        rows[a][b] = h;
        rows[b][a] = -h;
        rows[b][b] = h;
    }
    MatrixValue::from_rows(&rows).expect("finite")
}

/// `R(φ₁) S(ξ) R(φ₂)` with random angles and `ln ξ ∈ [−1, 1]`.
pub fn random_single_mode_symplectic<R: Rng + ?Sized>(rng: &mut R) -> MatrixValue {
    let xi = rng.gen_range(-1.0f64..1.0).exp();
    let tau = std::f64::consts::TAU;
    let r1 = rotation(rng.gen_range(0.0..tau));
    let r2 = rotation(rng.gen_range(0.0..tau));
    &(&r1 * &squeezer(xi).expect("positive")) * &r2
}

/// Direct sum of independent random single-mode symplectics.
pub fn random_local_symplectic<R: Rng + ?Sized>(rng: &mut R, n_modes: usize) -> MatrixValue {
    let parts: Vec<MatrixValue> = (0..n_modes)
        .map(|_| random_single_mode_symplectic(rng))
        .collect();
    let refs: Vec<&MatrixValue> = parts.iter().collect();
    MatrixValue::direct_sum(&refs)
}

/// Local layers alternating with beam splitters on every neighbouring pair.
pub fn random_symplectic<R: Rng + ?Sized>(rng: &mut R, n_modes: usize) -> MatrixValue {
    let mut s = random_local_symplectic(rng, n_modes);
    for _ in 0..2 {
        for i in 0..n_modes.saturating_sub(1) {
            s = &beam_splitter(n_modes, i, i + 1) * &s;
        }
        s = &random_local_symplectic(rng, n_modes) * &s;
    }
    s
}

/// Random bona fide two-mode matrix: a thermal state with `ν ∈ [1, 3]`
/// under a random symplectic.
pub fn random_physical_with<R: Rng + ?Sized>(rng: &mut R) -> MatrixValue {
    let nus = [rng.gen_range(1.0..3.0), rng.gen_range(1.0..3.0)];
    let w = thermal(&nus).expect("nu >= 1");
    let s = random_symplectic(rng, 2);
    congruence(&w, &s).expect("4x4")
}

/// Symmetric 4×4 with entries uniform in `[−2, 2]`.
pub fn random_symmetric_with<R: Rng + ?Sized>(rng: &mut R) -> MatrixValue {
    let mut rows = vec![vec![0.0; 4]; 4];
    for (i, j) in (0..4).flat_map(|i| (i..4).map(move |j| (i, j))) {
        let x = rng.gen_range(-2.0..=2.0);
        rows[i][j] = x;
        rows[j][i] = x;
    }
    MatrixValue::from_rows(&rows).expect("finite")
}

pub fn random_physical(seed: u64) -> MatrixValue {
    random_physical_with(&mut ChaCha8Rng::seed_from_u64(seed))
}

pub fn random_symmetric(seed: u64) -> MatrixValue {
    random_symmetric_with(&mut ChaCha8Rng::seed_from_u64(seed))
}

#[derive(Debug, Clone, PartialEq)]
pub enum FamilySpec {
    Vacuum,
    Thermal(Vec<f64>),
    TwoModeSqueezed(f64),
    SimonVx(f64),
    RandomPhysical(u64),
    RandomSymmetric(u64),
}

impl FamilySpec {
    pub fn name(&self) -> &'static str {
        match self {
            FamilySpec::Vacuum => "vacuum",
            FamilySpec::Thermal(_) => "thermal",
            FamilySpec::TwoModeSqueezed(_) => "two_mode_squeezed",
            FamilySpec::SimonVx(_) => "simon_vx",
            FamilySpec::RandomPhysical(_) => "random_physical",
            FamilySpec::RandomSymmetric(_) => "random_symmetric",
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilySpec::Vacuum => write!(f, "vacuum"),
            FamilySpec::Thermal(nus) => write!(f, "thermal(nu={nus:?})"),
            FamilySpec::TwoModeSqueezed(r) => write!(f, "two_mode_squeezed(r={r})"),
            FamilySpec::SimonVx(x) => write!(f, "simon_vx(x={x})"),
            FamilySpec::RandomPhysical(s) => write!(f, "random_physical(seed={s})"),
            FamilySpec::RandomSymmetric(s) => write!(f, "random_symmetric(seed={s})"),
        }
    }
}

pub fn generate(spec: &FamilySpec) -> Result<MatrixValue> {
    match spec {
        FamilySpec::Vacuum => Ok(vacuum()),
        FamilySpec::Thermal(nus) => thermal(nus),
        FamilySpec::TwoModeSqueezed(r) => two_mode_squeezed(*r),
        FamilySpec::SimonVx(x) => simon_vx(*x),
        FamilySpec::RandomPhysical(seed) => Ok(random_physical(*seed)),
        FamilySpec::RandomSymmetric(seed) => Ok(random_symmetric(*seed)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::Tolerance;
    use crate::physicality::heisenberg_oracle;
    use crate::symplectic::{blocks, is_symplectic};

    #[test]
    fn simon_vx_at_one_half() {
        let b = blocks(&simon_vx(0.5).unwrap(), &Tolerance::default()).unwrap();
        assert_eq!(b.a, MatrixValue::identity(2).scale(1.5));
        assert_eq!(b.b, MatrixValue::identity(2).scale(1.5));
        assert_eq!(b.c, MatrixValue::from_diagonal(&[0.5, -1.0]).unwrap());
        assert!(simon_vx(0.0).is_err());
        assert!(simon_vx(-1.0).is_err());
    }

    #[test]
    fn trivial_families() {
        assert_eq!(
            generate(&FamilySpec::Vacuum).unwrap(),
            MatrixValue::identity(4)
        );
        assert_eq!(two_mode_squeezed(0.0).unwrap(), MatrixValue::identity(4));
        assert_eq!(
            thermal(&[1.0, 2.0]).unwrap(),
            MatrixValue::from_diagonal(&[1.0, 1.0, 2.0, 2.0]).unwrap()
        );
        assert!(thermal(&[0.5]).is_err());
        assert!(thermal(&[]).is_err());
        assert!(two_mode_squeezed(-0.1).is_err());
    }

    #[test]
    fn random_generators_are_reproducible() {
        assert_eq!(random_physical(7), random_physical(7));
        assert_ne!(random_physical(7), random_physical(8));
        assert_eq!(
            random_symmetric(3).elements(),
            random_symmetric(3).elements()
        );
    }

    #[test]
    fn random_physical_is_bona_fide() {
        let tol = Tolerance::default();
        for seed in 0..50 {
            let (ok, _) = heisenberg_oracle(&random_physical(seed), &tol).unwrap();
            assert!(ok, "seed {seed}");
        }
    }

    #[test]
    fn random_symplectics_are_symplectic() {
        let tol = Tolerance::default();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in 1..=4 {
            let s = random_symplectic(&mut rng, n);
            assert!(is_symplectic(&s, &tol).unwrap());
        }
        assert!(is_symplectic(&beam_splitter(3, 0, 2), &tol).unwrap());
    }

    #[test]
    fn random_symmetric_entries_in_range() {
        let m = random_symmetric(42);
        assert_eq!(m.symmetry_deviation(), 0.0);
        assert!(m.max_abs() <= 2.0);
    }
}
