//! Physicality, separability and symplectic normal forms for Gaussian
//! covariance (correlation) matrices.
//!
//! Units are such that the vacuum correlation matrix is the identity, and
//! quadratures are ordered `(q1, p1, q2, p2, ...)`.
//!
//! ```
//! use bonafide::{classify_global, families::simon_vx, Tag, Tolerance};
//!
//! let tol = Tolerance::default();
//! // Positive definite, but violates the uncertainty principle.
//! let v = simon_vx(0.1).unwrap();
//! assert_eq!(classify_global(&v, &tol).unwrap().tag, Tag::Unphysical);
//! ```

pub mod error;
pub mod families;
pub mod invariants;
pub mod matrix;
pub mod physicality;
pub mod separability;
pub mod standard_form;
pub mod symplectic;
pub mod williamson;

pub use error::{Block, Error, Result};
pub use invariants::{
    ppt_spectrum_2mode, symplectic_spectrum_2mode, symplectic_spectrum_general,
    two_mode_invariants, SymplecticSpectrum2, TwoModeInvariants,
};
pub use matrix::{MatrixValue, Tolerance};
pub use physicality::{
    check_global, check_local, check_oracle, heisenberg_oracle, is_positive_definite,
    standard_form_hermitian_eigs, BonaFideReport, Margin, Route, StandardFormEigs,
};
pub use separability::{
    classify_global, classify_local, posdef_criterion, simon_criterion, Classification, Tag,
};
pub use standard_form::{
    reduce_to_standard_form, single_mode_williamson, StandardFormCoefficients, StandardFormParams,
};
pub use symplectic::{blocks, congruence, is_symplectic, omega, partial_transpose, TwoModeBlocks};
pub use williamson::{williamson_decompose, WilliamsonDecomposition};
