//! Separable / entangled / unphysical classification of two-mode matrices
//! under the Gaussian-state reading: a bona fide `V` is separable iff its
//! partial transpose is bona fide too.

use std::fmt;

use crate::error::{Error, Result};
use crate::invariants::{
    ppt_spectrum_2mode, spectrum_from_invariants, two_mode_invariants, TwoModeInvariants,
};
use crate::matrix::{MatrixValue, Tolerance};
use crate::physicality::{
    check_global, local_margins, positivity_margin, Margin, DELTA_MARGIN, DET_V_MINUS_ONE,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Tag {
    Unphysical,
    SeparableGaussianCM,
    EntangledGaussianCM,
}

impl Tag {
    pub fn as_str(&self) -> &'static str {
        match self {
            Tag::Unphysical => "Unphysical",
            Tag::SeparableGaussianCM => "SeparableGaussianCM",
            Tag::EntangledGaussianCM => "EntangledGaussianCM",
        }
    }

    pub fn is_physical(&self) -> bool {
        !matches!(self, Tag::Unphysical)
    }
}

impl fmt::Display for Tag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Tag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "Unphysical" => Ok(Tag::Unphysical),
            "SeparableGaussianCM" => Ok(Tag::SeparableGaussianCM),
            "EntangledGaussianCM" => Ok(Tag::EntangledGaussianCM),
            other => Err(Error::InvalidParameter(format!("unknown tag {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Classification {
    pub tag: Tag,
    pub reason: String,
    pub margins: Vec<Margin>,
    pub invariants: TwoModeInvariants,
    pub nu_minus: Option<f64>,
    pub nu_tilde_minus: Option<f64>,
}

impl Classification {
    pub fn margin(&self, name: &str) -> Option<&Margin> {
        self.margins.iter().find(|m| m.name == name)
    }
}

pub const DELTA_TILDE_MARGIN: &str = "(1 + det_V) - Delta_tilde";
pub const NU_MINUS_MARGIN: &str = "nu_minus - 1";
pub const NU_TILDE_MINUS_MARGIN: &str = "nu_tilde_minus - 1";
pub const SIMON_MODULUS_MARGIN: &str = "det_A det_B + (1 - |det_C|)^2 - I4 - (det_A + det_B)";
pub const ENTANGLED_LOWER_MARGIN: &str = "(det_A + det_B - det_A det_B + I4) - (1 + det_C)^2";
pub const ENTANGLED_UPPER_MARGIN: &str = "(1 - det_C)^2 - (det_A + det_B - det_A det_B + I4)";

fn delta_tilde_margin(inv: &TwoModeInvariants, tol: &Tolerance) -> Margin {
    Margin::inclusive(
        DELTA_TILDE_MARGIN,
        1.0 + inv.det_v - inv.delta_tilde,
        tol.threshold((1.0 + inv.det_v.abs()).max(inv.delta_tilde.abs())),
    )
}

fn nu_margin(name: &'static str, nu: f64, tol: &Tolerance) -> Margin {
    Margin::inclusive(name, nu - 1.0, tol.threshold(nu.max(1.0)))
}

fn physical_tag(ppt: &Margin) -> Tag {
    if ppt.passes() {
        Tag::SeparableGaussianCM
    } else {
        Tag::EntangledGaussianCM
    }
}

fn first_failure(margins: &[Margin]) -> Option<&Margin> {
    margins.iter().find(|m| !m.passes())
}

fn ppt_reason(tag: Tag) -> String {
    match tag {
        Tag::SeparableGaussianCM => "bona fide, partial transpose bona fide".into(),
        Tag::EntangledGaussianCM => "bona fide, partial transpose violates uncertainty".into(),
        Tag::Unphysical => unreachable!(),
    }
}

/// Classification from global invariants.
///
/// The verdict comes from the determinant conditions (`det V ≥ 1`,
/// `Δ ≤ 1 + det V`, `Δ̃ ≤ 1 + det V`). The spectral conditions (`ν₋ ≥ 1`,
/// `ν̃₋ ≥ 1`) are evaluated alongside; if both routes are outside their
/// tolerance bands and still disagree, that is an internal error.
pub fn classify_global(v: &MatrixValue, tol: &Tolerance) -> Result<Classification> {
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
    let ppt = delta_tilde_margin(&inv, tol);
    let mut margins = vec![positivity, det_margin, delta_margin, ppt];

    if !positivity.passes() {
        return Ok(Classification {
            tag: Tag::Unphysical,
            reason: "V is not positive definite".into(),
            margins,
            invariants: inv,
            nu_minus: None,
            nu_tilde_minus: None,
        });
    }

    let nu_minus = spectrum_from_invariants(inv.delta, inv.det_v, tol)?.nu_minus;
    let nu_tilde_minus = ppt_spectrum_2mode(v, tol)?.nu_minus;
    let nu_m = nu_margin(NU_MINUS_MARGIN, nu_minus, tol);
    let nu_t = nu_margin(NU_TILDE_MINUS_MARGIN, nu_tilde_minus, tol);
    margins.push(nu_m);
    margins.push(nu_t);

    let det_physical = det_margin.passes() && delta_margin.passes();
    let decisive = |a: &Margin| !a.is_borderline();
    if decisive(&nu_m)
        && decisive(&det_margin)
        && decisive(&delta_margin)
        && nu_m.passes() != det_physical
    {
        return Err(Error::InternalInconsistency(format!(
            "physicality: nu_minus - 1 = {:e} but determinant route says {det_physical}",
            nu_m.value
        )));
    }

    let (tag, reason) = if !det_physical {
        let failed = first_failure(&margins[1..3]).expect("a margin failed");
        (Tag::Unphysical, format!("{} < 0", failed.name))
    } else {
        let tag = physical_tag(&ppt);
        if decisive(&nu_t) && decisive(&ppt) && nu_t.passes() != ppt.passes() {
            return Err(Error::InternalInconsistency(format!(
                "separability: nu_tilde_minus - 1 = {:e} but Delta_tilde margin = {:e}",
                nu_t.value, ppt.value
            )));
        }
        (tag, ppt_reason(tag))
    };

    Ok(Classification {
        tag,
        reason,
        margins,
        invariants: inv,
        nu_minus: Some(nu_minus),
        nu_tilde_minus: Some(nu_tilde_minus),
    })
}

/// Classification from block positivity and local invariants only.
pub fn classify_local(v: &MatrixValue, tol: &Tolerance) -> Result<Classification> {
    let inv = two_mode_invariants(v, tol)?;
    let mut margins = local_margins(v, tol)?;
    let ppt = delta_tilde_margin(&inv, tol);
    let (tag, reason) = match first_failure(&margins) {
        Some(failed) => (Tag::Unphysical, format!("{} fails", failed.name)),
        None => {
            let tag = physical_tag(&ppt);
            (tag, ppt_reason(tag))
        }
    };
    margins.push(ppt);
    Ok(Classification {
        tag,
        reason,
        margins,
        invariants: inv,
        nu_minus: None,
        nu_tilde_minus: None,
    })
}

/// `det A det B + (1 − det C)² − I₄ − (det A + det B)`: the determinant
/// condition that, together with `det V ≥ 1`, is equivalent to
/// `Δ ≤ 1 + det V`. On its own it does not imply physicality.
pub fn simon_inequality_margin(inv: &TwoModeInvariants) -> f64 {
    let one_minus = 1.0 - inv.det_c;
    inv.det_a * inv.det_b + one_minus * one_minus - inv.i4 - (inv.det_a + inv.det_b)
}

/// `det A det B + (1 + det C)² − I₄ − (det A + det B)`, equal to
/// `(1 + det V) − Δ̃`.
pub fn simon_separability_margin(inv: &TwoModeInvariants) -> f64 {
    let one_plus = 1.0 + inv.det_c;
    inv.det_a * inv.det_b + one_plus * one_plus - inv.i4 - (inv.det_a + inv.det_b)
}

fn determinant_scale(inv: &TwoModeInvariants) -> f64 {
    [
        (inv.det_a * inv.det_b).abs(),
        (1.0 + inv.det_c.abs()).powi(2),
        inv.i4.abs(),
        inv.det_a.abs() + inv.det_b.abs(),
    ]
    .into_iter()
    .fold(0.0, f64::max)
}

/// Separability test for a matrix already known to be bona fide.
///
/// Returns whether `det A det B + (1 + det C)² − I₄ ≥ det A + det B`. For
/// Gaussian states this is equivalent to separability. Unphysical input is
/// rejected: the inequality alone says nothing about it.
pub fn simon_criterion(v: &MatrixValue, tol: &Tolerance) -> Result<bool> {
    let report = check_global(v, tol)?;
    if !report.verdict {
        let failed = first_failure(&report.margins).expect("verdict false");
        return Err(Error::PreconditionViolated(format!(
            "not a bona fide correlation matrix ({} = {:e}); classify it instead",
            failed.name, failed.value
        )));
    }
    let inv = two_mode_invariants(v, tol)?;
    let margin = simon_separability_margin(&inv);
    Ok(margin >= -tol.threshold(determinant_scale(&inv)))
}

/// Classification for positive-definite input from `det V ≥ 1` and the
/// modulus form of the separability inequality.
pub fn posdef_criterion(v: &MatrixValue, tol: &Tolerance) -> Result<Classification> {
    let inv = two_mode_invariants(v, tol)?;
    let positivity = positivity_margin(v, tol)?;
    if !positivity.passes() {
        return Err(Error::NotPositiveDefinite {
            min_eigenvalue: positivity.value,
        });
    }
    let thr = tol.threshold(determinant_scale(&inv));
    let det_margin = Margin::inclusive(
        DET_V_MINUS_ONE,
        inv.det_v - 1.0,
        tol.threshold(inv.det_v.abs().max(1.0)),
    );
    let modulus = {
        let one_minus_abs = 1.0 - inv.det_c.abs();
        inv.det_a * inv.det_b + one_minus_abs * one_minus_abs - inv.i4 - (inv.det_a + inv.det_b)
    };
    let k = inv.det_a + inv.det_b - inv.det_a * inv.det_b + inv.i4;
    let sep = Margin::inclusive(SIMON_MODULUS_MARGIN, modulus, thr);
    // The lower entangled bound is strict.
    let ent_lower = Margin::strict(ENTANGLED_LOWER_MARGIN, k - (1.0 + inv.det_c).powi(2), thr);
    let ent_upper = Margin::inclusive(ENTANGLED_UPPER_MARGIN, (1.0 - inv.det_c).powi(2) - k, thr);
    let margins = vec![positivity, det_margin, sep, ent_lower, ent_upper];

    let (tag, reason) = if !det_margin.passes() {
        (Tag::Unphysical, "det V < 1".to_string())
    } else if sep.passes() {
        (
            Tag::SeparableGaussianCM,
            "det V >= 1 and separability inequality holds".into(),
        )
    } else if ent_lower.passes() && ent_upper.passes() {
        (
            Tag::EntangledGaussianCM,
            "det V >= 1 and entanglement window holds".into(),
        )
    } else {
        (
            Tag::Unphysical,
            "neither separable nor entangled conditions hold".into(),
        )
    };
    Ok(Classification {
        tag,
        reason,
        margins,
        invariants: inv,
        nu_minus: None,
        nu_tilde_minus: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{simon_vx, thermal, two_mode_squeezed};
    use crate::symplectic::TwoModeBlocks;

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    #[test]
    fn vacuum_is_separable_everywhere() {
        let v = MatrixValue::identity(4);
        assert_eq!(
            classify_global(&v, &tol()).unwrap().tag,
            Tag::SeparableGaussianCM
        );
        assert_eq!(
            classify_local(&v, &tol()).unwrap().tag,
            Tag::SeparableGaussianCM
        );
        assert_eq!(
            posdef_criterion(&v, &tol()).unwrap().tag,
            Tag::SeparableGaussianCM
        );
        assert!(simon_criterion(&v, &tol()).unwrap());
    }

    #[test]
    fn two_mode_squeezed_is_entangled() {
        let v = two_mode_squeezed(0.5).unwrap();
        let c = classify_global(&v, &tol()).unwrap();
        assert_eq!(c.tag, Tag::EntangledGaussianCM);
        assert!((c.nu_tilde_minus.unwrap() - (-1.0f64).exp()).abs() < 1e-12);
        assert_eq!(
            classify_local(&v, &tol()).unwrap().tag,
            Tag::EntangledGaussianCM
        );
        assert!(!simon_criterion(&v, &tol()).unwrap());
    }

    #[test]
    fn simon_family_examples() {
        let c = classify_global(&simon_vx(1.0).unwrap(), &tol()).unwrap();
        assert_eq!(c.tag, Tag::EntangledGaussianCM);
        assert!((c.invariants.delta_tilde - 18.5).abs() < 1e-12);
        assert!((c.invariants.det_v - 9.0).abs() < 1e-12);

        let c = classify_global(&simon_vx(0.1).unwrap(), &tol()).unwrap();
        assert_eq!(c.tag, Tag::Unphysical);
        assert_eq!(
            classify_local(&simon_vx(0.1).unwrap(), &tol()).unwrap().tag,
            Tag::Unphysical
        );

        assert!(!simon_criterion(&simon_vx(0.5).unwrap(), &tol()).unwrap());
        assert!(matches!(
            simon_criterion(&simon_vx(0.1).unwrap(), &tol()),
            Err(Error::PreconditionViolated(_))
        ));
    }

    #[test]
    fn posdef_criterion_examples() {
        let c = posdef_criterion(&simon_vx(0.2).unwrap(), &tol()).unwrap();
        assert_eq!(c.tag, Tag::Unphysical);
        assert!((c.margin(DET_V_MINUS_ONE).unwrap().value - (0.52 - 1.0)).abs() < 1e-12);
        assert_eq!(
            posdef_criterion(&simon_vx(1.0).unwrap(), &tol())
                .unwrap()
                .tag,
            Tag::EntangledGaussianCM
        );
        let bad = MatrixValue::from_diagonal(&[1.0, -1.0, 1.0, 1.0]).unwrap();
        assert!(matches!(
            posdef_criterion(&bad, &tol()),
            Err(Error::NotPositiveDefinite { .. })
        ));
    }

    #[test]
    fn nonnegative_det_c_is_never_entangled() {
        // C = diag(0.5, 0.3) has det C > 0.
        let v = TwoModeBlocks::standard(2.0, 1.5, 0.5, 0.3)
            .unwrap()
            .reassemble();
        assert_eq!(
            classify_global(&v, &tol()).unwrap().tag,
            Tag::SeparableGaussianCM
        );
        assert_eq!(
            posdef_criterion(&v, &tol()).unwrap().tag,
            Tag::SeparableGaussianCM
        );
    }

    #[test]
    fn uncorrelated_thermal_is_separable() {
        let v = thermal(&[1.0, 2.0]).unwrap();
        assert_eq!(
            classify_local(&v, &tol()).unwrap().tag,
            Tag::SeparableGaussianCM
        );
        assert_eq!(
            classify_global(&v, &tol()).unwrap().tag,
            Tag::SeparableGaussianCM
        );
    }

    #[test]
    fn separability_margin_equals_delta_tilde_form() {
        let v = simon_vx(0.7).unwrap();
        let c = classify_global(&v, &tol()).unwrap();
        let m = simon_separability_margin(&c.invariants);
        assert!((m - c.margin(DELTA_TILDE_MARGIN).unwrap().value).abs() < 1e-12);
    }

    #[test]
    fn tag_round_trips_through_text() {
        for t in [
            Tag::Unphysical,
            Tag::SeparableGaussianCM,
            Tag::EntangledGaussianCM,
        ] {
            assert_eq!(t.as_str().parse::<Tag>().unwrap(), t);
        }
        assert!("separable".parse::<Tag>().is_err());
    }
}
