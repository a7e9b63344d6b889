//! Text and JSON renderings of the library's results.

use std::fmt::Write;

use bonafide::separability::Classification;
use bonafide::{
    BonaFideReport, Margin, MatrixValue, StandardFormParams, Tolerance, TwoModeInvariants,
    WilliamsonDecomposition,
};
use serde_json::{json, Value};

pub fn matrix_json(m: &MatrixValue) -> Value {
    json!(m.to_rows())
}

pub fn tolerance_json(t: &Tolerance) -> Value {
    json!({ "rel": t.rel, "abs": t.abs })
}

pub fn margin_json(m: &Margin) -> Value {
    json!({
        "name": m.name,
        "value": m.value,
        "threshold": m.threshold,
        "strict": m.strict,
        "passes": m.passes(),
    })
}

pub fn invariants_json(i: &TwoModeInvariants) -> Value {
    json!({
        "det_a": i.det_a,
        "det_b": i.det_b,
        "det_c": i.det_c,
        "det_v": i.det_v,
        "i4": i.i4,
        "delta": i.delta,
        "delta_tilde": i.delta_tilde,
        "gamma_sep": i.gamma_sep,
    })
}

pub fn bona_fide_json(r: &BonaFideReport) -> Value {
    json!({
        "route": r.route.as_str(),
        "verdict": r.verdict,
        "borderline": r.borderline(),
        "nu_minus": r.nu_minus,
        "margins": r.margins.iter().map(margin_json).collect::<Vec<_>>(),
    })
}

pub fn classification_json(c: &Classification) -> Value {
    json!({
        "tag": c.tag.as_str(),
        "reason": c.reason,
        "nu_minus": c.nu_minus,
        "nu_tilde_minus": c.nu_tilde_minus,
        "margins": c.margins.iter().map(margin_json).collect::<Vec<_>>(),
        "invariants": invariants_json(&c.invariants),
    })
}

pub fn standard_form_json(p: &StandardFormParams, v_std: &MatrixValue, residual: f64) -> Value {
    json!({
        "a": p.a,
        "b": p.b,
        "c_plus": p.c_plus,
        "c_minus": p.c_minus,
        "s_local": matrix_json(&p.s_local),
        "standard_form": matrix_json(v_std),
        "round_trip_residual": residual,
    })
}

pub fn williamson_json(d: &WilliamsonDecomposition, sym: f64, diag: f64) -> Value {
    json!({
        "symplectic_eigenvalues": d.symplectic_eigenvalues,
        "degenerate": d.degenerate,
        "w": matrix_json(&d.w),
        "s": matrix_json(&d.s),
        "symplectic_residual": sym,
        "diagonalization_residual": diag,
    })
}

/// Rows of a matrix, one line each, with full precision.
pub fn matrix_text(m: &MatrixValue) -> String {
    let mut out = String::new();
    for row in m.to_rows() {
        let cells: Vec<String> = row.iter().map(|x| format!("{x:>24.16e}")).collect();
        out.push_str(&cells.join(" "));
        out.push('\n');
    }
    out
}

fn opt(x: Option<f64>) -> String {
    x.map_or_else(|| "n/a".to_string(), |v| format!("{v:.16e}"))
}

pub fn margins_text(out: &mut String, margins: &[Margin]) {
    for m in margins {
        let _ = writeln!(
            out,
            "  {:<5} {:<52} {:>24.16e}  (band {:.1e}{})",
            if m.passes() { "ok" } else { "FAIL" },
            m.name,
            m.value,
            m.threshold,
            if m.strict { ", strict" } else { "" }
        );
    }
}

pub fn invariants_text(out: &mut String, i: &TwoModeInvariants) {
    for (name, v) in [
        ("det A", i.det_a),
        ("det B", i.det_b),
        ("det C", i.det_c),
        ("det V", i.det_v),
        ("I4", i.i4),
        ("Delta", i.delta),
        ("Delta_tilde", i.delta_tilde),
        ("Gamma_sep", i.gamma_sep),
    ] {
        let _ = writeln!(out, "  {name:<12} {v:.16e}");
    }
}

pub fn classification_text(
    label: Option<&str>,
    c: &Classification,
    routes: &[BonaFideReport],
) -> String {
    let mut out = String::new();
    if let Some(l) = label {
        let _ = writeln!(out, "label: {l}");
    }
    let _ = writeln!(out, "tag: {}", c.tag);
    let _ = writeln!(out, "reason: {}", c.reason);
    let _ = writeln!(out, "nu_minus: {}", opt(c.nu_minus));
    let _ = writeln!(out, "nu_tilde_minus: {}", opt(c.nu_tilde_minus));
    out.push_str("margins:\n");
    margins_text(&mut out, &c.margins);
    out.push_str("invariants:\n");
    invariants_text(&mut out, &c.invariants);
    for r in routes {
        let _ = writeln!(
            out,
            "physicality ({}): {}",
            r.route.as_str(),
            if r.verdict {
                "bona fide"
            } else {
                "not bona fide"
            }
        );
        margins_text(&mut out, &r.margins);
    }
    out
}

pub fn standard_form_text(p: &StandardFormParams, v_std: &MatrixValue, residual: f64) -> String {
    let mut out = String::new();
    for (name, v) in [
        ("a", p.a),
        ("b", p.b),
        ("c_plus", p.c_plus),
        ("c_minus", p.c_minus),
    ] {
        let _ = writeln!(out, "{name:<8} {v:.16e}");
    }
    out.push_str("S_local:\n");
    out.push_str(&matrix_text(&p.s_local));
    out.push_str("standard form:\n");
    out.push_str(&matrix_text(v_std));
    let _ = writeln!(out, "round-trip residual: {residual:.3e}");
    out
}

pub fn williamson_text(d: &WilliamsonDecomposition, sym: f64, diag: f64) -> String {
    let mut out = String::new();
    let nus: Vec<String> = d
        .symplectic_eigenvalues
        .iter()
        .map(|x| format!("{x:.16e}"))
        .collect();
    let _ = writeln!(out, "symplectic eigenvalues: {}", nus.join(" "));
    if d.degenerate {
        out.push_str("note: degenerate spectrum, S is not unique\n");
    }
    out.push_str("W:\n");
    out.push_str(&matrix_text(&d.w));
    out.push_str("S:\n");
    out.push_str(&matrix_text(&d.s));
    let _ = writeln!(out, "|S Omega S^T - Omega|_max: {sym:.3e}");
    let _ = writeln!(out, "|S V S^T - W|_max: {diag:.3e}");
    out
}

pub fn spectrum_text(label: &str, nus: Option<&[f64]>) -> String {
    match nus {
        Some(v) => {
            let s: Vec<String> = v.iter().map(|x| format!("{x:.16e}")).collect();
            format!("{label}: {}\n", s.join(" "))
        }
        None => format!("{label}: n/a (V is not positive definite)\n"),
    }
}
