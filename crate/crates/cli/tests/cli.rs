use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn bonafide(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_bonafide"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn");
    child
        .stdin
        .take()
        .unwrap()
        .write_all(stdin.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn ok(args: &[&str], stdin: &str) -> String {
    let out = bonafide(args, stdin);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn code(args: &[&str], stdin: &str) -> (i32, String) {
    let out = bonafide(args, stdin);
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn gen(family: &str, param: &[&str]) -> String {
    let mut args = vec!["gen", "--family", family, "--format", "machine"];
    args.extend_from_slice(param);
    ok(&args, "")
}

fn classify_json(doc: &str) -> Value {
    serde_json::from_str(&ok(&["classify", "--format", "machine"], doc)).unwrap()
}

const IDENTITY: &str = "1 0 0 0\n0 1 0 0\n0 0 1 0\n0 0 0 1\n";

#[test]
fn classify_examples() {
    let j = classify_json(&gen("simon_vx", &["--x", "1"]));
    assert_eq!(j["classification"]["tag"], "EntangledGaussianCM");

    let j = classify_json(&gen("simon_vx", &["--x", "0.1"]));
    assert_eq!(j["classification"]["tag"], "Unphysical");
    let det = j["classification"]["margins"]
        .as_array()
        .unwrap()
        .iter()
        .find(|m| m["name"] == "det_V - 1")
        .unwrap();
    assert!((det["value"].as_f64().unwrap() - (0.18 - 1.0)).abs() < 1e-12);
    assert_eq!(det["passes"], false);

    let j = classify_json(IDENTITY);
    assert_eq!(j["classification"]["tag"], "SeparableGaussianCM");
    for route in j["physicality"].as_array().unwrap() {
        assert_eq!(route["verdict"], true);
    }
    for key in [
        "det_a",
        "det_b",
        "det_c",
        "det_v",
        "i4",
        "delta",
        "delta_tilde",
        "gamma_sep",
    ] {
        assert!(j["classification"]["invariants"][key].is_number(), "{key}");
    }

    let text = ok(&["classify", "--route", "local"], IDENTITY);
    assert!(text.starts_with("tag: SeparableGaussianCM"));
}

#[test]
fn machine_output_round_trips() {
    for doc in [
        gen("random_physical", &["--seed", "5"]),
        gen("random_symmetric", &["--seed", "9"]),
        gen("simon_vx", &["--x", "0.3"]),
        gen("two_mode_squeezed", &["--r", "0.7"]),
    ] {
        let first = classify_json(&doc);
        let second = classify_json(&serde_json::to_string(&first).unwrap());
        assert_eq!(first["matrix"], second["matrix"]);
        assert_eq!(first["classification"], second["classification"]);
        assert_eq!(first["physicality"], second["physicality"]);
    }
}

#[test]
fn generators_are_reproducible() {
    assert_eq!(
        gen("random_physical", &["--seed", "42"]),
        gen("random_physical", &["--seed", "42"])
    );
    assert_ne!(
        gen("random_physical", &["--seed", "42"]),
        gen("random_physical", &["--seed", "43"])
    );
    let j: Value = serde_json::from_str(&gen("simon_vx", &["--x", "0.5"])).unwrap();
    assert_eq!(
        j["matrix"],
        serde_json::json!([
            [1.5, 0.0, 0.5, 0.0],
            [0.0, 1.5, 0.0, -1.0],
            [0.5, 0.0, 1.5, 0.0],
            [0.0, -1.0, 0.0, 1.5]
        ])
    );
    let j: Value = serde_json::from_str(&gen("two_mode_squeezed", &["--r", "0"])).unwrap();
    assert_eq!(
        j["matrix"],
        serde_json::json!([
            [1.0, 0.0, 0.0, 0.0],
            [0.0, 1.0, 0.0, 0.0],
            [0.0, 0.0, 1.0, 0.0],
            [0.0, 0.0, 0.0, 1.0]
        ])
    );
    // text output is itself a valid bare document
    let text = ok(&["gen", "--family", "thermal", "--nu", "1,2"], "");
    let j = classify_json(&text);
    assert_eq!(j["classification"]["tag"], "SeparableGaussianCM");
}

#[test]
fn exit_codes() {
    assert_eq!(code(&["classify"], "1 0 x 0\n").0, 2);
    assert_eq!(code(&["classify"], "{\"matrix\": ").0, 2);
    assert_eq!(code(&["classify"], "").0, 2);
    assert_eq!(code(&["classify", "--bogus"], IDENTITY).0, 2);
    assert_eq!(code(&["classify", "--tol-rel", "-1"], IDENTITY).0, 2);
    assert_eq!(code(&["gen", "--family", "simon_vx", "--x", "0"], "").0, 2);
    assert_eq!(code(&["gen", "--family", "simon_vx"], "").0, 2);

    let (c, err) = code(&["classify"], "1 0 0\n0 1 0\n0 0 1\n");
    assert_eq!(c, 3);
    assert!(err.contains("even"), "{err}");
    let (c, err) = code(&["classify"], "1 0 0\n0 1 0\n");
    assert_eq!(c, 3);
    assert!(err.contains("square"), "{err}");
    let (c, err) = code(&["classify"], "1 0.5 0 0\n0 1 0 0\n0 0 1 0\n0 0 0 1\n");
    assert_eq!(c, 3);
    assert!(err.contains("symmetric"), "{err}");
    assert_eq!(code(&["classify"], "1 0\n0 1\n").0, 3);

    // an unphysical verdict is not an error
    assert_eq!(
        code(&["classify"], &gen("random_symmetric", &["--seed", "1"])).0,
        0
    );

    let (c, err) = code(&["williamson"], &gen("random_symmetric", &["--seed", "3"]));
    assert_eq!(c, 4);
    assert!(err.contains("eigenvalue"), "{err}");
    let (c, err) = code(&["standard-form"], "1 0 0 0\n0 1 0 0\n0 0 1 0\n0 0 0 -1\n");
    assert_eq!(c, 4);
    assert!(err.contains("block B"), "{err}");

    let (c, err) = code(&["classify", "--input", "/nonexistent/m.json"], "");
    assert_eq!(c, 1);
    assert!(err.contains("/nonexistent/m.json"), "{err}");
}

#[test]
fn tolerance_flags_and_document_tolerance() {
    let doc = "1 1e-7 0 0\n0 1 0 0\n0 0 1 0\n0 0 0 1\n";
    assert_eq!(code(&["classify"], doc).0, 3);
    assert_eq!(code(&["classify", "--tol-rel", "1e-6"], doc).0, 0);
    let json =
        r#"{"matrix": [[1,1e-7,0,0],[0,1,0,0],[0,0,1,0],[0,0,0,1]], "tolerance": {"rel": 1e-6}}"#;
    let j = classify_json(json);
    assert_eq!(j["tolerance"]["rel"], 1e-6);
    assert_eq!(code(&["classify", "--tol-rel", "1e-9"], json).0, 3);
}

fn sweep_rows(args: &[&str]) -> Vec<Vec<String>> {
    let mut full = vec!["sweep"];
    full.extend_from_slice(args);
    let out = ok(&full, "");
    let mut lines = out.lines();
    assert_eq!(
        lines.next().unwrap(),
        "param,det_v,delta,delta_tilde,nu_minus,nu_tilde_minus,heisenberg_margin,simon_margin,tag"
    );
    lines
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

fn num(s: &str) -> f64 {
    s.parse().unwrap()
}

#[test]
fn sweep_simon_family() {
    let rows = sweep_rows(&[
        "--family", "simon_vx", "--from", "0.05", "--to", "1", "--step", "0.05",
    ]);
    assert_eq!(rows.len(), 20);
    for row in &rows[..2] {
        assert!(num(&row[7]) >= 0.0);
        assert_eq!(row[8], "Unphysical");
    }
    let first = rows.iter().position(|r| r[8] != "Unphysical").unwrap();
    assert_eq!(num(&rows[first][0]), 0.5);
    assert!(rows[first..].iter().all(|r| r[8] != "Unphysical"));
    // 17 significant digits
    assert_eq!(rows[0][0], "5.0000000000000003e-2");
}

#[test]
fn sweep_thresholds_within_one_step() {
    let step = 1e-3;
    let rows = sweep_rows(&[
        "--family", "simon_vx", "--from", "0.001", "--to", "1", "--step", "0.001",
    ]);
    // grid intervals [x_k, x_k+1] across which a column changes sign
    let crossings = |col: usize, offset: f64| -> Vec<(f64, f64)> {
        rows.windows(2)
            .filter(|w| (num(&w[0][col]) - offset >= 0.0) != (num(&w[1][col]) - offset >= 0.0))
            .map(|w| (num(&w[0][0]), num(&w[1][0])))
            .collect()
    };
    let within =
        |(lo, hi): (f64, f64), t: f64| hi - lo <= step * (1.0 + 1e-9) && lo <= t && t <= hi;
    let x_det = (33f64.sqrt() - 1.0) / 16.0;
    let det = crossings(1, 1.0);
    assert!(det.len() == 1 && within(det[0], x_det), "{det:?}");
    let heis = crossings(6, 0.0);
    assert!(heis.len() == 1 && within(heis[0], 0.5), "{heis:?}");
    let simon = crossings(7, 0.0);
    assert!(
        simon.len() == 2 && within(simon[0], 0.125) && within(simon[1], 0.5),
        "{simon:?}"
    );
}

#[test]
fn sweep_other_families() {
    let rows = sweep_rows(&[
        "--family",
        "two_mode_squeezed",
        "--from",
        "0",
        "--to",
        "0.5",
        "--step",
        "0.25",
    ]);
    let expected = [1.0, (-0.5f64).exp(), (-1.0f64).exp()];
    assert_eq!(rows.len(), 3);
    for (row, e) in rows.iter().zip(expected) {
        assert!((num(&row[5]) - e).abs() < 1e-12, "{row:?}");
    }
    assert_eq!(rows[0][8], "SeparableGaussianCM");
    assert_eq!(rows[1][8], "EntangledGaussianCM");

    let rows = sweep_rows(&[
        "--family", "thermal", "--from", "1", "--to", "2", "--step", "1",
    ]);
    assert_eq!(rows.len(), 2);
    assert!(rows.iter().all(|r| r[8] == "SeparableGaussianCM"));

    let rows = sweep_rows(&[
        "--family",
        "random_symmetric",
        "--from",
        "0",
        "--to",
        "20",
        "--step",
        "1",
    ]);
    assert_eq!(rows.len(), 21);
    assert!(rows.iter().any(|r| r[4].is_empty()));

    assert_eq!(
        code(
            &["sweep", "--family", "vacuum", "--from", "0", "--to", "1", "--step", "1"],
            ""
        )
        .0,
        2
    );
    assert_eq!(
        code(
            &["sweep", "--family", "simon_vx", "--from", "1", "--to", "0", "--step", "0.1"],
            ""
        )
        .0,
        2
    );
}

#[test]
fn sweep_writes_file_with_path_errors() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sweep.csv");
    let p = path.to_str().unwrap();
    ok(
        &[
            "sweep", "--family", "simon_vx", "--from", "0.5", "--to", "0.6", "--step", "0.1",
            "--out", p,
        ],
        "",
    );
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(text.lines().count(), 3);

    let bad = dir.path().join("missing").join("sweep.csv");
    let (c, err) = code(
        &[
            "sweep",
            "--family",
            "simon_vx",
            "--from",
            "0.5",
            "--to",
            "0.6",
            "--step",
            "0.1",
            "--out",
            bad.to_str().unwrap(),
        ],
        "",
    );
    assert_eq!(c, 1);
    assert!(err.contains("missing"), "{err}");
}

#[test]
fn williamson_examples() {
    let j: Value =
        serde_json::from_str(&ok(&["williamson", "--format", "machine"], IDENTITY)).unwrap();
    assert!(j["symplectic_residual"].as_f64().unwrap() < 1e-12);
    assert!(j["diagonalization_residual"].as_f64().unwrap() < 1e-12);
    assert_eq!(j["symplectic_eigenvalues"], serde_json::json!([1.0, 1.0]));

    let doc = gen("simon_vx", &["--x", "1"]);
    let w: Value = serde_json::from_str(&ok(&["williamson", "--format", "machine"], &doc)).unwrap();
    let inv: Value =
        serde_json::from_str(&ok(&["invariants", "--format", "machine"], &doc)).unwrap();
    for k in 0..2 {
        let diag = w["w"][2 * k][2 * k].as_f64().unwrap();
        let nu = inv["symplectic_spectrum_2mode"][k].as_f64().unwrap();
        assert!((diag - nu).abs() < 1e-12, "{diag} vs {nu}");
    }

    // more modes
    let three = "2 0 0 0 0 0\n0 2 0 0 0 0\n0 0 3 0 0 0\n0 0 0 1 0 0\n0 0 0 0 1 0\n0 0 0 0 0 4\n";
    let j: Value =
        serde_json::from_str(&ok(&["williamson", "--format", "machine"], three)).unwrap();
    let nus: Vec<f64> = j["symplectic_eigenvalues"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_f64().unwrap())
        .collect();
    let want = [3f64.sqrt(), 2.0, 2.0];
    for (g, e) in nus.iter().zip(&want) {
        assert!((g - e).abs() < 1e-12);
    }
}

#[test]
fn standard_form_command() {
    let doc = gen("random_physical", &["--seed", "8"]);
    let j: Value =
        serde_json::from_str(&ok(&["standard-form", "--format", "machine"], &doc)).unwrap();
    assert!(j["round_trip_residual"].as_f64().unwrap() < 1e-9);
    let cp = j["c_plus"].as_f64().unwrap();
    let cm = j["c_minus"].as_f64().unwrap();
    assert!(cp >= cm.abs());
    let inv: Value =
        serde_json::from_str(&ok(&["invariants", "--format", "machine"], &doc)).unwrap();
    let a = j["a"].as_f64().unwrap();
    assert!((a * a - inv["invariants"]["det_a"].as_f64().unwrap()).abs() < 1e-9 * a * a);
}

#[test]
fn help_documents_the_mixer() {
    let help = ok(&["gen", "--help"], "");
    assert!(help.contains("beam splitter"));
    assert!(help.contains("random_physical"));
    let help = ok(&["--help"], "");
    assert!(help.contains("Exit codes"));
}
