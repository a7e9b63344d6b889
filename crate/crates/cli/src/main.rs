mod document;
mod error;
mod family;
mod report;
mod sweep;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use bonafide::families::generate;
use bonafide::separability::{classify_global, classify_local};
use bonafide::standard_form::round_trip_residual;
use bonafide::{
    check_global, check_local, check_oracle, ppt_spectrum_2mode, reduce_to_standard_form,
    symplectic_spectrum_2mode, symplectic_spectrum_general, two_mode_invariants,
    williamson_decompose, MatrixValue, Tolerance,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use document::{layered_tolerance, parse_document, MatrixDocument, Source, ToleranceOverride};
use error::CliError;
use family::{FamilyArgs, FamilyName};

const GEN_HELP: &str = "\
Families:
  vacuum                 identity
  thermal --nu A,B,..    diag(A, A, B, B, ...), every value >= 1
  two_mode_squeezed --r  standard form a = b = cosh 2r, c+ = -c- = sinh 2r
  simon_vx --x           positive definite for x > 0, physical only for x >= 1/2
  random_physical --seed thermal matrix (nu uniform in [1, 3]) under a random
                         symplectic
  random_symmetric --seed
                         symmetric, entries uniform in [-2, 2]

The random symplectic of random_physical is a local layer followed twice by
a balanced beam splitter on each neighbouring pair of modes and a fresh local
layer. A local layer is R(a) S(z) R(b) on every mode, with rotations R of
uniform angle and the squeezer S(z) = diag(z, 1/z), ln z uniform in [-1, 1].
The beam splitter [[I, I], [-I, I]]/sqrt(2) is orthogonal and symplectic.
Generators use ChaCha8 seeded with --seed, so output is reproducible.";

#[derive(Debug, Parser)]
#[command(
    name = "bonafide",
    version,
    about = "Physicality, separability and symplectic normal forms of Gaussian correlation matrices",
    long_about = "Physicality, separability and symplectic normal forms of Gaussian correlation matrices.\n\n\
        Matrices are read as JSON ({\"matrix\": [[...]], \"label\": ..., \"tolerance\": {\"rel\": ..., \"abs\": ...}}) \
        or as whitespace-delimited rows of numbers, from --input or standard input. Quadratures are ordered \
        (q1, p1, q2, p2, ...) and the vacuum is the identity.\n\n\
        Exit codes: 0 success (the verdict is in the output), 2 unparseable input or bad arguments, \
        3 wrong shape or not symmetric, 4 positivity precondition of the command violated, 1 I/O or internal error."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    format: Format,
    /// Relative tolerance (overrides the document).
    #[arg(long, global = true)]
    tol_rel: Option<f64>,
    /// Absolute tolerance (overrides the document).
    #[arg(long, global = true)]
    tol_abs: Option<f64>,
    /// Write output here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    /// JSON; sweep always writes CSV.
    Machine,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ClassifyRoute {
    Global,
    Local,
}

#[derive(Debug, Args)]
struct InputArgs {
    /// Matrix document; '-' or absent reads standard input.
    #[arg(long)]
    input: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Classify a two-mode matrix as unphysical, separable or entangled.
    Classify {
        #[command(flatten)]
        input: InputArgs,
        /// Which invariants decide the tag.
        #[arg(long, value_enum, default_value_t = ClassifyRoute::Global)]
        route: ClassifyRoute,
    },
    /// Determinant invariants and symplectic spectra.
    Invariants {
        #[command(flatten)]
        input: InputArgs,
    },
    /// Reduce a two-mode matrix to standard form by local symplectics.
    StandardForm {
        #[command(flatten)]
        input: InputArgs,
    },
    /// Williamson decomposition S V S^T = W of a positive definite matrix.
    Williamson {
        #[command(flatten)]
        input: InputArgs,
    },
    /// Generate a matrix document from a named family.
    #[command(after_long_help = GEN_HELP)]
    Gen {
        #[command(flatten)]
        family: FamilyArgs,
    },
    /// Sweep a family parameter and write a CSV table.
    ///
    /// Columns: param, det_v, delta, delta_tilde, nu_minus, nu_tilde_minus,
    /// heisenberg_margin (smallest eigenvalue of V + i Omega), simon_margin
    /// (det A det B + (1 - det C)^2 - I4 - det A - det B), tag. Reals carry 17
    /// significant digits; spectra are empty where V is not positive definite.
    /// The parameter is x for simon_vx, r for two_mode_squeezed, nu (both
    /// modes) for thermal and the seed for the random families.
    #[command(after_long_help = GEN_HELP)]
    Sweep {
        #[arg(long)]
        family: FamilyName,
        #[arg(long)]
        from: f64,
        #[arg(long)]
        to: f64,
        #[arg(long)]
        step: f64,
    },
}

struct Context {
    format: Format,
    flags: ToleranceOverride,
}

impl Context {
    fn load(&self, input: &InputArgs) -> Result<(MatrixDocument, Tolerance), CliError> {
        let text = Source::from_arg(input.input.as_deref()).read()?;
        let doc = parse_document(&text, self.flags)?;
        let tol = doc.effective_tolerance(self.flags)?;
        Ok((doc, tol))
    }

    fn emit(&self, value: serde_json::Value, text: String) -> String {
        match self.format {
            Format::Machine => {
                let mut s = serde_json::to_string_pretty(&value).expect("serializable");
                s.push('\n');
                s
            }
            Format::Text => text,
        }
    }
}

fn require_two_mode(m: &MatrixValue) -> Result<(), CliError> {
    if m.rows() != 4 {
        return Err(CliError::Shape(format!(
            "this command needs a two-mode 4x4 matrix, got {}x{}",
            m.rows(),
            m.cols()
        )));
    }
    Ok(())
}

fn header(doc: &MatrixDocument, tol: &Tolerance) -> serde_json::Value {
    json!({
        "label": doc.label,
        "matrix": report::matrix_json(&doc.matrix),
        "tolerance": report::tolerance_json(tol),
    })
}

fn merge(mut base: serde_json::Value, extra: serde_json::Value) -> serde_json::Value {
    if let (Some(b), serde_json::Value::Object(e)) = (base.as_object_mut(), extra) {
        b.extend(e);
    }
    base
}

fn classify(ctx: &Context, input: &InputArgs, route: ClassifyRoute) -> Result<String, CliError> {
    let (doc, tol) = ctx.load(input)?;
    require_two_mode(&doc.matrix)?;
    let v = &doc.matrix;
    let c = match route {
        ClassifyRoute::Global => classify_global(v, &tol)?,
        ClassifyRoute::Local => classify_local(v, &tol)?,
    };
    let routes = [
        check_oracle(v, &tol)?,
        check_global(v, &tol)?,
        check_local(v, &tol)?,
    ];
    let value = merge(
        header(&doc, &tol),
        json!({
            "classification": merge(
                report::classification_json(&c),
                json!({ "route": match route {
                    ClassifyRoute::Global => "global",
                    ClassifyRoute::Local => "local",
                }}),
            ),
            "physicality": routes.iter().map(report::bona_fide_json).collect::<Vec<_>>(),
        }),
    );
    Ok(ctx.emit(
        value,
        report::classification_text(doc.label.as_deref(), &c, &routes),
    ))
}

fn invariants(ctx: &Context, input: &InputArgs) -> Result<String, CliError> {
    let (doc, tol) = ctx.load(input)?;
    let v = &doc.matrix;
    let positive = bonafide::is_positive_definite(v, &tol)?;
    if v.rows() != 4 && !positive {
        return Err(CliError::Positivity(
            "symplectic spectrum needs a positive definite matrix".into(),
        ));
    }
    let general = if positive {
        Some(symplectic_spectrum_general(v, &tol)?)
    } else {
        None
    };
    let mut value = header(&doc, &tol);
    let mut text = String::new();
    if v.rows() == 4 {
        let inv = two_mode_invariants(v, &tol)?;
        let (two, ppt) = if positive {
            let s = symplectic_spectrum_2mode(v, &tol)?;
            let p = ppt_spectrum_2mode(v, &tol)?;
            (Some([s.nu_minus, s.nu_plus]), Some([p.nu_minus, p.nu_plus]))
        } else {
            (None, None)
        };
        value = merge(
            value,
            json!({
                "invariants": report::invariants_json(&inv),
                "i4_identity_residual": inv.i4_identity_residual(),
                "symplectic_spectrum_2mode": two,
                "ppt_spectrum_2mode": ppt,
            }),
        );
        text.push_str("invariants:\n");
        report::invariants_text(&mut text, &inv);
        text.push_str(&format!(
            "I4 identity residual: {:.3e}\n",
            inv.i4_identity_residual()
        ));
        text.push_str(&report::spectrum_text(
            "two-mode spectrum",
            two.as_ref().map(|a| &a[..]),
        ));
        text.push_str(&report::spectrum_text(
            "partial transpose spectrum",
            ppt.as_ref().map(|a| &a[..]),
        ));
    }
    value = merge(value, json!({ "symplectic_spectrum": general }));
    text.push_str(&report::spectrum_text(
        "symplectic spectrum",
        general.as_deref(),
    ));
    Ok(ctx.emit(value, text))
}

fn standard_form(ctx: &Context, input: &InputArgs) -> Result<String, CliError> {
    let (doc, tol) = ctx.load(input)?;
    require_two_mode(&doc.matrix)?;
    let p = reduce_to_standard_form(&doc.matrix, &tol)?;
    let v_std = p.assemble()?;
    let residual = round_trip_residual(&doc.matrix, &p)?;
    Ok(ctx.emit(
        merge(
            header(&doc, &tol),
            report::standard_form_json(&p, &v_std, residual),
        ),
        report::standard_form_text(&p, &v_std, residual),
    ))
}

fn williamson(ctx: &Context, input: &InputArgs) -> Result<String, CliError> {
    let (doc, tol) = ctx.load(input)?;
    let d = williamson_decompose(&doc.matrix, &tol)?;
    let sym = d.symplectic_residual();
    let diag = d.diagonalization_residual(&doc.matrix);
    Ok(ctx.emit(
        merge(header(&doc, &tol), report::williamson_json(&d, sym, diag)),
        report::williamson_text(&d, sym, diag),
    ))
}

fn gen(ctx: &Context, args: &FamilyArgs) -> Result<String, CliError> {
    let spec = args.spec()?;
    let m = generate(&spec)?;
    Ok(ctx.emit(
        json!({ "label": spec.to_string(), "matrix": report::matrix_json(&m) }),
        format!("# {spec}\n{}", report::matrix_text(&m)),
    ))
}

fn sweep(
    ctx: &Context,
    family: FamilyName,
    from: f64,
    to: f64,
    step: f64,
) -> Result<String, CliError> {
    let tol = layered_tolerance(ToleranceOverride::default(), ctx.flags)?;
    let params = sweep::grid(from, to, step)?;
    let rows = sweep::run(family, &params, &tol)?;
    let mut buf = Vec::new();
    sweep::write_csv(&mut buf, &rows).map_err(|e| CliError::Internal(e.to_string()))?;
    Ok(String::from_utf8(buf).expect("ascii"))
}

fn write_output(out: Option<&Path>, text: &str) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| CliError::Io {
            path: path.display().to_string(),
            source: e,
        }),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|e| CliError::Io {
                    path: "<stdout>".into(),
                    source: e,
                })
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let ctx = Context {
        format: cli.format,
        flags: ToleranceOverride {
            rel: cli.tol_rel,
            abs: cli.tol_abs,
        },
    };
    let text = match &cli.command {
        Command::Classify { input, route } => classify(&ctx, input, *route)?,
        Command::Invariants { input } => invariants(&ctx, input)?,
        Command::StandardForm { input } => standard_form(&ctx, input)?,
        Command::Williamson { input } => williamson(&ctx, input)?,
        Command::Gen { family } => gen(&ctx, family)?,
        Command::Sweep {
            family,
            from,
            to,
            step,
        } => sweep(&ctx, *family, *from, *to, *step)?,
    };
    write_output(cli.out.as_deref(), &text)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("bonafide: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
