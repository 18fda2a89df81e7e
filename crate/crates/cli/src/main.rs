use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use spectrality::harness;
use spectrality::json::{element_from_json, element_in, element_to_json, num, parse_family};
use spectrality::models::censym::{self, BaseAvailability};
use spectrality::models::spectral_base;
use spectrality::spectral;
use spectrality::{AElem, CompressionBase, DualityFace, Error, ModelKind, ModelSpace, Tol};

#[derive(Parser)]
#[command(name = "spectrality", version, about = "Spectral theory of compression bases in order unit spaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run every property suite registered for a model and write a JSON report.
    Check {
        #[command(flatten)]
        opts: Opts,
        /// Run a single suite instead of all registered ones.
        #[arg(long)]
        suite: Option<String>,
    },
    /// Spectral data of an element, with the Riemann reconstruction error at --mesh.
    Spectral {
        #[command(flatten)]
        opts: Opts,
    },
    /// Classify the retractions with a sharp focus of a centrally symmetric space.
    Classify {
        #[command(flatten)]
        opts: Opts,
    },
    /// Orthogonal decomposition a = a⁺ - a⁻ of an element.
    Decompose {
        #[command(flatten)]
        opts: Opts,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Model {
    Fn,
    Jb,
    Censym,
}

#[derive(Args)]
struct Opts {
    #[arg(long, value_enum)]
    model: Option<Model>,
    #[arg(long, allow_negative_numbers = true)]
    dim: Option<i64>,
    /// Norm family of a centrally symmetric model: lp:P, lp:inf or stadium:S,R.
    #[arg(long)]
    family: Option<String>,
    #[arg(long, default_value_t = 1000)]
    trials: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
    #[arg(long, default_value_t = 1e-2)]
    mesh: f64,
    /// Element (or focus) JSON file.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Output path; standard output when absent.
    #[arg(long)]
    report: Option<PathBuf>,
}

/// Failures mapped to exit codes: usage problems exit 2, violations 1.
enum Failure {
    Usage(String),
    Violation(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_)
            | Error::InvalidDimension(_)
            | Error::ShapeMismatch(_)
            | Error::UnknownSuite(_)
            | Error::SizeLimit(_)
            | Error::VersionMismatch(_, _) => Failure::Usage(e.to_string()),
            other => Failure::Violation(other.to_string()),
        }
    }
}

type Outcome = Result<bool, Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let result = match &cli.command {
        Command::Check { opts, suite } => cmd_check(opts, suite.as_deref()),
        Command::Spectral { opts } => cmd_spectral(opts),
        Command::Classify { opts } => cmd_classify(opts),
        Command::Decompose { opts } => cmd_decompose(opts),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Violation(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn tolerances(opts: &Opts) -> Result<Tol, Failure> {
    let tol = Tol::default().with_eq_tol(opts.tol);
    if !tol.is_valid() {
        return Err(Failure::Usage(format!("--tol must be positive, got {}", opts.tol)));
    }
    Ok(tol)
}

/// The space selected by the model flags, if any were given.
fn flag_space(opts: &Opts) -> Result<Option<ModelSpace>, Failure> {
    let tol = tolerances(opts)?;
    let Some(model) = opts.model else {
        if opts.dim.is_some() || opts.family.is_some() {
            return Err(Failure::Usage("--dim and --family need --model".into()));
        }
        return Ok(None);
    };
    let dim = match opts.dim {
        Some(d) if d >= 1 => Some(d as usize),
        Some(d) => return Err(Failure::Usage(format!("--dim must be at least 1, got {d}"))),
        None => None,
    };
    let kind = match model {
        Model::Fn | Model::Jb => {
            if opts.family.is_some() {
                return Err(Failure::Usage("--family applies only to --model censym".into()));
            }
            let n = dim.ok_or_else(|| Failure::Usage("--dim is required".into()))?;
            if matches!(model, Model::Fn) {
                ModelKind::Fn { n }
            } else {
                ModelKind::Jb { n }
            }
        }
        Model::Censym => {
            let desc = opts
                .family
                .as_deref()
                .ok_or_else(|| Failure::Usage("--model censym needs --family".into()))?;
            let n = match dim {
                Some(n) => n,
                None if desc.starts_with("stadium") => 2,
                None => return Err(Failure::Usage("--dim is required".into())),
            };
            ModelKind::CenSym {
                family: parse_family(desc, n)?,
            }
        }
    };
    Ok(Some(ModelSpace::new(kind, tol)?))
}

fn read_input(opts: &Opts) -> Result<Value, Failure> {
    let path = opts
        .input
        .as_ref()
        .ok_or_else(|| Failure::Usage("--input is required".into()))?;
    let text = fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("{} is not JSON: {e}", path.display())))
}

/// The element of `--input`, in the space given by the flags or by the file.
fn read_element(opts: &Opts) -> Result<(ModelSpace, AElem), Failure> {
    let v = read_input(opts)?;
    match flag_space(opts)? {
        Some(space) => {
            if v.get("model").is_some() {
                let (file_space, _) = element_from_json(&v, *space.tol())?;
                if file_space.descriptor() != space.descriptor() {
                    return Err(Failure::Usage(format!(
                        "model flags select {} but the input is an element of {}",
                        space.descriptor(),
                        file_space.descriptor()
                    )));
                }
            }
            let a = element_in(&space, &v)?;
            Ok((space, a))
        }
        None => Ok(element_from_json(&v, tolerances(opts)?)?),
    }
}

fn write_output(opts: &Opts, v: &Value) -> Result<(), Failure> {
    let text = format!("{}\n", serde_json::to_string_pretty(v).expect("JSON values serialize"));
    match &opts.report {
        Some(path) => {
            fs::write(path, text).map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn base_or_diagnostic(space: &ModelSpace, opts: &Opts) -> Result<CompressionBase, Failure> {
    match spectral_base(space, opts.trials.min(500), opts.seed)? {
        BaseAvailability::Available(b) => Ok(b),
        BaseAvailability::Unavailable(cert) => Err(Failure::Violation(format!(
            "comparability unavailable for {}: {}; failing focus {}",
            space.descriptor(),
            cert.reason,
            element_to_json(space, &cert.focus)
        ))),
    }
}

fn cmd_check(opts: &Opts, suite: Option<&str>) -> Outcome {
    let space = flag_space(opts)?.ok_or_else(|| Failure::Usage("check needs --model".into()))?;
    let report = match suite {
        Some(name) => harness::run_suite(name, &space, opts.trials, opts.seed)?,
        None => harness::run_all(&space, opts.trials, opts.seed)?,
    };
    let text = report.to_json_string();
    match &opts.report {
        Some(path) => fs::write(path, format!("{text}\n"))
            .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))?,
        None => println!("{text}"),
    }
    for case in report.failures() {
        eprintln!("FAIL {}: {}", case.check, case.detail);
    }
    Ok(report.passed())
}

fn cmd_spectral(opts: &Opts) -> Outcome {
    if !(opts.mesh > 0.0) {
        return Err(Failure::Usage(format!("--mesh must be positive, got {}", opts.mesh)));
    }
    let (space, a) = read_element(opts)?;
    let base = base_or_diagnostic(&space, opts)?;
    let (lo, hi) = space.spectral_bounds(&a)?;
    // resolution on [L - mesh, U] at spacing mesh, at most 2001 points
    let step = opts.mesh.max((hi - lo + opts.mesh) / 2000.0);
    let count = ((hi - lo + opts.mesh) / step).ceil() as usize;
    let grid: Vec<f64> = (0..=count).map(|k| (lo - opts.mesh + k as f64 * step).min(hi)).collect();
    let data = spectral::spectral_resolution(&base, &a, &grid)?;
    let (approx, error) = spectral::riemann_reconstruct(&base, &a, opts.mesh)?;
    let mut out = data.to_json(&space);
    out["riemann"] = json!({
        "mesh": num(opts.mesh),
        "error": num(error),
        "sum": element_to_json(&space, &approx),
    });
    write_output(opts, &out)?;
    Ok(error <= opts.mesh)
}

fn cmd_decompose(opts: &Opts) -> Outcome {
    let (space, a) = read_element(opts)?;
    let base = base_or_diagnostic(&space, opts)?;
    let p = spectral::p_pm(&base, &a)?;
    let (pos, neg, abs) = spectral::decompose_with(&base, &a, &p)?;
    let e = |x: &AElem| element_to_json(&space, x);
    write_output(
        opts,
        &json!({ "a": e(&a), "p_plus": e(&p), "pos": e(&pos), "neg": e(&neg), "abs": e(&abs) }),
    )?;
    Ok(true)
}

fn face_json(face: &DualityFace) -> Value {
    let kind = match face {
        DualityFace::Singleton(_) => "singleton",
        DualityFace::Segment(_, _) => "segment",
        DualityFace::Polytope(_) => "polytope",
        DualityFace::Approximate { .. } => "approximate",
    };
    json!({
        "kind": kind,
        "vertices": face.vertices().iter().map(|v| v.iter().map(|x| num(*x)).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "diameter": num(face.diameter()),
    })
}

/// A focus from an element file, `{"y": [...]}` or a bare array `y`.
fn read_focus(opts: &Opts) -> Result<(ModelSpace, AElem), Failure> {
    let v = read_input(opts)?;
    let y = match &v {
        Value::Array(_) => Some(&v),
        Value::Object(m) if !m.contains_key("data") => m.get("y"),
        _ => None,
    };
    match y {
        Some(y) => {
            let space = flag_space(opts)?.ok_or_else(|| Failure::Usage("a bare focus needs model flags".into()))?;
            let payload = json!({ "data": [0.5, y] });
            Ok((space.clone(), element_in(&space, &payload)?))
        }
        None => read_element(opts),
    }
}

fn cmd_classify(opts: &Opts) -> Outcome {
    let (space, p) = read_focus(opts)?;
    if space.family().is_none() {
        return Err(Failure::Usage("classify applies to --model censym".into()));
    }
    let c = censym::classify_focus(&space, &p)?;
    let reps: Vec<Value> = c
        .representatives
        .iter()
        .map(|r| {
            json!({
                "x": r.x.iter().map(|v| num(*v)).collect::<Vec<_>>(),
                "primal_face": face_json(&r.primal_face),
                "f_compression": r.f_compression,
            })
        })
        .collect();
    let out = json!({
        "focus": element_to_json(&space, &p),
        "class": c.class.label(),
        "dual_face": face_json(&c.dual_face),
        "extremality_face": c.extremality_face.iter().map(|v| v.iter().map(|x| num(*x)).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "representatives": reps,
    });
    write_output(opts, &out)?;
    Ok(true)
}
