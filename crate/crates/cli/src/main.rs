//! Command-line front end: standard collections, tilt words, exchange graph
//! exploration and σ-exceptionality checks.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use sigmatilt::heartex::{explore, export_graph, GraphFormat, ShiftWindow};
use sigmatilt::quiver::parse_quiver;
use sigmatilt::rep::indecomposable_closure;
use sigmatilt::stab::{make_stability, sigma_exceptional_check};
use sigmatilt::tilt::{apply_word, check_e1_e2, cross_check, format_tilt_word, parse_tilt_word, std_collection};
use sigmatilt::{DerivedCategory, DerivedObject, Error, IndecKey, SymbolicCollection};

const EXIT_INPUT: u8 = 2;
const EXIT_ENGINE: u8 = 3;
const EXIT_MISMATCH: u8 = 4;

#[derive(Parser)]
#[command(name = "sigmatilt", version, about = "Simple tilts of exceptional collections over acyclic quivers")]
struct Cli {
    /// Output format; each command has its own default.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Seed for randomly drawn charges.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads for exploration.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
    Dot,
}

#[derive(Subcommand)]
enum Command {
    /// Print the collection of simple modules.
    Std { quiver: PathBuf },
    /// Apply a tilt word such as "2+ 1-" to the standard collection.
    Tilt {
        quiver: PathBuf,
        word: String,
        /// Cross-check every step against a full recomputation.
        #[arg(long)]
        check: bool,
    },
    /// Breadth-first exploration of the exchange graph of hearts.
    Explore {
        quiver: PathBuf,
        #[arg(long, default_value_t = 6)]
        depth: usize,
        /// Inclusive range of allowed shifts, `lo:hi`.
        #[arg(long, default_value = "-1:2", allow_hyphen_values = true)]
        window: String,
    },
    /// Check σ-exceptionality of a collection for the heart reached by a word.
    Stab {
        quiver: PathBuf,
        /// Tilt word leading to the heart; empty for the standard heart.
        #[arg(default_value = "")]
        word: String,
        /// Charges of the heart simples, `[[re, im], ...]`; drawn from
        /// `--seed` when omitted.
        #[arg(long, allow_hyphen_values = true)]
        charges: Option<String>,
        /// Collection to test, in dump format; defaults to the heart itself.
        #[arg(long)]
        collection_file: Option<PathBuf>,
    },
}

/// Output of a command and the exit code it asks for.
struct Outcome {
    text: String,
    code: u8,
}

impl Outcome {
    fn ok(text: String) -> Outcome {
        Outcome { text, code: 0 }
    }
}

enum Failure {
    Input(String),
    Engine(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        match e {
            Error::Parse(_)
            | Error::OrderingViolation { .. }
            | Error::VertexOutOfRange { .. }
            | Error::A1Violated { .. }
            | Error::A2Violated { .. }
            | Error::IndexOutOfRange { .. }
            | Error::InvalidCharge(_) => Failure::Input(e.to_string()),
            other => Failure::Engine(other),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            print!("{}", out.text);
            ExitCode::from(out.code)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_INPUT)
        }
        Err(Failure::Engine(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_ENGINE)
        }
    }
}

fn run(cli: &Cli) -> Result<Outcome, Failure> {
    match &cli.command {
        Command::Std { quiver } => {
            let cat = load(quiver)?;
            let c = std_collection(&cat)?;
            Ok(Outcome::ok(match cli.format {
                Some(Format::Text) => c.to_text(&cat),
                _ => pretty(&c.dump(&cat)),
            }))
        }
        Command::Tilt { quiver, word, check } => cmd_tilt(cli, quiver, word, *check),
        Command::Explore { quiver, depth, window } => {
            let cat = load(quiver)?;
            let window = ShiftWindow::parse(window)?;
            let start = std_collection(&cat)?;
            let graph = explore(&cat, &start, *depth, window, cli.jobs.max(1))?;
            let format = match cli.format {
                Some(Format::Json) => GraphFormat::Json,
                Some(Format::Text) => GraphFormat::Text,
                _ => GraphFormat::Dot,
            };
            Ok(Outcome::ok(export_graph(&graph, format)))
        }
        Command::Stab {
            quiver,
            word,
            charges,
            collection_file,
        } => cmd_stab(cli, quiver, word, charges.as_deref(), collection_file.as_deref()),
    }
}

fn load(path: &Path) -> Result<DerivedCategory, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))?;
    Ok(DerivedCategory::new(Arc::new(parse_quiver(&text)?)))
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json");
    s.push('\n');
    s
}

fn heart_after(cat: &DerivedCategory, word: &str) -> Result<SymbolicCollection, Failure> {
    let parsed = parse_tilt_word(word)?;
    let start = std_collection(cat)?;
    Ok(apply_word(cat, &start, &parsed)?
        .pop()
        .map_or(start, |(_, c)| c))
}

fn cmd_tilt(cli: &Cli, quiver: &Path, word: &str, check: bool) -> Result<Outcome, Failure> {
    let cat = load(quiver)?;
    let parsed = parse_tilt_word(word)?;
    let start = std_collection(&cat)?;
    let steps = apply_word(&cat, &start, &parsed)?;
    let mut clean = true;
    let mut step_json = Vec::new();
    let mut step_text = Vec::new();
    let mut before = start.clone();
    for (k, (step, after)) in steps.iter().enumerate() {
        let token = format_tilt_word(&parsed[k..=k]);
        let mut entry = json!({
            "token": token,
            "permutation": step.permutation.iter().map(|p| p + 1).collect::<Vec<_>>(),
            "pivot": step.pivot,
            "landing": step.landing,
        });
        let mut line = format!("{token}: pivot {} landing {}", step.pivot, step.landing);
        if check {
            let report = cross_check(&cat, &before, step, after)?;
            let conditions = check_e1_e2(after);
            let problems: Vec<String> = report
                .mismatches
                .iter()
                .map(|m| format!("{m:?}"))
                .chain((!conditions.is_empty()).then(|| format!("{conditions:?}")))
                .collect();
            clean &= problems.is_empty();
            line.push_str(if problems.is_empty() { " ok" } else { " MISMATCH" });
            for p in &problems {
                line.push_str(&format!("\n  {p}"));
            }
            entry["mismatches"] = json!(problems);
        }
        step_json.push(entry);
        step_text.push(line);
        before = after.clone();
    }
    let text = match cli.format {
        Some(Format::Text) => {
            let mut out = before.to_text(&cat);
            for line in step_text {
                out.push_str(&line);
                out.push('\n');
            }
            out
        }
        _ => pretty(&json!({
            "word": format_tilt_word(&parsed),
            "collection": before.dump(&cat),
            "steps": step_json,
        })),
    };
    Ok(Outcome {
        text,
        code: if clean { 0 } else { EXIT_MISMATCH },
    })
}

fn parse_charges(text: &str) -> Result<Vec<Complex64>, Failure> {
    let pairs: Vec<[f64; 2]> =
        serde_json::from_str(text).map_err(|e| Failure::Input(format!("charges: {e}")))?;
    Ok(pairs.into_iter().map(|[re, im]| Complex64::new(re, im)).collect())
}

/// Charges with phases in `[0.05, 0.95]` and masses in `[0.5, 2]`.
fn random_charges(n: usize, seed: u64) -> Vec<Complex64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| {
            let phase: f64 = rng.gen_range(0.05..0.95);
            let mass: f64 = rng.gen_range(0.5..2.0);
            Complex64::from_polar(mass, std::f64::consts::PI * phase)
        })
        .collect()
}

fn read_collection(cat: &DerivedCategory, path: &Path) -> Result<Vec<DerivedObject>, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))?;
    let bad = |what: &str| Failure::Input(format!("collection file: {what}"));
    let v: Value = serde_json::from_str(&text).map_err(|e| bad(&e.to_string()))?;
    let items = v["items"].as_array().ok_or_else(|| bad("missing items array"))?;
    let mut out = Vec::with_capacity(items.len());
    for item in items {
        let summands = item["summands"].as_array().ok_or_else(|| bad("item without summands"))?;
        let mut parts = Vec::new();
        for s in summands {
            let (key, shift) = match s.as_array().map(Vec::as_slice) {
                Some([Value::String(k), sh]) => (k, sh.as_i64().ok_or_else(|| bad("shift"))?),
                _ => return Err(bad("summand must be [key, shift]")),
            };
            let key: IndecKey = key.parse()?;
            parts.push((resolve(cat, &key)?, shift));
        }
        out.push(DerivedObject::from_summands(parts));
    }
    Ok(out)
}

fn resolve(cat: &DerivedCategory, key: &IndecKey) -> Result<sigmatilt::IndecId, Failure> {
    let reg = cat.registry();
    if let Some(id) = reg.find_key(key) {
        return Ok(id);
    }
    if key.dims.len() != cat.mu() {
        return Err(Failure::Input(format!("key {key} has the wrong length")));
    }
    indecomposable_closure(reg, key.dims.iter().sum())?;
    reg.find_key(key)
        .ok_or_else(|| Failure::Input(format!("no indecomposable with key {key}")))
}

fn cmd_stab(
    cli: &Cli,
    quiver: &Path,
    word: &str,
    charges: Option<&str>,
    collection_file: Option<&Path>,
) -> Result<Outcome, Failure> {
    let cat = load(quiver)?;
    let heart = heart_after(&cat, word)?;
    let z = match charges {
        Some(text) => parse_charges(text)?,
        None => random_charges(heart.len(), cli.seed),
    };
    let sigma = make_stability(&heart, &z)?;
    let items = match collection_file {
        Some(path) => read_collection(&cat, path)?,
        None => heart.objects(),
    };
    let verdict = sigma_exceptional_check(&cat, &sigma, &items)?;
    let text = match cli.format {
        Some(Format::Text) => format!(
            "pass: {}\nr: {}\n{}",
            verdict.to_json()["pass"],
            verdict.r.map_or("-".to_string(), |r| r.to_string()),
            verdict.witnesses.iter().map(|w| format!("{w}\n")).collect::<String>()
        ),
        _ => pretty(&json!({
            "heart": heart.dump(&cat),
            "charges": z.iter().map(|c| [c.re, c.im]).collect::<Vec<_>>(),
            "verdict": verdict.to_json(),
        })),
    };
    Ok(Outcome::ok(text))
}
