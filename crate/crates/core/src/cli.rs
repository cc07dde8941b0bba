//! Command-line front end. Each verb calls one library operation and prints
//! its JSON report; text output is rendered from that same JSON.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::bracket::{canonical_values, evaluate, massey_sum};
use crate::corpus;
use crate::error::Error;
use crate::json::big_to_json;
use crate::lcq::{lcq_is_free, mutative_pair_report};
use crate::link::{artin_longitudes, longitudes_mod_q, PdCode, PureBraidWord};
use crate::mu::{LongitudeSystem, LongitudeSystemFile, MilnorInvariants, MuIndex};
use crate::mutation::{csum_mu, find_detector, mutant_mu, theorem_main_witness, MutationType};

pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_PRECONDITION: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "milnor", version, about = "Milnor invariants, mutation reports and Massey bracket sums for links")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Debug, Args)]
struct LinkArgs {
    /// PD code or longitude-system JSON, or a pure braid such as `3; A13^-1 A23`.
    #[arg(long)]
    link: PathBuf,
    /// Truncation depth; defaults to the least depth the query needs.
    #[arg(long)]
    depth: Option<usize>,
}

#[derive(Debug, Args)]
struct IndexQuery {
    #[command(flatten)]
    link: LinkArgs,
    #[arg(long, value_parser = parse_index)]
    index: MuIndex,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Integer mu(I).
    Mu(IndexQuery),
    /// Indeterminacy Delta(I).
    Delta(IndexQuery),
    /// mu(I), Delta(I) and the residue mu-bar(I).
    MuBar(IndexQuery),
    /// Whether every mu-bar of weight 2..=q vanishes.
    VanishUpTo {
        #[command(flatten)]
        link: LinkArgs,
        #[arg(long)]
        q: usize,
    },
    /// Congruence report for the connected sum alpha # beta or one of its mutants.
    MutateReport {
        #[arg(long)]
        alpha: PathBuf,
        #[arg(long)]
        beta: PathBuf,
        #[arg(long, value_parser = parse_index)]
        index: MuIndex,
        /// Mutation type; omit for the unmutated sum.
        #[arg(long = "type", value_parser = parse_tau)]
        tau: Option<MutationType>,
        #[arg(long)]
        depth: Option<usize>,
    },
    /// Weight-q indices whose mu changes under the mutation.
    FindDetector {
        #[arg(long)]
        alpha: PathBuf,
        #[arg(long)]
        q: usize,
        #[arg(long = "type", value_parser = parse_tau)]
        tau: MutationType,
        #[arg(long)]
        depth: Option<usize>,
        /// Also report the mutant of alpha # alpha^-1 at each detector.
        #[arg(long)]
        witness: bool,
    },
    /// Signed sum of minimal linkings for a Massey product index.
    MasseySum {
        #[arg(long, value_parser = parse_index)]
        index: MuIndex,
        /// JSON object mapping formal linkings to integers; unlisted classes count as 0.
        #[arg(long)]
        values: Option<PathBuf>,
        /// Record that a surface system of matching weight is assumed to exist.
        #[arg(long)]
        assert_surface_system: bool,
    },
    /// Whether the q-th lower central quotient of the surgery manifold is free nilpotent.
    Lcq {
        /// Link to test; not needed with --mutant-of.
        #[arg(long, required_unless_present = "mutant_of")]
        link: Option<PathBuf>,
        #[arg(long)]
        q: usize,
        #[arg(long)]
        depth: Option<usize>,
        /// Compare alpha # alpha^-1 with its mutant instead.
        #[arg(long, requires = "tau", conflicts_with = "link")]
        mutant_of: Option<PathBuf>,
        #[arg(long = "type", value_parser = parse_tau, requires = "mutant_of")]
        tau: Option<MutationType>,
    },
    /// Write the bundled example files into a directory.
    CorpusInstall {
        #[arg(long)]
        dir: PathBuf,
    },
}

fn parse_index(s: &str) -> std::result::Result<MuIndex, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_tau(s: &str) -> std::result::Result<MutationType, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

#[derive(Debug)]
enum Failure {
    Input(String),
    Precondition(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_parse_error() {
            Failure::Input(e.to_string())
        } else {
            Failure::Precondition(e.to_string())
        }
    }
}

type Outcome = std::result::Result<Value, Failure>;

fn read(path: &Path) -> std::result::Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

enum LinkInput {
    Diagram(PdCode),
    Braid(PureBraidWord),
    Longitudes(LongitudeSystemFile),
}

fn load_link(path: &Path) -> std::result::Result<LinkInput, Failure> {
    let text = read(path)?;
    let bad = |e: serde_json::Error| Failure::Input(format!("{}: {e}", path.display()));
    if !text.trim_start().starts_with('{') {
        return Ok(LinkInput::Braid(text.trim().parse()?));
    }
    let value: Value = serde_json::from_str(&text).map_err(bad)?;
    if value.get("crossings").is_some() {
        Ok(LinkInput::Diagram(serde_json::from_value(value).map_err(bad)?))
    } else if value.get("longitudes").is_some() {
        Ok(LinkInput::Longitudes(serde_json::from_value(value).map_err(bad)?))
    } else {
        Err(Failure::Input(format!("{}: expected a PD code or a longitude system", path.display())))
    }
}

/// Longitudes of the link at `depth`, or at `needed` when no depth is given.
/// A longitude file keeps its own depth unless one is requested.
fn system(path: &Path, depth: Option<usize>, needed: usize) -> std::result::Result<LongitudeSystem, Failure> {
    Ok(match load_link(path)? {
        LinkInput::Diagram(pd) => longitudes_mod_q(&pd, depth.unwrap_or(needed).max(2))?,
        LinkInput::Braid(b) => artin_longitudes(&b, depth.unwrap_or(needed).max(2))?,
        LinkInput::Longitudes(f) => {
            let sys = f.into_system()?;
            match depth {
                Some(d) => sys.with_depth(d)?,
                None => sys,
            }
        }
    })
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

fn index_query(q: &IndexQuery) -> std::result::Result<(MilnorInvariants, usize), Failure> {
    let sys = system(&q.link.link, q.link.depth, q.index.weight() + 1)?;
    Ok((MilnorInvariants::new(&sys), sys.depth()))
}

fn execute(command: &Command) -> Outcome {
    match command {
        Command::Mu(q) => {
            let (inv, depth) = index_query(q)?;
            Ok(json!({ "index": q.index, "depth": depth, "mu": big_to_json(&inv.mu(&q.index)?) }))
        }
        Command::Delta(q) => {
            let (inv, depth) = index_query(q)?;
            Ok(json!({ "index": q.index, "depth": depth, "delta": big_to_json(&inv.delta(&q.index)?) }))
        }
        Command::MuBar(q) => {
            let (inv, depth) = index_query(q)?;
            let mut v = to_value(&inv.mu_bar(&q.index)?);
            v["index"] = json!(q.index);
            v["depth"] = json!(depth);
            Ok(v)
        }
        Command::VanishUpTo { link, q } => {
            let sys = system(&link.link, link.depth, q + 1)?;
            let first = MilnorInvariants::new(&sys).first_nonvanishing(*q)?;
            Ok(json!({
                "q": q,
                "depth": sys.depth(),
                "vanish": first.is_none(),
                "first_nonvanishing": first,
            }))
        }
        Command::MutateReport { alpha, beta, index, tau, depth } => {
            let a = system(alpha, *depth, index.weight() + 1)?;
            let b = system(beta, Some(depth.unwrap_or(a.depth())), a.depth())?;
            let report = match tau {
                Some(t) => mutant_mu(&a, &b, index, *t)?,
                None => csum_mu(&a, &b, index)?,
            };
            Ok(to_value(&report))
        }
        Command::FindDetector { alpha, q, tau, depth, witness } => {
            let a = system(alpha, *depth, q + 1)?;
            if *witness {
                return Ok(to_value(&theorem_main_witness(&a, *q, *tau)?));
            }
            let detectors = find_detector(&a, *q, *tau)?;
            Ok(json!({ "q": q, "type": tau, "detectors": detectors }))
        }
        Command::MasseySum { index, values, assert_surface_system } => {
            let expr = massey_sum(index)?;
            let mut out = json!({ "index": index, "weight": index.weight(), "terms": to_value(&expr) });
            if let Some(path) = values {
                let text = read(path)?;
                let raw: BTreeMap<String, i64> = serde_json::from_str(&text)
                    .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
                let canon = canonical_values(&raw).map_err(|e| match e {
                    Error::Incompatible(m) => Failure::Input(format!("{}: {m}", path.display())),
                    other => other.into(),
                })?;
                out["evaluation"] = to_value(&evaluate(&expr, &canon, *assert_surface_system));
            }
            Ok(out)
        }
        Command::Lcq { link, q, depth, mutant_of, tau } => match (mutant_of, tau) {
            (Some(alpha), Some(t)) => {
                let a = system(alpha, *depth, q + 1)?;
                Ok(to_value(&mutative_pair_report(&a, *q, *t)?))
            }
            _ => {
                let path = link.as_ref().expect("clap requires --link without --mutant-of");
                let sys = system(path, *depth, q + 1)?;
                Ok(to_value(&lcq_is_free(&sys, *q)?))
            }
        },
        Command::CorpusInstall { dir } => {
            let files = corpus::install(dir).map_err(|e| Failure::Input(format!("{}: {e}", dir.display())))?;
            let names: Vec<String> =
                files.iter().filter_map(|p| p.file_name()).map(|n| n.to_string_lossy().into_owned()).collect();
            Ok(json!({ "dir": dir.display().to_string(), "files": names }))
        }
    }
}

fn flatten(prefix: &str, value: &Value, out: &mut Vec<String>) {
    match value {
        Value::Object(map) if !map.is_empty() => {
            for (k, v) in map {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                flatten(&key, v, out);
            }
        }
        Value::Array(items) if items.iter().any(|v| v.is_object() || v.is_array()) => {
            for (i, v) in items.iter().enumerate() {
                flatten(&format!("{prefix}[{i}]"), v, out);
            }
        }
        Value::Array(items) => {
            let parts: Vec<String> = items.iter().map(scalar).collect();
            out.push(format!("{prefix}: [{}]", parts.join(", ")));
        }
        other => out.push(format!("{prefix}: {}", scalar(other))),
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Object(_) => "{}".into(),
        other => other.to_string(),
    }
}

/// `key: value` lines, one per leaf of the JSON report.
pub fn render_text(value: &Value) -> String {
    let mut lines = Vec::new();
    flatten("", value, &mut lines);
    let mut s = lines.join("\n");
    s.push('\n');
    s
}

/// Runs the CLI on `args` (including the program name) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                let _ = write!(err, "{}", e.render());
                EXIT_USAGE
            } else {
                let _ = write!(out, "{}", e.render());
                0
            };
            return code;
        }
    };
    match execute(&cli.command) {
        Ok(value) => {
            let text = match cli.format {
                Format::Json => {
                    let mut s = serde_json::to_string_pretty(&value).expect("JSON values serialize");
                    s.push('\n');
                    s
                }
                Format::Text => render_text(&value),
            };
            let _ = out.write_all(text.as_bytes());
            0
        }
        Err(Failure::Input(m)) => {
            let _ = writeln!(err, "error: {m}");
            EXIT_INPUT
        }
        Err(Failure::Precondition(m)) => {
            let _ = writeln!(err, "error: {m}");
            EXIT_PRECONDITION
        }
    }
}
