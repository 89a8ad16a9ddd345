//! Command-line front end: reads process specifications, runs
//! compositions, vector firing sequences, closures and checks, and emits
//! JSON, DOT or text.

pub mod error;
pub mod spec;

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use landin::algebra::{product_closure, PartialAlgebra};
use landin::checks::{run_check, suite_depth, CheckId, Claims, Instance};
use landin::commutation::normal_form;
use landin::correspondence::{f_of_language, CheckReport};
use landin::random::{random_instance, seeded, GenConfig};
use landin::{compose_parallel, vfs, AlphabetVector, PrefixLanguage, Symbol, Trace, VectorString};
use serde_json::{json, Value};

pub use error::CliError;
pub use spec::{emit, parse_spec, ProcessSpec};

/// Word depth used by suites for checks that enumerate all words.
pub const SUITE_WORD_DEPTH: usize = 5;
/// Random instances per suite when no count is given.
pub const SUITE_INSTANCES: usize = 10;

#[derive(Parser, Debug)]
#[command(
    name = "landin",
    version,
    about = "Trace languages, vector firing sequences and partial algebras"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Process specification file.
    #[arg(long = "in", global = true, value_name = "FILE")]
    pub input: Option<PathBuf>,

    /// Depth bound, overriding the default.
    #[arg(long, global = true)]
    pub depth: Option<usize>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    /// Seed for random suite instances.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Number of random suite instances.
    #[arg(long, global = true)]
    pub instances: Option<usize>,

    /// Write the document here instead of standard output.
    #[arg(long, global = true, value_name = "FILE")]
    pub out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Parallel composition of every process.
    Compose,
    /// Vector firing sequences of the processes.
    Vfs,
    /// The algebra of one process.
    Algebra {
        /// Process name; the first process by default.
        #[arg(long)]
        process: Option<String>,
    },
    /// Closure of the product of the process algebras.
    Closure,
    /// Normal form of a word of vector operations, e.g. "c a".
    Nf { word: String },
    /// Runs a check id, or SUITE for every id.
    Check {
        id: String,
        /// JSON claims standing in for computed values.
        #[arg(long, value_name = "FILE")]
        claim: Option<PathBuf>,
        /// Largest generated global alphabet.
        #[arg(long, default_value_t = 5)]
        max_sigma: usize,
        /// Most components per generated instance.
        #[arg(long, default_value_t = 3)]
        max_components: usize,
        /// Depth of generated languages.
        #[arg(long, default_value_t = 6)]
        gen_depth: usize,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
pub enum Format {
    Json,
    Dot,
    Text,
}

/// A finished command: the document to emit and whether every check passed.
#[derive(Debug)]
pub struct Outcome {
    pub document: String,
    pub ok: bool,
}

impl Outcome {
    fn ok(document: String) -> Self {
        Outcome { document, ok: true }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn load(cli: &Cli) -> Result<Vec<ProcessSpec>, CliError> {
    let path = cli
        .input
        .as_ref()
        .ok_or_else(|| CliError::Usage("--in FILE is required".into()))?;
    let specs = parse_spec(&read(path)?)?;
    if specs.is_empty() {
        return Err(CliError::Usage(format!(
            "{} declares no process",
            path.display()
        )));
    }
    Ok(specs)
}

fn languages(specs: &[ProcessSpec]) -> Result<Vec<PrefixLanguage>, CliError> {
    specs.iter().map(ProcessSpec::language).collect()
}

/// The deepest depth every part can answer exactly: the least depth of an
/// incomplete part, or the greatest declared depth when all are complete.
fn default_depth(parts: &[PrefixLanguage]) -> usize {
    parts
        .iter()
        .filter(|p| !p.is_complete())
        .map(PrefixLanguage::depth)
        .min()
        .unwrap_or_else(|| parts.iter().map(PrefixLanguage::depth).max().unwrap_or(0))
}

fn unsupported(command: &str, format: Format) -> CliError {
    CliError::Usage(format!("{command} has no {format:?} output").to_lowercase())
}

fn pretty(v: &impl serde::Serialize) -> Result<String, CliError> {
    Ok(serde_json::to_string_pretty(v)? + "\n")
}

fn text_trace(t: &Trace) -> String {
    if t.is_empty() {
        "·".into()
    } else {
        t.to_text()
    }
}

fn text_vector(v: &VectorString) -> String {
    format!(
        "({})",
        v.parts()
            .iter()
            .map(text_trace)
            .collect::<Vec<_>>()
            .join(",")
    )
}

fn text_algebra(a: &PartialAlgebra) -> String {
    let mut out = format!(
        "carrier: {}\n",
        a.names()
            .iter()
            .map(|n| if n.is_empty() { "·" } else { n })
            .collect::<Vec<_>>()
            .join(" ")
    );
    for (op, _) in a.signature().ops() {
        for (args, r) in a.table(op).expect("every operator has a table") {
            let args: Vec<&str> = args.iter().map(|&e| a.name(e)).collect();
            out.push_str(&format!("{op}({}) = {}\n", args.join(", "), a.name(*r)));
        }
    }
    out
}

fn algebra_document(a: &PartialAlgebra, format: Format) -> Result<String, CliError> {
    match format {
        Format::Json => pretty(a),
        Format::Dot => Ok(a.to_dot()),
        Format::Text => Ok(text_algebra(a)),
    }
}

fn claims(path: Option<&PathBuf>) -> Result<Claims, CliError> {
    match path {
        Some(p) => Ok(serde_json::from_str(&read(p)?)?),
        None => Ok(Claims::default()),
    }
}

fn report_text(r: &CheckReport) -> String {
    let status = if r.pass { "PASS" } else { "FAIL" };
    let mut line = format!("{status} {} depth={} {}", r.check, r.depth, r.instance);
    if let Some(c) = &r.counterexample {
        line.push_str(&format!(" counterexample={c}"));
    }
    line + "\n"
}

fn check(
    cli: &Cli,
    id: &str,
    claim: Option<&PathBuf>,
    cfg: GenConfig,
) -> Result<Outcome, CliError> {
    let ids: Vec<CheckId> = if id.eq_ignore_ascii_case("SUITE") {
        CheckId::ALL.to_vec()
    } else {
        vec![id.parse()?]
    };
    let claims = claims(claim)?;
    let instances: Vec<Instance> = if cli.input.is_some() {
        let parts = languages(&load(cli)?)?;
        vec![Instance::from_parts(parts)?.with_claims(claims)]
    } else {
        let mut rng = seeded(cli.seed);
        (0..cli.instances.unwrap_or(SUITE_INSTANCES))
            .map(|_| random_instance(&mut rng, &cfg).with_claims(claims.clone()))
            .collect()
    };
    let mut reports = Vec::new();
    for inst in &instances {
        let complete = inst.parts.iter().all(PrefixLanguage::is_complete);
        for &id in &ids {
            let depth = cli.depth.unwrap_or_else(|| {
                if complete {
                    suite_depth(id, inst, SUITE_WORD_DEPTH)
                } else {
                    default_depth(&inst.parts)
                }
            });
            reports.push(run_check(id, inst, depth)?);
        }
    }
    let ok = reports.iter().all(|r| r.pass);
    let document = match cli.format {
        Format::Json => pretty(&reports)?,
        Format::Text => reports.iter().map(report_text).collect(),
        Format::Dot => return Err(unsupported("check", Format::Dot)),
    };
    Ok(Outcome { document, ok })
}

/// Runs one command and returns its document.
pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Compose => {
            let parts = languages(&load(cli)?)?;
            let l = compose_parallel(&parts, cli.depth.unwrap_or_else(|| default_depth(&parts)))?;
            match cli.format {
                Format::Json => pretty(&l).map(Outcome::ok),
                Format::Text => Ok(Outcome::ok(
                    l.traces().iter().map(|t| text_trace(t) + "\n").collect(),
                )),
                Format::Dot => Err(unsupported("compose", Format::Dot)),
            }
        }
        Command::Vfs => {
            let parts = languages(&load(cli)?)?;
            let l = vfs(&parts, cli.depth.unwrap_or_else(|| default_depth(&parts)))?;
            match cli.format {
                Format::Json => pretty(&l).map(Outcome::ok),
                Format::Text => Ok(Outcome::ok(
                    l.vectors().iter().map(|v| text_vector(v) + "\n").collect(),
                )),
                Format::Dot => Err(unsupported("vfs", Format::Dot)),
            }
        }
        Command::Algebra { process } => {
            let specs = load(cli)?;
            let spec = match process {
                Some(name) => specs
                    .iter()
                    .find(|s| &s.name == name)
                    .ok_or_else(|| CliError::Usage(format!("no process named `{name}`")))?,
                None => &specs[0],
            };
            let parts = languages(&specs)?;
            let sigma =
                landin::language::union_alphabet(parts.iter().map(PrefixLanguage::alphabet));
            let mut lang = spec.language()?;
            if let Some(d) = cli.depth {
                lang = lang.at_depth(d)?;
            }
            algebra_document(&f_of_language(&lang, &sigma)?, cli.format).map(Outcome::ok)
        }
        Command::Closure => {
            let mut parts = languages(&load(cli)?)?;
            if let Some(d) = cli.depth {
                parts = parts
                    .iter()
                    .map(|p| p.at_depth(d))
                    .collect::<Result<_, _>>()?;
            }
            let sigma =
                landin::language::union_alphabet(parts.iter().map(PrefixLanguage::alphabet));
            let fs = parts
                .iter()
                .map(|p| f_of_language(p, &sigma))
                .collect::<Result<Vec<_>, _>>()?;
            algebra_document(&product_closure(&fs)?, cli.format).map(Outcome::ok)
        }
        Command::Nf { word } => {
            let parts = languages(&load(cli)?)?;
            let alphabets = AlphabetVector::of_languages(&parts)?;
            let ops = word
                .split_whitespace()
                .map(|w| {
                    let s = Symbol::new(w)?;
                    alphabets.op(&s).ok_or(landin::Error::Symbol(w.to_string()))
                })
                .collect::<Result<Vec<_>, _>>()?;
            let nf: Vec<String> = normal_form(&ops)
                .iter()
                .map(|o| o.source().name().to_string())
                .collect();
            match cli.format {
                Format::Json => pretty(&json!(nf)).map(Outcome::ok),
                Format::Text => Ok(Outcome::ok(nf.join(" ") + "\n")),
                Format::Dot => Err(unsupported("nf", Format::Dot)),
            }
        }
        Command::Check {
            id,
            claim,
            max_sigma,
            max_components,
            gen_depth,
        } => {
            let cfg = GenConfig {
                max_sigma: *max_sigma,
                max_components: (*max_components).max(1),
                min_components: 2.min(*max_components).max(1),
                depth: *gen_depth,
                ..GenConfig::default()
            };
            check(cli, id, claim.as_ref(), cfg)
        }
    }
}

/// The diagnostic payload for an error.
pub fn diagnostic(e: &CliError) -> Value {
    e.payload()
}
