use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use alchiq_core::clause::QueryClause;
use alchiq_core::elh::{elh_classify, is_elh};
use alchiq_core::engine::{Engine, EngineConfig};
use alchiq_core::error::{ParseError, ReasonerError};
use alchiq_core::frontend::{load_ontology, parse_query, Ontology};
use alchiq_core::random::{random_elh, GeneratorParams};
use alchiq_core::reasoner::{classify, classify_sharded, run_classification, run_entailment};
use alchiq_core::structure::{to_dot, to_text, StrategyKind};
use clap::{Args, Parser, Subcommand};
use thiserror::Error;

/// Consequence-based reasoning for ALCHIQ ontologies.
#[derive(Parser, Debug)]
#[command(name = "alchiq", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compute all subsumptions between concept names.
    Classify {
        input: PathBuf,
        #[command(flatten)]
        engine: EngineArgs,
        /// Write the result here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Classify each concept in its own structure on this many threads.
        #[arg(long, value_name = "THREADS")]
        parallel: Option<usize>,
    },
    /// Decide a query such as "A SubClassOf B" or "A And B SubClassOf C Or D".
    Entail {
        input: PathBuf,
        #[arg(long)]
        query: String,
        #[command(flatten)]
        engine: EngineArgs,
    },
    /// Decide satisfiability of a concept ("A" or "A SubClassOf Bottom").
    Sat {
        input: PathBuf,
        #[arg(long)]
        query: String,
        #[command(flatten)]
        engine: EngineArgs,
    },
    /// Compare classification against the ELH completion oracle, on an input
    /// file or on seeded random ELH ontologies.
    OracleCheck {
        input: Option<PathBuf>,
        /// Number of random ontologies, starting at --seed.
        #[arg(long, default_value_t = 200)]
        count: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Saturate and write the context structure as text and DOT.
    DumpGraph {
        input: PathBuf,
        /// Saturate for this query only; without it every concept is classified.
        #[arg(long)]
        query: Option<String>,
        #[command(flatten)]
        engine: EngineArgs,
        /// Writes PATH.txt and PATH.dot; without it the text form goes to
        /// standard output.
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
struct EngineArgs {
    #[arg(long, default_value_t = StrategyKind::Cautious)]
    strategy: StrategyKind,
    /// Print every derivation to standard error.
    #[arg(long)]
    trace: bool,
    /// Process work items in a random order drawn from this seed.
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, default_value_t = 10_000_000)]
    max_clauses: usize,
    #[arg(long, default_value_t = 300)]
    timeout_secs: u64,
}

impl EngineArgs {
    fn config(&self) -> EngineConfig {
        EngineConfig {
            strategy: self.strategy,
            max_clauses: self.max_clauses,
            timeout: Duration::from_secs(self.timeout_secs),
            shuffle_seed: self.seed,
            record: self.trace,
        }
    }
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}: {source}")]
    Parse { path: PathBuf, source: ParseError },
    #[error("query: {0}")]
    Query(ParseError),
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Reasoner(#[from] ReasonerError),
    #[error("engine and oracle disagree in {0} runs")]
    OracleMismatch(usize),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Io { .. } | CliError::Parse { .. } | CliError::Query(_) | CliError::Usage(_) => 1,
            CliError::Reasoner(ReasonerError::Input(_)) => 1,
            CliError::Reasoner(ReasonerError::ResourceLimit(_)) => 2,
            CliError::Reasoner(ReasonerError::Invariant(_)) | CliError::OracleMismatch(_) => 3,
        }
    }
}

fn load(path: &Path) -> Result<Ontology, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_owned(), source })?;
    load_ontology(&text).map_err(|source| CliError::Parse { path: path.to_owned(), source })
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents).map_err(|source| CliError::Io { path: path.to_owned(), source })
}

fn with_suffix(prefix: &Path, suffix: &str) -> PathBuf {
    let mut s = prefix.as_os_str().to_owned();
    s.push(suffix);
    PathBuf::from(s)
}

fn query(o: &mut Ontology, text: &str) -> Result<QueryClause, CliError> {
    let (body, head) = parse_query(text, &mut o.symbols).map_err(CliError::Query)?;
    Ok(QueryClause::new(body, head))
}

/// `A` or `A SubClassOf Bottom`, as an unsatisfiability query.
fn sat_query(o: &mut Ontology, text: &str) -> Result<QueryClause, CliError> {
    let text = text.trim();
    let text =
        if text.split_whitespace().count() == 1 { format!("{text} SubClassOf Bottom") } else { text.to_string() };
    let q = query(o, &text)?;
    if !q.head.is_empty() {
        return Err(CliError::Usage("sat expects a concept or \"A SubClassOf Bottom\"".into()));
    }
    Ok(q)
}

fn trace(engine: &Engine<'_>, o: &Ontology) {
    let mut err = std::io::stderr().lock();
    for r in engine.records() {
        let _ = writeln!(err, "{}", r.trace_line_verbose(&o.symbols));
    }
}

fn oracle_check(input: Option<&Path>, count: u64, seed: u64) -> Result<String, CliError> {
    let ontologies: Vec<(String, Ontology)> = match input {
        Some(path) => {
            let o = load(path)?;
            if !is_elh(&o) {
                return Err(CliError::Usage(format!("{}: not an ELH ontology", path.display())));
            }
            vec![(path.display().to_string(), o)]
        }
        None => (seed..seed + count)
            .map(|s| {
                let o = load_ontology(&random_elh(s, GeneratorParams::default())).expect("generated ontologies parse");
                (format!("seed {s}"), o)
            })
            .collect(),
    };
    let mut mismatches = 0;
    for (name, o) in &ontologies {
        let want = elh_classify(o);
        for strategy in [StrategyKind::Eager, StrategyKind::Cautious] {
            let got = classify(o, &EngineConfig { strategy, ..EngineConfig::default() })?;
            if got.subsumptions != want || !got.unsatisfiable.is_empty() {
                mismatches += 1;
                eprintln!("mismatch: {name} with {strategy}");
            }
        }
    }
    if mismatches > 0 {
        return Err(CliError::OracleMismatch(mismatches));
    }
    Ok(format!("oracle agrees on {} ontologies\n", ontologies.len()))
}

fn run(cli: Cli) -> Result<String, CliError> {
    match cli.command {
        Command::Classify { input, engine, out, parallel } => {
            let o = load(&input)?;
            let result = match parallel {
                Some(threads) => {
                    if engine.trace {
                        return Err(CliError::Usage("--trace cannot be combined with --parallel".into()));
                    }
                    classify_sharded(&o, &engine.config(), threads)?
                }
                None => {
                    let run = run_classification(&o, engine.config())?;
                    if engine.trace {
                        trace(&run.engine, &o);
                    }
                    run.result
                }
            };
            let text = result.render(&o.symbols);
            match out {
                Some(path) => {
                    write_file(&path, &text)?;
                    Ok(String::new())
                }
                None => Ok(text),
            }
        }
        Command::Entail { input, query: q, engine } => {
            let mut o = load(&input)?;
            let q = query(&mut o, &q)?;
            let run = run_entailment(&o, &q, engine.config())?;
            if engine.trace {
                trace(&run.engine, &o);
            }
            Ok(if run.entailed { "ENTAILED\n" } else { "NOT ENTAILED\n" }.to_string())
        }
        Command::Sat { input, query: q, engine } => {
            let mut o = load(&input)?;
            let q = sat_query(&mut o, &q)?;
            let run = run_entailment(&o, &q, engine.config())?;
            if engine.trace {
                trace(&run.engine, &o);
            }
            Ok(if run.entailed { "UNSATISFIABLE\n" } else { "SATISFIABLE\n" }.to_string())
        }
        Command::OracleCheck { input, count, seed } => oracle_check(input.as_deref(), count, seed),
        Command::DumpGraph { input, query: q, engine, out } => {
            let mut o = load(&input)?;
            let q = q.map(|q| query(&mut o, &q)).transpose()?;
            let saturated = match &q {
                Some(q) => run_entailment(&o, q, engine.config())?.engine,
                None => run_classification(&o, engine.config())?.engine,
            };
            if engine.trace {
                trace(&saturated, &o);
            }
            let d = saturated.structure();
            let text = to_text(d, &o.symbols);
            match out {
                Some(prefix) => {
                    write_file(&with_suffix(&prefix, ".txt"), &text)?;
                    write_file(&with_suffix(&prefix, ".dot"), &to_dot(d, &o.symbols))?;
                    Ok(String::new())
                }
                None => Ok(text),
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
