//! `fool`: check, translate, verify, prove and bench FOOL problems.
//!
//! Exit codes: 0 ok, 1 logic error (syntax, type, counterexample),
//! 2 I/O, 3 oracle overflow, 4 prover limit.

use std::fmt::Write as _;
use std::io::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use fool_core::problem::Problem;
use fool_core::prover::{prove, render_table, run_family, BoolMode, ClausifyError, ProverConfig, Verdict};
use fool_core::semantics::{check_model_preservation, DomainSpec, OracleConfig, OracleError, DEFAULT_CAP};
use fool_core::tptp::{parse_with, print_fol_tff0_with, Dialect};
use fool_core::translate::{mutate, mutation_sites, to_fol, translate_problem, FolProblem, MutationKind};

#[derive(Parser, Debug)]
#[command(name = "fool", version, about = "First-order logic with a first-class boolean sort")]
struct Cli {
    /// Read input as plain TFF0 instead of the FOOL dialect.
    #[arg(long, global = true)]
    strict: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse and type-check a problem.
    Check { input: PathBuf },
    /// Translate to first-order logic and print strict TFF0.
    Translate {
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check that the translation preserves models on finite carriers.
    Verify {
        input: PathBuf,
        /// Carrier sizes: a default size and/or `sort=size` pairs.
        #[arg(long, default_value = "2")]
        domains: DomainSpec,
        /// Maximum number of interpretations to enumerate.
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: u128,
        #[arg(long, hide = true)]
        mutate: Option<MutationKind>,
        #[arg(long, hide = true, default_value_t = 0)]
        seed: u64,
    },
    /// Translate, clausify and saturate.
    Prove {
        input: PathBuf,
        #[arg(long, default_value = "rule")]
        mode: BoolMode,
        #[arg(long, default_value_t = 100_000)]
        max_clauses: usize,
        #[arg(long, default_value_t = 10.0)]
        max_seconds: f64,
    },
    /// Compare the two boolean modes on the fixture family.
    Bench {
        /// Values of k, comma separated.
        #[arg(long, value_delimiter = ',', default_value = "0,1,2,3")]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 1_000)]
        max_clauses: usize,
        #[arg(long, default_value_t = 10.0)]
        max_seconds: f64,
    },
}

enum Failure {
    Logic(String),
    /// The oracle found a counterexample; reported on stdout.
    Counterexample(String),
    Io(String),
    Overflow(String),
    Limit(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Logic(_) | Failure::Counterexample(_) => 1,
            Failure::Io(_) => 2,
            Failure::Overflow(_) => 3,
            Failure::Limit(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Logic(m) | Failure::Counterexample(m) | Failure::Io(m) | Failure::Overflow(m) | Failure::Limit(m) => m,
        }
    }
}

type Run = Result<String, Failure>;

fn load(path: &Path, strict: bool) -> Result<Problem, Failure> {
    let src = fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
    let dialect = if strict { Dialect::Strict } else { Dialect::Fool };
    parse_with(&src, dialect).map_err(|e| Failure::Logic(format!("{}:{e}", path.display())))
}

fn translate(p: &Problem) -> Result<(FolProblem, String), Failure> {
    let state = translate_problem(p).map_err(|e| Failure::Logic(format!("translation failed: {e}")))?;
    Ok((to_fol(&state), state.summary()))
}

fn clausify_failure(e: ClausifyError) -> Failure {
    match e {
        ClausifyError::TooManyClauses { .. } => Failure::Limit(e.to_string()),
        other => Failure::Logic(other.to_string()),
    }
}

fn check(input: &Path, strict: bool) -> Run {
    let p = load(input, strict)?;
    Ok(format!("ok: {} formulas\n", p.formulas.len()))
}

fn cmd_translate(input: &Path, out: Option<&Path>, strict: bool) -> Run {
    let p = load(input, strict)?;
    let (fol, summary) = translate(&p)?;
    let text = print_fol_tff0_with(&fol, &p);
    match out {
        Some(path) => {
            fs::write(path, text).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
            Ok(format!("{summary}\n"))
        }
        None => {
            eprintln!("{summary}");
            Ok(text)
        }
    }
}

fn verify(input: &Path, strict: bool, domains: &DomainSpec, cap: u128, mutation: Option<(MutationKind, u64)>) -> Run {
    let p = load(input, strict)?;
    let (mut fol, _) = translate(&p)?;
    let mut note = String::new();
    if let Some((kind, seed)) = mutation {
        let sites: Vec<_> = mutation_sites(&fol).into_iter().filter(|m| m.kind() == kind).collect();
        if sites.is_empty() {
            return Err(Failure::Logic("the translation has no site for this mutation".into()));
        }
        let m = sites[(seed % sites.len() as u64) as usize];
        fol = mutate(&fol, m).map_err(|e| Failure::Logic(e.to_string()))?;
        note = format!(" mutation={m}");
    }
    let config = OracleConfig { cap, ..OracleConfig::default() };
    let report = check_model_preservation(&p.goal(), &fol.as_translated(), domains, &config).map_err(|e| match e {
        OracleError::Overflow { count, cap } => {
            Failure::Overflow(format!("interpretation count {count} exceeds the cap {cap}"))
        }
        other => Failure::Logic(other.to_string()),
    })?;
    let line = format!("{report} domains={domains}{note}\n");
    if report.is_ok() {
        Ok(line)
    } else {
        Err(Failure::Counterexample(line))
    }
}

fn cmd_prove(input: &Path, strict: bool, config: &ProverConfig) -> Run {
    let p = load(input, strict)?;
    let (fol, _) = translate(&p)?;
    let outcome = prove(&fol, config).map_err(clausify_failure)?;
    let mut out = format!("verdict: {}\nmode={}\n{}\n", outcome.verdict, config.bool_mode, outcome.stats);
    if let Some(proof) = outcome.render_proof() {
        let _ = write!(out, "proof:\n{proof}");
    }
    match outcome.verdict {
        Verdict::LimitHit(_) => Err(Failure::Limit(out.trim_end().to_string())),
        _ => Ok(out),
    }
}

fn bench(sizes: &[usize], config: &ProverConfig) -> Run {
    let rows = run_family(sizes, config).map_err(clausify_failure)?;
    Ok(render_table(&rows))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let strict = cli.strict;
    let result = match &cli.command {
        Command::Check { input } => check(input, strict),
        Command::Translate { input, out } => cmd_translate(input, out.as_deref(), strict),
        Command::Verify { input, domains, cap, mutate, seed } => {
            verify(input, strict, domains, *cap, mutate.map(|k| (k, *seed)))
        }
        Command::Prove { input, mode, max_clauses, max_seconds } => {
            let config = ProverConfig { max_clauses: *max_clauses, max_seconds: *max_seconds, ..ProverConfig::default() }
                .with_mode(*mode);
            cmd_prove(input, strict, &config)
        }
        Command::Bench { sizes, max_clauses, max_seconds } => {
            let config = ProverConfig { max_clauses: *max_clauses, max_seconds: *max_seconds, ..ProverConfig::default() };
            bench(sizes, &config)
        }
    };
    // A closed pipe downstream is not an error worth reporting.
    let emit = |text: &str| {
        let _ = std::io::stdout().write_all(text.as_bytes());
    };
    match result {
        Ok(text) => {
            emit(&text);
            ExitCode::SUCCESS
        }
        Err(f) => {
            match &f {
                Failure::Limit(m) => emit(&format!("{m}\n")),
                Failure::Counterexample(m) => emit(m),
                _ => eprintln!("error: {}", f.message()),
            }
            ExitCode::from(f.code())
        }
    }
}
