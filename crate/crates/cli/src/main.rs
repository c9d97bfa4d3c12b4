//! `ncgame`: build payoff algebras, check their relations and measure game
//! states from the command line.
//!
//! Exit codes: 0 success, 1 failed check or physics error, 2 usage or parse
//! error.

mod numfmt;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use ncgame::lie::{classical_limit_profile, HalfInteger};
use ncgame::scenario::{run_scenario, AlgebraParams, AlgebraRegistry, KappaValue, NmaxValue, Scenario};
use ncgame::{hermitian_eigensystem, GameError};

use report::{LimitDoc, RunDoc, SpectrumDoc, VerifyDoc};

const VERIFY_TOL: f64 = 1e-12;
const SPECTRUM_TOL: f64 = 1e-10;

#[derive(Parser)]
#[command(name = "ncgame", version, about = "Non-commutative quantum game payoff algebras")]
struct Cli {
    /// Numerical tolerance; each subcommand has its own default.
    #[arg(long, global = true)]
    tol: Option<f64>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Print nothing on success; rely on the exit code.
    #[arg(long, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Check the commutation relations of an algebra.
    Verify {
        #[command(flatten)]
        algebra: AlgebraArgs,
        /// Relation set to check instead of the canonical table.
        #[arg(long)]
        set: Option<String>,
    },
    /// Print the sorted eigenvalues of one operator.
    Spectrum {
        #[command(flatten)]
        algebra: AlgebraArgs,
        #[arg(long)]
        operator: String,
    },
    /// Run a scenario file.
    Run { file: PathBuf },
    /// Scaled su(2) commutator norm for κ = 1/2, 1, … up to a maximum.
    ClassicalLimit {
        #[arg(long)]
        kappa_max: String,
    },
    /// List the registered algebra kinds.
    Algebras,
}

#[derive(Args)]
struct AlgebraArgs {
    #[arg(long)]
    algebra: String,
    #[arg(long, allow_hyphen_values = true)]
    kappa: Option<String>,
    #[arg(long)]
    kappa1: Option<f64>,
    #[arg(long)]
    kappa2: Option<f64>,
    /// One value, or a comma-separated list for multimode.
    #[arg(long, value_delimiter = ',')]
    nmax: Option<Vec<usize>>,
    #[arg(long)]
    truncation: Option<usize>,
    #[arg(long)]
    bound: Option<String>,
    #[arg(long)]
    total_cutoff: Option<usize>,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    signs: Option<Vec<i32>>,
    #[arg(long)]
    schwinger: bool,
}

impl AlgebraArgs {
    fn params(&self) -> AlgebraParams {
        AlgebraParams {
            kappa: self.kappa.clone().map(KappaValue::Text),
            kappa1: self.kappa1,
            kappa2: self.kappa2,
            nmax: self.nmax.clone().map(|v| match v.as_slice() {
                [n] => NmaxValue::One(*n),
                _ => NmaxValue::Many(v),
            }),
            truncation: self.truncation,
            bound: self.bound.clone(),
            total_cutoff: self.total_cutoff,
            signs: self.signs.clone(),
            payoffs: None,
            schwinger: self.schwinger.then_some(true),
        }
    }
}

enum Failure {
    Usage(String),
    Physics(String),
}

impl From<GameError> for Failure {
    fn from(e: GameError) -> Self {
        match e {
            GameError::Truncation { .. } | GameError::NotHermitian { .. } => Failure::Physics(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

struct Output {
    body: String,
    passed: bool,
}

fn render<T: serde::Serialize>(format: Format, doc: &T, text: impl FnOnce() -> String, csv: impl FnOnce() -> String) -> String {
    match format {
        Format::Text => text(),
        Format::Json => numfmt::to_json(doc),
        Format::Csv => csv(),
    }
}

fn tolerance(tol: Option<f64>, default: f64) -> Result<f64, Failure> {
    let tol = tol.unwrap_or(default);
    if tol.is_finite() && tol > 0.0 {
        Ok(tol)
    } else {
        Err(Failure::Usage(format!("--tol must be positive and finite, got {tol}")))
    }
}

fn execute(cli: &Cli) -> Result<Output, Failure> {
    let registry = AlgebraRegistry::builtin();
    let format = cli.format;
    match &cli.command {
        Command::Verify { algebra, set } => {
            let tol = tolerance(cli.tol, VERIFY_TOL)?;
            let built = registry.build(&algebra.algebra, &algebra.params())?;
            let relations = match set {
                Some(name) => built.relation_set(name)?,
                None => built.canonical(),
            };
            let report = built.verify(relations, tol)?;
            let doc = VerifyDoc::new(&built, &relations.name, &report);
            Ok(Output {
                body: render(format, &doc, || doc.text(), || doc.csv()),
                passed: report.passed(),
            })
        }
        Command::Spectrum { algebra, operator } => {
            let tol = tolerance(cli.tol, SPECTRUM_TOL)?;
            let built = registry.build(&algebra.algebra, &algebra.params())?;
            let matrix = built.operator(operator)?;
            let eig = hermitian_eigensystem(matrix, tol)?;
            let doc = SpectrumDoc {
                algebra: built.kind.clone(),
                space: built.space.description().to_string(),
                operator: ncgame::scenario::canonical_operator_name(operator),
                eigenvalues: eig.values,
            };
            Ok(Output {
                body: render(format, &doc, || doc.text(), || doc.csv()),
                passed: true,
            })
        }
        Command::Run { file } => {
            let raw = std::fs::read_to_string(file)
                .map_err(|e| Failure::Usage(format!("cannot read '{}': {e}", file.display())))?;
            let mut scenario: Scenario = serde_json::from_str(&raw)
                .map_err(|e| Failure::Usage(format!("cannot parse '{}': {e}", file.display())))?;
            if cli.tol.is_some() {
                scenario.tol = Some(tolerance(cli.tol, 0.0)?);
            }
            let outcome = run_scenario(&registry, &scenario)?;
            let doc = RunDoc::new(&outcome, &scenario.output_fields());
            Ok(Output {
                body: render(format, &doc, || doc.text(), || doc.csv()),
                passed: outcome.passed(),
            })
        }
        Command::ClassicalLimit { kappa_max } => {
            let max: HalfInteger = kappa_max.parse()?;
            if max.twice() == 0 {
                return Err(Failure::Usage("--kappa-max must be at least 1/2".into()));
            }
            let kappas: Vec<HalfInteger> = (1..=max.twice()).map(HalfInteger::from_twice).collect();
            let doc = LimitDoc::new(&classical_limit_profile(&kappas)?);
            Ok(Output {
                body: render(format, &doc, || doc.text(), || doc.csv()),
                passed: true,
            })
        }
        Command::Algebras => {
            let names: Vec<&str> = registry.names();
            let mut body = String::new();
            for name in names {
                let kind = registry.get(name)?;
                body.push_str(&format!(
                    "{name}: {} (params: {})\n",
                    kind.summary(),
                    kind.accepted_params().join(", ")
                ));
            }
            Ok(Output { body, passed: true })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(out) => {
            if !cli.quiet {
                print!("{}", out.body);
            }
            if out.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Physics(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
