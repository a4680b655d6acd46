use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};

use gaudinlab::config::{ExperimentConfig, ExperimentKind};

#[derive(Parser)]
#[command(
    name = "gaudinlab",
    about = "Exact experiments on diagram-category Bethe algebras, \
             no-monodromy ideals, and pseudo-differential ratios"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// TOML configuration; built-in defaults are used when omitted.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// JSON report destination (stdout when omitted).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Optional CSV projection of the report.
    #[arg(long, global = true)]
    csv: Option<PathBuf>,
    /// Seed override.
    #[arg(long, global = true)]
    seed: Option<u64>,
}

#[derive(Subcommand)]
enum Command {
    /// Diagram basis counts, group multiplication, loop powers, functor law.
    DiagramSelftest,
    /// Pairwise commutators of the evaluated generators on a tensor module.
    Commute,
    /// Newton-recursion generators against the direct column determinant.
    NewtonVsCdet,
    /// Diagram-side evaluation against the matrix side, and the
    /// interpolated binomial relation.
    DeligneVsMatrix,
    /// Series-solver success against the determinant conditions.
    MonodromyEquivalence,
    /// Mutual reduction of the raw and stabilized generating sets.
    StabilizedIdeal,
    /// Quotient of monodromy-free operators against its hook predictions.
    RatioCheck,
    /// Exact simultaneous spectra and the eigenvalue-to-operator bridge.
    BetheSpectrum,
}

impl Command {
    fn kind(&self) -> ExperimentKind {
        match self {
            Command::DiagramSelftest => ExperimentKind::DiagramSelftest,
            Command::Commute => ExperimentKind::Commute,
            Command::NewtonVsCdet => ExperimentKind::NewtonVsCdet,
            Command::DeligneVsMatrix => ExperimentKind::DeligneVsMatrix,
            Command::MonodromyEquivalence => ExperimentKind::MonodromyEquivalence,
            Command::StabilizedIdeal => ExperimentKind::StabilizedIdeal,
            Command::RatioCheck => ExperimentKind::RatioCheck,
            Command::BetheSpectrum => ExperimentKind::BetheSpectrum,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let kind = cli.command.kind();

    let mut config = match &cli.config {
        None => ExperimentConfig::default_for(kind),
        Some(path) => {
            let text = match std::fs::read_to_string(path) {
                Ok(t) => t,
                Err(e) => {
                    eprintln!("error: cannot read {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            };
            match ExperimentConfig::from_toml(&text) {
                Ok(c) => c,
                Err(e) => {
                    eprintln!("error: bad configuration: {e}");
                    return ExitCode::from(2);
                }
            }
        }
    };
    if config.experiment != kind && cli.config.is_some() {
        eprintln!(
            "note: overriding configured experiment {} with subcommand {}",
            config.experiment.name(),
            kind.name()
        );
    }
    config.experiment = kind;
    if let Some(seed) = cli.seed {
        config.seed = seed;
    }

    let start = Instant::now();
    let report = match gaudinlab::run(&config) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    eprintln!(
        "{}: {} records, {} in {:.2?}",
        report.experiment,
        report.records.len(),
        if report.passed {
            "all passed"
        } else {
            "FAILURES"
        },
        start.elapsed()
    );
    for f in report.failures() {
        eprintln!("  failed: {} = {}", f.id, f.value);
    }

    let json = report.to_json();
    match &cli.out {
        None => println!("{json}"),
        Some(path) => {
            if let Err(e) = std::fs::write(path, json.as_bytes()) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
    }
    if let Some(path) = &cli.csv {
        let file = match std::fs::File::create(path) {
            Ok(f) => f,
            Err(e) => {
                eprintln!("error: cannot create {}: {e}", path.display());
                return ExitCode::from(2);
            }
        };
        let mut w = std::io::BufWriter::new(file);
        if let Err(e) = report.write_csv(&mut w) {
            eprintln!("error: csv: {e}");
            return ExitCode::from(2);
        }
        let _ = w.flush();
    }

    if report.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
