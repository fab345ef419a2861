//! Command line interface. Reports go to stdout as JSON; errors go to
//! stderr as a JSON envelope. Exit codes: 0 on success, 2 on validation
//! or parse failures, 3 on I/O failures.

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use centropy::commands::{self, SimulateMode};
use centropy::entropy::{Direction, EntropyFamily};
use centropy::error::{Error, Result};
use centropy::report::{self, Report, Unit};

#[derive(Parser)]
#[command(
    name = "centropy",
    version,
    about = "Conditional Shannon, Renyi, and Tsallis entropies of finite joint \
             distributions: exact values, plug-in estimates with asymptotic \
             variances, and seeded Monte Carlo validation campaigns"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum DirectionArg {
    /// Y given X
    Yx,
    /// X given Y
    Xy,
    /// Both conditionals
    Both,
}

impl DirectionArg {
    fn directions(self) -> Vec<Direction> {
        match self {
            DirectionArg::Yx => vec![Direction::YgivenX],
            DirectionArg::Xy => vec![Direction::XgivenY],
            DirectionArg::Both => vec![Direction::YgivenX, Direction::XgivenY],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FamilyArg {
    Shannon,
    Renyi,
    Tsallis,
    All,
}

fn expand_families(args: &[FamilyArg]) -> Vec<EntropyFamily> {
    let mut out = Vec::new();
    let mut push = |f: EntropyFamily| {
        if !out.contains(&f) {
            out.push(f);
        }
    };
    for arg in args {
        match arg {
            FamilyArg::Shannon => push(EntropyFamily::Shannon),
            FamilyArg::Renyi => push(EntropyFamily::Renyi),
            FamilyArg::Tsallis => push(EntropyFamily::Tsallis),
            FamilyArg::All => {
                push(EntropyFamily::Shannon);
                push(EntropyFamily::Renyi);
                push(EntropyFamily::Tsallis);
            }
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Convergence,
    Normality,
}

impl From<ModeArg> for SimulateMode {
    fn from(mode: ModeArg) -> SimulateMode {
        match mode {
            ModeArg::Convergence => SimulateMode::Convergence,
            ModeArg::Normality => SimulateMode::Normality,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Exact entropies and identity residuals of a pmf document
    Exact {
        /// Pmf document: JSON with fields "r", "s", and flat "probs"
        pmf: PathBuf,
        /// Order for the Renyi and Tsallis families; repeatable
        #[arg(long = "alpha")]
        alphas: Vec<f64>,
        /// Conditional direction(s) to report
        #[arg(long, value_enum, default_value = "both")]
        direction: DirectionArg,
        /// Presentation unit
        #[arg(long, default_value = "nats")]
        unit: Unit,
        /// Also write the report to this file
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Plug-in estimates with variances and confidence intervals from
    /// labeled pair data (.csv or .jsonl)
    Estimate {
        /// Labeled pair file; rows are x,y labels
        data: PathBuf,
        /// Family to estimate; repeatable
        #[arg(long = "family", value_enum, default_value = "all")]
        families: Vec<FamilyArg>,
        /// Order for the Renyi and Tsallis families; repeatable
        #[arg(long = "alpha")]
        alphas: Vec<f64>,
        /// Conditional direction(s) to report
        #[arg(long, value_enum, default_value = "both")]
        direction: DirectionArg,
        /// Confidence level for the intervals
        #[arg(long, default_value_t = 0.95)]
        ci: f64,
        /// Presentation unit
        #[arg(long, default_value = "nats")]
        unit: Unit,
        /// Also write the report to this file
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a Monte Carlo campaign described by a JSON config
    Simulate {
        /// Campaign kind
        #[arg(value_enum)]
        mode: ModeArg,
        /// Campaign config JSON
        config: PathBuf,
        /// Directory receiving trace.csv, summary.json, and in normality
        /// mode histogram.csv and qq.csv
        #[arg(long)]
        out: PathBuf,
        /// Override the seed in the config
        #[arg(long)]
        seed: Option<u64>,
        /// Presentation unit (simulation accepts nats only)
        #[arg(long, default_value = "nats")]
        unit: Unit,
    },
}

fn dispatch(cli: Cli) -> Result<()> {
    let (out_file, built): (Option<PathBuf>, Report) = match cli.command {
        Command::Exact {
            pmf,
            alphas,
            direction,
            unit,
            out,
        } => (
            out,
            commands::cmd_exact(&pmf, &alphas, &direction.directions(), unit)?,
        ),
        Command::Estimate {
            data,
            families,
            alphas,
            direction,
            ci,
            unit,
            out,
        } => (
            out,
            commands::cmd_estimate(
                &data,
                &expand_families(&families),
                &alphas,
                &direction.directions(),
                ci,
                unit,
            )?,
        ),
        Command::Simulate {
            mode,
            config,
            out,
            seed,
            unit,
        } => (
            None,
            commands::cmd_simulate(mode.into(), &config, &out, seed, unit)?,
        ),
    };
    let json = built.to_json_string();
    if let Some(path) = out_file {
        std::fs::write(&path, &json)?;
    }
    print!("{json}");
    Ok(())
}

fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            use clap::error::ErrorKind;
            if matches!(err.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{}", err.render());
                return 0;
            }
            let wrapped = Error::InvalidConfig(err.render().to_string());
            eprint!("{}", report::error_json(&wrapped));
            return 2;
        }
    };
    match dispatch(cli) {
        Ok(()) => 0,
        Err(err) => {
            let code = if err.is_io() { 3 } else { 2 };
            eprint!("{}", report::error_json(&err));
            code
        }
    }
}

fn main() {
    std::process::exit(run());
}
