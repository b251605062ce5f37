//! Command-line front end: reads a curve spec, runs one suite, and writes a report.
//!
//! Exit status is 0 when every check passes, 1 when some check fails, and 2 on invalid input
//! or a refused computation.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use adelic::curve::{parse_function, Curve, CurveModel, CurveSpec};
use adelic::derham::RationalDifferential;
use adelic::report::{self, Report};
use anyhow::{Context, Result};
use clap::{Parser, Subcommand};

#[derive(Parser, Debug)]
#[command(name = "adelic", version, about = "Adelic computations on curves: residues, de Rham cohomology, Cartier, Deligne-Illusie checks")]
struct Cli {
    /// Curve-spec JSON file.
    #[arg(long, global = true)]
    spec: Option<PathBuf>,
    /// Working precision for Laurent expansions.
    #[arg(long, global = true, default_value_t = 16, value_parser = clap::value_parser!(i64).range(4..))]
    precision: i64,
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Also write the JSON report to this path.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Print the JSON report instead of the text summary.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Dimension, basis and Hodge dimension of H^1_DR.
    H1dr,
    /// The pairing of two second-kind differentials `g1 dx`, `g2 dx`, or the Gram matrix.
    Pairing {
        #[arg(long, required_unless_present = "gram")]
        omega1: Option<String>,
        #[arg(long, required_unless_present = "gram")]
        omega2: Option<String>,
        #[arg(long, conflicts_with_all = ["omega1", "omega2"])]
        gram: bool,
    },
    /// Residues of `g dx`, or the residue theorem on random differentials.
    Residues {
        #[arg(long)]
        omega: Option<String>,
        #[arg(long, default_value_t = 100)]
        samples: usize,
    },
    /// The Cartier operator on `g dx`, or the Cartier suite on random inputs.
    Cartier {
        #[arg(long)]
        omega: Option<String>,
        #[arg(long, default_value_t = 50)]
        samples: usize,
    },
    /// Frobenius liftings mod p^2 and the quasi-isomorphism checks.
    DiCheck,
    /// Closed (0,1)-adeles are coboundaries, so H^{1,0} + H^{0,1} is too small.
    Example1 {
        #[arg(long, default_value_t = 30)]
        samples: usize,
    },
}

fn load_curve(path: &Option<PathBuf>) -> Result<Curve> {
    let path = path.as_ref().context("--spec is required")?;
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let spec = CurveSpec::parse(&text)?;
    Ok(CurveModel::from_spec(&spec)?)
}

fn differential(curve: &Curve, text: &str) -> Result<RationalDifferential> {
    let g = parse_function(curve, text).with_context(|| format!("parsing {text:?}"))?;
    Ok(RationalDifferential::new(g))
}

fn run(cli: &Cli) -> Result<Report> {
    let curve = load_curve(&cli.spec)?;
    let n = cli.precision;
    let mut r = match &cli.command {
        Command::H1dr => report::h1dr(&curve, n)?,
        Command::Pairing { gram: true, .. } => report::gram(&curve, n)?,
        Command::Pairing { omega1, omega2, .. } => {
            let a = differential(&curve, omega1.as_deref().expect("required"))?;
            let b = differential(&curve, omega2.as_deref().expect("required"))?;
            report::pairing(&curve, &a, &b, n)?
        }
        Command::Residues { omega, samples } => {
            let w = omega.as_deref().map(|t| differential(&curve, t)).transpose()?;
            report::residues(&curve, w.as_ref(), *samples, cli.seed)?
        }
        Command::Cartier { omega, samples } => {
            let w = omega.as_deref().map(|t| differential(&curve, t)).transpose()?;
            report::cartier_suite(&curve, w.as_ref(), *samples, cli.seed)?
        }
        Command::DiCheck => report::di_check(&curve, cli.seed, n)?,
        Command::Example1 { samples } => report::example1(&curve, *samples, cli.seed, n)?,
    };
    r.seed = cli.seed;
    Ok(r)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let report = match run(&cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(2);
        }
    };
    let json = report.to_json();
    if let Some(path) = &cli.out {
        if let Err(e) = fs::write(path, &json) {
            eprintln!("error: writing {}: {e}", path.display());
            return ExitCode::from(2);
        }
    }
    if cli.json {
        print!("{json}");
    } else {
        print!("{}", report.to_text());
    }
    if report.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
