use std::path::PathBuf;
use std::process::ExitCode;

use clap::builder::RangedU64ValueParser;
use clap::{Args, Parser, Subcommand, ValueEnum};
use fuss_deform::posdef::{DEFAULT_HANKEL_SIZE, MAX_HANKEL_SIZE};
use fuss_deform::series::{DEFAULT_ORDER, MAX_ORDER};
use fuss_deform::Rational;

mod commands;
mod output;

use output::CliError;

#[derive(Debug, Parser)]
#[command(
    name = "fuss-deform",
    version,
    about = "Deformed Fuss numbers, their densities and free transforms"
)]
struct Cli {
    #[command(flatten)]
    global: GlobalOpts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalOpts {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Truncation order of series jets.
    #[arg(long, global = true, default_value_t = DEFAULT_ORDER,
          value_parser = RangedU64ValueParser::<usize>::new().range(1..=MAX_ORDER as u64))]
    pub series_order: usize,
    /// Size of Hankel sections.
    #[arg(long, global = true, default_value_t = DEFAULT_HANKEL_SIZE,
          value_parser = RangedU64ValueParser::<usize>::new().range(1..=MAX_HANKEL_SIZE as u64))]
    pub hankel_size: usize,
    /// Absolute quadrature tolerance.
    #[arg(long, global = true, default_value_t = 1e-10, value_parser = positive_f64)]
    pub tol: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print a prefix of an integer or rational sequence.
    Seq {
        #[arg(value_enum)]
        subject: commands::SeqSubject,
        /// Largest index to print.
        #[arg(long)]
        n: u64,
        #[arg(long, value_parser = parse_rational)]
        p: Option<Rational>,
        #[arg(long, value_parser = parse_rational)]
        t: Option<Rational>,
        /// Exponent for Raney numbers.
        #[arg(long, value_parser = parse_rational)]
        r: Option<Rational>,
        /// Method for A220910.
        #[arg(long, value_enum, default_value_t = commands::SeqMethod::Recurrence)]
        method: commands::SeqMethod,
    },
    /// Jets of the moment, R- and S-transforms.
    Transforms {
        #[arg(long, value_parser = parse_rational)]
        p: Rational,
        #[arg(long, value_parser = parse_rational)]
        t: Rational,
        #[arg(long, value_enum, default_value_t = commands::TransformRoute::Moments)]
        route: commands::TransformRoute,
    },
    /// Sample the density on an even grid of its support.
    Density {
        #[arg(long, value_parser = parse_rational)]
        p: Rational,
        #[arg(long, value_parser = parse_rational)]
        t: Rational,
        #[arg(long, default_value_t = 200)]
        grid: usize,
        #[arg(long, value_enum, default_value_t = commands::DensityRoute::Parametric)]
        route: commands::DensityRoute,
    },
    /// Compare quadrature moments of the density with exact values.
    MomentsCheck {
        #[arg(long, value_parser = parse_rational)]
        p: Rational,
        #[arg(long, value_parser = parse_rational)]
        t: Rational,
        /// Largest moment index.
        #[arg(long, default_value_t = 10)]
        n: u32,
        /// Relative error that counts as a mismatch.
        #[arg(long, default_value_t = 1e-8, value_parser = positive_f64)]
        rel_tol: f64,
    },
    /// Tabulate the lower edge g(p) of the positivity domain.
    Gfun {
        #[arg(long, default_value_t = 1.0)]
        p_min: f64,
        #[arg(long, default_value_t = 3.0)]
        p_max: f64,
        #[arg(long, default_value_t = 41)]
        steps: usize,
    },
    /// Classify one parameter point against the positivity theorem.
    Posdef {
        #[arg(long, value_parser = parse_rational)]
        p: Rational,
        #[arg(long, value_parser = parse_rational)]
        t: Rational,
    },
    /// Hankel test on the free cumulants (r_2, r_3, ...).
    Infdiv {
        #[arg(long)]
        p: u32,
        #[arg(long, value_parser = parse_rational)]
        t: Rational,
    },
    /// Classify a grid of parameter points.
    DomainGrid {
        /// `lo:hi`, or a single value.
        #[arg(long, value_parser = commands::parse_range)]
        p: commands::Range,
        #[arg(long, value_parser = commands::parse_range)]
        t: commands::Range,
        /// Points per axis.
        #[arg(long, default_value_t = 20)]
        steps: usize,
    },
    /// Run the acceptance criteria.
    Verify {
        /// Comma-separated categories (exact, numeric, posdef) or criterion numbers.
        #[arg(long)]
        only: Option<String>,
    },
}

fn parse_rational(s: &str) -> Result<Rational, String> {
    fuss_deform::rational::parse(s).map_err(|e| e.to_string())
}

fn positive_f64(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(v) if v > 0.0 && v.is_finite() => Ok(v),
        _ => Err(format!("expected a positive number, got {s:?}")),
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let g = &cli.global;
    match cli.command {
        Command::Seq {
            subject,
            n,
            p,
            t,
            r,
            method,
        } => commands::seq(g, subject, n, p, t, r, method),
        Command::Transforms { p, t, route } => commands::transforms(g, p, t, route),
        Command::Density { p, t, grid, route } => commands::density(g, p, t, grid, route),
        Command::MomentsCheck { p, t, n, rel_tol } => commands::moments_check(g, p, t, n, rel_tol),
        Command::Gfun {
            p_min,
            p_max,
            steps,
        } => commands::gfun(g, p_min, p_max, steps),
        Command::Posdef { p, t } => commands::posdef(g, p, t),
        Command::Infdiv { p, t } => commands::infdiv(g, p, t),
        Command::DomainGrid { p, t, steps } => commands::domain_grid(g, p, t, steps),
        Command::Verify { only } => commands::verify(g, only.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
