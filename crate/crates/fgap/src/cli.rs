//! Argument parsing and dispatch.

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use fgap_core::fusionring::DEFAULT_CHARACTER_TOL;
use fgap_core::gapsearch::{MainIneqForm, SearchDegree};

use crate::commands::{self, GapOptions, GridOptions};
use crate::error::{CliError, CliResult};
use crate::format::{parse_poly, parse_real};
use crate::parallel::thread_count;
use crate::report::Report;

#[derive(Debug, Parser)]
#[command(name = "fgap", version, about = "Codegree obstructions and small global dimension searches for fusion rings")]
pub struct Cli {
    /// Print the report as JSON.
    #[arg(long, global = true)]
    pub json: bool,
    /// Tolerance for the numeric character cross-check.
    #[arg(long, global = true, value_name = "TOL")]
    pub tol: Option<f64>,
    /// Exit with status 3 when `analyze` finds an obstruction.
    #[arg(long, global = true)]
    pub expect_pass: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Codegrees, FP data, sum identity and obstruction report of a ring file.
    Analyze {
        /// Path to a ring file, or the name of a bundled ring.
        ring: String,
    },
    /// Exhaustive searches for small global dimensions.
    Search {
        #[command(subcommand)]
        kind: SearchCommand,
    },
    /// Whether the roots of a monic polynomial are d-numbers.
    Dnumber {
        /// Coefficients, highest degree first, e.g. `1,-5,5`.
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
    },
    /// Codegrees of Rep(G) from conjugacy class sizes.
    Repg {
        /// Class sizes, e.g. `1,2,2,5`.
        #[arg(long, value_delimiter = ',', required = true)]
        classes: Vec<u64>,
    },
    /// FPdim bound M for a global dimension given by its minimal polynomial.
    FfibBound {
        /// Coefficients, highest degree first.
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
    },
    /// Print a ring file for a builtin family.
    Builtin {
        family: Family,
        #[arg(long)]
        n: u32,
    },
}

#[derive(Debug, Subcommand)]
pub enum SearchCommand {
    /// Quadratic global dimensions `x^2 - a x + b`.
    Quadratic(GridArgs),
    /// Cubic global dimensions `x^3 - a x^2 + b x - c`.
    Cubic(GridArgs),
    /// Totally positive algebraic integers of every degree below `--dmax`.
    Gap(GapArgs),
}

#[derive(Debug, Args)]
pub struct GridArgs {
    /// Lower end of the window for the smallest root (inclusive).
    #[arg(long, allow_hyphen_values = true)]
    pub d_lo: Option<String>,
    /// Upper end of the window (exclusive).
    #[arg(long, allow_hyphen_values = true)]
    pub d_hi: Option<String>,
    #[arg(long)]
    pub a_min: Option<i64>,
    #[arg(long)]
    pub a_max: Option<i64>,
    /// Enumerate the full coefficient box instead of the window range.
    #[arg(long)]
    pub no_window_constraint: bool,
    #[arg(long)]
    pub no_main_inequality: bool,
    #[arg(long, value_enum, default_value_t = Form::Rational)]
    pub main_form: Form,
    /// Include the filter trace of every rejected candidate.
    #[arg(long)]
    pub audit: bool,
}

#[derive(Debug, Args)]
pub struct GapArgs {
    /// Upper bound on the smallest conjugate, e.g. `4*sqrt(3)/5` or `1.34`.
    #[arg(long, allow_hyphen_values = true)]
    pub dmax: Option<String>,
    /// Allow the smallest conjugate to equal `--dmax`.
    #[arg(long)]
    pub inclusive: bool,
    #[arg(long)]
    pub max_degree: Option<usize>,
    #[arg(long)]
    pub audit: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Form {
    Rational,
    KBound,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Kn,
    Cyclic,
}

fn grid_options(a: &GridArgs) -> CliResult<GridOptions> {
    Ok(GridOptions {
        d_lo: a.d_lo.as_deref().map(parse_real).transpose()?,
        d_hi: a.d_hi.as_deref().map(parse_real).transpose()?,
        a_min: a.a_min,
        a_max: a.a_max,
        no_window_constraint: a.no_window_constraint,
        no_main_inequality: a.no_main_inequality,
        main_form: match a.main_form {
            Form::Rational => MainIneqForm::Rational,
            Form::KBound => MainIneqForm::KBound,
        },
        audit: a.audit,
    })
}

/// Runs a parsed command; returns the report and its rendering.
pub fn execute(cli: &Cli) -> CliResult<(Report, String)> {
    let tol = cli.tol.unwrap_or(DEFAULT_CHARACTER_TOL);
    if !(tol.is_finite() && tol > 0.0) {
        return Err(CliError::input(format!("--tol must be positive, got {tol}")));
    }
    let rep = match &cli.command {
        Command::Analyze { ring } => commands::analyze(ring, tol, cli.expect_pass)?,
        Command::Search { kind } => match kind {
            SearchCommand::Quadratic(a) => commands::search_grid(SearchDegree::Quadratic, &grid_options(a)?, thread_count()?)?,
            SearchCommand::Cubic(a) => commands::search_grid(SearchDegree::Cubic, &grid_options(a)?, thread_count()?)?,
            SearchCommand::Gap(a) => {
                let opts = GapOptions {
                    d_max: a.dmax.as_deref().map(parse_real).transpose()?,
                    inclusive: a.inclusive,
                    max_degree: a.max_degree,
                    audit: a.audit,
                };
                commands::search_gap(&opts, thread_count()?)?
            }
        },
        Command::Dnumber { poly } => commands::dnumber(&parse_poly(poly)?)?,
        Command::Repg { classes } => commands::repg(classes)?,
        Command::FfibBound { poly } => commands::ffib_bound(&parse_poly(poly)?)?,
        Command::Builtin { family, n } => {
            let name = match family {
                Family::Kn => "kn",
                Family::Cyclic => "cyclic",
            };
            commands::builtin(name, *n)?
        }
    };
    let text = if cli.json {
        rep.render_json()
    } else if matches!(cli.command, Command::Builtin { .. }) {
        commands::builtin_text(&rep)
    } else {
        rep.render_text()
    };
    Ok((rep, text))
}

/// Parses `args` (program name first), writes the report to `out` and
/// diagnostics to `err`, and returns the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let informational = matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion);
            let rendered = e.render().to_string();
            if informational {
                let _ = out.write_all(rendered.as_bytes());
                return 0;
            }
            let _ = err.write_all(rendered.as_bytes());
            return 1;
        }
    };
    match execute(&cli) {
        Ok((rep, text)) => {
            let _ = out.write_all(text.as_bytes());
            rep.exit_code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
