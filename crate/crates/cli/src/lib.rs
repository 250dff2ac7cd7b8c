//! Command-line front end for `theta-blaschke`: divisor files, validation,
//! evaluation, boundary traces, phase portraits, verification reports and
//! seeded generation.

pub mod commands;
pub mod csv;
pub mod error;
pub mod file;
pub mod portrait;

use std::path::PathBuf;

use clap::{Parser, Subcommand};
use num_complex::Complex64;
use theta_blaschke::divisor::Oval;

pub use error::{CliError, EXIT_INPUT, EXIT_INVALID, EXIT_OK};

#[derive(Debug, Parser)]
#[command(
    name = "tbcover",
    version,
    about = "Theta-function coverings of the half-plane and the disc"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Validate a divisor file; exit 0 if valid, 1 if not, 2 on bad input.
    Check {
        path: PathBuf,
        #[arg(long, default_value_t = commands::DEFAULT_TOL)]
        tol: f64,
    },
    /// Evaluate the cover at a point or on a grid (CSV on stdout).
    Eval {
        path: PathBuf,
        /// `re,im`
        #[arg(long, allow_hyphen_values = true, conflicts_with_all = ["grid", "window"], required_unless_present = "grid")]
        point: Option<String>,
        /// `WxH`
        #[arg(long, requires = "window")]
        grid: Option<String>,
        /// `x0,y0,x1,y1`
        #[arg(long, allow_hyphen_values = true)]
        window: Option<portrait::Window>,
    },
    /// Sample the image of a boundary oval (CSV on stdout).
    Trace {
        path: PathBuf,
        #[arg(long, default_value_t = 0, value_parser = clap::value_parser!(u8).range(0..=1))]
        oval: u8,
        #[arg(long, default_value_t = 256)]
        samples: usize,
    },
    /// Render a phase portrait as a binary PPM.
    Portrait {
        path: PathBuf,
        #[arg(long, default_value_t = 256)]
        width: usize,
        #[arg(long, default_value_t = 256)]
        height: usize,
        /// `x0,y0,x1,y1`; defaults to the fundamental domain
        #[arg(long, allow_hyphen_values = true)]
        window: Option<portrait::Window>,
        #[arg(long, value_enum, default_value_t = portrait::Coloring::Combined)]
        coloring: portrait::Coloring,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run every applicable numerical check (JSON on stdout).
    Verify {
        path: PathBuf,
        #[arg(long, default_value_t = commands::DEFAULT_TOL)]
        tol: f64,
    },
    /// Print a random valid divisor file.
    Gen {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long = "n", short = 'n')]
        n: usize,
        #[arg(long, value_enum)]
        target: file::TargetName,
        /// Modulus of the annulus (annulus targets only).
        #[arg(long = "T", default_value_t = 1.0)]
        t: f64,
    },
}

fn parse_point(s: &str) -> Result<Complex64, CliError> {
    let v = portrait::parse_numbers(s, 2).map_err(CliError::Usage)?;
    Ok(Complex64::new(v[0], v[1]))
}

fn parse_grid(s: &str) -> Result<(usize, usize), CliError> {
    let bad = || CliError::Usage(format!("grid {s:?} is not of the form WxH"));
    let (w, h) = s.split_once(['x', 'X']).ok_or_else(bad)?;
    let w: usize = w.trim().parse().map_err(|_| bad())?;
    let h: usize = h.trim().parse().map_err(|_| bad())?;
    if w == 0 || h == 0 {
        return Err(bad());
    }
    Ok((w, h))
}

/// Runs a parsed command line, writing regular output to `out`.
pub fn run<W: std::io::Write>(cli: Cli, out: &mut W) -> Result<u8, CliError> {
    match cli.command {
        Command::Check { path, tol } => commands::check(&path, tol, out),
        Command::Eval {
            path,
            point,
            grid,
            window,
        } => {
            let sampling = match (point, grid, window) {
                (Some(p), _, _) => commands::Sampling::Point(parse_point(&p)?),
                (None, Some(g), Some(window)) => {
                    let (cols, rows) = parse_grid(&g)?;
                    commands::Sampling::Grid { cols, rows, window }
                }
                _ => {
                    return Err(CliError::Usage(
                        "give --point or --grid with --window".into(),
                    ))
                }
            };
            commands::eval(&path, sampling, out)
        }
        Command::Trace {
            path,
            oval,
            samples,
        } => {
            let oval = Oval::from_index(oval as usize).expect("range checked by clap");
            commands::trace(&path, oval, samples, out)
        }
        Command::Portrait {
            path,
            width,
            height,
            window,
            coloring,
            out: file,
        } => commands::portrait(&path, width, height, window, coloring, &file),
        Command::Verify { path, tol } => commands::verify(&path, tol, out),
        Command::Gen { seed, n, target, t } => commands::gen(seed, n, target, t, out),
    }
}
