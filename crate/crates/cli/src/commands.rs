//! The subcommands. Each writes its output to the given sink and returns
//! the process exit status.

use std::io::Write;
use std::path::Path;

use num_complex::Complex64;
use serde::Serialize;
use theta_blaschke::covering::{
    BlaschkeProduct, ComplexMap, CoveringMap, DiscCover, HalfPlaneCover, LatticeMode, RationalCover,
};
use theta_blaschke::divisor::{random_divisor, Annulus, Divisor, Oval, SurfaceSpec};
use theta_blaschke::verify::verify_map;
use theta_blaschke::Extended;

use crate::error::{CliError, EXIT_INVALID, EXIT_OK};
use crate::file::{self, CheckReport, ClauseFailure, DivisorFile, Loaded, TargetName};
use crate::portrait::{self, PortraitSpec};

pub const DEFAULT_TOL: f64 = 1e-8;

fn io(e: std::io::Error) -> CliError {
    CliError::Io {
        path: "<output>".into(),
        source: e,
    }
}

fn json<W: Write, T: Serialize>(out: &mut W, value: &T) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(value).map_err(|e| CliError::Invalid(e.to_string()))?;
    writeln!(out, "{text}").map_err(io)
}

/// Builds the map of a loaded file. Annulus covers use `mode` for the
/// lattice condition.
pub fn build_map(loaded: &Loaded, mode: LatticeMode) -> Result<CoveringMap, CliError> {
    let annulus = |s: &SurfaceSpec| -> Annulus { *s.annulus().expect("annulus target") };
    Ok(match &loaded.divisor {
        Divisor::HalfPlane(d) => CoveringMap::HalfPlane(HalfPlaneCover::with_mode(
            d.clone(),
            annulus(&loaded.surface),
            mode,
        )?),
        Divisor::Disc(d) => CoveringMap::Disc(DiscCover::with_mode(
            d.clone(),
            annulus(&loaded.surface),
            loaded.phase.unwrap_or(0.0),
            mode,
        )?),
        Divisor::Classical(d) => {
            let scale = loaded.scale.unwrap_or_else(|| d.scale_sign());
            CoveringMap::Rational(RationalCover::with_scale(d.clone(), scale)?)
        }
        Divisor::Blaschke(d) => CoveringMap::Blaschke(BlaschkeProduct::new(
            d.clone(),
            loaded.phase.unwrap_or(0.0),
        )?),
    })
}

/// The map of a file that must pass validation.
fn valid_map(path: &Path) -> Result<CoveringMap, CliError> {
    let loaded = file::read(path)?;
    let report = loaded.check(DEFAULT_TOL);
    if !report.valid {
        return Err(CliError::Invalid(format!(
            "invalid divisor: {}",
            summary(&report.violations)
        )));
    }
    build_map(&loaded, LatticeMode::Enforce)
}

fn summary(v: &[ClauseFailure]) -> String {
    v.iter()
        .map(|c| format!("[{}] {}", c.clause, c.message))
        .collect::<Vec<_>>()
        .join("; ")
}

pub fn check<W: Write>(path: &Path, tol: f64, out: &mut W) -> Result<u8, CliError> {
    let report = file::read(path)?.check(tol);
    json(out, &report)?;
    Ok(if report.valid { EXIT_OK } else { EXIT_INVALID })
}

/// Where `eval` samples the map.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Sampling {
    Point(Complex64),
    Grid {
        cols: usize,
        rows: usize,
        window: portrait::Window,
    },
}

/// Grid nodes including the window corners, row-major with the top row
/// first.
pub fn grid_points(cols: usize, rows: usize, w: &portrait::Window) -> Vec<Complex64> {
    let at = |k: usize, n: usize, lo: f64, hi: f64| {
        if n == 1 {
            0.5 * (lo + hi)
        } else {
            lo + (hi - lo) * k as f64 / (n - 1) as f64
        }
    };
    (0..rows)
        .flat_map(|r| {
            let y = at(rows - 1 - r, rows, w.y0, w.y1);
            (0..cols).map(move |c| Complex64::new(at(c, cols, w.x0, w.x1), y))
        })
        .collect()
}

pub fn eval<W: Write>(path: &Path, sampling: Sampling, out: &mut W) -> Result<u8, CliError> {
    let map = valid_map(path)?;
    let points = match sampling {
        Sampling::Point(x) => vec![x],
        Sampling::Grid { cols, rows, window } => grid_points(cols, rows, &window),
    };
    let rows: Vec<(Complex64, Extended)> = points.into_iter().map(|x| (x, map.eval(x))).collect();
    crate::csv::write(out, &rows).map_err(io)?;
    Ok(EXIT_OK)
}

/// Sample points of the boundary curve: an oval of the strip, the real line
/// (through `tan`) or the unit circle.
pub fn trace_points(
    map: &CoveringMap,
    oval: Oval,
    samples: usize,
) -> Result<Vec<Complex64>, CliError> {
    let n = samples as f64;
    match map {
        CoveringMap::HalfPlane(_) | CoveringMap::Disc(_) => {
            let SurfaceSpec::Annulus(a) = map.surface() else {
                unreachable!()
            };
            let t = a.modulus();
            Ok((0..samples)
                .map(|k| Complex64::new(oval.abscissa(), t * k as f64 / n))
                .collect())
        }
        _ if oval != Oval::Inner => Err(CliError::Usage(
            "a classical cover has a single boundary curve; use --oval 0".into(),
        )),
        CoveringMap::Rational(_) => Ok((0..samples)
            .map(|k| {
                let s = std::f64::consts::PI * ((k as f64 + 0.5) / n - 0.5);
                Complex64::new(s.tan(), 0.0)
            })
            .collect()),
        CoveringMap::Blaschke(_) => Ok((0..samples)
            .map(|k| Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * k as f64 / n))
            .collect()),
    }
}

pub fn trace<W: Write>(
    path: &Path,
    oval: Oval,
    samples: usize,
    out: &mut W,
) -> Result<u8, CliError> {
    if samples == 0 {
        return Err(CliError::Usage("--samples must be positive".into()));
    }
    let map = valid_map(path)?;
    let rows: Vec<(Complex64, Extended)> = trace_points(&map, oval, samples)?
        .into_iter()
        .map(|x| (x, map.eval(x)))
        .collect();
    crate::csv::write(out, &rows).map_err(io)?;
    Ok(EXIT_OK)
}

/// Renders the portrait; `window` defaults to the fundamental domain.
pub fn portrait(
    path: &Path,
    width: usize,
    height: usize,
    window: Option<portrait::Window>,
    coloring: portrait::Coloring,
    out_path: &Path,
) -> Result<u8, CliError> {
    let map = valid_map(path)?;
    let spec = PortraitSpec {
        width,
        height,
        window: window.unwrap_or_else(|| portrait::default_window(&map)),
        coloring,
    };
    spec.validate()?;
    let bytes = portrait::render(&map, &spec);
    std::fs::write(out_path, bytes).map_err(|e| CliError::Io {
        path: out_path.display().to_string(),
        source: e,
    })?;
    Ok(EXIT_OK)
}

#[derive(Debug, Serialize)]
struct CheckOut<'a> {
    name: &'a str,
    /// `null` when the check could not produce a number.
    measured_error: Option<f64>,
    tolerance: f64,
    pass: bool,
    details: &'a str,
}

#[derive(Debug, Serialize)]
struct VerifyOut<'a> {
    overall: bool,
    target: &'static str,
    tolerance: f64,
    lattice_mode: &'static str,
    violations: &'a [ClauseFailure],
    checks: Vec<CheckOut<'a>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
}

fn mode_name(mode: LatticeMode) -> &'static str {
    match mode {
        LatticeMode::Enforce => "enforce",
        LatticeMode::NearestInteger => "nearest-integer",
        LatticeMode::PeriodCompensated => "period-compensated",
    }
}

/// Runs every applicable check. A divisor failing only the lattice condition
/// is still built, with the nearest integer in place of the exact one, so
/// that the report shows which properties break.
pub fn verify<W: Write>(path: &Path, tol: f64, out: &mut W) -> Result<u8, CliError> {
    if !(tol.is_finite() && tol > 0.0) {
        return Err(CliError::Usage(format!("--tol {tol} must be positive")));
    }
    let loaded = file::read(path)?;
    let report: CheckReport = loaded.check(tol);
    let mode = if report.valid {
        LatticeMode::Enforce
    } else {
        LatticeMode::NearestInteger
    };
    let mut result = VerifyOut {
        overall: false,
        target: report.target,
        tolerance: tol,
        lattice_mode: mode_name(mode),
        violations: &report.violations,
        checks: Vec::new(),
        error: None,
    };
    if !report.structurally_valid() {
        result.error = Some("the divisor is structurally invalid; nothing to verify".into());
        json(out, &result)?;
        return Ok(EXIT_INVALID);
    }
    let verification = build_map(&loaded, mode).and_then(|map| Ok(verify_map(&map, tol)?));
    match &verification {
        Ok(v) => {
            result.checks = v
                .checks
                .iter()
                .map(|c| CheckOut {
                    name: &c.name,
                    measured_error: c.measured_error.is_finite().then_some(c.measured_error),
                    tolerance: c.tolerance,
                    pass: c.pass,
                    details: &c.details,
                })
                .collect();
            result.overall = report.valid && v.overall();
        }
        Err(e) => result.error = Some(e.to_string()),
    }
    json(out, &result)?;
    Ok(if result.overall {
        EXIT_OK
    } else {
        EXIT_INVALID
    })
}

/// Prints a random valid divisor file. `t` is ignored for classical targets.
pub fn gen<W: Write>(
    seed: u64,
    n: usize,
    target: TargetName,
    t: f64,
    out: &mut W,
) -> Result<u8, CliError> {
    let surface = if target.on_annulus() {
        SurfaceSpec::Annulus(Annulus::new(t).map_err(|e| CliError::Usage(e.to_string()))?)
    } else {
        SurfaceSpec::Disc
    };
    let divisor = random_divisor(seed, n, target.target(), &surface)
        .map_err(|e| CliError::Invalid(e.to_string()))?;
    json(out, &DivisorFile::from_divisor(&divisor, &surface))?;
    Ok(EXIT_OK)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_order_is_row_major_from_the_top() {
        let w = portrait::Window {
            x0: 0.0,
            y0: 0.0,
            x1: 1.0,
            y1: 2.0,
        };
        let p = grid_points(2, 2, &w);
        assert_eq!(
            p,
            vec![
                Complex64::new(0.0, 2.0),
                Complex64::new(1.0, 2.0),
                Complex64::new(0.0, 0.0),
                Complex64::new(1.0, 0.0)
            ]
        );
        assert_eq!(grid_points(1, 1, &w), vec![Complex64::new(0.5, 1.0)]);
    }

    #[test]
    fn gen_is_deterministic_and_refuses_impossible_requests() {
        let mut a = Vec::new();
        let mut b = Vec::new();
        gen(7, 3, TargetName::Halfplane, 1.0, &mut a).unwrap();
        gen(7, 3, TargetName::Halfplane, 1.0, &mut b).unwrap();
        assert_eq!(a, b);
        let err = gen(7, 1, TargetName::Disc, 1.0, &mut Vec::new()).unwrap_err();
        assert_eq!(err.exit_code(), EXIT_INVALID);
        assert!(err.to_string().contains("integer"), "{err}");
    }
}
