//! The divisor file format and its translation to library types.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use theta_blaschke::divisor::{
    validate_blaschke, validate_classical, validate_disc, validate_disc_with, validate_halfplane,
    validate_halfplane_with, Annulus, BlaschkeDivisor, ClassicalDivisor, DiscDivisor, Divisor,
    HalfPlaneDivisor, LatticeReport, SurfaceSpec, Target, Tolerances,
};

use crate::error::CliError;

/// Largest disagreement tolerated between `T` and `pi / log r` when both
/// are given.
pub const MODULUS_CONSISTENCY: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum TargetName {
    Halfplane,
    Disc,
    ClassicalRational,
    ClassicalBlaschke,
}

impl TargetName {
    pub fn target(self) -> Target {
        match self {
            TargetName::Halfplane => Target::HalfPlane,
            TargetName::Disc => Target::Disc,
            TargetName::ClassicalRational => Target::ClassicalRational,
            TargetName::ClassicalBlaschke => Target::ClassicalBlaschke,
        }
    }

    pub fn on_annulus(self) -> bool {
        matches!(self, TargetName::Halfplane | TargetName::Disc)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            TargetName::Halfplane => "halfplane",
            TargetName::Disc => "disc",
            TargetName::ClassicalRational => "classical-rational",
            TargetName::ClassicalBlaschke => "classical-blaschke",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SurfaceKind {
    Annulus,
    Disc,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SurfaceFile {
    pub kind: SurfaceKind,
    #[serde(rename = "T", default, skip_serializing_if = "Option::is_none")]
    pub t: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Point {
    pub re: f64,
    pub im: f64,
}

impl From<Complex64> for Point {
    fn from(z: Complex64) -> Self {
        Self { re: z.re, im: z.im }
    }
}

impl From<Point> for Complex64 {
    fn from(p: Point) -> Self {
        Complex64::new(p.re, p.im)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DivisorFile {
    pub target: TargetName,
    pub surface: SurfaceFile,
    pub zeros: Vec<Point>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub poles: Option<Vec<Point>>,
    /// Rotation angle of the image (disc and Blaschke targets).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phase: Option<f64>,
    /// Constant factor of a rational cover.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scale: Option<f64>,
    /// The integer of the lattice condition (annulus targets).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<i64>,
}

/// A parsed file, translated to library types.
#[derive(Debug, Clone, PartialEq)]
pub struct Loaded {
    pub target: TargetName,
    pub surface: SurfaceSpec,
    pub divisor: Divisor,
    pub phase: Option<f64>,
    pub scale: Option<f64>,
    pub m: Option<i64>,
}

/// One failed clause, as reported by `check`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClauseFailure {
    pub clause: String,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckReport {
    pub valid: bool,
    pub target: &'static str,
    pub degree: usize,
    pub condition_value: f64,
    pub nearest_integer: i64,
    pub deviation: f64,
    pub violations: Vec<ClauseFailure>,
}

impl CheckReport {
    /// `true` if the only failures concern the lattice condition.
    pub fn structurally_valid(&self) -> bool {
        self.violations
            .iter()
            .all(|v| v.clause == "CondH" || v.clause == "CondD")
    }
}

pub fn parse(text: &str) -> Result<DivisorFile, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

pub fn read(path: &std::path::Path) -> Result<Loaded, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io {
        path: path.display().to_string(),
        source: e,
    })?;
    parse(&text)?.resolve()
}

fn schema(msg: impl Into<String>) -> CliError {
    CliError::Schema(msg.into())
}

fn finite(name: &str, v: f64) -> Result<f64, CliError> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(schema(format!("{name} must be a finite number")))
    }
}

impl SurfaceFile {
    pub fn annulus(t: f64) -> Self {
        Self {
            kind: SurfaceKind::Annulus,
            t: Some(t),
            r: None,
        }
    }

    pub fn disc() -> Self {
        Self {
            kind: SurfaceKind::Disc,
            t: None,
            r: None,
        }
    }

    fn resolve(&self) -> Result<SurfaceSpec, CliError> {
        match self.kind {
            SurfaceKind::Disc => {
                if self.t.is_some() || self.r.is_some() {
                    return Err(schema("a disc surface takes neither T nor r"));
                }
                Ok(SurfaceSpec::Disc)
            }
            SurfaceKind::Annulus => {
                let annulus = match (self.t, self.r) {
                    (Some(t), None) => Annulus::new(finite("T", t)?),
                    (None, Some(r)) => Annulus::from_radius(finite("r", r)?),
                    (Some(t), Some(r)) => {
                        let implied = PI / r.ln();
                        if !((t - implied).abs() <= MODULUS_CONSISTENCY) {
                            return Err(schema(format!(
                                "T = {t} and r = {r} disagree: pi / log r = {implied}"
                            )));
                        }
                        Annulus::new(t)
                    }
                    (None, None) => return Err(schema("an annulus surface needs T or r")),
                }
                .map_err(|e| schema(e.to_string()))?;
                Ok(SurfaceSpec::Annulus(annulus))
            }
        }
    }
}

impl DivisorFile {
    /// Checks the schema-level rules and builds the library divisor.
    pub fn resolve(&self) -> Result<Loaded, CliError> {
        let surface = self.surface.resolve()?;
        let want = if self.target.on_annulus() {
            SurfaceKind::Annulus
        } else {
            SurfaceKind::Disc
        };
        if self.surface.kind != want {
            return Err(schema(format!(
                "target {} needs a surface of kind {}",
                self.target.as_str(),
                if want == SurfaceKind::Annulus {
                    "annulus"
                } else {
                    "disc"
                }
            )));
        }
        let takes_poles = matches!(
            self.target,
            TargetName::Halfplane | TargetName::ClassicalRational
        );
        match (&self.poles, takes_poles) {
            (Some(_), false) => {
                return Err(schema(format!(
                    "target {} takes no poles",
                    self.target.as_str()
                )));
            }
            (None, true) => {
                return Err(schema(format!(
                    "target {} needs poles",
                    self.target.as_str()
                )))
            }
            _ => {}
        }
        let takes_phase = matches!(
            self.target,
            TargetName::Disc | TargetName::ClassicalBlaschke
        );
        if self.phase.is_some() && !takes_phase {
            return Err(schema(format!(
                "target {} takes no phase",
                self.target.as_str()
            )));
        }
        if self.scale.is_some() && self.target != TargetName::ClassicalRational {
            return Err(schema(format!(
                "target {} takes no scale",
                self.target.as_str()
            )));
        }
        if self.m.is_some() && !self.target.on_annulus() {
            return Err(schema(format!(
                "target {} takes no m",
                self.target.as_str()
            )));
        }
        if let Some(p) = self.phase {
            finite("phase", p)?;
        }
        if let Some(s) = self.scale {
            finite("scale", s)?;
            if s == 0.0 {
                return Err(schema("scale must be nonzero"));
            }
        }
        let zeros: Vec<Complex64> = self.zeros.iter().map(|&p| p.into()).collect();
        let poles: Vec<Complex64> = self.poles.iter().flatten().map(|&p| p.into()).collect();
        let divisor = match self.target {
            TargetName::Halfplane => Divisor::HalfPlane(HalfPlaneDivisor::new(zeros, poles)),
            TargetName::Disc => Divisor::Disc(DiscDivisor::new(zeros)),
            TargetName::ClassicalBlaschke => Divisor::Blaschke(BlaschkeDivisor::new(zeros)),
            TargetName::ClassicalRational => {
                let real = |v: &[Complex64], what: &str| -> Result<Vec<f64>, CliError> {
                    v.iter()
                        .map(|z| {
                            if z.im == 0.0 {
                                Ok(z.re)
                            } else {
                                Err(schema(format!(
                                    "{what} of a rational cover must be real, got {z}"
                                )))
                            }
                        })
                        .collect()
                };
                Divisor::Classical(ClassicalDivisor::new(
                    real(&zeros, "zeros")?,
                    real(&poles, "poles")?,
                ))
            }
        };
        Ok(Loaded {
            target: self.target,
            surface,
            divisor,
            phase: self.phase,
            scale: self.scale,
            m: self.m,
        })
    }

    /// The file describing `divisor`, with `m` filled in for annulus targets.
    pub fn from_divisor(divisor: &Divisor, surface: &SurfaceSpec) -> Self {
        let points = |v: &[Complex64]| v.iter().map(|&z| Point::from(z)).collect::<Vec<_>>();
        let reals = |v: &[f64]| {
            v.iter()
                .map(|&x| Point { re: x, im: 0.0 })
                .collect::<Vec<_>>()
        };
        let surface_file = match surface {
            SurfaceSpec::Annulus(a) => SurfaceFile::annulus(a.modulus()),
            SurfaceSpec::Disc => SurfaceFile::disc(),
        };
        let mut file = match divisor {
            Divisor::HalfPlane(d) => Self::bare(
                TargetName::Halfplane,
                surface_file,
                points(&d.zeros),
                Some(points(&d.poles)),
            ),
            Divisor::Disc(d) => Self::bare(TargetName::Disc, surface_file, points(&d.zeros), None),
            Divisor::Classical(d) => Self::bare(
                TargetName::ClassicalRational,
                surface_file,
                reals(&d.zeros),
                Some(reals(&d.poles)),
            ),
            Divisor::Blaschke(d) => Self::bare(
                TargetName::ClassicalBlaschke,
                surface_file,
                points(&d.zeros),
                None,
            ),
        };
        if let Some(a) = surface.annulus() {
            file.m = match divisor {
                Divisor::HalfPlane(d) => Some(validate_halfplane(d, a).nearest_integer),
                Divisor::Disc(d) => Some(validate_disc(d, a).nearest_integer),
                _ => None,
            };
        }
        file
    }

    fn bare(
        target: TargetName,
        surface: SurfaceFile,
        zeros: Vec<Point>,
        poles: Option<Vec<Point>>,
    ) -> Self {
        Self {
            target,
            surface,
            zeros,
            poles,
            phase: None,
            scale: None,
            m: None,
        }
    }
}

impl Loaded {
    /// Validates the divisor plus the file-level fields that refer to it.
    /// `lattice_tol` bounds the distance of the lattice condition from an
    /// integer.
    pub fn check(&self, lattice_tol: f64) -> CheckReport {
        let tol = Tolerances {
            lattice: lattice_tol,
            ..Tolerances::default()
        };
        let (report, degree): (LatticeReport, usize) = match (&self.divisor, &self.surface) {
            (Divisor::HalfPlane(d), SurfaceSpec::Annulus(a)) => {
                (validate_halfplane_with(d, a, tol), d.zeros.len())
            }
            (Divisor::Disc(d), SurfaceSpec::Annulus(a)) => {
                (validate_disc_with(d, a, tol), d.zeros.len())
            }
            (Divisor::Classical(d), _) => (validate_classical(d), d.zeros.len()),
            (Divisor::Blaschke(d), _) => (validate_blaschke(d), d.zeros.len()),
            _ => unreachable!("resolve pairs annulus targets with annulus surfaces"),
        };
        let mut violations: Vec<ClauseFailure> = report
            .violations
            .iter()
            .map(|v| ClauseFailure {
                clause: v.clause().to_string(),
                message: v.to_string(),
            })
            .collect();
        if let Some(m) = self.m {
            if report.deviation.is_finite() && m != report.nearest_integer {
                violations.push(ClauseFailure {
                    clause: "m".into(),
                    message: format!(
                        "file states m = {m}, the divisor gives {}",
                        report.nearest_integer
                    ),
                });
            }
        }
        if let (Some(s), Divisor::Classical(d)) = (self.scale, &self.divisor) {
            if report.valid && s.signum() != d.scale_sign() {
                violations.push(ClauseFailure {
                    clause: "scale-sign".into(),
                    message: format!(
                        "scale {s} reverses the upper half-plane; this divisor needs sign {}",
                        d.scale_sign()
                    ),
                });
            }
        }
        CheckReport {
            valid: violations.is_empty(),
            target: self.target.as_str(),
            degree,
            condition_value: report.condition_value,
            nearest_integer: report.nearest_integer,
            deviation: report.deviation,
            violations,
        }
    }
}
