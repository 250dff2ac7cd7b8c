//! Surfaces, zero/pole divisors and the constraints a divisor must satisfy to
//! be the divisor of a covering map.

use std::cmp::Ordering;
use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::theta::{lattice_distance, ThetaParams};
use crate::{Error, Result};

/// Points farther than this from an oval line are off the boundary.
pub const OVAL_TOL: f64 = 1e-9;
/// Default tolerance for the integrality of the lattice condition.
pub const LATTICE_TOL: f64 = 1e-8;
/// Largest supported degree.
pub const MAX_DEGREE: usize = 64;

const GENERATION_ATTEMPTS: usize = 10_000;
// generated points keep this much room from the ovals and from each other
const GEN_MARGIN: f64 = 0.02;

/// An annulus `1 <= |u| <= r`, stored through its strip modulus
/// `T = pi / log r`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Annulus {
    params: ThetaParams,
}

impl Annulus {
    pub fn new(t: f64) -> Result<Self> {
        Ok(Self {
            params: ThetaParams::new(t)?,
        })
    }

    pub fn from_radius(r: f64) -> Result<Self> {
        if !(r.is_finite() && r > 1.0) {
            return Err(Error::InvalidArgument(format!(
                "annulus radius must exceed 1, got {r}"
            )));
        }
        Self::new(PI / r.ln())
    }

    /// The strip period `T`.
    pub fn modulus(&self) -> f64 {
        self.params.t()
    }

    /// Outer radius `r = exp(pi / T)`.
    pub fn radius(&self) -> f64 {
        (PI / self.modulus()).exp()
    }

    pub fn theta(&self) -> &ThetaParams {
        &self.params
    }

    /// Representative of `y` modulo `T` in `[0, T)`.
    pub fn wrap_height(&self, y: f64) -> f64 {
        let t = self.modulus();
        let w = y.rem_euclid(t);
        if w >= t {
            0.0
        } else {
            w
        }
    }

    /// Distance between two points of the torus `C / (Z + iT Z)`.
    pub fn torus_distance(&self, a: Complex64, b: Complex64) -> f64 {
        lattice_distance(a - b, &self.params)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SurfaceSpec {
    Disc,
    Annulus(Annulus),
}

impl SurfaceSpec {
    pub fn genus(&self) -> u32 {
        0
    }

    /// Number of boundary ovals.
    pub fn ovals(&self) -> u32 {
        match self {
            SurfaceSpec::Disc => 1,
            SurfaceSpec::Annulus(_) => 2,
        }
    }

    /// Genus `2g + k - 1` of the Schottky double.
    pub fn double_genus(&self) -> u32 {
        2 * self.genus() + self.ovals() - 1
    }

    pub fn annulus(&self) -> Option<&Annulus> {
        match self {
            SurfaceSpec::Annulus(a) => Some(a),
            SurfaceSpec::Disc => None,
        }
    }
}

/// The two boundary components of the strip model.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Oval {
    /// `Re x = 0`, the unit circle of the ring.
    Inner,
    /// `Re x = 1/2`, the circle of radius `r`.
    Outer,
}

impl Oval {
    pub const BOTH: [Oval; 2] = [Oval::Inner, Oval::Outer];

    pub fn index(self) -> usize {
        match self {
            Oval::Inner => 0,
            Oval::Outer => 1,
        }
    }

    pub fn from_index(i: usize) -> Option<Oval> {
        match i {
            0 => Some(Oval::Inner),
            1 => Some(Oval::Outer),
            _ => None,
        }
    }

    /// Real part of the oval line.
    pub fn abscissa(self) -> f64 {
        match self {
            Oval::Inner => 0.0,
            Oval::Outer => 0.5,
        }
    }

    /// The oval a point lies on, if any. `Re x` is taken modulo 1.
    pub fn locate(x: Complex64, tol: f64) -> Option<Oval> {
        let re = x.re - x.re.round();
        if re.abs() <= tol {
            Some(Oval::Inner)
        } else if (re.abs() - 0.5).abs() <= tol {
            Some(Oval::Outer)
        } else {
            None
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PointKind {
    Zero,
    Pole,
}

impl fmt::Display for PointKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PointKind::Zero => write!(f, "zero"),
            PointKind::Pole => write!(f, "pole"),
        }
    }
}

/// One failed clause of a divisor validation.
#[derive(Debug, Clone, PartialEq)]
pub enum Violation {
    NonFinite {
        kind: PointKind,
        index: usize,
    },
    CountMismatch {
        zeros: usize,
        poles: usize,
    },
    DegreeOutOfRange {
        degree: usize,
        min: usize,
        max: usize,
    },
    OffOval {
        kind: PointKind,
        index: usize,
        point: Complex64,
    },
    OvalMissingPoint {
        oval: Oval,
        kind: PointKind,
    },
    Alternation {
        oval: Oval,
    },
    Coincident {
        first: Complex64,
        second: Complex64,
    },
    NotInterior {
        index: usize,
        point: Complex64,
    },
    NotIncreasing {
        kind: PointKind,
    },
    RealAlternation,
    OutsideUnitDisc {
        index: usize,
        point: Complex64,
    },
    LatticeHalfPlane {
        condition: f64,
        deviation: f64,
    },
    LatticeDisc {
        condition: f64,
        deviation: f64,
    },
}

impl Violation {
    /// Short stable identifier, used in machine-readable reports.
    pub fn clause(&self) -> &'static str {
        match self {
            Violation::NonFinite { .. } => "non-finite",
            Violation::CountMismatch { .. } => "count-mismatch",
            Violation::DegreeOutOfRange { .. } => "degree-range",
            Violation::OffOval { .. } => "off-oval",
            Violation::OvalMissingPoint { .. } => "oval-coverage",
            Violation::Alternation { .. } => "alternation",
            Violation::Coincident { .. } => "coincident-points",
            Violation::NotInterior { .. } => "interior",
            Violation::NotIncreasing { .. } => "ordering",
            Violation::RealAlternation => "alternation",
            Violation::OutsideUnitDisc { .. } => "unit-disc",
            Violation::LatticeHalfPlane { .. } => "CondH",
            Violation::LatticeDisc { .. } => "CondD",
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NonFinite { kind, index } => write!(f, "{kind} #{index} is not finite"),
            Violation::CountMismatch { zeros, poles } => {
                write!(f, "{zeros} zeros but {poles} poles")
            }
            Violation::DegreeOutOfRange { degree, min, max } => {
                write!(f, "degree {degree} outside [{min}, {max}]")
            }
            Violation::OffOval { kind, index, point } => {
                write!(f, "{kind} #{index} at {point} is not on an oval")
            }
            Violation::OvalMissingPoint { oval, kind } => {
                write!(f, "oval {} carries no {kind}", oval.index())
            }
            Violation::Alternation { oval } => write!(
                f,
                "zeros and poles do not alternate on oval {}",
                oval.index()
            ),
            Violation::Coincident { first, second } => {
                write!(f, "points {first} and {second} coincide")
            }
            Violation::NotInterior { index, point } => {
                write!(
                    f,
                    "zero #{index} at {point} is not strictly inside the strip"
                )
            }
            Violation::NotIncreasing { kind } => write!(f, "{kind}s are not strictly increasing"),
            Violation::RealAlternation => {
                write!(f, "zeros and poles do not alternate on the real line")
            }
            Violation::OutsideUnitDisc { index, point } => {
                write!(f, "zero #{index} at {point} is not inside the unit disc")
            }
            Violation::LatticeHalfPlane {
                condition,
                deviation,
            } => write!(
                f,
                "(1/iT) sum(z - p) = {condition} is {deviation:e} away from an integer"
            ),
            Violation::LatticeDisc {
                condition,
                deviation,
            } => write!(
                f,
                "2 Re sum(z) = {condition} is {deviation:e} away from an integer"
            ),
        }
    }
}

/// Tolerances used by the validators.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    pub oval: f64,
    pub lattice: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            oval: OVAL_TOL,
            lattice: LATTICE_TOL,
        }
    }
}

/// Outcome of validating a divisor.
#[derive(Debug, Clone, PartialEq)]
pub struct LatticeReport {
    pub condition_value: f64,
    pub nearest_integer: i64,
    pub deviation: f64,
    pub valid: bool,
    pub violations: Vec<Violation>,
}

impl LatticeReport {
    fn assemble(condition_value: f64, violations: Vec<Violation>) -> Self {
        let nearest = condition_value.round();
        Self {
            condition_value,
            nearest_integer: if nearest.is_finite() {
                nearest as i64
            } else {
                0
            },
            deviation: (condition_value - nearest).abs(),
            valid: violations.is_empty(),
            violations,
        }
    }

    /// `true` if every clause except the lattice condition holds.
    pub fn structurally_valid(&self) -> bool {
        self.violations.iter().all(|v| {
            matches!(
                v,
                Violation::LatticeHalfPlane { .. } | Violation::LatticeDisc { .. }
            )
        })
    }
}

/// Zeros and poles on the boundary ovals; the divisor of an annulus cover of
/// the upper half-plane.
#[derive(Debug, Clone, PartialEq)]
pub struct HalfPlaneDivisor {
    pub zeros: Vec<Complex64>,
    pub poles: Vec<Complex64>,
}

/// Zeros strictly inside the strip; the poles are their mirror images
/// `-conj(z)` and are not stored. Repeated entries are multiple zeros.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscDivisor {
    pub zeros: Vec<Complex64>,
}

/// Real zeros and poles of a rational self-map of the upper half-plane.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassicalDivisor {
    pub zeros: Vec<f64>,
    pub poles: Vec<f64>,
}

/// Zeros of a finite Blaschke product.
#[derive(Debug, Clone, PartialEq)]
pub struct BlaschkeDivisor {
    pub zeros: Vec<Complex64>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Divisor {
    HalfPlane(HalfPlaneDivisor),
    Disc(DiscDivisor),
    Classical(ClassicalDivisor),
    Blaschke(BlaschkeDivisor),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Target {
    HalfPlane,
    Disc,
    ClassicalRational,
    ClassicalBlaschke,
}

impl HalfPlaneDivisor {
    pub fn new(zeros: Vec<Complex64>, poles: Vec<Complex64>) -> Self {
        Self { zeros, poles }
    }

    pub fn degree(&self) -> usize {
        self.zeros.len()
    }

    /// The same divisor with every point snapped onto its oval and its height
    /// reduced into `[0, T)`. Points off both ovals keep their real part.
    pub fn canonical(&self, annulus: &Annulus, tol: f64) -> Self {
        let snap = |x: &Complex64| {
            let re = match Oval::locate(*x, tol) {
                Some(oval) => oval.abscissa(),
                None => x.re,
            };
            Complex64::new(re, annulus.wrap_height(x.im))
        };
        Self {
            zeros: self.zeros.iter().map(snap).collect(),
            poles: self.poles.iter().map(snap).collect(),
        }
    }

    /// `(1/iT) sum(z_j - p_j)` for the stored representatives.
    pub fn condition(&self, annulus: &Annulus) -> Complex64 {
        let sum: Complex64 =
            self.zeros.iter().sum::<Complex64>() - self.poles.iter().sum::<Complex64>();
        sum / Complex64::new(0.0, annulus.modulus())
    }

    /// Points of one oval, sorted by height in `[0, T)`.
    pub(crate) fn oval_points(
        &self,
        oval: Oval,
        annulus: &Annulus,
        tol: f64,
    ) -> Vec<(f64, PointKind)> {
        let mut pts: Vec<(f64, PointKind)> = self
            .zeros
            .iter()
            .map(|z| (z, PointKind::Zero))
            .chain(self.poles.iter().map(|p| (p, PointKind::Pole)))
            .filter(|(x, _)| Oval::locate(**x, tol) == Some(oval))
            .map(|(x, k)| (annulus.wrap_height(x.im), k))
            .collect();
        pts.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap_or(Ordering::Equal));
        pts
    }
}

impl DiscDivisor {
    pub fn new(zeros: Vec<Complex64>) -> Self {
        Self { zeros }
    }

    pub fn degree(&self) -> usize {
        self.zeros.len()
    }

    /// The implied poles `-conj(z_j)`.
    pub fn poles(&self) -> Vec<Complex64> {
        self.zeros.iter().map(|z| reflect(*z)).collect()
    }

    /// `2 Re sum(z_j)`, which equals `sum(z_j - p_j)`.
    pub fn condition(&self) -> f64 {
        2.0 * self.zeros.iter().map(|z| z.re).sum::<f64>()
    }
}

impl ClassicalDivisor {
    pub fn new(zeros: Vec<f64>, poles: Vec<f64>) -> Self {
        Self { zeros, poles }
    }

    pub fn degree(&self) -> usize {
        self.zeros.len()
    }

    /// The sign `s` for which `s * prod (u - z_j) / (u - p_j)` maps the upper
    /// half-plane into itself: with alternating points the map is increasing
    /// on the real line exactly when `s * (sum z - sum p) > 0`.
    pub fn scale_sign(&self) -> f64 {
        let d: f64 = self.zeros.iter().sum::<f64>() - self.poles.iter().sum::<f64>();
        if d >= 0.0 {
            1.0
        } else {
            -1.0
        }
    }
}

/// The anticonformal reflection `x -> -conj(x)` of the double.
pub fn reflect(x: Complex64) -> Complex64 {
    Complex64::new(-x.re, x.im)
}

fn check_finite_points(points: &[Complex64], kind: PointKind, out: &mut Vec<Violation>) {
    for (index, p) in points.iter().enumerate() {
        if !(p.re.is_finite() && p.im.is_finite()) {
            out.push(Violation::NonFinite { kind, index });
        }
    }
}

fn cyclic_alternates(points: &[(f64, PointKind)]) -> bool {
    let n = points.len();
    (0..n).all(|i| points[i].1 != points[(i + 1) % n].1)
}

/// Checks a half-plane divisor: oval membership, counts, per-oval coverage,
/// alternation, distinctness and the lattice condition `(1/iT) sum(z - p) in Z`.
pub fn validate_halfplane(d: &HalfPlaneDivisor, annulus: &Annulus) -> LatticeReport {
    validate_halfplane_with(d, annulus, Tolerances::default())
}

pub fn validate_halfplane_with(
    d: &HalfPlaneDivisor,
    annulus: &Annulus,
    tol: Tolerances,
) -> LatticeReport {
    let mut v = Vec::new();
    check_finite_points(&d.zeros, PointKind::Zero, &mut v);
    check_finite_points(&d.poles, PointKind::Pole, &mut v);
    if !v.is_empty() {
        return LatticeReport::assemble(f64::NAN, v);
    }

    if d.zeros.len() != d.poles.len() {
        v.push(Violation::CountMismatch {
            zeros: d.zeros.len(),
            poles: d.poles.len(),
        });
    }
    let n = d.zeros.len().max(d.poles.len());
    if !(2..=MAX_DEGREE).contains(&n) {
        v.push(Violation::DegreeOutOfRange {
            degree: n,
            min: 2,
            max: MAX_DEGREE,
        });
    }

    for (kind, pts) in [(PointKind::Zero, &d.zeros), (PointKind::Pole, &d.poles)] {
        for (index, x) in pts.iter().enumerate() {
            if Oval::locate(*x, tol.oval).is_none() {
                v.push(Violation::OffOval {
                    kind,
                    index,
                    point: *x,
                });
            }
        }
    }

    let all: Vec<Complex64> = d.zeros.iter().chain(d.poles.iter()).copied().collect();
    for i in 0..all.len() {
        for j in i + 1..all.len() {
            if annulus.torus_distance(all[i], all[j]) < tol.oval {
                v.push(Violation::Coincident {
                    first: all[i],
                    second: all[j],
                });
            }
        }
    }
    let has_coincident = v.iter().any(|x| matches!(x, Violation::Coincident { .. }));

    for oval in Oval::BOTH {
        let pts = d.oval_points(oval, annulus, tol.oval);
        for kind in [PointKind::Zero, PointKind::Pole] {
            if !pts.iter().any(|(_, k)| *k == kind) {
                v.push(Violation::OvalMissingPoint { oval, kind });
            }
        }
        if !pts.is_empty() && !has_coincident && !cyclic_alternates(&pts) {
            v.push(Violation::Alternation { oval });
        }
    }

    let condition = d.condition(annulus).re;
    let deviation = (condition - condition.round()).abs();
    if !(deviation <= tol.lattice) {
        v.push(Violation::LatticeHalfPlane {
            condition,
            deviation,
        });
    }
    LatticeReport::assemble(condition, v)
}

/// Checks a disc divisor: interiority of every zero and the lattice condition
/// `2 Re sum(z) in Z`.
pub fn validate_disc(d: &DiscDivisor, annulus: &Annulus) -> LatticeReport {
    validate_disc_with(d, annulus, Tolerances::default())
}

pub fn validate_disc_with(d: &DiscDivisor, _annulus: &Annulus, tol: Tolerances) -> LatticeReport {
    let mut v = Vec::new();
    check_finite_points(&d.zeros, PointKind::Zero, &mut v);
    if !v.is_empty() {
        return LatticeReport::assemble(f64::NAN, v);
    }
    let n = d.zeros.len();
    if !(1..=MAX_DEGREE).contains(&n) {
        v.push(Violation::DegreeOutOfRange {
            degree: n,
            min: 1,
            max: MAX_DEGREE,
        });
    }
    for (index, z) in d.zeros.iter().enumerate() {
        if !(z.re > tol.oval && z.re < 0.5 - tol.oval) {
            v.push(Violation::NotInterior { index, point: *z });
        }
    }
    let condition = d.condition();
    let deviation = (condition - condition.round()).abs();
    if !(deviation <= tol.lattice) {
        v.push(Violation::LatticeDisc {
            condition,
            deviation,
        });
    }
    LatticeReport::assemble(condition, v)
}

/// Checks that real zeros and poles are finite, strictly increasing, equal in
/// number and strictly alternating. The condition value is the degree.
pub fn validate_classical(d: &ClassicalDivisor) -> LatticeReport {
    let mut v = Vec::new();
    for (kind, pts) in [(PointKind::Zero, &d.zeros), (PointKind::Pole, &d.poles)] {
        for (index, x) in pts.iter().enumerate() {
            if !x.is_finite() {
                v.push(Violation::NonFinite { kind, index });
            }
        }
        if pts.windows(2).any(|w| !(w[0] < w[1])) {
            v.push(Violation::NotIncreasing { kind });
        }
    }
    if d.zeros.len() != d.poles.len() {
        v.push(Violation::CountMismatch {
            zeros: d.zeros.len(),
            poles: d.poles.len(),
        });
    }
    let n = d.zeros.len();
    if !(1..=MAX_DEGREE).contains(&n) {
        v.push(Violation::DegreeOutOfRange {
            degree: n,
            min: 1,
            max: MAX_DEGREE,
        });
    }
    if v.is_empty() {
        let mut merged: Vec<(f64, PointKind)> = d
            .zeros
            .iter()
            .map(|&x| (x, PointKind::Zero))
            .chain(d.poles.iter().map(|&x| (x, PointKind::Pole)))
            .collect();
        merged.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap_or(Ordering::Equal));
        let strict = merged
            .windows(2)
            .all(|w| w[0].0 < w[1].0 && w[0].1 != w[1].1);
        if !strict {
            v.push(Violation::RealAlternation);
        }
    }
    LatticeReport::assemble(n as f64, v)
}

/// Checks that every Blaschke zero lies in the open unit disc.
pub fn validate_blaschke(d: &BlaschkeDivisor) -> LatticeReport {
    let mut v = Vec::new();
    check_finite_points(&d.zeros, PointKind::Zero, &mut v);
    let n = d.zeros.len();
    if !(1..=MAX_DEGREE).contains(&n) {
        v.push(Violation::DegreeOutOfRange {
            degree: n,
            min: 1,
            max: MAX_DEGREE,
        });
    }
    for (index, a) in d.zeros.iter().enumerate() {
        if !(a.norm() < 1.0) {
            v.push(Violation::OutsideUnitDisc { index, point: *a });
        }
    }
    LatticeReport::assemble(n as f64, v)
}

/// A divisor with one coordinate left free for [`complete_divisor`].
#[derive(Debug, Clone, PartialEq)]
pub enum PartialDivisor {
    /// The height of `poles[free_pole]` is solved for; its current height is
    /// the initial guess.
    HalfPlane {
        divisor: HalfPlaneDivisor,
        free_pole: usize,
    },
    /// The real part of `zeros[free_zero]` is solved for; its current real
    /// part is the initial guess.
    Disc {
        divisor: DiscDivisor,
        free_zero: usize,
    },
}

/// Solves the (linear) lattice condition for the free coordinate, picking the
/// admissible solution nearest the initial guess.
pub fn complete_divisor(partial: &PartialDivisor, annulus: &Annulus) -> Result<Divisor> {
    match partial {
        PartialDivisor::HalfPlane { divisor, free_pole } => {
            complete_halfplane(divisor, *free_pole, annulus).map(Divisor::HalfPlane)
        }
        PartialDivisor::Disc { divisor, free_zero } => {
            complete_disc(divisor, *free_zero, annulus).map(Divisor::Disc)
        }
    }
}

pub fn complete_halfplane(
    d: &HalfPlaneDivisor,
    free_pole: usize,
    annulus: &Annulus,
) -> Result<HalfPlaneDivisor> {
    let t = annulus.modulus();
    let initial = *d
        .poles
        .get(free_pole)
        .ok_or_else(|| Error::CompletionFailure(format!("no pole with index {free_pole}")))?;
    // sum Im z - sum Im p_other - Im p_free = m T
    let fixed: f64 = d.zeros.iter().map(|z| z.im).sum::<f64>()
        - d.poles
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != free_pole)
            .map(|(_, p)| p.im)
            .sum::<f64>();
    let m = ((fixed - initial.im) / t).round();
    let height = fixed - m * t;

    let mut out = d.clone();
    out.poles[free_pole] = Complex64::new(initial.re, height);
    let report = validate_halfplane(&out, annulus);
    if !report.valid {
        return Err(Error::CompletionFailure(format!(
            "forced height {height} breaks the divisor: {}",
            report
                .violations
                .iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join("; ")
        )));
    }
    Ok(out)
}

pub fn complete_disc(d: &DiscDivisor, free_zero: usize, _annulus: &Annulus) -> Result<DiscDivisor> {
    let initial = *d
        .zeros
        .get(free_zero)
        .ok_or_else(|| Error::CompletionFailure(format!("no zero with index {free_zero}")))?;
    let fixed: f64 = d
        .zeros
        .iter()
        .enumerate()
        .filter(|(i, _)| *i != free_zero)
        .map(|(_, z)| z.re)
        .sum();
    // 2 (fixed + re) = m; candidates re = m/2 - fixed, spaced 1/2 apart
    let admissible = |re: f64| re > OVAL_TOL && re < 0.5 - OVAL_TOL;
    let m0 = (2.0 * (fixed + initial.re)).round();
    let mut candidates: Vec<f64> = (-2..=2)
        .map(|k| (m0 + k as f64) / 2.0 - fixed)
        .filter(|&re| admissible(re))
        .collect();
    candidates.sort_by(|a, b| {
        (a - initial.re)
            .abs()
            .partial_cmp(&(b - initial.re).abs())
            .unwrap_or(Ordering::Equal)
    });
    let re = *candidates.first().ok_or_else(|| {
        Error::CompletionFailure(format!(
            "no real part in (0, 1/2) makes 2 Re sum integral (fixed part {fixed})"
        ))
    })?;
    let mut out = d.clone();
    out.zeros[free_zero] = Complex64::new(re, initial.im);
    Ok(out)
}

/// Draws a valid divisor of degree `n` for `target`, deterministically in
/// `seed`.
pub fn random_divisor(
    seed: u64,
    n: usize,
    target: Target,
    surface: &SurfaceSpec,
) -> Result<Divisor> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let annulus = || {
        surface
            .annulus()
            .copied()
            .ok_or_else(|| Error::InvalidArgument("annulus targets need an annulus surface".into()))
    };
    match target {
        Target::HalfPlane => {
            let a = annulus()?;
            if !(2..=MAX_DEGREE).contains(&n) {
                return Err(Error::InvalidArgument(format!(
                    "half-plane divisors need 2 <= N <= {MAX_DEGREE}, got {n}: each oval carries a zero and a pole"
                )));
            }
            random_halfplane(&mut rng, n, &a).map(Divisor::HalfPlane)
        }
        Target::Disc => {
            let a = annulus()?;
            if !(2..=MAX_DEGREE).contains(&n) {
                return Err(Error::InvalidArgument(format!(
                    "disc divisors need 2 <= N <= {MAX_DEGREE}, got {n}: a single interior zero can never make 2 Re z an integer"
                )));
            }
            random_disc(&mut rng, n, &a).map(Divisor::Disc)
        }
        Target::ClassicalRational => {
            check_classical_degree(n)?;
            random_classical(&mut rng, n).map(Divisor::Classical)
        }
        Target::ClassicalBlaschke => {
            check_classical_degree(n)?;
            random_blaschke(&mut rng, n).map(Divisor::Blaschke)
        }
    }
}

fn check_classical_degree(n: usize) -> Result<()> {
    if (1..=MAX_DEGREE).contains(&n) {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!(
            "classical divisors need 1 <= N <= {MAX_DEGREE}, got {n}"
        )))
    }
}

/// Sorted heights in `[0, T)` with cyclic gaps of at least `gap`.
fn spaced_heights(rng: &mut ChaCha8Rng, count: usize, t: f64, gap: f64) -> Option<Vec<f64>> {
    let mut h: Vec<f64> = (0..count).map(|_| rng.gen_range(0.0..t)).collect();
    h.sort_by(|a, b| a.partial_cmp(b).unwrap_or(Ordering::Equal));
    let ok = (0..count).all(|i| {
        let next = if i + 1 < count { h[i + 1] } else { h[0] + t };
        next - h[i] >= gap
    });
    ok.then_some(h)
}

fn random_halfplane(rng: &mut ChaCha8Rng, n: usize, a: &Annulus) -> Result<HalfPlaneDivisor> {
    let t = a.modulus();
    for _ in 0..GENERATION_ATTEMPTS {
        let n_inner = rng.gen_range(1..n);
        let mut zeros = Vec::with_capacity(n);
        let mut poles = Vec::with_capacity(n);
        let mut ok = true;
        for (oval, count) in [(Oval::Inner, n_inner), (Oval::Outer, n - n_inner)] {
            let gap = (GEN_MARGIN * t).min(t / (4 * count) as f64);
            let Some(heights) = spaced_heights(rng, 2 * count, t, gap) else {
                ok = false;
                break;
            };
            let zero_first = rng.gen_bool(0.5);
            for (i, y) in heights.into_iter().enumerate() {
                let x = Complex64::new(oval.abscissa(), y);
                if (i % 2 == 0) == zero_first {
                    zeros.push(x);
                } else {
                    poles.push(x);
                }
            }
        }
        if !ok {
            continue;
        }
        let d = HalfPlaneDivisor::new(zeros, poles);
        let free = n - 1;
        let Ok(done) = complete_halfplane(&d, free, a) else {
            continue;
        };
        let done = done.canonical(a, OVAL_TOL);
        let pole = done.poles[free];
        let gap = GEN_MARGIN * t.min(1.0);
        let separated = done
            .zeros
            .iter()
            .chain(done.poles.iter().take(free))
            .all(|x| a.torus_distance(*x, pole) >= gap);
        if separated && validate_halfplane(&done, a).valid {
            return Ok(done);
        }
    }
    Err(Error::GenerationExhausted {
        attempts: GENERATION_ATTEMPTS,
    })
}

fn random_disc(rng: &mut ChaCha8Rng, n: usize, a: &Annulus) -> Result<DiscDivisor> {
    let t = a.modulus();
    let lo = 1.5 * GEN_MARGIN;
    let hi = 0.5 - 1.5 * GEN_MARGIN;
    for _ in 0..GENERATION_ATTEMPTS {
        let zeros: Vec<Complex64> = (0..n)
            .map(|_| Complex64::new(rng.gen_range(lo..hi), rng.gen_range(0.0..t)))
            .collect();
        let Ok(done) = complete_disc(&DiscDivisor::new(zeros), n - 1, a) else {
            continue;
        };
        let free = done.zeros[n - 1];
        if !(lo..=hi).contains(&free.re) {
            continue;
        }
        let gap = 2.0 * GEN_MARGIN * t.min(1.0);
        let separated = (0..n)
            .all(|i| (i + 1..n).all(|j| a.torus_distance(done.zeros[i], done.zeros[j]) >= gap));
        if separated && validate_disc(&done, a).valid {
            return Ok(done);
        }
    }
    Err(Error::GenerationExhausted {
        attempts: GENERATION_ATTEMPTS,
    })
}

fn random_classical(rng: &mut ChaCha8Rng, n: usize) -> Result<ClassicalDivisor> {
    for _ in 0..GENERATION_ATTEMPTS {
        let mut pts: Vec<f64> = (0..2 * n).map(|_| rng.gen_range(-4.0..4.0)).collect();
        pts.sort_by(|a, b| a.partial_cmp(b).unwrap_or(Ordering::Equal));
        if pts.windows(2).any(|w| w[1] - w[0] < 0.05) {
            continue;
        }
        let zero_first = rng.gen_bool(0.5);
        let (mut zeros, mut poles) = (Vec::new(), Vec::new());
        for (i, x) in pts.into_iter().enumerate() {
            if (i % 2 == 0) == zero_first {
                zeros.push(x);
            } else {
                poles.push(x);
            }
        }
        return Ok(ClassicalDivisor::new(zeros, poles));
    }
    Err(Error::GenerationExhausted {
        attempts: GENERATION_ATTEMPTS,
    })
}

fn random_blaschke(rng: &mut ChaCha8Rng, n: usize) -> Result<BlaschkeDivisor> {
    for _ in 0..GENERATION_ATTEMPTS {
        let zeros: Vec<Complex64> = (0..n)
            .map(|_| {
                Complex64::from_polar(
                    0.9 * rng.gen_range(0.0f64..1.0).sqrt(),
                    rng.gen_range(-PI..PI),
                )
            })
            .collect();
        let separated = (0..n).all(|i| (i + 1..n).all(|j| (zeros[i] - zeros[j]).norm() >= 0.05));
        if separated {
            return Ok(BlaschkeDivisor::new(zeros));
        }
    }
    Err(Error::GenerationExhausted {
        attempts: GENERATION_ATTEMPTS,
    })
}

impl BlaschkeDivisor {
    pub fn new(zeros: Vec<Complex64>) -> Self {
        Self { zeros }
    }
}
