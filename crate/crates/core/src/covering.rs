//! Covering maps of the half-plane and the disc by the annulus and by the
//! disc, and the logarithmic differential `dh / h` of an annulus cover.

use std::cmp::Ordering;
use std::f64::consts::PI;

use num_complex::Complex64;

use crate::contour::{auto_detour_radius, bounding_box, lattice_images, Contour, Side};
use crate::divisor::{
    validate_classical, validate_disc, validate_halfplane, Annulus, BlaschkeDivisor,
    ClassicalDivisor, DiscDivisor, HalfPlaneDivisor, Oval, SurfaceSpec, OVAL_TOL,
};
use crate::quadrature::QuadratureOptions;
use crate::roots::{poly_from_roots, polynomial_roots, RootOptions};
use crate::theta::{theta1_logderiv, theta1_scaled};
use crate::{Error, Extended, Result};

const I: Complex64 = Complex64::new(0.0, 1.0);
const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// `eval_eta` refuses points closer than this to a zero or pole.
pub const ETA_POLE_TOL: f64 = 1e-6;

/// Coefficient of the cohomology generator `d rho = dx / (iT)`: its period
/// over the upward oval loop is 1.
pub fn d_rho(annulus: &Annulus) -> Complex64 {
    1.0 / Complex64::new(0.0, annulus.modulus())
}

/// Coefficient of the relative generator `d zeta` dual to the half-loop `B+`
/// running leftward from `Re x = 1/2` to `Re x = 0`, normalized by
/// `integral over B+ = i`. With `A'` upward, the leftward `B'` loop is the
/// one with intersection number `A' . B' = +1`. Orienting `B+` rightward
/// instead flips the generator to `2i dx`.
pub const D_ZETA_LEFTWARD: Complex64 = Complex64::new(0.0, -2.0);

/// Anything that can be evaluated on the extended plane.
pub trait ComplexMap {
    fn eval(&self, x: Complex64) -> Extended;
}

impl<F> ComplexMap for F
where
    F: Fn(Complex64) -> Extended,
{
    fn eval(&self, x: Complex64) -> Extended {
        self(x)
    }
}

/// How the lattice condition is treated when building an annulus cover.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum LatticeMode {
    /// Reject divisors violating the condition.
    #[default]
    Enforce,
    /// Accept a structurally valid divisor and use the nearest integer where
    /// an integer is needed. The map is then not `iT`-periodic.
    NearestInteger,
    /// Accept a structurally valid divisor and add an exponential factor that
    /// restores `iT`-periodicity. The boundary property then fails on the
    /// outer oval.
    PeriodCompensated,
}

/// `theta1` products `prod theta1(x - a_j) / theta1(x - b_j)` times
/// `exp(kappa x)`, combining the exponential parts before exponentiating.
fn theta_ratio(
    x: Complex64,
    numer: &[Complex64],
    denom: &[Complex64],
    kappa: Complex64,
    annulus: &Annulus,
) -> Extended {
    let params = annulus.theta();
    let mut log = kappa * x;
    let mut mant = ONE;
    let (mut zero_hits, mut pole_hits) = (0usize, 0usize);
    for (a, b) in numer.iter().zip(denom) {
        let (Ok(ta), Ok(tb)) = (theta1_scaled(x - a, params), theta1_scaled(x - b, params)) else {
            return Extended::Finite(Complex64::new(f64::NAN, f64::NAN));
        };
        log += ta.log_factor - tb.log_factor;
        match (ta.mantissa == ZERO, tb.mantissa == ZERO) {
            (true, false) => {
                zero_hits += 1;
                mant /= tb.mantissa;
            }
            (false, true) => {
                pole_hits += 1;
                mant *= ta.mantissa;
            }
            (true, true) => {
                zero_hits += 1;
                pole_hits += 1;
            }
            (false, false) => mant *= ta.mantissa / tb.mantissa,
        }
    }
    match zero_hits.cmp(&pole_hits) {
        Ordering::Greater => Extended::ZERO,
        Ordering::Less => Extended::Infinity,
        Ordering::Equal => Extended::Finite(mant * log.exp()),
    }
}

/// The normalized logarithmic differential `(kappa + sum_j [L(x - z_j) -
/// L(x - p_j)]) dx`, with `L = theta1' / theta1`.
#[derive(Debug, Clone, PartialEq)]
pub struct EtaDifferential {
    pairs: Vec<(Complex64, Complex64)>,
    kappa: Complex64,
    annulus: Annulus,
}

impl EtaDifferential {
    pub fn new(pairs: Vec<(Complex64, Complex64)>, kappa: Complex64, annulus: Annulus) -> Self {
        Self {
            pairs,
            kappa,
            annulus,
        }
    }

    pub fn pairs(&self) -> &[(Complex64, Complex64)] {
        &self.pairs
    }

    pub fn kappa(&self) -> Complex64 {
        self.kappa
    }

    pub fn annulus(&self) -> &Annulus {
        &self.annulus
    }

    /// Every zero and pole, as given (not reduced).
    pub fn singular_points(&self) -> Vec<Complex64> {
        self.pairs.iter().flat_map(|(z, p)| [*z, *p]).collect()
    }

    /// Coefficient of `dx` at `x`.
    pub fn eval(&self, x: Complex64) -> Result<Complex64> {
        for s in self.singular_points() {
            if self.annulus.torus_distance(x, s) < ETA_POLE_TOL {
                return Err(Error::PoleProximity {
                    point: x,
                    tolerance: ETA_POLE_TOL,
                });
            }
        }
        let params = self.annulus.theta();
        let mut sum = self.kappa;
        for (z, p) in &self.pairs {
            sum += theta1_logderiv(x - z, params)? - theta1_logderiv(x - p, params)?;
        }
        Ok(sum)
    }

    /// Integral along a contour, detouring around singular points the
    /// contour passes through on the given side.
    pub fn integrate(
        &self,
        contour: &Contour,
        side: Side,
        opts: QuadratureOptions,
    ) -> Result<Complex64> {
        let (lo, hi) = bounding_box(contour);
        let images = lattice_images(&self.singular_points(), &self.annulus, lo, hi, 0.1);
        let radius = auto_detour_radius(&images);
        let path = contour.with_detours(&images, radius, side)?;
        path.integrate(|x| self.eval(x), opts)
    }

    /// Periods over an upward vertical loop and a leftward horizontal loop,
    /// both placed in the widest gap between singular points.
    pub fn fundamental_periods(&self, opts: QuadratureOptions) -> Result<(Complex64, Complex64)> {
        let (a_loop, b_loop) = avoiding_loops(&self.singular_points(), &self.annulus);
        let pa = self.integrate(&a_loop, Side::Left, opts)?;
        let pb = self.integrate(&b_loop, Side::Left, opts)?;
        Ok((pa, pb))
    }
}

/// Midpoint of the widest cyclic gap between `values` taken modulo `period`.
fn widest_gap_midpoint(values: &[f64], period: f64) -> f64 {
    if values.is_empty() {
        return 0.25 * period;
    }
    let mut v: Vec<f64> = values.iter().map(|x| x.rem_euclid(period)).collect();
    v.sort_by(|a, b| a.partial_cmp(b).unwrap_or(Ordering::Equal));
    let mut best = (v[0] + period - v[v.len() - 1], v[v.len() - 1]);
    for w in v.windows(2) {
        if w[1] - w[0] > best.0 {
            best = (w[1] - w[0], w[0]);
        }
    }
    best.1 + 0.5 * best.0
}

/// An upward `A'` loop and a leftward `B'` loop on the torus staying as far
/// from `points` as possible.
pub fn avoiding_loops(points: &[Complex64], annulus: &Annulus) -> (Contour, Contour) {
    let t = annulus.modulus();
    let res: Vec<f64> = points.iter().map(|p| p.re).collect();
    let ims: Vec<f64> = points.iter().map(|p| p.im).collect();
    let c = widest_gap_midpoint(&res, 1.0);
    let y = widest_gap_midpoint(&ims, t);
    (
        Contour::vertical_loop(c, y, annulus),
        Contour::horizontal_loop(y),
    )
}

/// The differential with residues `+1` at each `z` and `-1` at each `p`
/// whose periods over both fundamental loops are purely imaginary.
///
/// Translating the leftward loop by `-1` subtracts `kappa` from its period;
/// translating the upward loop by `iT` adds `iT kappa`. So the real parts
/// vanish for `Re kappa = Re P_B(0)` and `Im kappa = Re P_A(0) / T`.
pub fn normalize_eta(
    pairs: &[(Complex64, Complex64)],
    annulus: &Annulus,
    opts: QuadratureOptions,
) -> Result<EtaDifferential> {
    for (z, p) in pairs {
        if annulus.torus_distance(*z, *p) < ETA_POLE_TOL {
            return Err(Error::InvalidArgument(format!(
                "zero {z} and pole {p} coincide on the torus"
            )));
        }
    }
    let raw = EtaDifferential::new(pairs.to_vec(), ZERO, *annulus);
    if pairs.is_empty() {
        return Ok(raw);
    }
    let (pa, pb) = raw.fundamental_periods(opts)?;
    let kappa = Complex64::new(pb.re, pa.re / annulus.modulus());
    Ok(EtaDifferential::new(pairs.to_vec(), kappa, *annulus))
}

/// `u = exp(2 pi x / T)`.
pub fn strip_to_ring(x: Complex64, annulus: &Annulus) -> Complex64 {
    (2.0 * PI * x / annulus.modulus()).exp()
}

/// Inverse of [`strip_to_ring`] with `Im x` in `[0, T)`.
pub fn ring_to_strip(u: Complex64, annulus: &Annulus) -> Result<Complex64> {
    if u == ZERO || !(u.re.is_finite() && u.im.is_finite()) {
        return Err(Error::InvalidArgument(format!("{u} has no logarithm")));
    }
    let t = annulus.modulus();
    let x = u.ln() * (t / (2.0 * PI));
    Ok(Complex64::new(x.re, annulus.wrap_height(x.im)))
}

/// `l(u) = (u - i) / (u + i)`, taking the closed upper half-plane onto the
/// closed disc.
pub fn mobius_l(u: Extended) -> Extended {
    match u {
        Extended::Infinity => Extended::Finite(ONE),
        Extended::Finite(u) => {
            let d = u + I;
            if d == ZERO {
                Extended::Infinity
            } else {
                Extended::Finite((u - I) / d)
            }
        }
    }
}

/// `l^-1(w) = i (1 + w) / (1 - w)`.
pub fn mobius_l_inv(w: Extended) -> Extended {
    match w {
        Extended::Infinity => Extended::Finite(-I),
        Extended::Finite(w) => {
            let d = ONE - w;
            if d == ZERO {
                Extended::Infinity
            } else {
                Extended::Finite(I * (ONE + w) / d)
            }
        }
    }
}

/// `h(x) = scale * exp(kappa x) prod theta1(x - z_j) / theta1(x - p_j)`, a
/// degree `N` cover of the upper half-plane by the annulus, normalized by
/// `h(v) = 1` at a point `v` of the inner oval.
#[derive(Debug, Clone, PartialEq)]
pub struct HalfPlaneCover {
    divisor: HalfPlaneDivisor,
    annulus: Annulus,
    m: i64,
    kappa: Complex64,
    reference: Complex64,
    scale: f64,
    mode: LatticeMode,
}

impl HalfPlaneCover {
    pub fn new(divisor: HalfPlaneDivisor, annulus: Annulus) -> Result<Self> {
        Self::with_mode(divisor, annulus, LatticeMode::Enforce)
    }

    pub fn with_mode(
        divisor: HalfPlaneDivisor,
        annulus: Annulus,
        mode: LatticeMode,
    ) -> Result<Self> {
        let report = validate_halfplane(&divisor, &annulus);
        let acceptable = match mode {
            LatticeMode::Enforce => report.valid,
            _ => report.structurally_valid(),
        };
        if !acceptable {
            return Err(Error::InvalidDivisor(report.violations));
        }
        let m = report.nearest_integer;
        let kappa = match mode {
            LatticeMode::PeriodCompensated => -2.0 * PI * I * report.condition_value,
            _ => -2.0 * PI * I * m as f64,
        };
        let mut cover = Self {
            divisor,
            annulus,
            m,
            kappa,
            reference: ZERO,
            scale: 1.0,
            mode,
        };
        cover.normalize()?;
        Ok(cover)
    }

    /// Picks `v` as the midpoint of the first arc of the inner oval on which
    /// the map, scaled to `h(v) = 1`, sends the strip into the upper
    /// half-plane. Along the oval, the arcs alternate between the two
    /// orientations, so one of the first two arcs qualifies.
    fn normalize(&mut self) -> Result<()> {
        let t = self.annulus.modulus();
        let heights: Vec<f64> = self
            .divisor
            .oval_points(Oval::Inner, &self.annulus, OVAL_TOL)
            .into_iter()
            .map(|(y, _)| y)
            .collect();
        let eta = self.eta();
        let n = heights.len();
        for k in 0..n {
            let next = if k + 1 < n {
                heights[k + 1]
            } else {
                heights[0] + t
            };
            let v = Complex64::new(0.0, 0.5 * (heights[k] + next));
            // entering the strip from the inner oval is the +1 direction, so
            // Im h grows iff Im(dh/h)(v) > 0
            if eta.eval(v)?.im <= 0.0 {
                continue;
            }
            let raw = self
                .raw(v)
                .finite()
                .ok_or(Error::ContourTooClose { point: v })?;
            self.reference = v;
            self.scale = 1.0 / raw.re;
            return Ok(());
        }
        Err(Error::InvalidArgument(
            "no arc of the inner oval carries the right orientation".into(),
        ))
    }

    fn raw(&self, x: Complex64) -> Extended {
        theta_ratio(
            x,
            &self.divisor.zeros,
            &self.divisor.poles,
            self.kappa,
            &self.annulus,
        )
    }

    pub fn eval(&self, x: Complex64) -> Extended {
        match self.raw(x) {
            Extended::Finite(h) => Extended::Finite(h * self.scale),
            inf => inf,
        }
    }

    /// `dh / h`.
    pub fn eta(&self) -> EtaDifferential {
        EtaDifferential::new(
            self.divisor
                .zeros
                .iter()
                .copied()
                .zip(self.divisor.poles.iter().copied())
                .collect(),
            self.kappa,
            self.annulus,
        )
    }

    pub fn divisor(&self) -> &HalfPlaneDivisor {
        &self.divisor
    }

    pub fn annulus(&self) -> &Annulus {
        &self.annulus
    }

    pub fn m(&self) -> i64 {
        self.m
    }

    pub fn kappa(&self) -> Complex64 {
        self.kappa
    }

    pub fn reference_point(&self) -> Complex64 {
        self.reference
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    pub fn mode(&self) -> LatticeMode {
        self.mode
    }

    pub fn degree(&self) -> usize {
        self.divisor.degree()
    }
}

/// `h(x) = phase * exp(kappa x) prod theta1(x - z_j) / theta1(x + conj z_j)`,
/// a degree `N` cover of the disc by the annulus. `kappa` is zero unless the
/// cover was built with [`LatticeMode::PeriodCompensated`].
#[derive(Debug, Clone, PartialEq)]
pub struct DiscCover {
    divisor: DiscDivisor,
    annulus: Annulus,
    phase: Complex64,
    kappa: f64,
    mode: LatticeMode,
}

impl DiscCover {
    pub fn new(divisor: DiscDivisor, annulus: Annulus) -> Result<Self> {
        Self::with_mode(divisor, annulus, 0.0, LatticeMode::Enforce)
    }

    /// `phase` is the rotation angle of the image.
    pub fn with_mode(
        divisor: DiscDivisor,
        annulus: Annulus,
        phase: f64,
        mode: LatticeMode,
    ) -> Result<Self> {
        if !phase.is_finite() {
            return Err(Error::InvalidArgument(format!("phase {phase}")));
        }
        let report = validate_disc(&divisor, &annulus);
        let acceptable = match mode {
            LatticeMode::Enforce => report.valid,
            _ => report.structurally_valid(),
        };
        if !acceptable {
            return Err(Error::InvalidDivisor(report.violations));
        }
        let kappa = match mode {
            LatticeMode::PeriodCompensated => {
                -2.0 * PI * report.condition_value / annulus.modulus()
            }
            _ => 0.0,
        };
        Ok(Self {
            divisor,
            annulus,
            phase: Complex64::from_polar(1.0, phase),
            kappa,
            mode,
        })
    }

    pub fn eval(&self, x: Complex64) -> Extended {
        let poles = self.divisor.poles();
        match theta_ratio(
            x,
            &self.divisor.zeros,
            &poles,
            Complex64::new(self.kappa, 0.0),
            &self.annulus,
        ) {
            Extended::Finite(h) => Extended::Finite(h * self.phase),
            inf => inf,
        }
    }

    pub fn eta(&self) -> EtaDifferential {
        EtaDifferential::new(
            self.divisor.zeros.iter().map(|z| (*z, -z.conj())).collect(),
            Complex64::new(self.kappa, 0.0),
            self.annulus,
        )
    }

    pub fn divisor(&self) -> &DiscDivisor {
        &self.divisor
    }

    pub fn annulus(&self) -> &Annulus {
        &self.annulus
    }

    pub fn phase(&self) -> Complex64 {
        self.phase
    }

    pub fn kappa(&self) -> f64 {
        self.kappa
    }

    pub fn mode(&self) -> LatticeMode {
        self.mode
    }

    pub fn degree(&self) -> usize {
        self.divisor.degree()
    }
}

/// `R(u) = scale * prod (u - z_j) / (u - p_j)` with real alternating zeros
/// and poles, a self-cover of the upper half-plane.
#[derive(Debug, Clone, PartialEq)]
pub struct RationalCover {
    divisor: ClassicalDivisor,
    scale: f64,
}

impl RationalCover {
    /// Uses the unit scale with the orientation-preserving sign.
    pub fn new(divisor: ClassicalDivisor) -> Result<Self> {
        Self::with_scale(divisor, 1.0)
    }

    /// Only `|scale|` is used; the sign is fixed so that the map preserves
    /// the upper half-plane.
    pub fn with_scale(divisor: ClassicalDivisor, scale: f64) -> Result<Self> {
        let report = validate_classical(&divisor);
        if !report.valid {
            return Err(Error::InvalidDivisor(report.violations));
        }
        if !(scale.is_finite() && scale != 0.0) {
            return Err(Error::InvalidArgument(format!("scale {scale}")));
        }
        let scale = scale.abs() * divisor.scale_sign();
        Ok(Self { divisor, scale })
    }

    pub fn eval(&self, u: Complex64) -> Extended {
        let mut v = Complex64::new(self.scale, 0.0);
        let mut pole = false;
        for (z, p) in self.divisor.zeros.iter().zip(&self.divisor.poles) {
            let d = u - p;
            if d == ZERO {
                pole = true;
                v *= u - z;
            } else {
                v *= (u - z) / d;
            }
        }
        if pole {
            Extended::Infinity
        } else {
            Extended::Finite(v)
        }
    }

    pub fn divisor(&self) -> &ClassicalDivisor {
        &self.divisor
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    pub fn degree(&self) -> usize {
        self.divisor.degree()
    }
}

/// `B(w) = phase * prod (w - a_j) / (1 - conj(a_j) w)`.
#[derive(Debug, Clone, PartialEq)]
pub struct BlaschkeProduct {
    divisor: BlaschkeDivisor,
    phase: Complex64,
}

impl BlaschkeProduct {
    /// `phase` is a rotation angle.
    pub fn new(divisor: BlaschkeDivisor, phase: f64) -> Result<Self> {
        let report = crate::divisor::validate_blaschke(&divisor);
        if !report.valid {
            return Err(Error::InvalidDivisor(report.violations));
        }
        if !phase.is_finite() {
            return Err(Error::InvalidArgument(format!("phase {phase}")));
        }
        Ok(Self {
            divisor,
            phase: Complex64::from_polar(1.0, phase),
        })
    }

    pub fn eval(&self, w: Complex64) -> Extended {
        let mut v = self.phase;
        let mut pole = false;
        for a in &self.divisor.zeros {
            let d = ONE - a.conj() * w;
            if d == ZERO {
                pole = true;
                v *= w - a;
            } else {
                v *= (w - a) / d;
            }
        }
        if pole {
            Extended::Infinity
        } else {
            Extended::Finite(v)
        }
    }

    pub fn zeros(&self) -> &[Complex64] {
        &self.divisor.zeros
    }

    pub fn divisor(&self) -> &BlaschkeDivisor {
        &self.divisor
    }

    pub fn phase(&self) -> Complex64 {
        self.phase
    }

    pub fn degree(&self) -> usize {
        self.divisor.zeros.len()
    }
}

/// The Blaschke product `B` with `l(R(u)) = B(l(u))`. Its zeros are the
/// images under `l` of the roots of `R(u) = i`, found as roots of
/// `scale * prod (u - z_j) - i prod (u - p_j)`.
pub fn rational_to_blaschke(r: &RationalCover) -> Result<BlaschkeProduct> {
    rational_to_blaschke_with(r, RootOptions::default())
}

pub fn rational_to_blaschke_with(r: &RationalCover, opts: RootOptions) -> Result<BlaschkeProduct> {
    let d = r.divisor();
    let num = poly_from_roots(d.zeros.iter().map(|&x| Complex64::new(x, 0.0)));
    let den = poly_from_roots(d.poles.iter().map(|&x| Complex64::new(x, 0.0)));
    let coeffs: Vec<Complex64> = num
        .iter()
        .zip(&den)
        .map(|(a, b)| r.scale() * a - I * b)
        .collect();
    let roots = polynomial_roots(&coeffs, opts)?;
    let zeros: Vec<Complex64> = roots
        .iter()
        .map(|w| mobius_l(Extended::Finite(*w)).finite().unwrap_or(ONE))
        .collect();
    if let Some(bad) = zeros.iter().find(|a| !(a.norm() < 1.0)) {
        return Err(Error::InvalidArgument(format!(
            "Blaschke zero {bad} is not inside the unit disc"
        )));
    }
    // fix the rotation at a real point away from every zero and pole
    let reach = d
        .zeros
        .iter()
        .chain(&d.poles)
        .fold(0.0f64, |m, x| m.max(x.abs()));
    let u0 = Complex64::new(reach + 1.0, 0.0);
    let target = mobius_l(r.eval(u0))
        .finite()
        .ok_or(Error::ContourTooClose { point: u0 })?;
    let unrotated = BlaschkeProduct {
        divisor: BlaschkeDivisor::new(zeros.clone()),
        phase: ONE,
    };
    let b0 = unrotated
        .eval(mobius_l(Extended::Finite(u0)).finite().unwrap_or(ONE))
        .finite()
        .ok_or(Error::ContourTooClose { point: u0 })?;
    BlaschkeProduct::new(BlaschkeDivisor::new(zeros), (target / b0).arg())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variant {
    AnnulusHalfPlane,
    AnnulusDisc,
    ClassicalRational,
    ClassicalBlaschke,
}

#[derive(Debug, Clone, PartialEq)]
pub enum CoveringMap {
    HalfPlane(HalfPlaneCover),
    Disc(DiscCover),
    Rational(RationalCover),
    Blaschke(BlaschkeProduct),
}

impl CoveringMap {
    pub fn variant(&self) -> Variant {
        match self {
            CoveringMap::HalfPlane(_) => Variant::AnnulusHalfPlane,
            CoveringMap::Disc(_) => Variant::AnnulusDisc,
            CoveringMap::Rational(_) => Variant::ClassicalRational,
            CoveringMap::Blaschke(_) => Variant::ClassicalBlaschke,
        }
    }

    pub fn surface(&self) -> SurfaceSpec {
        match self {
            CoveringMap::HalfPlane(c) => SurfaceSpec::Annulus(*c.annulus()),
            CoveringMap::Disc(c) => SurfaceSpec::Annulus(*c.annulus()),
            _ => SurfaceSpec::Disc,
        }
    }

    pub fn degree(&self) -> usize {
        match self {
            CoveringMap::HalfPlane(c) => c.degree(),
            CoveringMap::Disc(c) => c.degree(),
            CoveringMap::Rational(c) => c.degree(),
            CoveringMap::Blaschke(c) => c.degree(),
        }
    }

    /// `dh / h` for annulus covers.
    pub fn eta(&self) -> Option<EtaDifferential> {
        match self {
            CoveringMap::HalfPlane(c) => Some(c.eta()),
            CoveringMap::Disc(c) => Some(c.eta()),
            _ => None,
        }
    }

    /// Whether the target is the half-plane (else the disc).
    pub fn targets_half_plane(&self) -> bool {
        matches!(self, CoveringMap::HalfPlane(_) | CoveringMap::Rational(_))
    }
}

impl ComplexMap for HalfPlaneCover {
    fn eval(&self, x: Complex64) -> Extended {
        HalfPlaneCover::eval(self, x)
    }
}

impl ComplexMap for DiscCover {
    fn eval(&self, x: Complex64) -> Extended {
        DiscCover::eval(self, x)
    }
}

impl ComplexMap for RationalCover {
    fn eval(&self, x: Complex64) -> Extended {
        RationalCover::eval(self, x)
    }
}

impl ComplexMap for BlaschkeProduct {
    fn eval(&self, x: Complex64) -> Extended {
        BlaschkeProduct::eval(self, x)
    }
}

impl ComplexMap for CoveringMap {
    fn eval(&self, x: Complex64) -> Extended {
        match self {
            CoveringMap::HalfPlane(c) => c.eval(x),
            CoveringMap::Disc(c) => c.eval(x),
            CoveringMap::Rational(c) => c.eval(x),
            CoveringMap::Blaschke(c) => c.eval(x),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn unit() -> Annulus {
        Annulus::new(1.0).unwrap()
    }

    fn fin(e: Extended) -> Complex64 {
        e.finite().expect("finite value")
    }

    fn standard_halfplane() -> HalfPlaneCover {
        let d = HalfPlaneDivisor::new(
            vec![c(0.0, 0.1), c(0.5, 0.5)],
            vec![c(0.0, 0.4), c(0.5, 0.2)],
        );
        HalfPlaneCover::new(d, unit()).unwrap()
    }

    fn standard_disc() -> DiscCover {
        DiscCover::new(DiscDivisor::new(vec![c(0.1, 0.2), c(0.4, 0.7)]), unit()).unwrap()
    }

    #[test]
    fn mobius_values() {
        assert_eq!(mobius_l(Extended::Finite(I)), Extended::ZERO);
        assert_eq!(
            mobius_l(Extended::Finite(ZERO)),
            Extended::Finite(c(-1.0, 0.0))
        );
        assert_eq!(mobius_l(Extended::Infinity), Extended::Finite(ONE));
        assert_eq!(mobius_l(Extended::Finite(-I)), Extended::Infinity);
        for u in [c(0.3, 0.2), c(-4.0, 0.0), c(1.0, 7.0)] {
            let back = fin(mobius_l_inv(mobius_l(Extended::Finite(u))));
            assert!((back - u).norm() < 1e-12 * (1.0 + u.norm()));
            assert!(fin(mobius_l(Extended::Finite(u))).norm() <= 1.0 + 1e-15);
        }
    }

    #[test]
    fn strip_and_ring() {
        let a = unit();
        assert!((strip_to_ring(ZERO, &a) - ONE).norm() < 1e-15);
        let two = Annulus::from_radius(2.0).unwrap();
        assert!((strip_to_ring(c(0.5, 0.0), &two) - c(2.0, 0.0)).norm() < 1e-14);
        assert!((strip_to_ring(c(0.0, 0.5), &a) + ONE).norm() < 1e-15);
        for x in [c(0.1, 0.9), c(0.5, 0.0), c(0.3, 0.45)] {
            let back = ring_to_strip(strip_to_ring(x, &a), &a).unwrap();
            assert!((back - x).norm() < 1e-12);
        }
        assert!(ring_to_strip(ZERO, &a).is_err());
    }

    #[test]
    fn halfplane_cover_basics() {
        let h = standard_halfplane();
        assert_eq!(h.eval(c(0.0, 0.1)), Extended::ZERO);
        assert_eq!(h.eval(c(0.0, 0.4)), Extended::Infinity);
        assert!((fin(h.eval(h.reference_point())) - ONE).norm() < 1e-14);
        assert_eq!(h.m(), 0);
        assert!(fin(h.eval(c(0.25, 0.25))).im > 0.0);
        assert!(fin(h.eval(c(0.0, 0.77))).im.abs() < 1e-12);
        assert!(fin(h.eval(c(0.5, 0.77))).im.abs() < 1e-12);
    }

    #[test]
    fn halfplane_cover_with_nonzero_m_is_periodic() {
        // the same torus divisor with a zero moved up by T gives m = 1
        let d = HalfPlaneDivisor::new(
            vec![c(0.0, 1.1), c(0.5, 0.5)],
            vec![c(0.0, 0.4), c(0.5, 0.2)],
        );
        let h = HalfPlaneCover::new(d, unit()).unwrap();
        assert_eq!(h.m(), 1);
        let x = c(0.2, 0.3);
        let a = fin(h.eval(x));
        assert!((fin(h.eval(x + I)) - a).norm() < 1e-10 * (1.0 + a.norm()));
        assert!((fin(h.eval(x + 1.0)) - a).norm() < 1e-10 * (1.0 + a.norm()));
        // and the normalized map coincides with the one from canonical points
        let g = standard_halfplane();
        assert!((fin(g.eval(x)) - a).norm() < 1e-10 * (1.0 + a.norm()));
    }

    #[test]
    fn disc_cover_basics() {
        let h = standard_disc();
        assert_eq!(h.eval(c(0.1, 0.2)), Extended::ZERO);
        assert_eq!(h.eval(c(-0.1, 0.2)), Extended::Infinity);
        for y in [0.0, 0.3, 0.61] {
            assert!((fin(h.eval(c(0.0, y))).norm() - 1.0).abs() < 1e-12);
            assert!((fin(h.eval(c(0.5, y))).norm() - 1.0).abs() < 1e-12);
        }
        assert!(fin(h.eval(c(0.25, 0.5))).norm() < 1.0);
    }

    #[test]
    fn forced_modes_break_the_expected_property() {
        let a = unit();
        let d = HalfPlaneDivisor::new(
            vec![c(0.0, 0.1), c(0.5, 0.5)],
            vec![c(0.0, 0.4), c(0.5, 0.3)],
        );
        assert!(matches!(
            HalfPlaneCover::new(d.clone(), a),
            Err(Error::InvalidDivisor(_))
        ));
        let x = c(0.2, 0.3);
        let near = HalfPlaneCover::with_mode(d.clone(), a, LatticeMode::NearestInteger).unwrap();
        let v = fin(near.eval(x));
        assert!((fin(near.eval(x + I)) - v).norm() > 1e-3 * (1.0 + v.norm()));

        let comp = HalfPlaneCover::with_mode(d, a, LatticeMode::PeriodCompensated).unwrap();
        let v = fin(comp.eval(x));
        assert!((fin(comp.eval(x + I)) - v).norm() < 1e-10 * (1.0 + v.norm()));
        assert!(fin(comp.eval(c(0.0, 0.7))).im.abs() < 1e-12);
        assert!(fin(comp.eval(c(0.5, 0.7))).im.abs() > 1e-3);

        let dd = DiscDivisor::new(vec![c(0.1, 0.2), c(0.35, 0.7)]);
        let comp = DiscCover::with_mode(dd, a, 0.0, LatticeMode::PeriodCompensated).unwrap();
        let v = fin(comp.eval(x));
        assert!((fin(comp.eval(x + I)) - v).norm() < 1e-10 * (1.0 + v.norm()));
        assert!((fin(comp.eval(c(0.0, 0.3))).norm() - 1.0).abs() < 1e-12);
        assert!((fin(comp.eval(c(0.5, 0.3))).norm() - 1.0).abs() > 1e-3);
    }

    #[test]
    fn classical_examples() {
        let r = RationalCover::new(ClassicalDivisor::new(vec![0.0], vec![1.0])).unwrap();
        assert_eq!(r.scale(), -1.0);
        let u = c(0.0, 0.5);
        let expected = u / (1.0 - u);
        assert!((fin(r.eval(u)) - expected).norm() < 1e-15);
        assert!(expected.im > 0.0);
        assert_eq!(r.eval(ONE), Extended::Infinity);

        let b = rational_to_blaschke(&r).unwrap();
        assert!((b.zeros()[0] - c(-0.2, -0.4)).norm() < 1e-12);
        for u in [c(0.3, 0.0), c(-2.0, 1.0), c(0.1, 5.0)] {
            let lhs = fin(mobius_l(r.eval(u)));
            let rhs = fin(b.eval(fin(mobius_l(Extended::Finite(u)))));
            assert!((lhs - rhs).norm() < 1e-12);
        }

        let b = BlaschkeProduct::new(BlaschkeDivisor::new(vec![ZERO, c(0.5, 0.0)]), 0.0).unwrap();
        assert!((fin(b.eval(Complex64::from_polar(1.0, 0.7))).norm() - 1.0).abs() < 1e-15);
        let b = BlaschkeProduct::new(BlaschkeDivisor::new(vec![ZERO]), 0.0).unwrap();
        assert_eq!(b.eval(ZERO), Extended::ZERO);
        assert_eq!(b.eval(ONE), Extended::Finite(ONE));
    }

    #[test]
    fn eta_rejects_points_near_singularities() {
        let h = standard_halfplane();
        assert!(matches!(
            h.eta().eval(c(0.0, 0.1 + 1e-8)),
            Err(Error::PoleProximity { .. })
        ));
        assert!(h.eta().eval(c(0.0, 0.1 + 1e-4)).is_ok());
    }

    #[test]
    fn empty_eta_is_zero() {
        let e = normalize_eta(&[], &unit(), QuadratureOptions::default()).unwrap();
        assert_eq!(e.kappa(), ZERO);
        assert_eq!(e.eval(c(0.2, 0.3)).unwrap(), ZERO);
    }

    #[test]
    fn normalized_kappa_matches_closed_form() {
        let a = Annulus::new(1.3).unwrap();
        let opts = QuadratureOptions::default();
        // boundary pairs: kappa is -2 pi i Im(z - p) / T
        let (z, p) = (c(0.0, 0.2), c(0.5, 0.9));
        let e = normalize_eta(&[(z, p)], &a, opts).unwrap();
        let expected = -2.0 * PI * I * (z - p).im / a.modulus();
        assert!(
            (e.kappa() - expected).norm() < 1e-9,
            "{} vs {}",
            e.kappa(),
            expected
        );
        // mirror pairs: kappa vanishes
        let z = c(0.3, 0.4);
        let e = normalize_eta(&[(z, -z.conj())], &a, opts).unwrap();
        assert!(e.kappa().norm() < 1e-9);
    }
}
