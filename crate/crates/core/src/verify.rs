//! Numerical checks of covering maps: periods and principal values of the
//! logarithmic differential, reciprocity on the torus, winding numbers and
//! boundary behaviour.

use std::f64::consts::PI;
use std::fmt::Write as _;

use num_complex::Complex64;

use crate::contour::{Contour, Segment, Side};
use crate::covering::{
    d_rho, mobius_l, normalize_eta, BlaschkeProduct, ComplexMap, CoveringMap, DiscCover,
    EtaDifferential, HalfPlaneCover, RationalCover, D_ZETA_LEFTWARD,
};
use crate::divisor::{validate_halfplane, Annulus, Oval, OVAL_TOL};
use crate::quadrature::QuadratureOptions;
use crate::{Error, Extended, Result};

const I: Complex64 = Complex64::new(0.0, 1.0);
const TWO_PI_I: Complex64 = Complex64::new(0.0, 2.0 * PI);

/// Half-width of the excisions used for principal values.
pub const PV_EPS: f64 = 1e-4;
/// Tolerance for reading a winding sum as an integer.
pub const WINDING_TOL: f64 = 1e-7;

/// One named check.
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub measured_error: f64,
    pub tolerance: f64,
    pub pass: bool,
    pub details: String,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn new() -> Self {
        Self::default()
    }

    /// Records `measured <= tolerance`.
    pub fn record(
        &mut self,
        name: &str,
        measured: f64,
        tolerance: f64,
        details: impl Into<String>,
    ) {
        self.checks.push(Check {
            name: name.to_string(),
            measured_error: measured,
            tolerance,
            pass: measured <= tolerance,
            details: details.into(),
        });
    }

    /// Records a check with an explicit verdict.
    pub fn record_verdict(
        &mut self,
        name: &str,
        measured: f64,
        tolerance: f64,
        pass: bool,
        details: impl Into<String>,
    ) {
        self.checks.push(Check {
            name: name.to_string(),
            measured_error: measured,
            tolerance,
            pass,
            details: details.into(),
        });
    }

    pub fn extend(&mut self, other: VerificationReport) {
        self.checks.extend(other.checks);
    }

    pub fn overall(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }
}

/// `integral d` along `c`, detouring around singular points on the contour
/// on the [`Side::Left`] of each segment.
pub fn period_integral(
    d: &EtaDifferential,
    c: &Contour,
    opts: QuadratureOptions,
) -> Result<Complex64> {
    d.integrate(c, Side::Left, opts)
}

/// Principal value of `integral d` along `c`: the mean of the integrals with
/// half-circle detours of radius [`PV_EPS`] on either side. For simple poles
/// on a straight segment the mean equals the symmetric-excision limit
/// exactly, not just to first order in the radius.
pub fn principal_value_integral(
    d: &EtaDifferential,
    c: &Contour,
    opts: QuadratureOptions,
) -> Result<Complex64> {
    let singular = singular_images(d, c);
    let left = c.with_detours(&singular, PV_EPS, Side::Left)?;
    let right = c.with_detours(&singular, PV_EPS, Side::Right)?;
    let f = |x| d.eval(x);
    Ok(0.5 * (left.integrate(f, opts)? + right.integrate(f, opts)?))
}

fn singular_images(d: &EtaDifferential, c: &Contour) -> Vec<Complex64> {
    let (lo, hi) = crate::contour::bounding_box(c);
    crate::contour::lattice_images(&d.singular_points(), d.annulus(), lo, hi, 0.1)
}

/// Representative of `y` modulo `t` in `(base, base + t]`.
fn lift(y: f64, base: f64, t: f64) -> f64 {
    let w = base + (y - base).rem_euclid(t);
    if w <= base {
        w + t
    } else {
        w
    }
}

/// Height of a horizontal loop in the widest gap between the given heights.
fn gap_height(heights: &[f64], t: f64) -> f64 {
    let mut v: Vec<f64> = heights.iter().map(|y| y.rem_euclid(t)).collect();
    v.sort_by(|a, b| a.total_cmp(b));
    let mut best = (v[0] + t - v[v.len() - 1], v[v.len() - 1]);
    for w in v.windows(2) {
        if w[1] - w[0] > best.0 {
            best = (w[1] - w[0], w[0]);
        }
    }
    best.1 + 0.5 * best.0
}

/// Reciprocity for a zero and a pole on the boundary ovals: the period over
/// the outer oval vanishes (as a principal value when the oval carries `z` or
/// `p`), and the period over the leftward loop equals
/// `2 pi i Re integral_p^z d rho` along a path inside the band above the loop.
pub fn check_reciprocity_case_i(
    z: Complex64,
    p: Complex64,
    annulus: &Annulus,
    opts: QuadratureOptions,
) -> Result<VerificationReport> {
    let (Some(_), Some(_)) = (Oval::locate(z, OVAL_TOL), Oval::locate(p, OVAL_TOL)) else {
        return Err(Error::InvalidArgument(format!(
            "both points must lie on an oval, got {z} and {p}"
        )));
    };
    if annulus.torus_distance(z, p) < 1e-6 {
        return Err(Error::InvalidArgument(format!("{z} and {p} coincide")));
    }
    let t = annulus.modulus();
    let eta = normalize_eta(&[(z, p)], annulus, opts)?;
    let y = gap_height(&[z.im, p.im], t);

    let mut report = VerificationReport::new();
    let a_loop = Contour::vertical_loop(0.5, y, annulus);
    let pa = principal_value_integral(&eta, &a_loop, opts)?;
    report.record(
        "A'-period",
        pa.norm(),
        1e-7,
        format!("principal value over Re x = 1/2: {pa}"),
    );

    let b_loop = Contour::horizontal_loop(y);
    let pb = period_integral(&eta, &b_loop, opts)?;
    let zb = Complex64::new(z.re, lift(z.im, y, t));
    let pbp = Complex64::new(p.re, lift(p.im, y, t));
    let path = Contour::polyline(&[pbp, zb])?;
    let rho = path.integrate(|_| Ok(d_rho(annulus)), opts)?;
    let rhs = TWO_PI_I * rho.re;
    report.record(
        "B'-period",
        (pb - rhs).norm(),
        1e-7,
        format!("loop at height {y}: {pb} vs 2 pi i Re int d rho = {rhs}"),
    );
    Ok(report)
}

/// Reciprocity for an interior zero `z` and its mirror pole `-conj z`: the
/// period over the leftward loop vanishes, and the period over the upward
/// outer oval equals `-pi i Im integral_p^z d zeta` along the horizontal
/// mirror-symmetric path.
pub fn check_reciprocity_case_ii(
    z: Complex64,
    annulus: &Annulus,
    opts: QuadratureOptions,
) -> Result<VerificationReport> {
    if !(z.re > OVAL_TOL && z.re < 0.5 - OVAL_TOL) || !z.im.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "{z} is not strictly inside the strip"
        )));
    }
    let t = annulus.modulus();
    let p = -z.conj();
    let eta = normalize_eta(&[(z, p)], annulus, opts)?;

    let mut report = VerificationReport::new();
    let y = z.im + 0.5 * t;
    let pb = period_integral(&eta, &Contour::horizontal_loop(y), opts)?;
    report.record(
        "B'-period",
        pb.norm(),
        1e-7,
        format!("loop at height {y}: {pb}"),
    );

    let pa = period_integral(&eta, &Contour::vertical_loop(0.5, y, annulus), opts)?;
    let path = Contour::polyline(&[p, z])?;
    let zeta = path.integrate(|_| Ok(D_ZETA_LEFTWARD), opts)?;
    let rhs = -PI * I * zeta.im;
    report.record(
        "A'-period",
        (pa - rhs).norm(),
        1e-7,
        format!("{pa} vs -pi i Im int d zeta = {rhs}"),
    );
    Ok(report)
}

fn phase_step(a: Complex64, b: Complex64) -> f64 {
    (b / a).arg()
}

fn usable(v: Extended) -> Option<Complex64> {
    match v {
        Extended::Finite(z) if z.norm() > 0.0 && z.re.is_finite() && z.im.is_finite() => Some(z),
        _ => None,
    }
}

/// Winding number of `f` along `c` by accumulating phase increments, each
/// kept below `pi / 2` by adaptive subdivision.
pub fn winding_number<F: ComplexMap + ?Sized>(f: &F, c: &Contour) -> Result<i64> {
    let total = winding_sum(f, c)?;
    let n = total.round();
    if (total - n).abs() > WINDING_TOL {
        return Err(Error::NonIntegralWinding { value: total });
    }
    Ok(n as i64)
}

/// The accumulated phase change divided by `2 pi`.
pub fn winding_sum<F: ComplexMap + ?Sized>(f: &F, c: &Contour) -> Result<f64> {
    let mut phase = 0.0;
    for seg in c.segments() {
        phase += phase_walk(f, seg, 0.0, 1.0, MAX_WINDING_STEP)?;
    }
    Ok(phase / (2.0 * PI))
}

/// Like [`winding_sum`], but each segment is first cut at the parameters
/// closest to `marks`, and every piece is walked outward from both of its
/// ends with a tiny initial step. A map whose phase turns sharply next to
/// a known point (a pole on the contour with a small residue, say) is then
/// resolved however narrow the feature is.
pub fn winding_sum_marked<F: ComplexMap + ?Sized>(
    f: &F,
    c: &Contour,
    marks: &[Complex64],
) -> Result<f64> {
    const FIRST_STEP: f64 = 1e-9;
    let mut phase = 0.0;
    for seg in c.segments() {
        let mut cuts = vec![0.0, 1.0];
        for m in marks {
            if seg.distance(*m) <= OVAL_TOL {
                let s = closest_parameter(seg, *m);
                if s > FIRST_STEP && s < 1.0 - FIRST_STEP {
                    cuts.push(s);
                }
            }
        }
        cuts.sort_by(|a, b| a.total_cmp(b));
        for w in cuts.windows(2) {
            let mid = 0.5 * (w[0] + w[1]);
            phase += phase_walk(f, seg, w[0], mid, FIRST_STEP)?;
            phase -= phase_walk(f, seg, w[1], mid, FIRST_STEP)?;
        }
    }
    Ok(phase / (2.0 * PI))
}

const MAX_WINDING_STEP: f64 = 1.0 / 64.0;

fn closest_parameter(seg: &Segment, m: Complex64) -> f64 {
    match *seg {
        Segment::Line { start, end } => {
            let d = end - start;
            (((m - start) * d.conj()).re / d.norm_sqr()).clamp(0.0, 1.0)
        }
        Segment::Arc {
            center, from, to, ..
        } => {
            let theta = (m - center).arg();
            let turn = 2.0 * PI * ((theta - from) / (2.0 * PI)).round();
            ((theta - turn - from) / (to - from)).clamp(0.0, 1.0)
        }
    }
}

/// Phase change of `f` along `seg` from parameter `a` to `b` (either order).
fn phase_walk<F: ComplexMap + ?Sized>(
    f: &F,
    seg: &Segment,
    a: f64,
    b: f64,
    first: f64,
) -> Result<f64> {
    let at = |s: f64| -> Result<Complex64> {
        let x = seg.point(s);
        usable(f.eval(x)).ok_or(Error::ContourTooClose { point: x })
    };
    let dir = if b >= a { 1.0 } else { -1.0 };
    let span = (b - a).abs();
    let mut phase = 0.0;
    let mut done = 0.0;
    let mut v0 = at(a)?;
    let mut ds = first.min(MAX_WINDING_STEP);
    while done < span {
        let d1 = (done + ds).min(span);
        let v1 = at(a + dir * d1)?;
        let vm = at(a + dir * 0.5 * (done + d1))?;
        let whole = phase_step(v0, v1);
        let halves = phase_step(v0, vm) + phase_step(vm, v1);
        if whole.abs() >= 0.5 * PI || (whole - halves).abs() > 1e-9 {
            ds *= 0.5;
            if ds < 1e-14 {
                return Err(Error::ContourTooClose {
                    point: seg.point(a + dir * done),
                });
            }
            continue;
        }
        phase += whole;
        done = d1;
        v0 = v1;
        ds = (ds * 1.5).min(MAX_WINDING_STEP);
    }
    Ok(phase)
}

/// Oval loop traversed with the boundary orientation of the strip, starting
/// at height `y0`: the inner oval downward, the outer oval upward.
pub fn oval_contour(oval: Oval, annulus: &Annulus, y0: f64) -> Contour {
    let up = Contour::vertical_loop(oval.abscissa(), y0, annulus);
    match oval {
        Oval::Inner => up.reversed(),
        Oval::Outer => up,
    }
}

/// Deterministic interior sample points of the strip.
pub fn interior_probes(annulus: &Annulus, count: usize) -> Vec<Complex64> {
    let t = annulus.modulus();
    let cols = (count as f64).sqrt().ceil().max(1.0) as usize;
    let rows = count.div_ceil(cols);
    let mut out = Vec::with_capacity(count);
    for r in 0..rows {
        for k in 0..cols {
            if out.len() == count {
                break;
            }
            let re = 0.02 + 0.46 * (k as f64 + 0.5) / cols as f64;
            let im = t * (r as f64 + 0.37) / rows as f64;
            out.push(Complex64::new(re, im));
        }
    }
    out
}

/// Heights `T (j + 1/2) / samples` on one oval.
pub fn oval_samples(oval: Oval, annulus: &Annulus, samples: usize) -> Vec<Complex64> {
    let t = annulus.modulus();
    (0..samples)
        .map(|j| Complex64::new(oval.abscissa(), t * (j as f64 + 0.5) / samples as f64))
        .collect()
}

fn halfplane_boundary(h: &HalfPlaneCover, samples: usize, tol: f64) -> VerificationReport {
    let mut report = VerificationReport::new();
    let a = h.annulus();
    for oval in Oval::BOTH {
        let mut worst: f64 = 0.0;
        for x in oval_samples(oval, a, samples) {
            if let Extended::Finite(v) = h.eval(x) {
                worst = worst.max(v.im.abs() / (1.0 + v.norm()));
            }
        }
        report.record(
            &format!("boundary-oval-{}", oval.index()),
            worst,
            tol,
            "max |Im h| / (1 + |h|)",
        );
    }
    let min_im = interior_probes(a, 100)
        .into_iter()
        .map(|x| h.eval(x).finite().map_or(f64::NAN, |v| v.im))
        .fold(f64::INFINITY, |m, v| {
            if v.is_nan() {
                f64::NEG_INFINITY
            } else {
                m.min(v)
            }
        });
    report.record_verdict(
        "interior",
        (-min_im).max(0.0),
        0.0,
        min_im > 0.0,
        format!("min Im h over 100 interior probes: {min_im:e}"),
    );
    report
}

fn disc_boundary(h: &DiscCover, samples: usize, tol: f64) -> VerificationReport {
    let mut report = VerificationReport::new();
    let a = h.annulus();
    for oval in Oval::BOTH {
        let worst = oval_samples(oval, a, samples)
            .into_iter()
            .map(|x| (h.eval(x).norm() - 1.0).abs())
            .fold(0.0, f64::max);
        report.record(
            &format!("boundary-oval-{}", oval.index()),
            worst,
            tol,
            "max ||h| - 1|",
        );
    }
    let max_abs = interior_probes(a, 100)
        .into_iter()
        .map(|x| h.eval(x).norm())
        .fold(0.0, f64::max);
    report.record_verdict(
        "interior",
        (max_abs - 1.0).max(0.0),
        0.0,
        max_abs < 1.0,
        format!("max |h| over 100 interior probes: {max_abs}"),
    );
    report
}

fn rational_boundary(r: &RationalCover, samples: usize) -> VerificationReport {
    let mut report = VerificationReport::new();
    let worst = (0..samples)
        .map(|j| -6.0 + 12.0 * (j as f64 + 0.5) / samples as f64)
        .filter_map(|u| r.eval(Complex64::new(u, 0.0)).finite())
        .map(|v| v.im.abs())
        .fold(0.0, f64::max);
    report.record(
        "boundary-real-line",
        worst,
        1e-12,
        "max |Im R| on the real line",
    );
    let min_im = upper_half_plane_probes(128)
        .into_iter()
        .filter(|u| u.im > 0.0)
        .map(|u| r.eval(u).finite().map_or(f64::NEG_INFINITY, |v| v.im))
        .fold(f64::INFINITY, f64::min);
    report.record_verdict(
        "interior",
        (-min_im).max(0.0),
        0.0,
        min_im > 0.0,
        format!("min Im R over upper half-plane probes: {min_im:e}"),
    );
    report
}

fn blaschke_boundary(b: &BlaschkeProduct, samples: usize, tol: f64) -> VerificationReport {
    let mut report = VerificationReport::new();
    let worst = (0..samples)
        .map(|j| Complex64::from_polar(1.0, 2.0 * PI * (j as f64 + 0.5) / samples as f64))
        .map(|w| (b.eval(w).norm() - 1.0).abs())
        .fold(0.0, f64::max);
    report.record(
        "boundary-circle",
        worst,
        tol,
        "max ||B| - 1| on the unit circle",
    );
    let max_abs = (0..100)
        .map(|j| Complex64::from_polar(0.99 * ((j % 10) as f64 + 0.5) / 10.0, 0.7 * j as f64))
        .map(|w| b.eval(w).norm())
        .fold(0.0, f64::max);
    report.record_verdict(
        "interior",
        (max_abs - 1.0).max(0.0),
        0.0,
        max_abs < 1.0,
        format!("max |B| over interior probes: {max_abs}"),
    );
    report
}

/// Boundary values on each boundary component and the sign of the interior.
pub fn boundary_check(map: &CoveringMap, samples: usize, tol: f64) -> VerificationReport {
    match map {
        CoveringMap::HalfPlane(h) => halfplane_boundary(h, samples, tol),
        CoveringMap::Disc(h) => disc_boundary(h, samples, tol),
        CoveringMap::Rational(r) => rational_boundary(r, samples),
        CoveringMap::Blaschke(b) => blaschke_boundary(b, samples, tol),
    }
}

/// Largest `|h(x + w) - h(x)| / (1 + |h(x)|)` over `samples` interior points.
pub fn period_discrepancy<F: ComplexMap + ?Sized>(
    f: &F,
    annulus: &Annulus,
    shift: Complex64,
    samples: usize,
) -> f64 {
    interior_probes(annulus, samples)
        .into_iter()
        .filter_map(|x| match (f.eval(x), f.eval(x + shift)) {
            (Extended::Finite(a), Extended::Finite(b)) => Some((b - a).norm() / (1.0 + a.norm())),
            _ => None,
        })
        .fold(0.0, f64::max)
}

/// `h(x + 1) = h(x)` and `h(x + iT) = h(x)` at sample points.
pub fn single_valuedness<F: ComplexMap + ?Sized>(
    f: &F,
    annulus: &Annulus,
    samples: usize,
    tol: f64,
) -> VerificationReport {
    let mut report = VerificationReport::new();
    let t = annulus.modulus();
    report.record(
        "single-valuedness-1",
        period_discrepancy(f, annulus, Complex64::new(1.0, 0.0), samples),
        tol,
        "max |h(x+1) - h(x)| / (1 + |h(x)|)",
    );
    report.record(
        "single-valuedness-iT",
        period_discrepancy(f, annulus, Complex64::new(0.0, t), samples),
        tol,
        "max |h(x+iT) - h(x)| / (1 + |h(x)|)",
    );
    report
}

/// Distance of `period` from the nearest point of `2 pi i Z`, and that
/// integer.
pub fn lattice_defect(period: Complex64) -> (f64, i64) {
    let n = (period.im / (2.0 * PI)).round();
    ((period - TWO_PI_I * n).norm(), n as i64)
}

/// Residues of `d` at each zero and pole, by integration over small circles.
pub fn residue_check(
    d: &EtaDifferential,
    opts: QuadratureOptions,
    tol: f64,
) -> Result<VerificationReport> {
    let mut report = VerificationReport::new();
    let pts = d.singular_points();
    let mut radius: f64 = 1e-2;
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            let sep = d.annulus().torus_distance(pts[i], pts[j]);
            if sep > 0.0 {
                radius = radius.min(0.25 * sep);
            }
        }
    }
    let mut worst: f64 = 0.0;
    let mut detail = String::new();
    for (k, (z, p)) in d.pairs().iter().enumerate() {
        for (s, sign) in [(*z, 1.0), (*p, -1.0)] {
            let v = Contour::circle(s, radius)?.integrate(|x| d.eval(x), opts)?;
            let err = (v - sign * TWO_PI_I).norm();
            if err > worst {
                worst = err;
                detail.clear();
                let _ = write!(detail, "worst at pair {k}, point {s}: {v}");
            }
        }
    }
    report.record("residues", worst, tol, detail);
    Ok(report)
}

/// Both fundamental periods of `dh / h` lie in `2 pi i Z`. For half-plane
/// covers the period over the leftward loop just below the lowest zero or
/// pole (heights reduced to `[0, T)`) is `2 pi i m`, with `m` from the
/// validation of the reduced divisor.
pub fn period_lattice_check(
    map: &CoveringMap,
    opts: QuadratureOptions,
    tol: f64,
) -> Result<VerificationReport> {
    let mut report = VerificationReport::new();
    let Some(eta) = map.eta() else {
        return Ok(report);
    };
    let (pa, pb) = eta.fundamental_periods(opts)?;
    let (da, na) = lattice_defect(pa);
    let (db, nb) = lattice_defect(pb);
    report.record(
        "A'-period-lattice",
        da,
        tol,
        format!("{pa} ~ 2 pi i * {na}"),
    );
    report.record(
        "B'-period-lattice",
        db,
        tol,
        format!("{pb} ~ 2 pi i * {nb}"),
    );
    if let CoveringMap::HalfPlane(h) = map {
        let a = h.annulus();
        let t = a.modulus();
        let canonical = h.divisor().canonical(a, OVAL_TOL);
        let m = validate_halfplane(&canonical, a).nearest_integer;
        let heights: Vec<f64> = canonical
            .zeros
            .iter()
            .chain(&canonical.poles)
            .map(|x| x.im)
            .collect();
        let hi = heights.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let lo = heights.iter().copied().fold(f64::INFINITY, f64::min);
        let y = 0.5 * (hi + lo - t);
        let canon_eta = crate::covering::EtaDifferential::new(
            canonical
                .zeros
                .iter()
                .copied()
                .zip(canonical.poles.iter().copied())
                .collect(),
            -TWO_PI_I * m as f64,
            *a,
        );
        let p = period_integral(&canon_eta, &Contour::horizontal_loop(y), opts)?;
        report.record(
            "B'-period-equals-m",
            (p - TWO_PI_I * m as f64).norm(),
            tol,
            format!("loop at height {y}: {p} vs 2 pi i * {m}"),
        );
    }
    Ok(report)
}

/// Number of preimages of `i` for a half-plane cover, or the total boundary
/// winding for a disc cover. Both equal the degree.
pub fn degree_count(map: &CoveringMap) -> Result<i64> {
    match map {
        CoveringMap::HalfPlane(h) => {
            let a = *h.annulus();
            let lh = |x: Complex64| mobius_l(h.eval(x));
            // the poles sit on the contour, where the phase can turn very fast
            let t = Complex64::new(0.0, a.modulus());
            let d = h.divisor();
            let marks: Vec<Complex64> = d
                .zeros
                .iter()
                .chain(&d.poles)
                .flat_map(|p| (-2..=2).map(move |k| p + f64::from(k) * t))
                .collect();
            let mut total = 0.0;
            for oval in Oval::BOTH {
                total += winding_sum_marked(&lh, &oval_contour(oval, &a, 0.0), &marks)?;
            }
            let n = total.round();
            if (total - n).abs() > WINDING_TOL {
                return Err(Error::NonIntegralWinding { value: total });
            }
            Ok(n as i64)
        }
        CoveringMap::Disc(h) => {
            let a = *h.annulus();
            let mut n = 0;
            for oval in Oval::BOTH {
                n += winding_number(h, &oval_contour(oval, &a, 0.0))?;
            }
            Ok(n)
        }
        CoveringMap::Rational(r) => {
            // image of the real line under l o R, traversed left to right
            // through a large semicircle
            let big = 1e4;
            let line = Contour::new(vec![
                Segment::line(Complex64::new(-big, 0.0), Complex64::new(big, 0.0)),
                Segment::Arc {
                    center: Complex64::new(0.0, 0.0),
                    radius: big,
                    from: 0.0,
                    to: PI,
                },
            ])?;
            let f = |u: Complex64| mobius_l(r.eval(u));
            winding_number(&f, &line)
        }
        CoveringMap::Blaschke(b) => {
            winding_number(b, &Contour::circle(Complex64::new(0.0, 0.0), 1.0)?)
        }
    }
}

/// Deterministic points of the closed upper half-plane, some on the real line.
pub fn upper_half_plane_probes(count: usize) -> Vec<Complex64> {
    (0..count)
        .map(|j| {
            let jf = j as f64;
            let re = 6.0 * ((0.618_033_988_749_895 * jf).fract() - 0.5);
            let im = if j % 4 == 0 {
                0.0
            } else {
                0.05 + 3.0 * (0.754_877_666 * jf).fract()
            };
            Complex64::new(re + 0.001, im)
        })
        .collect()
}

/// Largest `|l(R(u)) - B(l(u))|` over `points`.
pub fn composition_error(r: &RationalCover, b: &BlaschkeProduct, points: &[Complex64]) -> f64 {
    points
        .iter()
        .map(|u| {
            let lhs = mobius_l(r.eval(*u));
            let rhs = mobius_l(Extended::Finite(*u))
                .finite()
                .map_or(Extended::Infinity, |w| b.eval(w));
            match (lhs, rhs) {
                (Extended::Finite(a), Extended::Finite(b)) => (a - b).norm(),
                (Extended::Infinity, Extended::Infinity) => 0.0,
                _ => f64::INFINITY,
            }
        })
        .fold(0.0, f64::max)
}

/// Every applicable check for `map`, at tolerance `tol` where the check is a
/// numerical identity.
pub fn verify_map(map: &CoveringMap, tol: f64) -> Result<VerificationReport> {
    let opts = QuadratureOptions::default();
    let mut report = boundary_check(map, 512, tol);
    match map {
        CoveringMap::HalfPlane(h) => {
            report.extend(single_valuedness(h, h.annulus(), 64, tol));
        }
        CoveringMap::Disc(h) => {
            report.extend(single_valuedness(h, h.annulus(), 64, tol));
        }
        CoveringMap::Rational(r) => {
            let b = crate::covering::rational_to_blaschke(r)?;
            let err = composition_error(r, &b, &upper_half_plane_probes(256));
            report.record("composition", err, tol, "max |l(R(u)) - B(l(u))|");
        }
        CoveringMap::Blaschke(_) => {}
    }
    if let Some(eta) = map.eta() {
        report.extend(residue_check(&eta, opts, tol)?);
        report.extend(period_lattice_check(map, opts, tol)?);
    }
    let degree = map.degree() as i64;
    match degree_count(map) {
        Ok(n) => report.record_verdict(
            "degree",
            (n - degree).abs() as f64,
            0.0,
            n == degree,
            format!("argument principle count {n}, degree {degree}"),
        ),
        Err(e) => report.record_verdict("degree", f64::INFINITY, 0.0, false, e.to_string()),
    }
    Ok(report)
}
