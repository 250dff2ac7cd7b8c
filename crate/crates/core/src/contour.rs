//! Piecewise contours made of straight segments and circular arcs, with
//! detours around singular points.

use std::cmp::Ordering;
use std::f64::consts::PI;

use num_complex::Complex64;

use crate::divisor::Annulus;
use crate::quadrature::{integrate, QuadratureOptions};
use crate::{Error, Result};

/// Endpoint matching tolerance for joining segments.
pub const JOIN_TOL: f64 = 1e-12;
/// Largest automatic detour radius.
pub const MAX_DETOUR: f64 = 1e-3;

const I: Complex64 = Complex64::new(0.0, 1.0);

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Segment {
    Line {
        start: Complex64,
        end: Complex64,
    },
    /// `center + radius * exp(i (from + s (to - from)))` for `s` in `[0, 1]`.
    Arc {
        center: Complex64,
        radius: f64,
        from: f64,
        to: f64,
    },
}

impl Segment {
    pub fn line(start: Complex64, end: Complex64) -> Self {
        Segment::Line { start, end }
    }

    pub fn point(&self, s: f64) -> Complex64 {
        match *self {
            Segment::Line { start, end } => start + (end - start) * s,
            Segment::Arc {
                center,
                radius,
                from,
                to,
            } => center + Complex64::from_polar(radius, from + s * (to - from)),
        }
    }

    /// `d point / ds`.
    pub fn derivative(&self, s: f64) -> Complex64 {
        match *self {
            Segment::Line { start, end } => end - start,
            Segment::Arc {
                radius, from, to, ..
            } => I * (to - from) * Complex64::from_polar(radius, from + s * (to - from)),
        }
    }

    pub fn start(&self) -> Complex64 {
        self.point(0.0)
    }

    pub fn end(&self) -> Complex64 {
        self.point(1.0)
    }

    pub fn reversed(&self) -> Self {
        match *self {
            Segment::Line { start, end } => Segment::Line {
                start: end,
                end: start,
            },
            Segment::Arc {
                center,
                radius,
                from,
                to,
            } => Segment::Arc {
                center,
                radius,
                from: to,
                to: from,
            },
        }
    }

    pub fn length(&self) -> f64 {
        match *self {
            Segment::Line { start, end } => (end - start).norm(),
            Segment::Arc {
                radius, from, to, ..
            } => radius * (to - from).abs(),
        }
    }

    /// Distance from `x` to the segment.
    pub fn distance(&self, x: Complex64) -> f64 {
        match *self {
            Segment::Line { start, end } => {
                let d = end - start;
                let len2 = d.norm_sqr();
                if len2 == 0.0 {
                    return (x - start).norm();
                }
                let s = ((x - start) * d.conj()).re / len2;
                (x - self.point(s.clamp(0.0, 1.0))).norm()
            }
            Segment::Arc {
                center,
                radius,
                from,
                to,
            } => {
                let w = x - center;
                let (lo, hi) = if from <= to { (from, to) } else { (to, from) };
                // angle of w moved into [lo, lo + 2 pi)
                let ang = lo + (w.arg() - lo).rem_euclid(2.0 * PI);
                if ang <= hi {
                    (w.norm() - radius).abs()
                } else {
                    (x - self.start()).norm().min((x - self.end()).norm())
                }
            }
        }
    }
}

/// How a contour closes up.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Closure {
    Open,
    /// End point equals start point.
    Closed,
    /// End point equals start point plus a lattice period: a closed loop on
    /// the torus.
    Periodic(Complex64),
}

/// Which side of a segment a detour passes on, looking along the segment's
/// canonical orientation (rightward, or upward for vertical segments). The
/// side does not depend on the direction of travel, so a reversed contour
/// retraces the same detoured path.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Contour {
    segments: Vec<Segment>,
    closure: Closure,
}

impl Contour {
    /// Joins segments, checking that consecutive endpoints match.
    pub fn new(segments: Vec<Segment>) -> Result<Self> {
        if segments.is_empty() {
            return Err(Error::InvalidArgument("empty contour".into()));
        }
        for w in segments.windows(2) {
            let gap = (w[0].end() - w[1].start()).norm();
            if gap > JOIN_TOL * (1.0 + w[0].end().norm()) {
                return Err(Error::InvalidArgument(format!(
                    "segments do not join: {} vs {}",
                    w[0].end(),
                    w[1].start()
                )));
            }
        }
        let first = segments[0].start();
        let last = segments[segments.len() - 1].end();
        let closure = if (last - first).norm() <= JOIN_TOL * (1.0 + first.norm()) {
            Closure::Closed
        } else {
            Closure::Open
        };
        Ok(Self { segments, closure })
    }

    pub fn polyline(points: &[Complex64]) -> Result<Self> {
        if points.len() < 2 {
            return Err(Error::InvalidArgument("a polyline needs two points".into()));
        }
        Self::new(
            points
                .windows(2)
                .map(|w| Segment::line(w[0], w[1]))
                .collect(),
        )
    }

    /// Closed polygon through `points` and back to the first.
    pub fn polygon(points: &[Complex64]) -> Result<Self> {
        let mut pts = points.to_vec();
        pts.push(points[0]);
        Self::polyline(&pts)
    }

    /// Counterclockwise circle.
    pub fn circle(center: Complex64, radius: f64) -> Result<Self> {
        if !(radius > 0.0) {
            return Err(Error::InvalidArgument(format!("bad radius {radius}")));
        }
        let mut c = Self::new(vec![Segment::Arc {
            center,
            radius,
            from: -PI,
            to: PI,
        }])?;
        c.closure = Closure::Closed;
        Ok(c)
    }

    /// Upward vertical loop `Re x = re` from height `y0` to `y0 + T`.
    pub fn vertical_loop(re: f64, y0: f64, annulus: &Annulus) -> Self {
        let t = annulus.modulus();
        Self {
            segments: vec![Segment::line(
                Complex64::new(re, y0),
                Complex64::new(re, y0 + t),
            )],
            closure: Closure::Periodic(Complex64::new(0.0, t)),
        }
    }

    /// Horizontal loop at height `y`, from `1 + iy` to `iy` (leftward).
    pub fn horizontal_loop(y: f64) -> Self {
        Self {
            segments: vec![Segment::line(
                Complex64::new(1.0, y),
                Complex64::new(0.0, y),
            )],
            closure: Closure::Periodic(Complex64::new(-1.0, 0.0)),
        }
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    pub fn closure(&self) -> Closure {
        self.closure
    }

    pub fn is_closed(&self) -> bool {
        self.closure != Closure::Open
    }

    pub fn start(&self) -> Complex64 {
        self.segments[0].start()
    }

    pub fn end(&self) -> Complex64 {
        self.segments[self.segments.len() - 1].end()
    }

    pub fn length(&self) -> f64 {
        self.segments.iter().map(Segment::length).sum()
    }

    pub fn reversed(&self) -> Self {
        Self {
            segments: self.segments.iter().rev().map(Segment::reversed).collect(),
            closure: match self.closure {
                Closure::Periodic(shift) => Closure::Periodic(-shift),
                c => c,
            },
        }
    }

    /// `self` followed by `other`.
    pub fn concat(&self, other: &Contour) -> Result<Self> {
        let mut segs = self.segments.clone();
        segs.extend_from_slice(&other.segments);
        let mut c = Self::new(segs)?;
        // periodic pieces stay periodic when their shifts add up to one
        if c.closure == Closure::Open {
            if let (Closure::Periodic(a), Closure::Periodic(b)) = (self.closure, other.closure) {
                let shift = a + b;
                if (c.end() - c.start() - shift).norm() <= JOIN_TOL * (1.0 + shift.norm()) {
                    c.closure = Closure::Periodic(shift);
                }
            }
        }
        Ok(c)
    }

    /// Distance from the contour to the nearest of `points`.
    pub fn distance_to(&self, points: &[Complex64]) -> f64 {
        points
            .iter()
            .flat_map(|p| self.segments.iter().map(move |s| s.distance(*p)))
            .fold(f64::INFINITY, f64::min)
    }

    /// Replaces the parts of straight segments passing within `radius / 2` of
    /// a singular point by semicircles of the given radius centred at the
    /// foot of the perpendicular, on the given side of the segment. Arcs are
    /// kept as they are.
    pub fn with_detours(&self, singular: &[Complex64], radius: f64, side: Side) -> Result<Self> {
        if !(radius > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "bad detour radius {radius}"
            )));
        }
        let mut out = Vec::new();
        for seg in &self.segments {
            let Segment::Line { start, end } = *seg else {
                out.push(*seg);
                continue;
            };
            let len = (end - start).norm();
            let dir = (end - start) / len;
            let mut feet: Vec<f64> = Vec::new();
            for s in singular {
                let rel = (s - start) * dir.conj();
                if rel.im.abs() >= 0.5 * radius || rel.re <= -radius || rel.re >= len + radius {
                    continue;
                }
                if rel.re < radius || rel.re > len - radius {
                    return Err(Error::ContourTooClose { point: *s });
                }
                feet.push(rel.re);
            }
            feet.sort_by(|a, b| a.partial_cmp(b).unwrap_or(Ordering::Equal));
            feet.dedup_by(|a, b| (*a - *b).abs() < 1e-15);
            if feet.windows(2).any(|w| w[1] - w[0] <= 2.0 * radius) {
                return Err(Error::ContourTooClose {
                    point: start + dir * feet[0],
                });
            }
            let forward = dir.re > 0.0 || (dir.re == 0.0 && dir.im > 0.0);
            let sweep = match (side, forward) {
                (Side::Left, true) | (Side::Right, false) => -PI,
                (Side::Left, false) | (Side::Right, true) => PI,
            };
            let mut cursor = start;
            for foot in feet {
                let center = start + dir * foot;
                let before = center - dir * radius;
                out.push(Segment::line(cursor, before));
                let from = (-dir).arg();
                out.push(Segment::Arc {
                    center,
                    radius,
                    from,
                    to: from + sweep,
                });
                cursor = center + dir * radius;
            }
            out.push(Segment::line(cursor, end));
        }
        Ok(Self {
            segments: out,
            closure: self.closure,
        })
    }

    /// `integral f(x) dx` along the contour.
    pub fn integrate<F>(&self, f: F, opts: QuadratureOptions) -> Result<Complex64>
    where
        F: Fn(Complex64) -> Result<Complex64>,
    {
        let mut total = Complex64::new(0.0, 0.0);
        for seg in &self.segments {
            let r = integrate(
                |s| Ok(f(seg.point(s))? * seg.derivative(s)),
                0.0,
                1.0,
                opts,
                |s| seg.point(s),
            )?;
            total += r.value;
        }
        Ok(total)
    }
}

/// Radius for automatic detours around `singular`: at most [`MAX_DETOUR`] and
/// at most a quarter of the smallest separation between singular points.
pub fn auto_detour_radius(singular: &[Complex64]) -> f64 {
    let mut r = MAX_DETOUR;
    for i in 0..singular.len() {
        for j in i + 1..singular.len() {
            let d = (singular[i] - singular[j]).norm();
            if d > 0.0 {
                r = r.min(0.25 * d);
            }
        }
    }
    r
}

/// Every translate `x + n + i m T` of the given torus points lying within
/// `margin` of the axis-aligned box spanned by `lo` and `hi`.
pub fn lattice_images(
    points: &[Complex64],
    annulus: &Annulus,
    lo: Complex64,
    hi: Complex64,
    margin: f64,
) -> Vec<Complex64> {
    let t = annulus.modulus();
    let (x0, x1) = (lo.re.min(hi.re) - margin, lo.re.max(hi.re) + margin);
    let (y0, y1) = (lo.im.min(hi.im) - margin, lo.im.max(hi.im) + margin);
    let mut out = Vec::new();
    for p in points {
        let n_lo = (x0 - p.re).floor() as i64;
        let n_hi = (x1 - p.re).ceil() as i64;
        let m_lo = ((y0 - p.im) / t).floor() as i64;
        let m_hi = ((y1 - p.im) / t).ceil() as i64;
        for n in n_lo..=n_hi {
            for m in m_lo..=m_hi {
                let q = p + Complex64::new(n as f64, m as f64 * t);
                if q.re >= x0 && q.re <= x1 && q.im >= y0 && q.im <= y1 {
                    out.push(q);
                }
            }
        }
    }
    out
}

/// Bounding box of a contour, as `(lower-left, upper-right)`.
pub fn bounding_box(c: &Contour) -> (Complex64, Complex64) {
    let mut lo = Complex64::new(f64::INFINITY, f64::INFINITY);
    let mut hi = Complex64::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
    for seg in c.segments() {
        let extra = match seg {
            Segment::Arc { radius, .. } => *radius,
            Segment::Line { .. } => 0.0,
        };
        for p in [seg.start(), seg.end()] {
            lo.re = lo.re.min(p.re - extra);
            lo.im = lo.im.min(p.im - extra);
            hi.re = hi.re.max(p.re + extra);
            hi.im = hi.im.max(p.im + extra);
        }
    }
    (lo, hi)
}
