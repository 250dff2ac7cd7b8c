//! Adaptive Gauss-Legendre quadrature of complex-valued integrands on an
//! interval.

use std::f64::consts::PI;
use std::sync::OnceLock;

use num_complex::Complex64;

use crate::{Error, Result};

/// Default absolute tolerance on the change between refinement levels.
pub const DEFAULT_TOL: f64 = 1e-10;
/// Default cap on the number of panels.
pub const DEFAULT_MAX_PANELS: usize = 1 << 14;

const ORDER: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureOptions {
    pub tol: f64,
    pub max_panels: usize,
}

impl Default for QuadratureOptions {
    fn default() -> Self {
        Self {
            tol: DEFAULT_TOL,
            max_panels: DEFAULT_MAX_PANELS,
        }
    }
}

/// Nodes and weights of the 16-point rule on `[-1, 1]`, from Newton's method
/// on the Legendre polynomial.
fn rule() -> &'static ([f64; ORDER], [f64; ORDER]) {
    static RULE: OnceLock<([f64; ORDER], [f64; ORDER])> = OnceLock::new();
    RULE.get_or_init(|| {
        let mut nodes = [0.0; ORDER];
        let mut weights = [0.0; ORDER];
        let n = ORDER as f64;
        for i in 0..ORDER {
            let mut x = (PI * (i as f64 + 0.75) / (n + 0.5)).cos();
            let mut dp = 1.0;
            for _ in 0..100 {
                let (mut p0, mut p1) = (1.0, x);
                for k in 2..=ORDER {
                    let kf = k as f64;
                    let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n * (x * p1 - p0) / (x * x - 1.0);
                let dx = p1 / dp;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            nodes[i] = x;
            weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
        }
        (nodes, weights)
    })
}

fn panel<F>(f: &F, a: f64, b: f64) -> Result<Complex64>
where
    F: Fn(f64) -> Result<Complex64>,
{
    let (nodes, weights) = rule();
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut sum = Complex64::new(0.0, 0.0);
    for (x, w) in nodes.iter().zip(weights) {
        sum += *w * f(mid + half * x)?;
    }
    Ok(sum * half)
}

/// Outcome of [`integrate`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integral {
    pub value: Complex64,
    pub error_estimate: f64,
    pub panels: usize,
}

/// Integrates `f` over `[a, b]`.
///
/// A panel is accepted when the two halves agree with the whole to within its
/// share `tol * len / (b - a)` of the tolerance. On hitting the panel cap the
/// unconverged panel is reported, mapped to the plane through `locate`.
pub fn integrate<F, L>(f: F, a: f64, b: f64, opts: QuadratureOptions, locate: L) -> Result<Integral>
where
    F: Fn(f64) -> Result<Complex64>,
    L: Fn(f64) -> Complex64,
{
    if !(a.is_finite() && b.is_finite()) || !(opts.tol > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "bad quadrature request [{a}, {b}] with tol {}",
            opts.tol
        )));
    }
    if a == b {
        return Ok(Integral {
            value: Complex64::new(0.0, 0.0),
            error_estimate: 0.0,
            panels: 0,
        });
    }
    let total = (b - a).abs();
    let mut stack = vec![(a, b, panel(&f, a, b)?)];
    let mut value = Complex64::new(0.0, 0.0);
    let mut error_estimate = 0.0;
    let mut panels = 1usize;
    while let Some((lo, hi, whole)) = stack.pop() {
        let mid = 0.5 * (lo + hi);
        let left = panel(&f, lo, mid)?;
        let right = panel(&f, mid, hi)?;
        let refined = left + right;
        let change = (refined - whole).norm();
        let share = opts.tol * (hi - lo).abs() / total;
        // rounding in the node positions limits relative agreement on short
        // panels near a singularity; more bisection cannot beat it
        let floor = 1e-12 * (left.norm() + right.norm());
        if change <= share.max(floor) || (mid == lo || mid == hi) {
            value += refined;
            error_estimate += change;
            continue;
        }
        panels += 1;
        if panels > opts.max_panels {
            // depth-first order means this is the panel still refusing to converge
            return Err(Error::Quadrature {
                panels: opts.max_panels,
                worst_start: locate(lo),
                worst_end: locate(hi),
                worst_error: change,
            });
        }
        stack.push((mid, hi, right));
        stack.push((lo, mid, left));
    }
    Ok(Integral {
        value,
        error_estimate,
        panels,
    })
}
