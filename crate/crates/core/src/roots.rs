//! Simultaneous polynomial root finding (Aberth-Ehrlich iteration).

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::{Error, Result};

pub const DEFAULT_TOL: f64 = 1e-12;
pub const DEFAULT_MAX_ITER: usize = 200;
const RESTARTS: u64 = 4;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootOptions {
    /// Converged once every correction is below `tol * max(1, |root|)`.
    pub tol: f64,
    pub max_iter: usize,
    /// Seed for the perturbation applied on restart after stagnation.
    pub seed: u64,
}

impl Default for RootOptions {
    fn default() -> Self {
        Self {
            tol: DEFAULT_TOL,
            max_iter: DEFAULT_MAX_ITER,
            seed: 0x5eed,
        }
    }
}

/// Coefficients of `prod (u - r_j)`, constant term first.
pub fn poly_from_roots<I>(roots: I) -> Vec<Complex64>
where
    I: IntoIterator<Item = Complex64>,
{
    let mut c = vec![Complex64::new(1.0, 0.0)];
    for r in roots {
        c.push(Complex64::new(0.0, 0.0));
        for k in (1..c.len()).rev() {
            c[k] = c[k - 1] - r * c[k];
        }
        c[0] = -r * c[0];
    }
    c
}

/// `(p(u), p'(u))` by Horner's rule; coefficients constant term first.
pub fn horner(coeffs: &[Complex64], u: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for c in coeffs.iter().rev() {
        dp = dp * u + p;
        p = p * u + c;
    }
    (p, dp)
}

/// All roots of the polynomial with the given coefficients (constant term
/// first). Trailing zero coefficients are rejected.
pub fn polynomial_roots(coeffs: &[Complex64], opts: RootOptions) -> Result<Vec<Complex64>> {
    let n = coeffs.len().saturating_sub(1);
    if n == 0 {
        return Ok(Vec::new());
    }
    let lead = coeffs[n];
    if lead == Complex64::new(0.0, 0.0) {
        return Err(Error::InvalidArgument("leading coefficient is zero".into()));
    }
    let monic: Vec<Complex64> = coeffs.iter().map(|c| c / lead).collect();
    // Cauchy bound on the root moduli
    let bound = 1.0 + monic[..n].iter().map(|c| c.norm()).fold(0.0, f64::max);
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut last = (0, f64::INFINITY);
    for attempt in 0..=RESTARTS {
        let radius = if attempt == 0 {
            0.5 * bound
        } else {
            bound * rng.gen_range(0.1..1.0)
        };
        let offset = if attempt == 0 {
            0.4
        } else {
            rng.gen_range(0.0..2.0 * PI)
        };
        let mut z: Vec<Complex64> = (0..n)
            .map(|k| Complex64::from_polar(radius, offset + 2.0 * PI * k as f64 / n as f64))
            .collect();
        match aberth(&monic, &mut z, opts) {
            Ok(()) => {
                polish(&monic, &mut z);
                return Ok(z);
            }
            Err(step) => last = (opts.max_iter, step),
        }
    }
    Err(Error::RootFinding {
        iterations: last.0,
        max_step: last.1,
    })
}

/// Runs the iteration in place; on failure returns the last largest step.
fn aberth(p: &[Complex64], z: &mut [Complex64], opts: RootOptions) -> std::result::Result<(), f64> {
    let n = z.len();
    let mut max_step = f64::INFINITY;
    for _ in 0..opts.max_iter {
        max_step = 0.0;
        let mut converged = true;
        for i in 0..n {
            let (v, dv) = horner(p, z[i]);
            if v == Complex64::new(0.0, 0.0) {
                continue;
            }
            let newton = v / dv;
            let repulsion: Complex64 = (0..n)
                .filter(|&j| j != i)
                .map(|j| 1.0 / (z[i] - z[j]))
                .sum();
            let step = newton / (1.0 - newton * repulsion);
            if !(step.re.is_finite() && step.im.is_finite()) {
                return Err(f64::INFINITY);
            }
            z[i] -= step;
            let size = step.norm();
            max_step = f64::max(max_step, size);
            if size > opts.tol * z[i].norm().max(1.0) {
                converged = false;
            }
        }
        if converged {
            return Ok(());
        }
    }
    Err(max_step)
}

fn polish(p: &[Complex64], z: &mut [Complex64]) {
    for r in z.iter_mut() {
        for _ in 0..3 {
            let (v, dv) = horner(p, *r);
            if dv == Complex64::new(0.0, 0.0) {
                break;
            }
            let step = v / dv;
            if !(step.re.is_finite() && step.im.is_finite()) {
                break;
            }
            *r -= step;
        }
    }
}
