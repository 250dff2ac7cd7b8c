//! The odd Jacobi theta function for the lattice `Z + iT Z`.
//!
//! ```text
//! theta1(x) = 2 q^(1/4) sum_{n >= 0} (-1)^n q^(n(n+1)) sin((2n+1) pi x),   q = exp(-pi T)
//! ```
//!
//! Arguments are first reduced into a fundamental cell using the exact
//! multiplier laws
//!
//! ```text
//! theta1(x + 1)  = -theta1(x)
//! theta1(x + iT) = -exp(pi T - 2 pi i x) theta1(x)
//! ```
//!
//! so the series is only ever summed for `|Im x| <= T/2`, where it converges
//! super-geometrically.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::{Error, Result};

/// Below this distance from a lattice point `theta1` returns an exact zero.
pub const LATTICE_ZERO_TOL: f64 = 1e-14;

/// Below this distance from a lattice point the logarithmic derivative is
/// treated as a pole.
pub const LATTICE_POLE_TOL: f64 = 1e-12;

const SERIES_EPS: f64 = 1e-16;
const MAX_TERMS: usize = 100_000;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Modulus of the lattice `Z + iT Z` together with its nome `q = exp(-pi T)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThetaParams {
    t: f64,
    q: f64,
}

impl ThetaParams {
    pub fn new(t: f64) -> Result<Self> {
        if !(t.is_finite() && t > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "lattice modulus T must be a positive finite number, got {t}"
            )));
        }
        Ok(Self {
            t,
            q: (-PI * t).exp(),
        })
    }

    /// The modulus `T`.
    pub fn t(&self) -> f64 {
        self.t
    }

    /// The nome `q = exp(-pi T)`.
    pub fn nome(&self) -> f64 {
        self.q
    }
}

/// `x = x0 + n1 + n2 iT` together with the factor
/// `theta1(x) = multiplier * theta1(x0)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReducedArgument {
    pub x0: Complex64,
    pub n1: i64,
    pub n2: i64,
    pub multiplier: Complex64,
}

/// A theta value split as `mantissa * exp(log_factor)` so that products of
/// many factors can combine their exponential parts before exponentiating.
#[derive(Debug, Clone, Copy)]
pub(crate) struct ScaledTheta {
    pub mantissa: Complex64,
    pub log_factor: Complex64,
}

fn check_finite(x: Complex64) -> Result<()> {
    if x.re.is_finite() && x.im.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("non-finite argument {x}")))
    }
}

/// Log of the multiplier, without the sign `(-1)^(n1+n2)`.
fn log_multiplier(x0: Complex64, n2: i64, t: f64) -> Complex64 {
    let n2f = n2 as f64;
    Complex64::new(PI * t * n2f * n2f, 0.0) - 2.0 * PI * I * n2f * x0
}

fn sign_of(n1: i64, n2: i64) -> f64 {
    if (n1 + n2).rem_euclid(2) == 0 {
        1.0
    } else {
        -1.0
    }
}

fn split(x: Complex64, t: f64, round: fn(f64) -> f64) -> (Complex64, i64, i64) {
    let n2 = round(x.im / t);
    let shifted = Complex64::new(x.re, x.im - n2 * t);
    let n1 = round(shifted.re);
    (
        Complex64::new(shifted.re - n1, shifted.im),
        n1 as i64,
        n2 as i64,
    )
}

/// Reduces `x` into the cell `[0, 1) x [0, T)`.
pub fn reduce_argument(x: Complex64, params: &ThetaParams) -> Result<ReducedArgument> {
    check_finite(x)?;
    let (mut x0, mut n1, mut n2) = split(x, params.t, f64::floor);
    // rounding in x - n2 iT can push the representative just outside the cell
    if x0.im >= params.t {
        x0.im -= params.t;
        n2 += 1;
    } else if x0.im < 0.0 {
        x0.im += params.t;
        n2 -= 1;
    }
    if x0.re >= 1.0 {
        x0.re -= 1.0;
        n1 += 1;
    } else if x0.re < 0.0 {
        x0.re += 1.0;
        n1 -= 1;
    }
    // normalize -0.0
    x0 += Complex64::new(0.0, 0.0);
    let multiplier = sign_of(n1, n2) * log_multiplier(x0, n2, params.t).exp();
    Ok(ReducedArgument {
        x0,
        n1,
        n2,
        multiplier,
    })
}

/// Centered reduction: `|Re x0| <= 1/2`, `|Im x0| <= T/2`.
fn reduce_centered(x: Complex64, params: &ThetaParams) -> (Complex64, i64, i64) {
    split(x, params.t, f64::round)
}

/// Distance from `x` to the nearest point of the lattice `Z + iT Z`.
pub fn lattice_distance(x: Complex64, params: &ThetaParams) -> f64 {
    if !(x.re.is_finite() && x.im.is_finite()) {
        return f64::INFINITY;
    }
    reduce_centered(x, params).0.norm()
}

/// Partial sums of the series and of its term-wise derivative at a centered
/// argument.
fn series(x0: Complex64, params: &ThetaParams, with_derivative: bool) -> (Complex64, Complex64) {
    let t = params.t;
    let y = x0.im.abs();
    let mut sum = Complex64::new(0.0, 0.0);
    let mut dsum = Complex64::new(0.0, 0.0);
    for n in 0..MAX_TERMS {
        let k = (2 * n + 1) as f64;
        let nf = n as f64;
        // q^(n(n+1)) cosh(k pi y), kept in log form to avoid overflow of cosh
        let log_bound = -PI * t * nf * (nf + 1.0) + k * PI * y;
        let bound = log_bound.exp();
        if n > 0 {
            let small = bound < SERIES_EPS * sum.norm();
            let dsmall = !with_derivative || k * PI * bound < SERIES_EPS * dsum.norm();
            if (small && dsmall) || bound == 0.0 {
                break;
            }
        }
        let weight = (-PI * t * nf * (nf + 1.0)).exp();
        let weight = if n % 2 == 0 { weight } else { -weight };
        let arg = k * PI * x0;
        sum += weight * arg.sin();
        if with_derivative {
            dsum += weight * k * PI * arg.cos();
        }
    }
    (sum, dsum)
}

fn prefactor(params: &ThetaParams) -> f64 {
    2.0 * (-PI * params.t / 4.0).exp()
}

pub(crate) fn theta1_scaled(x: Complex64, params: &ThetaParams) -> Result<ScaledTheta> {
    check_finite(x)?;
    let (x0, n1, n2) = reduce_centered(x, params);
    let log_factor = log_multiplier(x0, n2, params.t);
    if x0.norm() < LATTICE_ZERO_TOL {
        return Ok(ScaledTheta {
            mantissa: Complex64::new(0.0, 0.0),
            log_factor,
        });
    }
    let (sum, _) = series(x0, params, false);
    Ok(ScaledTheta {
        mantissa: sign_of(n1, n2) * prefactor(params) * sum,
        log_factor,
    })
}

/// `theta1(x)` for the lattice `Z + iT Z`.
///
/// Returns an exact zero within [`LATTICE_ZERO_TOL`] of a lattice point.
pub fn theta1(x: Complex64, params: &ThetaParams) -> Result<Complex64> {
    let s = theta1_scaled(x, params)?;
    if s.mantissa == Complex64::new(0.0, 0.0) {
        return Ok(s.mantissa);
    }
    Ok(s.mantissa * s.log_factor.exp())
}

/// `theta1'(x) / theta1(x)`.
///
/// Fails with [`Error::PoleProximity`] within [`LATTICE_POLE_TOL`] of a
/// lattice point.
pub fn theta1_logderiv(x: Complex64, params: &ThetaParams) -> Result<Complex64> {
    check_finite(x)?;
    let (x0, _, n2) = reduce_centered(x, params);
    if x0.norm() < LATTICE_POLE_TOL {
        return Err(Error::PoleProximity {
            point: x,
            tolerance: LATTICE_POLE_TOL,
        });
    }
    let (sum, dsum) = series(x0, params, true);
    Ok(dsum / sum - 2.0 * PI * I * n2 as f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn rel(a: Complex64, b: Complex64) -> f64 {
        (a - b).norm() / b.norm().max(1e-300)
    }

    #[test]
    fn rejects_bad_modulus() {
        assert!(ThetaParams::new(0.0).is_err());
        assert!(ThetaParams::new(-1.0).is_err());
        assert!(ThetaParams::new(f64::NAN).is_err());
        let p = ThetaParams::new(1.0).unwrap();
        assert!((p.nome() - (-PI).exp()).abs() < 1e-17);
    }

    #[test]
    fn zero_at_lattice_points() {
        let p = ThetaParams::new(1.0).unwrap();
        assert_eq!(theta1(c(0.0, 0.0), &p).unwrap(), c(0.0, 0.0));
        assert_eq!(theta1(c(3.0, -2.0), &p).unwrap(), c(0.0, 0.0));
        assert_eq!(theta1(c(1.0, 1.0 + 1e-15), &p).unwrap(), c(0.0, 0.0));
    }

    #[test]
    fn non_finite_input_is_rejected() {
        let p = ThetaParams::new(1.0).unwrap();
        assert!(matches!(
            theta1(c(f64::NAN, 0.0), &p),
            Err(Error::InvalidArgument(_))
        ));
        assert!(reduce_argument(c(f64::INFINITY, 0.0), &p).is_err());
    }

    #[test]
    fn odd_at_sample_point() {
        let p = ThetaParams::new(1.0).unwrap();
        let x = c(0.3, 0.1);
        let a = theta1(-x, &p).unwrap();
        let b = theta1(x, &p).unwrap();
        assert!(rel(a, -b) < 1e-12);
    }

    #[test]
    fn reduce_already_reduced() {
        let p = ThetaParams::new(1.0).unwrap();
        let r = reduce_argument(c(0.2, 0.5), &p).unwrap();
        assert_eq!((r.n1, r.n2), (0, 0));
        assert!((r.x0 - c(0.2, 0.5)).norm() < 1e-15);
        assert!((r.multiplier - c(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn reduce_shifts_by_lattice() {
        let p = ThetaParams::new(1.0).unwrap();
        let r = reduce_argument(c(1.2, 1.5), &p).unwrap();
        assert_eq!((r.n1, r.n2), (1, 1));
        assert!((r.x0 - c(0.2, 0.5)).norm() < 1e-15);
    }

    #[test]
    fn reduce_multiplier_one_imaginary_step() {
        let p = ThetaParams::new(1.0).unwrap();
        let r = reduce_argument(c(0.3, 1.0), &p).unwrap();
        assert_eq!((r.n1, r.n2), (0, 1));
        let expected = -(Complex64::new(PI, -0.6 * PI)).exp();
        assert!(rel(r.multiplier, expected) < 1e-14);
    }

    #[test]
    fn reduced_cell_bounds_hold_for_negative_inputs() {
        let p = ThetaParams::new(0.7).unwrap();
        for &x in &[
            c(-0.0, -0.0),
            c(-1e-17, -1e-17),
            c(-3.25, -7.0),
            c(5.0, 0.7),
        ] {
            let r = reduce_argument(x, &p).unwrap();
            assert!((0.0..1.0).contains(&r.x0.re), "{x} -> {:?}", r);
            assert!((0.0..0.7).contains(&r.x0.im), "{x} -> {:?}", r);
        }
    }

    #[test]
    fn logderiv_is_odd_and_one_periodic() {
        let p = ThetaParams::new(1.0).unwrap();
        let x = c(0.25, 0.5);
        let a = theta1_logderiv(x, &p).unwrap();
        let b = theta1_logderiv(-x, &p).unwrap();
        assert!((a + b).norm() < 1e-12 * a.norm().max(1.0));

        let x = c(0.3, 0.2);
        let a = theta1_logderiv(x + 1.0, &p).unwrap();
        let b = theta1_logderiv(x, &p).unwrap();
        assert!(rel(a, b) < 1e-12);
    }

    #[test]
    fn logderiv_rejects_lattice_points() {
        let p = ThetaParams::new(1.0).unwrap();
        assert!(matches!(
            theta1_logderiv(c(1.0, 1.0), &p),
            Err(Error::PoleProximity { .. })
        ));
    }

    #[test]
    fn logderiv_matches_central_difference() {
        let p = ThetaParams::new(1.0).unwrap();
        let x = c(0.25, 0.0);
        let h = 1e-6;
        let fd = (theta1(x + h, &p).unwrap().ln() - theta1(x - h, &p).unwrap().ln()) / (2.0 * h);
        let ld = theta1_logderiv(x, &p).unwrap();
        assert!((fd - ld).norm() < 1e-8, "{fd} vs {ld}");
    }

    #[test]
    fn small_modulus_still_converges() {
        let p = ThetaParams::new(0.02).unwrap();
        let x = c(0.13, 0.004);
        let a = theta1(x + c(0.0, 0.02), &p).unwrap();
        let b = theta1(x, &p).unwrap();
        let law = -(Complex64::new(PI * 0.02, 0.0) - 2.0 * PI * I * x).exp();
        assert!(rel(a, law * b) < 1e-10);
    }
}
