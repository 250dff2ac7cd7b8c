//! Ramified coverings of the closed disc and upper half-plane by a disc or an
//! annulus, written as products of Jacobi theta functions, together with the
//! numerical machinery that checks their defining properties.
//!
//! The annulus `1 <= |u| <= r` is modelled as the strip `0 <= Re x <= 1/2`
//! modulo `iT`, `T = pi / log r`. Its Schottky double is the torus
//! `C / (Z + iT Z)` with reflection `x -> -conj(x)`; the two boundary ovals are
//! the lines `Re x = 0` and `Re x = 1/2`.
//!
//! Module map:
//!
//! * [`theta`] evaluates the odd theta function and its logarithmic derivative.
//! * [`divisor`] holds surfaces, zero/pole divisors and their validation.
//! * [`covering`] builds and evaluates the covering maps and their
//!   logarithmic differentials.
//! * [`verify`] contains the contour integrals, winding numbers and report
//!   types used to check the maps.
//! * [`roots`] and [`quadrature`] are the numerical workhorses underneath.

pub mod contour;
pub mod covering;
pub mod divisor;
mod error;
pub mod quadrature;
pub mod roots;
pub mod theta;
mod value;
pub mod verify;

pub use error::{Error, Result};
pub use num_complex::Complex64;
pub use value::Extended;
