use num_complex::Complex64;

/// A point of the extended complex plane.
///
/// Covering maps return [`Extended::Infinity`] at their poles instead of a
/// floating-point infinity so callers can tell a genuine pole from overflow.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Extended {
    Finite(Complex64),
    Infinity,
}

impl Extended {
    pub const ZERO: Extended = Extended::Finite(Complex64::new(0.0, 0.0));

    pub fn finite(self) -> Option<Complex64> {
        match self {
            Extended::Finite(z) => Some(z),
            Extended::Infinity => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, Extended::Infinity)
    }

    /// Modulus, with `+inf` at the point at infinity.
    pub fn norm(self) -> f64 {
        match self {
            Extended::Finite(z) => z.norm(),
            Extended::Infinity => f64::INFINITY,
        }
    }
}

impl From<Complex64> for Extended {
    fn from(z: Complex64) -> Self {
        Extended::Finite(z)
    }
}
