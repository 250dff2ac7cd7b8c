//! Numeric dumps: one row per evaluation point.

use std::io::{self, Write};

use num_complex::Complex64;
use theta_blaschke::Extended;

pub const HEADER: &str = "re_x,im_x,re_h,im_h,abs_h,arg_h";

/// 17 significant digits, independent of locale.
pub fn number(v: f64) -> String {
    // keep the output free of negative zeros
    let v = if v == 0.0 { 0.0 } else { v };
    format!("{v:.16e}")
}

/// `arg h` in `(-pi, pi]`.
pub fn arg(w: Complex64) -> f64 {
    let a = w.im.atan2(w.re);
    if a == -std::f64::consts::PI {
        std::f64::consts::PI
    } else {
        a
    }
}

pub fn row(x: Complex64, h: Extended) -> String {
    let head = format!("{},{}", number(x.re), number(x.im));
    match h {
        Extended::Finite(w) if w.re.is_finite() && w.im.is_finite() => format!(
            "{head},{},{},{},{}",
            number(w.re),
            number(w.im),
            number(w.norm()),
            number(arg(w))
        ),
        _ => format!("{head},inf,inf,inf,nan"),
    }
}

pub fn write<W: Write>(out: &mut W, rows: &[(Complex64, Extended)]) -> io::Result<()> {
    writeln!(out, "{HEADER}")?;
    for &(x, h) in rows {
        writeln!(out, "{}", row(x, h))?;
    }
    Ok(())
}
