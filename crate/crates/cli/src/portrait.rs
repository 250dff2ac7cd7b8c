//! Phase portraits as binary PPM images.

use std::f64::consts::PI;
use std::str::FromStr;

use num_complex::Complex64;
use rayon::prelude::*;
use theta_blaschke::covering::{ComplexMap, CoveringMap};
use theta_blaschke::Extended;

use crate::error::CliError;

pub const MIN_SIDE: usize = 16;
pub const MAX_SIDE: usize = 8192;

/// Pixel colour for poles. No colouring scheme produces pure white.
pub const POLE_COLOR: [u8; 3] = [255, 255, 255];
/// Pixel colour for zeros, where the phase is undefined.
pub const ZERO_COLOR: [u8; 3] = [0, 0, 0];

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Coloring {
    PhaseHue,
    ModulusBands,
    Combined,
}

/// The rectangle `[x0, x1] x [y0, y1]` of the domain.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Window {
    pub x0: f64,
    pub y0: f64,
    pub x1: f64,
    pub y1: f64,
}

impl FromStr for Window {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let v = parse_numbers(s, 4)?;
        let w = Window {
            x0: v[0],
            y0: v[1],
            x1: v[2],
            y1: v[3],
        };
        if !(w.x0 < w.x1 && w.y0 < w.y1) {
            return Err(format!("window {s} must satisfy x0 < x1 and y0 < y1"));
        }
        Ok(w)
    }
}

/// Comma-separated finite numbers, exactly `count` of them.
pub fn parse_numbers(s: &str, count: usize) -> Result<Vec<f64>, String> {
    let v: Vec<f64> = s
        .split(',')
        .map(|p| p.trim().parse::<f64>().map_err(|e| format!("{p:?}: {e}")))
        .collect::<Result<_, _>>()?;
    if v.len() != count || v.iter().any(|x| !x.is_finite()) {
        return Err(format!(
            "expected {count} comma-separated finite numbers, got {s:?}"
        ));
    }
    Ok(v)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PortraitSpec {
    pub width: usize,
    pub height: usize,
    pub window: Window,
    pub coloring: Coloring,
}

impl PortraitSpec {
    pub fn validate(&self) -> Result<(), CliError> {
        for (name, v) in [("width", self.width), ("height", self.height)] {
            if !(MIN_SIDE..=MAX_SIDE).contains(&v) {
                return Err(CliError::Usage(format!(
                    "{name} {v} outside [{MIN_SIDE}, {MAX_SIDE}]"
                )));
            }
        }
        Ok(())
    }

    /// Centre of pixel `(col, row)`; row 0 is the top of the window.
    pub fn pixel_center(&self, col: usize, row: usize) -> Complex64 {
        let w = &self.window;
        Complex64::new(
            w.x0 + (w.x1 - w.x0) * (col as f64 + 0.5) / self.width as f64,
            w.y1 - (w.y1 - w.y0) * (row as f64 + 0.5) / self.height as f64,
        )
    }
}

/// The window showing the fundamental domain of `map`.
pub fn default_window(map: &CoveringMap) -> Window {
    match map {
        CoveringMap::HalfPlane(h) => strip(h.annulus().modulus()),
        CoveringMap::Disc(h) => strip(h.annulus().modulus()),
        CoveringMap::Rational(_) => Window {
            x0: -2.0,
            y0: 0.0,
            x1: 2.0,
            y1: 2.0,
        },
        CoveringMap::Blaschke(_) => Window {
            x0: -1.0,
            y0: -1.0,
            x1: 1.0,
            y1: 1.0,
        },
    }
}

fn strip(t: f64) -> Window {
    Window {
        x0: 0.0,
        y0: 0.0,
        x1: 0.5,
        y1: t,
    }
}

fn hsv(hue: f64, value: f64) -> [u8; 3] {
    let h6 = (hue.rem_euclid(1.0)) * 6.0;
    let sector = (h6.floor() as usize).min(5);
    let f = h6 - sector as f64;
    let (p, q, t) = (0.0, value * (1.0 - f), value * f);
    let (r, g, b) = match sector {
        0 => (value, t, p),
        1 => (q, value, p),
        2 => (p, value, t),
        3 => (p, q, value),
        4 => (t, p, value),
        _ => (value, p, q),
    };
    [channel(r), channel(g), channel(b)]
}

fn channel(c: f64) -> u8 {
    (c * 255.0).round().clamp(0.0, 255.0) as u8
}

/// Brightness ramp restarting at every `|h| = 2^k`; stays below white.
fn band(modulus: f64) -> f64 {
    0.55 + 0.4 * modulus.log2().rem_euclid(1.0)
}

pub fn color(h: Extended, coloring: Coloring) -> [u8; 3] {
    let w = match h {
        Extended::Finite(w) if w.re.is_finite() && w.im.is_finite() => w,
        _ => return POLE_COLOR,
    };
    let modulus = w.norm();
    if modulus == 0.0 {
        return ZERO_COLOR;
    }
    // arg in (-pi, pi] maps linearly onto the hue circle
    let hue = (crate::csv::arg(w) + PI) / (2.0 * PI);
    match coloring {
        Coloring::PhaseHue => hsv(hue, 1.0),
        Coloring::ModulusBands => {
            let g = channel(band(modulus));
            [g, g, g]
        }
        Coloring::Combined => hsv(hue, band(modulus)),
    }
}

/// PPM (P6) bytes of the portrait. Rows are rendered in parallel; the output
/// does not depend on the thread count.
pub fn render<M: ComplexMap + Sync>(map: &M, spec: &PortraitSpec) -> Vec<u8> {
    let rows: Vec<Vec<u8>> = (0..spec.height)
        .into_par_iter()
        .map(|row| {
            (0..spec.width)
                .flat_map(|col| color(map.eval(spec.pixel_center(col, row)), spec.coloring))
                .collect()
        })
        .collect();
    let mut out = format!("P6\n{} {}\n255\n", spec.width, spec.height).into_bytes();
    for r in rows {
        out.extend_from_slice(&r);
    }
    out
}
