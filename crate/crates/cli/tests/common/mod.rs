#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

pub const VALID_DISC: &str = r#"{
  "target": "disc",
  "surface": {"kind": "annulus", "T": 1.0},
  "zeros": [{"re": 0.1, "im": 0.2}, {"re": 0.4, "im": 0.7}]
}"#;

pub const VALID_HALFPLANE: &str = r#"{
  "target": "halfplane",
  "surface": {"kind": "annulus", "T": 1.0},
  "zeros": [{"re": 0.0, "im": 0.1}, {"re": 0.5, "im": 0.5}],
  "poles": [{"re": 0.0, "im": 0.4}, {"re": 0.5, "im": 0.2}]
}"#;

/// Condition value 0.4: fails only the lattice condition.
pub const OFF_LATTICE_DISC: &str = r#"{
  "target": "disc",
  "surface": {"kind": "annulus", "T": 1.0},
  "zeros": [{"re": 0.2, "im": 0.3}]
}"#;

/// Condition value 0.2.
pub const OFF_LATTICE_HALFPLANE: &str = r#"{
  "target": "halfplane",
  "surface": {"kind": "annulus", "T": 1.0},
  "zeros": [{"re": 0.0, "im": 0.1}, {"re": 0.5, "im": 0.5}],
  "poles": [{"re": 0.0, "im": 0.3}, {"re": 0.5, "im": 0.1}]
}"#;

/// Oval 1 carries nothing.
pub const EMPTY_OVAL: &str = r#"{
  "target": "halfplane",
  "surface": {"kind": "annulus", "T": 1.0},
  "zeros": [{"re": 0.0, "im": 0.1}, {"re": 0.0, "im": 0.3}],
  "poles": [{"re": 0.0, "im": 0.2}, {"re": 0.0, "im": 0.4}]
}"#;

/// `u / (1 - u)`.
pub const RATIONAL: &str = r#"{
  "target": "classical-rational",
  "surface": {"kind": "disc"},
  "zeros": [{"re": 0.0, "im": 0.0}],
  "poles": [{"re": 1.0, "im": 0.0}],
  "scale": -1.0
}"#;

pub const BLASCHKE: &str = r#"{
  "target": "classical-blaschke",
  "surface": {"kind": "disc"},
  "zeros": [{"re": 0.0, "im": 0.0}, {"re": 0.5, "im": 0.0}]
}"#;

pub const TRUNCATED: &str =
    r#"{"target": "disc", "surface": {"kind": "annulus", "T": 1.0}, "zeros": [{"re": 0.1"#;

pub const UNKNOWN_TARGET: &str =
    r#"{"target": "torus", "surface": {"kind": "annulus", "T": 1.0}, "zeros": []}"#;

pub const INCONSISTENT_SURFACE: &str = r#"{
  "target": "disc",
  "surface": {"kind": "annulus", "T": 1.0, "r": 2.0},
  "zeros": [{"re": 0.1, "im": 0.2}, {"re": 0.4, "im": 0.7}]
}"#;

pub fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_tbcover")
}

pub fn run<I, S>(args: I) -> Output
where
    I: IntoIterator<Item = S>,
    S: AsRef<std::ffi::OsStr>,
{
    Command::new(bin())
        .args(args)
        .output()
        .expect("spawn tbcover")
}

pub fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

pub fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

/// Data rows of a CSV dump, parsed.
pub fn rows(o: &Output) -> Vec<Vec<f64>> {
    let text = stdout(o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("re_x,im_x,re_h,im_h,abs_h,arg_h"));
    lines
        .map(|l| l.split(',').map(|f| f.parse::<f64>().unwrap()).collect())
        .collect()
}
