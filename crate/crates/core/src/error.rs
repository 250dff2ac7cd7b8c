use num_complex::Complex64;
use thiserror::Error;

use crate::divisor::Violation;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("{point} lies within {tolerance:e} of a singular point")]
    PoleProximity { point: Complex64, tolerance: f64 },

    #[error("invalid divisor: {}", summarize(.0))]
    InvalidDivisor(Vec<Violation>),

    #[error("divisor completion failed: {0}")]
    CompletionFailure(String),

    #[error("divisor generation exhausted after {attempts} attempts")]
    GenerationExhausted { attempts: usize },

    #[error(
        "root finder did not converge after {iterations} iterations (max correction {max_step:e})"
    )]
    RootFinding { iterations: usize, max_step: f64 },

    #[error(
        "quadrature hit the panel cap ({panels} panels); worst panel [{worst_start}, {worst_end}] with error estimate {worst_error:e}"
    )]
    Quadrature {
        panels: usize,
        worst_start: Complex64,
        worst_end: Complex64,
        worst_error: f64,
    },

    #[error("contour passes too close to a zero or pole near {point}")]
    ContourTooClose { point: Complex64 },

    #[error("accumulated winding {value} is not an integer")]
    NonIntegralWinding { value: f64 },
}

fn summarize(violations: &[Violation]) -> String {
    violations
        .iter()
        .map(|v| format!("[{}] {}", v.clause(), v))
        .collect::<Vec<_>>()
        .join("; ")
}
