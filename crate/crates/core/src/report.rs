use std::fmt;
use std::time::Instant;

use num_complex::Complex64;
use serde::Serialize;

/// The residual of an identity check.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Residual {
    /// Canonical text of an exact polynomial or rational function.
    Exact(String),
    /// Magnitude of a numeric discrepancy and the tolerance it was judged by.
    Numeric { value: f64, tolerance: f64 },
}

impl fmt::Display for Residual {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Residual::Exact(s) => f.write_str(s),
            Residual::Numeric { value, .. } => write!(f, "{value:.6e}"),
        }
    }
}

/// Outcome of one identity check.
///
/// For exact residuals `is_zero` holds exactly when the residual is the
/// canonical zero; for numeric residuals it means the value is within tolerance.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DefectReport {
    pub check: String,
    pub params: String,
    pub is_zero: bool,
    pub residual: Residual,
    pub error_estimate: Option<f64>,
    pub elapsed_ms: u64,
}

impl DefectReport {
    pub fn exact(check: impl Into<String>, params: impl Into<String>, residual: impl fmt::Display) -> Self {
        let text = residual.to_string();
        DefectReport {
            check: check.into(),
            params: params.into(),
            is_zero: text == "0",
            residual: Residual::Exact(text),
            error_estimate: None,
            elapsed_ms: 0,
        }
    }

    pub fn numeric(check: impl Into<String>, params: impl Into<String>, value: f64, tolerance: f64) -> Self {
        DefectReport {
            check: check.into(),
            params: params.into(),
            is_zero: value.is_finite() && value.abs() <= tolerance,
            residual: Residual::Numeric { value, tolerance },
            error_estimate: None,
            elapsed_ms: 0,
        }
    }

    pub fn with_error_estimate(mut self, e: f64) -> Self {
        self.error_estimate = Some(e);
        self
    }

    pub fn with_elapsed(mut self, start: Instant) -> Self {
        self.elapsed_ms = start.elapsed().as_millis() as u64;
        self
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(untagged)]
pub enum EvalValue {
    Real(f64),
    Complex { re: f64, im: f64 },
}

impl EvalValue {
    pub fn complex(z: Complex64) -> Self {
        EvalValue::Complex { re: z.re, im: z.im }
    }

    pub fn re(&self) -> f64 {
        match *self {
            EvalValue::Real(v) => v,
            EvalValue::Complex { re, .. } => re,
        }
    }

    pub fn as_complex(&self) -> Complex64 {
        match *self {
            EvalValue::Real(v) => Complex64::new(v, 0.0),
            EvalValue::Complex { re, im } => Complex64::new(re, im),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EvalParams {
    pub function: String,
    pub s: f64,
    pub x: f64,
    pub tuning: String,
}

/// A numeric value together with a bound on its truncation error (plus a
/// floating-point rounding allowance) and the inputs that produced it.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EvalResult {
    pub value: EvalValue,
    pub error_estimate: f64,
    pub params: EvalParams,
}

impl EvalResult {
    pub fn real(&self) -> f64 {
        self.value.re()
    }

    pub fn complex(&self) -> Complex64 {
        self.value.as_complex()
    }
}
