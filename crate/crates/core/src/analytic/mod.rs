//! Numeric Hurwitz zeta, unit-circle polylogarithms and the analytic
//! Bernoulli functions
//!
//! `B(s; x) = -s zeta(1-s, x)` and
//! `A(s; x) = -Gamma(s+1)/(2 pi)^s * 2 Im(e^{-i pi s/2} Li_s(e^{2 pi i x}))`,
//! for real `s`. `B(0; x) = 1` is the removable limit. The factorial in the
//! second display is read as `Gamma(s+1)` and the phase uses the principal
//! branch.

mod gamma;
mod polylog;
mod zeta;

use std::f64::consts::PI;
use std::fmt;
use std::time::Instant;

use num_complex::Complex64;

use crate::report::{DefectReport, EvalParams, EvalResult, EvalValue};

pub use gamma::{gamma, ln_gamma};
pub use polylog::{tail_bound as polylog_tail_bound, MIN_ORDER as POLYLOG_MIN_ORDER};

/// `|s|` below this (but nonzero) is rejected for `B(s; x)`.
pub const NEAR_POLE_BAND: f64 = 1e-3;
pub const DEFAULT_STEP: f64 = 1e-5;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum AnalyticError {
    #[error("hurwitz zeta has a pole at s = 1")]
    PoleAtOne,
    #[error("s = {0} lies in the rejected band 0 < |s| < 1e-3 around the removable point")]
    NearPole(f64),
    #[error("{0}")]
    Domain(String),
    #[error("series did not converge: {0}")]
    NonConvergent(String),
    #[error("target {target:.1e} needs more than {max_terms} terms (best bound {achievable:.3e})")]
    AccuracyUnreachable { target: f64, achievable: f64, max_terms: usize },
}

/// Euler-Maclaurin parameters for the Hurwitz zeta function.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub enum Tuning {
    /// Pick shift and depth from a fixed menu by smallest error estimate.
    #[default]
    Auto,
    Fixed { shift: usize, corrections: usize },
}

impl fmt::Display for Tuning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tuning::Auto => f.write_str("auto"),
            Tuning::Fixed { shift, corrections } => write!(f, "N={shift},J={corrections}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PolylogConfig {
    /// Absolute target for the tail bound.
    pub target: f64,
    pub max_terms: usize,
}

impl Default for PolylogConfig {
    fn default() -> Self {
        PolylogConfig { target: 1e-12, max_terms: 20_000_000 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct AnalyticConfig {
    pub hurwitz: Tuning,
    pub polylog: PolylogConfig,
}

impl fmt::Display for AnalyticConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{};M<={};target={:e}", self.hurwitz, self.polylog.max_terms, self.polylog.target)
    }
}

#[derive(Default)]
pub(crate) struct Compensated {
    sum: f64,
    c: f64,
}

impl Compensated {
    pub(crate) fn add(&mut self, v: f64) {
        let t = self.sum + v;
        if self.sum.abs() >= v.abs() {
            self.c += (self.sum - t) + v;
        } else {
            self.c += (v - t) + self.sum;
        }
        self.sum = t;
    }

    pub(crate) fn sum(&self) -> f64 {
        self.sum + self.c
    }
}

pub(crate) fn neumaier(values: impl Iterator<Item = f64>) -> f64 {
    let mut acc = Compensated::default();
    values.for_each(|v| acc.add(v));
    acc.sum()
}

fn result(function: &str, s: f64, x: f64, tuning: String, value: EvalValue, err: f64) -> EvalResult {
    EvalResult { value, error_estimate: err, params: EvalParams { function: function.into(), s, x, tuning } }
}

pub fn hurwitz_zeta(s: f64, x: f64, tuning: Tuning) -> Result<EvalResult, AnalyticError> {
    let e = zeta::hurwitz_eval(s, x, tuning, true)?;
    Ok(result("hurwitz_zeta", s, x, tuning.to_string(), EvalValue::Real(e.value), e.error()))
}

pub fn analytic_bernoulli_b(s: f64, x: f64, tuning: Tuning) -> Result<EvalResult, AnalyticError> {
    if !(x > 0.0 && x <= 1.0) {
        return Err(AnalyticError::Domain(format!("B(s; x) needs 0 < x <= 1, got x={x}")));
    }
    if s == 0.0 {
        return Ok(result("B", s, x, tuning.to_string(), EvalValue::Real(1.0), 0.0));
    }
    if s.abs() < NEAR_POLE_BAND {
        return Err(AnalyticError::NearPole(s));
    }
    let e = zeta::hurwitz_eval(1.0 - s, x, tuning, true)?;
    let value = -s * e.value;
    Ok(result("B", s, x, tuning.to_string(), EvalValue::Real(value), s.abs() * e.error() + f64::EPSILON * value.abs()))
}

/// `Li_s(e^{2 pi i x})`; negative `x` gives the conjugate point.
pub fn polylog_unit_circle(s: f64, x: f64, cfg: &PolylogConfig) -> Result<EvalResult, AnalyticError> {
    let e = polylog::polylog_eval(s, x, cfg)?;
    Ok(result("polylog", s, x, format!("M={}", e.terms), EvalValue::complex(e.value), e.error))
}

/// `Gamma(s+1)/(2 pi)^s * e^{-i pi s/2} Li_s(e^{2 pi i x})` and its error.
fn phased_polylog(s: f64, x: f64, cfg: &PolylogConfig) -> Result<(Complex64, f64, usize), AnalyticError> {
    let e = polylog::polylog_eval(s, x, cfg)?;
    let scale = (ln_gamma(s + 1.0) - s * (2.0 * PI).ln()).exp();
    let phase = Complex64::from_polar(1.0, -PI * s / 2.0);
    let v = phase * e.value * scale;
    Ok((v, scale * e.error + 8.0 * f64::EPSILON * v.norm(), e.terms))
}

pub fn analytic_bernoulli_a(s: f64, x: f64, cfg: &PolylogConfig) -> Result<EvalResult, AnalyticError> {
    if !(x > 0.0 && x < 1.0) {
        return Err(AnalyticError::Domain(format!("A(s; x) needs 0 < x < 1, got x={x}")));
    }
    let (v, err, m) = phased_polylog(s, x, cfg)?;
    Ok(result("A", s, x, format!("M={m}"), EvalValue::Real(-2.0 * v.im), 2.0 * err))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AnalyticFn {
    A,
    B,
}

impl fmt::Display for AnalyticFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AnalyticFn::A => "A",
            AnalyticFn::B => "B",
        })
    }
}

pub fn evaluate(func: AnalyticFn, s: f64, x: f64, cfg: &AnalyticConfig) -> Result<EvalResult, AnalyticError> {
    match func {
        AnalyticFn::A => analytic_bernoulli_a(s, x, &cfg.polylog),
        AnalyticFn::B => analytic_bernoulli_b(s, x, cfg.hurwitz),
    }
}

/// Central-difference check of `d/dx fn(s; x) = s fn(s-1; x)`.
pub fn appell_ladder_numeric(
    func: AnalyticFn,
    s: f64,
    x: f64,
    h: f64,
    tolerance: f64,
    cfg: &AnalyticConfig,
) -> Result<DefectReport, AnalyticError> {
    let start = Instant::now();
    let plus = evaluate(func, s, x + h, cfg)?;
    let minus = evaluate(func, s, x - h, cfg)?;
    let lower = evaluate(func, s - 1.0, x, cfg)?;
    let fd = (plus.real() - minus.real()) / (2.0 * h);
    let residual = (fd - s * lower.real()).abs();
    let err = (plus.error_estimate + minus.error_estimate) / (2.0 * h) + s.abs() * lower.error_estimate;
    Ok(DefectReport::numeric(format!("analytic/ladder/{func}"), format!("s={s},x={x},h={h}"), residual, tolerance)
        .with_error_estimate(err)
        .with_elapsed(start))
}

/// Relative gap between `-s zeta(1-s, x)` and the polylogarithm side of
/// Hurwitz's formula, `-Gamma(s+1)/(2 pi)^s * 2 Re(e^{-i pi s/2} Li_s(e^{2 pi i x}))`.
pub fn hurwitz_formula_check(s: f64, x: f64, tolerance: f64, cfg: &AnalyticConfig) -> Result<DefectReport, AnalyticError> {
    let start = Instant::now();
    if !(s >= 2.0) || !(x > 0.0 && x < 1.0) {
        return Err(AnalyticError::Domain(format!("hurwitz formula check needs s >= 2, 0 < x < 1, got s={s}, x={x}")));
    }
    let z = zeta::hurwitz_eval(1.0 - s, x, cfg.hurwitz, false)?;
    let lhs = -s * z.value;
    let (v, err, _) = phased_polylog(s, x, &cfg.polylog)?;
    let rhs = -2.0 * v.re;
    let scale = lhs.abs().max(f64::MIN_POSITIVE);
    Ok(DefectReport::numeric("analytic/hurwitz-formula", format!("s={s},x={x}"), (lhs - rhs).abs() / scale, tolerance)
        .with_error_estimate((s.abs() * z.error() + 2.0 * err) / scale)
        .with_elapsed(start))
}

fn real_binomial(u: f64, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (u - i as f64) / (i + 1) as f64)
}

/// The cyclic sum
/// `r [s,t; x,y] + s [t,r; y,z] + t [r,s; z,x]`, `t = n - r - s`, `z = 1 - x - y`,
/// with `[a,b; u,v] = sum_k (-1)^k C(a,k) C(b,n-k) F_{n-k}(u) F_k(v)` and
/// `F_m(u) = B(m + delta; u)`.
#[allow(clippy::too_many_arguments)]
pub fn analytic_cyclic_probe(
    n: usize,
    delta: f64,
    x: f64,
    y: f64,
    r: f64,
    s: f64,
    tolerance: f64,
    cfg: &AnalyticConfig,
) -> Result<DefectReport, AnalyticError> {
    let start = Instant::now();
    let t = n as f64 - r - s;
    let z = 1.0 - x - y;
    let mut err = 0.0;
    let mut table = |u: f64| -> Result<Vec<f64>, AnalyticError> {
        (0..=n)
            .map(|m| {
                let e = analytic_bernoulli_b(m as f64 + delta, u, cfg.hurwitz)?;
                err += e.error_estimate;
                Ok(e.real())
            })
            .collect()
    };
    let (fx, fy, fz) = (table(x)?, table(y)?, table(z)?);
    let bracket = |a: f64, b: f64, fu: &[f64], fv: &[f64]| -> f64 {
        (0..=n)
            .map(|k| {
                let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
                sign * real_binomial(a, k) * real_binomial(b, n - k) * fu[n - k] * fv[k]
            })
            .sum()
    };
    let value = r * bracket(s, t, &fx, &fy) + s * bracket(t, r, &fy, &fz) + t * bracket(r, s, &fz, &fx);
    Ok(DefectReport::numeric(
        "analytic/cyclic-probe",
        format!("n={n},delta={delta},r={r},s={s},x={x},y={y}"),
        value.abs(),
        tolerance,
    )
    .with_error_estimate(err)
    .with_elapsed(start))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zeta_basics() {
        let z2 = hurwitz_zeta(2.0, 1.0, Tuning::Auto).unwrap();
        assert!((z2.real() - PI * PI / 6.0).abs() < 1e-13);
        assert!(z2.error_estimate < 1e-12);
        let zm1 = hurwitz_zeta(-1.0, 1.0, Tuning::Auto).unwrap();
        assert!((zm1.real() + 1.0 / 12.0).abs() < 1e-13);
        assert_eq!(hurwitz_zeta(1.0, 0.5, Tuning::Auto), Err(AnalyticError::PoleAtOne));
    }

    #[test]
    fn fixed_tuning_reports_growth() {
        let r = hurwitz_zeta(-30.5, 0.5, Tuning::Fixed { shift: 1, corrections: 40 });
        assert!(matches!(r, Err(AnalyticError::NonConvergent(_))), "{r:?}");
    }

    #[test]
    fn b_special_values() {
        assert_eq!(analytic_bernoulli_b(0.0, 0.3, Tuning::Auto).unwrap().real(), 1.0);
        assert!(matches!(analytic_bernoulli_b(5e-4, 0.3, Tuning::Auto), Err(AnalyticError::NearPole(_))));
        assert!((analytic_bernoulli_b(2.0, 1.0, Tuning::Auto).unwrap().real() - 1.0 / 6.0).abs() < 1e-12);
    }

    #[test]
    fn polylog_limits() {
        let cfg = PolylogConfig::default();
        let half = polylog_unit_circle(2.0, 0.5, &cfg).unwrap();
        assert!((half.complex() - Complex64::new(-PI * PI / 12.0, 0.0)).norm() < 1e-10);
        let short = PolylogConfig { target: 1e-14, max_terms: 1000 };
        assert!(matches!(polylog_unit_circle(1.25, 0.3, &short), Err(AnalyticError::AccuracyUnreachable { .. })));
        assert!(polylog_unit_circle(1.0, 0.3, &cfg).is_err());
    }
}
