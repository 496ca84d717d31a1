use std::f64::consts::PI;
use std::sync::OnceLock;

use super::polylog::polylog_eval;
use super::{gamma::ln_gamma, neumaier, AnalyticError, PolylogConfig, Tuning};
use crate::appell::bernoulli_numbers;

pub(crate) const MAX_CORRECTIONS: usize = 60;

/// `B_{2j} / (2j)!` for `j = 0..=MAX_CORRECTIONS`.
fn em_coeffs() -> &'static [f64] {
    static C: OnceLock<Vec<f64>> = OnceLock::new();
    C.get_or_init(|| {
        let b = bernoulli_numbers(2 * MAX_CORRECTIONS);
        let mut fact = 1.0f64;
        let mut out = vec![1.0];
        for j in 1..=MAX_CORRECTIONS {
            fact *= ((2 * j - 1) * (2 * j)) as f64;
            out.push(b[2 * j].to_f64() / fact);
        }
        out
    })
}

#[derive(Clone, Copy, Debug)]
pub(crate) struct EmEval {
    pub value: f64,
    pub truncation: f64,
    pub rounding: f64,
    /// The last correction exceeded the one before it.
    pub growing: bool,
}

impl EmEval {
    pub fn error(&self) -> f64 {
        self.truncation + self.rounding
    }
}

/// Euler-Maclaurin with shift `n` and `j` corrections.
///
/// The truncation bound is `4 |(s)_{2J}| / (2 pi)^{2J} (N+x)^{1-s-2J} / (s+2J-1)`,
/// valid when `s + 2J - 1 > 0`; it is zero when the Pochhammer symbol vanishes.
pub(crate) fn euler_maclaurin(s: f64, x: f64, n: usize, j: usize) -> EmEval {
    let j = j.clamp(1, MAX_CORRECTIONS);
    let mut terms: Vec<f64> = (0..n).map(|k| (k as f64 + x).powf(-s)).collect();
    let a = n as f64 + x;
    terms.push(a.powf(1.0 - s) / (s - 1.0));
    terms.push(0.5 * a.powf(-s));

    let c = em_coeffs();
    let mut poch = s; // (s)_{2i-1}
    let mut apow = a.powf(-s - 1.0); // a^{-s-2i+1}
    let a2 = a * a;
    let (mut last, mut prev) = (0.0f64, 0.0f64);
    for i in 1..=j {
        let t = c[i] * poch * apow;
        terms.push(t);
        prev = last;
        last = t.abs();
        poch *= (s + (2 * i - 1) as f64) * (s + (2 * i) as f64);
        apow /= a2;
    }
    // poch is now (s)_{2j+1}; (s)_{2j} = poch / (s + 2j)
    let sigma = s + (2 * j) as f64 - 1.0;
    let poch_2j = {
        let mut p = 1.0;
        for i in 0..2 * j {
            p *= s + i as f64;
        }
        p
    };
    let truncation = if poch_2j == 0.0 {
        0.0
    } else if sigma <= 0.0 {
        f64::INFINITY
    } else {
        4.0 * poch_2j.abs() / (2.0 * PI).powi(2 * j as i32) * a.powf(-sigma) / sigma
    };
    let abs_sum: f64 = terms.iter().map(|t| t.abs()).sum();
    EmEval {
        value: neumaier(terms.iter().copied()),
        truncation,
        rounding: 4.0 * f64::EPSILON * abs_sum,
        growing: j >= 2 && last > prev && last > 0.0,
    }
}

const AUTO_SHIFTS: [usize; 18] = [0, 1, 2, 3, 4, 5, 6, 8, 10, 12, 15, 20, 25, 30, 40, 50, 64, 80];

/// Best `(N, J)` from a fixed menu, by total error estimate.
pub(crate) fn auto_em(s: f64, x: f64) -> EmEval {
    let mut best: Option<EmEval> = None;
    for &n in &AUTO_SHIFTS {
        for j in [4, 8, 12, 16, 20, 25, 30, 40, 50, 60] {
            let e = euler_maclaurin(s, x, n, j);
            if e.value.is_finite() && best.is_none_or(|b| e.error() < b.error()) {
                best = Some(e);
            }
        }
        if best.is_some_and(|b| b.error() <= 1e-17 * b.value.abs()) {
            break;
        }
    }
    best.unwrap_or(EmEval { value: f64::NAN, truncation: f64::INFINITY, rounding: 0.0, growing: true })
}

/// For `s <= -2`, not an integer: Hurwitz's formula
/// `zeta(s, x) = 2 Gamma(1-s)/(2 pi)^{1-s} Re(e^{-i pi (1-s)/2} Li_{1-s}(e^{2 pi i x}))`
/// on `0 < x < 1`, reached from `x = 1` by duplication. Euler-Maclaurin loses
/// digits to cancellation in that range.
fn reflected(s: f64, x: f64) -> Option<EmEval> {
    if s > -2.0 || s.fract() == 0.0 || x > 1.0 {
        return None;
    }
    if x == 1.0 {
        let mut e = reflected(s, 0.5)?;
        let scale = 2f64.powf(s) - 1.0;
        e.value /= scale;
        e.truncation /= scale.abs();
        e.rounding = e.rounding / scale.abs() + f64::EPSILON * e.value.abs();
        return Some(e);
    }
    let order = 1.0 - s;
    let cfg = PolylogConfig { target: 1e-16, max_terms: 2_000_000 };
    let li = polylog_eval(order, x, &cfg).ok()?;
    let scale = 2.0 * (ln_gamma(order) - order * (2.0 * PI).ln()).exp();
    let phase = num_complex::Complex64::from_polar(1.0, -PI * order / 2.0);
    let value = scale * (phase * li.value).re;
    Some(EmEval {
        value,
        truncation: scale * li.error,
        rounding: 16.0 * f64::EPSILON * (value.abs() + scale * li.value.norm()),
        growing: false,
    })
}

/// `reflect` lets `Auto` fall back to Hurwitz's formula where it is more
/// accurate; callers comparing against that formula pass `false`.
pub(crate) fn hurwitz_eval(s: f64, x: f64, tuning: Tuning, reflect: bool) -> Result<EmEval, AnalyticError> {
    if s == 1.0 {
        return Err(AnalyticError::PoleAtOne);
    }
    if !(x > 0.0) || !s.is_finite() || !x.is_finite() {
        return Err(AnalyticError::Domain(format!("hurwitz zeta needs x > 0, got s={s}, x={x}")));
    }
    let e = match tuning {
        Tuning::Auto if s < 0.0 && x > 1.0 => {
            // large shifted terms cancel for s < 0; step down toward (0, 1]
            let mut e = hurwitz_eval(s, x - 1.0, tuning, reflect)?;
            let d = (x - 1.0).powf(-s);
            e.value -= d;
            e.rounding += f64::EPSILON * (e.value.abs() + d);
            e
        }
        Tuning::Auto => {
            let e = auto_em(s, x);
            match reflect.then(|| reflected(s, x)).flatten() {
                Some(r) if e.error() > 1e-13 * e.value.abs() && r.error() < e.error() => r,
                _ => e,
            }
        }
        Tuning::Fixed { shift, corrections } => {
            let e = euler_maclaurin(s, x, shift, corrections);
            if e.growing {
                return Err(AnalyticError::NonConvergent(format!(
                    "Euler-Maclaurin corrections increase at J={corrections} with N={shift} (s={s}, x={x})"
                )));
            }
            e
        }
    };
    if !e.error().is_finite() || !e.value.is_finite() {
        return Err(AnalyticError::NonConvergent(format!("no usable Euler-Maclaurin bound at s={s}, x={x}")));
    }
    Ok(e)
}
