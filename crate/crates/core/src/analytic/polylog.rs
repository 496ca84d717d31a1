use std::f64::consts::PI;

use num_complex::Complex64;

use super::{AnalyticError, Compensated, PolylogConfig};

pub const MIN_ORDER: f64 = 1.25;

/// Bound on `|sum_{n>M} e^{2 pi i n x} n^{-s}|`, the smaller of the crude
/// `M^{1-s}/(s-1)` and the summation-by-parts `(M+1)^{-s} / |sin(pi x)|`.
pub fn tail_bound(s: f64, x: f64, m: usize) -> f64 {
    let m = m as f64;
    let crude = if m > 0.0 { m.powf(1.0 - s) / (s - 1.0) } else { f64::INFINITY };
    let sin = (PI * x).sin().abs();
    let abel = if sin > 0.0 { (m + 1.0).powf(-s) / sin } else { f64::INFINITY };
    crude.min(abel)
}

/// Smallest `M` with `tail_bound <= target`, or `None` past `max_terms`.
fn terms_needed(s: f64, x: f64, target: f64, max_terms: usize) -> Option<usize> {
    let sin = (PI * x).sin().abs();
    let crude = (target * (s - 1.0)).powf(1.0 / (1.0 - s)).ceil();
    let abel = if sin > 0.0 { ((target * sin).powf(-1.0 / s) - 1.0).ceil().max(1.0) } else { f64::INFINITY };
    let guess = crude.min(abel);
    if !(guess <= max_terms as f64) {
        return None;
    }
    let mut m = (guess as usize).max(1);
    while tail_bound(s, x, m) > target {
        m += 1;
        if m > max_terms {
            return None;
        }
    }
    Some(m)
}

pub(crate) struct PolylogEval {
    pub value: Complex64,
    pub error: f64,
    pub terms: usize,
}

/// `Li_s(e^{2 pi i x})` by direct summation, for `s >= 1.25`, `0 < |x| < 1`.
pub(crate) fn polylog_eval(s: f64, x: f64, cfg: &PolylogConfig) -> Result<PolylogEval, AnalyticError> {
    if !(s >= MIN_ORDER) || !(x.abs() > 0.0 && x.abs() < 1.0) {
        return Err(AnalyticError::Domain(format!("polylog needs s >= {MIN_ORDER} and 0 < |x| < 1, got s={s}, x={x}")));
    }
    let Some(m) = terms_needed(s, x, cfg.target, cfg.max_terms) else {
        return Err(AnalyticError::AccuracyUnreachable {
            target: cfg.target,
            achievable: tail_bound(s, x, cfg.max_terms),
            max_terms: cfg.max_terms,
        });
    };
    let (mut re, mut im) = (Compensated::default(), Compensated::default());
    let mut rounding = 0.0;
    for n in 1..=m {
        let nf = n as f64;
        let w = nf.powf(-s);
        let (sin, cos) = (2.0 * PI * (nf * x).fract()).sin_cos();
        re.add(w * cos);
        im.add(w * sin);
        // angle error ~ 2 pi n eps, magnitude error ~ 4 eps
        rounding += w * f64::EPSILON * (2.0 * PI * nf + 4.0);
    }
    Ok(PolylogEval { value: Complex64::new(re.sum(), im.sum()), error: tail_bound(s, x, m) + rounding, terms: m })
}
