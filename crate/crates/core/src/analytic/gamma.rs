use std::f64::consts::PI;
use std::sync::OnceLock;

use crate::appell::bernoulli_numbers;

const SHIFT: f64 = 20.0;
const STIRLING_TERMS: usize = 12;

/// `B_{2j} / (2j (2j-1))` for the Stirling series.
fn stirling_coeffs() -> &'static [f64] {
    static C: OnceLock<Vec<f64>> = OnceLock::new();
    C.get_or_init(|| {
        let b = bernoulli_numbers(2 * STIRLING_TERMS);
        (1..=STIRLING_TERMS).map(|j| b[2 * j].to_f64() / ((2 * j) * (2 * j - 1)) as f64).collect()
    })
}

/// `ln Gamma(x)` for `x > 0`: shift to `x >= 20`, then Stirling.
pub fn ln_gamma(x: f64) -> f64 {
    assert!(x > 0.0, "ln_gamma needs x > 0");
    let mut shift = 1.0;
    let mut y = x;
    while y < SHIFT {
        shift *= y;
        y += 1.0;
    }
    let mut series = 0.0;
    let mut p = y;
    let y2 = y * y;
    for c in stirling_coeffs() {
        series += c / p;
        p *= y2;
    }
    (y - 0.5) * y.ln() - y + 0.5 * (2.0 * PI).ln() + series - shift.ln()
}

/// `Gamma(x)` for real `x` away from the poles at `0, -1, -2, ...`.
pub fn gamma(x: f64) -> f64 {
    if x > 0.0 {
        ln_gamma(x).exp()
    } else {
        PI / ((PI * x).sin() * ln_gamma(1.0 - x).exp())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorials_and_half_integers() {
        let mut f = 1.0f64;
        for n in 1..=20 {
            f *= n as f64;
            assert!((gamma(n as f64 + 1.0) / f - 1.0).abs() < 1e-13, "n={n}");
        }
        assert!((gamma(0.5) - PI.sqrt()).abs() < 1e-14);
        assert!((gamma(-0.5) + 2.0 * PI.sqrt()).abs() < 1e-13);
        assert!((gamma(3.5) - 15.0 / 8.0 * PI.sqrt()).abs() < 1e-13);
    }
}
