use std::f64::consts::PI;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::Signed;

use super::ModularError;
use crate::appell::bernoulli_numbers;
use crate::exact::Rational;

/// Truncated Fourier expansion `a_0 + a_1 q + ... + a_N q^N`.
#[derive(Clone, Debug, PartialEq)]
pub struct QExpansion {
    weight: usize,
    coeffs: Vec<Rational>,
}

impl QExpansion {
    pub fn new(weight: usize, coeffs: Vec<Rational>) -> Self {
        QExpansion { weight, coeffs }
    }

    pub fn weight(&self) -> usize {
        self.weight
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Index of the last stored coefficient.
    pub fn truncation(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn is_cuspidal(&self) -> bool {
        self.coeffs.first().is_none_or(Rational::is_zero)
    }

    /// The same form cut down to `a_0..a_n`.
    pub fn truncate(&self, n: usize) -> Result<Self, ModularError> {
        if n > self.truncation() {
            return Err(ModularError::ExpansionTooShort { have: self.truncation(), needed: n });
        }
        Ok(QExpansion { weight: self.weight, coeffs: self.coeffs[..=n].to_vec() })
    }

    pub(crate) fn coeffs_f64(&self) -> Vec<f64> {
        self.coeffs.iter().map(Rational::to_f64).collect()
    }

    /// Horner evaluation at `q = e^{2 pi i tau}`.
    pub fn eval(&self, tau: Complex64) -> Complex64 {
        let q = (Complex64::new(0.0, 2.0 * PI) * tau).exp();
        self.coeffs_f64().iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &a| acc * q + a)
    }

    /// Exponent in the coefficient growth model `|a_n| <= C n^alpha`.
    pub(crate) fn growth_exponent(&self) -> f64 {
        if self.is_cuspidal() {
            self.weight as f64 / 2.0
        } else {
            self.weight as f64 - 1.0
        }
    }

    pub(crate) fn growth_constant(&self) -> f64 {
        let alpha = self.growth_exponent();
        let observed = self
            .coeffs_f64()
            .iter()
            .enumerate()
            .skip(1)
            .map(|(n, a)| a.abs() / (n as f64).powf(alpha))
            .fold(0.0, f64::max);
        (2.0 * observed).max(2.0)
    }

    /// Bound on `sum_{n > N} |a_n| |q|^n` under the growth model.
    pub fn tail_bound(&self, tau: Complex64) -> f64 {
        let r = (-2.0 * PI * tau.im).exp();
        let (alpha, c) = (self.growth_exponent(), self.growth_constant());
        let n0 = (self.truncation() + 1) as f64;
        let ratio = r * ((n0 + 1.0) / n0).powf(alpha);
        if ratio >= 1.0 {
            return f64::INFINITY;
        }
        c * n0.powf(alpha) * r.powf(n0) / (1.0 - ratio)
    }
}

/// `E_k = 1 - (2k/B_k) sum sigma_{k-1}(n) q^n`.
pub fn eisenstein_qexp(k: usize, n: usize) -> Result<QExpansion, ModularError> {
    if k < 4 || k % 2 == 1 {
        return Err(ModularError::UnsupportedWeight(k));
    }
    let bk = bernoulli_numbers(k).pop().expect("nonempty");
    let scale = -&(&Rational::from((2 * k) as i64) / &bk);
    let mut coeffs = vec![Rational::one()];
    for m in 1..=n.max(1) {
        let sigma: BigInt = (1..=m).filter(|d| m % d == 0).map(|d| BigInt::from(d).pow((k - 1) as u32)).sum();
        coeffs.push(&scale * &Rational::from_int(sigma));
    }
    Ok(QExpansion::new(k, coeffs))
}

/// `q prod (1 - q^n)^24` through `q^N`, as the eighth power of
/// `prod (1 - q^n)^3 = sum_k (-1)^k (2k+1) q^{k(k+1)/2}`.
pub fn delta_qexp(n: usize) -> QExpansion {
    let n = n.max(1);
    let len = n; // coefficients of q^0..q^{n-1} of the product
    let mut eta3 = vec![BigInt::from(0); len];
    let mut k = 0usize;
    while k * (k + 1) / 2 < len {
        let v = BigInt::from(2 * k + 1);
        eta3[k * (k + 1) / 2] = if k.is_multiple_of(2) { v } else { -v };
        k += 1;
    }
    let square = |a: &[BigInt]| -> Vec<BigInt> {
        let mut out = vec![BigInt::from(0); len];
        for (i, x) in a.iter().enumerate() {
            if x.is_positive() || x.is_negative() {
                for (j, y) in a[..len - i].iter().enumerate() {
                    out[i + j] += x * y;
                }
            }
        }
        out
    };
    let prod = square(&square(&square(&eta3)));
    let mut coeffs = vec![Rational::zero()];
    coeffs.extend(prod.into_iter().map(Rational::from_int));
    QExpansion::new(12, coeffs)
}

#[derive(Clone, Debug, PartialEq)]
pub struct ModularityCheck {
    pub max_residual: f64,
    /// Largest relative tail bound seen over both sides of every sample.
    pub tail_bound: f64,
}

/// `max |f(-1/tau) - tau^k f(tau)| / |tau^k f(tau)|` over the samples.
pub fn modularity_check_numeric(
    f: &QExpansion,
    samples: &[Complex64],
    target: f64,
) -> Result<ModularityCheck, ModularError> {
    let mut out = ModularityCheck { max_residual: 0.0, tail_bound: 0.0 };
    for &tau in samples {
        if tau.im < 0.5 {
            return Err(ModularError::PointTooLow(tau.to_string()));
        }
        let inv = -tau.inv();
        let rhs = tau.powu(f.weight() as u32) * f.eval(tau);
        let lhs = f.eval(inv);
        let scale = rhs.norm();
        let bound = (f.tail_bound(inv) + tau.norm().powi(f.weight() as i32) * f.tail_bound(tau)) / scale;
        if !(bound <= target) {
            return Err(ModularError::InsufficientTruncation { bound, target });
        }
        out.tail_bound = out.tail_bound.max(bound);
        out.max_residual = out.max_residual.max((lhs - rhs).norm() / scale);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eisenstein_coefficients() {
        let e4 = eisenstein_qexp(4, 3).unwrap();
        let c: Vec<i64> = e4.coeffs().iter().map(|c| c.to_i64().unwrap()).collect();
        assert_eq!(c, vec![1, 240, 2160, 6720]);
        assert_eq!(eisenstein_qexp(6, 1).unwrap().coeffs()[1], Rational::from(-504));
        assert!(eisenstein_qexp(5, 3).is_err());
    }

    #[test]
    fn delta_coefficients() {
        let d = delta_qexp(6);
        let c: Vec<i64> = d.coeffs().iter().map(|c| c.to_i64().unwrap()).collect();
        assert_eq!(c, vec![0, 1, -24, 252, -1472, 4830, -6048]);
    }

    #[test]
    fn modularity() {
        let d = delta_qexp(40);
        let i = Complex64::new(0.0, 1.0);
        assert!(modularity_check_numeric(&d, &[i, 2.0 * i], 1e-10).unwrap().max_residual < 1e-10);
        let e4 = eisenstein_qexp(4, 60).unwrap();
        assert!(modularity_check_numeric(&e4, &[Complex64::new(0.3, 1.1)], 1e-8).unwrap().max_residual < 1e-8);
        let short = delta_qexp(3);
        assert!(matches!(
            modularity_check_numeric(&short, &[Complex64::new(0.0, 0.5)], 1e-10),
            Err(ModularError::InsufficientTruncation { .. })
        ));
    }
}
