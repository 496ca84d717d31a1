use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use super::qexp::QExpansion;
use super::{even_subspace, period_space, s_relation_complex, three_term_standard_complex, ComplexPolyMod, ModularError, PolyMod};
use crate::exact::Rational;

/// `Gamma(j, x) / x^j` for integer `j >= 1`, from the finite sum
/// `(j-1)! e^{-x} sum_{i<j} x^i/i!`.
fn upper_gamma_scaled(j: usize, x: f64) -> f64 {
    // term_i = (j-1)!/i! / x^{j-i}, walked down from i = j-1
    let mut term = 1.0 / x;
    let mut acc = term;
    for i in (1..j).rev() {
        term *= i as f64 / x;
        acc += term;
    }
    (-x).exp() * acc
}

fn check_cusp(f: &QExpansion) -> Result<(), ModularError> {
    if f.is_cuspidal() {
        Ok(())
    } else {
        Err(ModularError::NotCuspidal(f.coeffs()[0].to_string()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LValue {
    pub value: f64,
    pub error_estimate: f64,
}

/// `Lambda(m) = int_0^inf f(it) t^{m-1} dt` from the first `n` coefficients.
pub fn completed_l(f: &QExpansion, k: usize, m: usize, n: usize) -> Result<LValue, ModularError> {
    check_cusp(f)?;
    if k != f.weight() || k < 4 || k % 2 == 1 {
        return Err(ModularError::UnsupportedWeight(k));
    }
    if m == 0 || m >= k {
        return Err(ModularError::WeightMismatch { degree: m, k });
    }
    if n > f.truncation() {
        return Err(ModularError::ExpansionTooShort { have: f.truncation(), needed: n });
    }
    let sign = if (k / 2).is_multiple_of(2) { 1.0 } else { -1.0 };
    let kernel = |j: usize| {
        let x = 2.0 * PI * j as f64;
        upper_gamma_scaled(m, x) + sign * upper_gamma_scaled(k - m, x)
    };
    let a = f.coeffs_f64();
    let value = (1..=n).map(|j| a[j] * kernel(j)).sum::<f64>();
    let (alpha, c) = (f.growth_exponent(), f.growth_constant());
    let tail: f64 = (n + 1..n + 200).map(|j| c * (j as f64).powf(alpha) * kernel(j).abs()).sum();
    Ok(LValue { value, error_estimate: tail + value.abs() * 1e-15 * n as f64 })
}

#[derive(Clone, Debug, PartialEq)]
pub struct NumericPeriod {
    pub poly: ComplexPolyMod,
    pub error_estimate: f64,
}

/// `r_f(z) = i sum_m C(w,m) i^m (-z)^{w-m} Lambda(m+1)`.
pub fn period_polynomial_numeric(f: &QExpansion, k: usize, n: usize) -> Result<NumericPeriod, ModularError> {
    check_cusp(f)?;
    if k < 4 {
        return Err(ModularError::UnsupportedWeight(k));
    }
    let w = k - 2;
    let mut coeffs = vec![Complex64::new(0.0, 0.0); w + 1];
    let mut err = 0.0f64;
    let mut binom = 1.0f64;
    for m in 0..=w {
        if m > 0 {
            binom = binom * (w + 1 - m) as f64 / m as f64;
        }
        let l = completed_l(f, k, m + 1, n)?;
        let sign = if (w - m).is_multiple_of(2) { 1.0 } else { -1.0 };
        coeffs[w - m] = Complex64::new(0.0, 1.0).powu(m as u32 + 1) * (binom * sign * l.value);
        err = err.max(binom * l.error_estimate);
    }
    Ok(NumericPeriod { poly: ComplexPolyMod::from_complex(w, coeffs), error_estimate: err })
}

/// Residuals of `r_f` against both defining relations, relative to `|r_f|`.
pub fn numeric_relation_residuals(r: &ComplexPolyMod) -> (f64, f64) {
    let norm = r.max_norm();
    (three_term_standard_complex(r).max_norm() / norm, s_relation_complex(r).max_norm() / norm)
}

#[derive(Clone, Debug, PartialEq)]
pub struct Projection {
    pub components: Vec<Complex64>,
    /// `|r - B c| / |r|` in the Euclidean norm.
    pub relative_residual: f64,
}

fn basis_matrix(basis: &[PolyMod]) -> DMatrix<f64> {
    let rows = basis.first().map_or(0, |b| b.coeffs().len());
    DMatrix::from_fn(rows, basis.len(), |i, j| basis[j].coeffs()[i].to_f64())
}

/// Least-squares coordinates of a complex vector in a real exact basis.
pub fn project_onto_basis(r: &ComplexPolyMod, basis: &[PolyMod]) -> Projection {
    let b = basis_matrix(basis);
    let svd = b.clone().svd(true, true);
    let solve = |v: DVector<f64>| svd.solve(&v, 1e-12).expect("svd computed with u and v");
    let re = DVector::from_iterator(r.coeffs().len(), r.coeffs().iter().map(|c| c.re));
    let im = DVector::from_iterator(r.coeffs().len(), r.coeffs().iter().map(|c| c.im));
    let (cre, cim) = (solve(re.clone()), solve(im.clone()));
    let res = ((&b * &cre - re).norm_squared() + (&b * &cim - im).norm_squared()).sqrt();
    let total = r.coeffs().iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
    Projection {
        components: cre.iter().zip(cim.iter()).map(|(&a, &b)| Complex64::new(a, b)).collect(),
        relative_residual: res / total,
    }
}

/// Exact basis of the even-degree part of the period space.
pub fn even_period_basis(k: usize) -> Result<Vec<PolyMod>, ModularError> {
    even_subspace(k)
}

#[derive(Clone, Debug, PartialEq)]
pub struct EvenRatio {
    pub basis: Vec<PolyMod>,
    /// `(N, c_1/c_2)` for each truncation.
    pub ratios: Vec<(usize, f64)>,
    /// One reconstruction per truncation.
    pub reconstructed: Vec<Option<Rational>>,
    pub stable: bool,
}

impl EvenRatio {
    pub fn value(&self) -> Option<&Rational> {
        if self.stable {
            self.reconstructed.first().and_then(Option::as_ref)
        } else {
            None
        }
    }
}

/// Ratio of the two components of the even part of `r_f` in the exact even
/// basis of the weight-`k` period space, reconstructed as a fraction.
pub fn even_ratio_reconstruction(
    f: &QExpansion,
    k: usize,
    truncations: &[usize],
    max_denom: u64,
) -> Result<EvenRatio, ModularError> {
    let basis = even_period_basis(k)?;
    if basis.len() != 2 {
        return Err(ModularError::UnsupportedWeight(k));
    }
    let mut ratios = Vec::new();
    let mut reconstructed = Vec::new();
    for &n in truncations {
        let r = period_polynomial_numeric(f, k, n)?.poly;
        let even: Vec<Complex64> = r
            .coeffs()
            .iter()
            .enumerate()
            .map(|(i, c)| if i % 2 == 0 { *c } else { Complex64::new(0.0, 0.0) })
            .collect();
        let p = project_onto_basis(&ComplexPolyMod::from_complex(r.weight(), even), &basis);
        let ratio = (p.components[0] / p.components[1]).re;
        ratios.push((n, ratio));
        reconstructed.push(Rational::reconstruct(ratio, max_denom, 1e-9));
    }
    let stable = reconstructed.first().is_some_and(|a| a.is_some() && reconstructed.iter().all(|b| b == a));
    Ok(EvenRatio { basis, ratios, reconstructed, stable })
}

/// Coordinates of `r_f` in the exact period-space basis.
pub fn period_projection(f: &QExpansion, k: usize, n: usize) -> Result<Projection, ModularError> {
    let r = period_polynomial_numeric(f, k, n)?.poly;
    Ok(project_onto_basis(&r, &period_space(k)?.basis))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modular::delta_qexp;

    #[test]
    fn incomplete_gamma_small_cases() {
        // Gamma(1, x) = e^{-x}, Gamma(2, x) = (x+1) e^{-x}
        let x = 3.7f64;
        assert!((upper_gamma_scaled(1, x) - (-x).exp() / x).abs() < 1e-16);
        assert!((upper_gamma_scaled(2, x) - (x + 1.0) * (-x).exp() / (x * x)).abs() < 1e-16);
    }

    #[test]
    fn eisenstein_is_rejected() {
        let e = crate::modular::eisenstein_qexp(12, 20).unwrap();
        assert!(matches!(completed_l(&e, 12, 3, 20), Err(ModularError::NotCuspidal(_))));
    }

    #[test]
    fn delta_period_satisfies_relations() {
        let r = period_polynomial_numeric(&delta_qexp(40), 12, 40).unwrap();
        let (u, s) = numeric_relation_residuals(&r.poly);
        assert!(u < 1e-8 && s < 1e-8, "{u} {s}");
    }
}
