use std::f64::consts::PI;

use cyclic_audit_core::modular::*;
use cyclic_audit_core::Rational;

fn p(w: usize, c: &[i64]) -> PolyMod {
    PolyMod::from_ints(w, c).unwrap()
}

/// `Delta(it)` from the product `e^{-2 pi t} prod (1 - e^{-2 pi n t})^24`.
fn delta_product(t: f64) -> f64 {
    let q = (-2.0 * PI * t).exp();
    let mut acc = q;
    let mut qn = q;
    for _ in 0..200 {
        acc *= (1.0 - qn).powi(24);
        qn *= q;
        if qn < 1e-300 {
            break;
        }
    }
    acc
}

fn simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, fa: f64, fm: f64, fb: f64, whole: f64, tol: f64, depth: u32) -> f64 {
    let m = 0.5 * (a + b);
    let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
    let (flm, frm) = (f(lm), f(rm));
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if depth == 0 || (left + right - whole).abs() <= 15.0 * tol {
        return left + right + (left + right - whole) / 15.0;
    }
    simpson(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) + simpson(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1)
}

fn integrate(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    let (fa, fm, fb) = (f(a), f(0.5 * (a + b)), f(b));
    simpson(f, a, b, fa, fm, fb, (b - a) / 6.0 * (fa + 4.0 * fm + fb), tol, 50)
}

#[test]
fn delta_matches_product_expansion() {
    // independent i128 expansion of q prod (1 - q^n)^24
    let n = 30;
    let mut c = vec![0i128; n + 1];
    c[0] = 1;
    for m in 1..=n {
        for _ in 0..24 {
            for i in (m..=n).rev() {
                c[i] -= c[i - m];
            }
        }
    }
    let d = delta_qexp(n + 1);
    for i in 0..=n {
        assert_eq!(d.coeffs()[i + 1], Rational::from_int(c[i]), "tau({})", i + 1);
    }
}

#[test]
fn period_dimensions_match_cusp_count() {
    for k in (4..=30).step_by(2) {
        let sp = period_space(k).unwrap();
        assert_eq!(sp.dim(), 2 * cuspform_dim(k) + 1, "k={k}");
        for b in &sp.basis {
            assert!(three_term_standard(b, k).unwrap().is_zero());
            assert!(s_relation(b).is_zero());
        }
    }
}

#[test]
fn z_w_minus_one_is_a_period() {
    for w in (2..=20).step_by(2) {
        let mut c = vec![0; w + 1];
        c[0] = -1;
        c[w] = 1;
        let q = p(w, &c);
        assert!(three_term_standard(&q, w + 2).unwrap().is_zero(), "w={w}");
        assert!(s_relation(&q).is_zero(), "w={w}");
    }
}

#[test]
fn literal_relation_discrepancy_at_weight_four() {
    let joint = solution_space(4, &[Relation::S, Relation::ThreeTermPaper]).unwrap();
    assert!(joint.is_empty());
    let alone = solution_space(4, &[Relation::ThreeTermPaper]).unwrap();
    assert_eq!(alone, vec![p(2, &[1, -4, 1])]);
    assert!(!three_term_paper(&p(2, &[-1, 0, 1]), 4).unwrap().is_zero());
}

#[test]
fn minus_identity_acts_trivially() {
    let q = p(6, &[3, -1, 4, 1, -5, 9, 2]);
    assert_eq!(slash(&q, &GL2Mat::I.neg()).unwrap(), q);
    let u3 = GL2Mat::U.mul(&GL2Mat::U).mul(&GL2Mat::U);
    assert_eq!(u3, GL2Mat::I.neg());
}

#[test]
fn completed_l_truncation_and_symmetry() {
    let d = delta_qexp(40);
    for m in 1..=11 {
        let a = completed_l(&d, 12, m, 20).unwrap().value;
        let b = completed_l(&d, 12, m, 40).unwrap().value;
        assert!((a - b).abs() <= 1e-12 * b.abs(), "m={m}");
        let c = completed_l(&d, 12, 12 - m, 40).unwrap().value;
        assert!((b - c).abs() <= 1e-12 * b.abs(), "m={m}");
    }
}

#[test]
fn completed_l_matches_quadrature() {
    let d = delta_qexp(40);
    for m in 1..=11 {
        let f = move |t: f64| delta_product(t) * (t.powi(m as i32 - 1) + t.powi(11 - m as i32));
        // the integrand is below e^{-2 pi t} t^10, negligible past t = 12
        let q = integrate(&f, 1.0, 12.0, 1e-16);
        let l = completed_l(&d, 12, m, 40).unwrap().value;
        assert!((q - l).abs() <= 1e-8 * l.abs(), "m={m}: {q} vs {l}");
    }
}

#[test]
fn delta_period_polynomial() {
    let r = period_polynomial_numeric(&delta_qexp(40), 12, 40).unwrap();
    let (u, s) = numeric_relation_residuals(&r.poly);
    assert!(u < 1e-8, "three-term {u}");
    assert!(s < 1e-8, "S {s}");
    for (i, c) in r.poly.coeffs().iter().enumerate() {
        // even powers are imaginary, odd powers real
        if i % 2 == 0 {
            assert!(c.re.abs() < 1e-14 * c.norm().max(1e-300));
        } else {
            assert!(c.im.abs() < 1e-14 * c.norm().max(1e-300));
        }
    }
    let proj = project_onto_basis(&r.poly, &period_space(12).unwrap().basis);
    assert!(proj.relative_residual < 1e-6, "{}", proj.relative_residual);
}

#[test]
fn even_ratio_is_stable() {
    let d = delta_qexp(50);
    let er = even_ratio_reconstruction(&d, 12, &[30, 50], 1_000_000).unwrap();
    assert!(er.stable, "{:?}", er.ratios);
    let v = er.value().unwrap();
    assert!(v.denom() < &1_000_000.into());
}
