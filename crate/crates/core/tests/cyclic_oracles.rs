use cyclic_audit_core::appell::{family_polynomials, AppellFamily, BUILTIN_FAMILIES};
use cyclic_audit_core::cyclic::{
    bracket, cyclic_defect, cyclic_defect_at, cyclic_defect_sampled, defect_ctx, Arg, BracketParams,
};
use cyclic_audit_core::{MultiPoly, PolyCtx, Rational};

fn q(n: i64, d: i64) -> Rational {
    Rational::frac(n, d)
}

/// `F_n(x)` straight from `A(w) e^{xw}` by naive Cauchy products over Q,
/// using hand-entered EGF coefficients.
fn oracle_f(egf: &[Rational], n: usize, x: &Rational) -> Rational {
    let mut fact = vec![Rational::one()];
    for m in 1..=n {
        fact.push(&fact[m - 1] * &Rational::from(m as i64));
    }
    let mut acc = Rational::zero();
    for j in 0..=n {
        // [w^n] = sum_j a_{n-j}/(n-j)! * x^j/j!
        acc = &acc + &(&(&egf[n - j] / &fact[n - j]) * &(&x.pow(j as i32) / &fact[j]));
    }
    &acc * &fact[n]
}

fn oracle_binom(u: &Rational, k: usize) -> Rational {
    let mut acc = Rational::one();
    for i in 0..k {
        acc = &acc * &(&(u - &Rational::from(i as i64)) / &Rational::from((i + 1) as i64));
    }
    acc
}

fn oracle_bracket(egf: &[Rational], n: usize, s: &Rational, t: &Rational, x: &Rational, y: &Rational) -> Rational {
    let mut acc = Rational::zero();
    for k in 0..=n {
        let term = &(&oracle_binom(s, k) * &oracle_binom(t, n - k)) * &(&oracle_f(egf, n - k, x) * &oracle_f(egf, k, y));
        acc = if k % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    acc
}

fn oracle_defect(egf: &[Rational], n: usize, r: &Rational, s: &Rational, x: &Rational, y: &Rational) -> Rational {
    let t = &(&Rational::from(n as i64) - r) - s;
    let z = &(&Rational::one() - x) - y;
    &(&(r * &oracle_bracket(egf, n, s, &t, x, y)) + &(s * &oracle_bracket(egf, n, &t, r, y, &z)))
        + &(&t * &oracle_bracket(egf, n, r, s, &z, x))
}

/// `e^{-w/2}` has `a_m = (-1/2)^m`.
fn egf_centered() -> Vec<Rational> {
    (0..8).map(|m| q(-1, 2).pow(m)).collect()
}

/// `2/(e^w+1)`: the values `E_m(0)`.
fn egf_euler() -> Vec<Rational> {
    vec![q(1, 1), q(-1, 2), q(0, 1), q(1, 4), q(0, 1), q(-1, 2), q(0, 1), q(17, 8)]
}

fn egf_bernoulli() -> Vec<Rational> {
    vec![q(1, 1), q(-1, 2), q(1, 6), q(0, 1), q(-1, 30), q(0, 1), q(1, 42), q(0, 1)]
}

fn rst(scale: Rational) -> MultiPoly {
    let ctx = defect_ctx();
    let r = MultiPoly::var(&ctx, "r").unwrap();
    let s = MultiPoly::var(&ctx, "s").unwrap();
    let t = &(&MultiPoly::from_rational(&ctx, &q(2, 1)) - &r) - &s;
    (&(&r * &s) * &t).scale(&scale)
}

#[test]
fn bernoulli_defect_vanishes_through_n10() {
    let t = family_polynomials(&AppellFamily::bernoulli(), 10).unwrap();
    for n in 0..=10 {
        assert!(cyclic_defect(&t, n).unwrap().is_zero(), "n={n}");
    }
}

#[test]
fn centered_monomial_n2_closed_form() {
    let t = family_polynomials(&AppellFamily::centered_monomial(), 2).unwrap();
    assert_eq!(cyclic_defect(&t, 2).unwrap(), rst(q(-1, 8)));
}

#[test]
fn euler_n2_closed_form() {
    let t = family_polynomials(&AppellFamily::euler(), 2).unwrap();
    assert_eq!(cyclic_defect(&t, 2).unwrap(), rst(q(1, 4)));
}

#[test]
fn defect_matches_pointwise_oracle() {
    let points = [
        [q(1, 3), q(-2, 5), q(7, 4), q(1, 9)],
        [q(3, 1), q(1, 2), q(-1, 6), q(2, 3)],
        [q(-5, 7), q(4, 3), q(0, 1), q(5, 8)],
    ];
    for (fam, egf) in [
        (AppellFamily::bernoulli(), egf_bernoulli()),
        (AppellFamily::euler(), egf_euler()),
        (AppellFamily::centered_monomial(), egf_centered()),
    ] {
        let t = family_polynomials(&fam, 7).unwrap();
        for n in [1, 2, 3, 5, 7] {
            let d = cyclic_defect(&t, n).unwrap();
            for p in &points {
                let expected = oracle_defect(&egf, n, &p[0], &p[1], &p[2], &p[3]);
                assert_eq!(d.evaluate(p), expected, "{} n={n}", fam.name());
                assert_eq!(cyclic_defect_at(&t, n, [&p[0], &p[1], &p[2], &p[3]]).unwrap(), expected);
            }
        }
    }
}

#[test]
fn bracket_matches_oracle_n2() {
    let t = family_polynomials(&AppellFamily::bernoulli(), 2).unwrap();
    let b = bracket(&t, &BracketParams::symbolic(2).unwrap()).unwrap();
    let p = [q(2, 3), q(-1, 4), q(5, 2), q(1, 7)];
    assert_eq!(b.evaluate(&p), oracle_bracket(&egf_bernoulli(), 2, &p[0], &p[1], &p[2], &p[3]));
}

#[test]
fn transpose_symmetry() {
    let ctx = PolyCtx::new(&["s", "t", "x", "y"]);
    for name in BUILTIN_FAMILIES {
        let table = family_polynomials(&AppellFamily::builtin(name).unwrap(), 8).unwrap();
        for n in 0..=8 {
            let a = bracket(&table, &BracketParams::symbolic(n).unwrap()).unwrap();
            let swapped = BracketParams::new(n, Arg::sym("t"), Arg::sym("s"), Arg::sym("y"), Arg::sym("x")).unwrap();
            let b = bracket(&table, &swapped).unwrap().embed(&ctx).unwrap();
            let b = if n % 2 == 0 { b } else { -&b };
            assert_eq!(a, b, "{name} n={n}");
        }
    }
}

#[test]
fn degree_bounds() {
    for name in BUILTIN_FAMILIES {
        let table = family_polynomials(&AppellFamily::builtin(name).unwrap(), 6).unwrap();
        for n in 0..=6u32 {
            let d = cyclic_defect(&table, n as usize).unwrap();
            if d.is_zero() {
                continue;
            }
            assert!(d.degree_in_vars(&[0, 1]).unwrap() <= n + 1, "{name} n={n}");
            assert!(d.degree_in_vars(&[2, 3]).unwrap() <= n, "{name} n={n}");
        }
    }
}

#[test]
fn sampled_reports_agree_with_symbolic() {
    let t = family_polynomials(&AppellFamily::bernoulli(), 6).unwrap();
    let reports = cyclic_defect_sampled(&t, 6, 42, 5).unwrap();
    assert_eq!(reports.len(), 5);
    assert!(reports.iter().all(|r| r.is_zero));

    let t = family_polynomials(&AppellFamily::centered_hermite(), 3).unwrap();
    let d = cyclic_defect(&t, 3).unwrap();
    for rep in cyclic_defect_sampled(&t, 3, 9, 6).unwrap() {
        let vals: Vec<Rational> = rep
            .params
            .split(',')
            .skip(1)
            .map(|kv| kv.split('=').nth(1).unwrap().parse().unwrap())
            .collect();
        assert_eq!(rep.residual.to_string(), d.evaluate(&vals).to_string());
    }
}

#[test]
fn integer_binomials_would_be_vacuous() {
    // at nonnegative integers with r+s+t = n, r[s,t;..] needs s+t >= n for a
    // nonzero binomial product, forcing r = 0; likewise for the other summands
    let t = family_polynomials(&AppellFamily::centered_monomial(), 2).unwrap();
    let d = cyclic_defect(&t, 2).unwrap();
    for (r, s) in [(0, 0), (1, 1), (2, 0), (0, 1)] {
        assert!(d.evaluate(&[q(r, 1), q(s, 1), q(1, 3), q(1, 5)]).is_zero());
    }
}
