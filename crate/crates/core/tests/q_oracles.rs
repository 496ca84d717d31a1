use cyclic_audit_core::appell::{family_polynomials, AppellFamily};
use cyclic_audit_core::cyclic::{bracket, Arg, BracketParams};
use cyclic_audit_core::qengine::*;
use cyclic_audit_core::{MultiPoly, Rational, RationalFunction};

fn r(n: i64, d: i64) -> Rational {
    Rational::frac(n, d)
}

fn eval_qpoly(p: &QPoly, coeff_point: &[Rational], outer_point: &[Rational]) -> Rational {
    let mut acc = Rational::zero();
    for (m, c) in p.terms() {
        let mut t = c.evaluate(coeff_point).unwrap();
        for (v, &e) in outer_point.iter().zip(m.exps()) {
            t = &t * &v.pow(e as i32);
        }
        acc = &acc + &t;
    }
    acc
}

/// `F_n^(q)(x)` at a numeric `q` by series arithmetic over Q written out here:
/// the prefactor is inverted term by term, then convolved with `E_q(wx)`.
fn oracle_q_family(kind: QKind, n_max: usize, q: &Rational, x: &Rational) -> Vec<Rational> {
    let poch: Vec<Rational> = (0..=n_max + 1)
        .scan(Rational::one(), |acc, i| {
            if i > 0 {
                *acc = &*acc * &(&Rational::one() - &q.pow(i as i32));
            }
            Some(acc.clone())
        })
        .collect();
    let e: Vec<Rational> = poch.iter().map(|p| p.recip().unwrap()).collect();
    // d = series to invert
    let d: Vec<Rational> = match kind {
        QKind::Bernoulli => (0..=n_max).map(|m| e[m + 1].clone()).collect(),
        QKind::Euler => (0..=n_max)
            .map(|m| if m == 0 { Rational::one() } else { &e[m] / &Rational::from(2) })
            .collect(),
    };
    let mut inv = vec![d[0].recip().unwrap()];
    for k in 1..=n_max {
        let mut acc = Rational::zero();
        for j in 1..=k {
            acc = &acc + &(&d[j] * &inv[k - j]);
        }
        inv.push(-&(&acc * &inv[0]));
    }
    (0..=n_max)
        .map(|n| {
            let mut c = Rational::zero();
            for j in 0..=n {
                c = &c + &(&inv[n - j] * &(&x.pow(j as i32) * &e[j]));
            }
            &c * &poch[n]
        })
        .collect()
}

#[test]
fn family_matches_numeric_series_oracle() {
    for kind in [QKind::Bernoulli, QKind::Euler] {
        let table = q_family_polynomials(kind, 6);
        for q in [r(2, 3), r(-3, 5), r(5, 2)] {
            for x in [r(1, 3), r(-7, 4)] {
                let expected = oracle_q_family(kind, 6, &q, &x);
                for (n, e) in expected.iter().enumerate() {
                    assert_eq!(&eval_qpoly(table.get(n).unwrap(), std::slice::from_ref(&q), std::slice::from_ref(&x)), e, "{kind} n={n}");
                }
            }
        }
    }
}

#[test]
fn q_bernoulli_degree_one() {
    let table = q_family_polynomials(QKind::Bernoulli, 1);
    let ctx = q_ctx();
    let qv = RationalFunction::var(&ctx, "q").unwrap();
    let one = RationalFunction::from_rational(&ctx, &Rational::one());
    let xc = qx_ctx();
    let x = MultiPoly::var(&xc, "x").unwrap();
    let shift = MultiPoly::constant(&xc, &one / &(&one + &qv));
    let expected = (&x - &shift).scale_by(&(&one - &qv));
    assert_eq!(table.get(1).unwrap(), &expected);
}

#[test]
fn exponential_normalized_limits_are_inverse_factorials() {
    let e = q_exponential(7);
    let ctx = q_ctx();
    let one_minus_q = RationalFunction::from_poly(
        &MultiPoly::one(&ctx) - &MultiPoly::var(&ctx, "q").unwrap(),
    );
    let mut fact = Rational::one();
    let mut scale = RationalFunction::from_rational(&ctx, &Rational::one());
    for n in 0..7 {
        if n > 0 {
            fact = &fact * &Rational::from(n as i64);
            scale = &scale * &one_minus_q;
        }
        let lim = (&scale * &e.coeffs()[n]).limit_at_one("q").unwrap();
        assert_eq!(lim.as_constant(), fact.recip(), "n={n}");
    }
}

#[test]
fn q_to_one_recovers_classical() {
    for kind in [QKind::Bernoulli, QKind::Euler] {
        let rep = q_to_one_check(&q_family_polynomials(kind, 6)).unwrap();
        assert!(rep.is_zero, "{kind}: {}", rep.residual);
    }
}

#[test]
fn bracket_examples() {
    let b = q_family_polynomials(QKind::Bernoulli, 2);
    let p0 = QCyclicParams::integer(0, 0, 0, 0).unwrap();
    let br = q_bracket(&b, &p0, Slot::S, Slot::T).unwrap();
    assert_eq!(br.to_string(), "q^2 - 2*q + 1");

    let p1 = QCyclicParams::integer(1, 1, 0, 0).unwrap();
    assert!(q_bracket(&b, &p1, Slot::S, Slot::T).unwrap().is_zero());

    let ps = QCyclicParams::symbolic(1);
    let got = q_bracket(&b, &ps, Slot::S, Slot::T).unwrap();
    let [_, sigma, tau] = ps.mode.slot_powers(1);
    let ctx = ps.outer_ctx();
    let embed = |p: &QPoly, v: &str| {
        p.map_coeffs(&symbolic_ctx(), |c| c.embed(&symbolic_ctx()).unwrap())
            .substitute(&ctx, &[("x", MultiPoly::var(&ctx, v).unwrap())])
            .unwrap()
    };
    let f0 = embed(b.get(0).unwrap(), "x");
    let f1x = embed(b.get(1).unwrap(), "x");
    let f1y = embed(b.get(1).unwrap(), "y");
    let g = |u: &RationalFunction| gaussian_binomial(&QUpper::Power(u.clone()), 1);
    let expected = &(&f1x * &f0).scale_by(&g(&tau)) - &(&f0 * &f1y).scale_by(&g(&sigma));
    assert_eq!(got, expected);
}

#[test]
fn cyclic_defect_examples() {
    let b = q_family_polynomials(QKind::Bernoulli, 2);
    assert!(q_cyclic_defect(&b, &QCyclicParams::integer(0, 0, 0, 0).unwrap()).unwrap().is_zero);
    assert!(q_cyclic_defect(&b, &QCyclicParams::integer(1, 1, 0, 0).unwrap()).unwrap().is_zero);

    let sym = q_cyclic_sum(&b, &QCyclicParams::symbolic(0)).unwrap();
    let ctx = symbolic_ctx();
    let v = |n| RationalFunction::var(&ctx, n).unwrap();
    let c = |k: i64| RationalFunction::from_rational(&ctx, &Rational::from(k));
    let expected = &(&c(1) - &v("q")) * &(&(&(&c(3) - &v("rho")) - &v("sigma")) - &(&c(1) / &(&v("rho") * &v("sigma"))));
    assert_eq!(sym.as_constant(), Some(expected));
    assert!(!q_cyclic_defect(&b, &QCyclicParams::symbolic(0)).unwrap().is_zero);
}

#[test]
fn binomial_defect_examples() {
    assert!(q_binomial_cyclic_defect(0, 0, QMode::Integer { r: 0, s: 0, t: 0 }).unwrap().is_zero());
    assert!(q_binomial_cyclic_defect(1, 0, QMode::Integer { r: 1, s: 0, t: 0 }).unwrap().is_zero());

    let got = q_binomial_cyclic_defect(1, 0, QMode::Symbolic).unwrap();
    let ctx = symbolic_ctx();
    let v = |n| RationalFunction::var(&ctx, n).unwrap();
    let one = RationalFunction::from_rational(&ctx, &Rational::one());
    let tau = &v("q") / &(&v("rho") * &v("sigma"));
    let qi = |u: &RationalFunction| &(&one - u) / &(&one - &v("q"));
    // k = 0: [a]_q * 1 * gauss(b, 1) with gauss(u, 1) = [u]_q
    let expected = &(&(&qi(&v("rho")) * &qi(&tau)) + &(&qi(&v("sigma")) * &qi(&v("rho")))) + &(&qi(&tau) * &qi(&v("sigma")));
    assert_eq!(got, expected);
    assert!(q_binomial_cyclic_defect(1, 2, QMode::Symbolic).is_err());
}

#[test]
fn gaussian_symmetry() {
    for m in 0..=10i64 {
        for k in 0..=m as usize {
            assert_eq!(gaussian_binomial(&QUpper::Int(m), k), gaussian_binomial(&QUpper::Int(m), m as usize - k));
            assert!(gaussian_binomial(&QUpper::Int(m), k).is_polynomial());
        }
    }
}

#[test]
fn symbolic_specializes_to_integer_mode() {
    for kind in [QKind::Bernoulli, QKind::Euler] {
        let table = q_family_polynomials(kind, 4);
        for n in 0..=4u32 {
            let sym = QCyclicParams::symbolic(n as usize);
            let sym_brackets: Vec<QPoly> = [(Slot::S, Slot::T), (Slot::T, Slot::R), (Slot::R, Slot::S)]
                .iter()
                .map(|&(a, b)| q_bracket(&table, &sym, a, b).unwrap())
                .collect();
            for rr in 0..=n {
                for ss in 0..=n - rr {
                    let int = QCyclicParams::integer(n as usize, rr, ss, n - rr - ss).unwrap();
                    for (i, &(a, b)) in [(Slot::S, Slot::T), (Slot::T, Slot::R), (Slot::R, Slot::S)].iter().enumerate() {
                        let direct = q_bracket(&table, &int, a, b).unwrap();
                        assert_eq!(specialize(&sym_brackets[i], rr, ss).unwrap(), direct, "{kind} n={n} r={rr} s={ss}");
                    }
                }
            }
        }
    }
}

#[test]
fn q_euler_bracket_degenerates_to_classical() {
    let table = q_family_polynomials(QKind::Euler, 4);
    let classical = family_polynomials(&AppellFamily::euler(), 4).unwrap();
    for n in 0..=4u32 {
        for s in 0..=n {
            let t = n - s;
            let p = QCyclicParams::integer(n as usize, 0, s, t).unwrap();
            let lim = limit_at_one_poly(&q_bracket(&table, &p, Slot::S, Slot::T).unwrap()).unwrap();
            let bp = BracketParams::new(
                n as usize,
                Arg::Value(Rational::from(s as i64)),
                Arg::Value(Rational::from(t as i64)),
                Arg::sym("x"),
                Arg::sym("y"),
            )
            .unwrap();
            assert_eq!(lim, bracket(&classical, &bp).unwrap(), "n={n} s={s}");
        }
    }
}

#[test]
fn sampled_mode_agrees_with_symbolic() {
    let table = q_family_polynomials(QKind::Euler, 2);
    let a = q_cyclic_defect_sampled(&table, 2, 42, 3).unwrap();
    assert_eq!(a.samples.len(), MIN_SAMPLES);
    assert_eq!(a, q_cyclic_defect_sampled(&table, 2, 42, 3).unwrap());

    let sym = q_cyclic_sum(&table, &QCyclicParams::symbolic(2)).unwrap();
    for rep in &a.samples {
        let vals: Vec<Rational> = rep.params.split(',').skip(1).map(|kv| kv.split('=').nth(1).unwrap().parse().unwrap()).collect();
        let expected = eval_qpoly(&sym, &vals[..3], &vals[3..]);
        assert_eq!(rep.residual.to_string(), expected.to_string());
    }
    assert!(!a.is_zero());
}
