use cyclic_audit_core::exact::{poly_gcd, RatMatrix};
use cyclic_audit_core::modular::{slash, GL2Mat, PolyMod};
use cyclic_audit_core::{MultiPoly, PolyCtx, Rational, RationalFunction, TruncatedSeries};
use proptest::prelude::*;

fn ctx() -> PolyCtx {
    PolyCtx::new(&["x", "y", "z"])
}

fn rational() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=6).prop_map(|(n, d)| Rational::frac(n, d))
}

fn poly(max_terms: usize) -> impl Strategy<Value = MultiPoly> {
    prop::collection::vec(((0u32..3, 0u32..3, 0u32..2), rational()), 0..max_terms).prop_map(|terms| {
        MultiPoly::from_terms(&ctx(), terms.into_iter().map(|((a, b, c), r)| (vec![a, b, c], r)))
    })
}

fn nonzero_poly(max_terms: usize) -> impl Strategy<Value = MultiPoly> {
    poly(max_terms).prop_filter("nonzero", |p| !p.is_zero())
}

fn point() -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec(rational(), 3)
}

/// Small unimodular matrices as products of generators.
fn unimodular() -> impl Strategy<Value = GL2Mat> {
    let gens = [GL2Mat::S, GL2Mat::T, GL2Mat::U, GL2Mat::LITERAL_A, GL2Mat::I.neg()];
    prop::collection::vec(0usize..5, 0..5).prop_map(move |idx| idx.iter().fold(GL2Mat::I, |m, &i| m.mul(&gens[i])))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(a in poly(5), b in poly(5), c in poly(5)) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &MultiPoly::one(&ctx()), a.clone());
    }

    #[test]
    fn evaluation_is_a_homomorphism(a in poly(5), b in poly(5), p in point()) {
        prop_assert_eq!((&a * &b).evaluate(&p), &a.evaluate(&p) * &b.evaluate(&p));
        prop_assert_eq!((&a + &b).evaluate(&p), &a.evaluate(&p) + &b.evaluate(&p));
    }

    #[test]
    fn substitution_is_a_homomorphism(a in poly(4), b in poly(4), sx in poly(3), sy in poly(3)) {
        let c = ctx();
        let sub = |p: &MultiPoly| p.substitute(&c, &[("x", sx.clone()), ("y", sy.clone())]).unwrap();
        prop_assert_eq!(sub(&(&a * &b)), &sub(&a) * &sub(&b));
        prop_assert_eq!(sub(&(&a + &b)), &sub(&a) + &sub(&b));
    }

    #[test]
    fn reduce_is_idempotent(n in poly(4), d in nonzero_poly(3), f in nonzero_poly(2)) {
        let rf = RationalFunction::new(&n * &f, &d * &f).unwrap();
        prop_assert_eq!(rf.reduce(), rf.clone());
        prop_assert_eq!(rf.reduce().reduce(), rf.reduce());
        prop_assert_eq!(rf, RationalFunction::new(n, d).unwrap());
    }

    #[test]
    fn gcd_divides_and_catches_common_factors(f in nonzero_poly(3), g in nonzero_poly(3), h in nonzero_poly(3)) {
        let a = &f * &g;
        let b = &f * &h;
        let d = poly_gcd(&a, &b);
        prop_assert!(a.exact_div(&d).is_some());
        prop_assert!(b.exact_div(&d).is_some());
        prop_assert!(d.exact_div(&f.monic()).is_some(), "gcd {} misses {}", d, f);
    }

    #[test]
    fn series_inversion(coeffs in prop::collection::vec(rational(), 1..8), c0 in (1i64..5)) {
        let mut c = coeffs.clone();
        c[0] = Rational::from(c0);
        let s = TruncatedSeries::new(&(), c);
        let inv = s.invert().unwrap();
        prop_assert_eq!(s.mul(&inv), TruncatedSeries::one(&(), s.order()));
    }

    #[test]
    fn slash_is_a_right_action(c in prop::collection::vec(-9i64..=9, 7), g in unimodular(), h in unimodular()) {
        let p = PolyMod::from_ints(6, &c).unwrap();
        let lhs = slash(&slash(&p, &g).unwrap(), &h).unwrap();
        prop_assert_eq!(lhs, slash(&p, &g.mul(&h)).unwrap());
        prop_assert_eq!(slash(&p, &GL2Mat::I.neg()).unwrap(), p);
    }

    #[test]
    fn nullspace_vectors_are_annihilated(rows in prop::collection::vec(prop::collection::vec(rational(), 5), 1..5)) {
        let m = RatMatrix::from_rows(rows);
        let ns = m.nullspace();
        prop_assert_eq!(ns.len() + m.rank(), 5);
        for v in ns {
            prop_assert!(m.apply(&v).iter().all(Rational::is_zero));
        }
    }
}
