//! Greatest common divisors in `Q[x_1, ..., x_n]`.
//!
//! Recursive primitive polynomial remainder sequences: a polynomial is viewed
//! as univariate in one shared variable with coefficients in the ring of the
//! remaining variables, contents are handled recursively, and primitive parts
//! are carried through the pseudo-remainder sequence. Results are monic in the
//! graded-lex order.

use super::{Monomial, MultiPoly, Rational};

pub fn poly_gcd(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    let ctx = a.ctx();
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return MultiPoly::one(ctx);
    }
    if a.len() == 1 || b.len() == 1 {
        return monomial_gcd(a, b);
    }
    if a == b {
        return a.monic();
    }

    let nvars = ctx.nvars();
    let used: Vec<usize> = (0..nvars).filter(|&i| a.involves(i) || b.involves(i)).collect();
    if used.len() == 1 {
        return univariate_gcd(a, b);
    }
    let (small, large) = if b.len() <= a.len() { (b, a) } else { (a, b) };
    let common = (0..nvars)
        .filter(|&i| a.involves(i) && b.involves(i))
        .min_by_key(|&i| (small.degree_in(i).unwrap_or(0), large.degree_in(i).unwrap_or(0)));
    let Some(v) = common else {
        return MultiPoly::one(ctx);
    };

    // a variable present on one side only: every common divisor is free of it
    if let Some(w) = used.iter().copied().find(|&i| a.involves(i) != b.involves(i)) {
        return if a.involves(w) {
            poly_gcd(&content_in(a, w), b)
        } else {
            poly_gcd(a, &content_in(b, w))
        };
    }

    // cheap exact-division shortcut, common for denominators built from products
    if small.degree_in(v) <= large.degree_in(v) && large.exact_div(small).is_some() {
        return small.monic();
    }

    // Only the small side is made primitive. gcd(cont a, cont b) is folded
    // from the coefficients of the large side, and gcd(pp a, pp b) equals
    // gcd(large, pp small) since pp small has no v-free factor.
    let cs = content_in(small, v);
    let ps = small.exact_div(&cs).expect("content divides");
    let mut c = cs;
    for coeff in large.coeffs_in(v) {
        if c.is_constant() {
            break;
        }
        if !coeff.is_zero() {
            c = poly_gcd(&c, &coeff);
        }
    }
    if large.degree_in(v) >= ps.degree_in(v) {
        // one pseudo-division brings the large side down below ps in v; the
        // rest is a gcd of two small polynomials
        let r = pseudo_remainder(large, &ps, v);
        let g = if r.is_zero() { ps.monic() } else { poly_gcd(&ps, &r) };
        return (&c * &g).monic();
    }
    let (mut pa, mut pb) = (ps, primitive_in(large, v));
    if pa.degree_in(v) < pb.degree_in(v) {
        std::mem::swap(&mut pa, &mut pb);
    }
    let g = loop {
        let r = pseudo_remainder(&pa, &pb, v);
        if r.is_zero() {
            break pb;
        }
        if r.degree_in(v) == Some(0) {
            break MultiPoly::one(ctx);
        }
        pa = pb;
        pb = primitive_in(&r, v);
    };
    (&c * &primitive_in(&g, v)).monic()
}

fn monomial_gcd(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    let ctx = a.ctx();
    let mut g: Option<Monomial> = None;
    for (m, _) in a.terms().chain(b.terms()) {
        g = Some(match g {
            None => m.clone(),
            Some(g) => g.gcd(m),
        });
    }
    MultiPoly::monomial(ctx, g.unwrap_or_else(|| Monomial::one(ctx.nvars())), Rational::one())
}

fn univariate_gcd(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    let mut x = a.monic();
    let mut y = b.monic();
    while !y.is_zero() {
        let (_, r) = x.div_rem(&y).expect("nonzero divisor over a field");
        x = y;
        y = r.monic();
    }
    x.monic()
}

/// Gcd of the coefficients of `p` viewed as a polynomial in variable `v`.
pub fn content_in(p: &MultiPoly, v: usize) -> MultiPoly {
    let mut coeffs: Vec<MultiPoly> = p.coeffs_in(v).into_iter().filter(|c| !c.is_zero()).collect();
    coeffs.sort_by_key(|c| c.len());
    let mut iter = coeffs.into_iter();
    let Some(first) = iter.next() else {
        return MultiPoly::one(p.ctx());
    };
    let mut g = first.monic();
    for c in iter {
        if g.is_constant() {
            break;
        }
        g = poly_gcd(&g, &c);
    }
    if g.is_constant() {
        MultiPoly::one(p.ctx())
    } else {
        g
    }
}

fn primitive_in(p: &MultiPoly, v: usize) -> MultiPoly {
    let c = content_in(p, v);
    p.exact_div(&c).expect("content divides").monic()
}

/// `lc(b)^e * a mod b` in the variable `v`, for a suitable `e`.
fn pseudo_remainder(a: &MultiPoly, b: &MultiPoly, v: usize) -> MultiPoly {
    let ctx = a.ctx();
    let db = b.degree_in(v).unwrap_or(0);
    let lcb = b.leading_coeff_in(v);
    let lcb_inv = lcb.as_constant().and_then(|c| c.recip());
    let mut r = a.clone();
    while !r.is_zero() {
        let dr = r.degree_in(v).unwrap_or(0);
        if dr < db {
            break;
        }
        let lcr = r.leading_coeff_in(v);
        let shift = MultiPoly::monomial(ctx, Monomial::var(ctx.nvars(), v, dr - db), Rational::one());
        r = match &lcb_inv {
            Some(inv) => &r - &(&(&lcr * &shift) * b).scale(inv),
            None => &(&lcb * &r) - &(&(&lcr * &shift) * b),
        };
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::PolyCtx;

    fn parse(ctx: &PolyCtx, terms: &[(&[u32], i64)]) -> MultiPoly {
        MultiPoly::from_terms(ctx, terms.iter().map(|(e, c)| (e.to_vec(), Rational::from(*c))))
    }

    #[test]
    fn univariate_q_integer() {
        let ctx = PolyCtx::new(&["q"]);
        let a = parse(&ctx, &[(&[3], -1), (&[0], 1)]); // 1 - q^3
        let b = parse(&ctx, &[(&[2], -1), (&[0], 1)]); // 1 - q^2
        let g = poly_gcd(&a, &b);
        assert_eq!(g, parse(&ctx, &[(&[1], 1), (&[0], -1)]));
    }

    #[test]
    fn multivariate_common_factor() {
        let ctx = PolyCtx::new(&["x", "y", "z"]);
        let f = parse(&ctx, &[(&[1, 1, 0], 1), (&[0, 0, 1], 2), (&[0, 0, 0], 1)]); // xy + 2z + 1
        let g1 = parse(&ctx, &[(&[2, 0, 0], 1), (&[0, 1, 0], -3)]); // x^2 - 3y
        let g2 = parse(&ctx, &[(&[0, 0, 2], 1), (&[1, 0, 0], 1), (&[0, 0, 0], 5)]); // z^2 + x + 5
        let a = &f * &g1;
        let b = &f * &g2;
        assert_eq!(poly_gcd(&a, &b), f.monic());
        assert!(poly_gcd(&g1, &g2).is_constant());
    }

    #[test]
    fn monomials_and_constants() {
        let ctx = PolyCtx::new(&["x", "y"]);
        let a = parse(&ctx, &[(&[2, 1], 3)]);
        let b = parse(&ctx, &[(&[1, 3], 1), (&[3, 2], 1)]);
        assert_eq!(poly_gcd(&a, &b), parse(&ctx, &[(&[1, 1], 1)]));
        assert!(poly_gcd(&a, &MultiPoly::from_rational(&ctx, &Rational::from(4))).is_constant());
    }
}
