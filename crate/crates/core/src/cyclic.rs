//! The bracket `[s, t; x, y]_n^F` and the cyclic defect
//!
//! ```text
//! r [s, t; x, y]_n + s [t, r; y, z]_n + t [r, s; z, x]_n
//! ```
//!
//! with `t = n - r - s` and `z = 1 - x - y` eliminated, so the defect is an
//! unconditional polynomial in `r, s, x, y`. Binomials are always the
//! generalized (falling-factorial) ones; with integer binomials every term
//! dies for nonnegative integers summing to `n` and the identity says nothing.

use std::sync::OnceLock;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::appell::AppellPolynomialTable;
use crate::exact::{generalized_binomial, MultiPoly, PolyCtx, Rational};
use crate::report::DefectReport;

pub const DEFAULT_MAX_N: usize = 16;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum CyclicError {
    #[error("table covers degrees 0..={have} but degree {needed} is required")]
    TableTooShort { needed: usize, have: usize },
    #[error("n = {n} exceeds the configured maximum {max}")]
    DegreeTooLarge { n: usize, max: usize },
    #[error("k = {k} exceeds n = {n}")]
    IndexOutOfRange { n: usize, k: usize },
}

/// One bracket argument: a fixed rational or a named indeterminate.
#[derive(Clone, Debug, PartialEq)]
pub enum Arg {
    Value(Rational),
    Symbol(String),
}

impl Arg {
    pub fn sym(name: &str) -> Self {
        Arg::Symbol(name.to_string())
    }

    fn to_poly(&self, ctx: &PolyCtx) -> MultiPoly {
        match self {
            Arg::Value(v) => MultiPoly::from_rational(ctx, v),
            Arg::Symbol(name) => MultiPoly::var(ctx, name).expect("symbol collected into ctx"),
        }
    }
}

impl From<Rational> for Arg {
    fn from(v: Rational) -> Self {
        Arg::Value(v)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BracketParams {
    pub n: usize,
    pub s_arg: Arg,
    pub t_arg: Arg,
    pub x_arg: Arg,
    pub y_arg: Arg,
}

impl BracketParams {
    pub fn new(n: usize, s_arg: Arg, t_arg: Arg, x_arg: Arg, y_arg: Arg) -> Result<Self, CyclicError> {
        Self::with_max(n, s_arg, t_arg, x_arg, y_arg, DEFAULT_MAX_N)
    }

    pub fn with_max(n: usize, s_arg: Arg, t_arg: Arg, x_arg: Arg, y_arg: Arg, max: usize) -> Result<Self, CyclicError> {
        if n > max {
            return Err(CyclicError::DegreeTooLarge { n, max });
        }
        Ok(BracketParams { n, s_arg, t_arg, x_arg, y_arg })
    }

    /// All four arguments symbolic, named `s, t, x, y`.
    pub fn symbolic(n: usize) -> Result<Self, CyclicError> {
        Self::new(n, Arg::sym("s"), Arg::sym("t"), Arg::sym("x"), Arg::sym("y"))
    }

    /// Polynomial ring over the symbols in argument order, duplicates merged.
    pub fn ctx(&self) -> PolyCtx {
        let mut names: Vec<&str> = Vec::new();
        for a in [&self.s_arg, &self.t_arg, &self.x_arg, &self.y_arg] {
            if let Arg::Symbol(name) = a {
                if !names.contains(&name.as_str()) {
                    names.push(name);
                }
            }
        }
        PolyCtx::new(&names)
    }
}

fn ensure_covers(table: &AppellPolynomialTable, n: usize) -> Result<(), CyclicError> {
    if table.covers(n) {
        Ok(())
    } else {
        Err(CyclicError::TableTooShort { needed: n, have: table.max_degree() })
    }
}

/// `[s, t; x, y]_n = sum_k (-1)^k binom(s, k) binom(t, n-k) F_{n-k}(x) F_k(y)`.
pub fn bracket(table: &AppellPolynomialTable, params: &BracketParams) -> Result<MultiPoly, CyclicError> {
    ensure_covers(table, params.n)?;
    let ctx = params.ctx();
    let p = |a: &Arg| a.to_poly(&ctx);
    let (s, t, x, y) = (p(&params.s_arg), p(&params.t_arg), p(&params.x_arg), p(&params.y_arg));
    Ok(bracket_in(params.n, &Pieces::new(table, params.n, &s, &y), &Pieces::new(table, params.n, &t, &x)))
}

/// Precomputed `binom(u, j)` and `F_j(v)` for `j = 0..=n`, in one ring.
struct Pieces {
    binom: Vec<MultiPoly>,
    family: Vec<MultiPoly>,
}

impl Pieces {
    fn new(table: &AppellPolynomialTable, n: usize, u: &MultiPoly, v: &MultiPoly) -> Self {
        let ctx = u.ctx();
        let binom = (0..=n as u32).map(|k| generalized_binomial(u, k)).collect();
        let family = table.polys()[..=n]
            .iter()
            .map(|f| f.substitute(ctx, &[("x", v.clone())]).expect("argument lives in ctx"))
            .collect();
        Pieces { binom, family }
    }
}

/// `[a, b; u, v]_n` with `first` holding `(a, v)` and `second` `(b, u)`.
fn bracket_in(n: usize, first: &Pieces, second: &Pieces) -> MultiPoly {
    let ctx = first.binom[0].ctx().clone();
    let mut acc = MultiPoly::zero(&ctx);
    for k in 0..=n {
        let weight = &first.binom[k] * &second.binom[n - k];
        if weight.is_zero() {
            continue;
        }
        let values = &second.family[n - k] * &first.family[k];
        let term = &weight * &values;
        acc = if k % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    acc
}

pub fn defect_ctx() -> PolyCtx {
    static CTX: OnceLock<PolyCtx> = OnceLock::new();
    CTX.get_or_init(|| PolyCtx::new(&["r", "s", "x", "y"])).clone()
}

fn cyclic_sum(table: &AppellPolynomialTable, n: usize, r: &MultiPoly, s: &MultiPoly, x: &MultiPoly, y: &MultiPoly) -> MultiPoly {
    let ctx = r.ctx().clone();
    let n_poly = MultiPoly::from_rational(&ctx, &Rational::from(n as i64));
    let t = &(&n_poly - r) - s;
    let z = &(&MultiPoly::one(&ctx) - x) - y;
    let one = |a: &MultiPoly, b: &MultiPoly, u: &MultiPoly, v: &MultiPoly| {
        bracket_in(n, &Pieces::new(table, n, a, v), &Pieces::new(table, n, b, u))
    };
    let b1 = one(s, &t, x, y);
    let b2 = one(&t, r, y, &z);
    let b3 = one(r, s, &z, x);
    &(&(r * &b1) + &(s * &b2)) + &(&t * &b3)
}

/// The exact cyclic defect as a polynomial in `r, s, x, y`.
pub fn cyclic_defect(table: &AppellPolynomialTable, n: usize) -> Result<MultiPoly, CyclicError> {
    ensure_covers(table, n)?;
    let ctx = defect_ctx();
    let v = |name| MultiPoly::var(&ctx, name).expect("declared");
    Ok(cyclic_sum(table, n, &v("r"), &v("s"), &v("x"), &v("y")))
}

/// The cyclic defect at one rational point, computed without forming the
/// symbolic polynomial.
pub fn cyclic_defect_at(table: &AppellPolynomialTable, n: usize, point: [&Rational; 4]) -> Result<Rational, CyclicError> {
    ensure_covers(table, n)?;
    let ctx = PolyCtx::new(&[]);
    let [r, s, x, y] = point.map(|v| MultiPoly::from_rational(&ctx, v));
    Ok(cyclic_sum(table, n, &r, &s, &x, &y).constant_term())
}

pub fn cyclic_defect_report(table: &AppellPolynomialTable, n: usize) -> Result<DefectReport, CyclicError> {
    let d = cyclic_defect(table, n)?;
    Ok(DefectReport::exact(format!("cyclic/{}", table.family().name()), format!("n={n}"), d))
}

/// `[s,t;x,y]_n - (-1)^n [t,s;y,x]_n` as a polynomial in `s, t, x, y`.
pub fn transpose_defect(table: &AppellPolynomialTable, n: usize) -> Result<MultiPoly, CyclicError> {
    let a = bracket(table, &BracketParams::symbolic(n)?)?;
    let swapped = BracketParams::new(n, Arg::sym("t"), Arg::sym("s"), Arg::sym("y"), Arg::sym("x"))?;
    let b = bracket(table, &swapped)?.embed(a.ctx()).expect("same variables");
    Ok(if n.is_multiple_of(2) { &a - &b } else { &a + &b })
}

pub fn transpose_report(table: &AppellPolynomialTable, n: usize) -> Result<DefectReport, CyclicError> {
    let d = transpose_defect(table, n)?;
    Ok(DefectReport::exact(format!("bracket-transpose/{}", table.family().name()), format!("n={n}"), d))
}

fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    Rational::frac(rng.gen_range(-24..=24), rng.gen_range(1..=12))
}

/// Spot checks at `count` seeded random rational points `(r, s, x, y)`.
pub fn cyclic_defect_sampled(table: &AppellPolynomialTable, n: usize, seed: u64, count: usize) -> Result<Vec<DefectReport>, CyclicError> {
    ensure_covers(table, n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        let p: Vec<Rational> = (0..4).map(|_| random_rational(&mut rng)).collect();
        let value = cyclic_defect_at(table, n, [&p[0], &p[1], &p[2], &p[3]])?;
        out.push(DefectReport::exact(
            format!("cyclic-sampled/{}", table.family().name()),
            format!("n={n},r={},s={},x={},y={}", p[0], p[1], p[2], p[3]),
            value,
        ));
    }
    Ok(out)
}

pub fn rs_ctx() -> PolyCtx {
    static CTX: OnceLock<PolyCtx> = OnceLock::new();
    CTX.get_or_init(|| PolyCtx::new(&["r", "s"])).clone()
}

/// `r binom(s,k) binom(t,n-k) + s binom(t,k) binom(r,n-k) + t binom(r,k) binom(s,n-k)`
/// with `t = n - r - s`. Reported as computed, never assumed zero.
pub fn binomial_cyclic_defect(n: usize, k: usize) -> Result<MultiPoly, CyclicError> {
    if k > n {
        return Err(CyclicError::IndexOutOfRange { n, k });
    }
    let ctx = rs_ctx();
    let r = MultiPoly::var(&ctx, "r").expect("declared");
    let s = MultiPoly::var(&ctx, "s").expect("declared");
    let t = &(&MultiPoly::from_rational(&ctx, &Rational::from(n as i64)) - &r) - &s;
    let b = |u: &MultiPoly, j: usize| generalized_binomial(u, j as u32);
    let term = |lead: &MultiPoly, u: &MultiPoly, v: &MultiPoly| &(lead * &b(u, k)) * &b(v, n - k);
    Ok(&(&term(&r, &s, &t) + &term(&s, &t, &r)) + &term(&t, &r, &s))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::appell::{family_polynomials, AppellFamily};

    fn q(n: i64, d: i64) -> Rational {
        Rational::frac(n, d)
    }

    #[test]
    fn bernoulli_bracket_n1() {
        let t = family_polynomials(&AppellFamily::bernoulli(), 1).unwrap();
        let b = bracket(&t, &BracketParams::symbolic(1).unwrap()).unwrap();
        let ctx = PolyCtx::new(&["s", "t", "x", "y"]);
        let v = |n| MultiPoly::var(&ctx, n).unwrap();
        let half = MultiPoly::from_rational(&ctx, &q(1, 2));
        let expected = &(&v("t") * &(&v("x") - &half)) - &(&v("s") * &(&v("y") - &half));
        assert_eq!(b, expected);
    }

    #[test]
    fn n0_bracket_is_f0_squared() {
        let t = family_polynomials(&AppellFamily::euler(), 0).unwrap();
        assert_eq!(bracket(&t, &BracketParams::symbolic(0).unwrap()).unwrap().to_string(), "1");
    }

    #[test]
    fn short_table_is_rejected() {
        let t = family_polynomials(&AppellFamily::euler(), 1).unwrap();
        assert_eq!(cyclic_defect(&t, 2), Err(CyclicError::TableTooShort { needed: 2, have: 1 }));
        assert!(BracketParams::symbolic(17).is_err());
    }

    #[test]
    fn partially_numeric_bracket() {
        let t = family_polynomials(&AppellFamily::bernoulli(), 1).unwrap();
        let p = BracketParams::new(1, q(2, 1).into(), Arg::sym("t"), q(0, 1).into(), Arg::sym("t")).unwrap();
        // t (0 - 1/2) - 2 (t - 1/2) = -5/2 t + 1
        assert_eq!(bracket(&t, &p).unwrap().to_string(), "-5/2*t + 1");
    }

    #[test]
    fn sampled_points_match_spec_values() {
        let t = family_polynomials(&AppellFamily::centered_monomial(), 2).unwrap();
        let (one, zero) = (q(1, 1), q(0, 1));
        assert!(cyclic_defect_at(&t, 2, [&one, &one, &zero, &zero]).unwrap().is_zero());
        assert_eq!(cyclic_defect_at(&t, 2, [&one, &q(1, 2), &zero, &zero]).unwrap(), q(-1, 32));
        let a = cyclic_defect_sampled(&t, 2, 7, 4).unwrap();
        assert_eq!(a, cyclic_defect_sampled(&t, 2, 7, 4).unwrap());
        assert_eq!(a.len(), 4);
    }

    #[test]
    fn binomial_examples() {
        assert_eq!(binomial_cyclic_defect(0, 0).unwrap().to_string(), "0");
        let d = binomial_cyclic_defect(1, 0).unwrap();
        assert_eq!(d.to_string(), "-r^2 - r*s - s^2 + r + s");
        let v = binomial_cyclic_defect(2, 1).unwrap().evaluate(&[q(1, 1), q(1, 2)]);
        assert_eq!(v, q(3, 4));
        assert!(binomial_cyclic_defect(1, 2).is_err());
    }
}
