use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use super::{poly_gcd, ExactError, MultiPoly, PolyCtx, Rational, Ring};

/// Quotient of two polynomials in a declared variable list, kept in a unique
/// reduced form: numerator and denominator coprime, denominator monic in the
/// graded-lex order. Zero is `0/1`.
#[derive(Clone, PartialEq, Debug)]
pub struct RationalFunction {
    num: MultiPoly,
    den: MultiPoly,
}

impl RationalFunction {
    pub fn new(num: MultiPoly, den: MultiPoly) -> Result<Self, ExactError> {
        if den.is_zero() {
            return Err(ExactError::ZeroDenominator);
        }
        if num.ctx() != den.ctx() {
            return Err(ExactError::VariableMismatch {
                left: num.vars().join(","),
                right: den.vars().join(","),
            });
        }
        Ok(Self::reduced(num, den))
    }

    pub fn from_poly(p: MultiPoly) -> Self {
        let one = MultiPoly::one(p.ctx());
        RationalFunction { num: p, den: one }
    }

    pub fn zero(ctx: &PolyCtx) -> Self {
        Self::from_poly(MultiPoly::zero(ctx))
    }

    pub fn from_rational(ctx: &PolyCtx, r: &Rational) -> Self {
        Self::from_poly(MultiPoly::from_rational(ctx, r))
    }

    pub fn var(ctx: &PolyCtx, name: &str) -> Result<Self, ExactError> {
        MultiPoly::var(ctx, name).map(Self::from_poly)
    }

    /// `v^e` for a possibly negative exponent.
    pub fn var_pow(ctx: &PolyCtx, name: &str, e: i64) -> Result<Self, ExactError> {
        let v = MultiPoly::var(ctx, name)?;
        let p = v.pow(e.unsigned_abs() as u32);
        Ok(if e >= 0 {
            Self::from_poly(p)
        } else {
            RationalFunction { num: MultiPoly::one(ctx), den: p }
        })
    }

    fn reduced(num: MultiPoly, den: MultiPoly) -> Self {
        if num.is_zero() {
            let one = MultiPoly::one(den.ctx());
            return RationalFunction { num, den: one };
        }
        let (mut num, mut den) = if den.is_constant() {
            (num, den)
        } else {
            let g = poly_gcd(&num, &den);
            if g.is_constant() {
                (num, den)
            } else {
                (num.exact_div(&g).expect("gcd divides"), den.exact_div(&g).expect("gcd divides"))
            }
        };
        let lc = den.leading_term().map(|(_, c)| c.clone()).expect("nonzero denominator");
        if !lc.is_one() {
            let inv = lc.recip().expect("nonzero");
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        RationalFunction { num, den }
    }

    /// Canonical form; idempotent.
    pub fn reduce(&self) -> Self {
        Self::reduced(self.num.clone(), self.den.clone())
    }

    pub fn numer(&self) -> &MultiPoly {
        &self.num
    }

    pub fn denom(&self) -> &MultiPoly {
        &self.den
    }

    pub fn poly_ctx(&self) -> &PolyCtx {
        self.num.ctx()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    pub fn as_polynomial(&self) -> Option<MultiPoly> {
        self.is_polynomial().then(|| self.num.clone())
    }

    pub fn as_constant(&self) -> Option<Rational> {
        if self.den.is_constant() {
            self.num.as_constant()
        } else {
            None
        }
    }

    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(Self::reduced(self.den.clone(), self.num.clone()))
        }
    }

    /// Substitutes rational functions for variables.
    pub fn substitute(&self, target: &PolyCtx, bindings: &[(&str, RationalFunction)]) -> Result<Self, ExactError> {
        let n = eval_poly(&self.num, target, bindings)?;
        let d = eval_poly(&self.den, target, bindings)?;
        if d.is_zero() {
            return Err(ExactError::ZeroDenominator);
        }
        Ok(&n / &d)
    }

    pub fn embed(&self, target: &PolyCtx) -> Result<Self, ExactError> {
        Ok(RationalFunction { num: self.num.embed(target)?, den: self.den.embed(target)? })
    }

    /// Value at `var = 1` of the reduced form. Fails with `PoleAtOne` when the
    /// reduced denominator vanishes identically there.
    pub fn limit_at_one(&self, var: &str) -> Result<Self, ExactError> {
        let ctx = self.poly_ctx();
        if ctx.index_of(var).is_none() {
            return Err(ExactError::UnknownVariable(var.to_string()));
        }
        let reduced = self.reduce();
        let one = MultiPoly::one(ctx);
        let d = reduced.den.substitute(ctx, &[(var, one.clone())])?;
        if d.is_zero() {
            return Err(ExactError::PoleAtOne);
        }
        let n = reduced.num.substitute(ctx, &[(var, one)])?;
        Ok(Self::reduced(n, d))
    }

    /// Evaluates at a rational point (declared-variable order).
    pub fn evaluate(&self, point: &[Rational]) -> Result<Rational, ExactError> {
        let d = self.den.evaluate(point);
        if d.is_zero() {
            return Err(ExactError::ZeroDenominator);
        }
        Ok(self.num.evaluate(point) / d)
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, ExactError> {
        if self.is_zero() {
            return Ok(other.guard_ctx(self)?.clone());
        }
        if other.is_zero() {
            return Ok(self.guard_ctx(other)?.clone());
        }
        if self.den == other.den {
            let num = self.num.checked_add(&other.num)?;
            return Ok(Self::reduced(num, self.den.clone()));
        }
        if self.den.is_constant() && other.den.is_constant() {
            // both polynomial up to the (unit) denominator, which is 1 once reduced
            return Ok(Self::from_poly(self.num.checked_add(&other.num)?));
        }
        let g = poly_gcd(&self.den, &other.den);
        let d1 = self.den.exact_div(&g).expect("gcd divides");
        let d2 = other.den.exact_div(&g).expect("gcd divides");
        let num = (&self.num * &d2).checked_add(&(&other.num * &d1))?;
        let den = &d1 * &other.den;
        Ok(Self::reduced(num, den))
    }

    fn guard_ctx(&self, other: &Self) -> Result<&Self, ExactError> {
        if self.poly_ctx() == other.poly_ctx() {
            Ok(self)
        } else {
            Err(ExactError::VariableMismatch {
                left: self.num.vars().join(","),
                right: other.num.vars().join(","),
            })
        }
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, ExactError> {
        self.guard_ctx(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.poly_ctx()));
        }
        if self.den.is_constant() && other.den.is_constant() {
            return Ok(Self::from_poly(&self.num * &other.num));
        }
        let g1 = poly_gcd(&self.num, &other.den);
        let g2 = poly_gcd(&other.num, &self.den);
        let n1 = self.num.exact_div(&g1).expect("gcd divides");
        let d2 = other.den.exact_div(&g1).expect("gcd divides");
        let n2 = other.num.exact_div(&g2).expect("gcd divides");
        let d1 = self.den.exact_div(&g2).expect("gcd divides");
        let num = &n1 * &n2;
        let den = &d1 * &d2;
        let lc = den.leading_term().map(|(_, c)| c.clone()).expect("nonzero");
        let inv = lc.recip().expect("nonzero");
        Ok(RationalFunction { num: num.scale(&inv), den: den.scale(&inv) })
    }
}

fn eval_poly(p: &MultiPoly, target: &PolyCtx, bindings: &[(&str, RationalFunction)]) -> Result<RationalFunction, ExactError> {
    let mut images = Vec::with_capacity(p.ctx().nvars());
    for (i, name) in p.vars().iter().enumerate() {
        let img = match bindings.iter().find(|(n, _)| n == name) {
            Some((_, f)) => {
                if f.poly_ctx() != target {
                    return Err(ExactError::VariableMismatch {
                        left: f.num.vars().join(","),
                        right: target.vars().join(","),
                    });
                }
                f.clone()
            }
            None if p.involves(i) => RationalFunction::var(target, name)?,
            None => RationalFunction::zero(target),
        };
        images.push(img);
    }
    let mut acc = RationalFunction::zero(target);
    for (m, c) in p.terms() {
        let mut t = RationalFunction::from_rational(target, c);
        for (img, &e) in images.iter().zip(m.exps()) {
            if e > 0 {
                t = &t * &Ring::pow(img, e);
            }
        }
        acc = &acc + &t;
    }
    Ok(acc)
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_constant() {
            return write!(f, "{}", self.num);
        }
        let num = if self.num.len() > 1 { format!("({})", self.num) } else { self.num.to_string() };
        let den = self.den.to_string();
        if self.den.len() > 1 || den.contains('*') {
            write!(f, "{num}/({den})")
        } else {
            write!(f, "{num}/{den}")
        }
    }
}

impl Ring for RationalFunction {
    type Ctx = PolyCtx;

    fn ctx(&self) -> PolyCtx {
        self.poly_ctx().clone()
    }

    fn zero_in(ctx: &PolyCtx) -> Self {
        RationalFunction::zero(ctx)
    }

    fn from_rational_in(ctx: &PolyCtx, r: &Rational) -> Self {
        RationalFunction::from_rational(ctx, r)
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn plus(&self, other: &Self) -> Self {
        self + other
    }

    fn minus(&self, other: &Self) -> Self {
        self - other
    }

    fn times(&self, other: &Self) -> Self {
        self * other
    }

    fn negated(&self) -> Self {
        RationalFunction { num: -&self.num, den: self.den.clone() }
    }

    fn scaled(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return RationalFunction::zero(self.poly_ctx());
        }
        RationalFunction { num: self.num.scale(r), den: self.den.clone() }
    }

    fn try_inverse(&self) -> Option<Self> {
        self.inverse()
    }

    fn as_rational(&self) -> Option<Rational> {
        self.as_constant()
    }

    fn is_atomic(&self) -> bool {
        self.den.is_constant() && self.num.is_atomic()
    }
}

impl<'b> Add<&'b RationalFunction> for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &'b RationalFunction) -> RationalFunction {
        self.checked_add(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl<'b> Sub<&'b RationalFunction> for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &'b RationalFunction) -> RationalFunction {
        self + &rhs.negated()
    }
}

impl<'b> Mul<&'b RationalFunction> for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &'b RationalFunction) -> RationalFunction {
        self.checked_mul(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl<'b> Div<&'b RationalFunction> for &RationalFunction {
    type Output = RationalFunction;
    fn div(self, rhs: &'b RationalFunction) -> RationalFunction {
        let inv = rhs.inverse().expect("division by the zero rational function");
        self * &inv
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        self.negated()
    }
}
