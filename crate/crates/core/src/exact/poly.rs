use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use super::{ExactError, Rational, Ring};

/// Exponent vector over a declared variable list.
///
/// Ordered graded-lexicographically: total degree first, then the exponent of
/// the first declared variable, and so on.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    degree: u32,
    exps: Vec<u32>,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial { degree: 0, exps: vec![0; nvars] }
    }

    pub fn new(exps: Vec<u32>) -> Self {
        Monomial { degree: exps.iter().sum(), exps }
    }

    pub fn var(nvars: usize, idx: usize, exp: u32) -> Self {
        let mut exps = vec![0; nvars];
        exps[idx] = exp;
        Monomial::new(exps)
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial {
            degree: self.degree + other.degree,
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        Monomial {
            degree: other.degree - self.degree,
            exps: other.exps.iter().zip(&self.exps).map(|(b, a)| b - a).collect(),
        }
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial::new(self.exps.iter().zip(&other.exps).map(|(a, b)| *a.min(b)).collect())
    }

    fn without(&self, idx: usize) -> Monomial {
        let mut exps = self.exps.clone();
        exps[idx] = 0;
        Monomial::new(exps)
    }

    fn render(&self, vars: &[String]) -> String {
        let mut parts = Vec::new();
        for (name, &e) in vars.iter().zip(&self.exps) {
            match e {
                0 => {}
                1 => parts.push(name.clone()),
                _ => parts.push(format!("{name}^{e}")),
            }
        }
        parts.join("*")
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.exps)
    }
}

/// Polynomial ring context: the ordered variable list plus the coefficient
/// ring's own context.
#[derive(Clone, Debug)]
pub struct PolyCtx<C: Ring = Rational> {
    vars: Arc<Vec<String>>,
    coeff: C::Ctx,
}

impl<C: Ring> PartialEq for PolyCtx<C> {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.vars, &other.vars) || self.vars == other.vars) && self.coeff == other.coeff
    }
}

impl PolyCtx<Rational> {
    pub fn new(vars: &[&str]) -> Self {
        PolyCtx::with_coeff(vars, ())
    }
}

impl<C: Ring> PolyCtx<C> {
    pub fn with_coeff(vars: &[&str], coeff: C::Ctx) -> Self {
        PolyCtx { vars: Arc::new(vars.iter().map(|s| s.to_string()).collect()), coeff }
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn coeff_ctx(&self) -> &C::Ctx {
        &self.coeff
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }
}

/// Sparse multivariate polynomial with coefficients in `C`.
///
/// Zero coefficients are never stored, so structural equality is equality of
/// values.
#[derive(Clone, Debug)]
pub struct MultiPoly<C: Ring = Rational> {
    ctx: PolyCtx<C>,
    terms: BTreeMap<Monomial, C>,
}

impl<C: Ring> PartialEq for MultiPoly<C> {
    fn eq(&self, other: &Self) -> bool {
        self.ctx == other.ctx && self.terms == other.terms
    }
}

impl<C: Ring> MultiPoly<C> {
    pub fn zero(ctx: &PolyCtx<C>) -> Self {
        MultiPoly { ctx: ctx.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(ctx: &PolyCtx<C>, c: C) -> Self {
        Self::monomial(ctx, Monomial::one(ctx.nvars()), c)
    }

    pub fn from_rational(ctx: &PolyCtx<C>, r: &Rational) -> Self {
        Self::constant(ctx, C::from_rational_in(&ctx.coeff, r))
    }

    pub fn one(ctx: &PolyCtx<C>) -> Self {
        Self::from_rational(ctx, &Rational::one())
    }

    pub fn monomial(ctx: &PolyCtx<C>, mono: Monomial, c: C) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(mono, c);
        }
        MultiPoly { ctx: ctx.clone(), terms }
    }

    pub fn var(ctx: &PolyCtx<C>, name: &str) -> Result<Self, ExactError> {
        let idx = ctx.index_of(name).ok_or_else(|| ExactError::UnknownVariable(name.to_string()))?;
        Ok(Self::var_at(ctx, idx))
    }

    pub fn var_at(ctx: &PolyCtx<C>, idx: usize) -> Self {
        Self::monomial(ctx, Monomial::var(ctx.nvars(), idx, 1), C::one_in(&ctx.coeff))
    }

    /// Builds from `(exponents, coefficient)` pairs, combining duplicates.
    pub fn from_terms(ctx: &PolyCtx<C>, terms: impl IntoIterator<Item = (Vec<u32>, C)>) -> Self {
        let mut p = Self::zero(ctx);
        for (exps, c) in terms {
            assert_eq!(exps.len(), ctx.nvars(), "exponent vector length");
            p.add_term(Monomial::new(exps), &c);
        }
        p
    }

    pub fn ctx(&self) -> &PolyCtx<C> {
        &self.ctx
    }

    pub fn vars(&self) -> &[String] {
        self.ctx.vars()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending canonical order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &C)> {
        self.terms.iter()
    }

    pub fn coeff(&self, mono: &Monomial) -> C {
        self.terms.get(mono).cloned().unwrap_or_else(|| C::zero_in(&self.ctx.coeff))
    }

    pub fn coeff_of(&self, exps: &[u32]) -> C {
        self.coeff(&Monomial::new(exps.to_vec()))
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &C)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.leading_term().map(|(m, _)| m.degree())
    }

    pub fn degree_in(&self, idx: usize) -> Option<u32> {
        self.terms.keys().map(|m| m.exps[idx]).max()
    }

    /// Maximum over terms of the summed exponents of the listed variables.
    pub fn degree_in_vars(&self, idxs: &[usize]) -> Option<u32> {
        self.terms.keys().map(|m| idxs.iter().map(|&i| m.exps[i]).sum()).max()
    }

    pub fn involves(&self, idx: usize) -> bool {
        self.terms.keys().any(|m| m.exps[idx] > 0)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_one())
    }

    pub fn constant_term(&self) -> C {
        self.coeff(&Monomial::one(self.ctx.nvars()))
    }

    pub fn as_constant(&self) -> Option<C> {
        self.is_constant().then(|| self.constant_term())
    }

    fn add_term(&mut self, mono: Monomial, c: &C) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&mono) {
            Some(existing) => {
                let sum = existing.plus(c);
                if sum.is_zero() {
                    self.terms.remove(&mono);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(mono, c.clone());
            }
        }
    }

    fn check_ctx(&self, other: &Self) -> Result<(), ExactError> {
        if self.ctx == other.ctx {
            Ok(())
        } else {
            Err(ExactError::VariableMismatch {
                left: self.ctx.vars().join(","),
                right: other.ctx.vars().join(","),
            })
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, ExactError> {
        self.check_ctx(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, ExactError> {
        self.check_ctx(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), &c.negated());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, ExactError> {
        self.check_ctx(other)?;
        let mut out = Self::zero(&self.ctx);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), &c1.times(c2));
            }
        }
        Ok(out)
    }

    pub fn mul_term(&self, mono: &Monomial, c: &C) -> Self {
        let mut out = Self::zero(&self.ctx);
        if c.is_zero() {
            return out;
        }
        for (m, d) in &self.terms {
            let prod = d.times(c);
            if !prod.is_zero() {
                out.terms.insert(m.mul(mono), prod);
            }
        }
        out
    }

    pub fn scale(&self, r: &Rational) -> Self {
        self.map_coeffs_same(|c| c.scaled(r))
    }

    pub fn scale_by(&self, c: &C) -> Self {
        self.map_coeffs_same(|d| d.times(c))
    }

    fn map_coeffs_same(&self, f: impl Fn(&C) -> C) -> Self {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let v = f(c);
            if !v.is_zero() {
                terms.insert(m.clone(), v);
            }
        }
        MultiPoly { ctx: self.ctx.clone(), terms }
    }

    /// Applies `f` to every coefficient, landing in a polynomial ring over a
    /// different coefficient ring with the same variables.
    pub fn map_coeffs<D: Ring>(&self, coeff_ctx: &D::Ctx, f: impl Fn(&C) -> D) -> MultiPoly<D> {
        let ctx = PolyCtx { vars: self.ctx.vars.clone(), coeff: coeff_ctx.clone() };
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let v = f(c);
            if !v.is_zero() {
                terms.insert(m.clone(), v);
            }
        }
        MultiPoly { ctx, terms }
    }

    pub fn derivative(&self, idx: usize) -> Self {
        let mut out = Self::zero(&self.ctx);
        for (m, c) in &self.terms {
            let e = m.exps[idx];
            if e == 0 {
                continue;
            }
            let mut exps = m.exps.clone();
            exps[idx] -= 1;
            out.add_term(Monomial::new(exps), &c.scaled(&Rational::from(e as i64)));
        }
        out
    }

    /// Ring homomorphism into `target`: each variable of `self` is sent to its
    /// binding if present, otherwise to the same-named variable of `target`.
    pub fn substitute(&self, target: &PolyCtx<C>, bindings: &[(&str, MultiPoly<C>)]) -> Result<Self, ExactError> {
        let mut images = Vec::with_capacity(self.ctx.nvars());
        for name in self.ctx.vars() {
            let img = match bindings.iter().find(|(n, _)| n == name) {
                Some((_, p)) => {
                    if p.ctx != *target {
                        return Err(ExactError::VariableMismatch {
                            left: p.ctx.vars().join(","),
                            right: target.vars().join(","),
                        });
                    }
                    p.clone()
                }
                None => {
                    if self.involves(images.len()) {
                        MultiPoly::var(target, name)?
                    } else {
                        MultiPoly::zero(target)
                    }
                }
            };
            images.push(img);
        }
        Ok(self.eval_with(target, &images))
    }

    /// Re-homes the polynomial into a ring whose variable list contains every
    /// variable actually used here.
    pub fn embed(&self, target: &PolyCtx<C>) -> Result<Self, ExactError> {
        self.substitute(target, &[])
    }

    fn eval_with(&self, target: &PolyCtx<C>, images: &[MultiPoly<C>]) -> Self {
        let mut cache: Vec<Vec<MultiPoly<C>>> = images.iter().map(|p| vec![MultiPoly::one(target), p.clone()]).collect();
        let mut out = MultiPoly::zero(target);
        for (m, c) in &self.terms {
            let mut term = MultiPoly::constant(target, c.clone());
            for (i, &e) in m.exps.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while cache[i].len() <= e as usize {
                    let next = cache[i].last().unwrap() * &images[i];
                    cache[i].push(next);
                }
                term = &term * &cache[i][e as usize];
            }
            for (m2, c2) in term.terms {
                out.add_term(m2, &c2);
            }
        }
        out
    }

    /// Evaluates at a point given in declared-variable order.
    pub fn evaluate(&self, point: &[C]) -> C {
        assert_eq!(point.len(), self.ctx.nvars(), "point dimension");
        let mut acc = C::zero_in(&self.ctx.coeff);
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, &e) in point.iter().zip(&m.exps) {
                if e > 0 {
                    t = t.times(&v.pow(e));
                }
            }
            acc = acc.plus(&t);
        }
        acc
    }

    /// Coefficients with respect to one variable, indexed by its exponent.
    pub fn coeffs_in(&self, idx: usize) -> Vec<Self> {
        let deg = self.degree_in(idx).unwrap_or(0) as usize;
        let mut out = vec![Self::zero(&self.ctx); deg + 1];
        for (m, c) in &self.terms {
            out[m.exps[idx] as usize].terms.insert(m.without(idx), c.clone());
        }
        out
    }

    pub fn leading_coeff_in(&self, idx: usize) -> Self {
        self.coeffs_in(idx).pop().unwrap_or_else(|| Self::zero(&self.ctx))
    }

    pub fn pow(&self, e: u32) -> Self {
        Ring::pow(self, e)
    }

    /// Multivariate division by leading terms. Requires the leading coefficient
    /// of `d` to be a unit.
    pub fn div_rem(&self, d: &Self) -> Result<(Self, Self), ExactError> {
        self.divide(d, false).map(|(q, r)| (q, r.expect("full division keeps the remainder")))
    }

    /// `Some(self / d)` when the division is exact.
    pub fn exact_div(&self, d: &Self) -> Option<Self> {
        match self.divide(d, true) {
            Ok((q, Some(r))) if r.is_zero() => Some(q),
            _ => None,
        }
    }

    /// Shared division loop. With `stop_early`, gives up (remainder `None`)
    /// at the first leading term not divisible by `lm(d)`: if `d` divides
    /// `p` then `lm(p) = lm(d) lm(p/d)`, and that persists after each step.
    fn divide(&self, d: &Self, stop_early: bool) -> Result<(Self, Option<Self>), ExactError> {
        self.check_ctx(d)?;
        let (lm, lc) = d.leading_term().ok_or(ExactError::DivisionByZero)?;
        let lc_inv = lc.try_inverse().ok_or(ExactError::NonUnitLeadingCoefficient)?;
        let mut q = Self::zero(&self.ctx);
        let mut r = Self::zero(&self.ctx);
        let mut p = self.terms.clone();
        while let Some((pm, pc)) = p.pop_last() {
            if lm.divides(&pm) {
                let tm = lm.quotient_of(&pm);
                let tc = pc.times(&lc_inv);
                // leading terms cancel by construction; subtract the rest in place
                for (m, c) in d.terms.iter().rev().skip(1) {
                    let prod = m.mul(&tm);
                    let delta = c.times(&tc).negated();
                    match p.entry(prod) {
                        std::collections::btree_map::Entry::Occupied(mut e) => {
                            let v = e.get().plus(&delta);
                            if v.is_zero() {
                                e.remove();
                            } else {
                                *e.get_mut() = v;
                            }
                        }
                        std::collections::btree_map::Entry::Vacant(e) => {
                            e.insert(delta);
                        }
                    }
                }
                q.terms.insert(tm, tc);
            } else if stop_early {
                return Ok((q, None));
            } else {
                r.terms.insert(pm, pc);
            }
        }
        Ok((q, Some(r)))
    }

    /// Scales so the leading coefficient is one (when it is a unit).
    pub fn monic(&self) -> Self {
        match self.leading_term().and_then(|(_, c)| c.try_inverse()) {
            Some(inv) => self.scale_by(&inv),
            None => self.clone(),
        }
    }
}

impl<C: Ring> fmt::Display for MultiPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let vars = self.ctx.vars();
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let mono = m.render(vars);
            match c.as_rational() {
                Some(r) => {
                    let neg = r.is_negative();
                    let a = r.abs();
                    let sep = match (i, neg) {
                        (0, true) => "-",
                        (0, false) => "",
                        (_, true) => " - ",
                        (_, false) => " + ",
                    };
                    f.write_str(sep)?;
                    if mono.is_empty() {
                        write!(f, "{a}")?;
                    } else if a.is_one() {
                        f.write_str(&mono)?;
                    } else {
                        write!(f, "{a}*{mono}")?;
                    }
                }
                None => {
                    if i > 0 {
                        f.write_str(" + ")?;
                    }
                    if mono.is_empty() && self.terms.len() == 1 {
                        write!(f, "{c}")?;
                    } else if mono.is_empty() {
                        write!(f, "({c})")?;
                    } else {
                        write!(f, "({c})*{mono}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl<C: Ring> Ring for MultiPoly<C> {
    type Ctx = PolyCtx<C>;

    fn ctx(&self) -> PolyCtx<C> {
        self.ctx.clone()
    }

    fn zero_in(ctx: &PolyCtx<C>) -> Self {
        MultiPoly::zero(ctx)
    }

    fn from_rational_in(ctx: &PolyCtx<C>, r: &Rational) -> Self {
        MultiPoly::from_rational(ctx, r)
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
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
        self.map_coeffs_same(|c| c.negated())
    }

    fn scaled(&self, r: &Rational) -> Self {
        self.scale(r)
    }

    fn try_inverse(&self) -> Option<Self> {
        let c = self.as_constant()?;
        c.try_inverse().map(|inv| MultiPoly::constant(&self.ctx, inv))
    }

    fn as_rational(&self) -> Option<Rational> {
        self.as_constant().and_then(|c| c.as_rational())
    }

    fn is_atomic(&self) -> bool {
        self.as_rational().is_some()
            || (self.terms.len() == 1 && self.terms.values().next().is_some_and(|c| c.is_one()))
    }
}

macro_rules! poly_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl<'a, 'b, C: Ring> $tr<&'b MultiPoly<C>> for &'a MultiPoly<C> {
            type Output = MultiPoly<C>;
            fn $method(self, rhs: &'b MultiPoly<C>) -> MultiPoly<C> {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl<C: Ring> $tr<MultiPoly<C>> for MultiPoly<C> {
            type Output = MultiPoly<C>;
            fn $method(self, rhs: MultiPoly<C>) -> MultiPoly<C> {
                (&self).$method(&rhs)
            }
        }
        impl<'b, C: Ring> $tr<&'b MultiPoly<C>> for MultiPoly<C> {
            type Output = MultiPoly<C>;
            fn $method(self, rhs: &'b MultiPoly<C>) -> MultiPoly<C> {
                (&self).$method(rhs)
            }
        }
        impl<'a, C: Ring> $tr<MultiPoly<C>> for &'a MultiPoly<C> {
            type Output = MultiPoly<C>;
            fn $method(self, rhs: MultiPoly<C>) -> MultiPoly<C> {
                self.$method(&rhs)
            }
        }
    };
}

poly_binop!(Add, add, checked_add);
poly_binop!(Sub, sub, checked_sub);
poly_binop!(Mul, mul, checked_mul);

impl<C: Ring> Neg for MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn neg(self) -> MultiPoly<C> {
        self.negated()
    }
}

impl<C: Ring> Neg for &MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn neg(self) -> MultiPoly<C> {
        self.negated()
    }
}
