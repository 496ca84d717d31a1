use std::fmt;

use super::{ExactError, Rational, Ring};

/// Power series in a formal variable `w`, exact modulo `w^order`.
#[derive(Clone, PartialEq, Debug)]
pub struct TruncatedSeries<R: Ring> {
    ctx: R::Ctx,
    coeffs: Vec<R>,
}

impl<R: Ring> TruncatedSeries<R> {
    /// Coefficients `c_0..c_{N-1}`; the order is the length.
    pub fn new(ctx: &R::Ctx, coeffs: Vec<R>) -> Self {
        TruncatedSeries { ctx: ctx.clone(), coeffs }
    }

    pub fn constant(ctx: &R::Ctx, c: R, order: usize) -> Self {
        let mut coeffs = vec![R::zero_in(ctx); order];
        if order > 0 {
            coeffs[0] = c;
        }
        Self::new(ctx, coeffs)
    }

    pub fn one(ctx: &R::Ctx, order: usize) -> Self {
        Self::constant(ctx, R::one_in(ctx), order)
    }

    /// `sum_m (c w)^m / m!`, the formal exponential of a scaled variable.
    pub fn exp_linear(ctx: &R::Ctx, c: &R, order: usize) -> Self {
        let mut coeffs = Vec::with_capacity(order);
        let mut term = R::one_in(ctx);
        for m in 0..order {
            if m > 0 {
                term = term.times(c).scaled(&Rational::frac(1, m as i64));
            }
            coeffs.push(term.clone());
        }
        Self::new(ctx, coeffs)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> Option<&R> {
        self.coeffs.get(n)
    }

    pub fn ring_ctx(&self) -> &R::Ctx {
        &self.ctx
    }

    pub fn truncate(&self, order: usize) -> Self {
        let mut s = self.clone();
        s.coeffs.truncate(order);
        s
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&R, &R) -> R) -> Self {
        let n = self.order().min(other.order());
        Self::new(&self.ctx, (0..n).map(|i| f(&self.coeffs[i], &other.coeffs[i])).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a.plus(b))
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a.minus(b))
    }

    /// Cauchy product; the order is the minimum of the operand orders.
    pub fn mul(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        let mut out = vec![R::zero_in(&self.ctx); n];
        for (i, a) in self.coeffs.iter().take(n).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().take(n - i).enumerate() {
                if !b.is_zero() {
                    out[i + j] = out[i + j].plus(&a.times(b));
                }
            }
        }
        Self::new(&self.ctx, out)
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Self::new(&self.ctx, self.coeffs.iter().map(|c| c.scaled(r)).collect())
    }

    pub fn scale_by(&self, c: &R) -> Self {
        Self::new(&self.ctx, self.coeffs.iter().map(|a| a.times(c)).collect())
    }

    /// Multiplicative inverse modulo `w^order`; needs a unit constant term.
    pub fn invert(&self) -> Result<Self, ExactError> {
        let n = self.order();
        if n == 0 {
            return Ok(self.clone());
        }
        let c0_inv = self.coeffs[0].try_inverse().ok_or(ExactError::NonInvertibleConstantTerm)?;
        let mut out: Vec<R> = Vec::with_capacity(n);
        out.push(c0_inv.clone());
        for k in 1..n {
            let mut acc = R::zero_in(&self.ctx);
            for j in 1..=k {
                if !self.coeffs[j].is_zero() {
                    acc = acc.plus(&self.coeffs[j].times(&out[k - j]));
                }
            }
            out.push(acc.times(&c0_inv).negated());
        }
        Ok(Self::new(&self.ctx, out))
    }

    /// `exp(self)` for a series with zero constant term, via `n f_n = sum k g_k f_{n-k}`.
    pub fn exp(&self) -> Result<Self, ExactError> {
        let n = self.order();
        if n > 0 && !self.coeffs[0].is_zero() {
            return Err(ExactError::NonzeroConstantTerm);
        }
        let mut out: Vec<R> = Vec::with_capacity(n);
        if n == 0 {
            return Ok(self.clone());
        }
        out.push(R::one_in(&self.ctx));
        for m in 1..n {
            let mut acc = R::zero_in(&self.ctx);
            for k in 1..=m {
                if !self.coeffs[k].is_zero() {
                    acc = acc.plus(&self.coeffs[k].times(&out[m - k]).scaled(&Rational::from(k as i64)));
                }
            }
            out.push(acc.scaled(&Rational::frac(1, m as i64)));
        }
        Ok(Self::new(&self.ctx, out))
    }

    /// Divides by `w`, dropping one order of precision. Needs `c_0 = 0`.
    pub fn div_w(&self) -> Result<Self, ExactError> {
        match self.coeffs.first() {
            Some(c) if !c.is_zero() => Err(ExactError::NonzeroConstantTerm),
            Some(_) => Ok(Self::new(&self.ctx, self.coeffs[1..].to_vec())),
            None => Ok(self.clone()),
        }
    }

    /// Multiplies by `w`, gaining one order.
    pub fn mul_w(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.order() + 1);
        coeffs.push(R::zero_in(&self.ctx));
        coeffs.extend(self.coeffs.iter().cloned());
        Self::new(&self.ctx, coeffs)
    }

    pub fn map<S: Ring>(&self, ctx: &S::Ctx, f: impl Fn(&R) -> S) -> TruncatedSeries<S> {
        TruncatedSeries::new(ctx, self.coeffs.iter().map(f).collect())
    }
}

impl<R: Ring> fmt::Display for TruncatedSeries<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            let c = if c.is_atomic() { c.to_string() } else { format!("({c})") };
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*w")?,
                _ => write!(f, "{c}*w^{i}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O(w^{})", self.order())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(coeffs: &[(i64, i64)]) -> TruncatedSeries<Rational> {
        TruncatedSeries::new(&(), coeffs.iter().map(|&(n, d)| Rational::frac(n, d)).collect())
    }

    #[test]
    fn geometric_inverse() {
        let a = rat(&[(1, 1), (-1, 1), (0, 1), (0, 1)]);
        assert_eq!(a.invert().unwrap(), rat(&[(1, 1), (1, 1), (1, 1), (1, 1)]));
        assert_eq!(rat(&[(1, 1), (0, 1), (0, 1)]).invert().unwrap(), rat(&[(1, 1), (0, 1), (0, 1)]));
        assert_eq!(rat(&[(0, 1), (1, 1)]).invert(), Err(ExactError::NonInvertibleConstantTerm));
    }

    #[test]
    fn exp_roundtrip() {
        let e = TruncatedSeries::exp_linear(&(), &Rational::from(1), 6);
        let g = rat(&[(0, 1), (1, 1), (0, 1), (0, 1), (0, 1), (0, 1)]);
        assert_eq!(g.exp().unwrap(), e);
    }

    #[test]
    fn order_is_minimum() {
        let a = rat(&[(1, 1), (2, 1), (3, 1)]);
        let b = rat(&[(1, 1), (1, 1)]);
        assert_eq!(a.mul(&b).order(), 2);
        assert_eq!(a.add(&b).order(), 2);
    }
}
