use std::fmt;

use super::Rational;

/// A commutative ring with unit containing the rationals.
///
/// Elements carry a context (`Ctx`) describing the ambient ring, e.g. the
/// declared variable list of a polynomial ring; constants are built from a
/// context rather than conjured globally.
pub trait Ring: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync {
    type Ctx: Clone + PartialEq + fmt::Debug + Send + Sync;

    fn ctx(&self) -> Self::Ctx;
    fn zero_in(ctx: &Self::Ctx) -> Self;
    fn from_rational_in(ctx: &Self::Ctx, r: &Rational) -> Self;
    fn is_zero(&self) -> bool;

    fn plus(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn negated(&self) -> Self;
    fn scaled(&self, r: &Rational) -> Self;

    /// Multiplicative inverse when `self` is a unit.
    fn try_inverse(&self) -> Option<Self>;

    /// `Some(c)` when the element is the image of a rational constant.
    fn as_rational(&self) -> Option<Rational>;

    fn one_in(ctx: &Self::Ctx) -> Self {
        Self::from_rational_in(ctx, &Rational::one())
    }

    fn is_one(&self) -> bool {
        self.as_rational().is_some_and(|r| r.is_one())
    }

    fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one_in(&self.ctx());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.times(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.times(&base);
            }
        }
        acc
    }

    /// Whether the rendered form needs parentheses when used as a factor.
    fn is_atomic(&self) -> bool {
        self.as_rational().is_some()
    }
}

impl Ring for Rational {
    type Ctx = ();

    fn ctx(&self) {}

    fn zero_in(_: &()) -> Self {
        Rational::zero()
    }

    fn from_rational_in(_: &(), r: &Rational) -> Self {
        r.clone()
    }

    fn is_zero(&self) -> bool {
        Rational::is_zero(self)
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
        -self
    }

    fn scaled(&self, r: &Rational) -> Self {
        self * r
    }

    fn try_inverse(&self) -> Option<Self> {
        self.recip()
    }

    fn as_rational(&self) -> Option<Rational> {
        Some(self.clone())
    }
}

/// Generalized binomial coefficient `u (u-1) ... (u-k+1) / k!`, meaningful for
/// any ring element `u`.
pub fn generalized_binomial<R: Ring>(u: &R, k: u32) -> R {
    let ctx = u.ctx();
    let mut acc = R::one_in(&ctx);
    let mut kfact = Rational::one();
    for i in 0..k {
        let shifted = u.minus(&R::from_rational_in(&ctx, &Rational::from(i as i64)));
        acc = acc.times(&shifted);
        kfact = kfact * Rational::from((i + 1) as i64);
    }
    acc.scaled(&kfact.recip().expect("k! is nonzero"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_rational_cases() {
        assert_eq!(generalized_binomial(&Rational::frac(1, 2), 1), Rational::frac(1, 2));
        assert_eq!(generalized_binomial(&Rational::from(5), 2), Rational::from(10));
        assert_eq!(generalized_binomial(&Rational::from(3), 5), Rational::zero());
        assert_eq!(generalized_binomial(&Rational::from(-1), 3), Rational::from(-1));
        assert_eq!(generalized_binomial(&Rational::frac(7, 3), 0), Rational::one());
    }

    #[test]
    fn binomial_matches_pascal() {
        let mut row = vec![Rational::one()];
        for m in 0..=12i64 {
            for (k, expect) in row.iter().enumerate() {
                assert_eq!(&generalized_binomial(&Rational::from(m), k as u32), expect);
            }
            let mut next = vec![Rational::one(); row.len() + 1];
            for k in 1..row.len() {
                next[k] = &row[k - 1] + &row[k];
            }
            row = next;
        }
    }

    #[test]
    fn pow_by_squaring() {
        assert_eq!(Rational::frac(-2, 3).pow(5), Rational::frac(-32, 243));
        assert_eq!(Ring::pow(&Rational::from(7), 0), Rational::one());
    }
}
