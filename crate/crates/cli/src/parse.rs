//! Polynomial input grammar.
//!
//! ```text
//! expr        := sign? term (('+' | '-') term)*
//! term        := coefficient ('*'? monomial)? | monomial
//! monomial    := var ('^' nonneg-int)? ('*'? var ('^' nonneg-int)?)*
//! coefficient := int ('/' positive-int)?
//! ```
//!
//! Whitespace is ignored between tokens. `−` (U+2212) is accepted as minus.
//! Offsets in errors count characters from the start of the input.

use cyclic_audit_core::modular::PolyMod;
use cyclic_audit_core::{MultiPoly, PolyCtx, Rational};
use num_bigint::BigInt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("unknown variable `{name}` at offset {offset}")]
    UnknownVariable { name: String, offset: usize },
    #[error("polynomial of degree {degree} does not fit weight {weight}")]
    TooLarge { degree: usize, weight: usize },
}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    ctx: &'a PolyCtx,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn err<T>(&self, message: &str) -> Result<T, ParseError> {
        Err(ParseError::Syntax { offset: self.pos, message: message.into() })
    }

    fn sign(c: char) -> Option<bool> {
        match c {
            '+' => Some(false),
            '-' | '\u{2212}' => Some(true),
            _ => None,
        }
    }

    fn digits(&mut self) -> Option<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return None;
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        Some(s.parse().expect("ascii digits"))
    }

    fn expr(&mut self) -> Result<MultiPoly, ParseError> {
        if self.peek().is_none() {
            return self.err("empty input");
        }
        let mut acc = MultiPoly::zero(self.ctx);
        let mut negate = match self.peek().and_then(Self::sign) {
            Some(neg) => {
                self.pos += 1;
                neg
            }
            None => false,
        };
        loop {
            let t = self.term()?;
            acc = if negate { &acc - &t } else { &acc + &t };
            match self.peek() {
                None => return Ok(acc),
                Some(c) => match Self::sign(c) {
                    Some(neg) => {
                        self.pos += 1;
                        negate = neg;
                    }
                    None => return self.err("expected '+' or '-'"),
                },
            }
        }
    }

    fn term(&mut self) -> Result<MultiPoly, ParseError> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let num = self.digits().expect("digit ahead");
                let mut coeff = Rational::from_int(num);
                if self.peek() == Some('/') {
                    self.pos += 1;
                    let Some(den) = self.digits() else {
                        return self.err("expected denominator");
                    };
                    let Some(inv) = Rational::from_int(den).recip() else {
                        return self.err("zero denominator");
                    };
                    coeff = &coeff * &inv;
                }
                let c = MultiPoly::from_rational(self.ctx, &coeff);
                match self.peek() {
                    Some('*') => {
                        self.pos += 1;
                        if !self.peek().is_some_and(is_ident_start) {
                            return self.err("expected variable");
                        }
                        Ok(&c * &self.monomial()?)
                    }
                    Some(ch) if is_ident_start(ch) => Ok(&c * &self.monomial()?),
                    _ => Ok(c),
                }
            }
            Some(c) if is_ident_start(c) => self.monomial(),
            _ => self.err("expected coefficient or variable"),
        }
    }

    fn factor(&mut self) -> Result<MultiPoly, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(|&c| is_ident_start(c) || c.is_ascii_digit()) {
            self.pos += 1;
        }
        let name: String = self.chars[start..self.pos].iter().collect();
        let Ok(v) = MultiPoly::var(self.ctx, &name) else {
            return Err(ParseError::UnknownVariable { name, offset: start });
        };
        if self.peek() != Some('^') {
            return Ok(v);
        }
        self.pos += 1;
        let Some(e) = self.digits() else {
            return self.err("expected exponent");
        };
        let Ok(e) = u32::try_from(e) else {
            return self.err("exponent too large");
        };
        Ok(v.pow(e))
    }

    fn monomial(&mut self) -> Result<MultiPoly, ParseError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    if !self.peek().is_some_and(is_ident_start) {
                        return self.err("expected variable");
                    }
                    acc = &acc * &self.factor()?;
                }
                Some(c) if is_ident_start(c) => acc = &acc * &self.factor()?,
                _ => return Ok(acc),
            }
        }
    }
}

fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

pub fn parse_poly(text: &str, ctx: &PolyCtx) -> Result<MultiPoly, ParseError> {
    Parser { chars: text.chars().collect(), pos: 0, ctx }.expr()
}

/// A polynomial in `z` of degree at most `weight`.
pub fn parse_polymod(text: &str, weight: usize) -> Result<PolyMod, ParseError> {
    let ctx = PolyCtx::new(&["z"]);
    let p = parse_poly(text, &ctx)?;
    let degree = p.degree_in(0).unwrap_or(0) as usize;
    let mut coeffs = vec![Rational::zero(); degree + 1];
    for (m, c) in p.terms() {
        coeffs[m.exps()[0] as usize] = c.clone();
    }
    PolyMod::new(weight, coeffs).map_err(|_| ParseError::TooLarge { degree, weight })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z() -> PolyCtx {
        PolyCtx::new(&["z"])
    }

    #[test]
    fn examples() {
        let p = parse_polymod("z^10 - 1", 10).unwrap();
        assert_eq!(p.coeffs()[10], Rational::one());
        assert_eq!(p.coeffs()[0], Rational::from(-1));
        assert_eq!(parse_polymod("3/4*z^2", 2).unwrap().coeffs()[2], Rational::frac(3, 4));
        assert_eq!(parse_poly("z^", &z()), Err(ParseError::Syntax { offset: 2, message: "expected exponent".into() }));
    }

    #[test]
    fn forms() {
        let ctx = PolyCtx::new(&["x", "y", "rho"]);
        let a = parse_poly(" -2 x^2 y + 3/2*rho −x*y ", &ctx).unwrap();
        let b = parse_poly("-2*x^2*y + 3/2*rho - x*y", &ctx).unwrap();
        assert_eq!(a, b);
        assert_eq!(parse_poly("x y", &ctx).unwrap(), parse_poly("x*y", &ctx).unwrap());
        assert!(matches!(parse_poly("w + 1", &ctx), Err(ParseError::UnknownVariable { offset: 0, .. })));
        assert!(matches!(parse_poly("x +", &ctx), Err(ParseError::Syntax { offset: 3, .. })));
        assert!(matches!(parse_poly("1/0", &ctx), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse_poly("", &ctx), Err(ParseError::Syntax { offset: 0, .. })));
        assert!(matches!(parse_poly("2 3", &ctx), Err(ParseError::Syntax { offset: 2, .. })));
        assert!(matches!(parse_polymod("z^3", 2), Err(ParseError::TooLarge { .. })));
    }
}
