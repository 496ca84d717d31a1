//! Exact arithmetic substrate: rationals, sparse multivariate polynomials,
//! rational functions, truncated power series and rational linear algebra.
//!
//! Every polynomial lives in a ring with an explicitly declared, ordered
//! variable list. Arithmetic between polynomials over different lists is an
//! error (`VariableMismatch`); moving between rings is always explicit via
//! [`MultiPoly::embed`] or [`MultiPoly::substitute`].

mod gcd;
mod linalg;
mod poly;
mod ratfunc;
mod rational;
mod ring;
mod series;

pub use gcd::{content_in, poly_gcd};
pub use linalg::RatMatrix;
pub use poly::{Monomial, MultiPoly, PolyCtx};
pub use ratfunc::RationalFunction;
pub use rational::Rational;
pub use ring::{generalized_binomial, Ring};
pub use series::TruncatedSeries;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExactError {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("leading coefficient of the divisor is not a unit")]
    NonUnitLeadingCoefficient,
    #[error("series constant term is not invertible")]
    NonInvertibleConstantTerm,
    #[error("series constant term must vanish")]
    NonzeroConstantTerm,
    #[error("variable lists differ: [{left}] vs [{right}]")]
    VariableMismatch { left: String, right: String },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("reduced denominator vanishes at 1")]
    PoleAtOne,
    #[error("cannot parse rational `{0}`")]
    ParseRational(String),
}
