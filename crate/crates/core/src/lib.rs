//! Exact and numeric engine for auditing cyclic vanishing identities.
//!
//! The crate builds Appell and q-Appell polynomial families, computes cyclic
//! defect polynomials symbolically (never assuming they vanish), computes
//! period-polynomial spaces for the full modular group together with numeric
//! period polynomials of the discriminant form, and evaluates the analytic
//! Bernoulli functions with explicit error estimates.

pub mod analytic;
pub mod appell;
pub mod cyclic;
pub mod exact;
pub mod modular;
pub mod qengine;
pub mod report;

pub use exact::{MultiPoly, PolyCtx, Rational, RationalFunction, Ring, TruncatedSeries};
pub use report::{DefectReport, EvalResult, EvalValue, Residual};
