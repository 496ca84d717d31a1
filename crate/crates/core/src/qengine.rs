//! q-analogues: the small q-exponential `E_q(w) = sum w^n/(q;q)_n`, Gaussian
//! binomials, q-Bernoulli / q-Euler polynomials, the q-bracket and the
//! q-cyclic sum.
//!
//! Polynomials here live in `Q(q)[x]` (integer mode) or `Q(q, rho, sigma)[x, y]`
//! (symbolic mode, `rho = q^r`, `sigma = q^s`, `tau = q^n / (rho sigma)`).
//! The q -> 1 normalization is `B_n^(q) / (1 - q) -> B_n` and `E_n^(q) -> E_n`.

use std::fmt;
use std::sync::OnceLock;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::appell::{family_polynomials, AppellFamily};
use crate::cyclic::Arg;
use crate::exact::{ExactError, MultiPoly, PolyCtx, Rational, RationalFunction as RF, TruncatedSeries};
use crate::report::DefectReport;

/// Polynomials over rational functions in `q` (and possibly `rho, sigma`).
pub type QPoly = MultiPoly<RF>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum QError {
    #[error("table covers degrees 0..={have} but degree {needed} is required")]
    TableTooShort { needed: usize, have: usize },
    #[error("integer triple ({r}, {s}, {t}) does not sum to n = {n}")]
    InvalidTriple { r: u32, s: u32, t: u32, n: usize },
    #[error("k = {k} exceeds n = {n}")]
    IndexOutOfRange { n: usize, k: usize },
    #[error("limit at q = 1 still depends on other indeterminates: {0}")]
    NonConstantLimit(String),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

pub fn q_ctx() -> PolyCtx {
    static CTX: OnceLock<PolyCtx> = OnceLock::new();
    CTX.get_or_init(|| PolyCtx::new(&["q"])).clone()
}

pub fn symbolic_ctx() -> PolyCtx {
    static CTX: OnceLock<PolyCtx> = OnceLock::new();
    CTX.get_or_init(|| PolyCtx::new(&["q", "rho", "sigma"])).clone()
}

fn q_pow(ctx: &PolyCtx, e: i64) -> RF {
    RF::var_pow(ctx, "q", e).expect("q is declared")
}

fn rat(ctx: &PolyCtx, v: i64) -> RF {
    RF::from_rational(ctx, &Rational::from(v))
}

/// `(q; q)_n = prod_{i=1}^n (1 - q^i)`.
pub fn q_pochhammer(ctx: &PolyCtx, n: usize) -> RF {
    (1..=n as i64).fold(rat(ctx, 1), |acc, i| &acc * &(&rat(ctx, 1) - &q_pow(ctx, i)))
}

/// `E_q(w) = sum_{n<order} w^n / (q;q)_n`.
pub fn q_exponential(order: usize) -> TruncatedSeries<RF> {
    let ctx = q_ctx();
    let mut coeffs = Vec::with_capacity(order);
    let mut poch = rat(&ctx, 1);
    for n in 0..order {
        if n > 0 {
            poch = &poch * &(&rat(&ctx, 1) - &q_pow(&ctx, n as i64));
        }
        coeffs.push(poch.inverse().expect("(q;q)_n is nonzero"));
    }
    TruncatedSeries::new(&ctx, coeffs)
}

/// Upper index of a Gaussian binomial: an integer `m`, or a rational
/// function standing for `q^m`.
#[derive(Clone, Debug, PartialEq)]
pub enum QUpper {
    Int(i64),
    Power(RF),
}

/// `prod_{i=1}^k (1 - U q^{i-k}) / (1 - q^i)` where `U = q^m`.
fn gauss_in(u: &RF, k: usize) -> RF {
    let ctx = u.poly_ctx().clone();
    let one = rat(&ctx, 1);
    let mut acc = one.clone();
    for i in 1..=k as i64 {
        let num = &one - &(u * &q_pow(&ctx, i - k as i64));
        let den = &one - &q_pow(&ctx, i);
        acc = &(&acc * &num) / &den;
    }
    acc
}

/// Gaussian binomial with integer or symbolic upper index. The integer form
/// lands in `Q(q)`; the symbolic form in the ring of the given power.
pub fn gaussian_binomial(upper: &QUpper, k: usize) -> RF {
    let u = match upper {
        QUpper::Int(m) => q_pow(&q_ctx(), *m),
        QUpper::Power(u) => u.clone(),
    };
    gauss_in(&u, k)
}

/// `[m]_q = (1 - U) / (1 - q)` with `U = q^m`.
pub fn q_integer(u: &RF) -> RF {
    let ctx = u.poly_ctx().clone();
    &(&rat(&ctx, 1) - u) / &(&rat(&ctx, 1) - &q_pow(&ctx, 1))
}

/// `q^{binom(k, 2)}`.
pub fn q_sign(ctx: &PolyCtx, k: usize) -> RF {
    q_pow(ctx, (k * k.saturating_sub(1) / 2) as i64)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum QKind {
    Bernoulli,
    Euler,
}

impl QKind {
    pub fn name(self) -> &'static str {
        match self {
            QKind::Bernoulli => "q-bernoulli",
            QKind::Euler => "q-euler",
        }
    }

    pub fn parse(name: &str) -> Option<Self> {
        match name {
            "q-bernoulli" => Some(QKind::Bernoulli),
            "q-euler" => Some(QKind::Euler),
            _ => None,
        }
    }
}

impl fmt::Display for QKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct QFamilyTable {
    kind: QKind,
    polys: Vec<QPoly>,
}

impl QFamilyTable {
    pub fn kind(&self) -> QKind {
        self.kind
    }

    pub fn max_degree(&self) -> usize {
        self.polys.len().saturating_sub(1)
    }

    pub fn polys(&self) -> &[QPoly] {
        &self.polys
    }

    pub fn get(&self, n: usize) -> Option<&QPoly> {
        self.polys.get(n)
    }

    fn ensure_covers(&self, n: usize) -> Result<(), QError> {
        if n < self.polys.len() {
            Ok(())
        } else {
            Err(QError::TableTooShort { needed: n, have: self.max_degree() })
        }
    }
}

pub fn qx_ctx() -> PolyCtx<RF> {
    static CTX: OnceLock<PolyCtx<RF>> = OnceLock::new();
    CTX.get_or_init(|| PolyCtx::with_coeff(&["x"], q_ctx())).clone()
}

/// `sum_n F_n^(q)(x) w^n / (q;q)_n = A_q(w) E_q(wx)` with
/// `A_q = w / (E_q(w) - 1)` or `2 / (E_q(w) + 1)`.
pub fn q_family_polynomials(kind: QKind, n_max: usize) -> QFamilyTable {
    let ctx = q_ctx();
    let order = n_max + 1;
    let e = q_exponential(order + 1);
    let prefactor = match kind {
        QKind::Bernoulli => e
            .sub(&TruncatedSeries::one(&ctx, order + 1))
            .div_w()
            .and_then(|s| s.invert())
            .expect("(E_q - 1)/w has unit constant term"),
        QKind::Euler => e
            .truncate(order)
            .add(&TruncatedSeries::one(&ctx, order))
            .scale(&Rational::frac(1, 2))
            .invert()
            .expect("(E_q + 1)/2 has unit constant term"),
    };
    let xc = qx_ctx();
    let one = rat(&ctx, 1);
    let polys = (0..=n_max)
        .map(|n| {
            // (q;q)_n / (q;q)_j, built downward from j = n
            let mut ratio = one.clone();
            let mut terms = Vec::with_capacity(n + 1);
            for j in (0..=n).rev() {
                terms.push((vec![j as u32], &prefactor.coeffs()[n - j] * &ratio));
                ratio = &ratio * &(&one - &q_pow(&ctx, j as i64));
            }
            MultiPoly::from_terms(&xc, terms)
        })
        .collect();
    QFamilyTable { kind, polys }
}

/// Coefficientwise `q -> 1` limit of a polynomial whose coefficients depend
/// on `q` alone.
pub fn limit_at_one_poly(p: &QPoly) -> Result<MultiPoly, QError> {
    let names: Vec<&str> = p.vars().iter().map(String::as_str).collect();
    let target = PolyCtx::new(&names);
    let mut terms = Vec::with_capacity(p.len());
    for (m, c) in p.terms() {
        let lim = c.limit_at_one("q")?;
        let v = lim.as_constant().ok_or_else(|| QError::NonConstantLimit(lim.to_string()))?;
        terms.push((m.exps().to_vec(), v));
    }
    Ok(MultiPoly::from_terms(&target, terms))
}

/// Checks `B_n^(q)/(1-q) -> B_n` or `E_n^(q) -> E_n` exactly, degree by degree.
pub fn q_to_one_check(table: &QFamilyTable) -> Result<DefectReport, QError> {
    let (classical, scale) = match table.kind {
        QKind::Bernoulli => (AppellFamily::bernoulli(), Some(&rat(&q_ctx(), 1) - &q_pow(&q_ctx(), 1))),
        QKind::Euler => (AppellFamily::euler(), None),
    };
    let reference = family_polynomials(&classical, table.max_degree()).expect("builtin family");
    let mut bad = Vec::new();
    for (n, p) in table.polys.iter().enumerate() {
        let normalized = match &scale {
            Some(d) => p.map_coeffs(&q_ctx(), |c| c / d),
            None => p.clone(),
        };
        let lim = limit_at_one_poly(&normalized)?;
        let diff = &lim - reference.get(n).expect("same length");
        if !diff.is_zero() {
            bad.push(format!("n={n}: {diff}"));
        }
    }
    let text = if bad.is_empty() { "0".to_string() } else { bad.join("; ") };
    Ok(DefectReport::exact(format!("q-limit/{}", table.kind), format!("n<={}", table.max_degree()), text))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QMode {
    /// Nonnegative integers with `r + s + t = n`.
    Integer { r: u32, s: u32, t: u32 },
    /// `rho = q^r`, `sigma = q^s` free; `tau = q^n / (rho sigma)`.
    Symbolic,
}

impl QMode {
    pub fn coeff_ctx(&self) -> PolyCtx {
        match self {
            QMode::Integer { .. } => q_ctx(),
            QMode::Symbolic => symbolic_ctx(),
        }
    }

    fn validate(&self, n: usize) -> Result<(), QError> {
        match *self {
            QMode::Integer { r, s, t } if (r + s + t) as usize != n => Err(QError::InvalidTriple { r, s, t, n }),
            _ => Ok(()),
        }
    }

    /// The powers `(q^r, q^s, q^t)` for this mode.
    pub fn slot_powers(&self, n: usize) -> [RF; 3] {
        let ctx = self.coeff_ctx();
        match *self {
            QMode::Integer { r, s, t } => [q_pow(&ctx, r as i64), q_pow(&ctx, s as i64), q_pow(&ctx, t as i64)],
            QMode::Symbolic => {
                let rho = RF::var(&ctx, "rho").expect("declared");
                let sigma = RF::var(&ctx, "sigma").expect("declared");
                let tau = &q_pow(&ctx, n as i64) / &(&rho * &sigma);
                [rho, sigma, tau]
            }
        }
    }
}

impl fmt::Display for QMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QMode::Integer { r, s, t } => write!(f, "r={r},s={s},t={t}"),
            QMode::Symbolic => f.write_str("symbolic"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Slot {
    R,
    S,
    T,
}

impl Slot {
    fn index(self) -> usize {
        match self {
            Slot::R => 0,
            Slot::S => 1,
            Slot::T => 2,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct QCyclicParams {
    pub n: usize,
    pub mode: QMode,
    pub x_arg: Arg,
    pub y_arg: Arg,
}

impl QCyclicParams {
    pub fn new(n: usize, mode: QMode, x_arg: Arg, y_arg: Arg) -> Result<Self, QError> {
        mode.validate(n)?;
        Ok(QCyclicParams { n, mode, x_arg, y_arg })
    }

    pub fn integer(n: usize, r: u32, s: u32, t: u32) -> Result<Self, QError> {
        Self::new(n, QMode::Integer { r, s, t }, Arg::sym("x"), Arg::sym("y"))
    }

    pub fn symbolic(n: usize) -> Self {
        QCyclicParams { n, mode: QMode::Symbolic, x_arg: Arg::sym("x"), y_arg: Arg::sym("y") }
    }

    pub fn outer_ctx(&self) -> PolyCtx<RF> {
        let mut names: Vec<&str> = Vec::new();
        for a in [&self.x_arg, &self.y_arg] {
            if let Arg::Symbol(name) = a {
                if !names.contains(&name.as_str()) {
                    names.push(name);
                }
            }
        }
        PolyCtx::with_coeff(&names, self.mode.coeff_ctx())
    }

    fn arg_poly(&self, ctx: &PolyCtx<RF>, a: &Arg) -> QPoly {
        match a {
            Arg::Value(v) => MultiPoly::from_rational(ctx, v),
            Arg::Symbol(name) => MultiPoly::var(ctx, name).expect("symbol collected into ctx"),
        }
    }
}

/// `F_j` with its argument replaced by `v`, for `j = 0..=n`.
fn family_at(table: &QFamilyTable, n: usize, v: &QPoly) -> Vec<QPoly> {
    let outer = v.ctx();
    let cctx = outer.coeff_ctx().clone();
    table.polys[..=n]
        .iter()
        .map(|p| {
            p.map_coeffs(&cctx, |c| c.embed(&cctx).expect("q is in every coefficient ring"))
                .substitute(outer, &[("x", v.clone())])
                .expect("argument lives in outer ring")
        })
        .collect()
}

/// `sum_k (-1)^k q^{binom(k,2)} gauss(a,k) gauss(b,n-k) F_{n-k}(u) F_k(v)`.
fn q_bracket_in(n: usize, a: &RF, b: &RF, fu: &[QPoly], fv: &[QPoly]) -> QPoly {
    let outer = fu[0].ctx().clone();
    let cctx = a.poly_ctx().clone();
    let mut acc = MultiPoly::zero(&outer);
    for k in 0..=n {
        let mut weight = &(&gauss_in(a, k) * &gauss_in(b, n - k)) * &q_sign(&cctx, k);
        if weight.is_zero() {
            continue;
        }
        if k % 2 == 1 {
            weight = -&weight;
        }
        let term = (&fu[n - k] * &fv[k]).scale_by(&weight);
        acc = &acc + &term;
    }
    acc
}

/// `[a, b; x, y]_n^(q)` with the Gaussian upper indices taken from the given
/// slots of the parameter triple.
pub fn q_bracket(table: &QFamilyTable, params: &QCyclicParams, s_slot: Slot, t_slot: Slot) -> Result<QPoly, QError> {
    table.ensure_covers(params.n)?;
    let ctx = params.outer_ctx();
    let x = params.arg_poly(&ctx, &params.x_arg);
    let y = params.arg_poly(&ctx, &params.y_arg);
    let powers = params.mode.slot_powers(params.n);
    let n = params.n;
    Ok(q_bracket_in(n, &powers[s_slot.index()], &powers[t_slot.index()], &family_at(table, n, &x), &family_at(table, n, &y)))
}

/// `[r]_q [s,t;x,y] + [s]_q [t,r;y,z] + [t]_q [r,s;z,x]` with `z = 1 - x - y`.
pub fn q_cyclic_sum(table: &QFamilyTable, params: &QCyclicParams) -> Result<QPoly, QError> {
    table.ensure_covers(params.n)?;
    let n = params.n;
    let ctx = params.outer_ctx();
    let x = params.arg_poly(&ctx, &params.x_arg);
    let y = params.arg_poly(&ctx, &params.y_arg);
    let z = &(&MultiPoly::one(&ctx) - &x) - &y;
    let (fx, fy, fz) = (family_at(table, n, &x), family_at(table, n, &y), family_at(table, n, &z));
    let [r, s, t] = params.mode.slot_powers(n);
    let b1 = q_bracket_in(n, &s, &t, &fx, &fy).scale_by(&q_integer(&r));
    let b2 = q_bracket_in(n, &t, &r, &fy, &fz).scale_by(&q_integer(&s));
    let b3 = q_bracket_in(n, &r, &s, &fz, &fx).scale_by(&q_integer(&t));
    Ok(&(&b1 + &b2) + &b3)
}

pub fn q_cyclic_defect(table: &QFamilyTable, params: &QCyclicParams) -> Result<DefectReport, QError> {
    let sum = q_cyclic_sum(table, params)?;
    Ok(DefectReport::exact(format!("q-cyclic/{}", table.kind), format!("n={},{}", params.n, params.mode), sum))
}

/// `[r]_q g(s,k) g(t,n-k) + [s]_q g(t,k) g(r,n-k) + [t]_q g(r,k) g(s,n-k)`.
pub fn q_binomial_cyclic_defect(n: usize, k: usize, mode: QMode) -> Result<RF, QError> {
    if k > n {
        return Err(QError::IndexOutOfRange { n, k });
    }
    mode.validate(n)?;
    let [r, s, t] = mode.slot_powers(n);
    let term = |lead: &RF, a: &RF, b: &RF| &(&q_integer(lead) * &gauss_in(a, k)) * &gauss_in(b, n - k);
    Ok(&(&term(&r, &s, &t) + &term(&s, &t, &r)) + &term(&t, &r, &s))
}

/// Sends `rho -> q^r`, `sigma -> q^s` in every coefficient.
pub fn specialize(p: &QPoly, r: u32, s: u32) -> Result<QPoly, QError> {
    let qc = q_ctx();
    let bindings = [("rho", q_pow(&qc, r as i64)), ("sigma", q_pow(&qc, s as i64))];
    let names: Vec<&str> = p.vars().iter().map(String::as_str).collect();
    let target = PolyCtx::with_coeff(&names, qc.clone());
    let mut terms = Vec::with_capacity(p.len());
    for (m, c) in p.terms() {
        terms.push((m.exps().to_vec(), c.substitute(&qc, &bindings)?));
    }
    Ok(MultiPoly::from_terms(&target, terms))
}

/// A point `(q, rho, sigma, x, y)` for sampled checks.
#[derive(Clone, Debug, PartialEq)]
pub struct QPoint {
    pub q: Rational,
    pub rho: Rational,
    pub sigma: Rational,
    pub x: Rational,
    pub y: Rational,
}

impl fmt::Display for QPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "q={},rho={},sigma={},x={},y={}", self.q, self.rho, self.sigma, self.x, self.y)
    }
}

fn eval_family(table: &QFamilyTable, j: usize, q: &Rational, x: &Rational) -> Result<Rational, QError> {
    let mut acc = Rational::zero();
    for (m, c) in table.polys[j].terms() {
        acc = &acc + &(&c.evaluate(std::slice::from_ref(q))? * &x.pow(m.exps()[0] as i32));
    }
    Ok(acc)
}

fn gauss_at(u: &Rational, q: &Rational, k: usize) -> Rational {
    let mut acc = Rational::one();
    for i in 1..=k as i32 {
        acc = &acc * &(&(&Rational::one() - &(u * &q.pow(i - k as i32))) / &(&Rational::one() - &q.pow(i)));
    }
    acc
}

/// The symbolic-mode cyclic sum evaluated at one point, in plain rational
/// arithmetic.
pub fn q_cyclic_defect_at(table: &QFamilyTable, n: usize, p: &QPoint) -> Result<Rational, QError> {
    table.ensure_covers(n)?;
    let q = &p.q;
    let z = &(&Rational::one() - &p.x) - &p.y;
    let fam = |v: &Rational| (0..=n).map(|j| eval_family(table, j, q, v)).collect::<Result<Vec<_>, _>>();
    let (fx, fy, fz) = (fam(&p.x)?, fam(&p.y)?, fam(&z)?);
    let tau = &q.pow(n as i32) / &(&p.rho * &p.sigma);
    let qint = |u: &Rational| &(&Rational::one() - u) / &(&Rational::one() - q);
    let br = |a: &Rational, b: &Rational, fu: &[Rational], fv: &[Rational]| {
        let mut acc = Rational::zero();
        for k in 0..=n {
            let sign = if k % 2 == 0 { Rational::one() } else { -Rational::one() };
            let qs = q.pow((k * k.saturating_sub(1) / 2) as i32);
            acc = &acc + &(&(&(&sign * &qs) * &(&gauss_at(a, q, k) * &gauss_at(b, q, n - k))) * &(&fu[n - k] * &fv[k]));
        }
        acc
    };
    let total = &(&(&qint(&p.rho) * &br(&p.sigma, &tau, &fx, &fy)) + &(&qint(&p.sigma) * &br(&tau, &p.rho, &fy, &fz)))
        + &(&qint(&tau) * &br(&p.rho, &p.sigma, &fz, &fx));
    Ok(total)
}

fn random_point(rng: &mut ChaCha8Rng) -> QPoint {
    let mut nonzero = |forbid_unit: bool| loop {
        let v = Rational::frac(rng.gen_range(-9..=9), rng.gen_range(1..=7));
        if !v.is_zero() && !(forbid_unit && v.abs().is_one()) {
            return v;
        }
    };
    let q = nonzero(true);
    let rho = nonzero(false);
    let sigma = nonzero(false);
    let x = Rational::frac(rng.gen_range(-12..=12), rng.gen_range(1..=6));
    let y = Rational::frac(rng.gen_range(-12..=12), rng.gen_range(1..=6));
    QPoint { q, rho, sigma, x, y }
}

pub const MIN_SAMPLES: usize = 5;
pub const ESCALATION_CEILING: usize = 4;

#[derive(Clone, Debug, PartialEq)]
pub struct QSampledCheck {
    pub samples: Vec<DefectReport>,
    /// Full symbolic report, computed when every sample vanished and `n` is
    /// small enough.
    pub escalated: Option<DefectReport>,
}

impl QSampledCheck {
    /// A nonzero sample is conclusive; otherwise the symbolic verdict decides
    /// when present, and the samples alone when not.
    pub fn is_zero(&self) -> bool {
        match &self.escalated {
            Some(r) => r.is_zero,
            None => self.samples.iter().all(|r| r.is_zero),
        }
    }
}

/// Symbolic-mode check at seeded random rational points (at least
/// [`MIN_SAMPLES`]); escalates to the exact computation for small `n`.
pub fn q_cyclic_defect_sampled(table: &QFamilyTable, n: usize, seed: u64, count: usize) -> Result<QSampledCheck, QError> {
    table.ensure_covers(n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut samples = Vec::new();
    for _ in 0..count.max(MIN_SAMPLES) {
        let p = random_point(&mut rng);
        let v = q_cyclic_defect_at(table, n, &p)?;
        samples.push(DefectReport::exact(format!("q-cyclic-sampled/{}", table.kind), format!("n={n},{p}"), v));
    }
    let escalated = if samples.iter().all(|r| r.is_zero) && n <= ESCALATION_CEILING {
        Some(q_cyclic_defect(table, &QCyclicParams::symbolic(n))?)
    } else {
        None
    };
    Ok(QSampledCheck { samples, escalated })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> RF {
        RF::var(&q_ctx(), "q").unwrap()
    }

    #[test]
    fn exponential_coefficients() {
        let e = q_exponential(3);
        let one = rat(&q_ctx(), 1);
        assert_eq!(e.coeffs()[1], &one / &(&one - &q()));
        assert_eq!(e.coeffs()[2], &one / &(&(&one - &q()) * &(&one - &(&q() * &q()))));
    }

    #[test]
    fn gaussian_examples() {
        assert_eq!(gaussian_binomial(&QUpper::Int(4), 2).to_string(), "q^4 + q^3 + 2*q^2 + q + 1");
        assert_eq!(gaussian_binomial(&QUpper::Int(7), 0).to_string(), "1");
        let sigma = RF::var(&symbolic_ctx(), "sigma").unwrap();
        let g = gaussian_binomial(&QUpper::Power(sigma.clone()), 1);
        let one = rat(&symbolic_ctx(), 1);
        assert_eq!(g, &(&one - &sigma) / &(&one - &RF::var(&symbolic_ctx(), "q").unwrap()));
    }

    #[test]
    fn low_entries() {
        let b = q_family_polynomials(QKind::Bernoulli, 1);
        assert_eq!(b.get(0).unwrap().to_string(), "-q + 1");
        let e = q_family_polynomials(QKind::Euler, 0);
        assert_eq!(e.get(0).unwrap().to_string(), "1");
    }

    #[test]
    fn triple_must_sum_to_n() {
        assert_eq!(QCyclicParams::integer(2, 1, 0, 0), Err(QError::InvalidTriple { r: 1, s: 0, t: 0, n: 2 }));
        assert_eq!(q_sign(&q_ctx(), 0), rat(&q_ctx(), 1));
        assert_eq!(q_sign(&q_ctx(), 1), rat(&q_ctx(), 1));
        assert_eq!(q_sign(&q_ctx(), 3).to_string(), "q^3");
    }
}
