//! Appell polynomial families `F_n(x)` with exponential generating function
//! `A(w) e^{lambda w x}`, plus exact checkers for the ladder relation
//! `F_n' = lambda n F_{n-1}` and the reflection `F_n(1-x) = eps_n F_n(x)`.
//!
//! Prefactors are formal: `e^w` is the truncated series `sum w^m/m!` at the
//! working order, so everything here is exact.

use std::fmt;
use std::sync::OnceLock;

use serde::Deserialize;

use crate::exact::{ExactError, MultiPoly, PolyCtx, Rational, TruncatedSeries};
use crate::report::DefectReport;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum AppellError {
    #[error("prefactor constant term a_0 is zero")]
    ZeroPrefactorConstant,
    #[error("ladder constant lambda is zero")]
    ZeroLambda,
    #[error("malformed family document: {0}")]
    MalformedDocument(String),
    #[error("unknown builtin family `{0}`")]
    UnknownFamily(String),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// How the prefactor `A(w)` is produced.
#[derive(Clone, Debug, PartialEq)]
pub enum Prefactor {
    /// `w / (e^w - 1)`
    Bernoulli,
    /// `2 / (e^w + 1)`
    Euler,
    /// `e^{-w/2}`
    CenteredMonomial,
    /// `e^{-w/2 - w^2/2}`
    CenteredHermite,
    /// `1`, giving the plain powers `x^n`
    Monomial,
    /// EGF coefficients `a_m`; coefficients past the list are zero.
    Explicit(Vec<Rational>),
}

/// Declared reflection signs `eps_n`.
#[derive(Clone, Debug, PartialEq)]
pub enum ParityRule {
    /// `eps_n = (-1)^n`
    Alternating,
    /// `eps_n = +1`
    Even,
    Listed(Vec<i8>),
}

impl ParityRule {
    pub fn sign(&self, n: usize) -> Option<i8> {
        match self {
            ParityRule::Alternating => Some(if n.is_multiple_of(2) { 1 } else { -1 }),
            ParityRule::Even => Some(1),
            ParityRule::Listed(v) => v.get(n).copied(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct AppellFamily {
    name: String,
    lambda: Rational,
    prefactor: Prefactor,
    declared_parity: Option<ParityRule>,
}

pub const BUILTIN_FAMILIES: [&str; 5] = ["bernoulli", "euler", "centered_monomial", "centered_hermite", "monomial"];

impl AppellFamily {
    pub fn new(name: impl Into<String>, lambda: Rational, prefactor: Prefactor) -> Result<Self, AppellError> {
        if let Prefactor::Explicit(a) = &prefactor {
            if a.first().is_none_or(|a0| a0.is_zero()) {
                return Err(AppellError::ZeroPrefactorConstant);
            }
        }
        if lambda.is_zero() {
            return Err(AppellError::ZeroLambda);
        }
        Ok(AppellFamily { name: name.into(), lambda, prefactor, declared_parity: None })
    }

    pub fn with_parity(mut self, rule: ParityRule) -> Self {
        self.declared_parity = Some(rule);
        self
    }

    fn builtin_raw(name: &str, prefactor: Prefactor, parity: Option<ParityRule>) -> Self {
        AppellFamily { name: name.to_string(), lambda: Rational::one(), prefactor, declared_parity: parity }
    }

    pub fn bernoulli() -> Self {
        Self::builtin_raw("bernoulli", Prefactor::Bernoulli, Some(ParityRule::Alternating))
    }

    pub fn euler() -> Self {
        Self::builtin_raw("euler", Prefactor::Euler, Some(ParityRule::Alternating))
    }

    pub fn centered_monomial() -> Self {
        Self::builtin_raw("centered_monomial", Prefactor::CenteredMonomial, Some(ParityRule::Alternating))
    }

    pub fn centered_hermite() -> Self {
        Self::builtin_raw("centered_hermite", Prefactor::CenteredHermite, Some(ParityRule::Alternating))
    }

    pub fn monomial() -> Self {
        Self::builtin_raw("monomial", Prefactor::Monomial, None)
    }

    pub fn builtin(name: &str) -> Result<Self, AppellError> {
        match name {
            "bernoulli" => Ok(Self::bernoulli()),
            "euler" => Ok(Self::euler()),
            "centered_monomial" => Ok(Self::centered_monomial()),
            "centered_hermite" => Ok(Self::centered_hermite()),
            "monomial" => Ok(Self::monomial()),
            other => Err(AppellError::UnknownFamily(other.to_string())),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn lambda(&self) -> &Rational {
        &self.lambda
    }

    pub fn prefactor(&self) -> &Prefactor {
        &self.prefactor
    }

    pub fn declared_parity(&self) -> Option<&ParityRule> {
        self.declared_parity.as_ref()
    }

    /// `A(w)` as an ordinary power series modulo `w^order`.
    pub fn ordinary_prefactor(&self, order: usize) -> Result<TruncatedSeries<Rational>, AppellError> {
        let exp_w = |n: usize, c: Rational| TruncatedSeries::exp_linear(&(), &c, n);
        let series = match &self.prefactor {
            Prefactor::Bernoulli => exp_w(order + 1, Rational::one())
                .sub(&TruncatedSeries::one(&(), order + 1))
                .div_w()?
                .invert()?,
            Prefactor::Euler => exp_w(order, Rational::one())
                .add(&TruncatedSeries::one(&(), order))
                .scale(&Rational::frac(1, 2))
                .invert()?,
            Prefactor::CenteredMonomial => exp_w(order, Rational::frac(-1, 2)),
            Prefactor::CenteredHermite => {
                let mut g = vec![Rational::zero(); order];
                if order > 1 {
                    g[1] = Rational::frac(-1, 2);
                }
                if order > 2 {
                    g[2] = Rational::frac(-1, 2);
                }
                TruncatedSeries::new(&(), g).exp()?
            }
            Prefactor::Monomial => TruncatedSeries::one(&(), order),
            Prefactor::Explicit(a) => {
                let mut fact = Rational::one();
                let coeffs = (0..order)
                    .map(|m| {
                        if m > 0 {
                            fact = &fact * &Rational::from(m as i64);
                        }
                        a.get(m).map_or_else(Rational::zero, |am| am / &fact)
                    })
                    .collect();
                TruncatedSeries::new(&(), coeffs)
            }
        };
        Ok(series)
    }

    /// EGF coefficients `a_0..a_{order-1}` of `A(w) = sum a_m w^m / m!`.
    pub fn egf_coeffs(&self, order: usize) -> Result<Vec<Rational>, AppellError> {
        if let Prefactor::Explicit(a) = &self.prefactor {
            return Ok((0..order).map(|m| a.get(m).cloned().unwrap_or_else(Rational::zero)).collect());
        }
        let s = self.ordinary_prefactor(order)?;
        let mut fact = Rational::one();
        Ok(s.coeffs()
            .iter()
            .enumerate()
            .map(|(m, c)| {
                if m > 0 {
                    fact = &fact * &Rational::from(m as i64);
                }
                c * &fact
            })
            .collect())
    }
}

impl fmt::Display for AppellFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (lambda = {})", self.name, self.lambda)
    }
}

/// `F_0..F_n` of a family as polynomials in `x`.
#[derive(Clone, Debug, PartialEq)]
pub struct AppellPolynomialTable {
    family: AppellFamily,
    polys: Vec<MultiPoly>,
}

pub fn x_ctx() -> PolyCtx {
    static CTX: OnceLock<PolyCtx> = OnceLock::new();
    CTX.get_or_init(|| PolyCtx::new(&["x"])).clone()
}

impl AppellPolynomialTable {
    /// Wraps arbitrary polynomials in `x`; used to exercise the checkers on
    /// tables that violate the axioms.
    pub fn from_polynomials(family: AppellFamily, polys: Vec<MultiPoly>) -> Result<Self, AppellError> {
        let ctx = x_ctx();
        let polys = polys.into_iter().map(|p| p.embed(&ctx)).collect::<Result<_, _>>()?;
        Ok(AppellPolynomialTable { family, polys })
    }

    pub fn family(&self) -> &AppellFamily {
        &self.family
    }

    pub fn max_degree(&self) -> usize {
        self.polys.len().saturating_sub(1)
    }

    pub fn polys(&self) -> &[MultiPoly] {
        &self.polys
    }

    pub fn get(&self, n: usize) -> Option<&MultiPoly> {
        self.polys.get(n)
    }

    pub fn covers(&self, n: usize) -> bool {
        n < self.polys.len()
    }
}

/// `F_n(x) = sum_j binom(n, j) a_{n-j} (lambda x)^j` for `n <= n_max`.
pub fn family_polynomials(family: &AppellFamily, n_max: usize) -> Result<AppellPolynomialTable, AppellError> {
    let a = family.egf_coeffs(n_max + 1)?;
    if a[0].is_zero() {
        return Err(AppellError::ZeroPrefactorConstant);
    }
    let ctx = x_ctx();
    let mut polys = Vec::with_capacity(n_max + 1);
    let mut pascal = vec![Rational::one()];
    for n in 0..=n_max {
        let mut lam_pow = Rational::one();
        let mut terms = Vec::with_capacity(n + 1);
        for (j, binom) in pascal.iter().enumerate() {
            terms.push((vec![j as u32], &(binom * &a[n - j]) * &lam_pow));
            lam_pow = &lam_pow * family.lambda();
        }
        polys.push(MultiPoly::from_terms(&ctx, terms));
        let mut next = vec![Rational::one(); n + 2];
        for k in 1..=n {
            next[k] = &pascal[k - 1] + &pascal[k];
        }
        pascal = next;
    }
    Ok(AppellPolynomialTable { family: family.clone(), polys })
}

/// Per-degree residuals `F_n' - lambda n F_{n-1}` for `n = 1..max`.
pub fn ladder_residuals(table: &AppellPolynomialTable) -> Vec<MultiPoly> {
    let lambda = table.family.lambda();
    (1..table.polys.len())
        .map(|n| {
            let lhs = table.polys[n].derivative(0);
            let rhs = table.polys[n - 1].scale(&(lambda * &Rational::from(n as i64)));
            &lhs - &rhs
        })
        .collect()
}

pub fn check_ladder(table: &AppellPolynomialTable) -> DefectReport {
    let residuals = ladder_residuals(table);
    let nonzero: Vec<String> = residuals
        .iter()
        .enumerate()
        .filter(|(_, r)| !r.is_zero())
        .map(|(i, r)| format!("n={}: {}", i + 1, r))
        .collect();
    let text = if nonzero.is_empty() { "0".to_string() } else { nonzero.join("; ") };
    DefectReport::exact(
        format!("appell/ladder/{}", table.family.name()),
        format!("n<={}", table.max_degree()),
        text,
    )
}

#[derive(Clone, Debug, PartialEq)]
pub enum Reflection {
    /// `F_n(1-x) = sign * F_n(x)` exactly.
    Parity(i8),
    /// Neither sign works; residuals of `F_n(1-x) - F_n(x)` and `F_n(1-x) + F_n(x)`.
    NoParity { plus: MultiPoly, minus: MultiPoly },
}

pub fn check_reflection(table: &AppellPolynomialTable) -> Vec<Reflection> {
    let ctx = x_ctx();
    let x = MultiPoly::var(&ctx, "x").expect("x declared");
    let one_minus_x = &MultiPoly::one(&ctx) - &x;
    table
        .polys
        .iter()
        .map(|p| {
            let reflected = p.substitute(&ctx, &[("x", one_minus_x.clone())]).expect("same ring");
            let plus = &reflected - p;
            if plus.is_zero() {
                return Reflection::Parity(1);
            }
            let minus = &reflected + p;
            if minus.is_zero() {
                Reflection::Parity(-1)
            } else {
                Reflection::NoParity { plus, minus }
            }
        })
        .collect()
}

/// Reflection check against the family's declared parity (or `(-1)^n` when
/// none is declared).
pub fn reflection_report(table: &AppellPolynomialTable) -> DefectReport {
    let rule = table.family.declared_parity().cloned().unwrap_or(ParityRule::Alternating);
    let mut bad = Vec::new();
    for (n, r) in check_reflection(table).into_iter().enumerate() {
        match r {
            Reflection::Parity(e) if Some(e) == rule.sign(n) => {}
            Reflection::Parity(e) => bad.push(format!("n={n}: parity {e:+}")),
            Reflection::NoParity { plus, .. } => bad.push(format!("n={n}: no parity, F(1-x)-F(x) = {plus}")),
        }
    }
    let text = if bad.is_empty() { "0".to_string() } else { bad.join("; ") };
    DefectReport::exact(
        format!("appell/reflection/{}", table.family.name()),
        format!("n<={}", table.max_degree()),
        text,
    )
}

/// `[w^n] A(w) e^{lambda w x} - F_n(x)/n!` for each tabulated `n`, computed
/// with series arithmetic over `Q[x]`.
pub fn egf_residuals(table: &AppellPolynomialTable) -> Result<Vec<MultiPoly>, AppellError> {
    let order = table.polys.len();
    let ctx = x_ctx();
    let a = table.family.ordinary_prefactor(order)?.map(&ctx, |c| MultiPoly::from_rational(&ctx, c));
    let lam_x = MultiPoly::var(&ctx, "x")?.scale(table.family.lambda());
    let phi = a.mul(&TruncatedSeries::exp_linear(&ctx, &lam_x, order));
    let mut fact = Rational::one();
    Ok((0..order)
        .map(|n| {
            if n > 0 {
                fact = &fact * &Rational::from(n as i64);
            }
            &phi.coeffs()[n] - &table.polys[n].scale(&fact.recip().expect("nonzero"))
        })
        .collect())
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FamilyDoc {
    name: Option<String>,
    lambda: Option<String>,
    egf_coeffs: Vec<String>,
    parity: Option<serde_json::Value>,
}

/// Parses a JSON family descriptor:
/// `{"name": .., "lambda": "p/q", "egf_coeffs": ["a_0", "a_1", ..], "parity": ..}`.
///
/// `name` defaults to `custom`, `lambda` to `1`. `parity` may be
/// `"alternating"`, `"even"` or a list of `1`/`-1`. Reflection is not
/// enforced here; it is only ever checked.
pub fn load_family(doc: &str) -> Result<AppellFamily, AppellError> {
    let raw: FamilyDoc = serde_json::from_str(doc).map_err(|e| AppellError::MalformedDocument(e.to_string()))?;
    let parse = |s: &str| s.parse::<Rational>().map_err(|e| AppellError::MalformedDocument(e.to_string()));
    let coeffs = raw.egf_coeffs.iter().map(|s| parse(s)).collect::<Result<Vec<_>, _>>()?;
    if coeffs.is_empty() {
        return Err(AppellError::MalformedDocument("egf_coeffs is empty".into()));
    }
    if coeffs[0].is_zero() {
        return Err(AppellError::ZeroPrefactorConstant);
    }
    let lambda = match raw.lambda.as_deref() {
        Some(s) => parse(s)?,
        None => Rational::one(),
    };
    let mut family = AppellFamily::new(raw.name.unwrap_or_else(|| "custom".into()), lambda, Prefactor::Explicit(coeffs))?;
    if let Some(p) = raw.parity {
        let rule = match &p {
            serde_json::Value::String(s) if s == "alternating" => ParityRule::Alternating,
            serde_json::Value::String(s) if s == "even" => ParityRule::Even,
            serde_json::Value::Array(items) => ParityRule::Listed(
                items
                    .iter()
                    .map(|v| match v.as_i64() {
                        Some(1) => Ok(1),
                        Some(-1) => Ok(-1),
                        _ => Err(AppellError::MalformedDocument(format!("parity entry {v} is not +1/-1"))),
                    })
                    .collect::<Result<_, _>>()?,
            ),
            other => return Err(AppellError::MalformedDocument(format!("unrecognized parity {other}"))),
        };
        family = family.with_parity(rule);
    }
    Ok(family)
}

const BERNOULLI_CACHE: usize = 160;

/// Bernoulli numbers `B_0..B_n` (with `B_1 = -1/2`), exact.
pub fn bernoulli_numbers(n: usize) -> Vec<Rational> {
    static CACHE: OnceLock<Vec<Rational>> = OnceLock::new();
    if n < BERNOULLI_CACHE {
        let all = CACHE.get_or_init(|| AppellFamily::bernoulli().egf_coeffs(BERNOULLI_CACHE).expect("builtin"));
        return all[..=n].to_vec();
    }
    AppellFamily::bernoulli().egf_coeffs(n + 1).expect("builtin")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(coeffs: &[(u32, Rational)]) -> MultiPoly {
        MultiPoly::from_terms(&x_ctx(), coeffs.iter().map(|(e, c)| (vec![*e], c.clone())))
    }

    /// Long-division oracle for `A(w) e^{wx}` coefficients, independent of the
    /// series type: solves `(e^w - 1)/w * B(w) = 1` term by term.
    fn bernoulli_numbers_oracle(n: usize) -> Vec<Rational> {
        let mut b: Vec<Rational> = Vec::new();
        for m in 0..=n {
            // sum_{k=0}^{m} binom(m+1, k) B_k = [m == 0]
            let mut acc = Rational::zero();
            let mut binom = Rational::one();
            for (k, bk) in b.iter().enumerate() {
                acc = &acc + &(&binom * bk);
                binom = &(&binom * &Rational::from((m + 1 - k) as i64)) / &Rational::from((k + 1) as i64);
            }
            let rhs = if m == 0 { Rational::one() } else { Rational::zero() };
            b.push(&(&rhs - &acc) / &binom);
        }
        b
    }

    #[test]
    fn bernoulli_numbers_match_recurrence_oracle() {
        assert_eq!(bernoulli_numbers(20), bernoulli_numbers_oracle(20));
        assert_eq!(bernoulli_numbers(12)[12], Rational::frac(-691, 2730));
    }

    #[test]
    fn named_polynomials() {
        let b = family_polynomials(&AppellFamily::bernoulli(), 2).unwrap();
        assert_eq!(b.get(2).unwrap().to_string(), "x^2 - x + 1/6");
        let e = family_polynomials(&AppellFamily::euler(), 1).unwrap();
        assert_eq!(e.get(1).unwrap().to_string(), "x - 1/2");
        let c = family_polynomials(&AppellFamily::centered_monomial(), 3).unwrap();
        assert_eq!(c.get(3).unwrap().to_string(), "x^3 - 3/2*x^2 + 3/4*x - 1/8");
    }

    #[test]
    fn ladder_detects_tampering() {
        let fam = AppellFamily::bernoulli();
        let good = family_polynomials(&fam, 8).unwrap();
        assert!(check_ladder(&good).is_zero);

        let mut polys = good.polys()[..3].to_vec();
        polys[2] = poly(&[(2, Rational::one())]);
        let bad = AppellPolynomialTable::from_polynomials(fam.clone(), polys).unwrap();
        let res = ladder_residuals(&bad);
        assert!(res[0].is_zero());
        assert_eq!(res[1].as_constant(), Some(Rational::one()));

        let constant = AppellPolynomialTable::from_polynomials(fam, vec![poly(&[(0, Rational::one())])]).unwrap();
        assert!(check_ladder(&constant).is_zero);
    }

    #[test]
    fn reflection_signs() {
        for fam in [AppellFamily::bernoulli(), AppellFamily::centered_hermite()] {
            let t = family_polynomials(&fam, 8).unwrap();
            for (n, r) in check_reflection(&t).into_iter().enumerate() {
                assert_eq!(r, Reflection::Parity(if n % 2 == 0 { 1 } else { -1 }), "{} n={n}", fam.name());
            }
        }
        let mono = family_polynomials(&AppellFamily::monomial(), 2).unwrap();
        let r = check_reflection(&mono);
        assert_eq!(r[0], Reflection::Parity(1));
        assert!(matches!(r[1], Reflection::NoParity { .. }));
        assert!(!reflection_report(&mono).is_zero);
    }

    #[test]
    fn hermite_is_shifted_probabilists_hermite() {
        // He_3(u) = u^3 - 3u at u = x - 1/2
        let t = family_polynomials(&AppellFamily::centered_hermite(), 3).unwrap();
        let ctx = x_ctx();
        let u = &MultiPoly::var(&ctx, "x").unwrap() - &MultiPoly::from_rational(&ctx, &Rational::frac(1, 2));
        let he3 = &u.pow(3) - &u.scale(&Rational::from(3));
        assert_eq!(t.get(3).unwrap(), &he3);
    }

    #[test]
    fn load_documents() {
        let fam = load_family(r#"{"name":"bernoulli-builtin-equivalent","lambda":"1","egf_coeffs":["1","-1/2","1/6","0"]}"#)
            .unwrap();
        let t = family_polynomials(&fam, 2).unwrap();
        let b = family_polynomials(&AppellFamily::bernoulli(), 2).unwrap();
        assert_eq!(t.get(2), b.get(2));

        assert_eq!(load_family(r#"{"egf_coeffs":["0","1"]}"#), Err(AppellError::ZeroPrefactorConstant));
        assert_eq!(load_family(r#"{"lambda":"0","egf_coeffs":["1"]}"#), Err(AppellError::ZeroLambda));
        assert!(matches!(load_family("{not json"), Err(AppellError::MalformedDocument(_))));
        assert!(matches!(load_family(r#"{"egf_coeffs":["1/0"]}"#), Err(AppellError::MalformedDocument(_))));
        let p = load_family(r#"{"egf_coeffs":["1"],"parity":[1,-1]}"#).unwrap();
        assert_eq!(p.declared_parity(), Some(&ParityRule::Listed(vec![1, -1])));
    }

    #[test]
    fn lambda_scales_the_ladder() {
        let fam = AppellFamily::new("scaled", Rational::frac(3, 2), Prefactor::Explicit(vec![Rational::one(), Rational::from(2)]))
            .unwrap();
        let t = family_polynomials(&fam, 5).unwrap();
        assert!(check_ladder(&t).is_zero);
        let lead = t.get(5).unwrap().leading_term().unwrap().1.clone();
        assert_eq!(lead, Rational::frac(3, 2).pow(5));
    }
}
