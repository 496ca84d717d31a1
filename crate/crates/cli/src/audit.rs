//! Audit orchestration across every engine.

use std::f64::consts::PI;
use std::time::Instant;

use cyclic_audit_core::analytic::{self, AnalyticConfig, AnalyticError, AnalyticFn, Tuning, DEFAULT_STEP};
use cyclic_audit_core::appell::{self, AppellFamily, AppellPolynomialTable, BUILTIN_FAMILIES};
use cyclic_audit_core::cyclic;
use cyclic_audit_core::modular::{self, ModularError, PolyMod, Relation};
use cyclic_audit_core::qengine::{self, QCyclicParams, QKind, QMode};
use cyclic_audit_core::{DefectReport, Rational, Residual};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::report::{CheckEntry, Item, Record};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ConfigError {
    #[error("no checks selected")]
    EmptySelection,
    #[error("unknown section `{0}` (expected appell, cyclic, q, modular, numeric, analytic)")]
    UnknownSection(String),
    #[error("unknown tolerance `{0}`")]
    UnknownTolerance(String),
    #[error("invalid tolerance {key}={value}: must be positive and finite")]
    BadTolerance { key: String, value: f64 },
    #[error("weight range {min}..={max} must lie in even weights 4..={ceiling}")]
    WeightRange { min: usize, max: usize, ceiling: usize },
    #[error("{0}")]
    Invalid(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Section {
    Appell,
    Cyclic,
    Q,
    Modular,
    Numeric,
    Analytic,
}

impl Section {
    pub const ALL: [Section; 6] =
        [Section::Appell, Section::Cyclic, Section::Q, Section::Modular, Section::Numeric, Section::Analytic];

    pub fn parse(name: &str) -> Result<Self, ConfigError> {
        Ok(match name.trim() {
            "appell" => Section::Appell,
            "cyclic" => Section::Cyclic,
            "q" => Section::Q,
            "modular" => Section::Modular,
            "numeric" => Section::Numeric,
            "analytic" => Section::Analytic,
            other => return Err(ConfigError::UnknownSection(other.to_string())),
        })
    }
}

/// Every tolerance the audit judges numeric entries by.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Tolerances {
    pub zeta: f64,
    pub bernoulli_b: f64,
    pub hurwitz_formula: f64,
    pub ladder_b: f64,
    pub ladder_a: f64,
    pub catalan: f64,
    pub a_reflection: f64,
    pub polylog: f64,
    pub probe: f64,
    pub l_value: f64,
    pub quadrature: f64,
    pub period_relations: f64,
    pub projection: f64,
    pub modularity: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            zeta: 1e-12,
            bernoulli_b: 1e-10,
            hurwitz_formula: 1e-8,
            ladder_b: 1e-6,
            ladder_a: 1e-5,
            catalan: 1e-9,
            a_reflection: 1e-10,
            polylog: 1e-10,
            probe: 1e-8,
            l_value: 1e-12,
            quadrature: 1e-8,
            period_relations: 1e-8,
            projection: 1e-6,
            modularity: 1e-10,
        }
    }
}

impl Tolerances {
    pub const KEYS: [&'static str; 14] = [
        "zeta",
        "bernoulli_b",
        "hurwitz_formula",
        "ladder_b",
        "ladder_a",
        "catalan",
        "a_reflection",
        "polylog",
        "probe",
        "l_value",
        "quadrature",
        "period_relations",
        "projection",
        "modularity",
    ];

    fn slot(&mut self, key: &str) -> Option<&mut f64> {
        Some(match key {
            "zeta" => &mut self.zeta,
            "bernoulli_b" => &mut self.bernoulli_b,
            "hurwitz_formula" => &mut self.hurwitz_formula,
            "ladder_b" => &mut self.ladder_b,
            "ladder_a" => &mut self.ladder_a,
            "catalan" => &mut self.catalan,
            "a_reflection" => &mut self.a_reflection,
            "polylog" => &mut self.polylog,
            "probe" => &mut self.probe,
            "l_value" => &mut self.l_value,
            "quadrature" => &mut self.quadrature,
            "period_relations" => &mut self.period_relations,
            "projection" => &mut self.projection,
            "modularity" => &mut self.modularity,
            _ => return None,
        })
    }

    /// Applies `key=value`; `all=value` sets every tolerance.
    pub fn set(&mut self, key: &str, value: f64) -> Result<(), ConfigError> {
        if !(value.is_finite() && value > 0.0) {
            return Err(ConfigError::BadTolerance { key: key.to_string(), value });
        }
        if key == "all" {
            for k in Self::KEYS {
                *self.slot(k).expect("listed key") = value;
            }
            return Ok(());
        }
        *self.slot(key).ok_or_else(|| ConfigError::UnknownTolerance(key.to_string()))? = value;
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AuditConfig {
    pub sections: Vec<Section>,
    /// Highest `n` for the exact classical cyclic checks.
    pub cyclic_max_n: usize,
    pub transpose_max_n: usize,
    pub binomial_max_n: usize,
    /// Degree at which every family is additionally checked by sampling.
    pub sampled_n: usize,
    pub q_limit_max_n: usize,
    pub q_integer_max_n: usize,
    pub q_symbolic_max_n: usize,
    pub q_sampled_n: Vec<usize>,
    pub seed: u64,
    pub samples: usize,
    pub min_weight: usize,
    pub max_weight: usize,
    /// Largest `q`-expansion truncation for the discriminant pipeline.
    pub truncation: usize,
    pub tolerances: Tolerances,
}

impl Default for AuditConfig {
    fn default() -> Self {
        AuditConfig {
            sections: Section::ALL.to_vec(),
            cyclic_max_n: 10,
            transpose_max_n: 8,
            binomial_max_n: 3,
            sampled_n: 12,
            q_limit_max_n: 6,
            q_integer_max_n: 3,
            q_symbolic_max_n: 4,
            q_sampled_n: vec![5, 6],
            seed: 42,
            samples: 5,
            min_weight: 4,
            max_weight: 30,
            truncation: 40,
            tolerances: Tolerances::default(),
        }
    }
}

impl AuditConfig {
    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.sections.is_empty() {
            return Err(ConfigError::EmptySelection);
        }
        let ceiling = modular::DEFAULT_WEIGHT_CEILING;
        if self.min_weight < 4 || self.min_weight > self.max_weight || self.max_weight > ceiling {
            return Err(ConfigError::WeightRange { min: self.min_weight, max: self.max_weight, ceiling });
        }
        if self.truncation < 20 {
            return Err(ConfigError::Invalid(format!("truncation {} is below 20", self.truncation)));
        }
        if self.samples == 0 {
            return Err(ConfigError::Invalid("samples must be positive".into()));
        }
        if self.cyclic_max_n > cyclic::DEFAULT_MAX_N || self.sampled_n > 24 {
            return Err(ConfigError::Invalid(format!("cyclic degree ceiling is {}", cyclic::DEFAULT_MAX_N)));
        }
        Ok(())
    }

    fn has(&self, s: Section) -> bool {
        self.sections.contains(&s)
    }
}

type Job<'a> = Box<dyn Fn() -> Vec<Item> + Send + Sync + 'a>;

fn timed(f: impl FnOnce() -> Vec<Item>) -> Vec<Item> {
    let start = Instant::now();
    let mut items = f();
    let ms = start.elapsed().as_millis() as u64;
    for it in &mut items {
        if let Item::Check(c) = it {
            if c.elapsed_ms == 0 {
                c.elapsed_ms = ms;
            }
        }
    }
    items
}

pub fn analytic_failure(name: &str, params: &str, e: &AnalyticError) -> CheckEntry {
    let nonconvergent = matches!(e, AnalyticError::NonConvergent(_) | AnalyticError::AccuracyUnreachable { .. });
    CheckEntry::error(name, params, e.to_string(), nonconvergent)
}

pub fn modular_failure(name: &str, params: &str, e: &ModularError) -> CheckEntry {
    let nonconvergent = matches!(e, ModularError::InsufficientTruncation { .. });
    CheckEntry::error(name, params, e.to_string(), nonconvergent)
}

fn builtin_table(name: &str, n: usize) -> AppellPolynomialTable {
    appell::family_polynomials(&AppellFamily::builtin(name).expect("builtin"), n).expect("builtin table")
}

/// Runs every selected check. Errors inside individual checks are captured
/// as entries; only an invalid configuration fails the run.
pub fn run_audit(cfg: &AuditConfig) -> Result<Vec<Item>, ConfigError> {
    cfg.validate()?;
    let mut jobs: Vec<Job> = Vec::new();
    if cfg.has(Section::Appell) {
        appell_jobs(cfg, &mut jobs);
    }
    if cfg.has(Section::Cyclic) {
        cyclic_jobs(cfg, &mut jobs);
    }
    if cfg.has(Section::Q) {
        q_jobs(cfg, &mut jobs);
    }
    if cfg.has(Section::Modular) {
        modular_jobs(cfg, &mut jobs);
    }
    if cfg.has(Section::Numeric) {
        numeric_jobs(cfg, &mut jobs);
    }
    if cfg.has(Section::Analytic) {
        analytic_jobs(cfg, &mut jobs);
    }
    Ok(jobs.par_iter().flat_map_iter(timed).collect())
}

fn appell_jobs<'a>(cfg: &'a AuditConfig, jobs: &mut Vec<Job<'a>>) {
    for name in BUILTIN_FAMILIES {
        jobs.push(Box::new(move || {
            let table = builtin_table(name, cfg.cyclic_max_n);
            let mut out: Vec<Item> = vec![appell::check_ladder(&table).into()];
            match appell::egf_residuals(&table) {
                Ok(res) => {
                    let bad: Vec<String> =
                        res.iter().enumerate().filter(|(_, r)| !r.is_zero()).map(|(i, r)| format!("n={i}: {r}")).collect();
                    let text = if bad.is_empty() { "0".to_string() } else { bad.join("; ") };
                    out.push(DefectReport::exact(format!("appell/egf/{name}"), format!("n<={}", cfg.cyclic_max_n), text).into());
                }
                Err(e) => out.push(CheckEntry::error(format!("appell/egf/{name}"), "", e.to_string(), false).into()),
            }
            if table.family().declared_parity().is_some() {
                out.push(appell::reflection_report(&table).into());
            } else {
                let signs: Vec<Value> = appell::check_reflection(&table)
                    .into_iter()
                    .map(|r| match r {
                        appell::Reflection::Parity(e) => json!(e),
                        appell::Reflection::NoParity { .. } => Value::Null,
                    })
                    .collect();
                out.push(Record::new(format!("appell/reflection/{name}"), format!("n<={}", cfg.cyclic_max_n), json!(signs)).into());
            }
            out.push(
                Record::new(
                    format!("appell/polynomials/{name}"),
                    "n<=4",
                    json!(table.polys().iter().take(5).map(|p| p.to_string()).collect::<Vec<_>>()),
                )
                .into(),
            );
            out
        }));
    }
}

fn cyclic_jobs<'a>(cfg: &'a AuditConfig, jobs: &mut Vec<Job<'a>>) {
    for name in BUILTIN_FAMILIES {
        let top = cfg.cyclic_max_n.max(cfg.transpose_max_n).max(cfg.sampled_n);
        for n in 0..=cfg.cyclic_max_n {
            jobs.push(Box::new(move || {
                let table = builtin_table(name, n);
                vec![match cyclic::cyclic_defect_report(&table, n) {
                    Ok(r) => r.into(),
                    Err(e) => CheckEntry::error(format!("cyclic/{name}"), format!("n={n}"), e.to_string(), false).into(),
                }]
            }));
        }
        for n in 0..=cfg.transpose_max_n {
            jobs.push(Box::new(move || {
                let table = builtin_table(name, n);
                vec![match cyclic::transpose_report(&table, n) {
                    Ok(r) => r.into(),
                    Err(e) => CheckEntry::error(format!("bracket-transpose/{name}"), format!("n={n}"), e.to_string(), false).into(),
                }]
            }));
        }
        jobs.push(Box::new(move || {
            let table = builtin_table(name, top);
            match cyclic::cyclic_defect_sampled(&table, cfg.sampled_n, cfg.seed, cfg.samples) {
                Ok(rs) => rs.into_iter().map(Item::from).collect(),
                Err(e) => vec![CheckEntry::error(
                    format!("cyclic-sampled/{name}"),
                    format!("n={}", cfg.sampled_n),
                    e.to_string(),
                    false,
                )
                .into()],
            }
        }));
    }
    for n in 0..=cfg.binomial_max_n {
        for k in 0..=n {
            jobs.push(Box::new(move || {
                let params = format!("n={n},k={k}");
                vec![match cyclic::binomial_cyclic_defect(n, k) {
                    Ok(p) => DefectReport::exact("binomial-defect", params, p).into(),
                    Err(e) => CheckEntry::error("binomial-defect", params, e.to_string(), false).into(),
                }]
            }));
        }
    }
}

fn q_entry(kind: QKind, name: &str, params: String, r: Result<DefectReport, qengine::QError>) -> Item {
    match r {
        Ok(r) => r.into(),
        Err(e) => CheckEntry::error(format!("{name}/{kind}"), params, e.to_string(), false).into(),
    }
}

fn q_jobs<'a>(cfg: &'a AuditConfig, jobs: &mut Vec<Job<'a>>) {
    for kind in [QKind::Bernoulli, QKind::Euler] {
        jobs.push(Box::new(move || {
            let table = qengine::q_family_polynomials(kind, cfg.q_limit_max_n);
            let polys = table.polys().iter().take(3).map(|p| p.to_string()).collect::<Vec<_>>();
            vec![
                q_entry(kind, "q-limit", format!("n<={}", cfg.q_limit_max_n), qengine::q_to_one_check(&table)),
                Record::new(format!("q-polys/{kind}"), "n<=2", json!(polys)).into(),
            ]
        }));
        for n in 0..=cfg.q_integer_max_n {
            for r in 0..=n as u32 {
                for s in 0..=(n as u32 - r) {
                    let t = n as u32 - r - s;
                    jobs.push(Box::new(move || {
                        let table = qengine::q_family_polynomials(kind, n);
                        let params = format!("n={n},r={r},s={s},t={t}");
                        let res = QCyclicParams::integer(n, r, s, t).and_then(|p| qengine::q_cyclic_defect(&table, &p));
                        vec![q_entry(kind, "q-cyclic", params, res)]
                    }));
                }
            }
        }
        for n in 0..=cfg.q_symbolic_max_n {
            jobs.push(Box::new(move || {
                let table = qengine::q_family_polynomials(kind, n);
                let res = qengine::q_cyclic_defect(&table, &QCyclicParams::symbolic(n));
                vec![q_entry(kind, "q-cyclic", format!("n={n},symbolic"), res)]
            }));
        }
        for &n in &cfg.q_sampled_n {
            jobs.push(Box::new(move || {
                let table = qengine::q_family_polynomials(kind, n);
                match qengine::q_cyclic_defect_sampled(&table, n, cfg.seed, cfg.samples) {
                    Ok(check) => {
                        let mut out: Vec<Item> = check.samples.into_iter().map(Item::from).collect();
                        if let Some(r) = check.escalated {
                            out.push(r.into());
                        }
                        out
                    }
                    Err(e) => vec![q_entry(kind, "q-cyclic-sampled", format!("n={n}"), Err(e))],
                }
            }));
        }
    }
    for n in 0..=2usize {
        for k in 0..=n {
            jobs.push(Box::new(move || {
                let params = format!("n={n},k={k},symbolic");
                vec![match qengine::q_binomial_cyclic_defect(n, k, QMode::Symbolic) {
                    Ok(v) => DefectReport::exact("q-binomial-defect", params, v).into(),
                    Err(e) => CheckEntry::error("q-binomial-defect", params, e.to_string(), false).into(),
                }]
            }));
        }
    }
}

pub fn coeff_strings(p: &PolyMod) -> Vec<String> {
    p.coeffs().iter().map(|c| c.to_string()).collect()
}

fn relation_text(p: &PolyMod, k: usize) -> Result<String, ModularError> {
    let three = modular::three_term_standard(p, k)?;
    let s = modular::s_relation(p);
    Ok(if three.is_zero() && s.is_zero() { "0".to_string() } else { format!("three-term: {three}; S: {s}") })
}

fn period_space_entry(k: usize) -> Item {
    let params = format!("k={k}");
    let space = match modular::period_space(k) {
        Ok(s) => s,
        Err(e) => return modular_failure("period-space", &params, &e).into(),
    };
    let expected = 2 * modular::cuspform_dim(k) + 1;
    let mut problems = Vec::new();
    if space.dim() != expected {
        problems.push(format!("dim {} != 2*{}+1", space.dim(), modular::cuspform_dim(k)));
    }
    for (i, b) in space.basis.iter().enumerate() {
        match relation_text(b, k) {
            Ok(t) if t == "0" => {}
            Ok(t) => problems.push(format!("basis {i}: {t}")),
            Err(e) => problems.push(format!("basis {i}: {e}")),
        }
    }
    let text = if problems.is_empty() { "0".to_string() } else { problems.join("; ") };
    let value = json!({
        "dim": space.dim(),
        "cuspform_dim": modular::cuspform_dim(k),
        "basis": space.basis.iter().map(coeff_strings).collect::<Vec<_>>(),
    });
    CheckEntry::from_defect(DefectReport::exact("period-space", params, text)).with_value(value).into()
}

fn modular_jobs<'a>(cfg: &'a AuditConfig, jobs: &mut Vec<Job<'a>>) {
    for k in (cfg.min_weight..=cfg.max_weight).filter(|k| k % 2 == 0) {
        jobs.push(Box::new(move || vec![period_space_entry(k)]));
    }
    jobs.push(Box::new(|| {
        (2..=20usize)
            .step_by(2)
            .map(|w| {
                let params = format!("w={w}");
                let mut c = vec![Rational::zero(); w + 1];
                c[0] = Rational::from(-1);
                c[w] = Rational::one();
                let p = PolyMod::new(w, c).expect("degree fits");
                match relation_text(&p, w + 2) {
                    Ok(t) => DefectReport::exact("period-membership/z^w-1", params, t).into(),
                    Err(e) => modular_failure("period-membership/z^w-1", &params, &e).into(),
                }
            })
            .collect()
    }));
    jobs.push(Box::new(|| {
        let mut out: Vec<Item> = Vec::new();
        let p = PolyMod::from_ints(2, &[-1, 0, 1]).expect("fits");
        for (name, res) in [
            ("three-term-paper", modular::three_term_paper(&p, 4)),
            ("three-term-standard", modular::three_term_standard(&p, 4)),
        ] {
            let params = format!("k=4,P={p}");
            out.push(match res {
                Ok(r) => DefectReport::exact(name, params, r).into(),
                Err(e) => modular_failure(name, &params, &e).into(),
            });
        }
        let space = |rels: &[Relation]| -> String {
            match modular::solution_space(4, rels) {
                Ok(b) => format!("[{}]", b.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(", ")),
                Err(e) => e.to_string(),
            }
        };
        let literal = space(&[Relation::ThreeTermPaper]);
        let joint = space(&[Relation::ThreeTermPaper, Relation::S]);
        let standard = space(&[Relation::ThreeTermStandard, Relation::S]);
        // The literal display is compared against the standard joint space.
        let text = if joint == standard { "0".to_string() } else { format!("joint={joint}; literal={literal}; standard={standard}") };
        out.push(DefectReport::exact("three-term-paper/solution-space", "k=4", text).into());
        out
    }));
    jobs.push(Box::new(|| {
        let d = modular::delta_qexp(6);
        let tau = |n: usize| d.coeffs()[n].clone();
        let expected = [(1usize, 1i64), (2, -24), (3, 252), (4, -1472), (5, 4830), (6, -6048)];
        let bad: Vec<String> = expected
            .iter()
            .filter(|(n, v)| tau(*n) != Rational::from(*v))
            .map(|(n, v)| format!("tau({n}) = {} != {v}", tau(*n)))
            .collect();
        let text = if bad.is_empty() { "0".to_string() } else { bad.join("; ") };
        let mut out: Vec<Item> = vec![DefectReport::exact("qexp/delta", "n<=6", text).into()];
        for (k, a1, a2) in [(4usize, 240i64, 2160i64), (6, -504, -16632)] {
            let params = format!("k={k},n<=2");
            out.push(match modular::eisenstein_qexp(k, 3) {
                Ok(e) => {
                    let c = e.coeffs();
                    let ok = c[0] == Rational::one() && c[1] == Rational::from(a1) && c[2] == Rational::from(a2);
                    let text = if ok { "0".to_string() } else { format!("got {}, {}, {}", c[0], c[1], c[2]) };
                    DefectReport::exact("qexp/eisenstein", params, text).into()
                }
                Err(e) => modular_failure("qexp/eisenstein", &params, &e).into(),
            });
        }
        out
    }));
    jobs.push(Box::new(move || {
        // Away from the orbits of i and e^{2 pi i/3}, where E_6 and E_4 vanish.
        let samples = [Complex64::new(0.3, 1.1), Complex64::new(-0.2, 0.9), Complex64::new(0.1, 1.4)];
        let tol = cfg.tolerances.modularity;
        let mut out: Vec<Item> = Vec::new();
        let forms = [
            ("delta", Ok(modular::delta_qexp(cfg.truncation))),
            ("eisenstein-4", modular::eisenstein_qexp(4, 2 * cfg.truncation)),
            ("eisenstein-6", modular::eisenstein_qexp(6, 2 * cfg.truncation)),
        ];
        for (name, f) in forms {
            let check = format!("modularity/{name}");
            let params = format!("N={},samples=3", f.as_ref().map(|f| f.truncation()).unwrap_or(0));
            let res = f.and_then(|f| modular::modularity_check_numeric(&f, &samples, tol));
            out.push(match res {
                Ok(m) => CheckEntry::numeric(check, params, m.max_residual, tol, m.tail_bound).into(),
                Err(e) => modular_failure(&check, &params, &e).into(),
            });
        }
        out
    }));
}

fn numeric_jobs<'a>(cfg: &'a AuditConfig, jobs: &mut Vec<Job<'a>>) {
    const K: usize = 12;
    let big = cfg.truncation;
    let small = (big / 2).max(20);
    jobs.push(Box::new(move || {
        let tol = cfg.tolerances.l_value;
        let d = modular::delta_qexp(big);
        let mut out: Vec<Item> = Vec::new();
        for m in 1..K {
            let params = format!("m={m},N={small}/{big}");
            let lv = (modular::completed_l(&d, K, m, small), modular::completed_l(&d, K, m, big), modular::completed_l(&d, K, K - m, big));
            match lv {
                (Ok(a), Ok(b), Ok(c)) => {
                    let stab = (a.value - b.value).abs() / b.value.abs();
                    let sym = (b.value - c.value).abs() / b.value.abs();
                    out.push(CheckEntry::numeric("l-value/stability", params, stab, tol, (a.error_estimate + b.error_estimate) / b.value.abs()).into());
                    out.push(
                        CheckEntry::numeric("l-value/symmetry", format!("m={m},N={big}"), sym, tol, (b.error_estimate + c.error_estimate) / b.value.abs())
                            .into(),
                    );
                    out.push(Record::new("l-value", format!("m={m},N={big}"), json!({"value": b.value, "error_estimate": b.error_estimate})).into());
                }
                (Err(e), _, _) | (_, Err(e), _) | (_, _, Err(e)) => out.push(modular_failure("l-value/stability", &params, &e).into()),
            }
        }
        out
    }));
    jobs.push(Box::new(move || {
        let tol = cfg.tolerances.quadrature;
        let d = modular::delta_qexp(big);
        (1..K)
            .map(|m| {
                let params = format!("m={m},N={big}");
                match modular::completed_l(&d, K, m, big) {
                    Ok(l) => {
                        let q = quadrature_lambda(&d, m);
                        CheckEntry::numeric("l-value/quadrature", params, (l.value - q).abs() / q.abs(), tol, l.error_estimate / q.abs())
                            .into()
                    }
                    Err(e) => modular_failure("l-value/quadrature", &params, &e).into(),
                }
            })
            .collect()
    }));
    jobs.push(Box::new(move || {
        let tol = cfg.tolerances.period_relations;
        let d = modular::delta_qexp(big);
        let params = format!("N={big}");
        let r = match modular::period_polynomial_numeric(&d, K, big) {
            Ok(r) => r,
            Err(e) => return vec![modular_failure("period-numeric/three-term", &params, &e).into()],
        };
        let (three, s) = modular::numeric_relation_residuals(&r.poly);
        let scale = r.poly.max_norm();
        let est = r.error_estimate / scale;
        let coeffs: Vec<Value> = r.poly.coeffs().iter().map(|c| json!({"re": c.re, "im": c.im})).collect();
        let mut out: Vec<Item> = vec![
            CheckEntry::numeric("period-numeric/three-term", params.clone(), three, tol, est).into(),
            CheckEntry::numeric("period-numeric/s-relation", params.clone(), s, tol, est).into(),
            Record::new("period-numeric/coefficients", params.clone(), json!({"coeffs": coeffs, "error_estimate": r.error_estimate}))
                .into(),
        ];
        match modular::period_projection(&d, K, big) {
            Ok(p) => {
                let comps: Vec<Value> = p.components.iter().map(|c| json!({"re": c.re, "im": c.im})).collect();
                out.push(
                    CheckEntry::numeric("period-numeric/projection", params, p.relative_residual, cfg.tolerances.projection, est)
                        .with_value(json!({ "components": comps }))
                        .into(),
                );
            }
            Err(e) => out.push(modular_failure("period-numeric/projection", &params, &e).into()),
        }
        out
    }));
    jobs.push(Box::new(move || {
        let ns = [(big * 3 / 4).max(20), big + 10];
        let params = format!("N={}/{},max_denom=1000000", ns[0], ns[1]);
        let d = modular::delta_qexp(ns[1]);
        match modular::even_ratio_reconstruction(&d, K, &ns, 1_000_000) {
            Ok(er) => {
                let text = match er.value() {
                    Some(_) => "0".to_string(),
                    None => format!(
                        "unstable: {}",
                        er.reconstructed.iter().map(|r| r.as_ref().map_or("none".to_string(), |r| r.to_string())).collect::<Vec<_>>().join(", ")
                    ),
                };
                let value = json!({
                    "ratio": er.value().map(|r| r.to_string()),
                    "numeric": er.ratios.iter().map(|(n, v)| json!({"N": n, "value": v})).collect::<Vec<_>>(),
                    "basis": er.basis.iter().map(coeff_strings).collect::<Vec<_>>(),
                });
                vec![CheckEntry::from_defect(DefectReport::exact("period-numeric/even-ratio", params, text)).with_value(value).into()]
            }
            Err(e) => vec![modular_failure("period-numeric/even-ratio", &params, &e).into()],
        }
    }));
}

/// `Lambda(m)` by adaptive Simpson quadrature of
/// `int_1^inf f(it) (t^{m-1} + (-1)^{k/2} t^{k-1-m}) dt`, cut at `t = 12`.
fn quadrature_lambda(f: &modular::QExpansion, m: usize) -> f64 {
    let k = f.weight() as i32;
    let sign = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
    let g = |t: f64| f.eval(Complex64::new(0.0, t)).re * (t.powi(m as i32 - 1) + sign * t.powi(k - 1 - m as i32));
    adaptive_simpson(&g, 1.0, 12.0, 1e-14, 40)
}

fn adaptive_simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, eps: f64, depth: u32) -> f64 {
    fn simpson(fa: f64, fm: f64, fb: f64, a: f64, b: f64) -> f64 {
        (b - a) / 6.0 * (fa + 4.0 * fm + fb)
    }
    #[allow(clippy::too_many_arguments)]
    fn rec(f: &dyn Fn(f64) -> f64, a: f64, b: f64, fa: f64, fm: f64, fb: f64, whole: f64, eps: f64, depth: u32) -> f64 {
        let m = 0.5 * (a + b);
        let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
        let (flm, frm) = (f(lm), f(rm));
        let left = simpson(fa, flm, fm, a, m);
        let right = simpson(fm, frm, fb, m, b);
        if depth == 0 || (left + right - whole).abs() <= 15.0 * eps {
            return left + right + (left + right - whole) / 15.0;
        }
        rec(f, a, m, fa, flm, fm, left, eps / 2.0, depth - 1) + rec(f, m, b, fm, frm, fb, right, eps / 2.0, depth - 1)
    }
    let (fa, fb, fm) = (f(a), f(b), f(0.5 * (a + b)));
    rec(f, a, b, fa, fm, fb, simpson(fa, fm, fb, a, b), eps, depth)
}

/// Catalan's constant from its alternating series, with half the next term.
pub fn catalan_series() -> f64 {
    let k = 100_000usize;
    let mut acc = 0.0;
    for i in (0..k).rev() {
        let t = 1.0 / ((2 * i + 1) as f64).powi(2);
        acc += if i % 2 == 0 { t } else { -t };
    }
    let next = 1.0 / ((2 * k + 1) as f64).powi(2);
    acc + if k.is_multiple_of(2) { 0.5 * next } else { -0.5 * next }
}

pub const HURWITZ_GRID: [(f64, f64); 6] = [(2.5, 0.3), (3.5, 0.7), (4.0, 0.5), (2.0, 0.1), (3.0, 0.25), (5.5, 0.9)];
pub const REFLECTION_S: [f64; 3] = [2.0, 2.5, 3.5];
pub const REFLECTION_X: [f64; 3] = [0.1, 0.25, 0.4];

fn analytic_jobs<'a>(cfg: &'a AuditConfig, jobs: &mut Vec<Job<'a>>) {
    let tol = &cfg.tolerances;
    let acfg = AnalyticConfig::default();
    jobs.push(Box::new(move || {
        let mut out: Vec<Item> = Vec::new();
        for (s, x, expected) in [(2.0, 1.0, PI * PI / 6.0), (-1.0, 1.0, -1.0 / 12.0)] {
            let params = format!("s={s},x={x}");
            out.push(match analytic::hurwitz_zeta(s, x, Tuning::Auto) {
                Ok(z) => CheckEntry::numeric("analytic/zeta", params, (z.real() - expected).abs(), tol.zeta, z.error_estimate)
                    .with_value(json!(z.real()))
                    .into(),
                Err(e) => analytic_failure("analytic/zeta", &params, &e).into(),
            });
        }
        out
    }));
    jobs.push(Box::new(move || {
        let table = builtin_table("bernoulli", 8);
        let mut out: Vec<Item> = Vec::new();
        for n in 1..=8usize {
            let params = format!("n={n},x=0.1..0.9");
            let mut worst = 0.0f64;
            let mut est = 0.0f64;
            let mut failure = None;
            for k in 1..=9i64 {
                let exact = table.get(n).expect("covered").evaluate(&[Rational::frac(k, 10)]).to_f64();
                match analytic::analytic_bernoulli_b(n as f64, k as f64 / 10.0, Tuning::Auto) {
                    Ok(b) => {
                        worst = worst.max((b.real() - exact).abs());
                        est = est.max(b.error_estimate);
                    }
                    Err(e) => failure = Some(e),
                }
            }
            out.push(match failure {
                Some(e) => analytic_failure("analytic/bernoulli-b", &params, &e).into(),
                None => CheckEntry::numeric("analytic/bernoulli-b", params, worst, tol.bernoulli_b, est).into(),
            });
        }
        out
    }));
    jobs.push(Box::new(move || {
        HURWITZ_GRID
            .iter()
            .map(|&(s, x)| match analytic::hurwitz_formula_check(s, x, tol.hurwitz_formula, &acfg) {
                Ok(r) => r.into(),
                Err(e) => analytic_failure("analytic/hurwitz-formula", &format!("s={s},x={x}"), &e).into(),
            })
            .collect()
    }));
    jobs.push(Box::new(move || {
        [(AnalyticFn::B, 3.0, 0.4, tol.ladder_b), (AnalyticFn::B, 2.5, 0.5, tol.ladder_b), (AnalyticFn::A, 3.0, 0.25, tol.ladder_a)]
            .iter()
            .map(|&(func, s, x, t)| match analytic::appell_ladder_numeric(func, s, x, DEFAULT_STEP, t, &acfg) {
                Ok(r) => r.into(),
                Err(e) => analytic_failure(&format!("analytic/ladder/{func}"), &format!("s={s},x={x},h={DEFAULT_STEP}"), &e).into(),
            })
            .collect()
    }));
    jobs.push(Box::new(move || {
        let mut out: Vec<Item> = Vec::new();
        let expected = catalan_series() / (PI * PI);
        for (x, want, name) in [(0.25, expected, "analytic/a-catalan"), (0.5, 0.0, "analytic/a-half")] {
            let params = format!("s=2,x={x}");
            let t = if x == 0.25 { tol.catalan } else { tol.a_reflection };
            out.push(match analytic::analytic_bernoulli_a(2.0, x, &acfg.polylog) {
                Ok(a) => CheckEntry::numeric(name, params, (a.real() - want).abs(), t, a.error_estimate).with_value(json!(a.real())).into(),
                Err(e) => analytic_failure(name, &params, &e).into(),
            });
        }
        let params = "s=2,x=0.5";
        out.push(match analytic::polylog_unit_circle(2.0, 0.5, &acfg.polylog) {
            Ok(li) => {
                let dev = (li.complex() - Complex64::new(-PI * PI / 12.0, 0.0)).norm();
                CheckEntry::numeric("analytic/polylog", params, dev, tol.polylog, li.error_estimate).into()
            }
            Err(e) => analytic_failure("analytic/polylog", params, &e).into(),
        });
        out
    }));
    for s in REFLECTION_S {
        jobs.push(Box::new(move || REFLECTION_X.iter().flat_map(|&x| a_reflection_items(s, x, tol.a_reflection, &acfg)).collect()));
    }
    jobs.push(Box::new(move || {
        let mut out: Vec<Item> = Vec::new();
        let points = [(4, 0.2, 0.3, 1.0, 1.5), (2, 0.1, 0.6, 0.3, -0.7), (2, 0.45, 0.45, 2.5, 1.25), (2, 0.3, 0.2, -1.0, 4.0)];
        for (n, x, y, r, s) in points {
            out.push(match analytic::analytic_cyclic_probe(n, 0.0, x, y, r, s, tol.probe, &acfg) {
                Ok(rep) => rep.into(),
                Err(e) => analytic_failure("analytic/cyclic-probe", &format!("n={n},delta=0,r={r},s={s},x={x},y={y}"), &e).into(),
            });
        }
        // Off the integers no identity is claimed; the value is recorded only.
        for delta in [0.25, 0.5] {
            let params = format!("n=2,delta={delta},r=1,s=1.5,x=0.2,y=0.3");
            match analytic::analytic_cyclic_probe(2, delta, 0.2, 0.3, 1.0, 1.5, f64::INFINITY, &acfg) {
                Ok(rep) => {
                    let value = match rep.residual {
                        Residual::Numeric { value, .. } => value,
                        Residual::Exact(_) => f64::NAN,
                    };
                    out.push(Record::new("analytic/cyclic-probe", params, json!({"value": value, "error_estimate": rep.error_estimate})).into())
                }
                Err(e) => out.push(analytic_failure("analytic/cyclic-probe", &params, &e).into()),
            }
        }
        out
    }));
}

/// `A(s;1-x) = -A(s;x)` as stated, plus the closed form of the sum,
/// `A(s;x) + A(s;1-x) = 4 Gamma(s+1)/(2 pi)^s sin(pi s/2) Re Li_s(e^{2 pi i x})`.
pub fn a_reflection_items(s: f64, x: f64, tol: f64, cfg: &AnalyticConfig) -> Vec<Item> {
    let params = format!("s={s},x={x}");
    let parts = (
        analytic::analytic_bernoulli_a(s, x, &cfg.polylog),
        analytic::analytic_bernoulli_a(s, 1.0 - x, &cfg.polylog),
        analytic::polylog_unit_circle(s, x, &cfg.polylog),
    );
    match parts {
        (Ok(p), Ok(q), Ok(li)) => {
            let sum = p.real() + q.real();
            let est = p.error_estimate + q.error_estimate;
            let scale = 4.0 * analytic::gamma(s + 1.0) / (2.0 * PI).powf(s);
            let predicted = scale * (PI * s / 2.0).sin() * li.complex().re;
            vec![
                CheckEntry::numeric("analytic/a-antisymmetry", params.clone(), sum.abs(), tol, est).with_value(json!(sum)).into(),
                CheckEntry::numeric("analytic/a-reflection-sum", params, (sum - predicted).abs(), tol, est + scale * li.error_estimate)
                    .with_value(json!(predicted))
                    .into(),
            ]
        }
        (Err(e), _, _) | (_, Err(e), _) | (_, _, Err(e)) => vec![analytic_failure("analytic/a-antisymmetry", &params, &e).into()],
    }
}

/// Ladder and reflection checks plus the tabulated polynomials of one family.
pub fn family_items(table: &AppellPolynomialTable) -> Vec<Item> {
    let mut out: Vec<Item> = vec![appell::check_ladder(table).into(), appell::reflection_report(table).into()];
    out.extend(table.polys().iter().enumerate().map(|(n, p)| Record::new(format!("family/{}", table.family().name()), format!("n={n}"), json!(p.to_string())).into()));
    out
}
