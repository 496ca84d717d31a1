//! Subcommands and their dispatch.

use clap::{Args, Parser, Subcommand, ValueEnum};
use cyclic_audit_core::analytic::{self, AnalyticConfig, AnalyticError, AnalyticFn, PolylogConfig, Tuning, DEFAULT_STEP};
use cyclic_audit_core::appell::{self, AppellFamily};
use cyclic_audit_core::cyclic;
use cyclic_audit_core::modular::{self, GL2Mat, ModularError};
use cyclic_audit_core::qengine::{self, QCyclicParams, QKind};
use cyclic_audit_core::{DefectReport, Rational};
use serde_json::{json, Value};

use crate::audit::{self, analytic_failure, coeff_strings, AuditConfig, ConfigError, Section};
use crate::parse::parse_polymod;
use crate::report::{CheckEntry, Item, Record};

#[derive(Debug, Parser)]
#[command(name = "cyclic-audit", version, about = "Exact and numeric audit of cyclic vanishing identities")]
pub struct Cli {
    /// Emit the JSON report instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Do not fail on defects listed in the known-discrepancy manifest.
    #[arg(long, global = true)]
    pub expect_known: bool,
    /// Record per-check wall-clock times (makes output nondeterministic).
    #[arg(long, global = true)]
    pub timings: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Mode {
    Symbolic,
    Sampled,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Variant {
    Paper,
    Standard,
    Both,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Form {
    Delta,
    Eisenstein,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Function {
    Zeta,
    B,
    A,
    Polylog,
    LadderA,
    LadderB,
    HurwitzFormula,
    Probe,
    AReflection,
}

#[derive(Debug, Args)]
pub struct FamilyArgs {
    /// Builtin family name.
    #[arg(long, default_value = "bernoulli", conflicts_with = "file")]
    pub family: String,
    /// JSON family descriptor file.
    #[arg(long)]
    pub file: Option<std::path::PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Bernoulli polynomials B_0..B_n.
    Bernoulli {
        #[arg(long, default_value_t = 6)]
        n: usize,
    },
    /// Euler polynomials E_0..E_n.
    Euler {
        #[arg(long, default_value_t = 6)]
        n: usize,
    },
    /// Tabulate a family and check its ladder and reflection rules.
    Family {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, default_value_t = 6)]
        n: usize,
    },
    /// Classical cyclic defect of a family at degree n.
    CyclicCheck {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Mode::Symbolic)]
        mode: Mode,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 5)]
        samples: usize,
    },
    /// The per-k binomial expression as a polynomial in r, s.
    BinomialDefect {
        #[arg(long, default_value_t = 1)]
        n: usize,
        /// Single k; all 0..=n when omitted.
        #[arg(long)]
        k: Option<usize>,
    },
    /// q-Bernoulli or q-Euler polynomials.
    QPolys {
        #[arg(long, default_value = "q-bernoulli")]
        kind: String,
        #[arg(long, default_value_t = 2)]
        n: usize,
    },
    /// q-cyclic defect, symbolic in (rho, sigma), at an integer triple, or sampled.
    QCyclicCheck {
        #[arg(long, default_value = "q-bernoulli")]
        kind: String,
        #[arg(long, default_value_t = 0)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Mode::Symbolic)]
        mode: Mode,
        /// Integer triple `r,s,t` with r+s+t = n (overrides --mode).
        #[arg(long, value_delimiter = ',')]
        triple: Option<Vec<u32>>,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 5)]
        samples: usize,
    },
    /// Exact q -> 1 limits against the classical families.
    QLimit {
        #[arg(long, default_value = "q-bernoulli")]
        kind: String,
        #[arg(long, default_value_t = 6)]
        n: usize,
    },
    /// Exact period-polynomial space of weight k.
    PeriodSpace {
        #[arg(long, default_value_t = 12)]
        weight: usize,
    },
    /// Three-term relations applied to a polynomial.
    ThreeTerm {
        #[arg(long, default_value_t = 4)]
        weight: usize,
        #[arg(long, default_value = "z^2 - 1")]
        poly: String,
        #[arg(long, value_enum, default_value_t = Variant::Both)]
        variant: Variant,
    },
    /// Weight-(k-2) slash action of a 2x2 integer matrix.
    Slash {
        #[arg(long, default_value_t = 4)]
        weight: usize,
        #[arg(long)]
        poly: String,
        /// Entries `a,b,c,d` with ad - bc = +-1.
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        matrix: Vec<i64>,
    },
    /// q-expansion coefficients of the discriminant or an Eisenstein series.
    Qexp {
        #[arg(long, value_enum, default_value_t = Form::Delta)]
        form: Form,
        #[arg(long, default_value_t = 12)]
        weight: usize,
        #[arg(long, default_value_t = 10)]
        truncation: usize,
        /// Also check modularity at these points `re:im`.
        #[arg(long, value_delimiter = ',')]
        tau: Vec<String>,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
    /// Completed L-values of the discriminant.
    LValue {
        /// Single m in 1..=11; all when omitted.
        #[arg(long)]
        m: Option<usize>,
        #[arg(long, default_value_t = 40)]
        truncation: usize,
    },
    /// Numeric period polynomial of the discriminant and its relation checks.
    PeriodNumeric {
        #[arg(long, default_value_t = 40)]
        truncation: usize,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
    },
    /// Analytic Bernoulli functions, zeta, polylog and their checks.
    Analytic {
        #[arg(long, value_enum)]
        function: Function,
        #[arg(long, allow_negative_numbers = true)]
        s: Option<f64>,
        #[arg(long, allow_negative_numbers = true)]
        x: Option<f64>,
        #[arg(long)]
        tol: Option<f64>,
        /// Finite-difference step for ladders.
        #[arg(long)]
        h: Option<f64>,
        /// Degree for the cyclic probe.
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long, default_value_t = 0.0)]
        delta: f64,
        /// Probe point `r,s,x,y`.
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        point: Option<Vec<f64>>,
        /// Fixed Euler-Maclaurin tuning `N,J` instead of automatic.
        #[arg(long, value_delimiter = ',')]
        tuning: Option<Vec<usize>>,
        /// Polylog accuracy target.
        #[arg(long)]
        target: Option<f64>,
    },
    /// Run the full audit.
    Audit {
        /// Comma separated sections: appell, cyclic, q, modular, numeric, analytic.
        #[arg(long, value_delimiter = ',')]
        only: Option<Vec<String>>,
        /// Classical cyclic degree ceiling.
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long)]
        truncation: Option<usize>,
        /// Weight range `min,max`.
        #[arg(long, value_delimiter = ',')]
        weight: Option<Vec<usize>>,
        /// Tolerance override `key=value` (or `all=value`); repeatable.
        #[arg(long)]
        tol: Vec<String>,
    },
}

/// Failure before any report exists.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("{0}")]
    NonConvergent(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Config(_) => 2,
            CliError::NonConvergent(_) => 3,
        }
    }
}

fn arity<T>(flag: &str, v: &Option<Vec<T>>, n: usize) -> Result<(), CliError> {
    match v {
        Some(v) if v.len() != n => Err(usage(format!("--{flag} takes {n} comma-separated values"))),
        _ => Ok(()),
    }
}

fn usage(e: impl std::fmt::Display) -> CliError {
    CliError::Usage(e.to_string())
}

fn load_family(args: &FamilyArgs) -> Result<AppellFamily, CliError> {
    match &args.file {
        Some(path) => {
            let doc = std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
            appell::load_family(&doc).map_err(usage)
        }
        None => AppellFamily::builtin(&args.family).map_err(usage),
    }
}

fn q_kind(name: &str) -> Result<QKind, CliError> {
    QKind::parse(name).ok_or_else(|| usage(format!("unknown q family `{name}` (expected q-bernoulli or q-euler)")))
}

fn analytic_usage(e: AnalyticError) -> CliError {
    match e {
        AnalyticError::NonConvergent(_) | AnalyticError::AccuracyUnreachable { .. } => CliError::NonConvergent(e.to_string()),
        other => usage(other),
    }
}

fn modular_usage(e: ModularError) -> CliError {
    match e {
        ModularError::InsufficientTruncation { .. } => CliError::NonConvergent(e.to_string()),
        other => usage(other),
    }
}

fn polys_records(name: &str, polys: impl Iterator<Item = String>) -> Vec<Item> {
    polys.enumerate().map(|(n, p)| Record::new(name, format!("n={n:02}"), json!(p)).into()).collect()
}

fn tau_point(text: &str) -> Result<num_complex::Complex64, CliError> {
    let (re, im) = text.split_once(':').ok_or_else(|| usage(format!("tau `{text}` is not re:im")))?;
    let p = |s: &str| s.trim().parse::<f64>().map_err(|_| usage(format!("tau `{text}` is not re:im")));
    Ok(num_complex::Complex64::new(p(re)?, p(im)?))
}

/// Builds the audit configuration from `audit` flags.
pub fn audit_config(
    only: &Option<Vec<String>>,
    n: Option<usize>,
    seed: Option<u64>,
    samples: Option<usize>,
    truncation: Option<usize>,
    weight: &Option<Vec<usize>>,
    tol: &[String],
) -> Result<AuditConfig, ConfigError> {
    let mut cfg = AuditConfig::default();
    if let Some(list) = only {
        let mut sections = list.iter().filter(|s| !s.trim().is_empty()).map(|s| Section::parse(s)).collect::<Result<Vec<_>, _>>()?;
        sections.sort();
        sections.dedup();
        cfg.sections = sections;
    }
    if let Some(n) = n {
        cfg.cyclic_max_n = n;
    }
    if let Some(s) = seed {
        cfg.seed = s;
    }
    if let Some(s) = samples {
        cfg.samples = s;
    }
    if let Some(t) = truncation {
        cfg.truncation = t;
    }
    if weight.as_ref().is_some_and(|w| w.len() != 2) {
        return Err(ConfigError::Invalid("--weight takes min,max".into()));
    }
    if let Some(w) = weight {
        cfg.min_weight = w[0];
        cfg.max_weight = w[1];
    }
    for item in tol {
        let (k, v) = item.split_once('=').ok_or_else(|| ConfigError::Invalid(format!("tolerance `{item}` is not key=value")))?;
        let v: f64 = v.trim().parse().map_err(|_| ConfigError::Invalid(format!("tolerance `{item}` has no numeric value")))?;
        cfg.tolerances.set(k.trim(), v)?;
    }
    cfg.validate()?;
    Ok(cfg)
}

/// Runs one subcommand, returning its configuration echo and items.
pub fn execute(cmd: &Command) -> Result<(Value, Vec<Item>), CliError> {
    Ok(match cmd {
        Command::Bernoulli { n } | Command::Euler { n } => {
            let (name, fam) = match cmd {
                Command::Bernoulli { .. } => ("bernoulli", AppellFamily::bernoulli()),
                _ => ("euler", AppellFamily::euler()),
            };
            let table = appell::family_polynomials(&fam, *n).map_err(usage)?;
            (json!({"command": name, "n": n}), polys_records(name, table.polys().iter().map(|p| p.to_string())))
        }
        Command::Family { family, n } => {
            let fam = load_family(family)?;
            let table = appell::family_polynomials(&fam, *n).map_err(usage)?;
            (json!({"command": "family", "family": fam.name(), "n": n}), audit::family_items(&table))
        }
        Command::CyclicCheck { family, n, mode, seed, samples } => {
            let fam = load_family(family)?;
            let table = appell::family_polynomials(&fam, *n).map_err(usage)?;
            let items: Vec<Item> = match mode {
                Mode::Symbolic => {
                    vec![
                        cyclic::cyclic_defect_report(&table, *n).map_err(usage)?.into(),
                        cyclic::transpose_report(&table, *n).map_err(usage)?.into(),
                    ]
                }
                Mode::Sampled => {
                    cyclic::cyclic_defect_sampled(&table, *n, *seed, *samples).map_err(usage)?.into_iter().map(Item::from).collect()
                }
            };
            let mode = match mode {
                Mode::Symbolic => "symbolic",
                Mode::Sampled => "sampled",
            };
            (json!({"command": "cyclic-check", "family": fam.name(), "n": n, "mode": mode, "seed": seed, "samples": samples}), items)
        }
        Command::BinomialDefect { n, k } => {
            let ks: Vec<usize> = match k {
                Some(k) => vec![*k],
                None => (0..=*n).collect(),
            };
            let mut items = Vec::new();
            for k in ks {
                let p = cyclic::binomial_cyclic_defect(*n, k).map_err(usage)?;
                items.push(DefectReport::exact("binomial-defect", format!("n={n},k={k}"), p).into());
            }
            (json!({"command": "binomial-defect", "n": n, "k": k}), items)
        }
        Command::QPolys { kind, n } => {
            let kind = q_kind(kind)?;
            let table = qengine::q_family_polynomials(kind, *n);
            let name = format!("q-polys/{kind}");
            (json!({"command": "q-polys", "kind": kind.name(), "n": n}), polys_records(&name, table.polys().iter().map(|p| p.to_string())))
        }
        Command::QCyclicCheck { kind, n, mode, triple, seed, samples } => {
            arity("triple", triple, 3)?;
            let kind = q_kind(kind)?;
            let table = qengine::q_family_polynomials(kind, *n);
            let items: Vec<Item> = match (triple, mode) {
                (Some(t), _) => {
                    let params = QCyclicParams::integer(*n, t[0], t[1], t[2]).map_err(usage)?;
                    vec![qengine::q_cyclic_defect(&table, &params).map_err(usage)?.into()]
                }
                (None, Mode::Symbolic) => vec![qengine::q_cyclic_defect(&table, &QCyclicParams::symbolic(*n)).map_err(usage)?.into()],
                (None, Mode::Sampled) => {
                    let check = qengine::q_cyclic_defect_sampled(&table, *n, *seed, *samples).map_err(usage)?;
                    let mut items: Vec<Item> = check.samples.into_iter().map(Item::from).collect();
                    items.extend(check.escalated.map(Item::from));
                    items
                }
            };
            let mode = match (triple, mode) {
                (Some(t), _) => format!("r={},s={},t={}", t[0], t[1], t[2]),
                (None, Mode::Symbolic) => "symbolic".to_string(),
                (None, Mode::Sampled) => "sampled".to_string(),
            };
            (json!({"command": "q-cyclic-check", "kind": kind.name(), "n": n, "mode": mode, "seed": seed, "samples": samples}), items)
        }
        Command::QLimit { kind, n } => {
            let kind = q_kind(kind)?;
            let table = qengine::q_family_polynomials(kind, *n);
            let mut items: Vec<Item> = vec![qengine::q_to_one_check(&table).map_err(usage)?.into()];
            for (j, p) in table.polys().iter().enumerate() {
                let lim = qengine::limit_at_one_poly(p).map_err(usage)?;
                items.push(Record::new(format!("q-limit/{kind}"), format!("n={j:02}"), json!(lim.to_string())).into());
            }
            (json!({"command": "q-limit", "kind": kind.name(), "n": n}), items)
        }
        Command::PeriodSpace { weight } => {
            let space = modular::period_space(*weight).map_err(modular_usage)?;
            let expected = 2 * modular::cuspform_dim(*weight) + 1;
            let text = if space.dim() == expected { "0".to_string() } else { format!("dim {} != {expected}", space.dim()) };
            let entry = CheckEntry::from_defect(DefectReport::exact("period-space", format!("k={weight}"), text)).with_value(json!({
                "dim": space.dim(),
                "cuspform_dim": modular::cuspform_dim(*weight),
                "basis": space.basis.iter().map(coeff_strings).collect::<Vec<_>>(),
                "polynomials": space.basis.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
            }));
            (json!({"command": "period-space", "weight": weight}), vec![entry.into()])
        }
        Command::ThreeTerm { weight, poly, variant } => {
            if *weight < 2 {
                return Err(usage("weight must be at least 2"));
            }
            let p = parse_polymod(poly, weight - 2).map_err(usage)?;
            let params = format!("k={weight},P={p}");
            let mut items: Vec<Item> = Vec::new();
            if matches!(variant, Variant::Paper | Variant::Both) {
                items.push(DefectReport::exact("three-term-paper", params.clone(), modular::three_term_paper(&p, *weight).map_err(modular_usage)?).into());
            }
            if matches!(variant, Variant::Standard | Variant::Both) {
                items.push(DefectReport::exact("three-term-standard", params.clone(), modular::three_term_standard(&p, *weight).map_err(modular_usage)?).into());
                items.push(DefectReport::exact("s-relation", params, modular::s_relation(&p)).into());
            }
            (json!({"command": "three-term", "weight": weight, "poly": p.to_string()}), items)
        }
        Command::Slash { weight, poly, matrix } => {
            if matrix.len() != 4 {
                return Err(usage("--matrix takes four entries a,b,c,d"));
            }
            let g = GL2Mat::new(matrix[0], matrix[1], matrix[2], matrix[3]).map_err(modular_usage)?;
            let w = weight.checked_sub(2).ok_or_else(|| usage("weight must be at least 2"))?;
            let p = parse_polymod(poly, w).map_err(usage)?;
            let r = modular::slash(&p, &g).map_err(modular_usage)?;
            (
                json!({"command": "slash", "weight": weight, "poly": p.to_string(), "matrix": g.to_string()}),
                vec![Record::new("slash", format!("k={weight},g={g},P={p}"), json!({"poly": r.to_string(), "coeffs": coeff_strings(&r)})).into()],
            )
        }
        Command::Qexp { form, weight, truncation, tau, tol } => {
            let f = match form {
                Form::Delta if *weight == 12 => modular::delta_qexp(*truncation),
                Form::Delta => return Err(usage("the discriminant has weight 12")),
                Form::Eisenstein => modular::eisenstein_qexp(*weight, *truncation).map_err(modular_usage)?,
            };
            let name = match form {
                Form::Delta => "qexp/delta".to_string(),
                Form::Eisenstein => format!("qexp/eisenstein-{weight}"),
            };
            let mut items: Vec<Item> = vec![Record::new(
                name.clone(),
                format!("N={truncation}"),
                json!(f.coeffs().iter().map(Rational::to_string).collect::<Vec<_>>()),
            )
            .into()];
            if !tau.is_empty() {
                let pts = tau.iter().map(|t| tau_point(t)).collect::<Result<Vec<_>, _>>()?;
                let params = format!("N={truncation},tau={}", tau.join(","));
                let m = modular::modularity_check_numeric(&f, &pts, *tol).map_err(modular_usage)?;
                items.push(CheckEntry::numeric(format!("modularity/{}", &name[5..]), params, m.max_residual, *tol, m.tail_bound).into());
            }
            (json!({"command": "qexp", "weight": weight, "truncation": truncation, "tol": tol}), items)
        }
        Command::LValue { m, truncation } => {
            let d = modular::delta_qexp(*truncation);
            let ms: Vec<usize> = match m {
                Some(m) => vec![*m],
                None => (1..12).collect(),
            };
            let mut items = Vec::new();
            for m in ms {
                let l = modular::completed_l(&d, 12, m, *truncation).map_err(modular_usage)?;
                items.push(
                    Record::new("l-value", format!("m={m:02},N={truncation}"), json!({"value": l.value, "error_estimate": l.error_estimate}))
                        .into(),
                );
            }
            (json!({"command": "l-value", "truncation": truncation}), items)
        }
        Command::PeriodNumeric { truncation, tol } => {
            let d = modular::delta_qexp(*truncation);
            let r = modular::period_polynomial_numeric(&d, 12, *truncation).map_err(modular_usage)?;
            let (three, s) = modular::numeric_relation_residuals(&r.poly);
            let est = r.error_estimate / r.poly.max_norm();
            let params = format!("N={truncation}");
            let proj = modular::period_projection(&d, 12, *truncation).map_err(modular_usage)?;
            let coeffs: Vec<Value> = r.poly.coeffs().iter().map(|c| json!({"re": c.re, "im": c.im})).collect();
            let items: Vec<Item> = vec![
                CheckEntry::numeric("period-numeric/three-term", params.clone(), three, *tol, est).into(),
                CheckEntry::numeric("period-numeric/s-relation", params.clone(), s, *tol, est).into(),
                CheckEntry::numeric("period-numeric/projection", params.clone(), proj.relative_residual, *tol, est).into(),
                Record::new("period-numeric/coefficients", params, json!({"coeffs": coeffs, "error_estimate": r.error_estimate})).into(),
            ];
            (json!({"command": "period-numeric", "truncation": truncation, "tol": tol}), items)
        }
        Command::Analytic { function, s, x, tol, h, n, delta, point, tuning, target } => {
            arity("point", point, 4)?;
            arity("tuning", tuning, 2)?;
            let mut cfg = AnalyticConfig::default();
            if let Some(t) = tuning {
                cfg.hurwitz = Tuning::Fixed { shift: t[0], corrections: t[1] };
            }
            if let Some(t) = target {
                cfg.polylog = PolylogConfig { target: *t, ..cfg.polylog };
            }
            let need = |v: &Option<f64>, name: &str| v.ok_or_else(|| usage(format!("--{name} is required for this function")));
            let tol_or = |d: f64| tol.unwrap_or(d);
            let items = analytic_items(*function, s, x, &need, tol_or, h.unwrap_or(DEFAULT_STEP), *n, *delta, point, &cfg)?;
            (
                json!({"command": "analytic", "function": format!("{function:?}").to_lowercase(), "s": s, "x": x, "tol": tol, "h": h,
                       "n": n, "delta": delta, "point": point, "tuning": cfg.hurwitz.to_string(), "target": cfg.polylog.target}),
                items,
            )
        }
        Command::Audit { only, n, seed, samples, truncation, weight, tol } => {
            let cfg = audit_config(only, *n, *seed, *samples, *truncation, weight, tol)?;
            let items = audit::run_audit(&cfg)?;
            (serde_json::to_value(&cfg).expect("config serializes"), items)
        }
    })
}

#[allow(clippy::too_many_arguments)]
fn analytic_items(
    function: Function,
    s: &Option<f64>,
    x: &Option<f64>,
    need: &dyn Fn(&Option<f64>, &str) -> Result<f64, CliError>,
    tol: impl Fn(f64) -> f64,
    h: f64,
    n: usize,
    delta: f64,
    point: &Option<Vec<f64>>,
    cfg: &AnalyticConfig,
) -> Result<Vec<Item>, CliError> {
    Ok(match function {
        Function::Zeta | Function::B | Function::A | Function::Polylog => {
            let (s, x) = (need(s, "s")?, need(x, "x")?);
            let r = match function {
                Function::Zeta => analytic::hurwitz_zeta(s, x, cfg.hurwitz),
                Function::B => analytic::evaluate(AnalyticFn::B, s, x, cfg),
                Function::A => analytic::evaluate(AnalyticFn::A, s, x, cfg),
                _ => analytic::polylog_unit_circle(s, x, &cfg.polylog),
            }
            .map_err(analytic_usage)?;
            vec![Record::eval(format!("analytic/{}", r.params.function), &r).into()]
        }
        Function::LadderA | Function::LadderB => {
            let f = if matches!(function, Function::LadderA) { AnalyticFn::A } else { AnalyticFn::B };
            let default = if matches!(function, Function::LadderA) { 1e-5 } else { 1e-6 };
            let (s, x) = (need(s, "s")?, need(x, "x")?);
            vec![match analytic::appell_ladder_numeric(f, s, x, h, tol(default), cfg) {
                Ok(r) => r.into(),
                Err(e @ (AnalyticError::NonConvergent(_) | AnalyticError::AccuracyUnreachable { .. })) => {
                    analytic_failure(&format!("analytic/ladder/{f}"), &format!("s={s},x={x},h={h}"), &e).into()
                }
                Err(e) => return Err(usage(e)),
            }]
        }
        Function::HurwitzFormula => {
            let (s, x) = (need(s, "s")?, need(x, "x")?);
            vec![analytic::hurwitz_formula_check(s, x, tol(1e-8), cfg).map_err(analytic_usage)?.into()]
        }
        Function::Probe => {
            let p = point.clone().unwrap_or_else(|| vec![1.0, 1.5, 0.2, 0.3]);
            vec![analytic::analytic_cyclic_probe(n, delta, p[2], p[3], p[0], p[1], tol(1e-8), cfg).map_err(analytic_usage)?.into()]
        }
        Function::AReflection => {
            let (s, x) = (need(s, "s")?, need(x, "x")?);
            audit::a_reflection_items(s, x, tol(1e-10), cfg)
        }
    })
}
