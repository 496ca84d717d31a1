//! Period polynomials for the full modular group.
//!
//! A weight-`w` polynomial is its coefficient vector `c_0..c_w`. Matrices act
//! on the right through homogenization,
//! `(P|g)(z) = (cz + d)^w P((az + b)/(cz + d))`, so `(P|g)|h = P|(gh)`.
//!
//! Conventions: `S = (0,-1;1,0)`, `T = (1,1;0,1)`, `U = (0,1;-1,1)` with
//! `z -> 1/(1-z)` and `U^3 = -I`. For even `w`, `-I` acts trivially, so the
//! period space `{P : P|(1+S) = 0, P|(1+U+U^2) = 0}` is unchanged when `S` is
//! replaced by `-S` or `U` by `U^2 = -U^{-1}`: the relations are the same
//! linear conditions either way.

mod periods;
mod qexp;

use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;

use crate::exact::{RatMatrix, Rational};

pub use periods::{
    numeric_relation_residuals, period_projection,
    completed_l, even_period_basis, even_ratio_reconstruction, period_polynomial_numeric, project_onto_basis,
    EvenRatio, LValue, NumericPeriod, Projection,
};
pub use qexp::{delta_qexp, eisenstein_qexp, modularity_check_numeric, ModularityCheck, QExpansion};

pub const DEFAULT_WEIGHT_CEILING: usize = 40;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ModularError {
    #[error("matrix ({a}, {b}; {c}, {d}) has determinant {det}, expected +1 or -1")]
    NonUnimodular { a: i64, b: i64, c: i64, d: i64, det: i64 },
    #[error("polynomial of degree {degree} does not fit weight k = {k} (needs degree <= k - 2)")]
    WeightMismatch { degree: usize, k: usize },
    #[error("weight k = {0} is not an even integer in the supported range")]
    UnsupportedWeight(usize),
    #[error("form is not cuspidal (a_0 = {0})")]
    NotCuspidal(String),
    #[error("q-expansion tail bound {bound:.3e} exceeds target {target:.3e}")]
    InsufficientTruncation { bound: f64, target: f64 },
    #[error("q-expansion has {have} coefficients beyond a_0 but {needed} are required")]
    ExpansionTooShort { have: usize, needed: usize },
    #[error("sample point {0} has imaginary part below 0.5")]
    PointTooLow(String),
}

/// Integer matrix `(a b; c d)` with determinant `+-1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GL2Mat {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

impl GL2Mat {
    pub const I: GL2Mat = GL2Mat { a: 1, b: 0, c: 0, d: 1 };
    pub const S: GL2Mat = GL2Mat { a: 0, b: -1, c: 1, d: 0 };
    pub const T: GL2Mat = GL2Mat { a: 1, b: 1, c: 0, d: 1 };
    pub const U: GL2Mat = GL2Mat { a: 0, b: 1, c: -1, d: 1 };
    /// `z -> z/(z-1)`, the involution in the literal three-term display.
    pub const LITERAL_A: GL2Mat = GL2Mat { a: 1, b: 0, c: 1, d: -1 };

    pub fn new(a: i64, b: i64, c: i64, d: i64) -> Result<Self, ModularError> {
        let det = a * d - b * c;
        if det.abs() != 1 {
            return Err(ModularError::NonUnimodular { a, b, c, d, det });
        }
        Ok(GL2Mat { a, b, c, d })
    }

    pub fn det(&self) -> i64 {
        self.a * self.d - self.b * self.c
    }

    pub fn mul(&self, o: &GL2Mat) -> GL2Mat {
        GL2Mat {
            a: self.a * o.a + self.b * o.c,
            b: self.a * o.b + self.b * o.d,
            c: self.c * o.a + self.d * o.c,
            d: self.c * o.b + self.d * o.d,
        }
    }

    pub fn neg(&self) -> GL2Mat {
        GL2Mat { a: -self.a, b: -self.b, c: -self.c, d: -self.d }
    }

    /// The `(w+1) x (w+1)` matrix of `P -> P|g` on coefficient vectors.
    /// Column `j` holds the coefficients of `(az + b)^j (cz + d)^{w-j}`.
    pub fn slash_matrix(&self, w: usize) -> RatMatrix {
        let lin = |p: i64, q: i64, e: usize| -> Vec<BigInt> {
            // coefficients of (p z + q)^e, ascending
            let mut out = vec![BigInt::from(1)];
            for _ in 0..e {
                let mut next = vec![BigInt::from(0); out.len() + 1];
                for (i, c) in out.iter().enumerate() {
                    next[i] += c * q;
                    next[i + 1] += c * p;
                }
                out = next;
            }
            out
        };
        let mut m = RatMatrix::zeros(w + 1, w + 1);
        for j in 0..=w {
            let top = lin(self.a, self.b, j);
            let bottom = lin(self.c, self.d, w - j);
            for (i1, c1) in top.iter().enumerate() {
                for (i2, c2) in bottom.iter().enumerate() {
                    let v = m.get(i1 + i2, j) + &Rational::from_int(c1 * c2);
                    m.set(i1 + i2, j, v);
                }
            }
        }
        m
    }
}

impl fmt::Display for GL2Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}; {}, {})", self.a, self.b, self.c, self.d)
    }
}

/// A polynomial of degree at most `weight` in `z`, stored densely.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyMod<T = Rational> {
    weight: usize,
    coeffs: Vec<T>,
}

pub type ComplexPolyMod = PolyMod<Complex64>;

impl<T: Clone> PolyMod<T> {
    pub fn weight(&self) -> usize {
        self.weight
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }
}

impl PolyMod<Rational> {
    /// Zero-pads `coeffs` (ascending) to length `weight + 1`.
    pub fn new(weight: usize, mut coeffs: Vec<Rational>) -> Result<Self, ModularError> {
        while coeffs.len() > weight + 1 && coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        if coeffs.len() > weight + 1 {
            return Err(ModularError::WeightMismatch { degree: coeffs.len() - 1, k: weight + 2 });
        }
        coeffs.resize(weight + 1, Rational::zero());
        Ok(PolyMod { weight, coeffs })
    }

    pub fn from_ints(weight: usize, coeffs: &[i64]) -> Result<Self, ModularError> {
        Self::new(weight, coeffs.iter().map(|&c| Rational::from(c)).collect())
    }

    pub fn zero(weight: usize) -> Self {
        PolyMod { weight, coeffs: vec![Rational::zero(); weight + 1] }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Rational::is_zero)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|c| !c.is_zero())
    }

    /// Same polynomial viewed in another weight (needs `degree <= weight`).
    pub fn reweight(&self, weight: usize) -> Result<Self, ModularError> {
        Self::new(weight, self.coeffs.clone())
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!(self.weight, o.weight, "weights differ");
        PolyMod { weight: self.weight, coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect() }
    }

    pub fn to_complex(&self) -> ComplexPolyMod {
        PolyMod { weight: self.weight, coeffs: self.coeffs.iter().map(|c| Complex64::new(c.to_f64(), 0.0)).collect() }
    }
}

impl PolyMod<Complex64> {
    pub fn from_complex(weight: usize, mut coeffs: Vec<Complex64>) -> Self {
        coeffs.resize(weight + 1, Complex64::new(0.0, 0.0));
        PolyMod { weight, coeffs }
    }

    pub fn max_norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!(self.weight, o.weight, "weights differ");
        PolyMod { weight: self.weight, coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect() }
    }
}

impl fmt::Display for PolyMod<Rational> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let a = c.abs();
            let sep = match (first, c.is_negative()) {
                (true, true) => "-",
                (true, false) => "",
                (false, true) => " - ",
                (false, false) => " + ",
            };
            f.write_str(sep)?;
            first = false;
            let mono = match i {
                0 => String::new(),
                1 => "z".to_string(),
                _ => format!("z^{i}"),
            };
            match (mono.is_empty(), a.is_one()) {
                (true, _) => write!(f, "{a}")?,
                (false, true) => f.write_str(&mono)?,
                (false, false) => write!(f, "{a}*{mono}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

pub fn slash(p: &PolyMod, g: &GL2Mat) -> Result<PolyMod, ModularError> {
    GL2Mat::new(g.a, g.b, g.c, g.d)?;
    Ok(PolyMod { weight: p.weight, coeffs: g.slash_matrix(p.weight).apply(&p.coeffs) })
}

/// Slash on complex coefficient vectors, through the same exact matrix.
pub fn slash_complex(p: &ComplexPolyMod, g: &GL2Mat) -> Result<ComplexPolyMod, ModularError> {
    GL2Mat::new(g.a, g.b, g.c, g.d)?;
    let m = g.slash_matrix(p.weight);
    let coeffs = (0..=p.weight)
        .map(|i| m.row(i).iter().zip(&p.coeffs).map(|(a, c)| c * a.to_f64()).sum())
        .collect();
    Ok(PolyMod { weight: p.weight, coeffs })
}

fn fit_weight(p: &PolyMod, k: usize) -> Result<PolyMod, ModularError> {
    if k < 2 {
        return Err(ModularError::UnsupportedWeight(k));
    }
    match p.degree() {
        Some(d) if d > k - 2 => Err(ModularError::WeightMismatch { degree: d, k }),
        _ => p.reweight(k - 2),
    }
}

fn sum_slashes(p: &PolyMod, mats: &[GL2Mat]) -> PolyMod {
    mats.iter().fold(p.clone(), |acc, g| acc.add(&slash(p, g).expect("fixed unimodular matrices")))
}

/// `P + P|(1,0;1,-1) + P|(0,1;-1,1)`, i.e.
/// `P(z) + (z-1)^w P(z/(z-1)) + (1-z)^w P(1/(1-z))` read literally.
pub fn three_term_paper(p: &PolyMod, k: usize) -> Result<PolyMod, ModularError> {
    let p = fit_weight(p, k)?;
    Ok(sum_slashes(&p, &[GL2Mat::LITERAL_A, GL2Mat::U]))
}

/// `P|(1 + U + U^2)`.
pub fn three_term_standard(p: &PolyMod, k: usize) -> Result<PolyMod, ModularError> {
    let p = fit_weight(p, k)?;
    Ok(sum_slashes(&p, &[GL2Mat::U, GL2Mat::U.mul(&GL2Mat::U)]))
}

/// `P + P|S`.
pub fn s_relation(p: &PolyMod) -> PolyMod {
    sum_slashes(p, &[GL2Mat::S])
}

pub fn three_term_standard_complex(p: &ComplexPolyMod) -> ComplexPolyMod {
    let u2 = GL2Mat::U.mul(&GL2Mat::U);
    p.add(&slash_complex(p, &GL2Mat::U).expect("unimodular")).add(&slash_complex(p, &u2).expect("unimodular"))
}

pub fn s_relation_complex(p: &ComplexPolyMod) -> ComplexPolyMod {
    p.add(&slash_complex(p, &GL2Mat::S).expect("unimodular"))
}

/// Linear relations a period polynomial may be asked to satisfy.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    /// `P|(1 + S) = 0`
    S,
    /// `P|(1 + U + U^2) = 0`
    ThreeTermStandard,
    /// the literal display, `P|(1 + A + U) = 0` with `A = (1,0;1,-1)`
    ThreeTermPaper,
}

impl Relation {
    fn matrix(self, w: usize) -> RatMatrix {
        let id = RatMatrix::identity(w + 1);
        match self {
            Relation::S => id.add(&GL2Mat::S.slash_matrix(w)),
            Relation::ThreeTermStandard => {
                id.add(&GL2Mat::U.slash_matrix(w)).add(&GL2Mat::U.mul(&GL2Mat::U).slash_matrix(w))
            }
            Relation::ThreeTermPaper => id.add(&GL2Mat::LITERAL_A.slash_matrix(w)).add(&GL2Mat::U.slash_matrix(w)),
        }
    }
}

fn check_weight(k: usize, ceiling: usize) -> Result<usize, ModularError> {
    if k < 4 || k % 2 == 1 || k > ceiling {
        return Err(ModularError::UnsupportedWeight(k));
    }
    Ok(k - 2)
}

/// Exact basis of the joint kernel of the given relations in weight `k`,
/// canonical for the reduced row echelon form.
pub fn solution_space(k: usize, relations: &[Relation]) -> Result<Vec<PolyMod>, ModularError> {
    solution_space_with(k, relations, &[], DEFAULT_WEIGHT_CEILING)
}

fn solution_space_with(
    k: usize,
    relations: &[Relation],
    extra: &[RatMatrix],
    ceiling: usize,
) -> Result<Vec<PolyMod>, ModularError> {
    let w = check_weight(k, ceiling)?;
    let mut stacked = RatMatrix::zeros(0, w + 1);
    for r in relations {
        stacked = stacked.stack(&r.matrix(w));
    }
    for m in extra {
        stacked = stacked.stack(m);
    }
    Ok(stacked.nullspace().into_iter().map(|v| PolyMod { weight: w, coeffs: v }).collect())
}

#[derive(Clone, Debug, PartialEq)]
pub struct PeriodSpace {
    pub k: usize,
    pub basis: Vec<PolyMod>,
}

impl PeriodSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

pub fn period_space(k: usize) -> Result<PeriodSpace, ModularError> {
    period_space_with_ceiling(k, DEFAULT_WEIGHT_CEILING)
}

pub fn period_space_with_ceiling(k: usize, ceiling: usize) -> Result<PeriodSpace, ModularError> {
    let basis = solution_space_with(k, &[Relation::S, Relation::ThreeTermStandard], &[], ceiling)?;
    Ok(PeriodSpace { k, basis })
}

/// Rows forcing the odd-degree coefficients to vanish.
fn odd_selector(w: usize) -> RatMatrix {
    let rows = (1..=w)
        .step_by(2)
        .map(|i| (0..=w).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect())
        .collect::<Vec<Vec<Rational>>>();
    if rows.is_empty() {
        RatMatrix::zeros(0, w + 1)
    } else {
        RatMatrix::from_rows(rows)
    }
}

pub(crate) fn even_subspace(k: usize) -> Result<Vec<PolyMod>, ModularError> {
    let w = check_weight(k, DEFAULT_WEIGHT_CEILING)?;
    solution_space_with(k, &[Relation::S, Relation::ThreeTermStandard], &[odd_selector(w)], DEFAULT_WEIGHT_CEILING)
}

/// `dim S_k(SL_2(Z))`.
pub fn cuspform_dim(k: usize) -> usize {
    if k % 2 == 1 || k < 4 {
        return 0;
    }
    if k % 12 == 2 {
        k / 12 - 1
    } else {
        k / 12
    }
}
