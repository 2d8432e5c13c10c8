//! Truncated Poincaré series `g_P(x) = Σ_n (-1)^n dim P(n) x^n / n!` and the
//! functional-equation test `g_P(g_{P!}(x)) = x`, a necessary condition for
//! `P` to be Koszul.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::duality::dual_presentation;
use crate::error::{Error, Result};
use crate::exactla::{int, rat, Rational};
use crate::expansion::{DimensionTable, Expander};
use crate::par::Exec;
use crate::presentations::{Builtin, Presentation};
use crate::treespace::free_dim;

pub const MIN_TRUNCATION: usize = 3;
pub const MAX_TRUNCATION: usize = 5;

/// Coefficients of `x^1..x^N`; the constant term is zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PoincareSeries {
    coeffs: Vec<Rational>,
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

impl PoincareSeries {
    /// `coeffs[k]` is the coefficient of `x^(k+1)`.
    pub fn new(coeffs: Vec<Rational>) -> Self {
        PoincareSeries { coeffs }
    }

    /// The series `x` truncated at order `n`.
    pub fn identity(n: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); n];
        if n > 0 {
            coeffs[0] = Rational::one();
        }
        PoincareSeries { coeffs }
    }

    /// `coeff[n] = (-1)^n dims[n] / n!` for `n = 1..=N`.
    pub fn from_dims(dims: &[usize]) -> Self {
        let coeffs = dims
            .iter()
            .enumerate()
            .map(|(k, &d)| {
                let n = k + 1;
                let sign = if n.is_multiple_of(2) { 1 } else { -1 };
                Rational::new(BigInt::from(sign * d as i64), factorial(n))
            })
            .collect();
        PoincareSeries { coeffs }
    }

    pub fn truncation_order(&self) -> usize {
        self.coeffs.len()
    }

    /// Coefficient of `x^n`, `1 ≤ n ≤ N`.
    pub fn coeff(&self, n: usize) -> &Rational {
        &self.coeffs[n - 1]
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// `(-1)^n n! coeff[n]` when it is a nonnegative integer.
    pub fn implied_dim(&self, n: usize) -> Option<u64> {
        implied_dim(self.coeff(n), n)
    }

    pub fn is_identity(&self) -> bool {
        *self == PoincareSeries::identity(self.truncation_order())
    }
}

/// `(-1)^n n! c`, if it is a nonnegative integer.
pub fn implied_dim(c: &Rational, n: usize) -> Option<u64> {
    let v = signed_scaled(c, n);
    if v.is_integer() && !v.is_negative() {
        v.to_integer().to_u64()
    } else {
        None
    }
}

fn signed_scaled(c: &Rational, n: usize) -> Rational {
    let sign = if n.is_multiple_of(2) { 1 } else { -1 };
    c * Rational::from_integer(factorial(n)) * int(sign)
}

impl fmt::Display for PoincareSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let n = k + 1;
            let mono = match n {
                1 => "x".to_string(),
                _ => format!("x^{n}"),
            };
            let abs = c.abs();
            let mag = if abs.is_one() {
                mono
            } else {
                format!("{abs}*{mono}")
            };
            match (first, c.is_negative()) {
                (true, false) => write!(f, "{mag}")?,
                (true, true) => write!(f, "-{mag}")?,
                (false, false) => write!(f, " + {mag}")?,
                (false, true) => write!(f, " - {mag}")?,
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(x^{})", self.truncation_order() + 1)
    }
}

fn mul_truncated(a: &[Rational], b: &[Rational], n: usize) -> Vec<Rational> {
    // index = degree, entries 0..=n
    let mut out = vec![Rational::zero(); n + 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take((n + 1).saturating_sub(i)) {
            out[i + j] += x * y;
        }
    }
    out
}

/// `f(g(x))` through the common truncation order.
pub fn compose(f: &PoincareSeries, g: &PoincareSeries) -> Result<PoincareSeries> {
    let n = f.truncation_order();
    if g.truncation_order() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: g.truncation_order(),
        });
    }
    let mut gfull = vec![Rational::zero(); n + 1];
    gfull[1..].clone_from_slice(&g.coeffs);
    let mut power = vec![Rational::zero(); n + 1];
    power[0] = Rational::one();
    let mut acc = vec![Rational::zero(); n + 1];
    for k in 1..=n {
        power = mul_truncated(&power, &gfull, n);
        let fk = f.coeff(k);
        if fk.is_zero() {
            continue;
        }
        for (a, p) in acc.iter_mut().zip(&power) {
            *a += fk * p;
        }
    }
    Ok(PoincareSeries::new(acc[1..].to_vec()))
}

/// The compositional inverse `h` with `f(h(x)) = x`, solved degree by degree.
pub fn invert(f: &PoincareSeries) -> Result<PoincareSeries> {
    let n = f.truncation_order();
    if n == 0 || f.coeff(1).is_zero() {
        return Err(Error::InvalidInput(
            "series needs an invertible linear coefficient".into(),
        ));
    }
    let lead = f.coeff(1).clone();
    let mut h = vec![Rational::zero(); n];
    h[0] = lead.recip();
    for m in 2..=n {
        // with h_m = 0 the x^m coefficient of f(h) is everything except f1·h_m
        let partial = compose(f, &PoincareSeries::new(h.clone()))?;
        h[m - 1] = -partial.coeff(m) / &lead;
    }
    Ok(PoincareSeries::new(h))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    /// `g_P(g_{P!}(x)) = x` through the truncation order. Koszulity is not
    /// established by this.
    Pass { through: usize },
    /// First degree at which the composition differs from `x`.
    Fail {
        degree: usize,
        coefficient: Rational,
    },
}

impl Verdict {
    pub fn is_pass(&self) -> bool {
        matches!(self, Verdict::Pass { .. })
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Pass { through } => write!(f, "PASS through degree {through}"),
            Verdict::Fail {
                degree,
                coefficient,
            } => write!(f, "FAIL at degree {degree} (coefficient {coefficient})"),
        }
    }
}

pub fn verdict_of(composition: &PoincareSeries) -> Verdict {
    let x = PoincareSeries::identity(composition.truncation_order());
    for n in 1..=composition.truncation_order() {
        if composition.coeff(n) != x.coeff(n) {
            return Verdict::Fail {
                degree: n,
                coefficient: composition.coeff(n).clone(),
            };
        }
    }
    Verdict::Pass {
        through: composition.truncation_order(),
    }
}

pub const NECESSARY_ONLY_NOTE: &str = "the functional equation is only a necessary condition: \
PASS does not prove that the operad is Koszul, FAIL proves that it is not";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KoszulReport {
    pub dims: DimensionTable,
    pub dual_dims: DimensionTable,
    pub series: PoincareSeries,
    pub dual_series: PoincareSeries,
    pub composition: PoincareSeries,
    pub verdict: Verdict,
    pub notes: Vec<String>,
}

pub fn poincare_series(t: &DimensionTable) -> Result<PoincareSeries> {
    let n = t.max_arity();
    let dims = (1..=n)
        .map(|k| {
            t.get(k).ok_or_else(|| {
                Error::InvalidInput(format!(
                    "dimension table for '{}' lacks arity {k}",
                    t.operad_name
                ))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(PoincareSeries::from_dims(&dims))
}

/// Previously published coefficients of `g_P` and `g_{P!}` through `x^4`,
/// kept for comparison with computed values.
pub fn reference_coefficients(b: Builtin) -> Option<([Rational; 4], [Rational; 4])> {
    match b {
        Builtin::G4Ass => Some((
            [int(-1), int(1), rat(-3, 2), rat(59, 24)],
            [int(-1), int(1), rat(-1, 2), rat(-1, 4)],
        )),
        Builtin::G5Ass => Some((
            [int(-1), int(1), rat(-10, 6), rat(39, 24)],
            [int(-1), int(1), rat(-1, 3), rat(1, 12)],
        )),
        _ => None,
    }
}

fn reference_notes(b: Builtin, dims: &DimensionTable, dual_dims: &DimensionTable) -> Vec<String> {
    let Some((main, dual)) = reference_coefficients(b) else {
        return Vec::new();
    };
    let mut notes = Vec::new();
    for (label, coeffs, table) in [
        (b.name().to_string(), &main, dims),
        (format!("{}!", b.name()), &dual, dual_dims),
    ] {
        for (k, c) in coeffs.iter().enumerate() {
            let n = k + 1;
            let Some(computed) = table.get(n) else {
                continue;
            };
            match implied_dim(c, n) {
                Some(d) if d as usize == computed => {}
                Some(d) => {
                    let mut note = format!(
                        "discrepancy: reference coefficient {c} of x^{n} in g_{label} implies dim {label}({n}) = {d}, computed {computed}"
                    );
                    if d as usize + computed == free_dim(n) {
                        note.push_str(&format!(
                            "; {d} is the dimension of the ideal component R({n}), not of the quotient"
                        ));
                    }
                    notes.push(note);
                }
                None => notes.push(format!(
                    "discrepancy: reference coefficient {c} of x^{n} in g_{label} cannot equal (-1)^{n}*dim/{n}! for any dimension (it would need dim = {}); computed dim {label}({n}) = {computed}",
                    signed_scaled(c, n)
                )),
            }
        }
    }
    notes
}

/// Computes `dim P(n)` and `dim P!(n)` for `n ≤ N` and tests
/// `g_P(g_{P!}(x)) = x + O(x^{N+1})`.
pub fn koszul_necessary_check(p: &Presentation, n: usize, exec: Exec) -> Result<KoszulReport> {
    if !(MIN_TRUNCATION..=MAX_TRUNCATION).contains(&n) {
        return Err(Error::range(
            "truncation order",
            n,
            MIN_TRUNCATION,
            MAX_TRUNCATION,
        ));
    }
    let dual = dual_presentation(p)?;
    let expander = Expander::new(exec);
    let (dims, dual_dims) = exec.join(
        || expander.dimension_table(p, n),
        || expander.dimension_table(&dual, n),
    );
    let (dims, dual_dims) = (dims?, dual_dims?);
    let series = poincare_series(&dims)?;
    let dual_series = poincare_series(&dual_dims)?;
    let composition = compose(&series, &dual_series)?;
    let verdict = verdict_of(&composition);
    let mut notes = vec![NECESSARY_ONLY_NOTE.to_string()];
    if let Some(b) = crate::duality::identify_builtin(p) {
        notes.extend(reference_notes(b, &dims, &dual_dims));
    }
    Ok(KoszulReport {
        dims,
        dual_dims,
        series,
        dual_series,
        composition,
        verdict,
        notes,
    })
}
