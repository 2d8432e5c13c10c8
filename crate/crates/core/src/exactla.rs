//! Exact linear algebra over the rationals.
//!
//! Subspaces are kept as fully reduced row-echelon bases with sparse rows, so
//! two subspaces are equal iff their bases are equal entrywise.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::par::Exec;

/// Arbitrary-precision rational, always in lowest terms with positive
/// denominator.
pub type Rational = BigRational;

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `p`, `-p` or `p/q`.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let valid = |t: &str, signed: bool| {
        let t = if signed {
            t.strip_prefix(['+', '-']).unwrap_or(t)
        } else {
            t
        };
        !t.is_empty() && t.bytes().all(|b| b.is_ascii_digit())
    };
    if !valid(num, true) || !valid(den, false) {
        return None;
    }
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = den.parse().ok()?;
    if den.is_zero() {
        return None;
    }
    Some(Rational::new(num, den))
}

/// A sparse vector: strictly increasing column indices, no stored zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct SparseVec {
    entries: Vec<(usize, Rational)>,
}

impl SparseVec {
    pub fn zero() -> Self {
        SparseVec::default()
    }

    pub fn unit(col: usize) -> Self {
        SparseVec {
            entries: vec![(col, Rational::one())],
        }
    }

    /// Builds from arbitrary `(col, value)` pairs, summing repeated columns.
    pub fn from_pairs(mut pairs: Vec<(usize, Rational)>) -> Self {
        pairs.sort_by_key(|(c, _)| *c);
        let mut entries: Vec<(usize, Rational)> = Vec::with_capacity(pairs.len());
        for (c, v) in pairs {
            match entries.last_mut() {
                Some((lc, lv)) if *lc == c => *lv += v,
                _ => entries.push((c, v)),
            }
        }
        entries.retain(|(_, v)| !v.is_zero());
        SparseVec { entries }
    }

    pub fn from_dense(values: &[Rational]) -> Self {
        SparseVec {
            entries: values
                .iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(c, v)| (c, v.clone()))
                .collect(),
        }
    }

    pub fn to_dense(&self, dim: usize) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); dim];
        for (c, v) in &self.entries {
            out[*c] = v.clone();
        }
        out
    }

    pub fn entries(&self) -> &[(usize, Rational)] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, col: usize) -> Option<&Rational> {
        self.entries
            .binary_search_by_key(&col, |(c, _)| *c)
            .ok()
            .map(|k| &self.entries[k].1)
    }

    pub fn leading(&self) -> Option<&(usize, Rational)> {
        self.entries.first()
    }

    pub fn max_col(&self) -> Option<usize> {
        self.entries.last().map(|(c, _)| *c)
    }

    pub fn scale(&self, s: &Rational) -> SparseVec {
        if s.is_zero() {
            return SparseVec::zero();
        }
        SparseVec {
            entries: self.entries.iter().map(|(c, v)| (*c, v * s)).collect(),
        }
    }

    /// `self + s * other`.
    pub fn add_scaled(&self, s: &Rational, other: &SparseVec) -> SparseVec {
        if s.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.entries, &other.entries);
        while i < a.len() || j < b.len() {
            if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
                out.push(a[i].clone());
                i += 1;
            } else if i == a.len() || b[j].0 < a[i].0 {
                out.push((b[j].0, s * &b[j].1));
                j += 1;
            } else {
                let v = &a[i].1 + s * &b[j].1;
                if !v.is_zero() {
                    out.push((a[i].0, v));
                }
                i += 1;
                j += 1;
            }
        }
        SparseVec { entries: out }
    }

    /// Remaps columns through `map`, which must be injective on the support.
    pub fn permute_columns(&self, map: &[usize]) -> SparseVec {
        let mut entries: Vec<(usize, Rational)> = self
            .entries
            .iter()
            .map(|(c, v)| (map[*c], v.clone()))
            .collect();
        entries.sort_by_key(|(c, _)| *c);
        SparseVec { entries }
    }

    /// `Σ form[k]·self[k]·other[k]` for a diagonal form.
    pub fn diagonal_dot(&self, other: &SparseVec, form: &[Rational]) -> Rational {
        let mut acc = Rational::zero();
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.entries, &other.entries);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    acc += &form[a[i].0] * &a[i].1 * &b[j].1;
                    i += 1;
                    j += 1;
                }
            }
        }
        acc
    }

    /// Multiplies every entry by a nonzero integer so all entries are integers
    /// with gcd 1 and the leading entry is positive.
    pub fn primitive(&self) -> SparseVec {
        use num_integer::Integer;
        if self.is_zero() {
            return self.clone();
        }
        let lcm = self
            .entries
            .iter()
            .fold(BigInt::one(), |acc, (_, v)| acc.lcm(v.denom()));
        let ints: Vec<BigInt> = self
            .entries
            .iter()
            .map(|(_, v)| (v * Rational::from_integer(lcm.clone())).to_integer())
            .collect();
        let mut g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        if ints[0].is_negative() {
            g = -g;
        }
        SparseVec {
            entries: self
                .entries
                .iter()
                .zip(ints)
                .map(|((c, _), x)| (*c, Rational::from_integer(x / &g)))
                .collect(),
        }
    }
}

impl fmt::Display for SparseVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, (c, v)) in self.entries.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}: {v}")?;
        }
        write!(f, "}}")
    }
}

/// Incremental fully reduced row-echelon form.
///
/// Every stored row has a leading 1 at its pivot column and zeros in all other
/// pivot columns.
#[derive(Debug, Clone)]
pub struct Echelon {
    ambient_dim: usize,
    rows: BTreeMap<usize, SparseVec>,
}

const BATCH: usize = 256;

impl Echelon {
    pub fn new(ambient_dim: usize) -> Self {
        Echelon {
            ambient_dim,
            rows: BTreeMap::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.ambient_dim
    }

    /// Residual of `v` after eliminating every pivot column.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let hits: Vec<(&Rational, &SparseVec)> = v
            .entries
            .iter()
            .filter_map(|(c, x)| self.rows.get(c).map(|row| (x, row)))
            .collect();
        if hits.is_empty() {
            return v.clone();
        }
        let mut pairs: Vec<(usize, Rational)> = v.entries.clone();
        for (x, row) in hits {
            pairs.extend(row.entries.iter().map(|(c, r)| (*c, -(x * r))));
        }
        SparseVec::from_pairs(pairs)
    }

    /// Inserts `v`; returns whether the rank grew.
    pub fn insert(&mut self, v: &SparseVec) -> bool {
        let r = self.reduce(v);
        self.insert_reduced(r)
    }

    fn insert_reduced(&mut self, r: SparseVec) -> bool {
        let Some((pivot, lead)) = r.leading().cloned() else {
            return false;
        };
        let r = r.scale(&lead.recip());
        for row in self.rows.values_mut() {
            if let Some(x) = row.get(pivot).cloned() {
                *row = row.add_scaled(&-x, &r);
            }
        }
        self.rows.insert(pivot, r);
        true
    }

    /// Inserts many vectors. In parallel mode each batch is reduced against
    /// the current basis concurrently, then the residuals are inserted in
    /// order; the resulting basis is the same either way.
    pub fn extend(&mut self, vectors: &[SparseVec], exec: Exec) {
        if !exec.is_parallel() {
            for v in vectors {
                if self.is_full() {
                    return;
                }
                self.insert(v);
            }
            return;
        }
        for batch in vectors.chunks(BATCH) {
            if self.is_full() {
                return;
            }
            let residuals = exec.map(batch, |v| self.reduce(v));
            for r in residuals {
                if !r.is_zero() {
                    let r = self.reduce(&r);
                    self.insert_reduced(r);
                }
            }
        }
    }

    pub fn into_subspace(self) -> Subspace {
        Subspace {
            ambient_dim: self.ambient_dim,
            rows: self.rows.into_values().collect(),
        }
    }
}

/// A linear subspace of `Q^ambient_dim`, stored canonically.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient_dim: usize,
    rows: Vec<SparseVec>,
}

impl Subspace {
    pub fn zero(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            rows: Vec::new(),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            rows: (0..ambient_dim).map(SparseVec::unit).collect(),
        }
    }

    /// Span of dense vectors.
    pub fn span(vectors: &[Vec<Rational>], ambient_dim: usize) -> Result<Self> {
        let mut sparse = Vec::with_capacity(vectors.len());
        for v in vectors {
            if v.len() != ambient_dim {
                return Err(Error::DimensionMismatch {
                    expected: ambient_dim,
                    got: v.len(),
                });
            }
            sparse.push(SparseVec::from_dense(v));
        }
        Ok(Subspace::span_sparse(
            &sparse,
            ambient_dim,
            Exec::Sequential,
        ))
    }

    /// Span of sparse vectors. Columns must be below `ambient_dim`.
    pub fn span_sparse(vectors: &[SparseVec], ambient_dim: usize, exec: Exec) -> Self {
        debug_assert!(vectors
            .iter()
            .all(|v| v.max_col().is_none_or(|c| c < ambient_dim)));
        let mut ech = Echelon::new(ambient_dim);
        ech.extend(vectors, exec);
        ech.into_subspace()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.rows
            .iter()
            .map(|r| r.leading().expect("rows are nonzero").0)
            .collect()
    }

    /// Dense echelon basis.
    pub fn basis(&self) -> Vec<Vec<Rational>> {
        self.rows
            .iter()
            .map(|r| r.to_dense(self.ambient_dim))
            .collect()
    }

    fn echelon(&self) -> Echelon {
        Echelon {
            ambient_dim: self.ambient_dim,
            rows: self
                .rows
                .iter()
                .map(|r| (r.leading().expect("rows are nonzero").0, r.clone()))
                .collect(),
        }
    }

    pub fn contains(&self, v: &[Rational]) -> Result<bool> {
        if v.len() != self.ambient_dim {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim,
                got: v.len(),
            });
        }
        Ok(self.contains_sparse(&SparseVec::from_dense(v)))
    }

    pub fn contains_sparse(&self, v: &SparseVec) -> bool {
        let mut acc = v.clone();
        for row in &self.rows {
            let pivot = row.leading().expect("rows are nonzero").0;
            if let Some(x) = acc.get(pivot).cloned() {
                acc = acc.add_scaled(&-x, row);
            }
        }
        acc.is_zero()
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.ambient_dim == other.ambient_dim
            && self.dim() <= other.dim()
            && self.rows.iter().all(|r| other.contains_sparse(r))
    }

    /// `self + other`.
    pub fn join(&self, other: &Subspace) -> Result<Subspace> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim,
                got: other.ambient_dim,
            });
        }
        let mut ech = self.echelon();
        ech.extend(&other.rows, Exec::Sequential);
        Ok(ech.into_subspace())
    }

    /// `{u : Σ form[k]·u[k]·v[k] = 0 for all v in self}` for a diagonal form
    /// with entries ±1.
    pub fn orthogonal_complement(&self, form: &[Rational]) -> Result<Subspace> {
        if form.len() != self.ambient_dim {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim,
                got: form.len(),
            });
        }
        for (index, x) in form.iter().enumerate() {
            if !(x.is_one() || (-x).is_one()) {
                return Err(Error::InvalidForm {
                    index,
                    value: x.to_string(),
                });
            }
        }
        // u ⊥ self  iff  w = form ⊙ u lies in the kernel of the echelon matrix.
        let pivots = self.pivots();
        let mut is_pivot = vec![false; self.ambient_dim];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let kernel: Vec<SparseVec> = (0..self.ambient_dim)
            .filter(|&j| !is_pivot[j])
            .map(|j| {
                let mut pairs = vec![(j, form[j].clone())];
                for (row, &p) in self.rows.iter().zip(&pivots) {
                    if let Some(x) = row.get(j) {
                        pairs.push((p, -(x * &form[p])));
                    }
                }
                SparseVec::from_pairs(pairs)
            })
            .collect();
        Ok(Subspace::span_sparse(
            &kernel,
            self.ambient_dim,
            Exec::Sequential,
        ))
    }
}

/// Kernel `{x : M x = 0}` of a matrix given by sparse rows over `cols`
/// columns.
pub fn nullspace(rows: &[SparseVec], cols: usize) -> Subspace {
    let ones = vec![Rational::one(); cols];
    Subspace::span_sparse(rows, cols, Exec::Sequential)
        .orthogonal_complement(&ones)
        .expect("identity form is valid")
}

/// Inverse of a square matrix, `None` if singular.
pub fn invert_matrix(m: &[Vec<Rational>]) -> Option<Vec<Vec<Rational>>> {
    let n = m.len();
    let mut a: Vec<Vec<Rational>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| {
                if i == j {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            }));
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        let inv = a[col][col].recip();
        for x in a[col].iter_mut() {
            *x *= &inv;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                let (pivot_row, row) = if r < col {
                    let (lo, hi) = a.split_at_mut(col);
                    (&hi[0], &mut lo[r])
                } else {
                    let (lo, hi) = a.split_at_mut(r);
                    (&lo[col], &mut hi[0])
                };
                for (x, y) in row.iter_mut().zip(pivot_row) {
                    *x -= &f * y;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}
