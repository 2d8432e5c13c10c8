//! Identity checks on finite-dimensional algebras given by structure
//! constants `μ(e_i, e_j) = Σ_k c[i][j][k] e_k`.
//!
//! All identities involved are multilinear, so checking basis triples is
//! complete.

use std::collections::HashMap;
use std::fmt::Write as _;

use num_traits::{One, Zero};
use rand::Rng;

use crate::error::{Error, Result};
use crate::exactla::{int, invert_matrix, nullspace, parse_rational, rat, Rational, SparseVec};
use crate::perm::{GSubgroup, Permutation};

pub const MAX_ALGEBRA_DIM: usize = 10;

/// Structure constants of a bilinear product on `Q^d`, stored densely.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AlgebraData {
    dim: usize,
    constants: Vec<Rational>,
}

impl AlgebraData {
    pub fn zero(dim: usize) -> Result<Self> {
        if !(1..=MAX_ALGEBRA_DIM).contains(&dim) {
            return Err(Error::range("algebra dimension", dim, 1, MAX_ALGEBRA_DIM));
        }
        Ok(AlgebraData {
            dim,
            constants: vec![Rational::zero(); dim * dim * dim],
        })
    }

    /// `constants[((i-1)·d + (j-1))·d + (k-1)] = c[i][j][k]`.
    pub fn new(dim: usize, constants: Vec<Rational>) -> Result<Self> {
        let mut a = AlgebraData::zero(dim)?;
        if constants.len() != a.constants.len() {
            return Err(Error::DimensionMismatch {
                expected: a.constants.len(),
                got: constants.len(),
            });
        }
        a.constants = constants;
        Ok(a)
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize, usize) -> Rational) -> Result<Self> {
        let mut a = AlgebraData::zero(dim)?;
        for i in 1..=dim {
            for j in 1..=dim {
                for k in 1..=dim {
                    a.set(i, j, k, f(i, j, k));
                }
            }
        }
        Ok(a)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    fn offset(&self, i: usize, j: usize, k: usize) -> usize {
        ((i - 1) * self.dim + (j - 1)) * self.dim + (k - 1)
    }

    /// `c[i][j][k]`, 1-based.
    pub fn get(&self, i: usize, j: usize, k: usize) -> &Rational {
        &self.constants[self.offset(i, j, k)]
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, v: Rational) {
        let o = self.offset(i, j, k);
        self.constants[o] = v;
    }

    /// `μ(x, y)` for coordinate vectors.
    pub fn mul(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        let d = self.dim;
        let mut out = vec![Rational::zero(); d];
        for (i, xi) in x.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            for (j, yj) in y.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                let w = xi * yj;
                for (k, o) in out.iter_mut().enumerate() {
                    let c = self.get(i + 1, j + 1, k + 1);
                    if !c.is_zero() {
                        *o += &w * c;
                    }
                }
            }
        }
        out
    }

    fn unit(&self, i: usize) -> Vec<Rational> {
        (1..=self.dim)
            .map(|k| {
                if k == i {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            })
            .collect()
    }

    fn product(&self, i: usize, j: usize) -> Vec<Rational> {
        (1..=self.dim).map(|k| self.get(i, j, k).clone()).collect()
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if (1..=self.dim).contains(&i) {
            Ok(())
        } else {
            Err(Error::range("basis index", i, 1, self.dim))
        }
    }

    pub fn is_antisymmetric(&self) -> bool {
        (1..=self.dim).all(|i| {
            (1..=self.dim).all(|j| (1..=self.dim).all(|k| *self.get(i, j, k) == -self.get(j, i, k)))
        })
    }

    pub fn is_commutative(&self) -> bool {
        *self == opposite(self)
    }

    /// Structure constants in the basis `f_i = Σ_r p[i][r] e_r`.
    pub fn change_basis(&self, p: &[Vec<Rational>]) -> Result<AlgebraData> {
        let d = self.dim;
        if p.len() != d || p.iter().any(|r| r.len() != d) {
            return Err(Error::DimensionMismatch {
                expected: d,
                got: p.len(),
            });
        }
        let q = invert_matrix(p)
            .ok_or_else(|| Error::InvalidInput("change of basis matrix is singular".into()))?;
        let mut out = AlgebraData::zero(d)?;
        for i in 0..d {
            for j in 0..d {
                let prod = self.mul(&p[i], &p[j]);
                // prod in e-coordinates; e_t = Σ_u q[t][u] f_u
                for u in 0..d {
                    let v = prod
                        .iter()
                        .zip(&q)
                        .filter(|(x, _)| !x.is_zero())
                        .fold(Rational::zero(), |acc, (x, row)| acc + x * &row[u]);
                    out.set(i + 1, j + 1, u + 1, v);
                }
            }
        }
        Ok(out)
    }

    /// Parses `dim: d` followed by lines `c i j k = p/q`; unspecified
    /// constants are zero and `#` starts a comment.
    pub fn parse(text: &str) -> Result<AlgebraData> {
        let mut algebra: Option<AlgebraData> = None;
        let mut seen: HashMap<(usize, usize, usize), usize> = HashMap::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = lineno + 1;
            let content = raw.split('#').next().unwrap_or("");
            let body = content.trim();
            if body.is_empty() {
                continue;
            }
            let column = content.len() - content.trim_start().len() + 1;
            let syntax = |message: &str| Error::Syntax {
                line,
                column,
                message: message.to_string(),
            };
            if let Some(rest) = body.strip_prefix("dim:") {
                if algebra.is_some() {
                    return Err(syntax("'dim:' given twice"));
                }
                let d: usize = rest
                    .trim()
                    .parse()
                    .map_err(|_| syntax("expected 'dim: <positive integer>'"))?;
                algebra = Some(AlgebraData::zero(d).map_err(|_| {
                    Error::InvalidInput(format!(
                        "line {line}: dimension {d} outside 1..={MAX_ALGEBRA_DIM}"
                    ))
                })?);
                continue;
            }
            let a = algebra
                .as_mut()
                .ok_or_else(|| syntax("'dim: d' must come before structure constants"))?;
            let (lhs, rhs) = body
                .split_once('=')
                .ok_or_else(|| syntax("expected 'c i j k = value'"))?;
            let mut toks = lhs.split_whitespace();
            if toks.next() != Some("c") {
                return Err(syntax("expected 'c i j k = value'"));
            }
            let idx: Vec<usize> = toks
                .map(|t| t.parse::<usize>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| syntax("indices must be positive integers"))?;
            let [i, j, k] = idx[..] else {
                return Err(syntax("expected exactly three indices"));
            };
            for x in [i, j, k] {
                if !(1..=a.dim).contains(&x) {
                    return Err(Error::InvalidInput(format!(
                        "line {line}: index {x} outside 1..={}",
                        a.dim
                    )));
                }
            }
            let v = parse_rational(rhs.trim())
                .ok_or_else(|| syntax("value must be an integer or p/q"))?;
            if let Some(prev) = seen.insert((i, j, k), line) {
                return Err(Error::InvalidInput(format!(
                    "line {line}: c {i} {j} {k} already set on line {prev}"
                )));
            }
            a.set(i, j, k, v);
        }
        algebra.ok_or_else(|| Error::Syntax {
            line: 1,
            column: 1,
            message: "missing 'dim: d'".into(),
        })
    }

    /// Text form accepted by [`AlgebraData::parse`], nonzero entries only.
    pub fn to_text(&self) -> String {
        let mut out = format!("dim: {}\n", self.dim);
        for i in 1..=self.dim {
            for j in 1..=self.dim {
                for k in 1..=self.dim {
                    let v = self.get(i, j, k);
                    if !v.is_zero() {
                        let _ = writeln!(out, "c {i} {j} {k} = {v}");
                    }
                }
            }
        }
        out
    }
}

/// `a_μ(e_i, e_j, e_k) = μ(μ(e_i, e_j), e_k) - μ(e_i, μ(e_j, e_k))`.
pub fn associator(a: &AlgebraData, i: usize, j: usize, k: usize) -> Result<Vec<Rational>> {
    for x in [i, j, k] {
        a.check_index(x)?;
    }
    Ok(associator_unchecked(a, i, j, k))
}

fn associator_unchecked(a: &AlgebraData, i: usize, j: usize, k: usize) -> Vec<Rational> {
    let left = a.mul(&a.product(i, j), &a.unit(k));
    let right = a.mul(&a.unit(i), &a.product(j, k));
    left.into_iter().zip(right).map(|(l, r)| l - r).collect()
}

/// All associators, indexed like the structure constants.
fn associator_table(a: &AlgebraData) -> Vec<Vec<Rational>> {
    let d = a.dim;
    let mut out = Vec::with_capacity(d * d * d);
    for i in 1..=d {
        for j in 1..=d {
            for k in 1..=d {
                out.push(associator_unchecked(a, i, j, k));
            }
        }
    }
    out
}

/// `Σ_{σ∈G} sign(σ) a_μ(X_{σ⁻¹(1)}, X_{σ⁻¹(2)}, X_{σ⁻¹(3)}) = 0` on all basis
/// triples.
pub fn is_gi_associative(a: &AlgebraData, g: GSubgroup) -> bool {
    gi_checker(a).holds(g)
}

struct GiChecker {
    dim: usize,
    table: Vec<Vec<Rational>>,
}

fn gi_checker(a: &AlgebraData) -> GiChecker {
    GiChecker {
        dim: a.dim,
        table: associator_table(a),
    }
}

impl GiChecker {
    fn holds(&self, g: GSubgroup) -> bool {
        let d = self.dim;
        let elements: Vec<(Permutation, i32)> = g
            .elements()
            .into_iter()
            .map(|s| {
                let sign = s.sign();
                (s.inverse(), sign)
            })
            .collect();
        let at = |x: [usize; 3]| &self.table[((x[0] - 1) * d + (x[1] - 1)) * d + (x[2] - 1)];
        for i in 1..=d {
            for j in 1..=d {
                for k in 1..=d {
                    let args = [i, j, k];
                    for m in 0..d {
                        let mut total = Rational::zero();
                        for (inv, sign) in &elements {
                            let permuted = [
                                args[inv.apply(1) - 1],
                                args[inv.apply(2) - 1],
                                args[inv.apply(3) - 1],
                            ];
                            let v = &at(permuted)[m];
                            if *sign > 0 {
                                total += v;
                            } else {
                                total -= v;
                            }
                        }
                        if !total.is_zero() {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }
}

pub fn is_associative(a: &AlgebraData) -> bool {
    is_gi_associative(a, GSubgroup::G1)
}

pub fn is_lie_admissible(a: &AlgebraData) -> bool {
    is_gi_associative(a, GSubgroup::G6)
}

/// `[x, y] = μ(x, y) - μ(y, x)`.
pub fn commutator(a: &AlgebraData) -> AlgebraData {
    AlgebraData::from_fn(a.dim, |i, j, k| a.get(i, j, k) - a.get(j, i, k))
        .expect("dimension already validated")
}

/// Jacobi identity for an antisymmetric product.
pub fn jacobi_check(a: &AlgebraData) -> Result<bool> {
    if !a.is_antisymmetric() {
        return Err(Error::InvalidInput(
            "Jacobi check needs an antisymmetric product".into(),
        ));
    }
    let d = a.dim;
    for i in 1..=d {
        for j in 1..=d {
            for k in 1..=d {
                let t1 = a.mul(&a.product(i, j), &a.unit(k));
                let t2 = a.mul(&a.product(j, k), &a.unit(i));
                let t3 = a.mul(&a.product(k, i), &a.unit(j));
                if t1
                    .iter()
                    .zip(&t2)
                    .zip(&t3)
                    .any(|((x, y), z)| !(x + y + z).is_zero())
                {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// `x ⊙ y = μ(y, x)`.
pub fn opposite(a: &AlgebraData) -> AlgebraData {
    AlgebraData::from_fn(a.dim, |i, j, k| a.get(j, i, k).clone())
        .expect("dimension already validated")
}

/// `μ = ½[·,·]` for a Lie bracket.
pub fn half_bracket(a: &AlgebraData) -> Result<AlgebraData> {
    if !jacobi_check(a)? {
        return Err(Error::InvalidInput(
            "input bracket violates the Jacobi identity".into(),
        ));
    }
    let half = rat(1, 2);
    AlgebraData::from_fn(a.dim, |i, j, k| a.get(i, j, k) * &half)
}

/// Summary of every check on one algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraReport {
    pub dim: usize,
    pub gi: Vec<(GSubgroup, bool)>,
    pub lie_admissible: bool,
    pub commutator_jacobi: bool,
    pub commutative: bool,
}

pub fn report(a: &AlgebraData) -> AlgebraReport {
    let checker = gi_checker(a);
    let gi: Vec<(GSubgroup, bool)> = GSubgroup::ALL
        .iter()
        .map(|&g| (g, checker.holds(g)))
        .collect();
    AlgebraReport {
        dim: a.dim,
        lie_admissible: gi[5].1,
        commutator_jacobi: jacobi_check(&commutator(a)).expect("commutator is antisymmetric"),
        commutative: a.is_commutative(),
        gi,
    }
}

/// Fixed algebras and random samples.
pub mod samples {
    use super::*;

    /// `M_m(Q)` with basis `E_ab`, index `(a-1)·m + b`.
    pub fn matrix_algebra(m: usize) -> AlgebraData {
        let idx = |a: usize, b: usize| (a - 1) * m + b;
        let mut alg = AlgebraData::zero(m * m).expect("m*m within bounds");
        for a in 1..=m {
            for b in 1..=m {
                for c in 1..=m {
                    alg.set(idx(a, b), idx(b, c), idx(a, c), Rational::one());
                }
            }
        }
        alg
    }

    /// `Q[t]/(t^k)` with basis `1, t, ..., t^(k-1)`.
    pub fn truncated_polynomials(k: usize) -> AlgebraData {
        AlgebraData::from_fn(k, |i, j, l| int((i + j - 1 == l) as i64)).expect("k within bounds")
    }

    /// `x ∘ y = x·D(y)` on `Q[t]/(t^k)` with `D = t d/dt`: left-symmetric,
    /// not associative for `k ≥ 2`.
    pub fn euler_novikov(k: usize) -> AlgebraData {
        AlgebraData::from_fn(k, |i, j, l| int(((i + j - 1 == l) as i64) * (j as i64 - 1)))
            .expect("k within bounds")
    }

    /// `[e1,e2]=e3, [e2,e3]=e1, [e3,e1]=e2`.
    pub fn cross_product() -> AlgebraData {
        let mut a = AlgebraData::zero(3).expect("dim 3");
        for (i, j, k) in [(1, 2, 3), (2, 3, 1), (3, 1, 2)] {
            a.set(i, j, k, int(1));
            a.set(j, i, k, int(-1));
        }
        a
    }

    pub fn random_table(dim: usize, rng: &mut impl Rng) -> AlgebraData {
        AlgebraData::from_fn(dim, |_, _, _| int(rng.gen_range(-2..=2))).expect("dim within bounds")
    }

    pub fn random_antisymmetric(dim: usize, rng: &mut impl Rng) -> AlgebraData {
        let mut a = AlgebraData::zero(dim).expect("dim within bounds");
        for i in 1..=dim {
            for j in i + 1..=dim {
                for k in 1..=dim {
                    let v = int(rng.gen_range(-2..=2));
                    a.set(j, i, k, -v.clone());
                    a.set(i, j, k, v);
                }
            }
        }
        a
    }

    /// A random invertible integer matrix.
    pub fn random_basis_change(dim: usize, rng: &mut impl Rng) -> Vec<Vec<Rational>> {
        loop {
            let p: Vec<Vec<Rational>> = (0..dim)
                .map(|_| (0..dim).map(|_| int(rng.gen_range(-1..=1))).collect())
                .collect();
            if invert_matrix(&p).is_some() {
                return p;
            }
        }
    }

    /// Layer sizes of a graded nilpotent algebra `V1 ⊕ V2 ⊕ V3` with
    /// `V1·V1 ⊆ V2` and `V1·V2 + V2·V1 ⊆ V3`.
    #[derive(Debug, Clone, Copy)]
    pub struct Layers {
        pub v1: usize,
        pub v2: usize,
        pub v3: usize,
    }

    impl Default for Layers {
        fn default() -> Self {
            Layers {
                v1: 2,
                v2: 2,
                v3: 2,
            }
        }
    }

    /// A random algebra satisfying the `G`-condition exactly.
    ///
    /// Only triples from `V1` have nonzero associators, and once the
    /// `V1·V1 → V2` layer is fixed the condition is linear in the
    /// `V1·V2, V2·V1 → V3` constants; those are drawn from its nullspace.
    pub fn graded_gi_sample(g: GSubgroup, layers: Layers, rng: &mut impl Rng) -> AlgebraData {
        let Layers { v1, v2, v3 } = layers;
        let d = v1 + v2 + v3;
        let l1 = |x: usize| x + 1;
        let l2 = |x: usize| v1 + x + 1;
        let l3 = |x: usize| v1 + v2 + x + 1;
        let mut alg = AlgebraData::zero(d).expect("dim within bounds");
        for i in 0..v1 {
            for j in 0..v1 {
                for l in 0..v2 {
                    alg.set(l1(i), l1(j), l2(l), int(rng.gen_range(-2..=2)));
                }
            }
        }
        // unknown u(side, i, l, m): side 0 is e_i·f_l, side 1 is f_l·e_i
        let unknown =
            |side: usize, i: usize, l: usize, m: usize| ((side * v1 + i) * v2 + l) * v3 + m;
        let n_unknowns = 2 * v1 * v2 * v3;
        let first = |i: usize, j: usize, l: usize| alg.get(l1(i), l1(j), l2(l)).clone();
        // a(x, y, z)[m] = Σ_l c1[x][y][l]·u(1, z, l, m) - Σ_l c1[y][z][l]·u(0, x, l, m)
        let assoc_row = |x: usize,
                         y: usize,
                         z: usize,
                         m: usize,
                         sign: &Rational,
                         acc: &mut Vec<(usize, Rational)>| {
            for l in 0..v2 {
                let a = first(x, y, l);
                if !a.is_zero() {
                    acc.push((unknown(1, z, l, m), sign * a));
                }
                let b = first(y, z, l);
                if !b.is_zero() {
                    acc.push((unknown(0, x, l, m), -(sign * b)));
                }
            }
        };
        let elements: Vec<(Permutation, Rational)> = g
            .elements()
            .into_iter()
            .map(|s| {
                let sign = int(s.sign() as i64);
                (s.inverse(), sign)
            })
            .collect();
        let mut rows = Vec::new();
        for i in 0..v1 {
            for j in 0..v1 {
                for k in 0..v1 {
                    let args = [i, j, k];
                    for m in 0..v3 {
                        let mut acc = Vec::new();
                        for (inv, sign) in &elements {
                            let p = [
                                args[inv.apply(1) - 1],
                                args[inv.apply(2) - 1],
                                args[inv.apply(3) - 1],
                            ];
                            assoc_row(p[0], p[1], p[2], m, sign, &mut acc);
                        }
                        let row = SparseVec::from_pairs(acc);
                        if !row.is_zero() {
                            rows.push(row);
                        }
                    }
                }
            }
        }
        let kernel = nullspace(&rows, n_unknowns);
        let mut solution = SparseVec::zero();
        for b in kernel.rows() {
            let c = int(rng.gen_range(-3..=3));
            solution = solution.add_scaled(&c, b);
        }
        let solution = solution.primitive().to_dense(n_unknowns);
        for i in 0..v1 {
            for l in 0..v2 {
                for m in 0..v3 {
                    alg.set(l1(i), l2(l), l3(m), solution[unknown(0, i, l, m)].clone());
                    alg.set(l2(l), l1(i), l3(m), solution[unknown(1, i, l, m)].clone());
                }
            }
        }
        alg
    }

    /// A random associative algebra: a graded nilpotent sample, `M2(Q)`,
    /// `Q[t]/(t^3)` or upper triangular `2×2` matrices, in a random basis.
    pub fn random_associative(rng: &mut impl Rng) -> AlgebraData {
        let base = match rng.gen_range(0..4) {
            0 => graded_gi_sample(GSubgroup::G1, Layers::default(), rng),
            1 => matrix_algebra(2),
            2 => truncated_polynomials(3),
            _ => {
                // span of E11, E12, E22 inside M2
                let m2 = matrix_algebra(2);
                let keep = [1usize, 2, 4];
                AlgebraData::from_fn(3, |i, j, k| {
                    m2.get(keep[i - 1], keep[j - 1], keep[k - 1]).clone()
                })
                .expect("dim 3")
            }
        };
        let p = random_basis_change(base.dim(), rng);
        base.change_basis(&p).expect("invertible change of basis")
    }
}

#[cfg(test)]
mod tests {
    use super::samples::*;
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn all_zero(v: &[Rational]) -> bool {
        v.iter().all(|x| x.is_zero())
    }

    #[test]
    fn associator_examples() {
        let z = AlgebraData::zero(3).unwrap();
        assert!(all_zero(&associator(&z, 1, 2, 3).unwrap()));
        let m2 = matrix_algebra(2);
        for i in 1..=4 {
            for j in 1..=4 {
                for k in 1..=4 {
                    assert!(all_zero(&associator(&m2, i, j, k).unwrap()));
                }
            }
        }
        assert!(associator(&m2, 0, 1, 1).is_err());
        assert!(associator(&m2, 1, 5, 1).is_err());
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let found = (0..20).any(|_| {
            let a = random_table(2, &mut rng);
            !all_zero(&associator(&a, 1, 1, 2).unwrap())
                || !all_zero(&associator(&a, 2, 1, 1).unwrap())
        });
        assert!(found);
    }

    #[test]
    fn associative_algebras_pass_everything() {
        for a in [
            matrix_algebra(2),
            truncated_polynomials(4),
            AlgebraData::zero(2).unwrap(),
        ] {
            for g in GSubgroup::ALL {
                assert!(is_gi_associative(&a, g), "{g}");
            }
        }
    }

    #[test]
    fn half_bracket_of_cross_product() {
        let lie = cross_product();
        assert!(jacobi_check(&lie).unwrap());
        let mu = half_bracket(&lie).unwrap();
        assert!(is_lie_admissible(&mu));
        assert!(is_gi_associative(&mu, GSubgroup::G5));
        assert!(!is_associative(&mu));
        assert_eq!(commutator(&mu), lie);
        let zero = AlgebraData::zero(3).unwrap();
        assert_eq!(half_bracket(&zero).unwrap(), zero);
    }

    #[test]
    fn vinberg_witness() {
        let v = euler_novikov(2);
        assert!(is_gi_associative(&v, GSubgroup::G2));
        assert!(!is_gi_associative(&v, GSubgroup::G1));
        assert!(is_gi_associative(&opposite(&v), GSubgroup::G3));
        assert!(!is_gi_associative(&v, GSubgroup::G3));
        let v4 = euler_novikov(4);
        assert!(is_gi_associative(&v4, GSubgroup::G2));
        assert!(!is_associative(&v4));
    }

    #[test]
    fn commutator_and_opposite() {
        let comm = truncated_polynomials(3);
        assert_eq!(commutator(&comm), AlgebraData::zero(3).unwrap());
        assert_eq!(opposite(&comm), comm);
        assert!(jacobi_check(&commutator(&matrix_algebra(2))).unwrap());
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let a = random_table(3, &mut rng);
        assert_eq!(opposite(&opposite(&a)), a);
        assert!(jacobi_check(&a).is_err() || a.is_antisymmetric());
        assert!(half_bracket(&a).is_err());
    }

    #[test]
    fn random_failures_exist() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        assert!((0..50).any(|_| !is_lie_admissible(&random_table(3, &mut rng))));
        assert!((0..50).any(|_| !jacobi_check(&random_antisymmetric(3, &mut rng)).unwrap()));
    }

    #[test]
    fn graded_samples_satisfy_their_condition() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for g in GSubgroup::ALL {
            let mut nonassociative = 0;
            for _ in 0..20 {
                let a = graded_gi_sample(g, Layers::default(), &mut rng);
                assert!(is_gi_associative(&a, g), "{g}");
                assert!(is_lie_admissible(&a), "{g}");
                if !is_associative(&a) {
                    nonassociative += 1;
                }
            }
            if g != GSubgroup::G1 {
                assert!(nonassociative > 0, "{g} samples are all associative");
            }
        }
    }

    #[test]
    fn change_of_basis_preserves_identities() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..10 {
            let a = random_associative(&mut rng);
            assert!(is_associative(&a));
        }
        let v = euler_novikov(3);
        let p = random_basis_change(3, &mut rng);
        let w = v.change_basis(&p).unwrap();
        assert!(is_gi_associative(&w, GSubgroup::G2));
        let singular = vec![vec![int(1), int(1)], vec![int(1), int(1)]];
        assert!(AlgebraData::zero(2)
            .unwrap()
            .change_basis(&singular)
            .is_err());
    }

    #[test]
    fn file_format() {
        let text = "# cross product\ndim: 3\nc 1 2 3 = 1\nc 2 1 3 = -1\nc 2 3 1 = 1\nc 3 2 1 = -1\nc 3 1 2 = 1\nc 1 3 2 = -1\n";
        let a = AlgebraData::parse(text).unwrap();
        assert_eq!(a, cross_product());
        assert_eq!(AlgebraData::parse(&a.to_text()).unwrap(), a);
        let half = AlgebraData::parse("dim: 1\nc 1 1 1 = 1/2").unwrap();
        assert_eq!(half.get(1, 1, 1), &rat(1, 2));
        assert!(matches!(
            AlgebraData::parse("c 1 1 1 = 1"),
            Err(Error::Syntax { .. })
        ));
        assert!(matches!(
            AlgebraData::parse("dim: 2\nc 1 1 3 = 1"),
            Err(Error::InvalidInput(_))
        ));
        assert!(matches!(
            AlgebraData::parse("dim: 11"),
            Err(Error::InvalidInput(_))
        ));
        assert!(matches!(
            AlgebraData::parse("dim: 2\nc 1 1 = 1"),
            Err(Error::Syntax { line: 2, .. })
        ));
        assert!(matches!(
            AlgebraData::parse("dim: 2\nc 1 1 1 = x"),
            Err(Error::Syntax { .. })
        ));
        assert!(matches!(
            AlgebraData::parse("dim: 2\nc 1 1 1 = 1\nc 1 1 1 = 2"),
            Err(Error::InvalidInput(_))
        ));
        assert!(AlgebraData::parse("").is_err());
    }

    #[test]
    fn report_summary() {
        let r = report(&half_bracket(&cross_product()).unwrap());
        assert!(r.lie_admissible && r.commutator_jacobi);
        assert!(!r.gi[0].1);
        assert!(r.gi[4].1 && r.gi[5].1);
    }
}
