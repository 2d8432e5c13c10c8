//! The free operad `F(E)` on the regular `Σ2`-module: leaf-labelled binary
//! trees ("parenthesized products"), the `Σn`-action and partial compositions.
//!
//! Monomials are written in the nested-pair grammar
//!
//! ```text
//! monomial := label | "(" monomial " " monomial ")"
//! ```
//!
//! so `x1(x2x3)` is `(1 (2 3))`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::OnceLock;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactla::{Rational, SparseVec};
use crate::perm::{all_permutations, GSubgroup, Permutation};

pub const MAX_TREE_ARITY: usize = 5;

/// A parenthesized product of the variables `x1..xn`, each used once.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TreeMonomial {
    Leaf(usize),
    Node(Box<TreeMonomial>, Box<TreeMonomial>),
}

impl TreeMonomial {
    pub fn leaf(label: usize) -> Self {
        TreeMonomial::Leaf(label)
    }

    pub fn node(left: TreeMonomial, right: TreeMonomial) -> Self {
        TreeMonomial::Node(Box::new(left), Box::new(right))
    }

    /// `x1 x2`
    pub fn generator() -> Self {
        TreeMonomial::node(TreeMonomial::leaf(1), TreeMonomial::leaf(2))
    }

    pub fn arity(&self) -> usize {
        match self {
            TreeMonomial::Leaf(_) => 1,
            TreeMonomial::Node(l, r) => l.arity() + r.arity(),
        }
    }

    /// Leaf labels read left to right.
    pub fn labels(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.arity());
        self.collect_labels(&mut out);
        out
    }

    fn collect_labels(&self, out: &mut Vec<usize>) {
        match self {
            TreeMonomial::Leaf(x) => out.push(*x),
            TreeMonomial::Node(l, r) => {
                l.collect_labels(out);
                r.collect_labels(out);
            }
        }
    }

    fn map_labels(&self, f: &impl Fn(usize) -> usize) -> TreeMonomial {
        match self {
            TreeMonomial::Leaf(x) => TreeMonomial::Leaf(f(*x)),
            TreeMonomial::Node(l, r) => TreeMonomial::node(l.map_labels(f), r.map_labels(f)),
        }
    }

    fn with_labels(&self, labels: &mut impl Iterator<Item = usize>) -> TreeMonomial {
        match self {
            TreeMonomial::Leaf(_) => TreeMonomial::Leaf(labels.next().expect("enough labels")),
            TreeMonomial::Node(l, r) => {
                let l = l.with_labels(labels);
                TreeMonomial::node(l, r.with_labels(labels))
            }
        }
    }

    /// Relabels leaf `j` as `p(j)`.
    pub fn act(&self, p: &Permutation) -> Result<TreeMonomial> {
        if p.arity() != self.arity() {
            return Err(Error::ArityMismatch {
                left: p.arity(),
                right: self.arity(),
            });
        }
        Ok(self.map_labels(&|j| p.apply(j)))
    }

    /// Partial composition `self ∘_slot other`: `other` replaces the leaf
    /// labelled `slot`, its labels shift to `slot..slot+k-1` and labels above
    /// `slot` in `self` move up by `k - 1`.
    pub fn graft(&self, slot: usize, other: &TreeMonomial) -> Result<TreeMonomial> {
        let n = self.arity();
        if !(1..=n).contains(&slot) {
            return Err(Error::range("grafting slot", slot, 1, n));
        }
        let k = other.arity();
        Ok(self.graft_unchecked(slot, k, other))
    }

    fn graft_unchecked(&self, slot: usize, k: usize, other: &TreeMonomial) -> TreeMonomial {
        match self {
            TreeMonomial::Leaf(x) if *x == slot => other.map_labels(&|j| j + slot - 1),
            TreeMonomial::Leaf(x) if *x > slot => TreeMonomial::Leaf(x + k - 1),
            TreeMonomial::Leaf(x) => TreeMonomial::Leaf(*x),
            TreeMonomial::Node(l, r) => TreeMonomial::node(
                l.graft_unchecked(slot, k, other),
                r.graft_unchecked(slot, k, other),
            ),
        }
    }

    /// Parses the nested-pair grammar. Labels must be exactly `1..n`.
    pub fn parse(text: &str) -> Result<TreeMonomial> {
        let (m, end) = parse_monomial(text.as_bytes(), 0, 1)?;
        if end != text.len() {
            return Err(Error::Syntax {
                line: 1,
                column: end + 1,
                message: "trailing characters after monomial".into(),
            });
        }
        m.check_labels()
            .map_err(|message| Error::Labels { line: 1, message })?;
        Ok(m)
    }

    pub(crate) fn check_labels(&self) -> std::result::Result<(), String> {
        let mut labels = self.labels();
        labels.sort_unstable();
        if labels.iter().enumerate().all(|(k, &x)| x == k + 1) {
            Ok(())
        } else {
            Err(format!(
                "monomial {self} must use each label 1..{} exactly once",
                labels.len()
            ))
        }
    }
}

/// Parses one monomial starting at byte `pos`; returns it and the end offset.
/// `line` is used for error positions.
pub(crate) fn parse_monomial(s: &[u8], pos: usize, line: usize) -> Result<(TreeMonomial, usize)> {
    let err = |column: usize, message: &str| Error::Syntax {
        line,
        column: column + 1,
        message: message.to_string(),
    };
    match s.get(pos) {
        Some(b'(') => {
            let (l, p) = parse_monomial(s, pos + 1, line)?;
            if s.get(p) != Some(&b' ') {
                return Err(err(p, "expected a single space between subterms"));
            }
            let (r, p) = parse_monomial(s, p + 1, line)?;
            if s.get(p) != Some(&b')') {
                return Err(err(p, "expected ')'"));
            }
            Ok((TreeMonomial::node(l, r), p + 1))
        }
        Some(c) if c.is_ascii_digit() => {
            let end = s[pos..]
                .iter()
                .position(|c| !c.is_ascii_digit())
                .map_or(s.len(), |k| pos + k);
            let label: usize = std::str::from_utf8(&s[pos..end])
                .expect("ascii digits")
                .parse()
                .map_err(|_| err(pos, "label too large"))?;
            if label == 0 {
                return Err(err(pos, "labels start at 1"));
            }
            Ok((TreeMonomial::Leaf(label), end))
        }
        _ => Err(err(pos, "expected '(' or a label")),
    }
}

impl fmt::Display for TreeMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TreeMonomial::Leaf(x) => write!(f, "{x}"),
            TreeMonomial::Node(l, r) => write!(f, "({l} {r})"),
        }
    }
}

/// Unlabelled shapes with `n` leaves, left comb first: the left subtree size
/// decreases, recursively.
fn shapes(n: usize) -> Vec<TreeMonomial> {
    if n == 1 {
        return vec![TreeMonomial::Leaf(0)];
    }
    let mut out = Vec::new();
    for left in (1..n).rev() {
        for l in shapes(left) {
            for r in shapes(n - left) {
                out.push(TreeMonomial::node(l.clone(), r));
            }
        }
    }
    out
}

/// Ordered basis of `F(E)(n)` with a reverse index.
#[derive(Debug)]
pub struct Basis {
    arity: usize,
    monomials: Vec<TreeMonomial>,
    index: HashMap<TreeMonomial, usize>,
    /// `action[rank(σ)][b]` is the index of `σ · monomials[b]`.
    action: Vec<Vec<usize>>,
    perms: Vec<Permutation>,
}

impl Basis {
    fn build(n: usize) -> Basis {
        let perms = all_permutations(n).expect("arity in range");
        let monomials: Vec<TreeMonomial> = shapes(n)
            .iter()
            .flat_map(|s| {
                perms
                    .iter()
                    .map(|p| s.with_labels(&mut p.images().iter().copied()))
                    .collect::<Vec<_>>()
            })
            .collect();
        let index: HashMap<TreeMonomial, usize> = monomials
            .iter()
            .enumerate()
            .map(|(k, m)| (m.clone(), k))
            .collect();
        let action = perms
            .iter()
            .map(|p| {
                monomials
                    .iter()
                    .map(|m| index[&m.act(p).expect("same arity")])
                    .collect()
            })
            .collect();
        Basis {
            arity: n,
            monomials,
            index,
            action,
            perms,
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn monomials(&self) -> &[TreeMonomial] {
        &self.monomials
    }

    pub fn monomial(&self, k: usize) -> &TreeMonomial {
        &self.monomials[k]
    }

    pub fn index_of(&self, m: &TreeMonomial) -> Option<usize> {
        self.index.get(m).copied()
    }

    /// `Σn` in lexicographic order.
    pub fn permutations(&self) -> &[Permutation] {
        &self.perms
    }

    /// Column map of the action of `p` on coordinates.
    pub fn action_map(&self, p: &Permutation) -> &[usize] {
        &self.action[p.lex_rank()]
    }
}

static BASES: [OnceLock<Basis>; MAX_TREE_ARITY] = [
    OnceLock::new(),
    OnceLock::new(),
    OnceLock::new(),
    OnceLock::new(),
    OnceLock::new(),
];

/// The cached basis of `F(E)(n)`, `1 ≤ n ≤ 5`, of size `C(n-1)·n!`.
pub fn basis(n: usize) -> Result<&'static Basis> {
    if !(1..=MAX_TREE_ARITY).contains(&n) {
        return Err(Error::range("tree arity", n, 1, MAX_TREE_ARITY));
    }
    Ok(BASES[n - 1].get_or_init(|| Basis::build(n)))
}

/// `dim F(E)(n) = C(n-1)·n!` computed in closed form.
pub fn free_dim(n: usize) -> usize {
    let catalan = |m: usize| -> usize {
        // C(m) = binom(2m, m) / (m + 1)
        let mut c: usize = 1;
        for k in 0..m {
            c = c * 2 * (2 * k + 1) / (k + 2);
        }
        c
    };
    catalan(n - 1) * (1..=n).product::<usize>()
}

/// A finite rational combination of monomials of one arity. Coefficients are
/// keyed by basis index, so iteration follows the basis order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OperadElement {
    arity: usize,
    coeffs: BTreeMap<usize, Rational>,
}

impl OperadElement {
    pub fn zero(arity: usize) -> Result<Self> {
        basis(arity)?;
        Ok(OperadElement {
            arity,
            coeffs: BTreeMap::new(),
        })
    }

    pub fn from_monomial(m: &TreeMonomial) -> Result<Self> {
        OperadElement::from_terms(vec![(Rational::one(), m.clone())])
    }

    /// Sums the given terms. All monomials must share one arity and be valid
    /// labellings.
    pub fn from_terms(terms: Vec<(Rational, TreeMonomial)>) -> Result<Self> {
        let arity = terms.first().map(|(_, m)| m.arity()).ok_or_else(|| {
            Error::InvalidInput("an element needs at least one term to fix its arity".into())
        })?;
        let b = basis(arity)?;
        let mut pairs = Vec::with_capacity(terms.len());
        for (c, m) in terms {
            if m.arity() != arity {
                return Err(Error::ArityMismatch {
                    left: arity,
                    right: m.arity(),
                });
            }
            let k = b
                .index_of(&m)
                .ok_or_else(|| Error::InvalidInput(format!("{m} is not a basis monomial")))?;
            pairs.push((k, c));
        }
        Ok(OperadElement::from_coords(
            arity,
            &SparseVec::from_pairs(pairs),
        ))
    }

    /// Integer-coefficient shorthand used for fixed relation vectors.
    pub fn from_int_terms(terms: &[(i64, &str)]) -> Result<Self> {
        let terms = terms
            .iter()
            .map(|&(c, m)| Ok((crate::exactla::int(c), TreeMonomial::parse(m)?)))
            .collect::<Result<Vec<_>>>()?;
        OperadElement::from_terms(terms)
    }

    pub fn from_coords(arity: usize, v: &SparseVec) -> Self {
        OperadElement {
            arity,
            coeffs: v.entries().iter().cloned().collect(),
        }
    }

    pub fn coords(&self) -> SparseVec {
        SparseVec::from_pairs(self.coeffs.iter().map(|(k, v)| (*k, v.clone())).collect())
    }

    pub fn dense(&self) -> Vec<Rational> {
        let n = basis(self.arity).expect("valid arity").len();
        self.coords().to_dense(n)
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of a monomial (zero if absent).
    pub fn coeff(&self, m: &TreeMonomial) -> Rational {
        basis(self.arity)
            .ok()
            .and_then(|b| b.index_of(m))
            .and_then(|k| self.coeffs.get(&k).cloned())
            .unwrap_or_else(Rational::zero)
    }

    /// Terms in basis order.
    pub fn terms(&self) -> Vec<(Rational, TreeMonomial)> {
        let b = basis(self.arity).expect("valid arity");
        self.coeffs
            .iter()
            .map(|(k, c)| (c.clone(), b.monomial(*k).clone()))
            .collect()
    }

    pub fn scale(&self, s: &Rational) -> OperadElement {
        OperadElement::from_coords(self.arity, &self.coords().scale(s))
    }

    pub fn add(&self, other: &OperadElement) -> Result<OperadElement> {
        self.add_scaled(&Rational::one(), other)
    }

    pub fn sub(&self, other: &OperadElement) -> Result<OperadElement> {
        self.add_scaled(&-Rational::one(), other)
    }

    fn add_scaled(&self, s: &Rational, other: &OperadElement) -> Result<OperadElement> {
        if self.arity != other.arity {
            return Err(Error::ArityMismatch {
                left: self.arity,
                right: other.arity,
            });
        }
        Ok(OperadElement::from_coords(
            self.arity,
            &self.coords().add_scaled(s, &other.coords()),
        ))
    }

    /// Linear extension of leaf relabelling `j ↦ p(j)`.
    pub fn act(&self, p: &Permutation) -> Result<OperadElement> {
        if p.arity() != self.arity {
            return Err(Error::ArityMismatch {
                left: p.arity(),
                right: self.arity,
            });
        }
        let map = basis(self.arity)?.action_map(p);
        Ok(OperadElement::from_coords(
            self.arity,
            &self.coords().permute_columns(map),
        ))
    }

    /// Bilinear extension of [`TreeMonomial::graft`].
    pub fn graft(&self, slot: usize, other: &OperadElement) -> Result<OperadElement> {
        if !(1..=self.arity).contains(&slot) {
            return Err(Error::range("grafting slot", slot, 1, self.arity));
        }
        let arity = self.arity + other.arity - 1;
        let target = basis(arity)?;
        let mut pairs = Vec::with_capacity(self.len() * other.len());
        for (a, m) in self.terms() {
            for (b, m2) in other.terms() {
                let g = m.graft(slot, &m2)?;
                pairs.push((
                    target.index_of(&g).expect("graft is a basis monomial"),
                    &a * &b,
                ));
            }
        }
        Ok(OperadElement::from_coords(
            arity,
            &SparseVec::from_pairs(pairs),
        ))
    }
}

impl fmt::Display for OperadElement {
    /// `c1 m1 + c2 m2 - ...`, `0` when empty.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (c, m)) in self.terms().into_iter().enumerate() {
            let sign = if c.is_negative() { "-" } else { "+" };
            match (k, sign) {
                (0, "+") => write!(f, "{} {m}", c.abs())?,
                (0, _) => write!(f, "-{} {m}", c.abs())?,
                _ => write!(f, " {sign} {} {m}", c.abs())?,
            }
        }
        Ok(())
    }
}

/// The associator pattern `(x1x2)x3 - x1(x2x3)`.
pub fn associator() -> OperadElement {
    OperadElement::from_int_terms(&[(1, "((1 2) 3)"), (-1, "(1 (2 3))")]).expect("fixed associator")
}

/// `Σ_{σ ∈ G} sign(σ) · σ·a` with `a` the associator pattern.
pub fn condition_vector(g: GSubgroup) -> OperadElement {
    let a = associator();
    g.elements()
        .iter()
        .fold(OperadElement::zero(3).expect("arity 3"), |acc, s| {
            let term = a
                .act(s)
                .expect("arity 3")
                .scale(&crate::exactla::int(s.sign() as i64));
            acc.add(&term).expect("arity 3")
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::int;

    fn m(s: &str) -> TreeMonomial {
        TreeMonomial::parse(s).unwrap()
    }

    fn el(terms: &[(i64, &str)]) -> OperadElement {
        OperadElement::from_int_terms(terms).unwrap()
    }

    #[test]
    fn basis_sizes_and_order() {
        let b2 = basis(2).unwrap();
        assert_eq!(b2.monomials(), &[m("(1 2)"), m("(2 1)")]);
        assert_eq!(basis(3).unwrap().len(), 12);
        assert_eq!(basis(4).unwrap().len(), 120);
        assert_eq!(basis(5).unwrap().len(), 1680);
        for n in 1..=5 {
            assert_eq!(basis(n).unwrap().len(), free_dim(n));
        }
        let b3 = basis(3).unwrap();
        assert_eq!(b3.monomial(0), &m("((1 2) 3)"));
        assert_eq!(b3.monomial(1), &m("((1 3) 2)"));
        assert_eq!(b3.monomial(6), &m("(1 (2 3))"));
        assert_eq!(basis(4).unwrap().monomial(0), &m("(((1 2) 3) 4)"));
        assert!(basis(0).is_err());
        assert!(basis(6).is_err());
    }

    #[test]
    fn parse_and_print() {
        let t = m("(1 ((2 3) 4))");
        assert_eq!(t.to_string(), "(1 ((2 3) 4))");
        assert_eq!(t.arity(), 4);
        assert!(matches!(
            TreeMonomial::parse("(1  2)"),
            Err(Error::Syntax { .. })
        ));
        assert!(matches!(
            TreeMonomial::parse("(1 2"),
            Err(Error::Syntax { .. })
        ));
        assert!(matches!(
            TreeMonomial::parse("(1 2))"),
            Err(Error::Syntax { .. })
        ));
        assert!(matches!(
            TreeMonomial::parse("(1 (2 4))"),
            Err(Error::Labels { .. })
        ));
        assert!(matches!(
            TreeMonomial::parse("(1 (2 2))"),
            Err(Error::Labels { .. })
        ));
    }

    #[test]
    fn action_examples() {
        let t12 = Permutation::transposition(3, 1, 2).unwrap();
        let c123 = Permutation::cycle(3, &[1, 2, 3]).unwrap();
        let x = el(&[(1, "(1 (2 3))")]);
        assert_eq!(x.act(&t12).unwrap(), el(&[(1, "(2 (1 3))")]));
        assert_eq!(x.act(&c123).unwrap(), el(&[(1, "(2 (3 1))")]));
        assert_eq!(x.act(&Permutation::identity(3)).unwrap(), x);
        assert!(x.act(&Permutation::identity(4)).is_err());
    }

    #[test]
    fn graft_examples() {
        let g = TreeMonomial::generator();
        assert_eq!(g.graft(1, &g).unwrap(), m("((1 2) 3)"));
        assert_eq!(g.graft(2, &g).unwrap(), m("(1 (2 3))"));
        assert_eq!(m("(1 (2 3))").graft(2, &g).unwrap(), m("(1 ((2 3) 4))"));
        assert!(g.graft(3, &g).is_err());
        assert!(g.graft(0, &g).is_err());
    }

    #[test]
    fn condition_vectors_match_known_relations() {
        assert_eq!(
            condition_vector(GSubgroup::G1),
            el(&[(1, "((1 2) 3)"), (-1, "(1 (2 3))")])
        );
        // μ(μ(X1,X2),X3) - μ(X1,μ(X2,X3)) - μ(μ(X2,X1),X3) + μ(X2,μ(X1,X3))
        assert_eq!(
            condition_vector(GSubgroup::G2),
            el(&[
                (1, "((1 2) 3)"),
                (-1, "(1 (2 3))"),
                (-1, "((2 1) 3)"),
                (1, "(2 (1 3))"),
            ])
        );
        assert_eq!(condition_vector(GSubgroup::G6).len(), 12);
    }

    #[test]
    fn display_element() {
        let x = el(&[(-1, "(1 (2 3))"), (2, "((1 2) 3)")]);
        assert_eq!(x.to_string(), "2 ((1 2) 3) - 1 (1 (2 3))");
        assert_eq!(OperadElement::zero(3).unwrap().to_string(), "0");
        assert_eq!(x.coeff(&m("(1 (2 3))")), int(-1));
    }

    /// `σ̃` on `n + k - 1` letters induced by `σ ∈ Σn` on a graft at `slot`:
    /// block of `k` letters moves to `σ(slot)`.
    fn induced(sigma: &Permutation, slot: usize, k: usize) -> Permutation {
        let n = sigma.arity();
        let target = sigma.apply(slot);
        let mut images = Vec::with_capacity(n + k - 1);
        for j in 1..=n {
            let s = sigma.apply(j);
            let shifted = if s > target { s + k - 1 } else { s };
            if j == slot {
                images.extend((0..k).map(|t| target + t));
            } else {
                images.push(shifted);
            }
        }
        Permutation::new(images).unwrap()
    }

    #[test]
    fn grafting_is_equivariant() {
        for n in 1..=3 {
            for k in 1..=3 {
                for a in basis(n).unwrap().monomials() {
                    for b in basis(k).unwrap().monomials() {
                        for slot in 1..=n {
                            let g = a.graft(slot, b).unwrap();
                            for sigma in all_permutations(n).unwrap() {
                                let lhs =
                                    a.act(&sigma).unwrap().graft(sigma.apply(slot), b).unwrap();
                                let rhs = g.act(&induced(&sigma, slot, k)).unwrap();
                                assert_eq!(lhs, rhs);
                            }
                            for tau in all_permutations(k).unwrap() {
                                let lhs = a.graft(slot, &b.act(&tau).unwrap()).unwrap();
                                let block: Vec<usize> = (1..=n + k - 1)
                                    .map(|j| {
                                        if j >= slot && j < slot + k {
                                            tau.apply(j - slot + 1) + slot - 1
                                        } else {
                                            j
                                        }
                                    })
                                    .collect();
                                let rhs = g.act(&Permutation::new(block).unwrap()).unwrap();
                                assert_eq!(lhs, rhs);
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn grafting_is_associative() {
        // sequential: (a ∘_i b) ∘_{i-1+j} c = a ∘_i (b ∘_j c)
        // parallel:   (a ∘_i b) ∘_{l-1+k} c = (a ∘_l c) ∘_i b   for i < l
        for na in 1..=3 {
            for nb in 1..=3 {
                for nc in 1..=3 {
                    for a in basis(na).unwrap().monomials() {
                        for b in basis(nb).unwrap().monomials() {
                            for c in basis(nc).unwrap().monomials() {
                                for i in 1..=na {
                                    let ab = a.graft(i, b).unwrap();
                                    for j in 1..=nb {
                                        assert_eq!(
                                            ab.graft(i - 1 + j, c).unwrap(),
                                            a.graft(i, &b.graft(j, c).unwrap()).unwrap()
                                        );
                                    }
                                    for l in i + 1..=na {
                                        assert_eq!(
                                            ab.graft(l - 1 + nb, c).unwrap(),
                                            a.graft(l, c).unwrap().graft(i, b).unwrap()
                                        );
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn action_is_a_group_action() {
        let b = basis(4).unwrap();
        let perms = all_permutations(4).unwrap();
        let e = el(&[
            (2, "((1 2) (3 4))"),
            (-3, "(4 (1 (2 3)))"),
            (1, "(((2 1) 4) 3)"),
        ]);
        for p in perms.iter().step_by(5) {
            for q in &perms {
                let lhs = e.act(q).unwrap().act(p).unwrap();
                let rhs = e.act(&p.compose(q).unwrap()).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
        // coefficients are permuted, never re-signed
        let mut before: Vec<_> = e.terms().into_iter().map(|(c, _)| c).collect();
        let mut after: Vec<_> = e
            .act(&perms[7])
            .unwrap()
            .terms()
            .into_iter()
            .map(|(c, _)| c)
            .collect();
        before.sort();
        after.sort();
        assert_eq!(before, after);
        assert_eq!(
            b.action_map(&perms[0]),
            (0..120).collect::<Vec<_>>().as_slice()
        );
    }
}
