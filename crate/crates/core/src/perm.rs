//! Symmetric groups `Σn` in one-line notation and the six subgroups of `Σ3`.

use std::fmt;

use crate::error::{Error, Result};

pub const MAX_PERM_ARITY: usize = 8;

/// A permutation of `{1..n}` stored in one-line notation: position `i - 1`
/// holds `σ(i)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x == 0 || x > n || seen[x - 1] {
                return Err(Error::InvalidPermutation(format!(
                    "{images:?} is not a bijection of 1..{n}"
                )));
            }
            seen[x - 1] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (1..=n).collect(),
        }
    }

    /// The transposition exchanging `a` and `b` in `Σn`.
    pub fn transposition(n: usize, a: usize, b: usize) -> Result<Self> {
        if a == 0 || b == 0 || a > n || b > n || a == b {
            return Err(Error::InvalidPermutation(format!(
                "transposition ({a} {b}) in S{n}"
            )));
        }
        let mut images: Vec<usize> = (1..=n).collect();
        images.swap(a - 1, b - 1);
        Ok(Permutation { images })
    }

    /// The cycle `c[0] -> c[1] -> ... -> c[0]` in `Σn`.
    pub fn cycle(n: usize, c: &[usize]) -> Result<Self> {
        let mut images: Vec<usize> = (1..=n).collect();
        for (k, &from) in c.iter().enumerate() {
            if from == 0 || from > n {
                return Err(Error::InvalidPermutation(format!("cycle {c:?} in S{n}")));
            }
            images[from - 1] = c[(k + 1) % c.len()];
        }
        Permutation::new(images)
    }

    pub fn arity(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// `σ(i)` for `i` in `1..=n`.
    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(k, &x)| x == k + 1)
    }

    pub fn inversions(&self) -> usize {
        let v = &self.images;
        (0..v.len())
            .flat_map(|i| (i + 1..v.len()).map(move |j| (i, j)))
            .filter(|&(i, j)| v[i] > v[j])
            .count()
    }

    /// `(-1)^{inversions}`.
    pub fn sign(&self) -> i32 {
        if self.inversions().is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.arity() != other.arity() {
            return Err(Error::ArityMismatch {
                left: self.arity(),
                right: other.arity(),
            });
        }
        Ok(Permutation {
            images: other.images.iter().map(|&i| self.apply(i)).collect(),
        })
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.arity()];
        for (k, &x) in self.images.iter().enumerate() {
            images[x - 1] = k + 1;
        }
        Permutation { images }
    }

    /// Position of this permutation in [`all_permutations`] order.
    pub fn lex_rank(&self) -> usize {
        lex_rank(&self.images)
    }
}

/// Lexicographic rank of a sequence of distinct values `1..=n`.
pub(crate) fn lex_rank(images: &[usize]) -> usize {
    let n = images.len();
    let mut rank = 0;
    for i in 0..n {
        let smaller = images[i + 1..].iter().filter(|&&x| x < images[i]).count();
        rank = rank * (n - i) + smaller;
    }
    rank
}

impl fmt::Display for Permutation {
    /// Cycle notation, `id` for the identity.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return write!(f, "id");
        }
        let n = self.arity();
        let mut seen = vec![false; n + 1];
        for start in 1..=n {
            if seen[start] || self.apply(start) == start {
                continue;
            }
            write!(f, "(")?;
            let mut i = start;
            let mut first = true;
            while !seen[i] {
                seen[i] = true;
                if !first {
                    write!(f, " ")?;
                }
                write!(f, "{i}")?;
                first = false;
                i = self.apply(i);
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

/// All `n!` permutations of `Σn`, lexicographic on image arrays.
pub fn all_permutations(n: usize) -> Result<Vec<Permutation>> {
    if !(1..=MAX_PERM_ARITY).contains(&n) {
        return Err(Error::range("permutation arity", n, 1, MAX_PERM_ARITY));
    }
    let mut out = Vec::new();
    let mut current: Vec<usize> = (1..=n).collect();
    loop {
        out.push(Permutation {
            images: current.clone(),
        });
        if !next_lex(&mut current) {
            break;
        }
    }
    Ok(out)
}

fn next_lex(v: &mut [usize]) -> bool {
    let n = v.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// The subgroups `G1..G6` of `Σ3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GSubgroup {
    /// `{id}`
    G1,
    /// `{id, τ12}`
    G2,
    /// `{id, τ23}`
    G3,
    /// `{id, τ13}`
    G4,
    /// the alternating group `A3`
    G5,
    /// all of `Σ3`
    G6,
}

impl GSubgroup {
    pub const ALL: [GSubgroup; 6] = [
        GSubgroup::G1,
        GSubgroup::G2,
        GSubgroup::G3,
        GSubgroup::G4,
        GSubgroup::G5,
        GSubgroup::G6,
    ];

    pub fn index(self) -> usize {
        self as usize + 1
    }

    pub fn elements(self) -> Vec<Permutation> {
        let p = |v: [usize; 3]| Permutation { images: v.to_vec() };
        let id = p([1, 2, 3]);
        match self {
            GSubgroup::G1 => vec![id],
            GSubgroup::G2 => vec![id, p([2, 1, 3])],
            GSubgroup::G3 => vec![id, p([1, 3, 2])],
            GSubgroup::G4 => vec![id, p([3, 2, 1])],
            // (123) and (132)
            GSubgroup::G5 => vec![id, p([2, 3, 1]), p([3, 1, 2])],
            GSubgroup::G6 => all_permutations(3).expect("arity 3 is in range"),
        }
    }
}

impl fmt::Display for GSubgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "G{}", self.index())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(v: &[usize]) -> Permutation {
        Permutation::new(v.to_vec()).unwrap()
    }

    #[test]
    fn enumeration_sizes() {
        assert_eq!(all_permutations(1).unwrap(), vec![Permutation::identity(1)]);
        let s2 = all_permutations(2).unwrap();
        assert_eq!(s2, vec![perm(&[1, 2]), perm(&[2, 1])]);
        assert_eq!(all_permutations(3).unwrap().len(), 6);
        let s5 = all_permutations(5).unwrap();
        assert_eq!(s5.len(), 120);
        for (k, p) in s5.iter().enumerate() {
            assert_eq!(p.lex_rank(), k);
        }
        let mut sorted = s5.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted, s5);
        assert!(all_permutations(0).is_err());
        assert!(all_permutations(9).is_err());
    }

    #[test]
    fn signs() {
        assert_eq!(Permutation::identity(3).sign(), 1);
        assert_eq!(perm(&[2, 1, 3]).sign(), -1);
        assert_eq!(Permutation::cycle(3, &[1, 2, 3]).unwrap().sign(), 1);
    }

    #[test]
    fn compose_and_inverse() {
        let t12 = Permutation::transposition(3, 1, 2).unwrap();
        assert!(t12.compose(&t12).unwrap().is_identity());
        let c123 = Permutation::cycle(3, &[1, 2, 3]).unwrap();
        let c132 = Permutation::cycle(3, &[1, 3, 2]).unwrap();
        assert_eq!(c123.images(), &[2, 3, 1]);
        assert_eq!(c123.compose(&c123).unwrap(), c132);
        assert_eq!(c123.inverse(), c132);
        assert!(c123.compose(&Permutation::identity(4)).is_err());
        assert_eq!(c123.to_string(), "(1 2 3)");
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Permutation::new(vec![1, 1, 2]).is_err());
        assert!(Permutation::new(vec![0, 1]).is_err());
        assert!(Permutation::new(vec![1, 4, 2]).is_err());
    }

    #[test]
    fn subgroup_elements_and_closure() {
        assert_eq!(GSubgroup::G1.elements(), vec![Permutation::identity(3)]);
        assert_eq!(
            GSubgroup::G5.elements(),
            vec![perm(&[1, 2, 3]), perm(&[2, 3, 1]), perm(&[3, 1, 2])]
        );
        assert_eq!(GSubgroup::G6.elements().len(), 6);
        for g in GSubgroup::ALL {
            let els = g.elements();
            for a in &els {
                assert!(els.contains(&a.inverse()), "{g} not inverse-closed");
                for b in &els {
                    assert!(els.contains(&a.compose(b).unwrap()), "{g} not closed");
                }
            }
        }
    }

    #[test]
    fn sign_is_multiplicative() {
        let s4 = all_permutations(4).unwrap();
        for p in &s4 {
            for q in &s4 {
                assert_eq!(p.compose(q).unwrap().sign(), p.sign() * q.sign());
            }
            assert!(p.compose(&p.inverse()).unwrap().is_identity());
        }
    }
}
