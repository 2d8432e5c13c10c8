//! Components of the operadic ideal generated by `R ⊆ F(E)(3)` and the
//! quotient dimensions `dim P(n) = dim F(E)(n) - dim R(n)`.
//!
//! `R(n)` is the `Σn`-closure of the one-step grafts `r ∘_i x1x2` and
//! `x1x2 ∘_j r` for `r ∈ R(n-1)`. Because `R(n-1)` is `Σ(n-1)`-stable, the
//! closure only needs one permutation per coset of the stabiliser of each
//! graft type ([`Spanning::Cosets`]); [`Spanning::FullOrbit`] applies all of
//! `Σn` to every graft at every slot.

use std::collections::{BTreeMap, HashSet};

use crate::duality::WordIdentity;
use crate::error::{Error, Result};
use crate::exactla::{int, SparseVec, Subspace};
use crate::par::Exec;
use crate::perm::{all_permutations, Permutation};
use crate::presentations::Presentation;
use crate::treespace::{basis, free_dim, TreeMonomial, MAX_TREE_ARITY};

pub const DEFAULT_MAX_ARITY: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Spanning {
    #[default]
    Cosets,
    FullOrbit,
}

/// `dim P(n)` for `n = 1..=N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DimensionTable {
    pub operad_name: String,
    pub dims: BTreeMap<usize, usize>,
}

impl DimensionTable {
    pub fn max_arity(&self) -> usize {
        self.dims.keys().next_back().copied().unwrap_or(0)
    }

    pub fn get(&self, n: usize) -> Option<usize> {
        self.dims.get(&n).copied()
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct Expander {
    pub exec: Exec,
    pub spanning: Spanning,
}

impl Expander {
    pub fn new(exec: Exec) -> Self {
        Expander {
            exec,
            spanning: Spanning::Cosets,
        }
    }

    pub fn with_spanning(mut self, spanning: Spanning) -> Self {
        self.spanning = spanning;
        self
    }

    /// `[R(3), R(4), ..., R(max_n)]`.
    pub fn ideal_tower(&self, p: &Presentation, max_n: usize) -> Result<Vec<Subspace>> {
        if !(3..=MAX_TREE_ARITY).contains(&max_n) {
            return Err(Error::range("ideal arity", max_n, 3, MAX_TREE_ARITY));
        }
        let mut tower = vec![p.relations.clone()];
        for n in 4..=max_n {
            let prev = tower.last().expect("nonempty");
            tower.push(self.next_component(prev, n)?);
        }
        Ok(tower)
    }

    pub fn ideal_component(&self, p: &Presentation, n: usize) -> Result<Subspace> {
        Ok(self.ideal_tower(p, n)?.pop().expect("nonempty"))
    }

    /// `R(n)` from `R(n-1)`.
    pub fn next_component(&self, prev: &Subspace, n: usize) -> Result<Subspace> {
        let target = basis(n)?;
        if prev.ambient_dim() != basis(n - 1)?.len() {
            return Err(Error::DimensionMismatch {
                expected: basis(n - 1)?.len(),
                got: prev.ambient_dim(),
            });
        }
        if prev.dim() == 0 {
            return Ok(Subspace::zero(target.len()));
        }
        let maps = self.column_maps(n)?;
        let rows = prev.rows();
        let candidates: Vec<SparseVec> = self.exec.flat_map(&maps, |map| {
            rows.iter().map(|r| r.permute_columns(map)).collect()
        });
        let mut seen = HashSet::with_capacity(candidates.len());
        let candidates: Vec<SparseVec> = candidates
            .into_iter()
            .filter(|v| seen.insert(v.clone()))
            .collect();
        Ok(Subspace::span_sparse(&candidates, target.len(), self.exec))
    }

    /// Composite column maps `arity n-1 -> arity n`: a graft followed by a
    /// permutation.
    fn column_maps(&self, n: usize) -> Result<Vec<Vec<usize>>> {
        let source = basis(n - 1)?;
        let target = basis(n)?;
        let mu = TreeMonomial::generator();
        let graft_map = |f: &dyn Fn(&TreeMonomial) -> TreeMonomial| -> Vec<usize> {
            source
                .monomials()
                .iter()
                .map(|m| target.index_of(&f(m)).expect("graft lands in the basis"))
                .collect()
        };
        let mut typed: Vec<(Vec<usize>, Vec<Permutation>)> = Vec::new();
        match self.spanning {
            Spanning::Cosets => {
                // r ∘_1 μ, stabiliser fixes 1 and 2: choose σ(1), σ(2).
                typed.push((
                    graft_map(&|m| m.graft(1, &mu).expect("slot 1")),
                    coset_reps(n, &[1, 2]),
                ));
                // μ ∘_1 r = r·x_n, stabiliser fixes n.
                typed.push((
                    graft_map(&|m| mu.graft(1, m).expect("slot 1")),
                    coset_reps(n, &[n]),
                ));
                // μ ∘_2 r = x_1·r, stabiliser fixes 1.
                typed.push((
                    graft_map(&|m| mu.graft(2, m).expect("slot 2")),
                    coset_reps(n, &[1]),
                ));
            }
            Spanning::FullOrbit => {
                let all = all_permutations(n)?;
                for slot in 1..n {
                    typed.push((
                        graft_map(&|m| m.graft(slot, &mu).expect("slot in range")),
                        all.clone(),
                    ));
                }
                for slot in 1..=2 {
                    typed.push((
                        graft_map(&|m| mu.graft(slot, m).expect("slot in range")),
                        all.clone(),
                    ));
                }
            }
        }
        Ok(typed
            .into_iter()
            .flat_map(|(g, perms)| {
                perms
                    .into_iter()
                    .map(|p| {
                        let act = target.action_map(&p);
                        g.iter().map(|&c| act[c]).collect::<Vec<usize>>()
                    })
                    .collect::<Vec<_>>()
            })
            .collect())
    }

    pub fn operad_dim(&self, p: &Presentation, n: usize) -> Result<usize> {
        match n {
            1 | 2 => Ok(free_dim(n)),
            3..=MAX_TREE_ARITY => Ok(free_dim(n) - self.ideal_component(p, n)?.dim()),
            _ => Err(Error::range("operad arity", n, 1, MAX_TREE_ARITY)),
        }
    }

    pub fn dimension_table(&self, p: &Presentation, max_n: usize) -> Result<DimensionTable> {
        if !(1..=MAX_TREE_ARITY).contains(&max_n) {
            return Err(Error::range("operad arity", max_n, 1, MAX_TREE_ARITY));
        }
        let mut dims: BTreeMap<usize, usize> =
            (1..=max_n.min(2)).map(|n| (n, free_dim(n))).collect();
        if max_n >= 3 {
            for (k, s) in self.ideal_tower(p, max_n)?.iter().enumerate() {
                dims.insert(k + 3, free_dim(k + 3) - s.dim());
            }
        }
        Ok(DimensionTable {
            operad_name: p.name.clone(),
            dims,
        })
    }
}

/// One permutation per left coset of the pointwise stabiliser of `fixed`:
/// the lexicographically first `σ` with the prescribed values on `fixed`.
fn coset_reps(n: usize, fixed: &[usize]) -> Vec<Permutation> {
    let mut out = Vec::new();
    let mut chosen = Vec::with_capacity(fixed.len());
    fn rec(n: usize, fixed: &[usize], chosen: &mut Vec<usize>, out: &mut Vec<Permutation>) {
        if chosen.len() == fixed.len() {
            let mut images = vec![0; n];
            for (&pos, &val) in fixed.iter().zip(chosen.iter()) {
                images[pos - 1] = val;
            }
            let mut rest = (1..=n).filter(|v| !chosen.contains(v));
            for slot in images.iter_mut().filter(|x| **x == 0) {
                *slot = rest.next().expect("enough values");
            }
            out.push(Permutation::new(images).expect("bijection"));
            return;
        }
        for v in 1..=n {
            if !chosen.contains(&v) {
                chosen.push(v);
                rec(n, fixed, chosen, out);
                chosen.pop();
            }
        }
    }
    rec(n, fixed, &mut chosen, &mut out);
    out
}

pub fn ideal_component(p: &Presentation, n: usize) -> Result<Subspace> {
    Expander::default().ideal_component(p, n)
}

pub fn operad_dim(p: &Presentation, n: usize) -> Result<usize> {
    Expander::default().operad_dim(p, n)
}

pub fn dimension_table(p: &Presentation, max_n: usize) -> Result<DimensionTable> {
    Expander::default().dimension_table(p, max_n)
}

/// Dimension in arity `n` of the associative operad modulo the given word
/// identities, computed on the `n!`-dimensional space of multilinear words.
///
/// Consequences of `abc = π(abc)` are `u·ABC·v - u·π(ABC)·v` for consecutive
/// nonempty blocks `A, B, C` of a word, with `u`, `v` the surrounding prefix
/// and suffix.
pub fn dual_dim_oracle(identities: &[WordIdentity], n: usize) -> Result<usize> {
    if !(1..=MAX_TREE_ARITY).contains(&n) {
        return Err(Error::range("word arity", n, 1, MAX_TREE_ARITY));
    }
    let words = all_permutations(n)?;
    let total = words.len();
    let mut rows = Vec::new();
    for w in &words {
        let w = w.images();
        for start in 0..n {
            for l1 in 1..=n {
                for l2 in 1..=n {
                    for l3 in 1..=n {
                        let end = start + l1 + l2 + l3;
                        if end > n {
                            continue;
                        }
                        let blocks = [
                            &w[start..start + l1],
                            &w[start + l1..start + l1 + l2],
                            &w[start + l1 + l2..end],
                        ];
                        for id in identities {
                            let mut image: Vec<usize> = w[..start].to_vec();
                            for k in id.word() {
                                image.extend_from_slice(blocks[k - 1]);
                            }
                            image.extend_from_slice(&w[end..]);
                            let (a, b) = (crate::perm::lex_rank(w), crate::perm::lex_rank(&image));
                            if a != b {
                                rows.push(SparseVec::from_pairs(vec![(a, int(1)), (b, int(-1))]));
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(total - Subspace::span_sparse(&rows, total, Exec::Sequential).dim())
}
