//! Quadratic duality on `F(E)(3)`.
//!
//! The signed scalar product makes distinct basis monomials orthogonal, with
//! `<x_i(x_j x_k), x_i(x_j x_k)> = sgn(ijk)` and
//! `<(x_i x_j)x_k, (x_i x_j)x_k> = -sgn(ijk)`. The dual presentation of `R` is
//! its orthogonal complement; `E^∨ ⊗ sgn` is identified with `E` so the dual
//! lives in the same coordinates.

use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactla::{int, Rational};
use crate::perm::Permutation;
use crate::presentations::{sigma_closure, Builtin, Presentation, ARITY3_DIM};
use crate::treespace::{associator, basis, OperadElement, TreeMonomial};

/// The diagonal of the signed scalar product in `basis(3)` order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignedForm {
    diagonal: Vec<Rational>,
}

impl SignedForm {
    pub fn new() -> Self {
        let b = basis(3).expect("arity 3");
        let diagonal = b
            .monomials()
            .iter()
            .map(|m| {
                let sgn = Permutation::new(m.labels()).expect("basis labels").sign() as i64;
                match m {
                    // x_i (x_j x_k)
                    TreeMonomial::Node(l, _) if matches!(**l, TreeMonomial::Leaf(_)) => int(sgn),
                    // (x_i x_j) x_k
                    _ => int(-sgn),
                }
            })
            .collect();
        SignedForm { diagonal }
    }

    pub fn diagonal(&self) -> &[Rational] {
        &self.diagonal
    }

    pub fn scalar_product(&self, u: &OperadElement, v: &OperadElement) -> Result<Rational> {
        for e in [u, v] {
            if e.arity() != 3 {
                return Err(Error::ArityMismatch {
                    left: 3,
                    right: e.arity(),
                });
            }
        }
        Ok(u.coords().diagonal_dot(&v.coords(), &self.diagonal))
    }
}

impl Default for SignedForm {
    fn default() -> Self {
        SignedForm::new()
    }
}

pub fn scalar_product(u: &OperadElement, v: &OperadElement) -> Result<Rational> {
    SignedForm::new().scalar_product(u, v)
}

/// `P! = P(K, E^∨, R^⊥)`.
pub fn dual_presentation(p: &Presentation) -> Result<Presentation> {
    let relations = p
        .relations
        .orthogonal_complement(SignedForm::new().diagonal())?;
    let name = match p.name.strip_suffix('!') {
        Some(base) => base.to_string(),
        None => format!("{}!", p.name),
    };
    Ok(Presentation { name, relations })
}

/// A multilinear identity `abc = π(abc)` of an associative algebra.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum WordIdentity {
    Acb,
    Bac,
    Cba,
    Bca,
    Cab,
}

impl WordIdentity {
    pub const ALL: [WordIdentity; 5] = [
        WordIdentity::Acb,
        WordIdentity::Bac,
        WordIdentity::Cba,
        WordIdentity::Bca,
        WordIdentity::Cab,
    ];

    /// Positions of `a, b, c` in the right-hand word: `bac` is `[2, 1, 3]`.
    pub fn word(self) -> [usize; 3] {
        match self {
            WordIdentity::Acb => [1, 3, 2],
            WordIdentity::Bac => [2, 1, 3],
            WordIdentity::Cba => [3, 2, 1],
            WordIdentity::Bca => [2, 3, 1],
            WordIdentity::Cab => [3, 1, 2],
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            WordIdentity::Acb => "abc=acb",
            WordIdentity::Bac => "abc=bac",
            WordIdentity::Cba => "abc=cba",
            WordIdentity::Bca => "abc=bca",
            WordIdentity::Cab => "abc=cab",
        }
    }

    /// `(x1x2)x3 - (xa xb)xc` and `x1(x2x3) - xa(xb xc)`.
    pub fn vectors(self) -> [OperadElement; 2] {
        let [a, b, c] = self.word();
        let left = format!("(({a} {b}) {c})");
        let right = format!("({a} ({b} {c}))");
        [
            OperadElement::from_int_terms(&[(1, "((1 2) 3)"), (-1, left.as_str())]),
            OperadElement::from_int_terms(&[(1, "(1 (2 3))"), (-1, right.as_str())]),
        ]
        .map(|e| e.expect("fixed identity vectors"))
    }
}

impl fmt::Display for WordIdentity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Identities satisfied by algebras over the dual of each builtin, on top of
/// associativity.
pub fn expected_dual_identities(b: Builtin) -> Vec<WordIdentity> {
    match b {
        Builtin::Ass => vec![],
        Builtin::Vinb => vec![WordIdentity::Bac],
        Builtin::PreLie => vec![WordIdentity::Acb],
        Builtin::G4Ass => vec![WordIdentity::Cba],
        Builtin::G5Ass => vec![WordIdentity::Bca, WordIdentity::Cab],
        Builtin::LieAdm => vec![WordIdentity::Acb, WordIdentity::Bac],
    }
}

/// The quotient of `Ass` by the given word identities, e.g. `Perm` for
/// `[Acb]`.
pub fn associative_with(name: &str, identities: &[WordIdentity]) -> Presentation {
    let mut gens = vec![associator()];
    for id in identities {
        gens.extend(id.vectors());
    }
    Presentation {
        name: name.to_string(),
        relations: sigma_closure(&gens).expect("arity 3"),
    }
}

/// The `Perm` operad: associative with `abc = acb`.
pub fn perm_operad() -> Presentation {
    associative_with("perm", &[WordIdentity::Acb])
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityCheck {
    pub name: String,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualReport {
    pub builtin: Builtin,
    pub dual: Presentation,
    pub checks: Vec<IdentityCheck>,
    /// Whether the `Σ3`-closure of the expected vectors is exactly the dual
    /// relation module.
    pub closure_matches: bool,
}

impl DualReport {
    pub fn passed(&self) -> bool {
        self.closure_matches && self.checks.iter().all(|c| c.holds)
    }
}

/// Identifies which builtin a presentation is, by its relation module.
pub fn identify_builtin(p: &Presentation) -> Option<Builtin> {
    Builtin::ALL
        .into_iter()
        .find(|b| b.presentation().relations == p.relations)
}

/// Checks that the dual of a builtin is the associative operad with the
/// expected extra identities.
pub fn verify_dual_identities(p: &Presentation) -> Result<DualReport> {
    let builtin = identify_builtin(p).ok_or_else(|| {
        Error::Unsupported(format!(
            "'{}' is not one of the built-in presentations; no expected dual identities",
            p.name
        ))
    })?;
    let dual = dual_presentation(p)?;
    let identities = expected_dual_identities(builtin);
    let mut checks = Vec::new();
    let assoc = associator();
    checks.push(IdentityCheck {
        name: "associativity".into(),
        holds: dual.relations.contains_sparse(&assoc.coords()),
    });
    for id in &identities {
        let [left, right] = id.vectors();
        checks.push(IdentityCheck {
            name: format!("{id} on (x1x2)x3"),
            holds: dual.relations.contains_sparse(&left.coords()),
        });
        checks.push(IdentityCheck {
            name: format!("{id} on x1(x2x3)"),
            holds: dual.relations.contains_sparse(&right.coords()),
        });
    }
    let expected = associative_with("expected", &identities);
    Ok(DualReport {
        builtin,
        closure_matches: expected.relations == dual.relations,
        dual,
        checks,
    })
}

/// Whether every pair of the given vectors is orthogonal under the form.
pub fn all_orthogonal(us: &[OperadElement], vs: &[OperadElement]) -> Result<bool> {
    let form = SignedForm::new();
    for u in us {
        for v in vs {
            if !form.scalar_product(u, v)?.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

pub(crate) fn complement_dim_check(p: &Presentation) -> Result<()> {
    let d = dual_presentation(p)?;
    if p.relations.dim() + d.relations.dim() != ARITY3_DIM {
        return Err(Error::Inconsistency(format!(
            "dim R + dim R^⊥ = {} + {} for '{}'",
            p.relations.dim(),
            d.relations.dim(),
            p.name
        )));
    }
    Ok(())
}
