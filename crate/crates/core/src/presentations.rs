//! Quadratic presentations `P(K, E, R)`: a relation `Σ3`-submodule `R` of the
//! 12-dimensional space `F(E)(3)`, with `E` the regular `Σ2`-module.

use std::fmt;
use std::str::FromStr;

use num_traits::Signed;

use crate::error::{Error, Result};
use crate::exactla::{parse_rational, Rational, SparseVec, Subspace};
use crate::par::Exec;
use crate::perm::{all_permutations, GSubgroup};
use crate::treespace::{basis, parse_monomial, OperadElement, TreeMonomial};

/// `dim F(E)(3)`.
pub const ARITY3_DIM: usize = 12;

/// The six built-in operads, one per subgroup `G_i` of `Σ3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Builtin {
    Ass,
    Vinb,
    PreLie,
    G4Ass,
    G5Ass,
    LieAdm,
}

impl Builtin {
    pub const ALL: [Builtin; 6] = [
        Builtin::Ass,
        Builtin::Vinb,
        Builtin::PreLie,
        Builtin::G4Ass,
        Builtin::G5Ass,
        Builtin::LieAdm,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Builtin::Ass => "ass",
            Builtin::Vinb => "vinb",
            Builtin::PreLie => "prelie",
            Builtin::G4Ass => "g4ass",
            Builtin::G5Ass => "g5ass",
            Builtin::LieAdm => "lieadm",
        }
    }

    pub fn subgroup(self) -> GSubgroup {
        match self {
            Builtin::Ass => GSubgroup::G1,
            Builtin::Vinb => GSubgroup::G2,
            Builtin::PreLie => GSubgroup::G3,
            Builtin::G4Ass => GSubgroup::G4,
            Builtin::G5Ass => GSubgroup::G5,
            Builtin::LieAdm => GSubgroup::G6,
        }
    }

    /// The generating relation, as traditionally written for each class.
    pub fn generator(self) -> OperadElement {
        let terms: &[(i64, &str)] = match self {
            Builtin::Ass => &[(1, "(1 (2 3))"), (-1, "((1 2) 3)")],
            Builtin::Vinb => &[
                (1, "(1 (2 3))"),
                (-1, "(2 (1 3))"),
                (-1, "((1 2) 3)"),
                (1, "((2 1) 3)"),
            ],
            Builtin::PreLie => &[
                (1, "(1 (2 3))"),
                (-1, "(1 (3 2))"),
                (-1, "((1 2) 3)"),
                (1, "((1 3) 2)"),
            ],
            Builtin::G4Ass => &[
                (1, "(1 (2 3))"),
                (-1, "(3 (2 1))"),
                (-1, "((1 2) 3)"),
                (1, "((3 2) 1)"),
            ],
            Builtin::G5Ass => &[
                (1, "(1 (2 3))"),
                (1, "(2 (3 1))"),
                (1, "(3 (1 2))"),
                (-1, "((1 2) 3)"),
                (-1, "((2 3) 1)"),
                (-1, "((3 1) 2)"),
            ],
            Builtin::LieAdm => &[
                (1, "(1 (2 3))"),
                (1, "(2 (3 1))"),
                (1, "(3 (1 2))"),
                (-1, "(2 (1 3))"),
                (-1, "(3 (2 1))"),
                (-1, "(1 (3 2))"),
                (-1, "((1 2) 3)"),
                (-1, "((2 3) 1)"),
                (-1, "((3 1) 2)"),
                (1, "((2 1) 3)"),
                (1, "((3 2) 1)"),
                (1, "((1 3) 2)"),
            ],
        };
        OperadElement::from_int_terms(terms).expect("builtin relations are well formed")
    }

    pub fn presentation(self) -> Presentation {
        let relations = sigma_closure(&[self.generator()]).expect("arity 3 generators");
        Presentation {
            name: self.name().to_string(),
            relations,
        }
    }
}

impl FromStr for Builtin {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Builtin::ALL
            .into_iter()
            .find(|b| b.name() == s)
            .ok_or_else(|| Error::InvalidInput(format!("unknown builtin operad '{s}'")))
    }
}

impl fmt::Display for Builtin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

pub fn builtin(name: &str) -> Result<Presentation> {
    Ok(name.parse::<Builtin>()?.presentation())
}

/// A binary quadratic operad given by its relations in arity 3.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    pub name: String,
    pub relations: Subspace,
}

impl Presentation {
    /// Checks the ambient dimension and `Σ3`-stability of `relations`.
    pub fn new(name: impl Into<String>, relations: Subspace) -> Result<Self> {
        if relations.ambient_dim() != ARITY3_DIM {
            return Err(Error::DimensionMismatch {
                expected: ARITY3_DIM,
                got: relations.ambient_dim(),
            });
        }
        let p = Presentation {
            name: name.into(),
            relations,
        };
        if !p.is_sigma_stable() {
            return Err(Error::InvalidInput(format!(
                "relations of '{}' are not a Σ3-submodule",
                p.name
            )));
        }
        Ok(p)
    }

    /// The free (magmatic) operad.
    pub fn free() -> Self {
        Presentation {
            name: "free".into(),
            relations: Subspace::zero(ARITY3_DIM),
        }
    }

    pub fn from_generators(name: impl Into<String>, generators: &[OperadElement]) -> Result<Self> {
        Ok(Presentation {
            name: name.into(),
            relations: sigma_closure(generators)?,
        })
    }

    pub fn is_sigma_stable(&self) -> bool {
        is_sigma_stable(&self.relations, 3)
    }
}

/// Whether a subspace of `F(E)(n)` coordinates is stable under `Σn`.
pub fn is_sigma_stable(s: &Subspace, n: usize) -> bool {
    let Ok(b) = basis(n) else {
        return false;
    };
    b.permutations().iter().all(|p| {
        let map = b.action_map(p);
        s.rows()
            .iter()
            .all(|r| s.contains_sparse(&r.permute_columns(map)))
    })
}

/// Span of all `σ·g`, `σ ∈ Σ3`.
pub fn sigma_closure(generators: &[OperadElement]) -> Result<Subspace> {
    let perms = all_permutations(3)?;
    let mut images: Vec<SparseVec> = Vec::with_capacity(6 * generators.len());
    for g in generators {
        if g.arity() != 3 {
            return Err(Error::ArityMismatch {
                left: 3,
                right: g.arity(),
            });
        }
        for p in &perms {
            images.push(g.act(p)?.coords());
        }
    }
    Ok(Subspace::span_sparse(&images, ARITY3_DIM, Exec::Sequential))
}

/// Result of reading a presentation file.
#[derive(Debug, Clone)]
pub struct ParsedPresentation {
    pub presentation: Presentation,
    /// Relation vectors as written, in file order.
    pub generators: Vec<OperadElement>,
    /// Dimension of the span of `generators` before `Σ3`-closure.
    pub generator_span_dim: usize,
    pub warnings: Vec<String>,
}

impl ParsedPresentation {
    /// Whether the closure added relations the file did not span.
    pub fn closure_applied(&self) -> bool {
        self.presentation.relations.dim() > self.generator_span_dim
    }
}

/// Parses the line-oriented presentation format:
///
/// ```text
/// # comment
/// relation: 1 ((1 2) 3) - 1 (1 (2 3))
/// ```
///
/// Each relation is a `±`-separated list of `coeff monomial` terms over the
/// labels `{1,2,3}`. An optional `generator: regular` line is accepted; other
/// generator modules are rejected.
pub fn parse_presentation(text: &str, name: &str) -> Result<ParsedPresentation> {
    let mut generators = Vec::new();
    let mut warnings = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        let content = raw.split('#').next().unwrap_or("");
        if content.trim().is_empty() {
            continue;
        }
        let lead = content.len() - content.trim_start().len();
        let body = content.trim_start();
        if let Some(rest) = body.strip_prefix("relation:") {
            let offset = lead + "relation:".len();
            let element = parse_relation(rest, offset, line)?;
            if element.is_zero() {
                warnings.push(format!("line {line}: relation is zero and was ignored"));
            } else {
                generators.push(element);
            }
        } else if let Some(rest) = body.strip_prefix("generator:") {
            match rest.trim() {
                "regular" => {}
                other => {
                    return Err(Error::InvalidInput(format!(
                        "line {line}: generator module '{other}' is not supported; only the regular Σ2-module is"
                    )))
                }
            }
        } else {
            return Err(Error::Syntax {
                line,
                column: lead + 1,
                message: "expected 'relation:' or a comment".into(),
            });
        }
    }
    let generator_span_dim = Subspace::span_sparse(
        &generators.iter().map(|g| g.coords()).collect::<Vec<_>>(),
        ARITY3_DIM,
        Exec::Sequential,
    )
    .dim();
    let presentation = Presentation::from_generators(name, &generators)?;
    Ok(ParsedPresentation {
        presentation,
        generators,
        generator_span_dim,
        warnings,
    })
}

/// Parses `[sign] coeff monomial ((+|-) coeff monomial)*`; `offset` is the
/// column of `text[0]` within its line (0-based).
fn parse_relation(text: &str, offset: usize, line: usize) -> Result<OperadElement> {
    let s = text.as_bytes();
    let err = |pos: usize, message: &str| Error::Syntax {
        line,
        column: offset + pos + 1,
        message: message.to_string(),
    };
    let skip_ws = |mut p: usize| {
        while p < s.len() && s[p].is_ascii_whitespace() {
            p += 1;
        }
        p
    };
    let mut terms: Vec<(Rational, TreeMonomial)> = Vec::new();
    let mut pos = skip_ws(0);
    if pos == s.len() {
        return Err(err(pos, "empty relation"));
    }
    let mut first = true;
    while pos < s.len() {
        let mut negative = false;
        match s[pos] {
            b'+' | b'-' => {
                negative = s[pos] == b'-';
                pos = skip_ws(pos + 1);
            }
            _ if !first => return Err(err(pos, "expected '+' or '-' between terms")),
            _ => {}
        }
        first = false;
        let start = pos;
        while pos < s.len() && (s[pos].is_ascii_digit() || s[pos] == b'/') {
            pos += 1;
        }
        let coeff = parse_rational(&text[start..pos])
            .ok_or_else(|| err(start, "expected a coefficient (integer or p/q)"))?;
        if pos >= s.len() || s[pos] != b' ' {
            return Err(err(
                pos,
                "expected a space between coefficient and monomial",
            ));
        }
        let mstart = skip_ws(pos);
        let (m, end) = parse_monomial(s, mstart, line).map_err(|e| match e {
            Error::Syntax {
                line,
                column,
                message,
            } => Error::Syntax {
                line,
                column: column + offset,
                message,
            },
            other => other,
        })?;
        if m.arity() != 3 {
            return Err(Error::Labels {
                line,
                message: format!("monomial {m} must use exactly the labels 1, 2, 3"),
            });
        }
        m.check_labels()
            .map_err(|message| Error::Labels { line, message })?;
        terms.push((if negative { -coeff } else { coeff }, m));
        pos = skip_ws(end);
    }
    OperadElement::from_terms(terms)
}

/// `Σ_k c_k·m_k` rendered in the file grammar (always `1`-prefixed terms).
pub fn format_relation(e: &OperadElement) -> String {
    let mut out = String::new();
    for (k, (c, m)) in e.terms().into_iter().enumerate() {
        let negative = c.is_negative();
        let abs = if negative { -c } else { c };
        match (k, negative) {
            (0, false) => out.push_str(&format!("{abs} {m}")),
            (0, true) => out.push_str(&format!("-{abs} {m}")),
            (_, false) => out.push_str(&format!(" + {abs} {m}")),
            (_, true) => out.push_str(&format!(" - {abs} {m}")),
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}
