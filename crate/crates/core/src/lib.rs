//! Exact computations with binary quadratic operads.
//!
//! The crate encodes quadratic presentations `P = F(E)/(R)` over the regular
//! `Σ2`-module `E`, computes quadratic duals through a signed scalar product on
//! `F(E)(3)`, expands operadic ideals to get `dim P(n)`, and tests the
//! Poincaré-series functional equation `g_P(g_{P!}(x)) = x` that every Koszul
//! operad satisfies. A separate module checks the corresponding identities
//! (associativity, Lie-admissibility, `G_i`-associativity) on finite
//! dimensional algebras given by structure constants.
//!
//! All arithmetic is exact over the rationals.

pub mod algcheck;
pub mod cli;
pub mod duality;
pub mod error;
pub mod exactla;
pub mod expansion;
pub mod koszul;
pub mod par;
pub mod perm;
pub mod presentations;
pub mod treespace;

pub use error::{Error, Result};
pub use exactla::{Rational, Subspace};
pub use par::Exec;
pub use perm::{GSubgroup, Permutation};
pub use presentations::{Builtin, Presentation};
pub use treespace::{OperadElement, TreeMonomial};
