//! Braid monodromy workbench.
//!
//! Exact arithmetic in the braid group `B_m` (Garside normal forms), positive
//! factorizations of the full twist `Δ²` under Hurwitz moves, braid monodromy
//! of real line arrangements, regeneration rules for branch curves, and van
//! Kampen presentations of curve complements.

pub mod arrangement;
pub mod braid;
pub mod cli;
pub mod error;
pub mod factorization;
pub mod garside;
pub mod perm;
pub mod regeneration;
pub mod search;
pub mod snf;
pub mod vankampen;
mod text;

pub use braid::{delta, full_twist, BraidWord, HalfTwist};
pub use error::{Error, ParseError, Result};
pub use garside::NormalForm;
pub use perm::Permutation;
pub use factorization::{CanonicalKey, FactorCore, FactorKind, Factorization, HmInvariants, HurwitzMove, MoveKind, StructuredFactor};
pub use search::{hurwitz_equivalent, orbit_enumerate, OrbitReport, Verdict, Witness};
