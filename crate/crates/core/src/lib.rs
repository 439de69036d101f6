//! Kernel for finite category theory at desk scale.
//!
//! Everything here is tabulated or lazily enumerable with explicit bounds:
//! finite categories and functors ([`fincat`]), bimodules between them with
//! quotient composition ([`profunctor`]), multicategories over the list monad
//! ([`multicat`]), strict and weak monoidal categories with strictification
//! and the monoid classifier ([`monoidal`]), Batanin trees with grafting
//! ([`globular`]), and lax functors into profunctors with their total
//! categories ([`groth`]).
//!
//! All values are immutable after construction and every operation is pure;
//! law checks are exhaustive rather than sampled, so validity reports are
//! exact for the data they are given.

pub mod corpus;
pub mod fincat;
pub mod globular;
pub mod groth;
pub mod monoidal;
pub mod multicat;
pub mod profunctor;

mod util;

pub use fincat::{FinCat, Functor, NatTrans};

/// Raised when input data is malformed (indices out of range, shape
/// mismatches) as opposed to well-formed data that violates a law.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{0}")]
pub struct StructuralError(pub String);

impl StructuralError {
    pub fn new(msg: impl Into<String>) -> Self {
        StructuralError(msg.into())
    }
}
