//! Finite sets, total functions between them, and the (co)limits the rest of
//! the crate is built from.

mod diagram;
mod function;
mod limits;
mod set;
pub mod union_find;

pub use diagram::{commutation_defect, CommutativeSquare, Cospan, Span};
pub use function::{compose, SetFunction};
pub use limits::{
    canonical_comparison, coproduct, image_factorization, kernel_pair, left_tag, pair_name, pullback,
    quotient_by_equivalence, quotient_by_generators, right_tag, Coproduct,
};
pub(crate) use limits::{pair_span, quotient_from_least};
pub use set::FiniteSet;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FinSetError {
    #[error("duplicate element `{0}`")]
    DuplicateElement(String),
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("function is not defined on `{0}`")]
    NotTotal(String),
    #[error("function assigns `{0}` more than once")]
    MultiplyDefined(String),
    #[error("function table has {found} entries, domain has {expected}")]
    TableLength { expected: usize, found: usize },
    #[error("function value index {0} is outside the codomain")]
    IndexOutOfRange(usize),
    #[error("cannot compose: codomain {left} differs from domain {right}")]
    CompositionMismatch { left: String, right: String },
    #[error("{0}")]
    ShapeMismatch(String),
    #[error("square does not commute at `{element}`: {via_left} vs {via_right}")]
    NotCommuting {
        element: String,
        via_left: String,
        via_right: String,
    },
    #[error("candidate cospan does not commute at `{0}`")]
    CandidateNotCommuting(String),
    #[error("no comparison map: corner element `{element}` {reason}")]
    NoComparison { element: String, reason: String },
    #[error("not an equivalence relation: {0}")]
    NotAnEquivalence(String),
}
