//! Deciding whether a square of finite sets is a pushout, a pullback, and
//! stable under pullback, with element-level witnesses either way.
//!
//! The fast checks compare against canonical constructions. [`oracle`]
//! holds the slow ones, quantifying over test cospans and pullback maps
//! directly, which the fast ones are cross-validated against.

mod certificate;
mod checks;
pub mod corpus;
pub mod oracle;
mod suites;
mod verdict;

pub use certificate::{certify, certify_with, PushoutCertificate};
pub use checks::{
    canonical_pushout, canonical_pushout_with, effectiveness_check, fiber_square, is_pullback_square,
    is_pushout_square, is_pushout_square_with, is_stable_pushout, jointly_epic, jointly_epic_verdict,
};
pub use suites::{
    coproduct_suite, decomposition_suite, diexact_suite, e_structure_suite, equivalence_suite, relation_corpus,
    relation_label, theorem_suites, SuiteConfig, SuiteFailure, SuiteReport, TheoremReport, EXHAUSTIVE_LIMIT,
    PARTITION_LIMIT,
};
pub use verdict::{
    CoverWitness, FiberReport, PullbackFailure, PullbackWitness, PushoutFailure, PushoutWitness, StabilityFailure,
    Unreached, Verdict,
};

use thiserror::Error;

use crate::finset::FinSetError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("not a pushout: {0}")]
    NotAPushout(PushoutFailure),
    #[error("not an equivalence relation: {0}")]
    NotAnEquivalence(String),
    #[error(transparent)]
    FinSet(#[from] FinSetError),
}
