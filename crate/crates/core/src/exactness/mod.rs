//! Pushouts of Mal'cev spans.
//!
//! [`malcev_pushout_direct`] quotients `A+B` by the block equivalence
//! built from `R = g f°`. [`malcev_pushout_decomposed`] reaches the same
//! corner through a regular-epi leg pushout, a second one, and a pushout of
//! two monomorphisms. The special cases used to rebuild coproducts and
//! coequalizers live here too.

mod decomposed;
mod direct;
mod epi_leg;
mod theorem1;
mod union;

pub use decomposed::{malcev_pushout_decomposed, malcev_pushout_decomposed_with, DecompositionTrace, MonoEvidence};
pub use direct::{equivalence_matrix, malcev_pushout_direct, malcev_pushout_direct_with, MalcevPushoutResult};
pub use epi_leg::pushout_epi_leg;
pub use theorem1::{coequalizer_via_pushout, coproduct_via_pushout};
pub use union::{amalgamate, amalgamate_with, subobject_union};

use std::fmt;

use thiserror::Error;

use crate::finset::{FinSetError, SetFunction, Span};
use crate::relcalc::{difunctional_violation, span_to_relation, EquivalenceViolation, MalcevViolation};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Precondition {
    NotJointlyMonic {
        first: String,
        second: String,
    },
    NotDifunctional(MalcevViolation),
    NotEpi {
        leg: &'static str,
        unreached: String,
    },
    NotMono {
        leg: &'static str,
        first: String,
        second: String,
    },
    NotEquivalence(EquivalenceViolation),
    Shape(String),
}

impl fmt::Display for Precondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::NotJointlyMonic { first, second } => {
                write!(
                    f,
                    "span is not jointly monic: apex elements {first} and {second} have the same feet"
                )
            }
            Self::NotDifunctional(w) => write!(f, "span is not Mal'cev: {w}"),
            Self::NotEpi { leg, unreached } => write!(f, "{leg} leg is not surjective: {unreached} is not reached"),
            Self::NotMono { leg, first, second } => {
                write!(
                    f,
                    "{leg} leg is not injective: {first} and {second} have the same image"
                )
            }
            Self::NotEquivalence(w) => write!(f, "{w}"),
            Self::Shape(s) => f.write_str(s),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactnessError {
    #[error("precondition violated: {0}")]
    Precondition(Precondition),
    /// A step the constructions guarantee did not hold. On finite sets this
    /// never happens unless a fault has been switched in.
    #[error("internal invariant failed at {stage}: {detail}")]
    Internal { stage: String, detail: String },
}

impl ExactnessError {
    pub(crate) fn internal(stage: &str, detail: impl fmt::Display) -> Self {
        Self::Internal {
            stage: stage.to_string(),
            detail: detail.to_string(),
        }
    }
}

pub(crate) fn at(stage: &'static str) -> impl Fn(FinSetError) -> ExactnessError {
    move |e| ExactnessError::internal(stage, e)
}

/// Joint monicity, then difunctionality of the induced relation.
pub fn require_malcev(s: &Span) -> Result<(), ExactnessError> {
    if let Some((i, j)) = s.joint_collision() {
        return Err(ExactnessError::Precondition(Precondition::NotJointlyMonic {
            first: s.apex().element(i).to_string(),
            second: s.apex().element(j).to_string(),
        }));
    }
    if let Some(w) = difunctional_violation(&span_to_relation(s)) {
        return Err(ExactnessError::Precondition(Precondition::NotDifunctional(w)));
    }
    Ok(())
}

pub(crate) fn require_mono(f: &SetFunction, leg: &'static str) -> Result<(), ExactnessError> {
    match f.collision() {
        Some((i, j)) => Err(ExactnessError::Precondition(Precondition::NotMono {
            leg,
            first: f.domain().element(i).to_string(),
            second: f.domain().element(j).to_string(),
        })),
        None => Ok(()),
    }
}

pub(crate) fn require_epi(f: &SetFunction, leg: &'static str) -> Result<(), ExactnessError> {
    match f.unreached() {
        Some(j) => Err(ExactnessError::Precondition(Precondition::NotEpi {
            leg,
            unreached: f.codomain().element(j).to_string(),
        })),
        None => Ok(()),
    }
}
