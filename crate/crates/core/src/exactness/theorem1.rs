use super::{malcev_pushout_direct, ExactnessError, MalcevPushoutResult, Precondition};
use crate::finset::{FiniteSet, Span};
use crate::relcalc::{tabulate, Relation};

/// The pushout of `A <- 0 -> B`, which is the coproduct.
pub fn coproduct_via_pushout(a: &FiniteSet, b: &FiniteSet) -> Result<MalcevPushoutResult, ExactnessError> {
    malcev_pushout_direct(&Span::empty(a, b))
}

/// The pushout of the tabulation of an equivalence relation. Both legs of
/// the result are the coequalizer `A -> A/E`.
pub fn coequalizer_via_pushout(e: &Relation) -> Result<MalcevPushoutResult, ExactnessError> {
    if !e.is_endo() {
        return Err(ExactnessError::Precondition(Precondition::Shape(format!(
            "{} -|> {} is not an endo-relation",
            e.source(),
            e.target()
        ))));
    }
    if let Some(w) = e.equivalence_violation() {
        return Err(ExactnessError::Precondition(Precondition::NotEquivalence(w)));
    }
    let out = malcev_pushout_direct(&tabulate(e))?;
    if out.h != out.k {
        return Err(ExactnessError::internal(
            "coequalizer legs",
            format!("h = {} differs from k = {}", out.h, out.k),
        ));
    }
    Ok(out)
}
