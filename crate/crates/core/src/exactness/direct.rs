use super::{at, require_malcev, ExactnessError};
use crate::finset::{compose, coproduct, quotient_by_equivalence, CommutativeSquare, Cospan, SetFunction, Span};
use crate::mutant::Mutant;
use crate::relcalc::{assemble_block, converse, rel_compose, span_to_relation, union, BlockRelation, Relation};

/// A pushout square built by quotienting `A+B`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MalcevPushoutResult {
    pub input: Span,
    /// The relation `R` the input span induces.
    pub relation: Relation,
    /// The equivalence on the tagged coproduct `A+B` that is quotiented.
    pub equivalence: Relation,
    /// `[h, k] : A+B -> D`.
    pub quotient: SetFunction,
    pub h: SetFunction,
    pub k: SetFunction,
    pub square: CommutativeSquare,
}

impl MalcevPushoutResult {
    pub fn corner(&self) -> &crate::finset::FiniteSet {
        self.square.corner()
    }
}

/// The block matrix `(1_A ∪ R°R, R° ; R, 1_B ∪ RR°)` on `A+B`.
pub fn equivalence_matrix(r: &Relation, mutant: Mutant) -> BlockRelation {
    let (a, b) = (r.source(), r.target());
    let ro = converse(r);
    let top_left = match mutant {
        Mutant::DropRoRBlock => Relation::identity(a),
        _ => union(&Relation::identity(a), &rel_compose(&ro, r).expect("R°R: A -|> A")).expect("same shape"),
    };
    let bottom_right = union(&Relation::identity(b), &rel_compose(r, &ro).expect("RR°: B -|> B")).expect("same shape");
    BlockRelation::new([[top_left, ro], [r.clone(), bottom_right]]).expect("blocks have matching shapes")
}

pub fn malcev_pushout_direct(s: &Span) -> Result<MalcevPushoutResult, ExactnessError> {
    malcev_pushout_direct_with(s, Mutant::None)
}

pub fn malcev_pushout_direct_with(s: &Span, mutant: Mutant) -> Result<MalcevPushoutResult, ExactnessError> {
    require_malcev(s)?;
    let relation = span_to_relation(s);
    let equivalence = assemble_block(&equivalence_matrix(&relation, mutant));
    if let Some(w) = equivalence.equivalence_violation() {
        return Err(ExactnessError::internal("equivalence matrix", w));
    }
    let sum = coproduct(s.left_foot(), s.right_foot());
    let quotient = quotient_by_equivalence(&sum.set, &equivalence).map_err(at("quotient of A+B"))?;
    let h = compose(&quotient, &sum.left).map_err(at("left leg"))?;
    let k = compose(&quotient, &sum.right).map_err(at("right leg"))?;
    let cospan = Cospan::new(h.clone(), k.clone()).map_err(at("cospan"))?;
    let square = CommutativeSquare::new(s.clone(), cospan).map_err(at("pushout square"))?;
    Ok(MalcevPushoutResult {
        input: s.clone(),
        relation,
        equivalence,
        quotient,
        h,
        k,
        square,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactness::Precondition;
    use crate::finset::{pullback, FiniteSet};
    use crate::relcalc::tabulate;

    fn set(names: &[&str]) -> FiniteSet {
        FiniteSet::new(names.iter().copied()).unwrap()
    }

    #[test]
    fn empty_relation_gives_coproduct() {
        let r = Relation::empty(&set(&["a"]), &set(&["b"]));
        let out = malcev_pushout_direct(&tabulate(&r)).unwrap();
        assert_eq!(out.corner().elements(), ["l:a", "r:b"]);
        assert!(out.h.is_mono() && out.k.is_mono());
    }

    #[test]
    fn matched_pairs() {
        let (a, b) = (set(&["a1", "a2"]), set(&["b1", "b2"]));
        let r = Relation::new(a, b, [("a1", "b1"), ("a2", "b2")]).unwrap();
        let out = malcev_pushout_direct(&tabulate(&r)).unwrap();
        assert_eq!(out.corner().elements(), ["l:a1", "l:a2"]);
        assert_eq!(out.k.apply("b1"), Some("l:a1"));
        assert_eq!(out.k.apply("b2"), Some("l:a2"));
        let (back, _) = pullback(out.square.cospan());
        assert_eq!(span_to_relation(&back), r);
    }

    #[test]
    fn diagonal_span_gives_isos() {
        let a = set(&["x", "y", "z"]);
        let out = malcev_pushout_direct(&tabulate(&Relation::identity(&a))).unwrap();
        assert!(out.h.is_iso() && out.k.is_iso());
        assert_eq!(out.h, out.k);
    }

    #[test]
    fn rejects_non_malcev_with_quadruple() {
        let (a, b) = (set(&["a1", "a2"]), set(&["b1", "b2"]));
        let r = Relation::new(a, b, [("a1", "b1"), ("a1", "b2"), ("a2", "b1")]).unwrap();
        match malcev_pushout_direct(&tabulate(&r)) {
            Err(ExactnessError::Precondition(Precondition::NotDifunctional(w))) => {
                assert_eq!((w.a_prime.as_str(), w.b_prime.as_str()), ("a2", "b2"));
            }
            other => panic!("expected a Mal'cev violation, got {other:?}"),
        }
    }

    #[test]
    fn dropped_block_breaks_transitivity() {
        let (a, b) = (set(&["a1", "a2"]), set(&["b"]));
        let r = Relation::full(&a, &b);
        let err = malcev_pushout_direct_with(&tabulate(&r), Mutant::DropRoRBlock).unwrap_err();
        assert!(matches!(err, ExactnessError::Internal { ref stage, .. } if stage == "equivalence matrix"));
    }
}
