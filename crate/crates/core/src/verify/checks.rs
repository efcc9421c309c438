use super::verdict::*;
use super::VerifyError;
use crate::finset::{
    canonical_comparison, compose, coproduct, kernel_pair, pair_name, pullback, quotient_by_equivalence,
    quotient_by_generators, quotient_from_least, CommutativeSquare, Cospan, FinSetError, FiniteSet, SetFunction, Span,
};
use crate::mutant::Mutant;
use crate::relcalc::{span_to_relation, Relation};

/// The pushout of any span of finite sets: `A+B` modulo the equivalence
/// generated by `l:f(c) ~ r:g(c)`, classes named by their least member.
pub fn canonical_pushout(span: &Span) -> CommutativeSquare {
    canonical_pushout_with(span, Mutant::None).expect("the canonical pushout commutes")
}

pub fn canonical_pushout_with(span: &Span, mutant: Mutant) -> Result<CommutativeSquare, PushoutFailure> {
    let (a, b) = (span.left_foot(), span.right_foot());
    let sum = coproduct(a, b);
    let generators: Vec<(usize, usize)> = (0..span.apex().len())
        .map(|c| {
            (
                sum.left.apply_index(span.left().apply_index(c)),
                sum.right.apply_index(span.right().apply_index(c)),
            )
        })
        .collect();
    let quotient = match mutant {
        Mutant::AsymmetricClosure => directed_quotient(&sum.set, &generators),
        _ => quotient_by_generators(&sum.set, generators),
    };
    let h = compose(&quotient, &sum.left).expect("composable");
    let k = compose(&quotient, &sum.right).expect("composable");
    let cospan = Cospan::new(h, k).expect("common codomain");
    CommutativeSquare::new(span.clone(), cospan).map_err(|e| match e {
        FinSetError::NotCommuting { element, .. } => PushoutFailure::CanonicalDefect { element },
        other => PushoutFailure::NoComparison {
            detail: other.to_string(),
        },
    })
}

/// Each element named by the least element reachable from it along the
/// directed generators (reflexive-transitive, not symmetric).
fn directed_quotient(set: &FiniteSet, edges: &[(usize, usize)]) -> SetFunction {
    let n = set.len();
    let least: Vec<usize> = (0..n)
        .map(|start| {
            let mut seen = vec![false; n];
            let mut stack = vec![start];
            seen[start] = true;
            while let Some(x) = stack.pop() {
                for &(from, to) in edges {
                    if from == x && !seen[to] {
                        seen[to] = true;
                        stack.push(to);
                    }
                }
            }
            seen.iter().position(|&s| s).expect("start is reachable")
        })
        .collect();
    quotient_from_least(set, &least)
}

pub fn is_pushout_square(square: &CommutativeSquare) -> Verdict<PushoutWitness, PushoutFailure> {
    is_pushout_square_with(square, Mutant::None)
}

/// Compares the square's corner with the canonical pushout; a pushout iff
/// the comparison is a bijection.
pub fn is_pushout_square_with(square: &CommutativeSquare, mutant: Mutant) -> Verdict<PushoutWitness, PushoutFailure> {
    let canonical = match canonical_pushout_with(square.span(), mutant) {
        Ok(c) => c,
        Err(f) => return Verdict::Fails(f),
    };
    let comparison = match canonical_comparison(&canonical, square.cospan()) {
        Ok(m) => m,
        Err(e) => return Verdict::Fails(PushoutFailure::NoComparison { detail: e.to_string() }),
    };
    if let Some(d) = comparison.unreached() {
        return Verdict::Fails(PushoutFailure::Unreached {
            element: square.corner().element(d).to_string(),
        });
    }
    if let Some((p, q)) = comparison.collision() {
        return Verdict::Fails(PushoutFailure::Merged {
            first: canonical.corner().element(p).to_string(),
            second: canonical.corner().element(q).to_string(),
            image: square.corner().element(comparison.apply_index(p)).to_string(),
        });
    }
    Verdict::Holds(PushoutWitness { canonical, comparison })
}

/// A pullback iff `c ↦ (f c, g c)` is a bijection onto the pullback of the
/// cospan.
pub fn is_pullback_square(square: &CommutativeSquare) -> Verdict<PullbackWitness, PullbackFailure> {
    let (pb, _) = pullback(square.cospan());
    let span = square.span();
    let pairing = SetFunction::from_rule(span.apex().clone(), pb.apex().clone(), |c| {
        pair_name(
            span.left().apply(c).expect("own element"),
            span.right().apply(c).expect("own element"),
        )
    })
    .expect("a commuting square lands in the pullback");
    if let Some((i, j)) = pairing.collision() {
        return Verdict::Fails(PullbackFailure::Collision {
            first: span.apex().element(i).to_string(),
            second: span.apex().element(j).to_string(),
        });
    }
    if let Some(p) = pairing.unreached() {
        return Verdict::Fails(PullbackFailure::MissingPair {
            a: pb.left_foot().element(pb.left().apply_index(p)).to_string(),
            b: pb.right_foot().element(pb.right().apply_index(p)).to_string(),
        });
    }
    Verdict::Holds(PullbackWitness { pullback: pb, pairing })
}

/// The restriction of a square to the preimages of corner index `d`.
pub fn fiber_square(square: &CommutativeSquare, d: usize) -> CommutativeSquare {
    let (h, k) = (square.cospan().left(), square.cospan().right());
    let diagonal = square.diagonal();
    let a_d = h.domain().subset(|i| h.apply_index(i) == d);
    let b_d = k.domain().subset(|j| k.apply_index(j) == d);
    let c_d = square.apex().subset(|c| diagonal.apply_index(c) == d);
    let point = square.corner().subset(|x| x == d);
    let restrict = |f: &SetFunction, dom: &FiniteSet, cod: &FiniteSet| {
        f.restrict(dom, cod).expect("fibers are closed under the square's maps")
    };
    let span = Span::new(
        restrict(square.span().left(), &c_d, &a_d),
        restrict(square.span().right(), &c_d, &b_d),
    )
    .expect("same apex");
    let cospan = Cospan::new(restrict(h, &a_d, &point), restrict(k, &b_d, &point)).expect("same corner");
    CommutativeSquare::new(span, cospan).expect("restriction of a commuting square")
}

/// Stability under pullback, decided one corner element at a time.
///
/// Pulling back along `x: D' -> D` gives the disjoint union of the fibers
/// over the points `x(d')`, and a coproduct of pushout squares is a pushout,
/// so every pullback is a pushout iff every fiber square is one.
pub fn is_stable_pushout(
    square: &CommutativeSquare,
) -> Result<Verdict<Vec<FiberReport>, StabilityFailure>, VerifyError> {
    if let Verdict::Fails(f) = is_pushout_square(square) {
        return Err(VerifyError::NotAPushout(f));
    }
    Ok(fiberwise(square, Mutant::None))
}

pub(crate) fn fiberwise(square: &CommutativeSquare, mutant: Mutant) -> Verdict<Vec<FiberReport>, StabilityFailure> {
    let mut reports = Vec::with_capacity(square.corner().len());
    for d in 0..square.corner().len() {
        let fiber = fiber_square(square, d);
        let verdict = is_pushout_square_with(&fiber, mutant);
        let report = FiberReport {
            base_element: square.corner().element(d).to_string(),
            fiber_square: fiber,
            fiber_is_pushout: verdict,
        };
        if !report.fiber_is_pushout.holds() {
            return Verdict::Fails(StabilityFailure::Fiber(Box::new(report)));
        }
        reports.push(report);
    }
    Verdict::Holds(reports)
}

pub fn jointly_epic(cospan: &Cospan) -> bool {
    jointly_epic_verdict(cospan).holds()
}

pub fn jointly_epic_verdict(cospan: &Cospan) -> Verdict<CoverWitness, Unreached> {
    let corner = cospan.corner();
    let mut cover: Vec<Option<String>> = vec![None; corner.len()];
    for (leg, tag) in [(cospan.left(), "l:"), (cospan.right(), "r:")] {
        for (x, &d) in leg.table().iter().enumerate() {
            cover[d].get_or_insert_with(|| format!("{tag}{}", leg.domain().element(x)));
        }
    }
    let mut witness = Vec::with_capacity(corner.len());
    for (d, source) in cover.into_iter().enumerate() {
        match source {
            Some(s) => witness.push((corner.element(d).to_string(), s)),
            None => {
                return Verdict::Fails(Unreached {
                    element: corner.element(d).to_string(),
                })
            }
        }
    }
    Verdict::Holds(witness)
}

/// Whether `E` is the kernel pair of its own quotient map.
pub fn effectiveness_check(e: &Relation) -> Result<bool, VerifyError> {
    let q = quotient_by_equivalence(e.source(), e).map_err(|err| match err {
        FinSetError::NotAnEquivalence(w) => VerifyError::NotAnEquivalence(w),
        other => VerifyError::FinSet(other),
    })?;
    Ok(&span_to_relation(&kernel_pair(&q)) == e)
}
