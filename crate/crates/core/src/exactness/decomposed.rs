use super::{amalgamate_with, at, pushout_epi_leg, require_malcev, ExactnessError};
use crate::finset::{compose, image_factorization, kernel_pair, CommutativeSquare, Cospan, SetFunction, Span};
use crate::mutant::Mutant;

/// How `g′2` was shown to be monic: through its kernel pair being the
/// diagonal, and directly. The two must agree.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MonoEvidence {
    pub kernel_pair_trivial: bool,
    pub injective: bool,
}

/// The intermediate data of the three-stage pushout of `f: A <- C -> B :g`.
///
/// ```text
///  C --g1->> C' >-g2-> B        C' --f′1->> C'' >-f′2-> A'
///  |f        |f′                |g2         |g′2
///  A ------> A'                 B --------> B'
/// ```
///
/// followed by the pushout of the monic pair `A' <-f′2- C'' -g′2-> B'`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompositionTrace {
    pub input: Span,
    pub g1: SetFunction,
    pub g2: SetFunction,
    pub f1_prime: SetFunction,
    pub f2_prime: SetFunction,
    pub g2_prime: SetFunction,
    /// Stage one `(f, g1)`, stage two `(g2, f′1)`, stage three `(f′2, g′2)`.
    pub squares: [CommutativeSquare; 3],
    pub pasted: CommutativeSquare,
    /// Absent when the check was switched off.
    pub g2_prime_mono: Option<MonoEvidence>,
}

impl DecompositionTrace {
    /// The first mismatch between the stages and the pasted outer square.
    pub fn pasting_defect(&self) -> Option<String> {
        let [one, two, three] = &self.squares;
        let checks: [(&str, bool); 7] = [
            (
                "g = g2∘g1",
                compose(&self.g2, &self.g1).ok().as_ref() == Some(self.input.right()),
            ),
            (
                "stage one span is (f, g1)",
                one.span().left() == self.input.left() && one.span().right() == &self.g1,
            ),
            (
                "stage two span is (g2, f′1)",
                two.span().left() == &self.g2 && two.span().right() == &self.f1_prime,
            ),
            (
                "f′ = f′2∘f′1",
                compose(&self.f2_prime, &self.f1_prime).ok().as_ref() == Some(one.cospan().right()),
            ),
            (
                "stage three span is (f′2, g′2)",
                three.span().left() == &self.f2_prime && three.span().right() == &self.g2_prime,
            ),
            ("g′2 is stage two's right edge", two.cospan().right() == &self.g2_prime),
            ("outer square is the pasting", {
                let h = compose(three.cospan().left(), one.cospan().left()).ok();
                let k = compose(three.cospan().right(), two.cospan().left()).ok();
                h.as_ref() == Some(self.pasted.cospan().left())
                    && k.as_ref() == Some(self.pasted.cospan().right())
                    && self.pasted.span() == &self.input
            }),
        ];
        checks.iter().find(|(_, ok)| !ok).map(|(what, _)| (*what).to_string())
    }
}

pub fn malcev_pushout_decomposed(s: &Span) -> Result<DecompositionTrace, ExactnessError> {
    malcev_pushout_decomposed_with(s, Mutant::None)
}

fn stage<T>(name: &'static str, r: Result<T, ExactnessError>) -> Result<T, ExactnessError> {
    r.map_err(|e| match e {
        ExactnessError::Precondition(p) => ExactnessError::internal(name, p),
        ExactnessError::Internal { stage, detail } => ExactnessError::internal(name, format!("{stage}: {detail}")),
    })
}

pub fn malcev_pushout_decomposed_with(s: &Span, mutant: Mutant) -> Result<DecompositionTrace, ExactnessError> {
    require_malcev(s)?;
    let (f, g) = (s.left(), s.right());

    // stage one: pushout of f against the regular-epi part of g
    let (g1, g2) = image_factorization(g);
    let first_span = Span::new(f.clone(), g1.clone()).map_err(at("stage 1"))?;
    let first = stage("stage 1", pushout_epi_leg(&first_span))?;
    let f_prime = first.k.clone();

    let (f1_prime, f2_prime, second) = if mutant == Mutant::SkipG2MonoCheck {
        // hand (f′, g2) straight to the amalgamation
        let id = SetFunction::identity(f_prime.domain());
        let trivial = Cospan::new(SetFunction::identity(g2.codomain()), g2.clone()).map_err(at("stage 2"))?;
        let square = CommutativeSquare::new(Span::new(g2.clone(), id.clone()).map_err(at("stage 2"))?, trivial)
            .map_err(at("stage 2"))?;
        (id, f_prime.clone(), square)
    } else {
        // stage two: pushout of g2 against the regular-epi part of f′
        let (f1p, f2p) = image_factorization(&f_prime);
        let second_span = Span::new(g2.clone(), f1p.clone()).map_err(at("stage 2"))?;
        let second = stage("stage 2", pushout_epi_leg(&second_span))?;
        (f1p, f2p, second.square)
    };
    let g2_prime = second.cospan().right().clone();

    let g2_prime_mono = if mutant == Mutant::SkipG2MonoCheck {
        None
    } else {
        let kp = kernel_pair(&g2_prime);
        let evidence = MonoEvidence {
            kernel_pair_trivial: kp.left() == kp.right(),
            injective: g2_prime.is_mono(),
        };
        if evidence.kernel_pair_trivial != evidence.injective {
            return Err(ExactnessError::internal(
                "stage 2",
                format!("kernel-pair test and injectivity disagree on g′2 = {g2_prime}"),
            ));
        }
        if !evidence.injective {
            return Err(ExactnessError::internal(
                "stage 2",
                format!("g′2 = {g2_prime} has a non-trivial kernel pair"),
            ));
        }
        Some(evidence)
    };

    // stage three: pushout of the monic pair (f′2, g′2)
    let third_span = Span::new(f2_prime.clone(), g2_prime.clone()).map_err(at("stage 3"))?;
    let third = stage("stage 3", amalgamate_with(&third_span, mutant))?;

    let h = compose(third.cospan().left(), first.square.cospan().left()).map_err(at("pasting"))?;
    let k = compose(third.cospan().right(), second.cospan().left()).map_err(at("pasting"))?;
    let pasted = CommutativeSquare::new(s.clone(), Cospan::new(h, k).map_err(at("pasting"))?).map_err(at("pasting"))?;

    let trace = DecompositionTrace {
        input: s.clone(),
        g1,
        g2,
        f1_prime,
        f2_prime,
        g2_prime,
        squares: [first.square, second, third],
        pasted,
        g2_prime_mono,
    };
    if let Some(defect) = trace.pasting_defect() {
        return Err(ExactnessError::internal("pasting", defect));
    }
    Ok(trace)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactness::malcev_pushout_direct;
    use crate::finset::{canonical_comparison, FiniteSet};
    use crate::relcalc::{tabulate, Relation};

    fn set(names: &[&str]) -> FiniteSet {
        FiniteSet::new(names.iter().copied()).unwrap()
    }

    fn agrees(s: &Span) -> DecompositionTrace {
        let trace = malcev_pushout_decomposed(s).unwrap();
        let direct = malcev_pushout_direct(s).unwrap();
        let m = canonical_comparison(&direct.square, trace.pasted.cospan()).unwrap();
        assert!(m.is_iso(), "comparison {m} is not a bijection");
        trace
    }

    #[test]
    fn matched_pairs() {
        let r = Relation::new(set(&["a1", "a2"]), set(&["b1", "b2"]), [("a1", "b1"), ("a2", "b2")]).unwrap();
        let trace = agrees(&tabulate(&r));
        assert_eq!(trace.pasted.corner().len(), 2);
        assert_eq!(
            trace.g2_prime_mono,
            Some(MonoEvidence {
                kernel_pair_trivial: true,
                injective: true
            })
        );
    }

    #[test]
    fn mono_right_leg_makes_stage_one_trivial() {
        let r = Relation::new(
            set(&["a1", "a2"]),
            set(&["b1", "b2", "b3"]),
            [("a1", "b1"), ("a1", "b3")],
        )
        .unwrap();
        let trace = agrees(&tabulate(&r));
        assert!(trace.g1.is_iso());
        assert!(trace.squares[0].cospan().left().is_iso());
    }

    #[test]
    fn equivalence_span_gives_quotient() {
        let a = set(&["1", "2", "3"]);
        let e = Relation::new(
            a.clone(),
            a,
            [("1", "1"), ("1", "3"), ("3", "1"), ("3", "3"), ("2", "2")],
        )
        .unwrap();
        let trace = agrees(&tabulate(&e));
        assert_eq!(trace.pasted.corner().len(), 2);
    }

    #[test]
    fn skipping_stage_two_is_caught_by_the_amalgamation() {
        let r = Relation::new(set(&["a1"]), set(&["b1", "b2"]), [("a1", "b1"), ("a1", "b2")]).unwrap();
        let err = malcev_pushout_decomposed_with(&tabulate(&r), Mutant::SkipG2MonoCheck).unwrap_err();
        assert!(matches!(err, ExactnessError::Internal { ref stage, .. } if stage == "stage 3"));
    }
}
