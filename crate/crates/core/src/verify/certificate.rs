use super::checks::{fiberwise, is_pullback_square, is_pushout_square_with, jointly_epic_verdict};
use super::verdict::*;
use crate::finset::{commutation_defect, compose, CommutativeSquare, Cospan, FinSetError, SetFunction, Span};
use crate::mutant::Mutant;

/// The four properties a diexact pushout square must have, plus joint
/// epicity of its legs, each with a witness or a counterexample.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PushoutCertificate {
    pub span: Span,
    pub cospan: Cospan,
    /// Fails with the first apex element where `h∘f` and `k∘g` differ.
    pub commutes: Verdict<(), String>,
    pub is_pushout: Verdict<PushoutWitness, PushoutFailure>,
    pub is_pullback: Verdict<PullbackWitness, PullbackFailure>,
    pub is_stable: Verdict<Vec<FiberReport>, StabilityFailure>,
    pub jointly_epic: Verdict<CoverWitness, Unreached>,
}

pub fn certify(span: &Span, cospan: &Cospan) -> Result<PushoutCertificate, FinSetError> {
    certify_with(span, cospan, Mutant::None)
}

pub fn certify_with(span: &Span, cospan: &Cospan, mutant: Mutant) -> Result<PushoutCertificate, FinSetError> {
    let jointly_epic = jointly_epic_verdict(cospan);
    let defect = commutation_defect(span, cospan)?;
    let (commutes, is_pushout, is_pullback, is_stable) = match defect {
        Some(c) => {
            let element = span.apex().element(c).to_string();
            (
                Verdict::Fails(element.clone()),
                Verdict::Fails(PushoutFailure::NotCommuting {
                    element: element.clone(),
                }),
                Verdict::Fails(PullbackFailure::NotCommuting {
                    element: element.clone(),
                }),
                Verdict::Fails(StabilityFailure::NotAPushout(PushoutFailure::NotCommuting { element })),
            )
        }
        None => {
            let square = CommutativeSquare::new(span.clone(), cospan.clone())?;
            let is_pushout = is_pushout_square_with(&square, mutant);
            let is_stable = match is_pushout.failure() {
                Some(f) => Verdict::Fails(StabilityFailure::NotAPushout(f.clone())),
                None => fiberwise(&square, mutant),
            };
            (Verdict::Holds(()), is_pushout, is_pullback_square(&square), is_stable)
        }
    };
    Ok(PushoutCertificate {
        span: span.clone(),
        cospan: cospan.clone(),
        commutes,
        is_pushout,
        is_pullback,
        is_stable,
        jointly_epic,
    })
}

impl PushoutCertificate {
    pub fn all_hold(&self) -> bool {
        self.commutes.holds()
            && self.is_pushout.holds()
            && self.is_pullback.holds()
            && self.is_stable.holds()
            && self.jointly_epic.holds()
    }

    /// The first verdict that failed, with its counterexample.
    pub fn first_failure(&self) -> Option<String> {
        if let Some(e) = self.commutes.failure() {
            return Some(format!("COMMUTES: square does not commute at {e}"));
        }
        if let Some(f) = self.is_pushout.failure() {
            return Some(format!("PUSHOUT: {f}"));
        }
        if let Some(f) = self.is_pullback.failure() {
            return Some(format!("PULLBACK: {f}"));
        }
        if let Some(f) = self.is_stable.failure() {
            return Some(format!("STABILITY: {f}"));
        }
        self.jointly_epic.failure().map(|u| format!("JOINT-EPI: {u}"))
    }

    /// Checks every verdict against its stored witness or counterexample,
    /// using only evaluation of the stored maps.
    pub fn recheck(&self) -> Result<(), String> {
        let (f, g) = (self.span.left(), self.span.right());
        let (h, k) = (self.cospan.left(), self.cospan.right());
        let hf = compose(h, f).map_err(|e| e.to_string())?;
        let kg = compose(k, g).map_err(|e| e.to_string())?;

        match &self.commutes {
            Verdict::Holds(()) => ensure(hf == kg, "commutes, but h∘f differs from k∘g")?,
            Verdict::Fails(e) => {
                let c = self.span.apex().index_of(e).ok_or("commutation witness not in apex")?;
                ensure(hf.apply_index(c) != kg.apply_index(c), "commutation witness commutes")?;
            }
        }

        match &self.is_pushout {
            Verdict::Holds(w) => {
                ensure(w.canonical.span() == &self.span, "canonical pushout is of another span")?;
                ensure(w.comparison.is_iso(), "comparison is not a bijection")?;
                let via = w.canonical.cospan().then(&w.comparison).map_err(|e| e.to_string())?;
                ensure(
                    via == self.cospan,
                    "comparison does not carry the canonical legs to h and k",
                )?;
            }
            Verdict::Fails(PushoutFailure::Unreached { element }) => {
                let d = self
                    .cospan
                    .corner()
                    .index_of(element)
                    .ok_or("unreached witness not in corner")?;
                ensure(!reaches(h, d) && !reaches(k, d), "unreached witness is reached")?;
            }
            Verdict::Fails(PushoutFailure::Merged { first, second, image }) => {
                ensure(
                    tagged_image(&self.cospan, first).as_deref() == Some(image.as_str())
                        && tagged_image(&self.cospan, second).as_deref() == Some(image.as_str()),
                    "merged witnesses do not share their image",
                )?;
            }
            Verdict::Fails(PushoutFailure::NotCommuting { .. }) => ensure(
                !self.commutes.holds(),
                "pushout refuted by commutation, but the square commutes",
            )?,
            Verdict::Fails(_) => {}
        }

        match &self.is_pullback {
            Verdict::Holds(w) => {
                let (p, q) = (w.pullback.left(), w.pullback.right());
                ensure(w.pairing.is_iso(), "pairing is not a bijection")?;
                ensure(
                    compose(p, &w.pairing).ok().as_ref() == Some(f) && compose(q, &w.pairing).ok().as_ref() == Some(g),
                    "pairing does not commute with the legs",
                )?;
                ensure(
                    (0..w.pullback.apex().len())
                        .all(|x| h.apply_index(p.apply_index(x)) == k.apply_index(q.apply_index(x))),
                    "pullback contains a pair not over a common point",
                )?;
                let expected: usize = (0..self.cospan.corner().len())
                    .map(|d| h.preimage(d).count() * k.preimage(d).count())
                    .sum();
                ensure(w.pullback.apex().len() == expected, "pullback is missing pairs")?;
            }
            Verdict::Fails(PullbackFailure::MissingPair { a, b }) => {
                let i = h.domain().index_of(a).ok_or("missing pair: unknown a")?;
                let j = k.domain().index_of(b).ok_or("missing pair: unknown b")?;
                ensure(
                    h.apply_index(i) == k.apply_index(j),
                    "missing pair does not lie over a common point",
                )?;
                ensure(
                    (0..self.span.apex().len()).all(|c| (f.apply_index(c), g.apply_index(c)) != (i, j)),
                    "missing pair is attained",
                )?;
            }
            Verdict::Fails(PullbackFailure::Collision { first, second }) => {
                let (a, b) = (self.span.apex().index_of(first), self.span.apex().index_of(second));
                let (a, b) = a.zip(b).ok_or("collision witnesses not in apex")?;
                ensure(
                    a != b && f.apply_index(a) == f.apply_index(b) && g.apply_index(a) == g.apply_index(b),
                    "collision witnesses are separated by the legs",
                )?;
            }
            Verdict::Fails(PullbackFailure::NotCommuting { .. }) => ensure(
                !self.commutes.holds(),
                "pullback refuted by commutation, but the square commutes",
            )?,
        }

        match &self.is_stable {
            Verdict::Holds(fibers) => {
                ensure(fibers.len() == self.cospan.corner().len(), "a fiber is missing")?;
                for (d, report) in fibers.iter().enumerate() {
                    ensure(
                        report.base_element == self.cospan.corner().element(d),
                        "fibers out of order",
                    )?;
                    let apex = report.fiber_square.apex().len();
                    ensure(
                        apex == (0..self.span.apex().len())
                            .filter(|&c| h.apply_index(f.apply_index(c)) == d)
                            .count(),
                        "fiber apex is not the preimage of its base element",
                    )?;
                    match &report.fiber_is_pushout {
                        Verdict::Holds(w) => ensure(w.comparison.is_iso(), "fiber comparison is not a bijection")?,
                        Verdict::Fails(_) => return Err("a stable square has a failing fiber".into()),
                    }
                }
            }
            Verdict::Fails(StabilityFailure::Fiber(report)) => {
                ensure(!report.fiber_is_pushout.holds(), "failing fiber is a pushout")?;
            }
            Verdict::Fails(StabilityFailure::NotAPushout(_)) => {
                ensure(
                    !self.is_pushout.holds(),
                    "stability refuted by a pushout failure that did not happen",
                )?;
            }
        }

        match &self.jointly_epic {
            Verdict::Holds(cover) => {
                ensure(
                    cover.len() == self.cospan.corner().len(),
                    "cover misses a corner element",
                )?;
                for ((d, source), expected) in cover.iter().zip(self.cospan.corner().iter()) {
                    ensure(d == expected, "cover out of order")?;
                    ensure(
                        tagged_image(&self.cospan, source).as_deref() == Some(d.as_str()),
                        "cover entry is wrong",
                    )?;
                }
            }
            Verdict::Fails(Unreached { element }) => {
                let d = self
                    .cospan
                    .corner()
                    .index_of(element)
                    .ok_or("unreached witness not in corner")?;
                ensure(!reaches(h, d) && !reaches(k, d), "unreached witness is reached")?;
            }
        }
        Ok(())
    }
}

fn ensure(ok: bool, message: &str) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(message.to_string())
    }
}

fn reaches(f: &SetFunction, d: usize) -> bool {
    f.table().contains(&d)
}

/// The corner image of `l:a` under `h` or of `r:b` under `k`.
fn tagged_image(cospan: &Cospan, tagged: &str) -> Option<String> {
    let (leg, name) = match tagged.split_at_checked(2)? {
        ("l:", a) => (cospan.left(), a),
        ("r:", b) => (cospan.right(), b),
        _ => return None,
    };
    leg.apply(name).map(str::to_string)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactness::malcev_pushout_direct;
    use crate::finset::FiniteSet;
    use crate::relcalc::{tabulate, Relation};

    fn set(names: &[&str]) -> FiniteSet {
        FiniteSet::new(names.iter().copied()).unwrap()
    }

    #[test]
    fn malcev_certificate_holds_and_rechecks() {
        let r = Relation::new(set(&["a1", "a2"]), set(&["b1", "b2"]), [("a1", "b1"), ("a2", "b2")]).unwrap();
        let out = malcev_pushout_direct(&tabulate(&r)).unwrap();
        let cert = certify(&out.input, out.square.cospan()).unwrap();
        assert!(cert.all_hold(), "{:?}", cert.first_failure());
        cert.recheck().unwrap();
    }

    #[test]
    fn failing_certificates_recheck() {
        let r = Relation::new(
            set(&["a1", "a2"]),
            set(&["b1", "b2"]),
            [("a1", "b1"), ("a1", "b2"), ("a2", "b1")],
        )
        .unwrap();
        let s = tabulate(&r);
        let sq = super::super::canonical_pushout(&s);
        let cert = certify(&s, sq.cospan()).unwrap();
        assert!(cert.is_pushout.holds() && !cert.is_pullback.holds());
        cert.recheck().unwrap();

        // swap the legs' images to break commutation
        let d = set(&["x", "y"]);
        let h = SetFunction::from_rule(s.left_foot().clone(), d.clone(), |_| "x").unwrap();
        let k = SetFunction::from_rule(s.right_foot().clone(), d, |_| "y").unwrap();
        let cert = certify(&s, &Cospan::new(h, k).unwrap()).unwrap();
        assert_eq!(cert.commutes, Verdict::Fails("(a1,b1)".into()));
        assert!(cert.jointly_epic.holds());
        cert.recheck().unwrap();
    }

    #[test]
    fn tampered_witness_is_caught() {
        let r = Relation::new(set(&["a1"]), set(&["b1", "b2"]), [("a1", "b1")]).unwrap();
        let out = malcev_pushout_direct(&tabulate(&r)).unwrap();
        let mut cert = certify(&out.input, out.square.cospan()).unwrap();
        if let Verdict::Holds(cover) = &mut cert.jointly_epic {
            cover.swap(0, 1);
        }
        assert!(cert.recheck().is_err());
    }
}
