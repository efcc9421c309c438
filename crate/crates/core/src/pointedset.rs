//! Finite pointed sets. Mal'cev pushouts are connected colimits, so they are
//! computed on the underlying sets and the basepoint is carried along.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::exactness::{malcev_pushout_direct, ExactnessError, MalcevPushoutResult};
use crate::finset::{pair_name, FinSetError, FiniteSet, SetFunction, Span};
use crate::mutant::Mutant;
use crate::relcalc::{all_relations, is_difunctional, tabulate, Relation};
use crate::verify::oracle::all_functions;
use crate::verify::{canonical_pushout, certify_with, PushoutCertificate, SuiteReport, Verdict};

/// The basepoint name used by the enumerations.
pub const BASEPOINT: &str = "*";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PointedError {
    #[error("basepoint {basepoint} is not an element of {carrier}")]
    MissingBasepoint { basepoint: String, carrier: String },
    #[error("{from} is the basepoint but is sent to {to}, not to the basepoint {expected}")]
    NotPointed { from: String, to: String, expected: String },
    #[error("carrier and underlying map disagree: {0}")]
    Shape(String),
    #[error(transparent)]
    Exactness(#[from] ExactnessError),
    #[error(transparent)]
    FinSet(#[from] FinSetError),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PointedSet {
    carrier: FiniteSet,
    basepoint: usize,
}

impl PointedSet {
    pub fn new(carrier: FiniteSet, basepoint: &str) -> Result<Self, PointedError> {
        match carrier.index_of(basepoint) {
            Some(basepoint) => Ok(Self { carrier, basepoint }),
            None => Err(PointedError::MissingBasepoint {
                basepoint: basepoint.to_string(),
                carrier: carrier.to_string(),
            }),
        }
    }

    /// `{*}`.
    pub fn zero() -> Self {
        Self::standard("x", 1)
    }

    /// `{*, prefix1, ..., prefix(n-1)}` pointed at `*`.
    pub fn standard(prefix: &str, n: usize) -> Self {
        assert!(n >= 1, "a pointed set is nonempty");
        let others = FiniteSet::numbered(prefix, n - 1);
        let carrier = FiniteSet::new(std::iter::once(BASEPOINT).chain(others.iter())).expect("distinct names");
        Self::new(carrier, BASEPOINT).expect("contains the basepoint")
    }

    pub fn carrier(&self) -> &FiniteSet {
        &self.carrier
    }

    pub fn basepoint(&self) -> &str {
        self.carrier.element(self.basepoint)
    }

    pub fn basepoint_index(&self) -> usize {
        self.basepoint
    }

    pub fn len(&self) -> usize {
        self.carrier.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

impl fmt::Display for PointedSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at {}", self.carrier, self.basepoint())
    }
}

/// A function preserving basepoints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointedMap {
    domain: PointedSet,
    codomain: PointedSet,
    underlying: SetFunction,
}

impl PointedMap {
    pub fn new(domain: PointedSet, codomain: PointedSet, underlying: SetFunction) -> Result<Self, PointedError> {
        if underlying.domain() != domain.carrier() || underlying.codomain() != codomain.carrier() {
            return Err(PointedError::Shape(format!(
                "{underlying} is not a map {} -> {}",
                domain.carrier(),
                codomain.carrier()
            )));
        }
        let image = underlying.apply_index(domain.basepoint_index());
        if image != codomain.basepoint_index() {
            return Err(PointedError::NotPointed {
                from: domain.basepoint().to_string(),
                to: codomain.carrier().element(image).to_string(),
                expected: codomain.basepoint().to_string(),
            });
        }
        Ok(Self {
            domain,
            codomain,
            underlying,
        })
    }

    pub fn domain(&self) -> &PointedSet {
        &self.domain
    }

    pub fn codomain(&self) -> &PointedSet {
        &self.codomain
    }

    pub fn underlying(&self) -> &SetFunction {
        &self.underlying
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointedSpan {
    left: PointedMap,
    right: PointedMap,
}

impl PointedSpan {
    pub fn new(left: PointedMap, right: PointedMap) -> Result<Self, PointedError> {
        if left.domain() != right.domain() {
            return Err(PointedError::Shape(format!(
                "legs start at {} and {}",
                left.domain(),
                right.domain()
            )));
        }
        Ok(Self { left, right })
    }

    /// The tabulation of a relation relating the two basepoints, pointed at
    /// their pair.
    pub fn tabulate(r: &Relation, a: &PointedSet, b: &PointedSet) -> Result<Self, PointedError> {
        let span = tabulate(r);
        let apex = PointedSet::new(span.apex().clone(), &pair_name(a.basepoint(), b.basepoint()))?;
        Self::new(
            PointedMap::new(apex.clone(), a.clone(), span.left().clone())?,
            PointedMap::new(apex, b.clone(), span.right().clone())?,
        )
    }

    pub fn apex(&self) -> &PointedSet {
        self.left.domain()
    }

    pub fn left(&self) -> &PointedMap {
        &self.left
    }

    pub fn right(&self) -> &PointedMap {
        &self.right
    }

    pub fn underlying(&self) -> Span {
        Span::new(self.left.underlying.clone(), self.right.underlying.clone()).expect("same apex")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointedPushout {
    /// The unpointed construction on the underlying span.
    pub result: MalcevPushoutResult,
    pub corner: PointedSet,
    pub h: PointedMap,
    pub k: PointedMap,
}

pub fn pointed_malcev_pushout(s: &PointedSpan) -> Result<PointedPushout, PointedError> {
    let result = malcev_pushout_direct(&s.underlying())?;
    let (a, b) = (s.left().codomain(), s.right().codomain());
    let base = result.h.apply_index(a.basepoint_index());
    let other = result.k.apply_index(b.basepoint_index());
    if base != other {
        return Err(PointedError::Exactness(ExactnessError::Internal {
            stage: "corner basepoint".into(),
            detail: format!(
                "h and k send the basepoints to {} and {}",
                result.corner().element(base),
                result.corner().element(other)
            ),
        }));
    }
    let corner = PointedSet::new(result.corner().clone(), result.corner().element(base))?;
    let h = PointedMap::new(a.clone(), corner.clone(), result.h.clone())?;
    let k = PointedMap::new(b.clone(), corner.clone(), result.k.clone())?;
    Ok(PointedPushout { result, corner, h, k })
}

/// The unpointed certificate plus the basepoint bookkeeping: both legs
/// agree on the corner basepoint, and the pullback is pointed at the pair
/// of basepoints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointedCertificate {
    pub certificate: PushoutCertificate,
    /// Holds with the corner basepoint; fails with the two images.
    pub corner_basepoint: Verdict<String, (String, String)>,
    /// Holds with the pullback element the apex basepoint pairs to.
    pub pullback_basepoint: Verdict<String, String>,
}

impl PointedCertificate {
    pub fn all_hold(&self) -> bool {
        self.certificate.all_hold() && self.corner_basepoint.holds() && self.pullback_basepoint.holds()
    }

    pub fn first_failure(&self) -> Option<String> {
        if let Some(f) = self.certificate.first_failure() {
            return Some(f);
        }
        if let Some((h, k)) = self.corner_basepoint.failure() {
            return Some(format!("BASEPOINT: basepoints go to {h} and {k}"));
        }
        self.pullback_basepoint
            .failure()
            .map(|p| format!("BASEPOINT: apex basepoint pairs to {p}"))
    }
}

pub fn certify_pointed(s: &PointedSpan, mutant: Mutant) -> Result<PointedCertificate, PointedError> {
    let span = s.underlying();
    let (a, b) = (s.left().codomain(), s.right().codomain());
    let cospan = if mutant == Mutant::DropBasepointIdentification {
        // pushout of the span with the apex basepoint left out
        let apex = s.apex();
        let rest = apex.carrier().subset(|c| c != apex.basepoint_index());
        let reduced = Span::new(
            span.left().restrict(&rest, a.carrier())?,
            span.right().restrict(&rest, b.carrier())?,
        )?;
        canonical_pushout(&reduced).cospan().clone()
    } else {
        pointed_malcev_pushout(s)?.result.square.cospan().clone()
    };
    let certificate = certify_with(&span, &cospan, mutant)?;
    Ok(with_basepoints(s, certificate))
}

/// Adds the basepoint verdicts to an unpointed certificate of the
/// underlying square.
pub fn with_basepoints(s: &PointedSpan, certificate: PushoutCertificate) -> PointedCertificate {
    let (a, b) = (s.left().codomain(), s.right().codomain());
    let cospan = &certificate.cospan;
    let corner = cospan.corner();
    let (hb, kb) = (
        cospan.left().apply_index(a.basepoint_index()),
        cospan.right().apply_index(b.basepoint_index()),
    );
    let corner_basepoint = if hb == kb {
        Verdict::Holds(corner.element(hb).to_string())
    } else {
        Verdict::Fails((corner.element(hb).to_string(), corner.element(kb).to_string()))
    };
    let expected = pair_name(a.basepoint(), b.basepoint());
    let pullback_basepoint = match certificate.is_pullback.witness() {
        Some(w) => {
            let image = w
                .pullback
                .apex()
                .element(w.pairing.apply_index(s.apex().basepoint_index()));
            if image == expected {
                Verdict::Holds(image.to_string())
            } else {
                Verdict::Fails(image.to_string())
            }
        }
        None => Verdict::Fails(format!(
            "nothing, as there is no pullback witness (expected {expected})"
        )),
    };
    PointedCertificate {
        certificate,
        corner_basepoint,
        pullback_basepoint,
    }
}

/// Every tabulated pointed Mal'cev span between standard pointed sets of
/// size at most `max`: the difunctional relations containing `(*,*)`.
pub fn pointed_spans(max: usize) -> Vec<PointedSpan> {
    let mut out = Vec::new();
    for m in 1..=max {
        for n in 1..=max {
            let (a, b) = (PointedSet::standard("a", m), PointedSet::standard("b", n));
            for r in all_relations(a.carrier(), b.carrier()) {
                if r.get(a.basepoint_index(), b.basepoint_index()) && is_difunctional(&r) {
                    out.push(PointedSpan::tabulate(&r, &a, &b).expect("basepoints related"));
                }
            }
        }
    }
    out
}

/// A random pointed Mal'cev span: a union of rectangles, the basepoints in
/// the first one.
pub fn random_pointed_span<R: Rng>(rng: &mut R, max: usize) -> PointedSpan {
    let m = rng.gen_range(1..=max.max(1));
    let n = rng.gen_range(1..=max.max(1));
    let (a, b) = (PointedSet::standard("a", m), PointedSet::standard("b", n));
    let blocks = rng.gen_range(1..=m.min(n) + 1);
    let mut label = |set: &PointedSet| -> Vec<Option<usize>> {
        (0..set.len())
            .map(|i| {
                if i == set.basepoint_index() {
                    return Some(0);
                }
                let l = rng.gen_range(0..=blocks);
                (l < blocks).then_some(l)
            })
            .collect()
    };
    let (la, lb) = (label(&a), label(&b));
    let r = Relation::from_fn(a.carrier(), b.carrier(), |i, j| la[i].is_some() && la[i] == lb[j]);
    PointedSpan::tabulate(&r, &a, &b).expect("basepoints related")
}

fn pointed_label(s: &PointedSpan) -> String {
    let r = crate::relcalc::span_to_relation(&s.underlying());
    format!("R = {r} : {} -|> {}", s.left().codomain(), s.right().codomain())
}

/// Certificates for pointed Mal'cev pushouts, and equality of the underlying
/// square with the unpointed construction.
pub fn pointed_diexact_suite(max: usize, samples: usize, seed: u64, exhaustive: bool, mutant: Mutant) -> SuiteReport {
    let mut instances = if exhaustive {
        pointed_spans(max.min(3))
    } else {
        Vec::new()
    };
    // a different stream from the unpointed corpus under the same seed
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed_0000_0000_0001);
    instances.extend((0..samples).map(|_| random_pointed_span(&mut rng, max)));
    SuiteReport::run("P   pointed certificates", &instances, pointed_label, |s| {
        let cert = certify_pointed(s, mutant).map_err(|e| e.to_string())?;
        if let Some(f) = cert.first_failure() {
            return Err(f);
        }
        let pointed = pointed_malcev_pushout(s).map_err(|e| e.to_string())?;
        let plain = malcev_pushout_direct(&s.underlying()).map_err(|e| e.to_string())?;
        if pointed.result != plain {
            return Err("underlying pointed pushout differs from the unpointed one".into());
        }
        Ok(())
    })
}

/// Every pointed map between two pointed sets, by filtering all functions.
pub fn pointed_maps(x: &PointedSet, y: &PointedSet) -> Vec<PointedMap> {
    all_functions(x.carrier(), y.carrier())
        .into_iter()
        .filter_map(|f| PointedMap::new(x.clone(), y.clone(), f).ok())
        .collect()
}

/// `X -> 0` is the unique pointed map, yet `X` is not initial and the map
/// is not an isomorphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NonStrictWitness {
    pub map: PointedMap,
    /// Two elements of `X` identified by the map.
    pub collision: (String, String),
    /// Pointed maps `X -> X`; more than one means `X` is not initial.
    pub endomaps: usize,
}

pub fn non_strict_witness(size: usize) -> Option<NonStrictWitness> {
    let x = PointedSet::standard("x", size);
    let zero = PointedSet::zero();
    let [map] = <[PointedMap; 1]>::try_from(pointed_maps(&x, &zero)).ok()?;
    let (i, j) = map.underlying().collision()?;
    let endomaps = pointed_maps(&x, &x).len();
    (endomaps > 1).then(|| NonStrictWitness {
        collision: (x.carrier().element(i).to_string(), x.carrier().element(j).to_string()),
        map,
        endomaps,
    })
}

/// The one-point set is initial and terminal for every pointed set of size
/// at most `max`, and the initial object is not strict.
pub fn zero_object_suite(max: usize) -> SuiteReport {
    let sizes: Vec<usize> = (1..=max).collect();
    let mut report = SuiteReport::run(
        format!("Z   zero object (|X| <= {max})"),
        &sizes,
        |&n| format!("X = {}", PointedSet::standard("x", n)),
        |&n| {
            let x = PointedSet::standard("x", n);
            let zero = PointedSet::zero();
            let from = pointed_maps(&zero, &x).len();
            let to = pointed_maps(&x, &zero).len();
            if from == 1 && to == 1 {
                Ok(())
            } else {
                Err(format!("{from} maps 0 -> X and {to} maps X -> 0"))
            }
        },
    );
    let strictness = SuiteReport::run(
        "",
        &[3usize],
        |&n| format!("strictness of 0 for X = {}", PointedSet::standard("x", n)),
        |&n| match non_strict_witness(n) {
            Some(_) => Ok(()),
            None => Err("no non-iso map into 0 found".into()),
        },
    );
    report.passed += strictness.passed;
    report.failures.extend(strictness.failures);
    report
}

impl fmt::Display for NonStrictWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} -> 0 = {} identifies {} and {}, and {} has {} pointed endomaps",
            self.map.domain(),
            self.map.underlying(),
            self.collision.0,
            self.collision.1,
            self.map.domain().carrier(),
            self.endomaps
        )
    }
}
