use std::fmt::Write as _;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::certificate::certify_with;
use super::checks::effectiveness_check;
use super::corpus::{difunctional_corpus, left_set, partitions, random_sized_difunctional, right_set};
use crate::exactness::{malcev_pushout_decomposed_with, malcev_pushout_direct_with, MalcevPushoutResult};
use crate::finset::{canonical_comparison, kernel_pair, pullback, FiniteSet, Span};
use crate::mutant::Mutant;
use crate::relcalc::{leq, rel_compose, span_to_relation, tabulate, Relation};

/// Exhaustive enumeration of difunctional relations stops at this size.
pub const EXHAUSTIVE_LIMIT: usize = 4;
/// Equivalence relations are enumerated on sets up to this size.
pub const PARTITION_LIMIT: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SuiteConfig {
    pub max_size: usize,
    pub samples: usize,
    pub seed: u64,
    pub exhaustive: bool,
    pub mutant: Mutant,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            max_size: 3,
            samples: 100,
            seed: 0,
            exhaustive: false,
            mutant: Mutant::None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteFailure {
    pub instance: String,
    pub witness: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteReport {
    pub name: String,
    pub passed: usize,
    /// In canonical instance order.
    pub failures: Vec<SuiteFailure>,
}

/// Shown per suite before the rest are summarised.
const LISTED_FAILURES: usize = 5;

impl SuiteReport {
    /// Runs `check` on every instance in parallel and keeps the instance
    /// order in the report.
    pub fn run<T, F>(name: impl Into<String>, instances: &[T], label: impl Fn(&T) -> String + Sync, check: F) -> Self
    where
        T: Sync,
        F: Fn(&T) -> Result<(), String> + Sync,
    {
        let outcomes: Vec<Result<(), String>> = instances.par_iter().map(&check).collect();
        let mut report = Self {
            name: name.into(),
            passed: 0,
            failures: Vec::new(),
        };
        for (instance, outcome) in instances.iter().zip(outcomes) {
            match outcome {
                Ok(()) => report.passed += 1,
                Err(witness) => report.failures.push(SuiteFailure {
                    instance: label(instance),
                    witness,
                }),
            }
        }
        report
    }

    pub fn total(&self) -> usize {
        self.passed + self.failures.len()
    }

    pub fn all_passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn render(&self, out: &mut String) {
        let _ = writeln!(
            out,
            "{}: {} passed, {} failed",
            self.name,
            self.passed,
            self.failures.len()
        );
        for failure in self.failures.iter().take(LISTED_FAILURES) {
            let _ = writeln!(out, "  FAIL {}", failure.instance);
            let _ = writeln!(out, "    {}", failure.witness);
        }
        if self.failures.len() > LISTED_FAILURES {
            let _ = writeln!(out, "  ... and {} more", self.failures.len() - LISTED_FAILURES);
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TheoremReport {
    pub config: SuiteConfig,
    pub corpus: String,
    pub suites: Vec<SuiteReport>,
}

impl TheoremReport {
    pub fn all_passed(&self) -> bool {
        self.suites.iter().all(SuiteReport::all_passed)
    }

    pub fn render(&self) -> String {
        let c = &self.config;
        let mut out = format!(
            "suite run: max-size {}, samples {}, seed {}, exhaustive {}, mutant {}\n",
            c.max_size,
            c.samples,
            c.seed,
            if c.exhaustive { "yes" } else { "no" },
            c.mutant
        );
        let _ = writeln!(out, "corpus: {}", self.corpus);
        for suite in &self.suites {
            suite.render(&mut out);
        }
        let _ = writeln!(out, "result: {}", if self.all_passed() { "PASS" } else { "FAIL" });
        out
    }
}

pub fn relation_label(r: &Relation) -> String {
    format!("R = {r} : {} -|> {}", r.source(), r.target())
}

/// The difunctional relations the suites run on: every one up to the
/// exhaustive bound if requested, then `samples` seeded random draws.
pub fn relation_corpus(config: &SuiteConfig) -> (Vec<Relation>, String) {
    let mut corpus = Vec::new();
    let mut parts = Vec::new();
    if config.exhaustive {
        let bound = config.max_size.min(EXHAUSTIVE_LIMIT);
        corpus = difunctional_corpus(bound);
        parts.push(format!(
            "{} difunctional relations with |A|,|B| <= {bound} (all)",
            corpus.len()
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    corpus.extend((0..config.samples).map(|_| random_sized_difunctional(&mut rng, config.max_size)));
    parts.push(format!(
        "{} sampled with |A|,|B| <= {}",
        config.samples, config.max_size
    ));
    (corpus, parts.join(", "))
}

fn direct(s: &Span, mutant: Mutant) -> Result<MalcevPushoutResult, String> {
    malcev_pushout_direct_with(s, mutant).map_err(|e| e.to_string())
}

fn require(ok: bool, message: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(message())
    }
}

/// Coproducts as pushouts over the empty set: disjoint, stable, covering.
pub fn coproduct_suite(max: usize, mutant: Mutant) -> SuiteReport {
    let sizes: Vec<(usize, usize)> = (0..=max).flat_map(|m| (0..=max).map(move |n| (m, n))).collect();
    SuiteReport::run(
        format!("T1a coproducts (|A|,|B| <= {max})"),
        &sizes,
        |&(m, n)| format!("A = {}, B = {}", left_set(m), right_set(n)),
        |&(m, n)| {
            let out = direct(&Span::empty(&left_set(m), &right_set(n)), mutant)?;
            require(out.corner().len() == m + n, || {
                format!("corner has {} elements", out.corner().len())
            })?;
            let cert = certify_with(&out.input, out.square.cospan(), mutant).map_err(|e| e.to_string())?;
            match cert.first_failure() {
                Some(f) => Err(f),
                None => Ok(()),
            }
        },
    )
}

/// Equivalence relations as Mal'cev spans: the pushout is a coequalizer
/// whose kernel pair is the relation again.
pub fn equivalence_suite(max: usize, mutant: Mutant) -> SuiteReport {
    let bound = max.min(PARTITION_LIMIT);
    let instances: Vec<Relation> = (0..=bound)
        .flat_map(|n| partitions(&FiniteSet::numbered("x", n)))
        .collect();
    SuiteReport::run(
        format!("T1b equivalences (|A| <= {bound})"),
        &instances,
        |e| format!("E = {e} on {}", e.source()),
        |e| {
            require(effectiveness_check(e).map_err(|err| err.to_string())?, || {
                "not the kernel pair of its quotient".into()
            })?;
            let out = direct(&tabulate(e), mutant)?;
            require(out.h == out.k, || format!("legs differ: h = {}, k = {}", out.h, out.k))?;
            let kp = span_to_relation(&kernel_pair(&out.h));
            require(&kp == e, || format!("kernel pair of the coequalizer is {kp}"))?;
            let cert = certify_with(&out.input, out.square.cospan(), mutant).map_err(|e| e.to_string())?;
            match cert.is_stable.failure() {
                Some(f) => Err(format!("STABILITY: {f}")),
                None => Ok(()),
            }
        },
    )
}

/// The block equivalence is an equivalence relation, is the kernel pair of
/// the quotient, and the pullback of the legs gives back `R`.
pub fn e_structure_suite(corpus: &[Relation], mutant: Mutant) -> SuiteReport {
    SuiteReport::run("E   block equivalence", corpus, relation_label, |r| {
        let out = direct(&tabulate(r), mutant)?;
        let e = &out.equivalence;
        require(e.is_reflexive(), || format!("E is not reflexive: {e}"))?;
        require(e.is_symmetric(), || format!("E is not symmetric: {e}"))?;
        let ee = rel_compose(e, e).map_err(|err| err.to_string())?;
        require(leq(&ee, e).map_err(|err| err.to_string())?, || {
            format!("EE is not contained in E: {e}")
        })?;
        let kp = span_to_relation(&kernel_pair(&out.quotient));
        require(&kp == e, || format!("kernel pair of [h,k] is {kp}, E is {e}"))?;
        let back = span_to_relation(&pullback(out.square.cospan()).0);
        require(&back == r, || format!("pullback of (h,k) gives {back}"))
    })
}

/// The three-stage pushout agrees with the direct one up to unique iso.
pub fn decomposition_suite(corpus: &[Relation], mutant: Mutant) -> SuiteReport {
    SuiteReport::run("T2  decomposition agrees with direct", corpus, relation_label, |r| {
        let s = tabulate(r);
        let out = direct(&s, mutant)?;
        let trace = malcev_pushout_decomposed_with(&s, mutant).map_err(|e| e.to_string())?;
        let m = canonical_comparison(&out.square, trace.pasted.cospan()).map_err(|e| e.to_string())?;
        require(m.is_iso(), || format!("comparison {m} is not a bijection"))
    })
}

/// The full certificate on every Mal'cev pushout.
pub fn diexact_suite(corpus: &[Relation], mutant: Mutant) -> SuiteReport {
    SuiteReport::run("D   diexact certificates", corpus, relation_label, |r| {
        let out = direct(&tabulate(r), mutant)?;
        let cert = certify_with(&out.input, out.square.cospan(), mutant).map_err(|e| e.to_string())?;
        if let Some(f) = cert.first_failure() {
            return Err(f);
        }
        cert.recheck().map_err(|e| format!("certificate does not recheck: {e}"))
    })
}

pub fn theorem_suites(config: &SuiteConfig) -> TheoremReport {
    let (corpus, description) = relation_corpus(config);
    let suites = vec![
        coproduct_suite(config.max_size, config.mutant),
        equivalence_suite(config.max_size, config.mutant),
        e_structure_suite(&corpus, config.mutant),
        decomposition_suite(&corpus, config.mutant),
        diexact_suite(&corpus, config.mutant),
    ];
    TheoremReport {
        config: *config,
        corpus: description,
        suites,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_exhaustive_run_passes() {
        let config = SuiteConfig {
            max_size: 2,
            samples: 20,
            seed: 1,
            exhaustive: true,
            mutant: Mutant::None,
        };
        let report = theorem_suites(&config);
        assert!(report.all_passed(), "{}", report.render());
        let d = report.suites.iter().find(|s| s.name.starts_with('D')).unwrap();
        assert_eq!(d.total(), 27 + 20);
    }

    #[test]
    fn empty_bounds_pass() {
        let config = SuiteConfig {
            max_size: 0,
            samples: 3,
            seed: 0,
            exhaustive: true,
            mutant: Mutant::None,
        };
        let report = theorem_suites(&config);
        assert!(report.all_passed());
        assert_eq!(report.suites[0].total(), 1);
    }

    #[test]
    fn dropping_the_block_is_detected() {
        let config = SuiteConfig {
            max_size: 2,
            samples: 0,
            seed: 0,
            exhaustive: true,
            mutant: Mutant::DropRoRBlock,
        };
        let report = theorem_suites(&config);
        assert!(!report.all_passed());
        let d = report.suites.iter().find(|s| s.name.starts_with('D')).unwrap();
        assert!(!d.failures.is_empty());
        assert!(
            d.failures[0].witness.contains("equivalence matrix"),
            "{}",
            d.failures[0].witness
        );
    }
}
