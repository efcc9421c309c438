//! Acceptance suite: one line per criterion, nonzero exit if any fails.
//!
//! Frozen counts below come from an independent brute-force enumeration
//! (plain nested loops over boolean matrices and function tables), not from
//! this crate.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use diexact::exactness::{malcev_pushout_direct, ExactnessError, Precondition};
use diexact::finset::{pullback, FiniteSet};
use diexact::pointedset::{non_strict_witness, pointed_diexact_suite, pointed_spans, zero_object_suite};
use diexact::relcalc::{tabulate, Relation};
use diexact::verify::corpus::{
    all_commuting_squares, difunctional_corpus, partitions, random_commuting_square, random_sized_difunctional,
};
use diexact::verify::oracle::{raw_pushout_property, stable_under_all_pullbacks};
use diexact::verify::{
    certify, coproduct_suite, decomposition_suite, e_structure_suite, effectiveness_check, equivalence_suite,
    is_pullback_square, is_pushout_square, is_stable_pushout, theorem_suites, SuiteConfig,
};
use diexact::Mutant;

/// Difunctional relations with |A|,|B| <= 2 and <= 3.
const DIFUNCTIONAL_UPTO_2: usize = 27;
const DIFUNCTIONAL_UPTO_3: usize = 241;
/// Bell numbers B(0)..B(5).
const BELL: [usize; 6] = [1, 1, 2, 5, 15, 52];
/// Commuting squares with all four sets of size <= 2 and <= 3, and how many
/// of them satisfy the universal property of a pushout.
const SQUARES_UPTO_2: usize = 249;
const PUSHOUTS_UPTO_2: usize = 55;
const SQUARES_UPTO_3: usize = 74_112;
const PUSHOUTS_UPTO_3: usize = 5_428;
/// Pointed Mal'cev tabulations with carriers of size 1..=2 and 1..=3.
const POINTED_UPTO_2: usize = 10;
const POINTED_UPTO_3: usize = 87;

const SEED: u64 = 20_240_611;
const RANDOM_AGREEMENT_INSTANCES: usize = 500;
const CROSS_VALIDATION_SAMPLES: usize = 10_000;
const POINTED_SAMPLES: usize = 200;

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    passed: bool,
    detail: String,
}

fn check(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        passed,
        detail: detail.into(),
    }
}

fn secs(d: Duration) -> String {
    format!("{:.2} s", d.as_secs_f64())
}

fn exhaustive_certification() -> Outcome {
    let start = Instant::now();
    let small = difunctional_corpus(2).len();
    let corpus = difunctional_corpus(3);
    let failures: Vec<String> = corpus
        .par_iter()
        .filter_map(|r| {
            let out = match malcev_pushout_direct(&tabulate(r)) {
                Ok(out) => out,
                Err(e) => return Some(format!("{r}: {e}")),
            };
            let cert = certify(&out.input, out.square.cospan()).expect("shapes agree");
            if let Some(f) = cert.first_failure() {
                return Some(format!("{r}: {f}"));
            }
            cert.recheck()
                .err()
                .map(|e| format!("{r}: witness does not recheck: {e}"))
        })
        .collect();
    let elapsed = start.elapsed();
    check(
        small == DIFUNCTIONAL_UPTO_2
            && corpus.len() == DIFUNCTIONAL_UPTO_3
            && failures.is_empty()
            && elapsed < Duration::from_secs(60),
        format!(
            "{} difunctional relations (expected {DIFUNCTIONAL_UPTO_3}; {small} with sides <= 2, expected {DIFUNCTIONAL_UPTO_2}), \
             {} failures, {} (limit 60 s){}",
            corpus.len(),
            failures.len(),
            secs(elapsed),
            failures.first().map(|f| format!("; first: {f}")).unwrap_or_default()
        ),
    )
}

fn e_structure() -> Outcome {
    let corpus = difunctional_corpus(3);
    let report = e_structure_suite(&corpus, Mutant::None);
    check(
        report.all_passed() && report.total() == DIFUNCTIONAL_UPTO_3,
        format!(
            "{} relations: reflexive, symmetric, EE <= E, kernel pair of the quotient and pullback recovery; {} failures",
            report.total(),
            report.failures.len()
        ),
    )
}

fn decomposition_agreement() -> Outcome {
    let start = Instant::now();
    let mut corpus = difunctional_corpus(3);
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    corpus.extend((0..RANDOM_AGREEMENT_INSTANCES).map(|_| random_sized_difunctional(&mut rng, 5)));
    let report = decomposition_suite(&corpus, Mutant::None);
    let elapsed = start.elapsed();
    check(
        report.all_passed() && elapsed < Duration::from_secs(120),
        format!(
            "{} exhaustive + {RANDOM_AGREEMENT_INSTANCES} seeded (sides <= 5, seed {SEED}): {} failures, {} (limit 120 s)",
            DIFUNCTIONAL_UPTO_3,
            report.failures.len(),
            secs(elapsed)
        ),
    )
}

fn coproducts_and_equivalences() -> Outcome {
    let coproducts = coproduct_suite(4, Mutant::None);
    let counts: Vec<usize> = (0..=5)
        .map(|n| partitions(&FiniteSet::numbered("x", n)).len())
        .collect();
    let ineffective = (0..=5)
        .flat_map(|n| partitions(&FiniteSet::numbered("x", n)))
        .filter(|e| effectiveness_check(e) != Ok(true))
        .count();
    let equivalences = equivalence_suite(5, Mutant::None);
    check(
        coproducts.all_passed()
            && coproducts.total() == 25
            && counts == BELL
            && ineffective == 0
            && equivalences.all_passed(),
        format!(
            "{} coproduct squares disjoint and stable ({} failures); partitions per size {counts:?} (expected {BELL:?}), \
             {ineffective} not effective, {} coequalizer failures",
            coproducts.total(),
            coproducts.failures.len(),
            equivalences.failures.len()
        ),
    )
}

fn negative_control() -> Outcome {
    let a = FiniteSet::new(["a1", "a2"]).unwrap();
    let b = FiniteSet::new(["b1", "b2"]).unwrap();
    let r = Relation::new(a, b, [("a1", "b1"), ("a1", "b2"), ("a2", "b1")]).unwrap();
    let s = tabulate(&r);
    let witness = match malcev_pushout_direct(&s) {
        Err(ExactnessError::Precondition(Precondition::NotDifunctional(w))) => w,
        other => return check(false, format!("expected a difunctionality violation, got {other:?}")),
    };
    let quadruple_ok = r.contains(&witness.a, &witness.b)
        && r.contains(&witness.a, &witness.b_prime)
        && r.contains(&witness.a_prime, &witness.b)
        && !r.contains(&witness.a_prime, &witness.b_prime);
    let square = diexact::verify::canonical_pushout(&s);
    let pushout = is_pushout_square(&square).holds() && raw_pushout_property(&square, 4);
    let pb = pullback(square.cospan()).0;
    let not_pullback = !is_pullback_square(&square).holds();
    check(
        quadruple_ok && pushout && not_pullback && square.corner().len() == 1 && pb.apex().len() == 4 && s.apex().len() == 3,
        format!(
            "rejected with ({},{},{},{}); forced pushout: corner {}, pushout {pushout}, pullback {} vs apex {}, pullback verdict {}",
            witness.a,
            witness.b,
            witness.a_prime,
            witness.b_prime,
            square.corner().len(),
            pb.apex().len(),
            s.apex().len(),
            !not_pullback
        ),
    )
}

fn oracle_cross_validation() -> Outcome {
    let start = Instant::now();
    let small = all_commuting_squares(2);
    let small_pushouts = small.iter().filter(|sq| is_pushout_square(sq).holds()).count();
    let squares = all_commuting_squares(3);
    let agree = |sq: &diexact::finset::CommutativeSquare| -> (bool, bool, bool) {
        let fast = is_pushout_square(sq).holds();
        let raw = raw_pushout_property(sq, 4);
        let fiberwise = is_stable_pushout(sq).map(|v| v.holds()).unwrap_or(false);
        let direct = stable_under_all_pullbacks(sq, 3);
        (fast == raw, fiberwise == direct, fast)
    };
    let exhaustive: Vec<(bool, bool, bool)> = squares.par_iter().map(agree).collect();
    let pushouts = exhaustive.iter().filter(|t| t.2).count();

    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let sampled: Vec<_> = (0..CROSS_VALIDATION_SAMPLES)
        .map(|_| random_commuting_square(&mut rng, 3))
        .collect();
    let random: Vec<(bool, bool, bool)> = sampled.par_iter().map(agree).collect();
    let random_pushouts = random.iter().filter(|t| t.2).count();

    let pushout_disagreements = exhaustive.iter().chain(&random).filter(|t| !t.0).count();
    let stability_disagreements = exhaustive.iter().chain(&random).filter(|t| !t.1).count();
    check(
        small.len() == SQUARES_UPTO_2
            && small_pushouts == PUSHOUTS_UPTO_2
            && squares.len() == SQUARES_UPTO_3
            && pushouts == PUSHOUTS_UPTO_3
            && pushout_disagreements == 0
            && stability_disagreements == 0,
        format!(
            "all {} squares with sets <= 3 ({pushouts} pushouts, expected {PUSHOUTS_UPTO_3}; {} and {small_pushouts} \
             at <= 2) + {CROSS_VALIDATION_SAMPLES} seeded ({random_pushouts} pushouts): {pushout_disagreements} pushout \
             and {stability_disagreements} stability disagreements, {}",
            squares.len(),
            small.len(),
            secs(start.elapsed())
        ),
    )
}

fn pointed_sets() -> Outcome {
    let zero = zero_object_suite(5);
    let witness = non_strict_witness(3);
    let (two, three) = (pointed_spans(2).len(), pointed_spans(3).len());
    let suite = pointed_diexact_suite(3, POINTED_SAMPLES, SEED, true, Mutant::None);
    check(
        zero.all_passed()
            && witness.is_some()
            && two == POINTED_UPTO_2
            && three == POINTED_UPTO_3
            && suite.all_passed()
            && suite.total() == POINTED_UPTO_3 + POINTED_SAMPLES,
        format!(
            "zero object initial and terminal up to size 5 ({} failures); non-strict: {}; pointed spans {two}/{three} \
             (expected {POINTED_UPTO_2}/{POINTED_UPTO_3}); {} certified with transfer equality, {} failures",
            zero.failures.len(),
            witness.map_or("no witness".to_string(), |w| w.to_string()),
            suite.total(),
            suite.failures.len()
        ),
    )
}

fn mutation_sensitivity() -> Outcome {
    let mut lines = Vec::new();
    let mut all_detected = true;
    for mutant in [Mutant::DropRoRBlock, Mutant::SkipG2MonoCheck, Mutant::AsymmetricClosure] {
        let config = SuiteConfig {
            max_size: 3,
            samples: 100,
            seed: SEED,
            exhaustive: true,
            mutant,
        };
        let report = theorem_suites(&config);
        let failing: Vec<_> = report.suites.iter().filter(|s| !s.all_passed()).collect();
        let first = failing.first().and_then(|s| s.failures.first());
        // an element-level witness names a tagged or paired element
        let element_level = first.is_some_and(|f| {
            ["l:", "r:", "(a", "(x", "`b", "`a"]
                .iter()
                .any(|t| f.witness.contains(t))
        });
        all_detected &= !failing.is_empty() && element_level;
        lines.push(format!(
            "{mutant}: {} failing suite(s){}",
            failing.len(),
            first.map(|f| format!(" [{}]", f.witness)).unwrap_or_default()
        ));
    }
    let pointed = pointed_diexact_suite(2, 0, SEED, true, Mutant::DropBasepointIdentification);
    all_detected &= !pointed.all_passed();
    lines.push(format!(
        "{}: {} pointed failures",
        Mutant::DropBasepointIdentification,
        pointed.failures.len()
    ));
    check(all_detected, lines.join("; "))
}

fn cli_determinism() -> Outcome {
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_diexact"))
            .args(["suite", "--max-size", "3", "--samples", "300", "--seed", "42"])
            .output()
            .expect("binary runs")
    };
    let (first, second) = (run(), run());
    let identical = first.stdout == second.stdout && first.status == second.status;
    check(
        identical && first.status.success() && !first.stdout.is_empty(),
        format!(
            "two runs of `suite --max-size 3 --samples 300 --seed 42`: {} bytes each, identical {identical}, exit {:?}",
            first.stdout.len(),
            first.status.code()
        ),
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        (
            "block-equivalence pushouts certified, exhaustive |A|,|B| <= 3",
            exhaustive_certification,
        ),
        ("block equivalence structure and kernel-pair recovery", e_structure),
        ("decomposed and direct pushouts agree", decomposition_agreement),
        (
            "coproducts disjoint and stable, equivalences effective",
            coproducts_and_equivalences,
        ),
        ("non-difunctional negative control", negative_control),
        (
            "pushout and stability oracles agree with the raw definitions",
            oracle_cross_validation,
        ),
        ("pointed sets: zero object, non-strictness, certificates", pointed_sets),
        ("mutants are detected with element witnesses", mutation_sensitivity),
        ("suite reports are byte-identical across runs", cli_determinism),
    ];
    let mut failed = 0;
    for (n, (name, run)) in criteria.iter().enumerate() {
        let outcome = run();
        let tag = if outcome.passed { "PASS" } else { "FAIL" };
        println!("criterion {} [{tag}] {name}: {}", n + 1, outcome.detail);
        failed += usize::from(!outcome.passed);
    }
    println!(
        "acceptance: {} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
