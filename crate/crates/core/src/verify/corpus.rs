//! Test instances: exhaustive enumerations in canonical order and seeded
//! random samples.

use rand::seq::SliceRandom;
use rand::Rng;

use super::checks::canonical_pushout;
use super::oracle::all_functions;
use crate::finset::{compose, CommutativeSquare, Cospan, FiniteSet, SetFunction, Span};
use crate::relcalc::{all_relations, is_difunctional, Relation};

pub fn left_set(m: usize) -> FiniteSet {
    FiniteSet::numbered("a", m)
}

pub fn right_set(n: usize) -> FiniteSet {
    FiniteSet::numbered("b", n)
}

/// All difunctional relations `{a1..am} -|> {b1..bn}`.
pub fn difunctional_relations(m: usize, n: usize) -> Vec<Relation> {
    let (a, b) = (left_set(m), right_set(n));
    all_relations(&a, &b).filter(is_difunctional).collect()
}

/// All difunctional relations with both sides of size at most `max`,
/// ordered by `(|A|, |B|)` and then by matrix.
pub fn difunctional_corpus(max: usize) -> Vec<Relation> {
    let mut out = Vec::new();
    for m in 0..=max {
        for n in 0..=max {
            out.extend(difunctional_relations(m, n));
        }
    }
    out
}

/// A difunctional relation is a disjoint union of rectangles `Ai × Bi`;
/// this draws one by labelling each element with a block or with none.
pub fn random_difunctional<R: Rng>(rng: &mut R, m: usize, n: usize) -> Relation {
    let blocks = rng.gen_range(0..=m.min(n) + 1);
    let mut label = |len: usize| -> Vec<Option<usize>> {
        (0..len)
            .map(|_| {
                let l = rng.gen_range(0..=blocks);
                (l < blocks).then_some(l)
            })
            .collect()
    };
    let (la, lb) = (label(m), label(n));
    Relation::from_fn(&left_set(m), &right_set(n), |i, j| la[i].is_some() && la[i] == lb[j])
}

pub fn random_sized_difunctional<R: Rng>(rng: &mut R, max: usize) -> Relation {
    let m = rng.gen_range(0..=max);
    let n = rng.gen_range(0..=max);
    random_difunctional(rng, m, n)
}

/// Every equivalence relation on `set`, one per restricted growth string.
pub fn partitions(set: &FiniteSet) -> Vec<Relation> {
    let n = set.len();
    let mut out = Vec::new();
    let mut rgs = vec![0usize; n];
    fn grow(i: usize, max_used: usize, rgs: &mut Vec<usize>, set: &FiniteSet, out: &mut Vec<Relation>) {
        if i == rgs.len() {
            out.push(Relation::from_fn(set, set, |x, y| rgs[x] == rgs[y]));
            return;
        }
        let limit = if i == 0 { 0 } else { max_used + 1 };
        for block in 0..=limit {
            rgs[i] = block;
            grow(i + 1, max_used.max(block), rgs, set, out);
        }
    }
    grow(0, 0, &mut rgs, set, &mut out);
    out
}

/// Every commuting square whose four sets have at most `max` elements,
/// each set numbered `c`, `a`, `b`, `d`.
pub fn all_commuting_squares(max: usize) -> Vec<CommutativeSquare> {
    let mut out = Vec::new();
    for nc in 0..=max {
        for na in 0..=max {
            for nb in 0..=max {
                let (c, a, b) = (FiniteSet::numbered("c", nc), left_set(na), right_set(nb));
                let spans: Vec<Span> = all_functions(&c, &a)
                    .into_iter()
                    .flat_map(|f| {
                        all_functions(&c, &b)
                            .into_iter()
                            .map(move |g| Span::new(f.clone(), g).unwrap())
                    })
                    .collect();
                for nd in 0..=max {
                    let d = FiniteSet::numbered("d", nd);
                    let hs = all_functions(&a, &d);
                    let ks = all_functions(&b, &d);
                    for span in &spans {
                        for h in &hs {
                            for k in &ks {
                                let cospan = Cospan::new(h.clone(), k.clone()).unwrap();
                                if let Ok(sq) = CommutativeSquare::new(span.clone(), cospan) {
                                    out.push(sq);
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

fn random_function<R: Rng>(rng: &mut R, domain: &FiniteSet, codomain: &FiniteSet) -> Option<SetFunction> {
    if codomain.is_empty() && !domain.is_empty() {
        return None;
    }
    let table = (0..domain.len()).map(|_| rng.gen_range(0..codomain.len())).collect();
    Some(SetFunction::from_table(domain.clone(), codomain.clone(), table).expect("in range"))
}

fn random_span<R: Rng>(rng: &mut R, max: usize) -> Option<Span> {
    let c = FiniteSet::numbered("c", rng.gen_range(0..=max));
    let a = left_set(rng.gen_range(0..=max));
    let b = right_set(rng.gen_range(0..=max));
    let f = random_function(rng, &c, &a)?;
    let g = random_function(rng, &c, &b)?;
    Some(Span::new(f, g).expect("same apex"))
}

/// A random commuting square with all four sets of size at most `max`.
///
/// Half of the draws are the canonical pushout of a random span with its
/// corner relabelled by a random bijection; the rest complete a random
/// span and `h` by a `k` that is forced on the image of `g` and random off
/// it.
pub fn random_commuting_square<R: Rng>(rng: &mut R, max: usize) -> CommutativeSquare {
    loop {
        let Some(span) = random_span(rng, max) else { continue };
        if rng.gen_bool(0.5) {
            let sq = canonical_pushout(&span);
            let n = sq.corner().len();
            if n > max {
                continue;
            }
            let d = FiniteSet::numbered("d", n);
            let mut perm: Vec<usize> = (0..n).collect();
            perm.shuffle(rng);
            let relabel = SetFunction::from_table(sq.corner().clone(), d, perm).expect("bijection");
            let cospan = sq.cospan().then(&relabel).expect("composable");
            return CommutativeSquare::new(span, cospan).expect("relabelled pushout commutes");
        }
        let d = FiniteSet::numbered("d", rng.gen_range(0..=max));
        let Some(h) = random_function(rng, span.left_foot(), &d) else {
            continue;
        };
        let hf = compose(&h, span.left()).expect("composable");
        let mut forced: Vec<Option<usize>> = vec![None; span.right_foot().len()];
        let mut consistent = true;
        for c in 0..span.apex().len() {
            let slot = &mut forced[span.right().apply_index(c)];
            match *slot {
                None => *slot = Some(hf.apply_index(c)),
                Some(v) if v != hf.apply_index(c) => consistent = false,
                Some(_) => {}
            }
        }
        if !consistent || (d.is_empty() && forced.iter().any(Option::is_none)) {
            continue;
        }
        let table = forced
            .into_iter()
            .map(|v| v.unwrap_or_else(|| rng.gen_range(0..d.len())))
            .collect();
        let k = SetFunction::from_table(span.right_foot().clone(), d, table).expect("in range");
        return CommutativeSquare::new(span, Cospan::new(h, k).expect("same corner")).expect("k is forced");
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn small_counts() {
        assert_eq!(difunctional_relations(0, 3).len(), 1);
        assert_eq!(difunctional_relations(1, 1).len(), 2);
        assert_eq!(difunctional_relations(2, 2).len(), 12);
        assert_eq!(partitions(&FiniteSet::numbered("x", 3)).len(), 5);
        assert_eq!(partitions(&FiniteSet::empty()).len(), 1);
    }

    #[test]
    fn random_draws_are_difunctional_and_commute() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            assert!(is_difunctional(&random_sized_difunctional(&mut rng, 5)));
            let sq = random_commuting_square(&mut rng, 3);
            assert!(sq.corner().len() <= 3 && sq.apex().len() <= 3);
        }
    }

    #[test]
    fn exhaustive_squares_of_size_one() {
        // all four sets of size 0 or 1
        assert_eq!(all_commuting_squares(1).len(), 6);
    }
}
