//! Finite limits and colimits in the category of finite sets.
//!
//! Constructed objects get deterministic element names: pairs are
//! `(a,b)`, coproduct elements are tagged `l:` / `r:`, and quotient classes
//! are named after their least member.

use super::union_find::UnionFind;
use super::{commutation_defect, compose, CommutativeSquare, Cospan, FinSetError, FiniteSet, SetFunction, Span};
use crate::relcalc::Relation;

pub fn pair_name(a: &str, b: &str) -> String {
    format!("({a},{b})")
}

pub fn left_tag(a: &str) -> String {
    format!("l:{a}")
}

pub fn right_tag(b: &str) -> String {
    format!("r:{b}")
}

/// The set of `(a,b)` pairs selected by `related`, with the two projections.
pub(crate) fn pair_span(a_set: &FiniteSet, b_set: &FiniteSet, mut related: impl FnMut(usize, usize) -> bool) -> Span {
    let mut pairs = Vec::new();
    for i in 0..a_set.len() {
        for j in 0..b_set.len() {
            if related(i, j) {
                pairs.push((pair_name(a_set.element(i), b_set.element(j)), i, j));
            }
        }
    }
    let apex =
        FiniteSet::new(pairs.iter().map(|(n, _, _)| n.clone())).expect("pair names of distinct pairs are distinct");
    let mut left = vec![0; apex.len()];
    let mut right = vec![0; apex.len()];
    for (name, i, j) in &pairs {
        let p = apex.index_of(name).expect("just inserted");
        left[p] = *i;
        right[p] = *j;
    }
    Span::new(
        SetFunction::from_table(apex.clone(), a_set.clone(), left).expect("projection in range"),
        SetFunction::from_table(apex, b_set.clone(), right).expect("projection in range"),
    )
    .expect("projections share the apex")
}

/// The pullback `{(a,b) : left(a) = right(b)}` with its projections.
pub fn pullback(cospan: &Cospan) -> (Span, CommutativeSquare) {
    let (h, k) = (cospan.left(), cospan.right());
    let span = pair_span(h.domain(), k.domain(), |i, j| h.apply_index(i) == k.apply_index(j));
    let square =
        CommutativeSquare::new(span.clone(), cospan.clone()).expect("pullback square commutes by construction");
    (span, square)
}

/// The pullback of `f` against itself.
pub fn kernel_pair(f: &SetFunction) -> Span {
    let cospan = Cospan::new(f.clone(), f.clone()).expect("same codomain");
    pullback(&cospan).0
}

/// A tagged disjoint union with its two injections.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coproduct {
    pub set: FiniteSet,
    pub left: SetFunction,
    pub right: SetFunction,
}

impl Coproduct {
    /// The copairing `[h, k]`.
    pub fn copair(&self, h: &SetFunction, k: &SetFunction) -> Result<SetFunction, FinSetError> {
        if h.domain() != self.left.domain() || k.domain() != self.right.domain() {
            return Err(FinSetError::ShapeMismatch(
                "copairing maps do not start at the summands".into(),
            ));
        }
        if h.codomain() != k.codomain() {
            return Err(FinSetError::ShapeMismatch(
                "copairing maps have different codomains".into(),
            ));
        }
        let mut table = vec![0; self.set.len()];
        for (i, &t) in self.left.table().iter().enumerate() {
            table[t] = h.apply_index(i);
        }
        for (j, &t) in self.right.table().iter().enumerate() {
            table[t] = k.apply_index(j);
        }
        SetFunction::from_table(self.set.clone(), h.codomain().clone(), table)
    }
}

pub fn coproduct(a: &FiniteSet, b: &FiniteSet) -> Coproduct {
    let set =
        FiniteSet::new(a.iter().map(left_tag).chain(b.iter().map(right_tag))).expect("tags keep the summands apart");
    // every `l:` name sorts before every `r:` name
    let left =
        SetFunction::from_table(a.clone(), set.clone(), (0..a.len()).collect()).expect("left injection in range");
    let right = SetFunction::from_table(b.clone(), set.clone(), (a.len()..a.len() + b.len()).collect())
        .expect("right injection in range");
    Coproduct { set, left, right }
}

/// Names each element of `set` by the least member of its class, where
/// `least[i]` is that member's index.
pub(crate) fn quotient_from_least(set: &FiniteSet, least: &[usize]) -> SetFunction {
    let quotient = FiniteSet::new(
        least
            .iter()
            .enumerate()
            .filter(|&(i, &l)| i == l)
            .map(|(i, _)| set.element(i).to_string()),
    )
    .expect("class representatives are distinct");
    SetFunction::from_rule(set.clone(), quotient, |x| {
        set.element(least[set.index_of(x).expect("own element")]).to_string()
    })
    .expect("representatives belong to the quotient")
}

/// The coequalizer of an equivalence relation: `A -> A/E`, each class named
/// by its least member.
pub fn quotient_by_equivalence(a: &FiniteSet, e: &Relation) -> Result<SetFunction, FinSetError> {
    if e.source() != a || e.target() != a {
        return Err(FinSetError::ShapeMismatch(format!(
            "relation is not an endo-relation on {a}"
        )));
    }
    if let Some(violation) = e.equivalence_violation() {
        return Err(FinSetError::NotAnEquivalence(violation.to_string()));
    }
    // for an equivalence, the row of i is exactly the class of i
    let least: Vec<usize> = (0..a.len())
        .map(|i| (0..a.len()).find(|&j| e.get(i, j)).expect("reflexive"))
        .collect();
    Ok(quotient_from_least(a, &least))
}

/// The quotient of `set` by the equivalence relation generated by `pairs`.
pub fn quotient_by_generators(set: &FiniteSet, pairs: impl IntoIterator<Item = (usize, usize)>) -> SetFunction {
    let mut uf = UnionFind::new(set.len());
    for (x, y) in pairs {
        uf.union(x, y);
    }
    quotient_from_least(set, &uf.least_members())
}

/// `f = m ∘ e` with `e` onto the image (image elements keep their codomain
/// names) and `m` the inclusion.
pub fn image_factorization(f: &SetFunction) -> (SetFunction, SetFunction) {
    let mut hit = vec![false; f.codomain().len()];
    for &j in f.table() {
        hit[j] = true;
    }
    let image = f.codomain().subset(|j| hit[j]);
    let e = SetFunction::from_rule(f.domain().clone(), image.clone(), |x| {
        f.apply(x).expect("own element").to_string()
    })
    .expect("values lie in the image");
    let m = SetFunction::from_rule(image, f.codomain().clone(), |y| y.to_string())
        .expect("image is a subset of the codomain");
    (e, m)
}

/// The mediating map from the corner of `square` to the corner of
/// `candidate`, defined by chasing each corner element back through the
/// square's legs. Exists whenever `square` is a pushout and `candidate`
/// commutes with the same span.
pub fn canonical_comparison(square: &CommutativeSquare, candidate: &Cospan) -> Result<SetFunction, FinSetError> {
    let span = square.span();
    if candidate.left().domain() != span.left_foot() || candidate.right().domain() != span.right_foot() {
        return Err(FinSetError::ShapeMismatch(
            "candidate cospan is not over the square's feet".into(),
        ));
    }
    if let Some(c) = commutation_defect(span, candidate)? {
        return Err(FinSetError::CandidateNotCommuting(span.apex().element(c).to_string()));
    }
    let (h, k) = (square.cospan().left(), square.cospan().right());
    let corner = square.corner();
    let mut table: Vec<Option<usize>> = vec![None; corner.len()];
    let chase = [(h, candidate.left()), (k, candidate.right())];
    for (leg, target_leg) in chase {
        for (x, &d) in leg.table().iter().enumerate() {
            let value = target_leg.apply_index(x);
            match table[d] {
                None => table[d] = Some(value),
                Some(prev) if prev != value => {
                    return Err(FinSetError::NoComparison {
                        element: corner.element(d).to_string(),
                        reason: format!(
                            "would have to map to both {} and {}",
                            candidate.corner().element(prev),
                            candidate.corner().element(value)
                        ),
                    })
                }
                Some(_) => {}
            }
        }
    }
    let table = table
        .into_iter()
        .enumerate()
        .map(|(d, v)| {
            v.ok_or_else(|| FinSetError::NoComparison {
                element: corner.element(d).to_string(),
                reason: "not reached by either leg".into(),
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    let comparison = SetFunction::from_table(corner.clone(), candidate.corner().clone(), table)?;
    debug_assert_eq!(&compose(&comparison, h)?, candidate.left());
    Ok(comparison)
}
