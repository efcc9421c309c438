//! The calculus of relations between finite sets: composition, converse,
//! unions, the function/span/relation dictionary, and difunctionality.

mod block;
mod relation;

pub use block::{assemble_block, BlockRelation};
pub use relation::Relation;

use std::fmt;

use thiserror::Error;

use crate::finset::{pair_span, FinSetError, FiniteSet, SetFunction, Span};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RelError {
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("{0}")]
    ShapeMismatch(String),
    #[error("cannot compose: target {left} differs from source {right}")]
    CompositionMismatch { left: String, right: String },
    #[error("relation {0} is not an endo-relation")]
    NotEndo(String),
    #[error(transparent)]
    FinSet(#[from] FinSetError),
}

/// `S ∘ R`: first `R`, then `S`.
pub fn rel_compose(s: &Relation, r: &Relation) -> Result<Relation, RelError> {
    if r.target() != s.source() {
        return Err(RelError::CompositionMismatch {
            left: r.target().to_string(),
            right: s.source().to_string(),
        });
    }
    let mid = r.target().len();
    Ok(Relation::from_fn(r.source(), s.target(), |i, k| {
        (0..mid).any(|j| r.get(i, j) && s.get(j, k))
    }))
}

pub fn converse(r: &Relation) -> Relation {
    Relation::from_fn(r.target(), r.source(), |j, i| r.get(i, j))
}

pub fn union(r: &Relation, s: &Relation) -> Result<Relation, RelError> {
    r.same_shape(s)?;
    Ok(Relation::from_fn(r.source(), r.target(), |i, j| {
        r.get(i, j) || s.get(i, j)
    }))
}

pub fn intersection(r: &Relation, s: &Relation) -> Result<Relation, RelError> {
    r.same_shape(s)?;
    Ok(Relation::from_fn(r.source(), r.target(), |i, j| {
        r.get(i, j) && s.get(i, j)
    }))
}

/// Inclusion `R ≤ S`.
pub fn leq(r: &Relation, s: &Relation) -> Result<bool, RelError> {
    r.same_shape(s)?;
    Ok(r.matrix().iter().zip(s.matrix()).all(|(&x, &y)| !x || y))
}

/// `{(a, f(a))}`.
pub fn graph_of(f: &SetFunction) -> Relation {
    Relation::from_fn(f.domain(), f.codomain(), |i, j| f.apply_index(i) == j)
}

/// The relation a span induces between its feet: `a ~ b` iff some apex
/// element lies over `(a, b)`.
pub fn span_to_relation(s: &Span) -> Relation {
    let mut r = Relation::empty(s.left_foot(), s.right_foot());
    for c in 0..s.apex().len() {
        r.set(s.left().apply_index(c), s.right().apply_index(c), true);
    }
    r
}

/// The jointly monic span of projections out of the set of related pairs.
pub fn tabulate(r: &Relation) -> Span {
    pair_span(r.source(), r.target(), |i, j| r.get(i, j))
}

/// `a R b, a R b', a' R b` but not `a' R b'`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MalcevViolation {
    pub a: String,
    pub b: String,
    pub a_prime: String,
    pub b_prime: String,
}

impl fmt::Display for MalcevViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let Self { a, b, a_prime, b_prime } = self;
        write!(
            f,
            "(a,b,a',b') = ({a},{b},{a_prime},{b_prime}): {a} R {b}, {a} R {b_prime}, {a_prime} R {b} but not {a_prime} R {b_prime}"
        )
    }
}

/// The first violation of `(aRb ∧ aRb' ∧ a'Rb) ⇒ a'Rb'` in canonical order
/// of `(a, b, b', a')`.
pub fn difunctional_violation(r: &Relation) -> Option<MalcevViolation> {
    let (m, n) = (r.source().len(), r.target().len());
    for a in 0..m {
        for b in (0..n).filter(|&b| r.get(a, b)) {
            for b2 in (0..n).filter(|&b2| r.get(a, b2)) {
                for a2 in (0..m).filter(|&a2| r.get(a2, b)) {
                    if !r.get(a2, b2) {
                        return Some(MalcevViolation {
                            a: r.source().element(a).to_string(),
                            b: r.target().element(b).to_string(),
                            a_prime: r.source().element(a2).to_string(),
                            b_prime: r.target().element(b2).to_string(),
                        });
                    }
                }
            }
        }
    }
    None
}

/// `R R° R ≤ R`.
pub fn is_difunctional(r: &Relation) -> bool {
    let rrr = rel_compose(r, &rel_compose(&converse(r), r).expect("R°∘R composable")).expect("R∘R°∘R composable");
    leq(&rrr, r).expect("same shape")
}

/// The least difunctional relation containing `r`.
pub fn difunctional_closure(r: &Relation) -> Relation {
    let mut current = r.clone();
    let bound = r.source().len() * r.target().len();
    for _ in 0..=bound {
        let rrr = rel_compose(
            &current,
            &rel_compose(&converse(&current), &current).expect("composable"),
        )
        .expect("composable");
        let next = union(&current, &rrr).expect("same shape");
        if next == current {
            return current;
        }
        current = next;
    }
    unreachable!("each round adds a pair, so the closure stabilises within |A|*|B| rounds")
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum EquivalenceViolation {
    NotReflexive(String),
    NotSymmetric(String, String),
    NotTransitive(String, String, String),
}

impl fmt::Display for EquivalenceViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::NotReflexive(x) => write!(f, "not reflexive at {x}"),
            Self::NotSymmetric(x, y) => write!(f, "not symmetric: {x} ~ {y} but not {y} ~ {x}"),
            Self::NotTransitive(x, y, z) => {
                write!(f, "not transitive: {x} ~ {y} and {y} ~ {z} but not {x} ~ {z}")
            }
        }
    }
}

impl Relation {
    /// First reflexivity, symmetry or transitivity failure, checked in that
    /// order. Only meaningful on endo-relations.
    pub fn equivalence_violation(&self) -> Option<EquivalenceViolation> {
        let n = self.source().len();
        let name = |i: usize| self.source().element(i).to_string();
        if let Some(x) = (0..n).find(|&x| !self.get(x, x)) {
            return Some(EquivalenceViolation::NotReflexive(name(x)));
        }
        for x in 0..n {
            for y in 0..n {
                if self.get(x, y) && !self.get(y, x) {
                    return Some(EquivalenceViolation::NotSymmetric(name(x), name(y)));
                }
            }
        }
        for x in 0..n {
            for y in (0..n).filter(|&y| self.get(x, y)) {
                for z in (0..n).filter(|&z| self.get(y, z)) {
                    if !self.get(x, z) {
                        return Some(EquivalenceViolation::NotTransitive(name(x), name(y), name(z)));
                    }
                }
            }
        }
        None
    }

    pub fn is_reflexive(&self) -> bool {
        self.is_endo() && (0..self.source().len()).all(|x| self.get(x, x))
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_endo() && *self == converse(self)
    }
}

pub fn is_equivalence(e: &Relation) -> Result<bool, RelError> {
    if !e.is_endo() {
        return Err(RelError::NotEndo(format!("{} -|> {}", e.source(), e.target())));
    }
    Ok(e.equivalence_violation().is_none())
}

/// Mal'cev test through the induced relation: jointly monic and
/// difunctional.
pub fn malcev_by_relation(s: &Span) -> bool {
    s.is_jointly_monic() && is_difunctional(&span_to_relation(s))
}

/// Mal'cev test through the factorisation of `C ×_B C ×_A C`: jointly monic,
/// and for every `(c1, c2, c3)` with `g c1 = g c2` and `f c2 = f c3` there is
/// an apex element over `(f c1, g c3)`.
pub fn malcev_by_factorization(s: &Span) -> bool {
    if !s.is_jointly_monic() {
        return false;
    }
    let (f, g) = (s.left(), s.right());
    let cols = s.right_foot().len();
    let mut attained = vec![false; s.left_foot().len() * cols];
    for c in 0..s.apex().len() {
        attained[f.apply_index(c) * cols + g.apply_index(c)] = true;
    }
    let n = s.apex().len();
    for c1 in 0..n {
        for c2 in (0..n).filter(|&c2| g.apply_index(c2) == g.apply_index(c1)) {
            for c3 in (0..n).filter(|&c3| f.apply_index(c3) == f.apply_index(c2)) {
                if !attained[f.apply_index(c1) * cols + g.apply_index(c3)] {
                    return false;
                }
            }
        }
    }
    true
}

/// Both Mal'cev criteria; they must agree.
pub fn is_malcev_span(s: &Span) -> bool {
    let by_relation = malcev_by_relation(s);
    debug_assert_eq!(by_relation, malcev_by_factorization(s));
    by_relation
}

/// An endospan `A <- E -> A` read as a span: jointly monic, Mal'cev, and
/// reflexive (the diagonal of `A` factors through it).
pub fn endospan_is_reflexive_malcev(s: &Span) -> bool {
    s.left_foot() == s.right_foot() && is_malcev_span(s) && span_to_relation(s).is_reflexive()
}

/// Every relation `source -|> target`, in binary-counter order over the
/// row-major matrix.
pub fn all_relations(source: &FiniteSet, target: &FiniteSet) -> impl Iterator<Item = Relation> + use<> {
    let (source, target) = (source.clone(), target.clone());
    let cells = source.len() * target.len();
    assert!(cells < 64, "too many relations to enumerate");
    (0u64..1 << cells)
        .map(move |bits| Relation::from_fn(&source, &target, |i, j| bits >> (i * target.len() + j) & 1 == 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finset::kernel_pair;

    fn set(names: &[&str]) -> FiniteSet {
        FiniteSet::new(names.iter().copied()).unwrap()
    }

    fn rel(a: &FiniteSet, b: &FiniteSet, pairs: &[(&str, &str)]) -> Relation {
        Relation::new(a.clone(), b.clone(), pairs.iter().copied()).unwrap()
    }

    fn ab2() -> (FiniteSet, FiniteSet) {
        (set(&["a1", "a2"]), set(&["b1", "b2"]))
    }

    #[test]
    fn compose_with_identity() {
        let (a, b) = ab2();
        let r = rel(&a, &b, &[("a1", "b2"), ("a2", "b2")]);
        assert_eq!(rel_compose(&r, &Relation::identity(&a)).unwrap(), r);
        assert_eq!(rel_compose(&Relation::identity(&b), &r).unwrap(), r);
        assert!(matches!(rel_compose(&r, &r), Err(RelError::CompositionMismatch { .. })));
    }

    #[test]
    fn graph_totality() {
        let (a, b) = ab2();
        let f = SetFunction::new(a.clone(), b, [("a1", "b1"), ("a2", "b1")]).unwrap();
        let gf = graph_of(&f);
        let both = rel_compose(&converse(&gf), &gf).unwrap();
        assert!(leq(&Relation::identity(&a), &both).unwrap());
        // constant map: one full column
        assert_eq!(
            gf,
            rel(&gf.source().clone(), gf.target(), &[("a1", "b1"), ("a2", "b1")])
        );
        assert_eq!(graph_of(&SetFunction::identity(&a)), Relation::identity(&a));
    }

    #[test]
    fn converse_of_non_iso_graph_is_not_a_graph() {
        let (a, _) = ab2();
        let one = set(&["p"]);
        let f = SetFunction::new(a, one, [("a1", "p"), ("a2", "p")]).unwrap();
        let back = converse(&graph_of(&f));
        // p is related to two elements: not single-valued
        assert_eq!(back.index_pairs().filter(|&(i, _)| i == 0).count(), 2);
        assert_eq!(
            converse(&Relation::identity(&set(&["x", "y"]))),
            Relation::identity(&set(&["x", "y"]))
        );
    }

    #[test]
    fn union_and_order() {
        let (a, b) = ab2();
        let r = rel(&a, &b, &[("a1", "b1")]);
        let s = rel(&a, &b, &[("a2", "b1")]);
        assert_eq!(union(&r, &r).unwrap(), r);
        assert!(leq(&r, &union(&r, &s).unwrap()).unwrap());
        assert!(!leq(&s, &r).unwrap());
        assert!(leq(&r, &Relation::identity(&a)).is_err());
    }

    #[test]
    fn difunctional_examples() {
        let (a, b) = ab2();
        let matched = rel(&a, &b, &[("a1", "b1"), ("a2", "b2")]);
        assert!(is_difunctional(&matched));
        assert_eq!(difunctional_violation(&matched), None);

        let three = rel(&a, &b, &[("a1", "b1"), ("a1", "b2"), ("a2", "b1")]);
        assert!(!is_difunctional(&three));
        let w = difunctional_violation(&three).unwrap();
        assert_eq!(
            (w.a.as_str(), w.b.as_str(), w.a_prime.as_str(), w.b_prime.as_str()),
            ("a1", "b1", "a2", "b2")
        );
        assert_eq!(difunctional_closure(&three), Relation::full(&a, &b));
        assert_eq!(difunctional_closure(&matched), matched);
    }

    #[test]
    fn equivalence_examples() {
        let s = set(&["1", "2"]);
        assert!(is_equivalence(&Relation::identity(&s)).unwrap());
        assert!(is_equivalence(&Relation::full(&s, &s)).unwrap());
        let lopsided = rel(&s, &s, &[("1", "1"), ("2", "2"), ("1", "2")]);
        assert!(!is_equivalence(&lopsided).unwrap());
        assert_eq!(
            lopsided.equivalence_violation(),
            Some(EquivalenceViolation::NotSymmetric("1".into(), "2".into()))
        );
        assert!(matches!(
            is_equivalence(&Relation::empty(&s, &set(&["x"]))),
            Err(RelError::NotEndo(_))
        ));
    }

    #[test]
    fn tabulation_round_trip() {
        let (a, b) = ab2();
        let empty = Relation::empty(&a, &b);
        assert!(tabulate(&empty).apex().is_empty());

        let r = rel(&a, &b, &[("a1", "b1"), ("a1", "b2"), ("a2", "b2")]);
        let t = tabulate(&r);
        assert_eq!(t.apex().elements(), ["(a1,b1)", "(a1,b2)", "(a2,b2)"]);
        assert_eq!(t.left().apply("(a2,b2)"), Some("a2"));
        assert_eq!(t.right().apply("(a1,b2)"), Some("b2"));
        assert!(t.is_jointly_monic());
        assert_eq!(span_to_relation(&t), r);

        let d = tabulate(&Relation::identity(&a));
        assert!(d.left().is_iso() && d.right().is_iso());
    }

    #[test]
    fn kernel_pair_relation() {
        let f = SetFunction::new(
            set(&["1", "2", "3"]),
            set(&["x", "y"]),
            [("1", "x"), ("2", "x"), ("3", "y")],
        )
        .unwrap();
        let g = graph_of(&f);
        assert_eq!(
            span_to_relation(&kernel_pair(&f)),
            rel_compose(&converse(&g), &g).unwrap()
        );
    }

    #[test]
    fn malcev_classes() {
        let (a, b) = ab2();
        // a span with a monic leg
        let c = set(&["c1", "c2"]);
        let f = SetFunction::new(c.clone(), a.clone(), [("c1", "a1"), ("c2", "a2")]).unwrap();
        let g = SetFunction::new(c, b.clone(), [("c1", "b1"), ("c2", "b1")]).unwrap();
        assert!(is_malcev_span(&Span::new(f, g).unwrap()));

        let three = rel(&a, &b, &[("a1", "b1"), ("a1", "b2"), ("a2", "b1")]);
        let t = tabulate(&three);
        assert!(!malcev_by_relation(&t));
        assert!(!malcev_by_factorization(&t));

        // not jointly monic
        let c = set(&["c1", "c2"]);
        let to_a = SetFunction::new(c.clone(), a, [("c1", "a1"), ("c2", "a1")]).unwrap();
        let to_b = SetFunction::new(c, b, [("c1", "b1"), ("c2", "b1")]).unwrap();
        let s = Span::new(to_a, to_b).unwrap();
        assert!(!is_malcev_span(&s));
        assert!(!malcev_by_factorization(&s));
    }

    #[test]
    fn enumerates_all_relations() {
        let (a, b) = ab2();
        assert_eq!(all_relations(&a, &b).count(), 16);
        assert_eq!(all_relations(&a, &b).filter(is_difunctional).count(), 12);
    }
}
