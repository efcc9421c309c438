//! Slow, direct checks used to cross-validate the fast ones.

use super::checks::is_pushout_square;
use crate::finset::{pair_name, pullback, CommutativeSquare, Cospan, FiniteSet, SetFunction, Span};

/// Every function table `n -> x`, in lexicographic order.
pub fn tables(n: usize, x: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if n > 0 && x == 0 {
        return out;
    }
    let mut t = vec![0; n];
    loop {
        out.push(t.clone());
        let mut i = n;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            t[i] += 1;
            if t[i] < x {
                break;
            }
            t[i] = 0;
        }
    }
}

/// Every function `domain -> codomain`.
pub fn all_functions(domain: &FiniteSet, codomain: &FiniteSet) -> Vec<SetFunction> {
    tables(domain.len(), codomain.len())
        .into_iter()
        .map(|t| SetFunction::from_table(domain.clone(), codomain.clone(), t).expect("in range"))
        .collect()
}

/// The universal property read literally: for every codomain of size at most
/// `max_codomain` and every pair `(u, v)` with `u∘f = v∘g`, exactly one map
/// `m` from the corner has `m∘h = u` and `m∘k = v`.
pub fn raw_pushout_property(square: &CommutativeSquare, max_codomain: usize) -> bool {
    let (f, g) = (square.span().left().table(), square.span().right().table());
    let (h, k) = (square.cospan().left().table(), square.cospan().right().table());
    let (na, nb, nd) = (h.len(), k.len(), square.corner().len());
    for x in 0..=max_codomain {
        let vs = tables(nb, x);
        for u in tables(na, x) {
            for v in &vs {
                if f.iter().zip(g).any(|(&a, &b)| u[a] != v[b]) {
                    continue;
                }
                let mut forced: Vec<Option<usize>> = vec![None; nd];
                let constraints = h.iter().zip(&u).chain(k.iter().zip(v));
                for (&d, &value) in constraints {
                    match forced[d] {
                        None => forced[d] = Some(value),
                        Some(y) if y != value => return false,
                        Some(_) => {}
                    }
                }
                // each unconstrained corner element has x choices
                if x != 1 && forced.iter().any(Option::is_none) {
                    return false;
                }
            }
        }
    }
    true
}

/// The square pulled back along `x: D' -> D`, with elements named
/// `(original,base)`.
pub fn pull_back_square(square: &CommutativeSquare, x: &SetFunction) -> CommutativeSquare {
    let along = |leg: &SetFunction| pullback(&Cospan::new(leg.clone(), x.clone()).expect("common codomain")).0;
    let a = along(square.cospan().left());
    let b = along(square.cospan().right());
    let c = along(&square.diagonal());
    let lift = |leg: &SetFunction, target: &Span| {
        SetFunction::from_table(
            c.apex().clone(),
            target.apex().clone(),
            (0..c.apex().len())
                .map(|i| {
                    let name = pair_name(
                        leg.codomain().element(leg.apply_index(c.left().apply_index(i))),
                        x.domain().element(c.right().apply_index(i)),
                    );
                    target.apex().index_of(&name).expect("lies over the same base point")
                })
                .collect(),
        )
        .expect("in range")
    };
    let span = Span::new(lift(square.span().left(), &a), lift(square.span().right(), &b)).expect("same apex");
    let cospan = Cospan::new(a.right().clone(), b.right().clone()).expect("same base");
    CommutativeSquare::new(span, cospan).expect("pullback of a commuting square")
}

/// Stability read literally: the pullback along every `x: D' -> D` with
/// `|D'| <= max_base` is a pushout. The identity is among these maps when
/// `|D| <= max_base`, so a non-pushout fails.
pub fn stable_under_all_pullbacks(square: &CommutativeSquare, max_base: usize) -> bool {
    (0..=max_base).all(|n| {
        let base = FiniteSet::numbered("p", n);
        all_functions(&base, square.corner())
            .iter()
            .all(|x| is_pushout_square(&pull_back_square(square, x)).holds())
    })
}
