use super::{at, require_mono, ExactnessError};
use crate::finset::{
    canonical_comparison, left_tag, pullback, right_tag, CommutativeSquare, Cospan, FiniteSet, SetFunction, Span,
};
use crate::mutant::Mutant;

/// Pushout of a span of monomorphisms `X <-m- C -n-> Y`.
///
/// The corner is `Y` together with the part of `X` outside the image of
/// `m`: every `y` becomes `r:y`, an `x = m(c)` becomes `r:n(c)`, and any
/// other `x` becomes `l:x`.
pub fn amalgamate(s: &Span) -> Result<CommutativeSquare, ExactnessError> {
    amalgamate_with(s, Mutant::None)
}

pub fn amalgamate_with(s: &Span, mutant: Mutant) -> Result<CommutativeSquare, ExactnessError> {
    if mutant != Mutant::SkipG2MonoCheck {
        require_mono(s.left(), "left")?;
        require_mono(s.right(), "right")?;
    }
    let (m, n) = (s.left(), s.right());
    let (x_set, y_set) = (s.left_foot(), s.right_foot());

    // index of an apex element over each x, if any
    let mut glued: Vec<Option<usize>> = vec![None; x_set.len()];
    for c in 0..s.apex().len() {
        glued[m.apply_index(c)].get_or_insert(c);
    }
    let name_of_x = |i: usize| match glued[i] {
        Some(c) => right_tag(y_set.element(n.apply_index(c))),
        None => left_tag(x_set.element(i)),
    };
    let corner = FiniteSet::new(
        (0..x_set.len())
            .filter(|&i| glued[i].is_none())
            .map(name_of_x)
            .chain(y_set.iter().map(right_tag)),
    )
    .map_err(at("amalgamated corner"))?;
    let h = SetFunction::from_rule(x_set.clone(), corner.clone(), |x| {
        name_of_x(x_set.index_of(x).expect("own element"))
    })
    .map_err(at("amalgamation left leg"))?;
    let k = SetFunction::from_rule(y_set.clone(), corner, right_tag).map_err(at("amalgamation right leg"))?;
    let cospan = Cospan::new(h, k).map_err(at("amalgamation cospan"))?;
    CommutativeSquare::new(s.clone(), cospan).map_err(at("amalgamation square"))
}

/// Union of two subobjects `m: M >-> C` and `n: N >-> C`: the pushout of
/// their intersection, and the induced (monic) map from it into `C`.
pub fn subobject_union(m: &SetFunction, n: &SetFunction) -> Result<(SetFunction, CommutativeSquare), ExactnessError> {
    require_mono(m, "left")?;
    require_mono(n, "right")?;
    let ambient = Cospan::new(m.clone(), n.clone())
        .map_err(|e| ExactnessError::Precondition(super::Precondition::Shape(e.to_string())))?;
    let (intersection, _) = pullback(&ambient);
    let square = amalgamate(&intersection)?;
    let induced = canonical_comparison(&square, &ambient).map_err(at("induced map P -> C"))?;
    if let Some((i, j)) = induced.collision() {
        return Err(ExactnessError::internal(
            "induced map P -> C",
            format!(
                "{} and {} have the same image",
                induced.domain().element(i),
                induced.domain().element(j)
            ),
        ));
    }
    Ok((induced, square))
}
