use super::{compose, FinSetError, FiniteSet, SetFunction};

/// `A <-left- apex -right-> B`. Joint monicity is not required here; see
/// [`Span::is_jointly_monic`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Span {
    left: SetFunction,
    right: SetFunction,
}

impl Span {
    pub fn new(left: SetFunction, right: SetFunction) -> Result<Self, FinSetError> {
        if left.domain() != right.domain() {
            return Err(FinSetError::ShapeMismatch(format!(
                "span legs have different domains {} and {}",
                left.domain(),
                right.domain()
            )));
        }
        Ok(Self { left, right })
    }

    /// `A <- 0 -> B`.
    pub fn empty(a: &FiniteSet, b: &FiniteSet) -> Self {
        Self {
            left: SetFunction::from_empty(a),
            right: SetFunction::from_empty(b),
        }
    }

    pub fn apex(&self) -> &FiniteSet {
        self.left.domain()
    }

    pub fn left(&self) -> &SetFunction {
        &self.left
    }

    pub fn right(&self) -> &SetFunction {
        &self.right
    }

    pub fn left_foot(&self) -> &FiniteSet {
        self.left.codomain()
    }

    pub fn right_foot(&self) -> &FiniteSet {
        self.right.codomain()
    }

    /// Two distinct apex indices sent to the same pair of feet, if any.
    pub fn joint_collision(&self) -> Option<(usize, usize)> {
        let n = self.apex().len();
        (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).find(|&(i, j)| {
            self.left.apply_index(i) == self.left.apply_index(j)
                && self.right.apply_index(i) == self.right.apply_index(j)
        })
    }

    pub fn is_jointly_monic(&self) -> bool {
        self.joint_collision().is_none()
    }

    /// The same span with its legs exchanged.
    pub fn opposite(&self) -> Self {
        Self {
            left: self.right.clone(),
            right: self.left.clone(),
        }
    }
}

/// `A -left-> corner <-right- B`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cospan {
    left: SetFunction,
    right: SetFunction,
}

impl Cospan {
    pub fn new(left: SetFunction, right: SetFunction) -> Result<Self, FinSetError> {
        if left.codomain() != right.codomain() {
            return Err(FinSetError::ShapeMismatch(format!(
                "cospan legs have different codomains {} and {}",
                left.codomain(),
                right.codomain()
            )));
        }
        Ok(Self { left, right })
    }

    pub fn corner(&self) -> &FiniteSet {
        self.left.codomain()
    }

    pub fn left(&self) -> &SetFunction {
        &self.left
    }

    pub fn right(&self) -> &SetFunction {
        &self.right
    }

    /// Post-composes both legs with `m`.
    pub fn then(&self, m: &SetFunction) -> Result<Self, FinSetError> {
        Self::new(compose(m, &self.left)?, compose(m, &self.right)?)
    }
}

/// First apex index at which `cospan.left ∘ span.left` and
/// `cospan.right ∘ span.right` disagree. Fails if the diagram is not
/// well-shaped.
pub fn commutation_defect(span: &Span, cospan: &Cospan) -> Result<Option<usize>, FinSetError> {
    let via_left = compose(&cospan.left, &span.left)?;
    let via_right = compose(&cospan.right, &span.right)?;
    Ok(via_left.table().iter().zip(via_right.table()).position(|(x, y)| x != y))
}

/// A span and a cospan on the same feet with `h ∘ f = k ∘ g`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CommutativeSquare {
    span: Span,
    cospan: Cospan,
}

impl CommutativeSquare {
    pub fn new(span: Span, cospan: Cospan) -> Result<Self, FinSetError> {
        if let Some(c) = commutation_defect(&span, &cospan)? {
            let name = span.apex().element(c);
            let via_left = cospan
                .left
                .codomain()
                .element(cospan.left.apply_index(span.left.apply_index(c)));
            let via_right = cospan
                .right
                .codomain()
                .element(cospan.right.apply_index(span.right.apply_index(c)));
            return Err(FinSetError::NotCommuting {
                element: name.to_string(),
                via_left: via_left.to_string(),
                via_right: via_right.to_string(),
            });
        }
        Ok(Self { span, cospan })
    }

    pub fn span(&self) -> &Span {
        &self.span
    }

    pub fn cospan(&self) -> &Cospan {
        &self.cospan
    }

    pub fn apex(&self) -> &FiniteSet {
        self.span.apex()
    }

    pub fn corner(&self) -> &FiniteSet {
        self.cospan.corner()
    }

    /// The common composite `apex -> corner`.
    pub fn diagonal(&self) -> SetFunction {
        compose(&self.cospan.left, &self.span.left).expect("square is well-shaped")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(names: &[&str]) -> FiniteSet {
        FiniteSet::new(names.iter().copied()).unwrap()
    }

    #[test]
    fn span_shape_checked() {
        let f = SetFunction::identity(&set(&["a"]));
        let g = SetFunction::identity(&set(&["b"]));
        assert!(matches!(Span::new(f, g), Err(FinSetError::ShapeMismatch(_))));
    }

    #[test]
    fn square_must_commute() {
        let c = set(&["c"]);
        let d = set(&["x", "y"]);
        let span = Span::new(SetFunction::identity(&c), SetFunction::identity(&c)).unwrap();
        let cospan = Cospan::new(
            SetFunction::new(c.clone(), d.clone(), [("c", "x")]).unwrap(),
            SetFunction::new(c, d, [("c", "y")]).unwrap(),
        )
        .unwrap();
        assert_eq!(
            CommutativeSquare::new(span, cospan),
            Err(FinSetError::NotCommuting {
                element: "c".into(),
                via_left: "x".into(),
                via_right: "y".into()
            })
        );
    }

    #[test]
    fn joint_collision_found() {
        let c = set(&["c1", "c2"]);
        let one = set(&["p"]);
        let bang = SetFunction::new(c, one, [("c1", "p"), ("c2", "p")]).unwrap();
        let span = Span::new(bang.clone(), bang).unwrap();
        assert_eq!(span.joint_collision(), Some((0, 1)));
        assert!(Span::empty(&set(&["a"]), &set(&["b"])).is_jointly_monic());
    }
}
