use std::fmt;

use crate::finset::{CommutativeSquare, SetFunction, Span};

/// A checked property: either its witness, or an element-level
/// counterexample.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict<W, F> {
    Holds(W),
    Fails(F),
}

impl<W, F> Verdict<W, F> {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds(_))
    }

    pub fn witness(&self) -> Option<&W> {
        match self {
            Verdict::Holds(w) => Some(w),
            Verdict::Fails(_) => None,
        }
    }

    pub fn failure(&self) -> Option<&F> {
        match self {
            Verdict::Holds(_) => None,
            Verdict::Fails(f) => Some(f),
        }
    }
}

/// The canonical pushout of the span and the bijection from its corner to
/// the square's corner.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PushoutWitness {
    pub canonical: CommutativeSquare,
    pub comparison: SetFunction,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PushoutFailure {
    /// The square does not commute at this apex element.
    NotCommuting { element: String },
    /// The canonical construction itself does not commute at this apex
    /// element (only possible with a fault switched in).
    CanonicalDefect { element: String },
    /// A corner element reached by neither leg.
    Unreached { element: String },
    /// Two canonical classes identified in the square's corner.
    Merged {
        first: String,
        second: String,
        image: String,
    },
    /// No comparison map could be formed.
    NoComparison { detail: String },
}

impl fmt::Display for PushoutFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::NotCommuting { element } => write!(f, "square does not commute at {element}"),
            Self::CanonicalDefect { element } => {
                write!(f, "canonical pushout does not commute at {element}")
            }
            Self::Unreached { element } => write!(f, "corner element {element} is reached by neither leg"),
            Self::Merged { first, second, image } => {
                write!(
                    f,
                    "{first} and {second} are distinct in the pushout but both map to {image}"
                )
            }
            Self::NoComparison { detail } => write!(f, "no comparison map: {detail}"),
        }
    }
}

/// The pullback of the cospan and the bijection from the square's apex to
/// it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PullbackWitness {
    pub pullback: Span,
    pub pairing: SetFunction,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PullbackFailure {
    NotCommuting {
        element: String,
    },
    /// `h(a) = k(b)` but no apex element lies over `(a, b)`.
    MissingPair {
        a: String,
        b: String,
    },
    /// Two apex elements over the same pair.
    Collision {
        first: String,
        second: String,
    },
}

impl fmt::Display for PullbackFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::NotCommuting { element } => write!(f, "square does not commute at {element}"),
            Self::MissingPair { a, b } => {
                write!(f, "({a},{b}) lies in the pullback but no apex element maps to it")
            }
            Self::Collision { first, second } => {
                write!(f, "apex elements {first} and {second} map to the same pair")
            }
        }
    }
}

/// The fiber of a square over one corner element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberReport {
    pub base_element: String,
    pub fiber_square: CommutativeSquare,
    pub fiber_is_pushout: Verdict<PushoutWitness, PushoutFailure>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StabilityFailure {
    NotAPushout(PushoutFailure),
    Fiber(Box<FiberReport>),
}

impl fmt::Display for StabilityFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::NotAPushout(p) => write!(f, "not a pushout, so stability is not defined: {p}"),
            Self::Fiber(r) => match r.fiber_is_pushout.failure() {
                Some(p) => write!(f, "fiber over {} is not a pushout: {p}", r.base_element),
                None => write!(f, "fiber over {} is not a pushout", r.base_element),
            },
        }
    }
}

/// For each corner element, a tagged foot element (`l:a` or `r:b`) that
/// reaches it.
pub type CoverWitness = Vec<(String, String)>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Unreached {
    pub element: String,
}

impl fmt::Display for Unreached {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} is reached by neither leg", self.element)
    }
}
