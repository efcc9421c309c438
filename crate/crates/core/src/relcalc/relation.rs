use std::fmt;

use super::RelError;
use crate::finset::FiniteSet;

/// A relation `source -|> target`, stored as a boolean matrix with one row
/// per source element and one column per target element, both in the sets'
/// canonical order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Relation {
    source: FiniteSet,
    target: FiniteSet,
    matrix: Vec<bool>,
}

impl Relation {
    pub fn new<'a, I>(source: FiniteSet, target: FiniteSet, pairs: I) -> Result<Self, RelError>
    where
        I: IntoIterator<Item = (&'a str, &'a str)>,
    {
        let mut r = Self::empty(&source, &target);
        for (a, b) in pairs {
            let i = source
                .index_of(a)
                .ok_or_else(|| RelError::UnknownElement(a.to_string()))?;
            let j = target
                .index_of(b)
                .ok_or_else(|| RelError::UnknownElement(b.to_string()))?;
            r.set(i, j, true);
        }
        Ok(r)
    }

    pub fn from_fn(source: &FiniteSet, target: &FiniteSet, mut related: impl FnMut(usize, usize) -> bool) -> Self {
        let mut matrix = Vec::with_capacity(source.len() * target.len());
        for i in 0..source.len() {
            for j in 0..target.len() {
                matrix.push(related(i, j));
            }
        }
        Self {
            source: source.clone(),
            target: target.clone(),
            matrix,
        }
    }

    /// Row-major matrix with `|source| * |target|` entries.
    pub fn from_matrix(source: &FiniteSet, target: &FiniteSet, matrix: Vec<bool>) -> Result<Self, RelError> {
        if matrix.len() != source.len() * target.len() {
            return Err(RelError::ShapeMismatch(format!(
                "matrix has {} entries, expected {}x{}",
                matrix.len(),
                source.len(),
                target.len()
            )));
        }
        Ok(Self {
            source: source.clone(),
            target: target.clone(),
            matrix,
        })
    }

    pub fn empty(source: &FiniteSet, target: &FiniteSet) -> Self {
        Self::from_fn(source, target, |_, _| false)
    }

    pub fn full(source: &FiniteSet, target: &FiniteSet) -> Self {
        Self::from_fn(source, target, |_, _| true)
    }

    /// The diagonal on `set`.
    pub fn identity(set: &FiniteSet) -> Self {
        Self::from_fn(set, set, |i, j| i == j)
    }

    pub fn source(&self) -> &FiniteSet {
        &self.source
    }

    pub fn target(&self) -> &FiniteSet {
        &self.target
    }

    pub fn matrix(&self) -> &[bool] {
        &self.matrix
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.matrix[i * self.target.len() + j]
    }

    pub(crate) fn set(&mut self, i: usize, j: usize, value: bool) {
        let cols = self.target.len();
        self.matrix[i * cols + j] = value;
    }

    pub fn contains(&self, a: &str, b: &str) -> bool {
        match (self.source.index_of(a), self.target.index_of(b)) {
            (Some(i), Some(j)) => self.get(i, j),
            _ => false,
        }
    }

    /// Related index pairs in row-major order.
    pub fn index_pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let cols = self.target.len();
        self.matrix
            .iter()
            .enumerate()
            .filter(|&(_, &x)| x)
            .map(move |(n, _)| (n / cols, n % cols))
    }

    pub fn pairs(&self) -> impl Iterator<Item = (&str, &str)> + '_ {
        self.index_pairs()
            .map(|(i, j)| (self.source.element(i), self.target.element(j)))
    }

    /// Number of related pairs.
    pub fn count(&self) -> usize {
        self.matrix.iter().filter(|&&x| x).count()
    }

    pub fn is_endo(&self) -> bool {
        self.source == self.target
    }

    pub(crate) fn same_shape(&self, other: &Self) -> Result<(), RelError> {
        if self.source != other.source || self.target != other.target {
            return Err(RelError::ShapeMismatch(format!(
                "relations {} -|> {} and {} -|> {}",
                self.source, self.target, other.source, other.target
            )));
        }
        Ok(())
    }
}

impl fmt::Debug for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// `{(a,b), ...}` in row-major order.
impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (n, (a, b)) in self.pairs().enumerate() {
            if n > 0 {
                f.write_str(", ")?;
            }
            write!(f, "({a},{b})")?;
        }
        f.write_str("}")
    }
}
