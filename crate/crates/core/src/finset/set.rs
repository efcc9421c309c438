use std::fmt;
use std::sync::Arc;

use super::FinSetError;

/// A finite set of named elements.
///
/// Elements are kept sorted and distinct, so two sets with the same members
/// have identical representations and compare equal. Element positions in the
/// sorted order are the indices used by [`SetFunction`](super::SetFunction)
/// tables and relation matrices.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FiniteSet {
    elements: Arc<[String]>,
}

impl FiniteSet {
    /// Builds a set from arbitrary names, rejecting duplicates.
    pub fn new<I, S>(elements: I) -> Result<Self, FinSetError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut names: Vec<String> = elements.into_iter().map(Into::into).collect();
        names.sort();
        if let Some(pair) = names.windows(2).find(|w| w[0] == w[1]) {
            return Err(FinSetError::DuplicateElement(pair[0].clone()));
        }
        Ok(Self { elements: names.into() })
    }

    pub fn empty() -> Self {
        Self {
            elements: Arc::from(Vec::new()),
        }
    }

    /// `{prefix1, ..., prefixn}`. Handy for enumeration.
    ///
    /// Indices are zero-padded when `n >= 10` so that the sorted order agrees
    /// with the numeric order.
    pub fn numbered(prefix: &str, n: usize) -> Self {
        let width = n.to_string().len();
        let names = (1..=n).map(|i| format!("{prefix}{i:0width$}"));
        Self::new(names).expect("numbered names are distinct")
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn element(&self, index: usize) -> &str {
        &self.elements[index]
    }

    pub fn iter(&self) -> impl ExactSizeIterator<Item = &str> + '_ {
        self.elements.iter().map(String::as_str)
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.elements.binary_search_by(|probe| probe.as_str().cmp(name)).ok()
    }

    pub fn contains(&self, name: &str) -> bool {
        self.index_of(name).is_some()
    }

    pub(crate) fn require(&self, name: &str) -> Result<usize, FinSetError> {
        self.index_of(name)
            .ok_or_else(|| FinSetError::UnknownElement(name.to_string()))
    }

    /// The subset of elements whose index satisfies `keep`.
    pub fn subset(&self, mut keep: impl FnMut(usize) -> bool) -> Self {
        let kept: Vec<String> = (0..self.len())
            .filter(|&i| keep(i))
            .map(|i| self.elements[i].clone())
            .collect();
        // already sorted and distinct
        Self { elements: kept.into() }
    }
}

impl fmt::Debug for FiniteSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for FiniteSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, e) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str(e)?;
        }
        f.write_str("}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_order() {
        let a = FiniteSet::new(["c", "a", "b"]).unwrap();
        let b = FiniteSet::new(["b", "c", "a"]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.elements(), ["a", "b", "c"]);
        assert_eq!(a.index_of("b"), Some(1));
        assert_eq!(a.index_of("z"), None);
    }

    #[test]
    fn duplicates_rejected() {
        assert_eq!(
            FiniteSet::new(["a", "b", "a"]),
            Err(FinSetError::DuplicateElement("a".into()))
        );
    }

    #[test]
    fn numbered_sorts_numerically() {
        let s = FiniteSet::numbered("x", 12);
        assert_eq!(s.element(1), "x02");
        assert_eq!(s.element(11), "x12");
        assert_eq!(FiniteSet::numbered("a", 3).to_string(), "{a1, a2, a3}");
    }

    #[test]
    fn empty_set() {
        let e = FiniteSet::empty();
        assert!(e.is_empty());
        assert_eq!(e, FiniteSet::new(Vec::<String>::new()).unwrap());
        assert_eq!(e.to_string(), "{}");
    }
}
