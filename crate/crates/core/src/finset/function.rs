use std::fmt;

use super::{FinSetError, FiniteSet};

/// A total function between finite sets, stored as a table of codomain
/// indices (one per domain element, in the domain's canonical order).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SetFunction {
    domain: FiniteSet,
    codomain: FiniteSet,
    table: Vec<usize>,
}

impl SetFunction {
    /// Builds a function from `(argument, value)` name pairs. Every domain
    /// element must be assigned exactly once.
    pub fn new<'a, I>(domain: FiniteSet, codomain: FiniteSet, assignments: I) -> Result<Self, FinSetError>
    where
        I: IntoIterator<Item = (&'a str, &'a str)>,
    {
        let mut table: Vec<Option<usize>> = vec![None; domain.len()];
        for (arg, value) in assignments {
            let i = domain.require(arg)?;
            let j = codomain.require(value)?;
            if table[i].replace(j).is_some() {
                return Err(FinSetError::MultiplyDefined(arg.to_string()));
            }
        }
        let table = table
            .into_iter()
            .enumerate()
            .map(|(i, v)| v.ok_or_else(|| FinSetError::NotTotal(domain.element(i).to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self {
            domain,
            codomain,
            table,
        })
    }

    pub fn from_table(domain: FiniteSet, codomain: FiniteSet, table: Vec<usize>) -> Result<Self, FinSetError> {
        if table.len() != domain.len() {
            return Err(FinSetError::TableLength {
                expected: domain.len(),
                found: table.len(),
            });
        }
        if let Some(&bad) = table.iter().find(|&&j| j >= codomain.len()) {
            return Err(FinSetError::IndexOutOfRange(bad));
        }
        Ok(Self {
            domain,
            codomain,
            table,
        })
    }

    /// Builds a function by evaluating `rule` on each domain element name.
    pub fn from_rule<F, S>(domain: FiniteSet, codomain: FiniteSet, mut rule: F) -> Result<Self, FinSetError>
    where
        F: FnMut(&str) -> S,
        S: AsRef<str>,
    {
        let table = domain
            .iter()
            .map(|x| codomain.require(rule(x).as_ref()))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self {
            domain,
            codomain,
            table,
        })
    }

    pub fn identity(set: &FiniteSet) -> Self {
        Self {
            domain: set.clone(),
            codomain: set.clone(),
            table: (0..set.len()).collect(),
        }
    }

    /// The unique map out of the empty set.
    pub fn from_empty(codomain: &FiniteSet) -> Self {
        Self {
            domain: FiniteSet::empty(),
            codomain: codomain.clone(),
            table: Vec::new(),
        }
    }

    pub fn domain(&self) -> &FiniteSet {
        &self.domain
    }

    pub fn codomain(&self) -> &FiniteSet {
        &self.codomain
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn apply_index(&self, i: usize) -> usize {
        self.table[i]
    }

    pub fn apply(&self, x: &str) -> Option<&str> {
        self.domain.index_of(x).map(|i| self.codomain.element(self.table[i]))
    }

    /// `(argument, value)` name pairs in domain order.
    pub fn pairs(&self) -> impl Iterator<Item = (&str, &str)> + '_ {
        self.table
            .iter()
            .enumerate()
            .map(|(i, &j)| (self.domain.element(i), self.codomain.element(j)))
    }

    /// Indices of the domain elements sent to codomain index `j`.
    pub fn preimage(&self, j: usize) -> impl Iterator<Item = usize> + '_ {
        self.table
            .iter()
            .enumerate()
            .filter(move |&(_, &v)| v == j)
            .map(|(i, _)| i)
    }

    /// Two distinct domain indices with the same image, if any.
    pub fn collision(&self) -> Option<(usize, usize)> {
        let mut seen = vec![None; self.codomain.len()];
        for (i, &j) in self.table.iter().enumerate() {
            if let Some(first) = seen[j] {
                return Some((first, i));
            }
            seen[j] = Some(i);
        }
        None
    }

    /// A codomain index outside the image, if any.
    pub fn unreached(&self) -> Option<usize> {
        let mut hit = vec![false; self.codomain.len()];
        for &j in &self.table {
            hit[j] = true;
        }
        hit.iter().position(|h| !h)
    }

    pub fn is_mono(&self) -> bool {
        self.collision().is_none()
    }

    pub fn is_epi(&self) -> bool {
        self.unreached().is_none()
    }

    pub fn is_iso(&self) -> bool {
        self.is_mono() && self.is_epi()
    }

    /// The inverse of a bijection.
    pub fn inverse(&self) -> Option<Self> {
        if !self.is_iso() {
            return None;
        }
        let mut table = vec![0; self.table.len()];
        for (i, &j) in self.table.iter().enumerate() {
            table[j] = i;
        }
        Some(Self {
            domain: self.codomain.clone(),
            codomain: self.domain.clone(),
            table,
        })
    }

    /// Restricts to subsets of the domain and codomain. Every retained
    /// argument must land in the retained codomain subset.
    pub fn restrict(&self, domain: &FiniteSet, codomain: &FiniteSet) -> Result<Self, FinSetError> {
        let table = domain
            .iter()
            .map(|x| {
                let i = self.domain.require(x)?;
                codomain.require(self.codomain.element(self.table[i]))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self {
            domain: domain.clone(),
            codomain: codomain.clone(),
            table,
        })
    }
}

/// `g ∘ f`: first `f`, then `g`.
pub fn compose(g: &SetFunction, f: &SetFunction) -> Result<SetFunction, FinSetError> {
    if f.codomain != g.domain {
        return Err(FinSetError::CompositionMismatch {
            left: f.codomain.to_string(),
            right: g.domain.to_string(),
        });
    }
    Ok(SetFunction {
        domain: f.domain.clone(),
        codomain: g.codomain.clone(),
        table: f.table.iter().map(|&j| g.table[j]).collect(),
    })
}

impl fmt::Debug for SetFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// `{x |-> y, ...}` in domain order.
impl fmt::Display for SetFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (n, (x, y)) in self.pairs().enumerate() {
            if n > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{x} |-> {y}")?;
        }
        f.write_str("}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(names: &[&str]) -> FiniteSet {
        FiniteSet::new(names.iter().copied()).unwrap()
    }

    #[test]
    fn identity_is_neutral() {
        let a = set(&["a1", "a2"]);
        let b = set(&["b1", "b2", "b3"]);
        let f = SetFunction::new(a.clone(), b.clone(), [("a1", "b3"), ("a2", "b1")]).unwrap();
        assert_eq!(compose(&SetFunction::identity(&b), &f).unwrap(), f);
        assert_eq!(compose(&f, &SetFunction::identity(&a)).unwrap(), f);
    }

    #[test]
    fn singleton_chase() {
        let f = SetFunction::new(set(&["a"]), set(&["b"]), [("a", "b")]).unwrap();
        let g = SetFunction::new(set(&["b"]), set(&["c"]), [("b", "c")]).unwrap();
        let gf = compose(&g, &f).unwrap();
        assert_eq!(gf.apply("a"), Some("c"));
    }

    #[test]
    fn composition_mismatch() {
        let f = SetFunction::identity(&set(&["a"]));
        let g = SetFunction::identity(&set(&["b"]));
        assert!(matches!(compose(&g, &f), Err(FinSetError::CompositionMismatch { .. })));
    }

    #[test]
    fn mono_epi_iso() {
        let ab = set(&["a", "b"]);
        let id = SetFunction::identity(&ab);
        assert!(id.is_mono() && id.is_epi() && id.is_iso());

        let constant = SetFunction::new(ab.clone(), set(&["c"]), [("a", "c"), ("b", "c")]).unwrap();
        assert!(constant.is_epi());
        assert!(!constant.is_mono());

        let inclusion = SetFunction::new(set(&["a"]), ab, [("a", "a")]).unwrap();
        assert!(inclusion.is_mono());
        assert!(!inclusion.is_epi());
    }

    #[test]
    fn totality_and_single_valuedness() {
        let a = set(&["a1", "a2"]);
        let b = set(&["b"]);
        assert_eq!(
            SetFunction::new(a.clone(), b.clone(), [("a1", "b")]),
            Err(FinSetError::NotTotal("a2".into()))
        );
        assert_eq!(
            SetFunction::new(a.clone(), b.clone(), [("a1", "b"), ("a1", "b"), ("a2", "b")]),
            Err(FinSetError::MultiplyDefined("a1".into()))
        );
        assert_eq!(
            SetFunction::new(a, b, [("a1", "b"), ("a2", "z")]),
            Err(FinSetError::UnknownElement("z".into()))
        );
    }

    #[test]
    fn empty_domain_is_total() {
        let b = set(&["b"]);
        let f = SetFunction::from_empty(&b);
        assert!(f.is_mono());
        assert!(!f.is_epi());
        let e = SetFunction::identity(&FiniteSet::empty());
        assert!(e.is_iso());
    }

    #[test]
    fn inverse_of_bijection() {
        let a = set(&["x", "y"]);
        let swap = SetFunction::new(a.clone(), a.clone(), [("x", "y"), ("y", "x")]).unwrap();
        let inv = swap.inverse().unwrap();
        assert_eq!(compose(&inv, &swap).unwrap(), SetFunction::identity(&a));
    }
}
