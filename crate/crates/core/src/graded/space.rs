use std::collections::HashSet;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BasisElement {
    pub name: String,
    pub degree: i64,
}

impl BasisElement {
    pub fn new(name: impl Into<String>, degree: i64) -> Self {
        Self {
            name: name.into(),
            degree,
        }
    }
}

/// A finite-dimensional integer-graded vector space with a named basis.
///
/// Basis elements are addressed by zero-based position; external formats
/// number them from one.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct GradedSpace {
    basis: Vec<BasisElement>,
}

impl GradedSpace {
    pub fn new(basis: Vec<BasisElement>) -> Result<Self> {
        let mut seen = HashSet::new();
        for b in &basis {
            if b.name.is_empty() {
                return Err(Error::InvalidSpace("empty basis name".into()));
            }
            if !seen.insert(b.name.as_str()) {
                return Err(Error::InvalidSpace(format!(
                    "duplicate basis name {:?}",
                    b.name
                )));
            }
        }
        Ok(Self { basis })
    }

    /// All basis elements in degree zero, named by `names`.
    pub fn even<S: AsRef<str>>(names: &[S]) -> Result<Self> {
        Self::new(
            names
                .iter()
                .map(|n| BasisElement::new(n.as_ref(), 0))
                .collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[BasisElement] {
        &self.basis
    }

    pub fn degree(&self, i: usize) -> i64 {
        self.basis[i].degree
    }

    pub fn is_odd(&self, i: usize) -> bool {
        self.basis[i].degree.rem_euclid(2) == 1
    }

    pub fn name(&self, i: usize) -> &str {
        &self.basis[i].name
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.basis.iter().position(|b| b.name == name)
    }

    pub fn check_index(&self, i: usize) -> Result<()> {
        if i < self.dim() {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange {
                index: i,
                dim: self.dim(),
            })
        }
    }

    /// Total degree of a sequence of basis indices.
    pub fn word_degree(&self, letters: &[usize]) -> i64 {
        letters.iter().map(|&i| self.degree(i)).sum()
    }

    pub fn word_is_odd(&self, letters: &[usize]) -> bool {
        letters.iter().filter(|&&i| self.is_odd(i)).count() % 2 == 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_duplicate_and_empty_names() {
        assert!(GradedSpace::even(&["x", "x"]).is_err());
        assert!(GradedSpace::even(&[""]).is_err());
        let v =
            GradedSpace::new(vec![BasisElement::new("a", -3), BasisElement::new("b", 2)]).unwrap();
        assert!(v.is_odd(0));
        assert!(!v.is_odd(1));
        assert_eq!(v.index_of("b"), Some(1));
    }
}
