//! Canonical forms in the completed graded-symmetric algebra.

use std::fmt;
use std::sync::Arc;

use num_traits::One;

use crate::error::{Error, Result};
use crate::graded::{same_space, sorting_sign, symmetrize_word, GradedSpace, TensorElement, Word};
use crate::lincomb::LinComb;
use crate::scalar::{format_terms, Scalar};

/// A weakly increasing index sequence with no repeated odd index.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SymMonomial(Word);

impl SymMonomial {
    pub fn new(w: Word, space: &GradedSpace) -> Result<Self> {
        for &i in w.iter() {
            space.check_index(i)?;
        }
        if !is_sorted_monomial(&w, space) {
            return Err(Error::InvalidParameter(format!(
                "{w} is not weakly increasing with distinct odd letters"
            )));
        }
        Ok(Self(w))
    }

    pub(crate) fn new_unchecked(w: Word) -> Self {
        Self(w)
    }

    pub fn word(&self) -> &Word {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.order()
    }

    pub fn is_empty(&self) -> bool {
        self.0.order() == 0
    }
}

pub(crate) fn is_sorted_monomial(w: &[usize], space: &GradedSpace) -> bool {
    w.windows(2)
        .all(|p| p[0] < p[1] || (p[0] == p[1] && !space.is_odd(p[0])))
}

/// A truncated element of the completed graded-symmetric algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SElement {
    space: Arc<GradedSpace>,
    truncation: usize,
    certified: usize,
    terms: LinComb<SymMonomial>,
}

impl SElement {
    pub fn zero(space: Arc<GradedSpace>, truncation: usize) -> Self {
        Self {
            space,
            truncation,
            certified: truncation,
            terms: LinComb::new(),
        }
    }

    pub fn one(space: Arc<GradedSpace>, truncation: usize) -> Self {
        let terms = LinComb::from_term(SymMonomial(Word::empty()), Scalar::one());
        Self {
            space,
            truncation,
            certified: truncation,
            terms,
        }
    }

    /// The class of a word: sorted, with the Koszul sign of sorting, or zero
    /// when an odd letter repeats.
    pub fn from_word(space: Arc<GradedSpace>, truncation: usize, w: &Word) -> Result<Self> {
        for &i in w.iter() {
            space.check_index(i)?;
        }
        if w.order() > truncation {
            return Err(Error::BeyondTruncation {
                order: w.order(),
                truncation,
            });
        }
        let terms = match sorting_sign(w, &space) {
            Some((sorted, s)) => LinComb::from_term(SymMonomial(sorted), s),
            None => LinComb::new(),
        };
        Ok(Self {
            space,
            truncation,
            certified: truncation,
            terms,
        })
    }

    pub fn from_terms(
        space: Arc<GradedSpace>,
        truncation: usize,
        terms: LinComb<SymMonomial>,
    ) -> Result<Self> {
        for m in terms.keys() {
            SymMonomial::new(m.word().clone(), &space)?;
            if m.len() > truncation {
                return Err(Error::BeyondTruncation {
                    order: m.len(),
                    truncation,
                });
            }
        }
        Ok(Self {
            space,
            truncation,
            certified: truncation,
            terms,
        })
    }

    /// The class of a tensor element under the projection to coinvariants.
    pub fn from_tensor(t: &TensorElement) -> Self {
        let mut terms = LinComb::new();
        for (w, c) in t.terms() {
            if let Some((sorted, s)) = sorting_sign(w, t.space()) {
                terms.add_term(SymMonomial(sorted), c * s);
            }
        }
        Self {
            space: t.space().clone(),
            truncation: t.truncation(),
            certified: t.certified(),
            terms,
        }
    }

    pub(crate) fn from_parts(
        space: Arc<GradedSpace>,
        truncation: usize,
        certified: usize,
        terms: LinComb<SymMonomial>,
    ) -> Self {
        Self {
            space,
            truncation,
            certified,
            terms,
        }
    }

    pub fn space(&self) -> &Arc<GradedSpace> {
        &self.space
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    pub fn certified(&self) -> usize {
        self.certified
    }

    pub fn terms(&self) -> &LinComb<SymMonomial> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_zero()
    }

    pub fn with_certified(mut self, certified: usize) -> Self {
        self.certified = certified.min(self.truncation);
        self
    }

    /// Equality of all components of length at most `n`.
    pub fn agrees_through(&self, other: &Self, n: usize) -> bool {
        self.terms.filtered(|m| m.len() <= n) == other.terms.filtered(|m| m.len() <= n)
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if !same_space(&self.space, &other.space) {
            return Err(Error::SpaceMismatch);
        }
        if self.truncation != other.truncation {
            return Err(Error::TruncationMismatch {
                left: self.truncation,
                right: other.truncation,
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(Self {
            terms: self.terms.plus(&other.terms),
            certified: self.certified.min(other.certified),
            ..self.clone()
        })
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        Self {
            terms: self.terms.scaled(c),
            ..self.clone()
        }
    }

    /// Graded-commutative product.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        s_multiply(self, other)
    }

    /// Image under `w ↦ Σ_σ σ·w`, the symmetrization into signed-invariant
    /// tensors.
    pub fn symmetrized(&self) -> TensorElement {
        let terms = self
            .terms
            .flat_map(|m| symmetrize_word(m.word(), &self.space));
        TensorElement::from_parts(self.space.clone(), self.truncation, self.certified, terms)
    }

    pub fn render(&self) -> String {
        format_terms(self.terms.iter().map(|(m, c)| {
            (
                c.clone(),
                m.word().render(|i| self.space.name(i).to_string(), "·"),
            )
        }))
    }
}

impl fmt::Display for SElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Merges index sequences with the Koszul sign of the sorting permutation;
/// monomials with a repeated odd index vanish.
pub fn s_multiply(a: &SElement, b: &SElement) -> Result<SElement> {
    a.check_compatible(b)?;
    let mut terms = LinComb::new();
    for (x, cx) in &a.terms {
        for (y, cy) in &b.terms {
            if x.len() + y.len() > a.truncation {
                continue;
            }
            if let Some((sorted, s)) = sorting_sign(&x.word().concat(y.word()), &a.space) {
                terms.add_term(SymMonomial(sorted), cx * cy * s);
            }
        }
    }
    Ok(SElement {
        space: a.space.clone(),
        truncation: a.truncation,
        certified: a.certified.min(b.certified),
        terms,
    })
}
