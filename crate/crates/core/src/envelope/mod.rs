//! The completed universal enveloping algebra in PBW normal form, and the
//! completed graded-symmetric algebra.

mod normalizer;
mod symmetric;

use std::fmt;
use std::sync::Arc;

use num_traits::One;

use crate::error::{Error, Result};
use crate::graded::{same_space, TensorElement, Word};
use crate::lie::LiePresentation;
use crate::lincomb::{LinComb, Vector};
use crate::scalar::{format_terms, Scalar};

pub use normalizer::{normalize_with_strategy, reducible_positions, Normalizer};
pub(crate) use symmetric::is_sorted_monomial;
pub use symmetric::{s_multiply, SElement, SymMonomial};

/// An ordered PBW monomial: weakly increasing basis indices, odd indices at
/// most once.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PbwMonomial(Word);

impl PbwMonomial {
    pub fn new(w: Word, algebra: &LiePresentation) -> Result<Self> {
        for &i in w.iter() {
            algebra.space().check_index(i)?;
        }
        if !is_sorted_monomial(&w, algebra.space()) {
            return Err(Error::InvalidParameter(format!(
                "{w} is not an ordered PBW monomial"
            )));
        }
        Ok(Self(w))
    }

    pub(crate) fn new_unchecked(w: Word) -> Self {
        Self(w)
    }

    pub fn unit() -> Self {
        Self(Word::empty())
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

/// A truncated element of the completed enveloping algebra.
///
/// `certified` is inherited from the tensor representative: the element is
/// the class of a tensor known exactly through that order. Which PBW
/// coordinates this pins down is [`certified_length`](Self::certified_length).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UElement {
    algebra: Arc<LiePresentation>,
    truncation: usize,
    certified: usize,
    terms: LinComb<PbwMonomial>,
}

fn same_algebra(a: &Arc<LiePresentation>, b: &Arc<LiePresentation>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

impl UElement {
    pub fn zero(algebra: Arc<LiePresentation>, truncation: usize) -> Self {
        Self {
            algebra,
            truncation,
            certified: truncation,
            terms: LinComb::new(),
        }
    }

    pub fn one(algebra: Arc<LiePresentation>, truncation: usize) -> Self {
        Self {
            algebra,
            truncation,
            certified: truncation,
            terms: LinComb::from_term(PbwMonomial::unit(), Scalar::one()),
        }
    }

    pub fn from_terms(
        algebra: Arc<LiePresentation>,
        truncation: usize,
        terms: LinComb<PbwMonomial>,
    ) -> Result<Self> {
        for m in terms.keys() {
            PbwMonomial::new(m.word().clone(), &algebra)?;
            if m.len() > truncation {
                return Err(Error::BeyondTruncation {
                    order: m.len(),
                    truncation,
                });
            }
        }
        Ok(Self {
            algebra,
            truncation,
            certified: truncation,
            terms,
        })
    }

    pub(crate) fn from_parts(
        algebra: Arc<LiePresentation>,
        truncation: usize,
        certified: usize,
        terms: LinComb<PbwMonomial>,
    ) -> Self {
        Self {
            algebra,
            truncation,
            certified,
            terms,
        }
    }

    pub fn algebra(&self) -> &Arc<LiePresentation> {
        &self.algebra
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    pub fn certified(&self) -> usize {
        self.certified
    }

    pub fn terms(&self) -> &LinComb<PbwMonomial> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_zero()
    }

    pub fn coeff(&self, m: &PbwMonomial) -> Scalar {
        self.terms.coeff(m)
    }

    pub fn with_certified(mut self, certified: usize) -> Self {
        self.certified = certified.min(self.truncation);
        self
    }

    /// Largest PBW length whose coordinates are exact.
    ///
    /// On a basis adapted to the lower central series, a word of order `n`
    /// only produces monomials of filtration weight at least `n`, and a
    /// monomial of length `l` has weight at most `l·k`; so lengths up to
    /// `⌊G/k⌋` are exact. On other bases only the constant term is.
    pub fn certified_length(&self) -> usize {
        match self.algebra.lower_central_series() {
            Ok(f) if f.is_adapted() => self.certified / f.nilpotency_index.max(1),
            _ => 0,
        }
    }

    /// Coordinates of length at most `n`.
    pub fn up_to_length(&self, n: usize) -> LinComb<PbwMonomial> {
        self.terms.filtered(|m| m.len() <= n)
    }

    /// Equality on the lengths certified in both elements.
    pub fn agrees_certified(&self, other: &Self) -> bool {
        let n = self.certified_length().min(other.certified_length());
        self.up_to_length(n) == other.up_to_length(n)
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if !same_algebra(&self.algebra, &other.algebra) {
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

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(Self {
            terms: self.terms.minus(&other.terms),
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

    pub fn multiply(&self, other: &Self) -> Result<Self> {
        u_multiply(self, other)
    }

    /// The monomials read back as tensor words; `normal_form` maps this
    /// lift back to `self`.
    pub fn lift(&self) -> TensorElement {
        TensorElement::from_parts(
            self.algebra.space().clone(),
            self.truncation,
            self.certified,
            self.terms.map_keys(|m| m.word().clone()),
        )
    }

    pub fn render(&self) -> String {
        let space = self.algebra.space();
        format_terms(self.terms.iter().map(|(m, c)| {
            (
                c.clone(),
                m.word().render(|i| space.name(i).to_string(), "·"),
            )
        }))
    }
}

impl fmt::Display for UElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl Normalizer {
    /// Normal form of a tensor element over this normalizer's algebra.
    pub fn normal_form(&mut self, t: &TensorElement) -> Result<UElement> {
        if !same_space(t.space(), self.algebra().space()) {
            return Err(Error::SpaceMismatch);
        }
        let terms = self.normalize(t.terms());
        Ok(UElement {
            algebra: self.algebra().clone(),
            truncation: t.truncation(),
            certified: t.certified(),
            terms: terms.map_keys(|w| PbwMonomial(w.clone())),
        })
    }

    pub fn multiply(&mut self, a: &UElement, b: &UElement) -> Result<UElement> {
        a.check_compatible(b)?;
        if !same_algebra(&a.algebra, self.algebra()) {
            return Err(Error::SpaceMismatch);
        }
        let mut words = LinComb::new();
        for (x, cx) in &a.terms {
            for (y, cy) in &b.terms {
                if x.len() + y.len() <= a.truncation {
                    words.add_term(x.word().concat(y.word()), cx * cy);
                }
            }
        }
        let terms = self.normalize(&words);
        Ok(UElement {
            algebra: a.algebra.clone(),
            truncation: a.truncation,
            certified: a.certified.min(b.certified),
            terms: terms.map_keys(|w| PbwMonomial(w.clone())),
        })
    }
}

/// PBW normal form of the class of `t` in the enveloping algebra of `p`.
pub fn normal_form(t: &TensorElement, p: &Arc<LiePresentation>) -> Result<UElement> {
    Normalizer::new(p.clone()).normal_form(t)
}

pub fn u_multiply(a: &UElement, b: &UElement) -> Result<UElement> {
    Normalizer::new(a.algebra.clone()).multiply(a, b)
}

/// The canonical map `g → Û(g)`: a vector becomes a sum of length-one
/// monomials.
pub fn iota_embed(v: &Vector, p: &Arc<LiePresentation>, truncation: usize) -> Result<UElement> {
    for &i in v.keys() {
        p.space().check_index(i)?;
    }
    let terms = if truncation == 0 {
        LinComb::new()
    } else {
        v.map_keys(|&i| PbwMonomial(Word::letter(i)))
    };
    Ok(UElement {
        algebra: p.clone(),
        truncation,
        certified: truncation,
        terms,
    })
}

/// Whether `t` lies in the closed ideal generated by the enveloping
/// relations, as far as its certified components decide.
pub fn j_membership(t: &TensorElement, p: &Arc<LiePresentation>) -> Result<bool> {
    let nf = normal_form(t, p)?;
    Ok(nf.up_to_length(nf.certified_length()).is_zero())
}
