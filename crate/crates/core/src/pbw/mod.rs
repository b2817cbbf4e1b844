//! The symmetrization isomorphism `Φ^Σ: Ŝ(g) → Û(g)`, its inverse, and the
//! resulting splitting of the completed tensor algebra into signed-invariant
//! tensors and the closed enveloping ideal.

mod checks;

use std::collections::HashMap;
use std::sync::Arc;

use crate::envelope::{Normalizer, PbwMonomial, SElement, SymMonomial, UElement};
use crate::error::{Error, Result};
use crate::graded::{same_space, sorted_sequences, symmetrize_word, TensorElement, Word};
use crate::lie::{Adapted, FiltrationReport, LiePresentation};
use crate::lincomb::LinComb;
use crate::scalar::factorial;

pub use checks::{
    tower_consistency_check, BijectionReport, ContinuityReport, Failure, SplittingReport,
    TowerReport, TowerStage,
};

/// A valid nilpotent algebra on an adapted basis, with `Φ^Σ` tabulated on
/// every symmetric monomial of length at most `N`.
#[derive(Clone, Debug)]
pub struct PbwContext {
    presentation: Arc<LiePresentation>,
    algebra: Arc<LiePresentation>,
    rebased: Option<Adapted>,
    filtration: FiltrationReport,
    truncation: usize,
    sym_basis: Vec<Vec<SymMonomial>>,
    phi_images: HashMap<SymMonomial, LinComb<PbwMonomial>>,
}

/// `t = sigma_part + j_part`, exact on orders up to `certified`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitResult {
    pub sigma_part: TensorElement,
    pub j_part: TensorElement,
    pub certified: usize,
}

impl PbwContext {
    /// Validates `p` and re-bases it onto a basis adapted to its lower
    /// central series unless it already is.
    pub fn new(p: impl Into<Arc<LiePresentation>>, truncation: usize) -> Result<Self> {
        let presentation: Arc<LiePresentation> = p.into();
        let filtration = presentation.ensure_valid()?.clone();
        let (algebra, rebased, filtration) = if filtration.is_adapted() {
            (presentation.clone(), None, filtration)
        } else {
            let adapted = presentation.adapt()?;
            let algebra = Arc::new(adapted.presentation.clone());
            let filtration = algebra.lower_central_series()?.clone();
            (algebra, Some(adapted), filtration)
        };
        let space = algebra.space().clone();
        let sym_basis: Vec<Vec<SymMonomial>> = (0..=truncation)
            .map(|n| {
                sorted_sequences(space.dim(), n, &|i| space.is_odd(i))
                    .into_iter()
                    .map(SymMonomial::new_unchecked)
                    .collect()
            })
            .collect();
        let mut normalizer = Normalizer::new(algebra.clone());
        let mut phi_images = HashMap::new();
        for m in sym_basis.iter().flatten() {
            let image = normalizer.normalize(&symmetrize_word(m.word(), &space));
            phi_images.insert(m.clone(), image.map_keys(pbw));
        }
        Ok(Self {
            presentation,
            algebra,
            rebased,
            filtration,
            truncation,
            sym_basis,
            phi_images,
        })
    }

    /// The presentation the context was built from.
    pub fn presentation(&self) -> &Arc<LiePresentation> {
        &self.presentation
    }

    /// The adapted presentation all elements of this context live over.
    pub fn algebra(&self) -> &Arc<LiePresentation> {
        &self.algebra
    }

    /// The change of basis, when the given presentation was not adapted.
    pub fn rebased(&self) -> Option<&Adapted> {
        self.rebased.as_ref()
    }

    pub fn filtration(&self) -> &FiltrationReport {
        &self.filtration
    }

    pub fn nilpotency_index(&self) -> usize {
        self.filtration.nilpotency_index
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    /// Symmetric monomials of length exactly `n`.
    pub fn sym_monomials(&self, n: usize) -> &[SymMonomial] {
        self.sym_basis.get(n).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Output certified order `⌊G/k⌋` of the projections for input order `G`.
    pub fn certified_bound(&self, certified: usize) -> usize {
        certified / self.nilpotency_index().max(1)
    }

    pub fn normalizer(&self) -> Normalizer {
        Normalizer::new(self.algebra.clone())
    }

    /// Moves a tensor over the original presentation onto the adapted basis.
    pub fn to_working(&self, t: &TensorElement) -> Result<TensorElement> {
        if same_space(t.space(), self.algebra.space()) {
            return Ok(t.clone());
        }
        match &self.rebased {
            Some(a) if same_space(t.space(), self.presentation.space()) => {
                a.to_adapted.apply_tensor(t)
            }
            _ => Err(Error::SpaceMismatch),
        }
    }

    fn check_tensor(&self, t: &TensorElement) -> Result<()> {
        if !same_space(t.space(), self.algebra.space()) {
            return Err(Error::SpaceMismatch);
        }
        self.check_truncation(t.truncation())
    }

    fn check_truncation(&self, n: usize) -> Result<()> {
        if n > self.truncation {
            return Err(Error::BeyondTruncation {
                order: n,
                truncation: self.truncation,
            });
        }
        Ok(())
    }

    /// `Φ^Σ` on a symmetric monomial, as PBW coordinates.
    pub fn phi_image(&self, m: &SymMonomial) -> Option<&LinComb<PbwMonomial>> {
        self.phi_images.get(m)
    }

    /// Sends each monomial to the normal form of its symmetrization.
    pub fn phi_sigma(&self, s: &SElement) -> Result<UElement> {
        if !same_space(s.space(), self.algebra.space()) {
            return Err(Error::SpaceMismatch);
        }
        self.check_truncation(s.truncation())?;
        let mut terms = LinComb::new();
        for (m, c) in s.terms() {
            terms.add_scaled(&self.phi_images[m], c);
        }
        Ok(UElement::from_parts(
            self.algebra.clone(),
            s.truncation(),
            s.certified(),
            terms,
        ))
    }

    /// Triangular back-substitution: the top-length part of `Φ^Σ(m)` is
    /// `n!·m`, so peel off the longest monomials, divide by `n!`, subtract
    /// their image and repeat.
    pub fn phi_sigma_inverse(&self, u: &UElement) -> Result<SElement> {
        if !Arc::ptr_eq(u.algebra(), &self.algebra) && **u.algebra() != *self.algebra {
            return Err(Error::SpaceMismatch);
        }
        self.check_truncation(u.truncation())?;
        let mut rest = u.terms().clone();
        let mut out = LinComb::new();
        while let Some(n) = rest.keys().map(PbwMonomial::len).max() {
            let top: Vec<_> = rest
                .iter()
                .filter(|(m, _)| m.len() == n)
                .map(|(m, c)| {
                    (
                        SymMonomial::new_unchecked(m.word().clone()),
                        c / factorial(n),
                    )
                })
                .collect();
            for (m, c) in top {
                rest.add_scaled(&self.phi_images[&m], &-c.clone());
                out.add_term(m, c);
            }
        }
        let certified = self.certified_bound(u.certified());
        Ok(SElement::from_parts(
            self.algebra.space().clone(),
            u.truncation(),
            certified,
            out,
        ))
    }

    /// `π^Σ(t)` and `π^J(t) = t - π^Σ(t)`.
    pub fn project_sigma(&self, t: &TensorElement) -> Result<SplitResult> {
        self.project_sigma_with(t, &mut self.normalizer())
    }

    /// [`project_sigma`](Self::project_sigma) reusing a normalizer's cache
    /// across calls.
    pub fn project_sigma_with(
        &self,
        t: &TensorElement,
        normalizer: &mut Normalizer,
    ) -> Result<SplitResult> {
        self.check_tensor(t)?;
        if !Arc::ptr_eq(normalizer.algebra(), &self.algebra) {
            return Err(Error::SpaceMismatch);
        }
        let nf = normalizer.normal_form(t)?;
        let s = self.phi_sigma_inverse(&nf)?;
        let certified = self.certified_bound(t.certified());
        let sigma_part = s.symmetrized().with_certified(certified);
        let j_part = t.checked_sub(&sigma_part)?.with_certified(certified);
        Ok(SplitResult {
            sigma_part,
            j_part,
            certified,
        })
    }
}

fn pbw(w: &Word) -> PbwMonomial {
    PbwMonomial::new_unchecked(w.clone())
}
