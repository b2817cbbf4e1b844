//! Extension of a linear map on generators to a Lie morphism out of the
//! free Lie algebra.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::graded::{same_space, GradedSpace, TensorElement};
use crate::lie::{LiePresentation, LinearMap};
use crate::lincomb::Vector;
use crate::scalar::Scalar;

use super::algebra::{FreeLieElement, LieBasisWord};
use super::lyndon::LyndonWord;

/// The Lie morphism `L̂(V) → g` determined by a linear map `V → g`.
#[derive(Clone, Debug)]
pub struct LieMorphism {
    generators: Arc<GradedSpace>,
    psi: LinearMap,
    target: Arc<LiePresentation>,
    nilpotency_index: usize,
}

/// Checks `psi: V → g` and returns its extension to the free Lie algebra on
/// `generators`.
pub fn extend_to_morphism(
    generators: &Arc<GradedSpace>,
    psi: &LinearMap,
    target: &Arc<LiePresentation>,
) -> Result<LieMorphism> {
    if psi.source_dim() != generators.dim() {
        return Err(Error::SizeMismatch {
            expected: generators.dim(),
            found: psi.source_dim(),
        });
    }
    if !same_space(&psi.target, target.space()) {
        return Err(Error::SpaceMismatch);
    }
    for v in &psi.images {
        for &j in v.keys() {
            target.space().check_index(j)?;
        }
    }
    if !psi.preserves_degree(generators) {
        return Err(Error::DegreeMismatch(
            "generator images must have the generator's degree".into(),
        ));
    }
    let filtration = target.ensure_valid()?;
    Ok(LieMorphism {
        generators: generators.clone(),
        psi: psi.clone(),
        target: target.clone(),
        nilpotency_index: filtration.nilpotency_index,
    })
}

impl LieMorphism {
    pub fn target(&self) -> &Arc<LiePresentation> {
        &self.target
    }

    pub fn generators(&self) -> &Arc<GradedSpace> {
        &self.generators
    }

    fn lyndon_image(&self, w: &LyndonWord) -> Vector {
        if w.len() > self.nilpotency_index {
            return Vector::new();
        }
        match w.standard_factorization() {
            None => self.psi.images[w.word()[0]].clone(),
            Some((u, v)) => self
                .target
                .bracket_unchecked(&self.lyndon_image(&u), &self.lyndon_image(&v)),
        }
    }

    pub fn evaluate_basis(&self, b: &LieBasisWord) -> Result<Vector> {
        let w = match b {
            LieBasisWord::Lyndon(w) | LieBasisWord::Square(w) => w,
        };
        for &i in w.word().iter() {
            self.generators.check_index(i)?;
        }
        Ok(match b {
            LieBasisWord::Lyndon(w) => self.lyndon_image(w),
            LieBasisWord::Square(u) => {
                let x = self.lyndon_image(u);
                self.target.bracket_unchecked(&x, &x)
            }
        })
    }

    pub fn evaluate(&self, e: &FreeLieElement) -> Result<Vector> {
        let mut out = Vector::new();
        for (b, c) in e.terms() {
            out.add_scaled(&self.evaluate_basis(b)?, c);
        }
        Ok(out)
    }

    /// Evaluates a Lie polynomial given in the tensor algebra through the
    /// left-normed bracketing `a_1⋯a_n ↦ (1/n)[…[[a_1, a_2], a_3], …, a_n]`,
    /// which does not look at any basis of the free Lie algebra.
    pub fn evaluate_dynkin(&self, t: &TensorElement) -> Result<Vector> {
        if !same_space(t.space(), &self.generators) {
            return Err(Error::SpaceMismatch);
        }
        let mut out = Vector::new();
        for (w, c) in t.terms() {
            if w.order() == 0 {
                return Err(Error::NotLie(Vec::new()));
            }
            if w.order() > self.nilpotency_index {
                continue;
            }
            let mut acc = self.psi.images[w[0]].clone();
            for &l in &w[1..] {
                if acc.is_zero() {
                    break;
                }
                acc = self.target.bracket_unchecked(&acc, &self.psi.images[l]);
            }
            let n = Scalar::from_integer((w.order() as i64).into());
            out.add_scaled(&acc, &(c / n));
        }
        Ok(out)
    }

    /// Image of a single generator.
    pub fn on_generator(&self, i: usize) -> Result<Vector> {
        self.generators.check_index(i)?;
        Ok(self.psi.images[i].clone())
    }

    pub fn is_zero_map(&self) -> bool {
        self.psi.images.iter().all(|v| v.is_zero())
    }
}
