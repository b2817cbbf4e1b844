//! Exhaustive checkers over basis words: the splitting, the continuity
//! bound, bijectivity of `Φ^Σ`, and compatibility with quotient towers.
//!
//! Basis words are finite tensors known exactly, so the checkers compare
//! every component up to the truncation order, which is stronger than
//! comparing certified components only.

use std::fmt;
use std::sync::Arc;

use crate::envelope::{PbwMonomial, SElement, UElement};
use crate::error::{Error, Result};
use crate::graded::{all_words, TensorElement, Word};
use crate::lie::{LiePresentation, LinearMap};
use crate::linalg::rank_sparse;
use crate::lincomb::LinComb;
use crate::scalar::factorial;

use super::PbwContext;

/// A failed check on one input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub subject: String,
    pub reason: String,
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.subject, self.reason)
    }
}

fn fail(failures: &mut Vec<Failure>, subject: &str, reason: impl Into<String>) {
    failures.push(Failure {
        subject: subject.to_string(),
        reason: reason.into(),
    });
}

fn render_word(w: &Word, space: &crate::graded::GradedSpace) -> String {
    w.render(|i| space.name(i).to_string(), "⊗")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplittingReport {
    pub truncation: usize,
    pub certified_order: usize,
    pub words_checked: usize,
    /// Rank of the invariant parts of all words of order at most
    /// `certified_order`.
    pub rank: usize,
    /// Number of symmetric monomials of length at most `certified_order`.
    pub expected_rank: usize,
    pub failures: Vec<Failure>,
}

impl SplittingReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.rank == self.expected_rank
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContinuityReport {
    pub n: usize,
    pub r: usize,
    /// Order `n·k + r` of the words checked.
    pub order: usize,
    pub words_checked: usize,
    pub failures: Vec<Failure>,
}

impl ContinuityReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BijectionReport {
    pub truncation: usize,
    /// Number of symmetric monomials per length `0..=N`.
    pub block_sizes: Vec<usize>,
    pub monomials_checked: usize,
    pub failures: Vec<Failure>,
}

impl BijectionReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl PbwContext {
    /// Over every basis word of order at most `N`: the two parts add up to
    /// the word, the invariant part is fixed by all signed permutations, the
    /// ideal part has zero normal form, and projecting twice changes
    /// nothing. Also compares the rank of the invariant parts with the
    /// number of symmetric monomials on the certified range.
    pub fn splitting_check(&self) -> SplittingReport {
        let space = self.algebra().space().clone();
        let n_max = self.truncation();
        let certified_order = self.certified_bound(n_max);
        let mut normalizer = self.normalizer();
        let mut failures = Vec::new();
        let mut words_checked = 0;
        let mut low_images = Vec::new();
        for n in 0..=n_max {
            for w in all_words(space.dim(), n) {
                words_checked += 1;
                let subject = render_word(&w, &space);
                let t = TensorElement::from_word(space.clone(), n_max, w).expect("word fits");
                let split = match self.project_sigma_with(&t, &mut normalizer) {
                    Ok(s) => s,
                    Err(e) => {
                        fail(&mut failures, &subject, e.to_string());
                        continue;
                    }
                };
                let sum = split.sigma_part.terms().plus(split.j_part.terms());
                if &sum != t.terms() {
                    fail(&mut failures, &subject, "sigma + j differs from the input");
                }
                if let Some(order) = (0..=n_max).find(|&d| !split.sigma_part.is_signed_invariant(d))
                {
                    fail(
                        &mut failures,
                        &subject,
                        format!("invariant part not symmetric in order {order}"),
                    );
                }
                match normalizer.normal_form(&split.j_part) {
                    Ok(nf) if nf.is_zero() => {}
                    Ok(nf) => fail(
                        &mut failures,
                        &subject,
                        format!("ideal part has normal form {nf}"),
                    ),
                    Err(e) => fail(&mut failures, &subject, e.to_string()),
                }
                match self.project_sigma_with(&split.sigma_part, &mut normalizer) {
                    Ok(again) if again.sigma_part.terms() == split.sigma_part.terms() => {}
                    Ok(_) => fail(&mut failures, &subject, "projection is not idempotent"),
                    Err(e) => fail(&mut failures, &subject, e.to_string()),
                }
                if n <= certified_order {
                    low_images.push(split.sigma_part.terms().clone());
                }
            }
        }
        let expected_rank = (0..=certified_order)
            .map(|n| self.sym_monomials(n).len())
            .sum();
        SplittingReport {
            truncation: n_max,
            certified_order,
            words_checked,
            rank: rank_sparse(&low_images),
            expected_rank,
            failures,
        }
    }

    /// For every basis word of order `n·k + r`: the invariant part has no
    /// component of order `1..=n`, and every component has filtration
    /// weight at least `n·k + r`.
    pub fn continuity_bound_check(&self, n: usize, r: usize) -> Result<ContinuityReport> {
        let k = self.nilpotency_index();
        let order = n * k + r;
        if r == 0 || order > self.truncation() {
            return Err(Error::InvalidParameter(format!(
                "need r >= 1 and n*k + r <= {} (n={n}, k={k}, r={r})",
                self.truncation()
            )));
        }
        let space = self.algebra().space().clone();
        let mut normalizer = self.normalizer();
        let mut failures = Vec::new();
        let words = all_words(space.dim(), order);
        for w in &words {
            let subject = render_word(w, &space);
            let t = TensorElement::from_word(space.clone(), self.truncation(), w.clone())
                .expect("word fits");
            let sigma = match self.project_sigma_with(&t, &mut normalizer) {
                Ok(s) => s.sigma_part,
                Err(e) => {
                    fail(&mut failures, &subject, e.to_string());
                    continue;
                }
            };
            if let Some(d) = (1..=n).find(|&d| !sigma.homogeneous_part(d).is_zero()) {
                fail(
                    &mut failures,
                    &subject,
                    format!("invariant part has a component of order {d}"),
                );
            }
            if let Some(v) = sigma
                .terms()
                .keys()
                .find(|v| self.filtration().word_weight(v) < order)
            {
                fail(
                    &mut failures,
                    &subject,
                    format!(
                        "component {} has weight below {order}",
                        render_word(v, &space)
                    ),
                );
            }
        }
        Ok(ContinuityReport {
            n,
            r,
            order,
            words_checked: words.len(),
            failures,
        })
    }

    /// Every admissible case `n ≥ 1, r ≥ 1, n·k + r ≤ N`.
    pub fn continuity_table(&self) -> Vec<ContinuityReport> {
        let k = self.nilpotency_index().max(1);
        let mut out = Vec::new();
        for n in 1..=self.truncation() / k {
            for r in 1..=self.truncation() - n * k {
                out.push(self.continuity_bound_check(n, r).expect("admissible case"));
            }
        }
        out
    }

    /// Block-triangularity of `Φ^Σ` with diagonal blocks `n!·id`, and both
    /// composites with the inverse equal to the identity, on every monomial
    /// of length at most `N`.
    pub fn bijection_check(&self) -> BijectionReport {
        let space = self.algebra().space().clone();
        let n_max = self.truncation();
        let mut failures = Vec::new();
        let mut checked = 0;
        for n in 0..=n_max {
            for m in self.sym_monomials(n) {
                checked += 1;
                let subject = m.word().render(|i| space.name(i).to_string(), "·");
                let image = &self.phi_images[m];
                let diagonal = PbwMonomial::new_unchecked(m.word().clone());
                if image.coeff(&diagonal) != factorial(n) {
                    fail(
                        &mut failures,
                        &subject,
                        format!("diagonal coefficient is not {n}!"),
                    );
                }
                if image.keys().any(|p| p.len() >= n && *p != diagonal) {
                    fail(
                        &mut failures,
                        &subject,
                        "image has another term of length >= n",
                    );
                }
                let s = SElement::from_parts(
                    space.clone(),
                    n_max,
                    n_max,
                    LinComb::from_term(m.clone(), factorial(0)),
                );
                let round = self.phi_sigma(&s).and_then(|u| self.phi_sigma_inverse(&u));
                match round {
                    Ok(back) if back.terms() == s.terms() => {}
                    Ok(back) => fail(
                        &mut failures,
                        &subject,
                        format!("inverse after phi gives {back}"),
                    ),
                    Err(e) => fail(&mut failures, &subject, e.to_string()),
                }
                let u = UElement::from_parts(
                    self.algebra().clone(),
                    n_max,
                    n_max,
                    LinComb::from_term(diagonal.clone(), factorial(0)),
                );
                let round = self.phi_sigma_inverse(&u).and_then(|s| self.phi_sigma(&s));
                match round {
                    Ok(back) if back.terms() == u.terms() => {}
                    Ok(back) => fail(
                        &mut failures,
                        &subject,
                        format!("phi after inverse gives {back}"),
                    ),
                    Err(e) => fail(&mut failures, &subject, e.to_string()),
                }
            }
        }
        BijectionReport {
            truncation: n_max,
            block_sizes: (0..=n_max).map(|n| self.sym_monomials(n).len()).collect(),
            monomials_checked: checked,
            failures,
        }
    }
}

/// One stage `g / F_level` of a quotient tower.
#[derive(Clone, Debug)]
pub struct TowerStage {
    pub level: usize,
    pub presentation: Arc<LiePresentation>,
    /// Projection from `g`.
    pub projection: LinearMap,
}

#[derive(Clone, Debug)]
pub struct TowerReport {
    pub truncation: usize,
    /// Stages by decreasing level.
    pub stages: Vec<TowerStage>,
    pub words_checked: usize,
    pub monomials_checked: usize,
    pub failures: Vec<Failure>,
}

impl TowerReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Builds the quotients `g / F_l` for the given levels and checks, for each
/// pair of consecutive stages, that the bonding projection commutes with
/// normal forms, with `Φ^Σ`, and with the projection `π^Σ`, on all words
/// of order at most `N`.
pub fn tower_consistency_check(
    p: &LiePresentation,
    levels: &[usize],
    truncation: usize,
) -> Result<TowerReport> {
    p.ensure_valid()?;
    if levels.is_empty() {
        return Err(Error::InvalidParameter("no tower levels given".into()));
    }
    let mut levels = levels.to_vec();
    levels.sort_unstable_by(|a, b| b.cmp(a));
    levels.dedup();
    let mut stages = Vec::with_capacity(levels.len());
    for &level in &levels {
        let (q, projection) = p.quotient_by_filtration(level)?;
        stages.push(TowerStage {
            level,
            presentation: Arc::new(q),
            projection,
        });
    }
    let contexts = stages
        .iter()
        .map(|s| PbwContext::new(s.presentation.clone(), truncation))
        .collect::<Result<Vec<_>>>()?;

    let mut failures = Vec::new();
    let mut words_checked = 0;
    let mut monomials_checked = 0;
    for (pair, ctx) in stages.windows(2).zip(contexts.windows(2)) {
        let (upper, lower) = (&pair[0], &pair[1]);
        let (hi, lo) = (&ctx[0], &ctx[1]);
        let label = format!("g/F_{} -> g/F_{}", upper.level, lower.level);
        let (bonded, bonding) = upper.presentation.quotient_by_filtration(lower.level)?;
        if bonded != *lower.presentation {
            fail(
                &mut failures,
                &label,
                "quotient of the upper stage differs from the lower stage",
            );
            continue;
        }
        if bonding.compose(&upper.projection).images != lower.projection.images {
            fail(
                &mut failures,
                &label,
                "bonding map does not commute with the projections from g",
            );
        }
        if !upper
            .presentation
            .is_morphism_to(&lower.presentation, &bonding)
        {
            fail(&mut failures, &label, "bonding map is not a Lie morphism");
        }
        let bonding = LinearMap {
            target: lo.algebra().space().clone(),
            images: bonding.images,
        };
        let space = hi.algebra().space().clone();
        let (mut nf_hi, mut nf_lo) = (hi.normalizer(), lo.normalizer());
        let push_u = |u: &UElement, nf_lo: &mut crate::envelope::Normalizer| -> Result<UElement> {
            nf_lo.normal_form(&bonding.apply_tensor(&u.lift())?)
        };
        for n in 0..=truncation {
            for w in all_words(space.dim(), n) {
                words_checked += 1;
                let subject = format!("{label}, {}", render_word(&w, &space));
                let t = TensorElement::from_word(space.clone(), truncation, w).expect("word fits");
                let down = bonding.apply_tensor(&t)?;
                let upstairs = push_u(&nf_hi.normal_form(&t)?, &mut nf_lo)?;
                if upstairs.terms() != nf_lo.normal_form(&down)?.terms() {
                    fail(
                        &mut failures,
                        &subject,
                        "normal form does not commute with the bonding map",
                    );
                }
                let sigma_hi = hi.project_sigma_with(&t, &mut nf_hi)?.sigma_part;
                let sigma_lo = lo.project_sigma_with(&down, &mut nf_lo)?.sigma_part;
                if bonding.apply_tensor(&sigma_hi)?.terms() != sigma_lo.terms() {
                    fail(
                        &mut failures,
                        &subject,
                        "projection does not commute with the bonding map",
                    );
                }
            }
            for m in hi.sym_monomials(n) {
                monomials_checked += 1;
                let subject = format!(
                    "{label}, {}",
                    m.word().render(|i| space.name(i).to_string(), "·")
                );
                let word = TensorElement::from_word(space.clone(), truncation, m.word().clone())
                    .expect("fits");
                let s_hi = SElement::from_tensor(&word);
                let s_lo = SElement::from_tensor(&bonding.apply_tensor(&word)?);
                let upstairs = push_u(&hi.phi_sigma(&s_hi)?, &mut nf_lo)?;
                if upstairs.terms() != lo.phi_sigma(&s_lo)?.terms() {
                    fail(
                        &mut failures,
                        &subject,
                        "phi does not commute with the bonding map",
                    );
                }
            }
        }
    }
    Ok(TowerReport {
        truncation,
        stages,
        words_checked,
        monomials_checked,
        failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::{make_example, ExampleKind};

    #[test]
    fn heisenberg_splitting() {
        let ctx = PbwContext::new(make_example(ExampleKind::Heisenberg).unwrap(), 4).unwrap();
        let r = ctx.splitting_check();
        assert_eq!(r.words_checked, 121);
        assert_eq!(r.certified_order, 2);
        assert_eq!((r.rank, r.expected_rank), (10, 10));
        assert!(r.passed(), "{:?}", r.failures);
    }

    #[test]
    fn abelian_splitting() {
        // one generator: no commutators at all, so the ideal part vanishes
        let line = PbwContext::new(make_example(ExampleKind::Abelian(1)).unwrap(), 3).unwrap();
        assert!(line.splitting_check().passed());
        let t =
            TensorElement::from_word(line.algebra().space().clone(), 3, Word::new(vec![0, 0, 0]))
                .unwrap();
        assert!(line.project_sigma(&t).unwrap().j_part.is_zero());

        // two generators: the invariant part is the averaged symmetrization
        let ctx = PbwContext::new(make_example(ExampleKind::Abelian(2)).unwrap(), 3).unwrap();
        assert!(ctx.splitting_check().passed());
        let w = Word::new(vec![1, 0, 0]);
        let t = TensorElement::from_word(ctx.algebra().space().clone(), 3, w.clone()).unwrap();
        let split = ctx.project_sigma(&t).unwrap();
        let averaged = t.symmetrize(3).unwrap().scale(&crate::scalar::ratio(1, 6));
        assert_eq!(split.sigma_part.terms(), averaged.terms());
        assert!(!split.j_part.is_zero());
    }

    #[test]
    fn continuity_cases() {
        let ctx = PbwContext::new(make_example(ExampleKind::Heisenberg).unwrap(), 5).unwrap();
        let r = ctx.continuity_bound_check(1, 1).unwrap();
        assert_eq!(r.words_checked, 27);
        assert!(r.passed());
        assert!(ctx.continuity_bound_check(0, 3).unwrap().passed());
        assert!(ctx.continuity_bound_check(2, 2).is_err());
        assert!(ctx.continuity_table().iter().all(ContinuityReport::passed));
    }

    #[test]
    fn bijection_on_heisenberg() {
        let ctx = PbwContext::new(make_example(ExampleKind::Heisenberg).unwrap(), 4).unwrap();
        let r = ctx.bijection_check();
        assert_eq!(r.block_sizes, vec![1, 3, 6, 10, 15]);
        assert!(r.passed(), "{:?}", r.failures);
    }

    #[test]
    fn towers() {
        let h = make_example(ExampleKind::Heisenberg).unwrap();
        let r = tower_consistency_check(&h, &[2, 3], 3).unwrap();
        assert!(r.passed(), "{:?}", r.failures);
        assert_eq!(
            r.stages
                .iter()
                .map(|s| s.presentation.dim())
                .collect::<Vec<_>>(),
            vec![3, 2]
        );
        assert!(tower_consistency_check(&h, &[3], 3).unwrap().passed());
        assert!(tower_consistency_check(&h, &[4], 3).is_err());
    }
}
