//! Lower central series, filtration weights, adapted bases and the quotient
//! tower `g / F_p`.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::One;

use crate::error::{Error, Result};
use crate::graded::{BasisElement, GradedSpace, TensorElement, Word};
use crate::linalg::{invert, Echelon};
use crate::lincomb::{LinComb, Vector};
use crate::scalar::Scalar;

use super::LiePresentation;

/// The lower central series `F_1 = g ⊇ F_2 = [g, g] ⊇ … ⊇ F_{k+1} = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiltrationReport {
    /// `terms[p - 1]` is the reduced echelon basis of `F_p`, for
    /// `p = 1..=k+1`.
    pub terms: Vec<Vec<Vector>>,
    /// Least `k` with `F_{k+1} = 0`.
    pub nilpotency_index: usize,
    /// Largest `p` with `x_i ∈ F_p`, per basis element.
    pub weights: Vec<usize>,
}

impl FiltrationReport {
    pub fn dims(&self) -> Vec<usize> {
        self.terms.iter().map(Vec::len).collect()
    }

    /// Sum of letter weights: the largest certified `p` with `w ∈ F_p(g^{⊗n})`.
    pub fn word_weight(&self, w: &Word) -> usize {
        w.iter().map(|&i| self.weights[i]).sum()
    }

    /// Whether every `F_p` is spanned by the basis elements of weight at
    /// least `p`.
    pub fn is_adapted(&self) -> bool {
        (1..=self.nilpotency_index)
            .all(|p| self.terms[p - 1].len() == self.weights.iter().filter(|&&w| w >= p).count())
    }

    /// Whether `F_p` contains `v`.
    pub fn contains(&self, p: usize, v: &Vector) -> bool {
        if p == 0 {
            return true;
        }
        match self.terms.get(p - 1) {
            Some(basis) => {
                let mut e = Echelon::new();
                for b in basis {
                    e.insert(b);
                }
                e.contains(v)
            }
            None => v.is_zero(),
        }
    }
}

fn span(vectors: impl IntoIterator<Item = Vector>) -> Echelon<usize> {
    let mut e = Echelon::new();
    for v in vectors {
        e.insert(&v);
    }
    e
}

fn next_term(p: &LiePresentation, current: &[Vector]) -> Echelon<usize> {
    let m = p.dim();
    span((0..m).flat_map(|i| {
        let ei = p.basis_vector(i);
        current.iter().map(move |f| p.bracket_unchecked(&ei, f))
    }))
}

fn compute(p: &LiePresentation) -> Result<FiltrationReport> {
    let m = p.dim();
    let mut terms: Vec<Vec<Vector>> = vec![(0..m).map(|i| p.basis_vector(i)).collect()];
    while !terms.last().unwrap().is_empty() {
        let cur = terms.last().unwrap();
        let next = next_term(p, cur);
        if next.dim() >= cur.len() {
            return Err(Error::NotNilpotent { steps: terms.len() });
        }
        terms.push(next.reduced_basis());
    }
    let nilpotency_index = terms.len() - 1;
    let echelons: Vec<Echelon<usize>> = terms.iter().map(|t| span(t.iter().cloned())).collect();
    let weights = (0..m)
        .map(|i| {
            let v = p.basis_vector(i);
            echelons.iter().take_while(|e| e.contains(&v)).count()
        })
        .collect();
    Ok(FiltrationReport {
        terms,
        nilpotency_index,
        weights,
    })
}

/// Dimension at which a non-nilpotent series stops shrinking.
pub(super) fn stalled_dim(p: &LiePresentation) -> usize {
    let mut cur: Vec<Vector> = (0..p.dim()).map(|i| p.basis_vector(i)).collect();
    loop {
        let next = next_term(p, &cur);
        if next.dim() >= cur.len() || next.dim() == 0 {
            return next.dim();
        }
        cur = next.reduced_basis();
    }
}

/// A linear map between Lie algebras (or their underlying spaces), given by
/// the images of the source basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearMap {
    pub target: Arc<GradedSpace>,
    pub images: Vec<Vector>,
}

impl LinearMap {
    pub fn identity(space: Arc<GradedSpace>) -> Self {
        let images = (0..space.dim())
            .map(|i| Vector::from_term(i, Scalar::one()))
            .collect();
        Self {
            target: space,
            images,
        }
    }

    pub fn source_dim(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, v: &Vector) -> Vector {
        v.flat_map(|&i| self.images[i].clone())
    }

    pub fn compose(&self, first: &LinearMap) -> LinearMap {
        LinearMap {
            target: self.target.clone(),
            images: first.images.iter().map(|v| self.apply(v)).collect(),
        }
    }

    /// Extends letterwise to the tensor algebra: `x_1⊗…⊗x_n ↦ f(x_1)⊗…⊗f(x_n)`.
    pub fn apply_tensor(&self, t: &TensorElement) -> Result<TensorElement> {
        if t.space().dim() != self.source_dim() {
            return Err(Error::SizeMismatch {
                expected: self.source_dim(),
                found: t.space().dim(),
            });
        }
        let terms = t.terms().flat_map(|w| self.apply_word(w));
        Ok(TensorElement::from_parts(
            self.target.clone(),
            t.truncation(),
            t.certified(),
            terms,
        ))
    }

    pub fn apply_word(&self, w: &Word) -> LinComb<Word> {
        let mut acc = LinComb::from_term(Word::empty(), Scalar::one());
        for &letter in w.iter() {
            let mut next = LinComb::new();
            for (prefix, c) in &acc {
                for (&j, d) in &self.images[letter] {
                    let mut v = prefix.to_vec();
                    v.push(j);
                    next.add_term(Word::new(v), c * d);
                }
            }
            acc = next;
        }
        acc
    }

    /// Whether every basis image is homogeneous of the source degree.
    pub fn preserves_degree(&self, source: &GradedSpace) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(i, v)| v.keys().all(|&j| self.target.degree(j) == source.degree(i)))
    }
}

/// A presentation re-based onto a basis adapted to its lower central series.
#[derive(Clone, Debug)]
pub struct Adapted {
    pub presentation: LiePresentation,
    /// Old basis vector `e_i` expressed in the adapted basis.
    pub to_adapted: LinearMap,
    /// Adapted basis vector `b_a` expressed in the old basis.
    pub to_original: LinearMap,
}

impl Adapted {
    pub fn is_identity(&self) -> bool {
        self.to_adapted
            .images
            .iter()
            .enumerate()
            .all(|(i, v)| v.len() == 1 && v.coeff(&i).is_one())
    }
}

impl LiePresentation {
    /// Cached lower central series; fails for non-nilpotent algebras.
    pub fn lower_central_series(&self) -> Result<&FiltrationReport> {
        self.filtration
            .get_or_init(|| compute(self))
            .as_ref()
            .map_err(Clone::clone)
    }

    pub fn word_weight(&self, w: &Word) -> Result<usize> {
        for &i in w.iter() {
            self.space().check_index(i)?;
        }
        Ok(self.lower_central_series()?.word_weight(w))
    }

    /// Re-bases onto a union of lifts of bases of `F_p / F_{p+1}`, ordered by
    /// (weight, degree, original index).
    ///
    /// Original basis vectors are kept (with their names) wherever they fit;
    /// any other adapted vector gets a fresh name `u<n>`.
    pub fn adapt(&self) -> Result<Adapted> {
        let filt = self.lower_central_series()?;
        let m = self.dim();
        let k = filt.nilpotency_index;
        // (weight, vector) pairs
        let mut chosen: Vec<(usize, Vector)> = Vec::with_capacity(m);
        let mut below = Echelon::new(); // span of F_{p+1}, grown downwards
        for p in (1..=k).rev() {
            for i in 0..m {
                let v = self.basis_vector(i);
                if filt.weights[i] == p && below.insert(&v) {
                    chosen.push((p, v));
                }
            }
            for v in &filt.terms[p - 1] {
                if below.insert(v) {
                    chosen.push((p, v.clone()));
                }
            }
        }
        debug_assert_eq!(chosen.len(), m);
        let degree_of = |v: &Vector| v.first().map(|(&i, _)| self.space().degree(i)).unwrap_or(0);
        chosen.sort_by_key(|(w, v)| (*w, degree_of(v), *v.first().unwrap().0));

        let mut used: std::collections::HashSet<String> = self
            .space()
            .basis()
            .iter()
            .map(|b| b.name.clone())
            .collect();
        let mut fresh = 0;
        let mut elements = Vec::with_capacity(m);
        for (_, v) in &chosen {
            let name = match (v.len(), v.first()) {
                (1, Some((&i, c))) if c.is_one() => self.space().name(i).to_string(),
                _ => loop {
                    fresh += 1;
                    let n = format!("u{fresh}");
                    if used.insert(n.clone()) {
                        break n;
                    }
                },
            };
            elements.push(BasisElement::new(name, degree_of(v)));
        }
        let space = Arc::new(GradedSpace::new(elements)?);

        // columns of `basis` are the adapted vectors in old coordinates
        let basis: Vec<Vec<Scalar>> = (0..m)
            .map(|i| chosen.iter().map(|(_, v)| v.coeff(&i)).collect())
            .collect();
        let inverse = invert(&basis).expect("adapted vectors form a basis");
        let to_adapted = LinearMap {
            target: space.clone(),
            images: (0..m)
                .map(|i| (0..m).map(|a| (a, inverse[a][i].clone())).collect())
                .collect(),
        };
        let to_original = LinearMap {
            target: self.space().clone(),
            images: chosen.iter().map(|(_, v)| v.clone()).collect(),
        };
        let mut constants = BTreeMap::new();
        for a in 0..m {
            for b in a..m {
                let v = to_adapted
                    .apply(&self.bracket_unchecked(&to_original.images[a], &to_original.images[b]));
                if !v.is_zero() {
                    constants.insert((a, b), v);
                }
            }
        }
        let presentation = LiePresentation::from_constants(space, constants);
        Ok(Adapted {
            presentation,
            to_adapted,
            to_original,
        })
    }

    /// `g / F_level` on the adapted basis, with the projection from this
    /// presentation's basis.
    pub fn quotient_by_filtration(&self, level: usize) -> Result<(LiePresentation, LinearMap)> {
        let k = self.lower_central_series()?.nilpotency_index;
        if level == 0 || level > k + 1 {
            return Err(Error::InvalidParameter(format!(
                "filtration level {level} outside 1..={}",
                k + 1
            )));
        }
        let adapted = self.adapt()?;
        let weights = &adapted.presentation.lower_central_series()?.weights;
        let keep = weights.iter().filter(|&&w| w < level).count();
        let space = Arc::new(GradedSpace::new(
            adapted.presentation.space().basis()[..keep].to_vec(),
        )?);
        let constants = adapted
            .presentation
            .constants()
            .iter()
            .filter(|((a, b), _)| *a < keep && *b < keep)
            .map(|(&key, v)| (key, v.filtered(|&l| l < keep)))
            .filter(|(_, v)| !v.is_zero())
            .collect();
        let quotient = LiePresentation::from_constants(space.clone(), constants);
        let projection = LinearMap {
            target: space,
            images: adapted
                .to_adapted
                .images
                .iter()
                .map(|v| v.filtered(|&l| l < keep))
                .collect(),
        };
        Ok((quotient, projection))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::{make_example, ExampleKind};
    use crate::scalar::int;

    fn e(i: usize) -> Vector {
        Vector::from_term(i, int(1))
    }

    #[test]
    fn lcs_examples() {
        let h = make_example(ExampleKind::Heisenberg).unwrap();
        let f = h.lower_central_series().unwrap();
        assert_eq!(f.dims(), vec![3, 1, 0]);
        assert_eq!(f.nilpotency_index, 2);
        assert_eq!(f.weights, vec![1, 1, 2]);

        let n4 = make_example(ExampleKind::StrictUpperTriangular(4)).unwrap();
        let f = n4.lower_central_series().unwrap();
        assert_eq!(f.dims(), vec![6, 3, 1, 0]);
        assert_eq!(f.nilpotency_index, 3);

        let a = make_example(ExampleKind::Abelian(5)).unwrap();
        assert_eq!(a.lower_central_series().unwrap().dims(), vec![5, 0]);
    }

    #[test]
    fn word_weights() {
        let h = make_example(ExampleKind::Heisenberg).unwrap();
        assert_eq!(h.word_weight(&Word::new(vec![0, 1])).unwrap(), 2);
        assert_eq!(h.word_weight(&Word::new(vec![2])).unwrap(), 2);
        assert_eq!(h.word_weight(&Word::empty()).unwrap(), 0);
        assert!(h.word_weight(&Word::new(vec![7])).is_err());
    }

    #[test]
    fn filtration_is_multiplicative() {
        let n5 = make_example(ExampleKind::StrictUpperTriangular(5)).unwrap();
        let f = n5.lower_central_series().unwrap();
        let k = f.nilpotency_index;
        for p in 1..=k {
            for q in 1..=k {
                for a in &f.terms[p - 1] {
                    for b in &f.terms[q - 1] {
                        let c = n5.bracket(a, b).unwrap();
                        assert!(f.contains(p + q, &c), "[F_{p}, F_{q}] ⊄ F_{}", p + q);
                    }
                }
            }
        }
    }

    #[test]
    fn quotient_examples() {
        let h = make_example(ExampleKind::Heisenberg).unwrap();
        let (q, pi) = h.quotient_by_filtration(2).unwrap();
        assert_eq!(q.dim(), 2);
        assert!(q.constants().is_empty());
        assert_eq!(pi.apply(&e(2)), Vector::new());
        assert!(h.is_morphism_to(&q, &pi));

        let (top, id) = h.quotient_by_filtration(3).unwrap();
        assert_eq!(top, h);
        assert_eq!(id, LinearMap::identity(h.space().clone()));

        let (zero, _) = h.quotient_by_filtration(1).unwrap();
        assert_eq!(zero.dim(), 0);
        assert!(h.quotient_by_filtration(0).is_err());
        assert!(h.quotient_by_filtration(4).is_err());
    }

    #[test]
    fn adaptation_rebases_a_scrambled_heisenberg() {
        // basis (z, x + z, y): z central, [x + z, y] = z
        let space = Arc::new(GradedSpace::even(&["p", "q", "r"]).unwrap());
        let p = LiePresentation::new(space, [((1, 2), e(0))]).unwrap();
        let adapted = p.adapt().unwrap();
        let names: Vec<_> = adapted
            .presentation
            .space()
            .basis()
            .iter()
            .map(|b| b.name.clone())
            .collect();
        assert_eq!(names, vec!["q", "r", "p"]);
        assert_eq!(
            adapted.presentation.lower_central_series().unwrap().weights,
            vec![1, 1, 2]
        );
        assert!(p.is_morphism_to(&adapted.presentation, &adapted.to_adapted));

        // A non-adapted basis: (x, y, x + z) with [x, y] = z = (x+z) - x
        let space = Arc::new(GradedSpace::even(&["x", "y", "w"]).unwrap());
        let z = e(2).minus(&e(0));
        let p = LiePresentation::new(space, [((0, 1), z.clone()), ((2, 1), z)]).unwrap();
        assert!(p.validate().is_valid());
        let adapted = p.adapt().unwrap();
        assert!(!adapted.is_identity());
        let q = &adapted.presentation;
        assert_eq!(q.lower_central_series().unwrap().weights, vec![1, 1, 2]);
        assert!(p.is_morphism_to(q, &adapted.to_adapted));
        assert!(q.is_morphism_to(&p, &adapted.to_original));
    }

    #[test]
    fn tower_bonding_maps_compose() {
        let n4 = make_example(ExampleKind::StrictUpperTriangular(4)).unwrap();
        let (g3, p3) = n4.quotient_by_filtration(3).unwrap();
        let (g2, p32) = g3.quotient_by_filtration(2).unwrap();
        let (_, p2) = n4.quotient_by_filtration(2).unwrap();
        assert_eq!(p32.compose(&p3), p2);
        assert!(g3.is_morphism_to(&g2, &p32));
    }
}
