//! Truncated elements of the completed tensor algebra.

use std::fmt;
use std::sync::Arc;

use num_traits::One;

use crate::error::{Error, Result};
use crate::lincomb::LinComb;
use crate::scalar::{format_terms, sign, Scalar};

use super::perm::{odd_inversions, permute, Permutation};
use super::space::GradedSpace;
use super::word::Word;

/// A formal noncommutative power series known up to tensor order
/// `truncation`.
///
/// Words of order above `truncation` are never stored. Components of order
/// at most `certified` are exact; components in `(certified, truncation]`
/// may be present but carry no guarantee.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorElement {
    space: Arc<GradedSpace>,
    truncation: usize,
    certified: usize,
    terms: LinComb<Word>,
}

pub(crate) fn same_space(a: &Arc<GradedSpace>, b: &Arc<GradedSpace>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

impl TensorElement {
    pub fn zero(space: Arc<GradedSpace>, truncation: usize) -> Self {
        Self {
            space,
            truncation,
            certified: truncation,
            terms: LinComb::new(),
        }
    }

    pub fn one(space: Arc<GradedSpace>, truncation: usize) -> Self {
        Self::from_word(space, truncation, Word::empty()).expect("unit always fits")
    }

    pub fn from_word(space: Arc<GradedSpace>, truncation: usize, word: Word) -> Result<Self> {
        Self::from_terms(space, truncation, LinComb::from_term(word, Scalar::one()))
    }

    /// Words above the truncation order are rejected, not dropped.
    pub fn from_terms(
        space: Arc<GradedSpace>,
        truncation: usize,
        terms: LinComb<Word>,
    ) -> Result<Self> {
        for (w, _) in &terms {
            for &i in w.iter() {
                space.check_index(i)?;
            }
            if w.order() > truncation {
                return Err(Error::BeyondTruncation {
                    order: w.order(),
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

    /// Like [`from_terms`](Self::from_terms) but silently drops words above
    /// the truncation order.
    pub fn truncating(
        space: Arc<GradedSpace>,
        truncation: usize,
        mut terms: LinComb<Word>,
    ) -> Result<Self> {
        terms.retain(|w| w.order() <= truncation);
        Self::from_terms(space, truncation, terms)
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

    pub fn terms(&self) -> &LinComb<Word> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_zero()
    }

    pub fn coeff(&self, w: &Word) -> Scalar {
        self.terms.coeff(w)
    }

    /// Lowers the certified order (never raises it above `truncation`).
    pub fn with_certified(mut self, certified: usize) -> Self {
        self.certified = certified.min(self.truncation);
        self
    }

    /// Components of order exactly `n`.
    pub fn homogeneous_part(&self, n: usize) -> LinComb<Word> {
        self.terms.filtered(|w| w.order() == n)
    }

    /// Components of order at most `n`.
    pub fn up_to(&self, n: usize) -> LinComb<Word> {
        self.terms.filtered(|w| w.order() <= n)
    }

    pub fn max_order(&self) -> Option<usize> {
        self.terms.keys().map(Word::order).max()
    }

    /// Equality of all components of order at most `n`.
    pub fn agrees_through(&self, other: &Self, n: usize) -> bool {
        self.up_to(n) == other.up_to(n)
    }

    /// Re-truncates to a smaller order.
    pub fn truncate(&self, truncation: usize) -> Self {
        let truncation = truncation.min(self.truncation);
        Self {
            space: self.space.clone(),
            truncation,
            certified: self.certified.min(truncation),
            terms: self.up_to(truncation),
        }
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
            space: self.space.clone(),
            truncation: self.truncation,
            certified: self.certified.min(other.certified),
            terms: self.terms.plus(&other.terms),
        })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(Self {
            space: self.space.clone(),
            truncation: self.truncation,
            certified: self.certified.min(other.certified),
            terms: self.terms.minus(&other.terms),
        })
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        Self {
            terms: self.terms.scaled(c),
            ..self.clone()
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Scalar::one())
    }

    /// Concatenation product, dropping words above the truncation order.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut terms = LinComb::new();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                if a.order() + b.order() <= self.truncation {
                    terms.add_term(a.concat(b), ca * cb);
                }
            }
        }
        Ok(Self {
            space: self.space.clone(),
            truncation: self.truncation,
            certified: self.certified.min(other.certified),
            terms,
        })
    }

    /// Applies a permutation to every word; all words must have order
    /// `perm.size()`.
    pub fn permute(&self, perm: &Permutation) -> Result<Self> {
        let mut terms = LinComb::new();
        for (w, c) in &self.terms {
            let (pw, s) = permute(perm, w, &self.space)?;
            terms.add_term(pw, c * s);
        }
        Ok(Self {
            terms,
            ..self.clone()
        })
    }

    /// Graded commutator `ab - (-1)^{|a||b|} ba`, computed degree by degree.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let split = |t: &Self| {
            let mut parts: std::collections::BTreeMap<bool, LinComb<Word>> = Default::default();
            for (w, c) in &t.terms {
                parts
                    .entry(t.space.word_is_odd(w))
                    .or_default()
                    .add_term(w.clone(), c.clone());
            }
            parts
        };
        let mut terms = LinComb::new();
        for (pa, a) in split(self) {
            for (pb, b) in split(other) {
                let s = sign(pa && pb);
                for (x, cx) in &a {
                    for (y, cy) in &b {
                        if x.order() + y.order() <= self.truncation {
                            let c = cx * cy;
                            terms.add_term(x.concat(y), c.clone());
                            terms.add_term(y.concat(x), -(c * &s));
                        }
                    }
                }
            }
        }
        Ok(Self {
            space: self.space.clone(),
            truncation: self.truncation,
            certified: self.certified.min(other.certified),
            terms,
        })
    }

    /// `Σ_{σ ∈ Σ_n} σ·w` with Koszul signs. Every word must have order `n`.
    pub fn symmetrize(&self, n: usize) -> Result<Self> {
        let mut terms = LinComb::new();
        for (w, c) in &self.terms {
            if w.order() != n {
                return Err(Error::MixedOrder {
                    expected: n,
                    found: w.order(),
                });
            }
            terms.add_scaled(&symmetrize_word(w, &self.space), c);
        }
        Ok(Self {
            terms,
            ..self.clone()
        })
    }

    pub fn render(&self) -> String {
        format_terms(
            self.terms
                .iter()
                .map(|(w, c)| (c.clone(), w.render(|i| self.space.name(i).to_string(), "⊗"))),
        )
    }
}

impl fmt::Display for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Sign of sorting `w` into weakly increasing order, or `None` when an odd
/// letter repeats (its symmetrization then vanishes).
pub(crate) fn sorting_sign(w: &[usize], space: &GradedSpace) -> Option<(Word, Scalar)> {
    let mut sorted = w.to_vec();
    sorted.sort_unstable();
    if sorted
        .windows(2)
        .any(|p| p[0] == p[1] && space.is_odd(p[0]))
    {
        return None;
    }
    let odd: Vec<bool> = w.iter().map(|&i| space.is_odd(i)).collect();
    // Positions of odd letters in the sorted word are strictly ordered, so
    // the parity of odd-odd inversions of `w` is the sorting sign.
    let inv = odd_inversions(w, &odd);
    Some((Word::new(sorted), sign(inv % 2 == 1)))
}

/// Symmetrization of a single word, enumerating distinct rearrangements of
/// its letters instead of all `n!` permutations.
pub(crate) fn symmetrize_word(w: &Word, space: &GradedSpace) -> LinComb<Word> {
    let Some((sorted, s)) = sorting_sign(w, space) else {
        return LinComb::new();
    };
    let mut counts: Vec<(usize, usize)> = Vec::new();
    for &l in sorted.iter() {
        match counts.last_mut() {
            Some((letter, k)) if *letter == l => *k += 1,
            _ => counts.push((l, 1)),
        }
    }
    // Each distinct arrangement is hit by ∏ m_i! permutations, all with the
    // same sign because only even letters repeat.
    let multiplicity = counts.iter().fold(Scalar::one(), |acc, &(_, k)| {
        acc * crate::scalar::factorial(k)
    });
    let base = multiplicity * s;
    let odd_flags: Vec<bool> = (0..space.dim()).map(|i| space.is_odd(i)).collect();
    let mut out = LinComb::new();
    let mut cur = Vec::with_capacity(w.order());
    arrangements(&mut counts, w.order(), &mut cur, &mut |arr| {
        let odd: Vec<bool> = arr.iter().map(|&i| odd_flags[i]).collect();
        let inv = odd_inversions(arr, &odd);
        out.add_term(Word::new(arr.to_vec()), &base * sign(inv % 2 == 1));
    });
    out
}

fn arrangements(
    counts: &mut [(usize, usize)],
    n: usize,
    cur: &mut Vec<usize>,
    visit: &mut dyn FnMut(&[usize]),
) {
    if cur.len() == n {
        visit(cur);
        return;
    }
    for i in 0..counts.len() {
        if counts[i].1 == 0 {
            continue;
        }
        counts[i].1 -= 1;
        cur.push(counts[i].0);
        arrangements(counts, n, cur, visit);
        cur.pop();
        counts[i].1 += 1;
    }
}

impl TensorElement {
    /// Exact zero test on the certified range.
    pub fn is_zero_through(&self, n: usize) -> bool {
        self.up_to(n).is_zero()
    }

    /// Whether the order-`n` part is fixed by every adjacent transposition
    /// (and hence by all of `Σ_n`).
    pub fn is_signed_invariant(&self, n: usize) -> bool {
        let part = Self {
            terms: self.homogeneous_part(n),
            ..self.clone()
        };
        (0..n.saturating_sub(1)).all(|i| {
            part.permute(&Permutation::adjacent(n, i))
                .map(|p| p.terms == part.terms)
                .unwrap_or(false)
        })
    }

    pub(crate) fn from_parts(
        space: Arc<GradedSpace>,
        truncation: usize,
        certified: usize,
        terms: LinComb<Word>,
    ) -> Self {
        debug_assert!(terms.keys().all(|w| w.order() <= truncation));
        Self {
            space,
            truncation,
            certified: certified.min(truncation),
            terms,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded::space::BasisElement;
    use crate::scalar::int;

    fn mixed() -> Arc<GradedSpace> {
        Arc::new(
            GradedSpace::new(vec![
                BasisElement::new("x", 0),
                BasisElement::new("y", 0),
                BasisElement::new("a", 1),
                BasisElement::new("b", 1),
            ])
            .unwrap(),
        )
    }

    fn word(v: &Arc<GradedSpace>, n: usize, letters: &[usize]) -> TensorElement {
        TensorElement::from_word(v.clone(), n, Word::from(letters)).unwrap()
    }

    /// Brute-force `Σ_σ σ·w` over every permutation.
    fn symmetrize_brute(t: &TensorElement, n: usize) -> LinComb<Word> {
        let mut out = LinComb::new();
        for p in Permutation::all(n) {
            out.add_assign(t.permute(&p).unwrap().terms());
        }
        out
    }

    #[test]
    fn multiply_examples() {
        let v = mixed();
        let x = word(&v, 2, &[0]);
        let y = word(&v, 2, &[1]);
        assert_eq!(x.multiply(&y).unwrap(), word(&v, 2, &[0, 1]));

        let one = TensorElement::one(v.clone(), 1);
        let x1 = word(&v, 1, &[0]);
        let p = one.checked_add(&x1).unwrap();
        let sq = p.multiply(&p).unwrap();
        assert_eq!(sq.coeff(&Word::empty()), int(1));
        assert_eq!(sq.coeff(&Word::letter(0)), int(2));
        assert_eq!(sq.terms().len(), 2);
        assert_eq!(sq.certified(), 1);

        assert_eq!(one.multiply(&x1).unwrap(), x1);
        assert!(x.multiply(&x1).is_err());
    }

    #[test]
    fn symmetrize_examples() {
        let v = mixed();
        let xy = word(&v, 2, &[0, 1]);
        let s = xy.symmetrize(2).unwrap();
        assert_eq!(s.coeff(&Word::new(vec![0, 1])), int(1));
        assert_eq!(s.coeff(&Word::new(vec![1, 0])), int(1));
        assert_eq!(s.terms().len(), 2);

        let aa = word(&v, 2, &[2, 2]);
        assert!(aa.symmetrize(2).unwrap().is_zero());
        assert_eq!(symmetrize_brute(&aa, 2), LinComb::new());

        let unit = TensorElement::one(v.clone(), 0);
        assert_eq!(unit.symmetrize(0).unwrap(), unit);

        let mixed_order = word(&v, 2, &[0]).checked_add(&xy).unwrap();
        assert!(mixed_order.symmetrize(2).is_err());
    }

    #[test]
    fn fast_symmetrization_matches_brute_force() {
        let v = mixed();
        for letters in [
            vec![0, 0, 1],
            vec![2, 3, 0],
            vec![3, 2, 1, 0],
            vec![1, 0, 1, 3, 2],
            vec![2, 0, 2],
            vec![0, 0, 0, 1, 1],
        ] {
            let n = letters.len();
            let t = word(&v, n, &letters);
            assert_eq!(
                t.symmetrize(n).unwrap().terms(),
                &symmetrize_brute(&t, n),
                "{letters:?}"
            );
        }
    }

    #[test]
    fn commutator_signs() {
        let v = mixed();
        let a = word(&v, 2, &[2]);
        let b = word(&v, 2, &[3]);
        let c = a.commutator(&b).unwrap();
        assert_eq!(c.coeff(&Word::new(vec![2, 3])), int(1));
        assert_eq!(c.coeff(&Word::new(vec![3, 2])), int(1));
        let aa = a.commutator(&a).unwrap();
        assert_eq!(aa.coeff(&Word::new(vec![2, 2])), int(2));
        let x = word(&v, 2, &[0]);
        assert!(x.commutator(&x).unwrap().is_zero());
    }

    #[test]
    fn display() {
        let v = mixed();
        let t = word(&v, 2, &[0, 1])
            .scale(&crate::scalar::ratio(1, 2))
            .checked_sub(&word(&v, 2, &[2]))
            .unwrap();
        assert_eq!(t.to_string(), "1/2 x⊗y - a");
        assert_eq!(TensorElement::zero(v.clone(), 2).to_string(), "0");
        assert_eq!(TensorElement::one(v, 2).to_string(), "1");
    }
}
