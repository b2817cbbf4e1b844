//! Permutations acting on tensor words with the Koszul sign rule.
//!
//! A permutation moves the letter at position `i` to position `image[i]`.
//! With this convention `(σ∘τ)·w = σ·(τ·w)` holds including signs.

use crate::error::{Error, Result};
use crate::scalar::{sign, Scalar};

use super::space::GradedSpace;
use super::word::Word;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation {
    image: Vec<usize>,
}

impl Permutation {
    /// From a zero-based image array.
    pub fn new(image: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; image.len()];
        for &i in &image {
            if i >= image.len() || seen[i] {
                return Err(Error::InvalidPermutation(image));
            }
            seen[i] = true;
        }
        Ok(Self { image })
    }

    /// From a one-based image array such as `[2, 3, 1]`.
    pub fn from_one_based(image: &[usize]) -> Result<Self> {
        if image.contains(&0) {
            return Err(Error::InvalidPermutation(image.to_vec()));
        }
        Self::new(image.iter().map(|i| i - 1).collect())
    }

    pub fn identity(n: usize) -> Self {
        Self {
            image: (0..n).collect(),
        }
    }

    /// Swaps positions `i` and `i + 1`.
    pub fn adjacent(n: usize, i: usize) -> Self {
        let mut image: Vec<usize> = (0..n).collect();
        image.swap(i, i + 1);
        Self { image }
    }

    pub fn size(&self) -> usize {
        self.image.len()
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.size() != other.size() {
            return Err(Error::SizeMismatch {
                expected: self.size(),
                found: other.size(),
            });
        }
        Ok(Permutation {
            image: other.image.iter().map(|&j| self.image[j]).collect(),
        })
    }

    pub fn inverse(&self) -> Permutation {
        let mut image = vec![0; self.size()];
        for (i, &j) in self.image.iter().enumerate() {
            image[j] = i;
        }
        Permutation { image }
    }

    /// Every permutation of `n` points (`n!` of them), identity first.
    pub fn all(n: usize) -> Vec<Permutation> {
        fn go(n: usize, cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Permutation>) {
            if cur.len() == n {
                out.push(Permutation { image: cur.clone() });
                return;
            }
            for i in 0..n {
                if !used[i] {
                    used[i] = true;
                    cur.push(i);
                    go(n, cur, used, out);
                    cur.pop();
                    used[i] = false;
                }
            }
        }
        let mut out = Vec::new();
        go(n, &mut Vec::with_capacity(n), &mut vec![false; n], &mut out);
        out
    }
}

/// `(-1)^m` with `m` the number of pairs of odd-degree entries whose
/// relative order the permutation reverses.
pub fn koszul_sign(perm: &Permutation, degrees: &[i64]) -> Result<Scalar> {
    if degrees.len() != perm.size() {
        return Err(Error::SizeMismatch {
            expected: perm.size(),
            found: degrees.len(),
        });
    }
    let odd: Vec<bool> = degrees.iter().map(|d| d.rem_euclid(2) == 1).collect();
    Ok(sign(odd_inversions(&perm.image, &odd) % 2 == 1))
}

pub(crate) fn odd_inversions(image: &[usize], odd: &[bool]) -> usize {
    let mut count = 0;
    for i in 0..image.len() {
        if !odd[i] {
            continue;
        }
        for j in (i + 1)..image.len() {
            if odd[j] && image[i] > image[j] {
                count += 1;
            }
        }
    }
    count
}

/// Reorders `w` by `perm` and returns the Koszul sign of the move.
pub fn permute(perm: &Permutation, w: &Word, space: &GradedSpace) -> Result<(Word, Scalar)> {
    if w.order() != perm.size() {
        return Err(Error::SizeMismatch {
            expected: perm.size(),
            found: w.order(),
        });
    }
    for &i in w.iter() {
        space.check_index(i)?;
    }
    let degrees: Vec<i64> = w.iter().map(|&i| space.degree(i)).collect();
    let s = koszul_sign(perm, &degrees)?;
    let mut out = vec![0; w.order()];
    for (i, &letter) in w.iter().enumerate() {
        out[perm.image[i]] = letter;
    }
    Ok((Word::new(out), s))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded::space::BasisElement;
    use crate::scalar::int;

    fn space() -> GradedSpace {
        GradedSpace::new(vec![
            BasisElement::new("x", 0),
            BasisElement::new("y", 2),
            BasisElement::new("a", 1),
            BasisElement::new("b", 3),
        ])
        .unwrap()
    }

    #[test]
    fn sign_examples() {
        let id = Permutation::identity(3);
        assert_eq!(koszul_sign(&id, &[1, 1, 1]).unwrap(), int(1));
        let swap = Permutation::from_one_based(&[2, 1]).unwrap();
        assert_eq!(koszul_sign(&swap, &[1, 1]).unwrap(), int(-1));
        assert_eq!(koszul_sign(&swap, &[1, 2]).unwrap(), int(1));
        let cycle = Permutation::from_one_based(&[2, 3, 1]).unwrap();
        // (1 2 3) = (1 3)(1 2): two odd-odd inversions
        assert_eq!(koszul_sign(&cycle, &[1, 1, 1]).unwrap(), int(1));
        assert!(koszul_sign(&swap, &[1]).is_err());
    }

    #[test]
    fn permute_examples() {
        let v = space();
        let swap = Permutation::adjacent(2, 0);
        assert_eq!(
            permute(&swap, &Word::new(vec![0, 1]), &v).unwrap(),
            (Word::new(vec![1, 0]), int(1))
        );
        assert_eq!(
            permute(&swap, &Word::new(vec![2, 2]), &v).unwrap(),
            (Word::new(vec![2, 2]), int(-1))
        );
        let w = Word::new(vec![3, 0, 2]);
        assert_eq!(
            permute(&Permutation::identity(3), &w, &v).unwrap(),
            (w.clone(), int(1))
        );
        assert!(permute(&swap, &w, &v).is_err());
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Permutation::new(vec![0, 0]).is_err());
        assert!(Permutation::from_one_based(&[0, 1]).is_err());
        assert_eq!(Permutation::all(4).len(), 24);
    }
}
