//! Exact linear algebra over the rationals.
//!
//! [`Echelon`] maintains a reduced spanning set for membership tests and
//! coordinate solves on sparse vectors. [`rank`] uses fraction-free
//! (Bareiss) elimination over the integers after clearing denominators.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::lincomb::LinComb;
use crate::scalar::Scalar;

/// Incremental row echelon form of a subspace spanned by sparse vectors.
///
/// Every stored row has coefficient `1` at its pivot, and the pivot is the
/// smallest key of the row.
#[derive(Clone, Debug)]
pub struct Echelon<K: Ord + Clone> {
    rows: BTreeMap<K, LinComb<K>>,
}

impl<K: Ord + Clone> Default for Echelon<K> {
    fn default() -> Self {
        Self {
            rows: BTreeMap::new(),
        }
    }
}

impl<K: Ord + Clone> Echelon<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Residue of `v` modulo the span.
    pub fn reduce(&self, v: &LinComb<K>) -> LinComb<K> {
        let mut r = v.clone();
        loop {
            let hit = r
                .iter()
                .find(|(k, _)| self.rows.contains_key(k))
                .map(|(k, c)| (k.clone(), c.clone()));
            match hit {
                Some((k, c)) => r.add_scaled(&self.rows[&k], &-c),
                None => return r,
            }
        }
    }

    pub fn contains(&self, v: &LinComb<K>) -> bool {
        self.reduce(v).is_zero()
    }

    /// Adds `v` to the span; returns whether the dimension grew.
    pub fn insert(&mut self, v: &LinComb<K>) -> bool {
        let r = self.reduce(v);
        let Some((pivot, lead)) = r.first().map(|(k, c)| (k.clone(), c.clone())) else {
            return false;
        };
        let row = r.scaled(&(Scalar::one() / lead));
        self.rows.insert(pivot, row);
        true
    }

    pub fn pivots(&self) -> impl Iterator<Item = &K> {
        self.rows.keys()
    }

    /// The unique reduced row echelon basis of the span, ordered by pivot.
    pub fn reduced_basis(&self) -> Vec<LinComb<K>> {
        let mut out: Vec<LinComb<K>> = Vec::with_capacity(self.rows.len());
        // Back-substitute from the largest pivot down.
        let mut done: BTreeMap<K, LinComb<K>> = BTreeMap::new();
        for (pivot, row) in self.rows.iter().rev() {
            let mut r = row.clone();
            loop {
                let hit = r
                    .iter()
                    .find(|(k, _)| *k != pivot && done.contains_key(k))
                    .map(|(k, c)| (k.clone(), c.clone()));
                match hit {
                    Some((k, c)) => r.add_scaled(&done[&k], &-c),
                    None => break,
                }
            }
            done.insert(pivot.clone(), r);
        }
        out.extend(done.into_values());
        out
    }
}

/// Rank of a dense rational matrix by fraction-free elimination.
pub fn rank(rows: &[Vec<Scalar>]) -> usize {
    let mut m: Vec<Vec<BigInt>> = rows.iter().map(|r| clear_denominators(r)).collect();
    bareiss_rank(&mut m)
}

/// Rank of a family of sparse vectors.
pub fn rank_sparse<K: Ord + Clone>(vectors: &[LinComb<K>]) -> usize {
    let mut columns: BTreeMap<K, usize> = BTreeMap::new();
    for v in vectors {
        for k in v.keys() {
            let next = columns.len();
            columns.entry(k.clone()).or_insert(next);
        }
    }
    let width = columns.len();
    let dense: Vec<Vec<Scalar>> = vectors
        .iter()
        .map(|v| {
            let mut row = vec![Scalar::zero(); width];
            for (k, c) in v {
                row[columns[k]] = c.clone();
            }
            row
        })
        .collect();
    rank(&dense)
}

fn clear_denominators(row: &[Scalar]) -> Vec<BigInt> {
    let l = row.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    row.iter().map(|c| c.numer() * (&l / c.denom())).collect()
}

fn bareiss_rank(m: &mut [Vec<BigInt>]) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        for i in (r + 1)..rows {
            for j in (c + 1)..cols {
                let v = &m[r][c] * &m[i][j] - &m[i][c] * &m[r][j];
                // Exact by Sylvester's identity.
                m[i][j] = v / &prev;
            }
            m[i][c] = BigInt::zero();
        }
        prev = m[r][c].clone();
        r += 1;
    }
    r
}

/// Inverse of a square rational matrix, or `None` if singular.
pub fn invert(matrix: &[Vec<Scalar>]) -> Option<Vec<Vec<Scalar>>> {
    let n = matrix.len();
    let mut a: Vec<Vec<Scalar>> = matrix
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| {
                if i == j {
                    Scalar::one()
                } else {
                    Scalar::zero()
                }
            }));
            r
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&i| !a[i][c].is_zero())?;
        a.swap(c, p);
        let inv = Scalar::one() / &a[c][c];
        for x in a[c].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = a[c].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == c || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                *x -= &f * p;
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, ratio};

    #[test]
    fn echelon_membership() {
        let mut e: Echelon<usize> = Echelon::new();
        let a: LinComb<usize> = [(0, int(1)), (1, int(1))].into_iter().collect();
        let b: LinComb<usize> = [(1, int(1)), (2, int(1))].into_iter().collect();
        assert!(e.insert(&a));
        assert!(e.insert(&b));
        assert!(!e.insert(&a.plus(&b)));
        let c: LinComb<usize> = [(0, int(1)), (2, int(-1))].into_iter().collect();
        assert!(e.contains(&c));
        assert!(!e.contains(&LinComb::from_term(2, int(1))));
        let basis = e.reduced_basis();
        assert_eq!(basis.len(), 2);
        assert_eq!(basis[0].coeff(&1), int(0));
    }

    #[test]
    fn rank_with_fractions() {
        let m = vec![
            vec![ratio(1, 2), int(1), int(0)],
            vec![int(1), int(2), int(0)],
            vec![int(0), int(0), ratio(1, 3)],
        ];
        assert_eq!(rank(&m), 2);
        assert_eq!(rank(&[]), 0);
    }

    #[test]
    fn inverse_round_trip() {
        let m = vec![vec![int(2), int(1)], vec![int(1), int(1)]];
        let inv = invert(&m).unwrap();
        assert_eq!(inv, vec![vec![int(1), int(-1)], vec![int(-1), int(2)]]);
        assert!(invert(&[vec![int(1), int(2)], vec![int(2), int(4)]]).is_none());
    }
}
