use std::fmt;

use crate::error::{Error, Result};
use crate::graded::Word;

/// A word strictly smaller than each of its proper rotations.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LyndonWord(Word);

pub fn is_lyndon(w: &[usize]) -> bool {
    let n = w.len();
    if n == 0 {
        return false;
    }
    (1..n).all(|i| {
        let rotated = w[i..].iter().chain(&w[..i]);
        w.iter().cmp(rotated) == std::cmp::Ordering::Less
    })
}

impl LyndonWord {
    pub fn new(w: Word) -> Result<Self> {
        if is_lyndon(&w) {
            Ok(Self(w))
        } else {
            Err(Error::InvalidParameter(format!("{w} is not a Lyndon word")))
        }
    }

    pub fn letter(i: usize) -> Self {
        Self(Word::letter(i))
    }

    pub fn word(&self) -> &Word {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.order()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// `w = uv` with `v` the longest proper suffix that is itself Lyndon;
    /// `None` for single letters.
    pub fn standard_factorization(&self) -> Option<(LyndonWord, LyndonWord)> {
        let w = self.0.letters();
        (1..w.len()).find(|&i| is_lyndon(&w[i..])).map(|i| {
            (
                LyndonWord(Word::from(&w[..i])),
                LyndonWord(Word::from(&w[i..])),
            )
        })
    }
}

impl fmt::Display for LyndonWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// All Lyndon words over `m` letters of length `1..=max_len`, grouped by
/// length (entry `n - 1` holds length `n`), each group in lexicographic
/// order.
pub fn lyndon_words(m: usize, max_len: usize) -> Vec<Vec<LyndonWord>> {
    let mut out = vec![Vec::new(); max_len];
    if m == 0 || max_len == 0 {
        return out;
    }
    // Duval's successor algorithm: visits Lyndon words in lexicographic order.
    let mut w: Vec<usize> = vec![0];
    loop {
        out[w.len() - 1].push(LyndonWord(Word::new(w.clone())));
        let l = w.len();
        while w.len() < max_len {
            w.push(w[w.len() - l]);
        }
        while w.last() == Some(&(m - 1)) {
            w.pop();
        }
        match w.last_mut() {
            Some(last) => *last += 1,
            None => break,
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn counts(m: usize, n: usize) -> Vec<usize> {
        lyndon_words(m, n).iter().map(Vec::len).collect()
    }

    #[test]
    fn small_counts() {
        assert_eq!(counts(2, 3), vec![2, 1, 2]);
        assert_eq!(counts(1, 4), vec![1, 0, 0, 0]);
        assert_eq!(counts(2, 6), vec![2, 1, 2, 3, 6, 9]);
        let words: Vec<Vec<usize>> = lyndon_words(2, 3)[2]
            .iter()
            .map(|w| w.word().to_vec())
            .collect();
        assert_eq!(words, vec![vec![0, 0, 1], vec![0, 1, 1]]);
    }

    #[test]
    fn lyndon_predicate() {
        assert!(is_lyndon(&[0]));
        assert!(is_lyndon(&[0, 1]));
        assert!(!is_lyndon(&[0, 0]));
        assert!(!is_lyndon(&[1, 0]));
        assert!(!is_lyndon(&[0, 1, 0, 1]));
        assert!(is_lyndon(&[0, 0, 1, 0, 1]));
        assert!(!is_lyndon(&[]));
    }

    #[test]
    fn standard_factorizations() {
        let w = LyndonWord::new(Word::new(vec![0, 0, 1])).unwrap();
        let (u, v) = w.standard_factorization().unwrap();
        assert_eq!(
            (u.word().to_vec(), v.word().to_vec()),
            (vec![0], vec![0, 1])
        );
        // aabab = (aab)(ab)
        let w = LyndonWord::new(Word::new(vec![0, 0, 1, 0, 1])).unwrap();
        let (u, v) = w.standard_factorization().unwrap();
        assert_eq!(
            (u.word().to_vec(), v.word().to_vec()),
            (vec![0, 0, 1], vec![0, 1])
        );
        assert!(LyndonWord::letter(3).standard_factorization().is_none());
    }
}
