use std::fmt;
use std::ops::Deref;

/// A tensor word: a sequence of basis indices. The empty word is the unit.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Word(Vec<usize>);

impl Word {
    pub fn new(letters: Vec<usize>) -> Self {
        Self(letters)
    }

    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn letter(i: usize) -> Self {
        Self(vec![i])
    }

    /// Tensor order.
    pub fn order(&self) -> usize {
        self.0.len()
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<usize> {
        self.0
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.0.len() + other.0.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// Renders with the given separator, `1` for the empty word.
    pub fn render(&self, names: impl Fn(usize) -> String, sep: &str) -> String {
        if self.0.is_empty() {
            return "1".to_string();
        }
        self.0
            .iter()
            .map(|&i| names(i))
            .collect::<Vec<_>>()
            .join(sep)
    }
}

impl Deref for Word {
    type Target = [usize];

    fn deref(&self) -> &[usize] {
        &self.0
    }
}

impl From<Vec<usize>> for Word {
    fn from(v: Vec<usize>) -> Self {
        Self(v)
    }
}

impl From<&[usize]> for Word {
    fn from(v: &[usize]) -> Self {
        Self(v.to_vec())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// All words of length exactly `n` over `m` letters, in lexicographic order.
pub fn all_words(m: usize, n: usize) -> Vec<Word> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|w| {
                (0..m).map(move |i| {
                    let mut v = w.clone();
                    v.push(i);
                    v
                })
            })
            .collect();
    }
    out.into_iter().map(Word).collect()
}

/// Weakly increasing index sequences of length `n` over `m` letters in which
/// the letters flagged by `odd` occur at most once.
pub fn sorted_sequences(m: usize, n: usize, odd: &dyn Fn(usize) -> bool) -> Vec<Word> {
    fn go(
        m: usize,
        n: usize,
        start: usize,
        odd: &dyn Fn(usize) -> bool,
        cur: &mut Vec<usize>,
        out: &mut Vec<Word>,
    ) {
        if cur.len() == n {
            out.push(Word(cur.clone()));
            return;
        }
        for i in start..m {
            cur.push(i);
            let next = if odd(i) { i + 1 } else { i };
            go(m, n, next, odd, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(m, n, 0, odd, &mut Vec::with_capacity(n), &mut out);
    out
}
