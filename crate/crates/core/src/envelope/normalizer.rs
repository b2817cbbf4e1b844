use std::collections::HashMap;
use std::sync::Arc;

use num_traits::One;

use crate::graded::Word;
use crate::lie::LiePresentation;
use crate::lincomb::LinComb;
use crate::scalar::{ratio, sign, Scalar};

/// PBW rewriting with a cache of word normal forms.
///
/// Adjacent letters `b a` with `b > a` become `±a b + [x_b, x_a]`, and a
/// repeated odd letter `a a` becomes `(1/2)[x_a, x_a]`. Words come out
/// weakly increasing with no repeated odd letter.
#[derive(Clone, Debug)]
pub struct Normalizer {
    algebra: Arc<LiePresentation>,
    odd: Vec<bool>,
    memo: HashMap<Word, LinComb<Word>>,
}

impl Normalizer {
    pub fn new(algebra: Arc<LiePresentation>) -> Self {
        let odd = (0..algebra.dim())
            .map(|i| algebra.space().is_odd(i))
            .collect();
        Self {
            algebra,
            odd,
            memo: HashMap::new(),
        }
    }

    pub fn algebra(&self) -> &Arc<LiePresentation> {
        &self.algebra
    }

    pub fn cached(&self) -> usize {
        self.memo.len()
    }

    /// Normal form of a single word; indices must be valid.
    pub fn normalize_word(&mut self, w: &Word) -> LinComb<Word> {
        if let Some(done) = self.memo.get(w) {
            return done.clone();
        }
        let out = match first_reducible(w, &self.odd) {
            None => LinComb::from_term(w.clone(), Scalar::one()),
            Some(i) => {
                let mut out = LinComb::new();
                for (v, c) in &rewrite_at(&self.algebra, &self.odd, w, i) {
                    let nf = self.normalize_word(v);
                    out.add_scaled(&nf, c);
                }
                out
            }
        };
        self.memo.insert(w.clone(), out.clone());
        out
    }

    pub fn normalize(&mut self, terms: &LinComb<Word>) -> LinComb<Word> {
        let mut out = LinComb::new();
        for (w, c) in terms {
            let nf = self.normalize_word(w);
            out.add_scaled(&nf, c);
        }
        out
    }
}

fn reducible(w: &[usize], odd: &[bool], i: usize) -> bool {
    w[i] > w[i + 1] || (w[i] == w[i + 1] && odd[w[i]])
}

fn first_reducible(w: &[usize], odd: &[bool]) -> Option<usize> {
    (0..w.len().saturating_sub(1)).find(|&i| reducible(w, odd, i))
}

/// Positions where a rewrite applies.
pub fn reducible_positions(w: &[usize], algebra: &LiePresentation) -> Vec<usize> {
    let odd: Vec<bool> = (0..algebra.dim())
        .map(|i| algebra.space().is_odd(i))
        .collect();
    (0..w.len().saturating_sub(1))
        .filter(|&i| reducible(w, &odd, i))
        .collect()
}

/// One rewriting step at positions `i, i + 1`.
fn rewrite_at(algebra: &LiePresentation, odd: &[bool], w: &[usize], i: usize) -> LinComb<Word> {
    let (a, b) = (w[i], w[i + 1]);
    let splice = |middle: &[usize]| {
        let mut v = Vec::with_capacity(w.len());
        v.extend_from_slice(&w[..i]);
        v.extend_from_slice(middle);
        v.extend_from_slice(&w[i + 2..]);
        Word::new(v)
    };
    let mut out = LinComb::new();
    if a == b {
        for (&l, c) in algebra.bracket_basis(a, a) {
            out.add_term(splice(&[l]), c * ratio(1, 2));
        }
    } else {
        out.add_term(splice(&[b, a]), sign(odd[a] && odd[b]));
        for (&l, c) in algebra.bracket_basis(a, b) {
            out.add_term(splice(&[l]), c.clone());
        }
    }
    out
}

/// Rewrites until no rule applies, letting `choose` pick which of the
/// reducible positions to rewrite at each step. Uncached; meant for checking
/// that the result does not depend on the order of rewriting.
pub fn normalize_with_strategy(
    algebra: &LiePresentation,
    w: &Word,
    choose: &mut dyn FnMut(&[usize]) -> usize,
) -> LinComb<Word> {
    let odd: Vec<bool> = (0..algebra.dim())
        .map(|i| algebra.space().is_odd(i))
        .collect();
    let mut pending = LinComb::from_term(w.clone(), Scalar::one());
    let mut done = LinComb::new();
    while let Some((v, c)) = pending.last().map(|(v, c)| (v.clone(), c.clone())) {
        pending.add_term(v.clone(), -c.clone());
        let positions: Vec<usize> = (0..v.len().saturating_sub(1))
            .filter(|&i| reducible(&v, &odd, i))
            .collect();
        if positions.is_empty() {
            done.add_term(v, c);
            continue;
        }
        let pick = positions[choose(&positions) % positions.len()];
        pending.add_scaled(&rewrite_at(algebra, &odd, &v, pick), &c);
    }
    done
}
