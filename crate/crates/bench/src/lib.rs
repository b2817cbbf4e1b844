//! Shared inputs for the benchmarks.

use std::sync::Arc;

use formal_pbw::graded::all_words;
use formal_pbw::lie::{make_example, ExampleKind, LiePresentation};
use formal_pbw::TensorElement;

pub fn heisenberg() -> Arc<LiePresentation> {
    Arc::new(make_example(ExampleKind::Heisenberg).expect("builtin"))
}

pub fn upper_triangular(n: usize) -> Arc<LiePresentation> {
    Arc::new(make_example(ExampleKind::StrictUpperTriangular(n)).expect("builtin"))
}

/// Every basis word of order exactly `n`, as a tensor truncated at `n`.
pub fn words(p: &LiePresentation, n: usize) -> Vec<TensorElement> {
    all_words(p.dim(), n)
        .into_iter()
        .map(|w| TensorElement::from_word(p.space().clone(), n, w).expect("fits"))
        .collect()
}
