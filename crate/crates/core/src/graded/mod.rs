//! Graded substrate: bases, words, Koszul-signed permutations and truncated
//! tensor algebra elements.

pub mod perm;
pub mod space;
pub mod tensor;
pub mod word;

pub use perm::{koszul_sign, permute, Permutation};
pub use space::{BasisElement, GradedSpace};
pub use tensor::TensorElement;
pub use word::{all_words, sorted_sequences, Word};

pub(crate) use tensor::{same_space, sorting_sign, symmetrize_word};
