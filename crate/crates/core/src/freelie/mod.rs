//! Free Lie algebras on a graded space in the Lyndon basis.

mod algebra;
mod lyndon;
mod morphism;

pub use algebra::{
    bracketing, free_nilpotent, free_nilpotent_from, FreeLieAlgebra, FreeLieElement, LieBasisWord,
};
pub use lyndon::{is_lyndon, lyndon_words, LyndonWord};
pub use morphism::{extend_to_morphism, LieMorphism};
