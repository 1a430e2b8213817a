//! Exact computations around the description of `K1(R)` as the colimit of
//! `GL(3, R) => GL(4, R) => ...` along both the first and the last
//! stabilization embeddings.
//!
//! The crate works over `Z` and `Z/m`. It provides exact matrix arithmetic
//! with a division-free determinant, the stabilization embeddings, elementary
//! factorizations, `K1` classes via the determinant, and, in [`colimit`],
//! word representatives of the colimit together with relator-product
//! certificates and an independent checker for them.

pub mod colimit;
pub mod elementary;
pub mod error;
pub mod k1;
pub mod matrix;
pub mod rings;
pub mod stab;

pub use colimit::{
    alpha, commutation_witness, elementary_witness, equal_in_m, general_embedding_witness,
    lambda_map, rho, truncated_coequalizer, verify_witness, ColimitWord, Exponent, Letter, Relator,
    Verdict, Witness, WitnessTerm,
};
pub use elementary::{
    commutator_decomposition, elem, is_in_e, sl_factor, whitehead_factor, ElementaryFactorization,
    ElementaryMatrix,
};
pub use error::{Error, Result};
pub use k1::{class_of_matrix, k1_group, K1Class};
pub use matrix::{InvertibleMatrix, SquareMatrix};
pub use num_bigint::BigInt;
pub use rings::{crt_split, unit_group, CrtDecomposition, RingDescriptor, RingElement};
pub use stab::{
    chain_apply, conjugating_permutation, destabilize, embed_at, EmbeddingChain, Position,
};
