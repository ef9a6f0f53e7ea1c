//! Z₂-graded sparse linear algebra on tensor powers of `C^{2|1}` (or `C^{1|2}`).
//!
//! Basis states of arity `n` are multi-indices `(i_1..i_n)` with `i_k ∈ {1,2,3}`,
//! encoded as base-3 integers with site 1 as the most significant digit.

mod operator;
mod rmatrix;
mod signature;
mod vector;

pub use operator::{koszul_tensor, koszul_tensor_with, tensor_chain, GradedOperator, SignRule};
pub use rmatrix::{check_ybe, r_matrix, r_matrix_embedded, super_permutation, super_permutation_embedded};
pub use signature::{decode_key, encode_key, key_string, parse_key, Parity, Signature};
pub use vector::{Bra, DualGradedVector, GradedVector, Ket, Vector};
