//! Exact mutation combinatorics for cluster algebras: exchange matrices and seeds,
//! diagrams and their mutation classes, exchange-graph growth, tropical g-vector
//! dynamics with ping-pong certificates, and matrix unfoldings.

mod canon;
pub mod catalog;
pub mod diagram;
pub mod error;
pub mod growth;
pub mod matrix;
pub mod mutation_class;
pub mod seed;
pub mod symbolic;
pub mod tropical;
pub mod unfolding;
pub mod word;

pub use diagram::{
    canonical_form, diagram_of_matrix, is_realizable, matrix_of_diagram, mutate_diagram, CanonicalKey, Diagram,
};
pub use error::{Error, Result};
pub use mutation_class::{enumerate_class, is_mutation_finite, ClassResult, Finiteness};
pub use matrix::{is_skew_symmetrizable, mutate_matrix, ExchangeMatrix, Symmetrizer};
pub use seed::{apply_word, is_mutationally_trivial, is_trivial_word, mutate_seed, Seed};
pub use symbolic::{rank2_symbolic_orbit, Laurent, Rank2Orbit, SymbolicSeed};
pub use word::{compose_enhanced, EnhancedWord, MutationWord, Permutation};
