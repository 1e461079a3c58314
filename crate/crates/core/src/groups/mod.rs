//! Finite groups, exact characters and abelian duality.

pub mod abelian;
pub mod chartab;
pub mod cyclotomic;
pub mod finite;
pub mod fourier;

pub use abelian::{dual_pairing, AbelianGroup, Bicharacter, DualCharacter, DualPairing};
pub use chartab::{character_table, restrict_inner, CharacterTable};
pub use cyclotomic::Cyclotomic;
pub use finite::{build_group, ConjugacyStructure, FiniteGroup, GroupMorphism, GroupSpec, Subgroup};
pub use fourier::{convolve, fourier, inverse_fourier};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("group must have at least one element")]
    Empty,
    #[error("cyclic factor of order zero")]
    ZeroCyclicOrder,
    #[error("table row {row} has length {len}, expected {order}")]
    RaggedTable { row: usize, len: usize, order: usize },
    #[error("table is not a Latin square at ({row}, {col})")]
    NotLatin { row: usize, col: usize },
    #[error("element 0 is not the identity (fails at element {element})")]
    IdentityNotFirst { element: usize },
    #[error("table is not associative: ({a} {b}) {c} != {a} ({b} {c})")]
    NonAssociative { a: usize, b: usize, c: usize },
    #[error("element list is not a subgroup")]
    NotSubgroup,
    #[error("image table is malformed")]
    BadMorphismTable,
    #[error("map is not a homomorphism at ({a}, {b})")]
    NotHomomorphism { a: usize, b: usize },
    #[error("expected {expected} generator images, got {got}")]
    GeneratorCount { expected: usize, got: usize },
    #[error("bicharacter exponent matrix must be {rank}x{rank}")]
    BicharacterShape { rank: usize },
    #[error("inner product is not a rational integer")]
    NonIntegral,
    #[error("eigenspace split failed at every admissible prime tried: {primes:?}")]
    DixonExhausted { primes: Vec<u64> },
}
