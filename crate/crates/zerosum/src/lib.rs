//! Zero-sum subspaces of binary fields: construction, search, certification.
//!
//! An F_2-subspace E of F_{2^n} is *zero-sum* when the multiplicative
//! inverses of its nonzero elements sum to zero. Such subspaces are exactly
//! the witnesses that the binary inverse function fails to be k-th order
//! sum-free at k = dim E. This crate provides:
//!
//! * [`gf2n`] — word-packed arithmetic in F_{2^n}, 2 <= n <= 64, over the
//!   canonical (lexicographically smallest) irreducible modulus;
//! * [`bitlinalg`] — F_2 linear algebra on bit-matrices, canonical (RREF)
//!   subspace representation, and exhaustive subspace enumeration;
//! * [`moore`] — Moore determinants and the determinant criterion that
//!   decides zero-sum-ness from a basis in O(k^3) field operations;
//! * [`unipoly`] — univariate polynomials over F_{2^n} with seeded,
//!   deterministic root finding;
//! * [`construct`] — the constructive toolkit: non-zero-sum basis extension,
//!   kernel completion, subfield lifting, a strategy ladder that assembles
//!   certificates for requested dimensions, and certificate verification;
//! * [`census`] — exhaustive small-n determination of the realizable
//!   dimensions, statistical checks on affine subspaces, and exact plane
//!   curve point counts compared against a Hasse-Weil style lower bound.
//!
//! Everything randomized is driven by the splitmix64 generator in [`rng`]
//! with explicit seeds, so searches and certificates are reproducible.

pub mod bitlinalg;
pub mod census;
pub mod construct;
pub mod gf2n;
pub mod moore;
pub mod rng;
pub mod unipoly;

pub use bitlinalg::{subfield_subspace, BitMatrix, Subspace};
pub use census::{affine_sample_check, census_run, curve_point_count, CensusMode, CensusReport};
pub use construct::{
    build_zero_sum, complete_to_zero_sum, extend_non_zero_sum, lift_chain, lift_one,
    span_dim_over_subfield, verify_certificate, BuildOutcome, SearchBudget, ZeroSumCertificate,
};
pub use gf2n::{find_irreducible, FieldElement, FieldSpec};
pub use moore::{delta, delta_i, direct_inverse_sum, eval_fk, is_zero_sum, linearized_delta1_map};

/// Errors across the crate. Operations that can fail for a *searched*
/// reason (budget exhausted, no witness found) return `Option`/outcome
/// enums instead; `Error` is reserved for contract violations.
#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum Error {
    #[error("extension degree {0} outside supported range 2..=64")]
    DegreeOutOfRange(u32),
    #[error("operands belong to different field specs")]
    SpecMismatch,
    #[error("{l} does not divide the extension degree {n}")]
    NotADivisor { l: u32, n: u32 },
    #[error("dimension mismatch between matrix and operand")]
    DimensionMismatch,
    #[error("iteration budget exceeded")]
    BudgetExceeded,
    #[error("empty tuple")]
    EmptyTuple,
    #[error("index out of range")]
    IndexOutOfRange,
    #[error("tuple is linearly dependent")]
    DependentBasis,
    #[error("zero-dimensional subspace")]
    ZeroDimension,
    #[error("prefix tuple is linearly dependent")]
    DependentPrefix,
    #[error("input tuple is linearly dependent")]
    DependentInput,
    #[error("extension would exceed the n-1 generator bound")]
    TooManyGenerators,
    #[error("precondition violated: {0}")]
    PreconditionViolated(&'static str),
    #[error("polynomial division by zero")]
    DivisionByZeroPoly,
    #[error("gcd of two zero polynomials")]
    BothZero,
    #[error("zero polynomial has every element as a root")]
    ZeroPoly,
    #[error("polynomial degree exceeds the root-finding cap")]
    DegreeCapExceeded,
    #[error("requested dimension outside 1..=n-1")]
    DimensionOutOfRange,
    #[error("exhaustive cap exceeded")]
    CapExceeded,
    #[error("curve scan budget exceeded (requires 2n <= 26)")]
    ScanBudgetExceeded,
    #[error("invalid hex encoding")]
    InvalidHex,
}

pub type Result<T> = std::result::Result<T, Error>;
