//! Exact-arithmetic bounds for the stable 4-genus seminorm on rational
//! spans of knots.
//!
//! The library computes Tristram-Levine signature step functions from
//! Seifert matrices (or closed forms for torus knots), assembles them into
//! linear functionals bounding the stable 4-genus from below, intersects
//! known 4-genus facts into upper bounds via exact convex geometry, and
//! builds verifiable Casson-Gordon certificates for non-integer stable
//! genus. All arithmetic is exact: arbitrary-precision rationals, Sturm
//! sequences for root isolation, and certified interval enclosures for
//! cosines of rational multiples of pi.

pub mod ratio;
pub mod poly;
pub mod trig;
pub mod linalg;
pub mod knot;
pub mod signatures;
pub mod lp;
pub mod polytope;
pub mod stable;
pub mod fekete;
pub mod fp;
pub mod cg;

use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("torus parameters ({0},{1}) are not coprime")]
    NotCoprime(i64, i64),
    #[error("torus parameters ({0},{1}) out of range: both must be >= 2")]
    TorusRange(i64, i64),
    #[error("unknown catalog knot {0:?}")]
    UnknownKnot(String),
    #[error("catalog entry {0:?} failed verification: {1}")]
    CatalogVerification(String, String),
    #[error("Seifert matrix invalid: {0}")]
    BadSeifertMatrix(String),
    #[error("precision cap of {0} bits exceeded during certified refinement")]
    PrecisionCap(u32),
    #[error("polytope is unbounded")]
    Unbounded,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("parse error at offset {offset}: {msg}")]
    Parse { offset: usize, msg: String },
    #[error("subspace is not invariant under the deck action")]
    NotInvariant,
    #[error("unexpected eigenstructure: eigenspace dimensions do not add up")]
    UnexpectedEigenstructure,
    #[error("mixed character ({0},{1}): formula not available")]
    MixedCharacter(i64, i64),
    #[error("epsilon must lie in (0,1), got {0}")]
    EpsOutOfRange(String),
    #[error("search exhausted; best candidate: {0}")]
    SearchExhausted(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Default bit cap for certified interval refinement.
pub const DEFAULT_PRECISION_BITS: u32 = 256;
