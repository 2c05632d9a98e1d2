//! Exact-arithmetic invariant theory for quiver representations.
//!
//! Everything here is computed over ℚ (arbitrary-precision rationals) or a
//! prime field 𝔽_p with word-sized modulus; there is no floating point
//! anywhere. The crate is organised around six subsystems:
//!
//! * [`field`] / [`matrix`] / [`schur`] / [`character`] — exact scalars,
//!   dense linear algebra with rank/nullspace, partitions and symmetric
//!   Laurent characters with Schur decomposition;
//! * [`quiver`] — quivers, dimension vectors, representations, the
//!   base-change action and the block embedding into matrix tuples;
//! * [`words`] — characteristic coefficients, word and cycle invariants,
//!   generator enumeration and exact symbolic expansion;
//! * [`semiinv`] — block-determinant semi-invariants and null-cone
//!   membership (randomized over a large prime, or exact at small sizes);
//! * [`hilbert`] — characters of coordinate-ring pieces and Hilbert-series
//!   truncations via trivial-module multiplicities;
//! * [`harness`] — the independent Lie-algebra dimension oracle,
//!   degree-by-degree generation profiles, bound formulas, null-cone
//!   zero-locus enumeration and separation-witness search.
//!
//! All values are immutable after construction and all operations are pure;
//! randomized paths take explicit seeds and are deterministic given them.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod character;
pub mod error;
pub mod field;
pub mod harness;
pub mod hilbert;
pub mod matrix;
pub mod poly;
pub mod quiver;
pub mod schur;
pub mod semiinv;
pub mod words;

pub use character::TorusCharacter;
pub use error::{Error, Result};
pub use field::{Field, FieldScalar};
pub use harness::{BoundRequest, DegreeProfile};
pub use hilbert::{HilbertTruncation, RingDescriptor};
pub use matrix::ExactMatrix;
pub use quiver::{DimVector, GroupElement, Quiver, QuiverRep, Weight};
pub use schur::DominantWeight;
pub use semiinv::{BlockSemiInvariant, NullConeVerdict};
pub use words::{CycleInvariant, WordInvariant};
