//! Exact arithmetic for quaternionic modular groups over real quadratic fields.
//!
//! The crate is organized around the chain of structures needed to describe
//! cusp cross-sections of Hilbert-Blumenthal quaternionic orbifolds:
//!
//! * [`quadfield`] — real quadratic fields `Q(sqrt(n))`, their rings of
//!   integers, Galois conjugation and fundamental units;
//! * [`quatalg`] — quaternions over such a field (exact) and over `f64`
//!   (geometric), with the standard involution and reduced norm/trace;
//! * [`orders`] — rank-8 integer lattices that are rings (orders), their
//!   pure sublattices and finite groups of norm-one units;
//! * [`matmob`] — 2x2 quaternionic matrices: Dieudonné determinant,
//!   Bisi-Gentili conditions, Iwasawa decomposition, Möbius action and the
//!   Poincaré extension to hyperbolic 5-space;
//! * [`hurwitz`] — right-Euclidean division in the Hurwitz integers, Bézout
//!   matrices and reduction to the fundamental chimney;
//! * [`cusp`] — generators of the modular group, the Galois-twist lattice in
//!   R^6, torus-bundle monodromy matrices and Anosov certificates.
//!
//! All algebraic paths use arbitrary-precision rationals; floating point
//! appears only in explicitly geometric operations. The crate is `no_std`
//! compatible (requires `alloc`).

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod cusp;
mod error;
pub(crate) mod fmath;
pub mod hurwitz;
pub mod linalg;
pub mod matmob;
pub mod orders;
pub mod quadfield;
pub mod quatalg;

pub use error::Error;

/// Arbitrary-precision integer used throughout the crate.
pub type Int = num_bigint::BigInt;
/// Arbitrary-precision rational used throughout the crate.
pub type Rat = num_rational::BigRational;

pub type Result<T> = core::result::Result<T, Error>;

/// Shorthand for an exact rational from a numerator/denominator pair.
pub fn rat(numer: i64, denom: i64) -> Rat {
    Rat::new(Int::from(numer), Int::from(denom))
}

/// Shorthand for an exact rational from an integer.
pub fn rat_int(v: i64) -> Rat {
    Rat::from_integer(Int::from(v))
}
