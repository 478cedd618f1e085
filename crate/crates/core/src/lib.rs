//! Exact computations for extremal Type II lattices.
//!
//! The crate has two halves that meet in the middle:
//!
//! - a symbolic pipeline — exact rational linear algebra ([`exact`]),
//!   q-expansions of the relevant modular forms ([`modforms`]), zonal
//!   Gegenbauer polynomials ([`harmonics`]), and the configuration systems
//!   over inner-product counts built from them ([`configproof`]);
//! - an integral-lattice engine ([`lattice`]) that enumerates fixed-norm
//!   shells exactly, computes shell spans, inner-product profiles, and
//!   spherical-design sums on explicit Gram matrices.
//!
//! Gram matrices for E8, D16+, and the Leech lattice ship in [`assets`], so
//! the symbolic claims can be cross-checked against brute enumeration at
//! ranks where that is feasible.
//!
//! Everything is exact: `BigInt`/`Rational` throughout, no floating point.

pub mod assets;
pub mod configproof;
pub mod error;
pub mod exact;
pub mod harmonics;
pub mod lattice;
pub mod modforms;

pub use error::{Error, Result};
pub use exact::{BigInt, Rational};
