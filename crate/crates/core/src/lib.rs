//! Exact-arithmetic engine for Yoneda algebras of monomial quiver algebras.
//!
//! Builds minimal projective resolutions of the simple modules over a
//! monomial path algebra (in particular Nakayama algebras given by a Kupisch
//! series), extracts the bigraded Ext algebra `Ext*(S,S)` with chosen cocycle
//! bases, transfers the DG algebra structure of the Hom complex onto `Ext` as
//! a minimal A-infinity structure, and verifies that the result is generated
//! in cohomological degrees 0 and 1.
//!
//! Everything is computed over an exact field: a prime field `GF(p)` (the
//! default, `p = 32003`) or the rationals. No floating point anywhere.
//!
//! The crate is `no_std` (with `alloc`); IO, JSON reports and the command
//! line front end live in the companion `yoneda-cli` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod ar;
pub mod chains;
pub mod contraction;
pub mod error;
pub mod exactla;
pub mod homcx;
pub mod module;
pub mod quiver;
pub mod reduction;
pub mod resolution;
pub mod transfer;

pub use error::Error;
pub use exactla::{Field, FieldSpec, Mat, PrimeField, Rationals, DEFAULT_PRIME};

/// Convenience alias used throughout: `Result` with the crate error type.
pub type Result<T> = core::result::Result<T, Error>;
