//! Deterministic exact linear algebra over the rationals or a prime field.
//!
//! Every other module delegates rank/kernel/solve/span computations here.
//! All arithmetic is exact, pivot selection is leftmost-first, and all
//! returned bases are the canonical RREF ones, so downstream basis-dependent
//! data (structure constants of the transferred A-infinity operations) is
//! reproducible bit for bit.

mod field;
mod mat;

pub use field::{Field, FieldSpec, PrimeField, Rationals, DEFAULT_PRIME};
pub use mat::{span_equal, Mat, Rref};
