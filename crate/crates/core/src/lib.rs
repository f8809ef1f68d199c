//! Exact arithmetic around a Pisot unit β.
//!
//! Given the characteristic polynomial of a Pisot unit, this crate computes
//! the group 𝒫_β/ℤ[β] (order = |discriminant|), its symbolic representation
//! inside the two-sided β-compactum, and the arithmetic codings of the
//! companion toral automorphism whose kernel that group is.
//!
//! Everything that can be decided exactly is decided exactly: field
//! arithmetic in ℚ(β) runs over arbitrary-precision rationals, orderings and
//! floors fall back to certified interval evaluation with adaptive precision,
//! and every numerical answer carries an enclosure.
//!
//! The crate is `no_std` (with `alloc`); the `std` feature only adds
//! `std::error::Error` impls.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;
#[cfg(any(test, feature = "std"))]
extern crate std;

pub mod dyadic;
pub mod interval;

pub mod algnum;
pub mod coding;
pub mod error;
pub mod lattice;
pub mod matrix;
pub mod numeration;
pub mod poly;
pub mod symbolic;

pub use algnum::AlgebraicNumber;
pub use coding::{CodingMapSpec, FactorizationReport, KernelReport, SemiconjugacyReport, TorusPoint};
pub use dyadic::{Dyadic, Round};
pub use error::{Error, Result};
pub use interval::CertifiedInterval;
pub use numeration::{BetaExpansion, FinitaryCriterion, FinitaryReport, FinitaryVerdict, ParrySequence};
pub use symbolic::{GroupClass, PartialLimitReport, PeriodicWord, RecurrentSequence, SymbolicGroup};
pub use lattice::{CosetIndexer, PisotGroupStructure};
pub use matrix::{IntegerMatrix, SmithDecomposition};
pub use poly::{PisotCertificate, PisotPolynomial, RootDisk};

/// Adaptive precision starts here (bits).
pub const PRECISION_BASE: u32 = 64;
/// Hard cap on adaptive precision (bits); exceeding it is an explicit error,
/// never a silent wrong answer.
pub const PRECISION_CAP: u32 = 8192;
