//! Exact combinatorics of the triangular basis of the symplectic Lie algebra
//! `sp_2n`: cascade enumeration, colored-partition orders, congruence product
//! expansions, and an exact adjoint-action engine over the rationals.
//!
//! The crate is `no_std` + `alloc`; all arithmetic is exact (big integers and
//! big rationals), never floating point.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod adjoint;
pub mod cascades;
pub mod partitions;
pub mod qseries;
pub mod root_system;

pub use root_system::{Algebra, BasisPoint, Index, PointId, RootKind};

use core::fmt;

/// Errors shared across the crate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Rank outside the supported range `1..=MAX_RANK`.
    RankOutOfRange { n: usize },
    /// A parameter combination that the caller supplied is invalid.
    InvalidParameter(&'static str),
    /// An orbit-closure computation exceeded the caller's dimension cap.
    DimCapExceeded { cap: usize },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::RankOutOfRange { n } => write!(
                f,
                "rank n = {} is outside the supported range 1..={}",
                n,
                root_system::MAX_RANK
            ),
            Error::InvalidParameter(what) => write!(f, "invalid parameter: {}", what),
            Error::DimCapExceeded { cap } => {
                write!(f, "span dimension exceeded the cap of {}", cap)
            }
        }
    }
}
