//! Weighted matroids represented over small finite fields.
//!
//! The crate builds projective, affine and Bose-Burton geometries over GF(q),
//! computes weighted cogirth (the minimum weight of a cocircuit) by
//! exhaustive row-space enumeration, and checks the extremal bounds on
//! `w(M) / g*(M)` together with their equality characterizations on concrete
//! instances.
//!
//! Everything that carries a weight is generic over an unsigned integer
//! scalar (see [`Weight`]); the aliases at the crate root fix it to `u64`,
//! which is what the command-line front end uses.

pub mod cli;
pub mod cogirth;
pub mod error;
pub mod geometry;
pub mod gf;
pub mod linalg;
pub mod matroid;
pub mod verify;

use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::iter::Sum;
use std::str::FromStr;

use num_integer::Integer;
use num_traits::{FromPrimitive, PrimInt, ToPrimitive, Unsigned};
use serde::de::DeserializeOwned;
use serde::Serialize;

pub use error::{Error, Result};
pub use gf::{Elem, FieldSpec};
pub use linalg::GFMatrix;
pub use verify::{ScanReport, ScanSpec};

/// Scalar type for element weights and every quantity derived from them.
///
/// Weights are positive integers, and all bound comparisons are done by
/// cross-multiplication, so only exact unsigned integer types qualify.
pub trait Weight:
    PrimInt
    + Integer
    + Unsigned
    + FromPrimitive
    + ToPrimitive
    + FromStr
    + Sum
    + Hash
    + Debug
    + Display
    + Default
    + Serialize
    + DeserializeOwned
    + Send
    + Sync
    + 'static
{
    /// Lifts a small count (a field order, a power of q, an element count).
    fn from_count(n: u64) -> Self {
        Self::from_u64(n).expect("count does not fit in the weight type")
    }
}

impl<T> Weight for T where
    T: PrimInt
        + Integer
        + Unsigned
        + FromPrimitive
        + ToPrimitive
        + FromStr
        + Sum
        + Hash
        + Debug
        + Display
        + Default
        + Serialize
        + DeserializeOwned
        + Send
        + Sync
        + 'static
{
}

/// Exact ratio of two weights, always in lowest terms.
pub type Ratio<W> = num_rational::Ratio<W>;

pub type Matroid = matroid::WeightedRepMatroid<u64>;
pub type ParallelClass = matroid::ParallelClass<u64>;
pub type Cocircuit = cogirth::Cocircuit<u64>;
pub type Report = verify::VerificationReport<u64>;
pub type Fraction = Ratio<u64>;
