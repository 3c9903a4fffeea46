//! Exact computation of Hochschild (co)homology, Connes operators and the
//! Batalin-Vilkovisky structures attached to a Koszul pair: a quadratic
//! algebra `A` with a graded automorphism on one side, its finite-dimensional
//! quadratic dual `A!` with its Frobenius structure on the other, and the
//! chain-level comparison maps that identify the two pictures.
//!
//! Everything is exact linear algebra over the rationals or a prime field,
//! organized per internal weight so every cell is finite-dimensional.

pub mod error;
pub mod kernel;
pub mod par;

pub mod algebra;
pub mod calculus;
pub mod duality;
pub mod frobenius;
pub mod hochschild;
pub mod input;
pub mod report;

pub use error::Error;
