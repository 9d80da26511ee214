//! Non-unique factorization invariants of numerical monoids.
//!
//! General algorithms (factorization sets, R-classes, catenary and tame
//! degrees, ω and τ) live in [`factorization`] and [`chains`]. The closed
//! forms for monoids generated by generalized arithmetic sequences live in
//! [`gas`], and [`harness`] sweeps parameter grids comparing the two.

pub mod chains;
pub mod error;
pub mod factorization;
pub mod gas;
pub mod harness;
pub mod monoid;

pub use error::{Error, Result};
pub use factorization::Factorization;
pub use gas::GasParams;
pub use monoid::NumericalMonoid;
