//! Exact rational cochain complexes, long exact sequences and braids.

pub mod braid;
pub mod cochain;
pub mod error;
pub mod exactness;
pub mod linalg;
pub mod random;
pub mod topology;

pub use error::{Error, Result};
pub use linalg::{Matrix, Rational};
