//! Finite metric measure spaces.
//!
//! A space is a finite set of points with a metric and strictly positive
//! weights summing to one. The crate computes sampling functionals of a
//! single space, distances between spaces, and simulates Λ-coalescent
//! genealogies as random ultrametric spaces.

pub mod cli;
pub mod coalescent;
pub mod diagnostics;
pub mod error;
pub mod functional;
pub mod io;
pub mod metrics;
pub mod rng;
pub mod sampling;
pub mod space;

pub use error::{Error, Result};
pub use space::MmSpace;
