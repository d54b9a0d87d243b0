//! Angle-symmetric 6R linkages as six lines in dual-quaternion form.
//!
//! The crate builds the lambda matrix of a linkage, computes its rank exactly,
//! classifies the linkage as line symmetric (rank 2), parallel-property
//! (rank 3) or cubic-polynomial type (rank 4), synthesizes members of each
//! family, and traces the angle-symmetric motion numerically.

pub mod algebra;
pub mod classify;
pub mod cli;
pub mod error;
pub mod examples;
pub mod generate;
pub mod io;
pub mod lambda;
pub mod linalg;
pub mod linkage;
pub mod motionpoly;
pub mod poly;
pub mod sampler;

pub use error::{Error, Result};
