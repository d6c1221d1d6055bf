pub mod braid;
pub mod cli;
pub mod complex;
pub mod cube;
mod error;
mod exterior;
pub mod grid;
pub mod homology;
pub mod intlinalg;
pub mod invariant;
pub mod planar;
pub mod tikz;

pub use error::{Error, Result};
