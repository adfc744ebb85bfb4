//! Matrix reductions backing the homology computations.

pub mod gf2;
pub mod snf;

pub use gf2::BitMatrix;
pub use snf::{smith_normal_form, IntMatrix};
