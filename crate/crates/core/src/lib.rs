//! Cubical complexes embedded in hypercubes.
//!
//! Faces are words over `{0, 1, *}` inside a fixed ambient cube `I^n`. On
//! top of that representation the crate provides GF(2) and integer
//! homology, homology-manifold checks, reconstruction of a manifold from a
//! low-dimensional skeleton, and hypercube embeddings of graphs.

pub mod cli;
pub mod complex;
pub mod embedding;
pub mod error;
pub mod format;
pub mod generators;
pub mod homology;
pub mod linalg;
pub mod manifold;
pub mod reconstruction;
pub mod word;

pub use complex::{CubicalComplex, FacePair};
pub use error::{Error, Result};
pub use homology::{DegreeGroup, HomologyProfile, Ring};
pub use word::{CubeWord, Letter};
