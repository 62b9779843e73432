//! Exact combinatorics of Coxeter groups whose diagram carries an arbitrary,
//! possibly cyclic, orientation.
//!
//! Everything is computed in exact integer and rational arithmetic: the
//! reflection representation, reduced words and inversion sets, weak-order
//! lattice operations, sorting words and the downward projection onto
//! sortable elements, feasible-set families with their exchange axioms, and
//! Cambrian cone data describing the fibers of the projection.
//!
//! The crate ships a CLI (`sortable-lab`) that loads group configurations,
//! runs scenario and theorem suites over bounded balls, and emits
//! machine-readable reports.

pub mod cartan;
pub mod cones;
pub mod config;
mod error;
pub mod group;
mod matrix;
pub mod order;
pub mod report;
pub mod roots;
pub mod scenario;
pub mod sortable;
pub mod suites;

pub use cartan::{all_orientations, from_b_matrix, Bond, CartanSpec, CoxeterData, GenSet, Orientation};
pub use error::{Error, Result};
pub use group::{Element, InversionSet, DEFAULT_CAP};
pub use order::JoinResult;
pub use roots::{FormValue, Root};

/// Exact rational scalar used for the symmetrizer and all bilinear forms.
pub type Rational = num_rational::Rational64;

/// A word in the simple generators, by index.
pub type Word = Vec<usize>;
