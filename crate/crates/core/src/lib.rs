//! Weak-diameter list-coloring toolkit.
//!
//! A coloring has weak diameter at most N when every monochromatic
//! component spans vertices at pairwise distance at most N, measured in the
//! whole graph. This crate provides:
//!
//! - the measurement substrate (distances, balls, monochromatic
//!   components) in [`graph`];
//! - rooted tree-decompositions, torsos, truncations and construction
//!   validation in [`decomposition`];
//! - list-assignments, legitimacy checks and every explicit bound
//!   calculator in [`legitimacy`];
//! - the recursive precoloring-extension engine in [`engine`];
//! - user-facing colorers assembled from the engine in [`colorers`];
//! - instance generators and brute-force oracles in [`generators`] and
//!   [`oracle`];
//! - JSON document formats in [`io`].

pub mod colorers;
pub mod decomposition;
pub mod engine;
pub mod error;
pub mod generators;
pub mod graph;
pub mod io;
pub mod legitimacy;
pub mod oracle;

pub use error::{Error, Result};
