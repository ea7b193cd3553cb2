//! Sprawl of word metrics and convex perimeters.
//!
//! The sprawl of a group presentation is the limiting average word distance
//! between two points of the radius-`n` sphere, divided by `n`. For free
//! abelian groups it equals the average Minkowski distance between two
//! cone-measure-distributed points on the boundary of the convex hull of the
//! generators. This crate computes it
//!
//! - exactly for planar polygons ([`cutline`]),
//! - by Monte Carlo in any dimension ([`mc`]),
//! - directly on Cayley graphs by breadth-first search ([`cayley`]),
//!
//! and provides the closed forms for regular polygons, hexagons, spheres,
//! cubes and orthoplexes ([`closed_forms`]) plus polar bodies and Mahler
//! volumes ([`mahler`]).
//!
//! Run `cargo run --example <name>` for a tour; `examples/` has one program
//! per capability.

pub mod cayley;
pub mod cli;
pub mod closed_forms;
pub mod convex;
pub mod cutline;
pub mod error;
pub mod interval;
pub mod lattice;
pub mod mahler;
pub mod mc;
pub mod rational;

pub use error::{Result, SprawlError};
pub use lattice::{GeneratorSet, LatticeVector};
pub use rational::ExactRational;
