//! Generalized Lovász theta bodies over polyhedral scaling-invariant cones.
//!
//! The crate computes the theta function of a graph by five independent
//! routes and checks the equalities and antiblocking identities that relate
//! them, together with the classical relaxations of the stable set polytope.

#![allow(clippy::needless_range_loop)]

pub mod cones;
pub mod corners;
pub mod error;
pub mod graph;
pub mod linalg;
pub mod solvers;
pub mod stabrelax;
pub mod theta;

pub use error::{Error, Result};
