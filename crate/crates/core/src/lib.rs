//! Exact Euler calculus on piecewise-linear shapes and cubical images.
//!
//! Shapes are finite simplicial or cubical complexes with rational coordinates.
//! Every Euler characteristic is computed over the open-cell partition of the
//! shape, so sublevel sets, level sets and superlevel sets all reduce to a
//! closed-form count per cell. On top of that sit the directional transforms
//! (ECT, SECT, LECT, SELECT, ERT, SERT) stored as exact step and
//! piecewise-linear curves, a GF(2) homology engine, and a battery of audits
//! that check the continuity and inversion properties of those curves against
//! independent oracles.

pub mod audit;
pub mod error;
pub mod euler;
pub mod geometry;
pub mod homology;
pub mod io;
pub mod transforms;

pub use error::{Error, Result};
pub use geometry::rational::Rational;
