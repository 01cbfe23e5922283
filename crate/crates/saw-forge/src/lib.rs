//! Exact, exhaustive machinery for self-avoiding walks and polygons on `Z^d`.
//!
//! Counts are exact integers and probabilities exact rationals. Everything is
//! meant for small lengths, where brute force is feasible and every identity
//! can be checked against an independent enumeration.

pub mod arith;
pub mod census;
pub mod edge3;
pub mod error;
pub mod geometry;
pub mod paths;
pub mod patterns;
pub mod snake;
pub mod surgery;

pub use error::{Error, Result};
pub use geometry::{lex_compare, Edge, Plaquette, Point, RigidMotion};
pub use paths::{Polygon, Walk};
