//! Primitive-stability diagnostics for free groups and their representations
//! into `PSL(2, C)`.
//!
//! * [`word`]: free-group words, cyclic words and canonical class forms.
//! * [`whitehead`]: Whitehead graphs, automorphisms, primitivity and blocking.
//! * [`h3`]: upper half-space numerics for Möbius isometries.
//! * [`rep`]: representations, orbit paths and quasi-geodesic metrics.
//! * [`cli`]: the `primstab` command-line driver.

pub mod cli;
pub mod error;
pub mod h3;
pub mod rep;
pub mod whitehead;
pub mod word;

pub use error::{Error, Result};
