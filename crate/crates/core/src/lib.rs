//! Information lattice decomposition of quantum states on two-dimensional lattices.
//!
//! The von Neumann information `I(C) = |C| - S(C)` of rectangular subsystems is
//! inverted over the inclusion order of subsystems, producing local information
//! values `i` indexed by position and scale. The local values sum back to the
//! information of every subsystem in the family.
//!
//! Entropies come from interchangeable backends: [`backend::dense`] for small
//! explicit states, [`backend::gaussian`] for free fermions and
//! [`backend::stabilizer`] for Pauli stabilizer states.

pub mod analysis;
pub mod backend;
pub mod chain;
pub mod error;
pub mod family;
pub mod geometry;
pub mod gf2;
pub mod index;
pub mod lattice;
pub mod models;
pub mod pauli;
pub mod plan;
pub mod reduce;
pub mod stencil;
pub mod table;
pub mod tsv;

pub use error::{Error, Result};
pub use index::SubsystemIndex;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");
