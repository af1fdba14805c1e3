//! Post-processing of information lattices: fits, propagation direction,
//! bulk/edge splitting and topological diagnostics.

pub mod direction;
pub mod edge;
pub mod fit;
pub mod split;
pub mod tee;

pub use direction::{fermi_direction, propagation_direction, Direction};
pub use edge::{edge_alpha, edge_strip, fit_alpha};
pub use fit::{fit_decay_length, fit_power_law, FitKind, FitResult, FitWindow};
pub use split::{bulk_edge_split, bulk_edge_split_quasi1d, bulk_region};
pub use tee::tee_extract;
