//! Topological entanglement entropy from the largest scales of a lattice.

use crate::index::SubsystemIndex;
use crate::lattice::InformationLattice;

/// `(gamma_top, gamma_sum)`: the local information of the whole system, and
/// minus the total local information at scales spanning either full axis.
pub fn tee_extract(lattice: &InformationLattice) -> (f64, f64) {
    let lx = lattice.extent.0 as i64 - 1;
    let ly = lattice.extent.1 as i64 - 1;
    let top = lattice
        .get(&SubsystemIndex::new(0, 0, lx, ly))
        .unwrap_or(0.0);
    let spanning: f64 = lattice
        .entries
        .iter()
        .filter(|(k, _)| k.lx == lx || k.ly == ly)
        .map(|(_, v)| v)
        .sum();
    (top, -spanning)
}
