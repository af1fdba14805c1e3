//! Reductions of information lattices: per-multiscale sums and quasi-1D views.

use crate::error::Result;
use crate::index::SubsystemIndex;
use crate::lattice::InformationLattice;
use crate::plan::Axis;
use crate::stencil::chain_local;
use crate::table::InformationTable;
use std::collections::BTreeMap;

fn along(idx: &SubsystemIndex, axis: Axis) -> (i64, i64) {
    match axis {
        Axis::X => (idx.nx, idx.lx),
        Axis::Y => (idx.ny, idx.ly),
    }
}

fn region_len(region: &SubsystemIndex, axis: Axis) -> i64 {
    match axis {
        Axis::X => region.lx + 1,
        Axis::Y => region.ly + 1,
    }
}

/// Total local information per scale `(lx, ly)` over entries inside `region`
/// (the whole lattice when `None`).
pub fn info_per_multiscale(
    lattice: &InformationLattice,
    region: Option<&SubsystemIndex>,
) -> BTreeMap<(i64, i64), f64> {
    let mut out = BTreeMap::new();
    for (k, v) in &lattice.entries {
        if region.is_none_or(|r| r.contains(k)) {
            *out.entry((k.lx, k.ly)).or_insert(0.0) += v;
        }
    }
    out
}

/// Quasi-1D local information `(n, l) -> i`, summing lattice entries inside
/// `region` over the axis orthogonal to `axis`.
pub fn quasi1d_from_lattice(
    lattice: &InformationLattice,
    region: &SubsystemIndex,
    axis: Axis,
) -> BTreeMap<(i64, i64), f64> {
    let mut out = BTreeMap::new();
    for (k, v) in &lattice.entries {
        if region.contains(k) {
            *out.entry(along(k, axis)).or_insert(0.0) += v;
        }
    }
    out
}

/// Quasi-1D local information from the information of blocks spanning the full
/// orthogonal extent of `region`.
pub fn quasi1d_from_table(
    table: &InformationTable,
    region: &SubsystemIndex,
    axis: Axis,
) -> Result<BTreeMap<(i64, i64), f64>> {
    let len = region_len(region, axis);
    let mut out = BTreeMap::new();
    for n in 0..len {
        for l in 0..len - n {
            let idx = match axis {
                Axis::X => SubsystemIndex::new(region.nx + n, region.ny, l, region.ly),
                Axis::Y => SubsystemIndex::new(region.nx, region.ny + n, region.lx, l),
            };
            out.insert(along(&idx, axis), chain_local(table, idx, axis)?);
        }
    }
    Ok(out)
}

/// Total quasi-1D information per scale.
pub fn quasi1d_per_scale(q: &BTreeMap<(i64, i64), f64>) -> BTreeMap<i64, f64> {
    let mut out = BTreeMap::new();
    for (&(_, l), v) in q {
        *out.entry(l).or_insert(0.0) += v;
    }
    out
}

/// Per-scale quasi-1D information divided by the number of positions at each
/// scale inside `region`.
pub fn avg_quasi1d_per_scale(
    q: &BTreeMap<(i64, i64), f64>,
    region: &SubsystemIndex,
    axis: Axis,
) -> BTreeMap<i64, f64> {
    let len = region_len(region, axis);
    quasi1d_per_scale(q)
        .into_iter()
        .map(|(l, v)| (l, v / (len - l) as f64))
        .collect()
}
