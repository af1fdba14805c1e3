//! Splitting information per scale into bulk and edge contributions.

use crate::error::{Error, Result};
use crate::index::SubsystemIndex;
use crate::lattice::InformationLattice;
use crate::plan::Axis;
use crate::reduce::{info_per_multiscale, quasi1d_from_table, quasi1d_per_scale};
use crate::table::InformationTable;
use std::collections::BTreeMap;

/// Rectangle at distance `zeta` from every edge of the system.
pub fn bulk_region(extent: (usize, usize), zeta: usize) -> Result<SubsystemIndex> {
    let (ex, ey) = (extent.0 as i64, extent.1 as i64);
    let z = zeta as i64;
    if z < 1 || ex - 2 * z < 1 || ey - 2 * z < 1 {
        return Err(Error::InvalidParameter(format!(
            "distance {zeta} leaves no bulk in a {}x{} system",
            extent.0, extent.1
        )));
    }
    Ok(SubsystemIndex::new(z, z, ex - 2 * z - 1, ey - 2 * z - 1))
}

fn check_bulk(bulk: &SubsystemIndex, extent: (usize, usize)) -> Result<()> {
    let (ex, ey) = (extent.0 as i64, extent.1 as i64);
    if bulk.is_empty()
        || bulk.nx < 1
        || bulk.ny < 1
        || bulk.x_end() > ex - 2
        || bulk.y_end() > ey - 2
    {
        return Err(Error::InvalidIndex(*bulk, "bulk region touches an edge"));
    }
    Ok(())
}

type ScaleMap = BTreeMap<(i64, i64), f64>;

/// Bulk part (entries contained in `bulk`) and edge part (the rest) of the
/// information per multiscale. With `renormalize`, the bulk map is rescaled to
/// sum to the number of sites in the system.
pub fn bulk_edge_split(
    lattice: &InformationLattice,
    bulk: &SubsystemIndex,
    renormalize: bool,
) -> Result<(ScaleMap, ScaleMap)> {
    check_bulk(bulk, lattice.extent)?;
    let total = info_per_multiscale(lattice, None);
    let mut inner = info_per_multiscale(lattice, Some(bulk));
    let edge = total
        .iter()
        .map(|(k, v)| (*k, v - inner.get(k).copied().unwrap_or(0.0)))
        .collect();
    if renormalize {
        let sum: f64 = inner.values().sum();
        let target = (lattice.extent.0 * lattice.extent.1) as f64;
        if sum != 0.0 {
            inner.values_mut().for_each(|v| *v *= target / sum);
        }
    }
    Ok((inner, edge))
}

/// Quasi-1D version: per-scale information of the blocks spanning `region` and
/// of those spanning `bulk`, both along `axis`; returns `(bulk, edge)`.
pub fn bulk_edge_split_quasi1d(
    table: &InformationTable,
    region: &SubsystemIndex,
    bulk: &SubsystemIndex,
    axis: Axis,
) -> Result<(BTreeMap<i64, f64>, BTreeMap<i64, f64>)> {
    if !region.contains(bulk) {
        return Err(Error::InvalidIndex(
            *bulk,
            "bulk region outside the analysed region",
        ));
    }
    check_bulk(bulk, table.extent)?;
    let total = quasi1d_per_scale(&quasi1d_from_table(table, region, axis)?);
    let inner = quasi1d_per_scale(&quasi1d_from_table(table, bulk, axis)?);
    let edge = total
        .iter()
        .map(|(k, v)| (*k, v - inner.get(k).copied().unwrap_or(0.0)))
        .collect();
    Ok((inner, edge))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bulk_regions() {
        assert_eq!(
            bulk_region((10, 8), 2).unwrap(),
            SubsystemIndex::new(2, 2, 5, 3)
        );
        assert!(bulk_region((6, 6), 3).is_err());
        assert!(bulk_region((6, 6), 0).is_err());
    }
}
