//! Chiral edge coefficient from the quasi-1D information along an edge strip.

use super::fit::{fit_constant_l2, fit_power_law, FitResult, FitWindow};
use crate::backend::EntropyBackend;
use crate::error::{Error, Result};
use crate::geometry::Geometry;
use crate::index::SubsystemIndex;
use crate::lattice::{evaluate_table, BuildOptions};
use crate::plan::{enumerate_rectangles, Axis, SubsystemPlan};
use crate::reduce::{avg_quasi1d_per_scale, quasi1d_from_table};
use std::collections::BTreeMap;

/// Strip along the bottom edge covering the middle half horizontally and rows
/// `0..=zeta`.
pub fn edge_strip(extent: (usize, usize), zeta: usize) -> Result<SubsystemIndex> {
    let (ex, ey) = extent;
    if ex < 4 || zeta >= ey {
        return Err(Error::InvalidParameter(format!(
            "edge strip of height {} does not fit a {ex}x{ey} system",
            zeta + 1
        )));
    }
    Ok(SubsystemIndex::new(
        (ex / 4) as i64,
        0,
        (ex / 2) as i64 - 1,
        zeta as i64,
    ))
}

/// `alpha` from a per-scale profile `i(l) = alpha / l^2`; the slope field
/// carries the effective exponent when a power law can be fitted.
pub fn fit_alpha(profile: &BTreeMap<i64, f64>, window: &FitWindow) -> Result<FitResult> {
    let mut r = fit_constant_l2(profile, window)?;
    if let Ok(p) = fit_power_law(profile, window) {
        r.slope = p.estimate;
    }
    Ok(r)
}

/// Average quasi-1D information per scale along `x` inside `strip`, and the
/// `alpha` fit over `window`.
pub fn edge_alpha<B: EntropyBackend + ?Sized>(
    backend: &B,
    geometry: &Geometry,
    strip: &SubsystemIndex,
    window: &FitWindow,
    opts: &BuildOptions,
) -> Result<(FitResult, BTreeMap<i64, f64>)> {
    let plan = SubsystemPlan::Quasi1d {
        region: *strip,
        axis: Axis::X,
    };
    plan.validate(geometry.extent())?;
    let indices = enumerate_rectangles(geometry.extent(), &plan)?;
    let table = evaluate_table(backend, geometry, &indices, opts, None)?;
    let q = quasi1d_from_table(&table, strip, Axis::X)?;
    let profile = avg_quasi1d_per_scale(&q, strip, Axis::X);
    Ok((fit_alpha(&profile, window)?, profile))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn strip_placement() {
        assert_eq!(
            edge_strip((32, 32), 3).unwrap(),
            SubsystemIndex::new(8, 0, 15, 3)
        );
    }

    #[test]
    fn synthetic_alpha() {
        let p: BTreeMap<i64, f64> = (1..16).map(|l| (l, 0.25 / (l * l) as f64)).collect();
        let r = fit_alpha(&p, &FitWindow::new(3, 8)).unwrap();
        assert_eq!(r.estimate, 0.25);
        assert!((r.slope + 2.0).abs() < 1e-10);
    }
}
