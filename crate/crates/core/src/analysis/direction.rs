//! Dominant direction of information spread in scale space, and the averaged
//! Fermi velocity direction of the square-lattice band at half filling.

use crate::error::{Error, Result};
use std::collections::BTreeMap;
use std::f64::consts::PI;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Direction {
    pub vector: [f64; 2],
    pub eigenvalues: [f64; 2],
    /// Eigenvalues closer than `1e-12` (relative); the vector is then arbitrary.
    pub degenerate: bool,
    /// Net weight below 10% of the absolute weight.
    pub unreliable: bool,
}

impl Direction {
    pub fn angle(&self) -> f64 {
        self.vector[1].atan2(self.vector[0])
    }
}

fn canonical(v: [f64; 2]) -> [f64; 2] {
    let n = v[0].hypot(v[1]);
    let v = [v[0] / n, v[1] / n];
    if v[0] < 0.0 || (v[0] == 0.0 && v[1] < 0.0) {
        [-v[0], -v[1]]
    } else {
        v
    }
}

/// Leading eigenvector of `sum_l I(l) l l^T / sum_l I(l)`, with raw weights.
pub fn propagation_direction(weights: &BTreeMap<(i64, i64), f64>) -> Result<Direction> {
    let total: f64 = weights.values().sum();
    let abs: f64 = weights.values().map(|v| v.abs()).sum();
    if total == 0.0 || !total.is_finite() {
        return Err(Error::InvalidParameter("total weight is zero".into()));
    }
    let (mut sxx, mut sxy, mut syy) = (0.0, 0.0, 0.0);
    for (&(lx, ly), &w) in weights {
        let (x, y) = (lx as f64, ly as f64);
        sxx += w * x * x;
        sxy += w * x * y;
        syy += w * y * y;
    }
    let (a, b, c) = (sxx / total, sxy / total, syy / total);
    let mean = 0.5 * (a + c);
    let r = (0.25 * (a - c) * (a - c) + b * b).sqrt();
    let (l1, l2) = (mean + r, mean - r);
    let scale = l1.abs().max(l2.abs()).max(f64::MIN_POSITIVE);
    let degenerate = (l1 - l2) <= 1e-12 * scale;
    let v = if degenerate {
        [1.0, 0.0]
    } else if b != 0.0 {
        // null vector of A - l1 from the better conditioned row
        if (l1 - c).abs() >= (l1 - a).abs() {
            [l1 - c, b]
        } else {
            [b, l1 - a]
        }
    } else if a >= c {
        [1.0, 0.0]
    } else {
        [0.0, 1.0]
    };
    Ok(Direction {
        vector: canonical(v),
        eigenvalues: [l1, l2],
        degenerate,
        unreliable: total < 0.1 * abs,
    })
}

/// Normalized `(∫|v_x| ds, ∫|v_y| ds)` over the Fermi surface
/// `tx cos kx + ty cos ky = 0`.
///
/// With `v` the unit normal, `|v_x| ds = |dky|` and `|v_y| ds = |dkx|`, so the
/// integrals are the total variations of `ky` and `kx` along the surface.
/// The `kx` sweep is split where `ky(kx)` changes monotonicity or the surface
/// ends, which makes the polyline sums exact for any `samples`.
pub fn fermi_direction(tx: f64, ty: f64, samples: usize) -> Result<[f64; 2]> {
    if !(tx > 0.0 && ty > 0.0 && tx.is_finite() && ty.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "hoppings must be positive, got tx = {tx}, ty = {ty}"
        )));
    }
    if samples < 100 {
        return Err(Error::InvalidParameter(format!(
            "need at least 100 samples, got {samples}"
        )));
    }
    let r = tx / ty;
    // kx intervals (within [-pi, pi]) where |r cos kx| <= 1
    let intervals: Vec<(f64, f64)> = if r <= 1.0 {
        vec![(-PI, 0.0), (0.0, PI)]
    } else {
        let a = (1.0 / r).acos();
        vec![(-PI + a, -a), (a, PI - a)]
    };
    let ky = |kx: f64| (-r * kx.cos()).clamp(-1.0, 1.0).acos();
    let per = samples.div_ceil(intervals.len()).max(2);
    let (mut vx, mut vy) = (0.0, 0.0);
    for &(k0, k1) in &intervals {
        let mut prev = (k0, ky(k0));
        for s in 1..=per {
            let kx = k0 + (k1 - k0) * s as f64 / per as f64;
            let cur = (kx, ky(kx));
            vx += (cur.1 - prev.1).abs();
            vy += (cur.0 - prev.0).abs();
            prev = cur;
        }
    }
    // the lower branch -ky mirrors the upper one
    let n = vx.hypot(vy);
    if n == 0.0 {
        return Err(Error::InvalidParameter("empty Fermi surface".into()));
    }
    Ok([vx / n, vy / n])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn axis_weights() {
        let w: BTreeMap<_, _> = [((3, 0), 1.0), ((5, 0), 2.0), ((0, 0), 4.0)].into();
        let d = propagation_direction(&w).unwrap();
        assert_eq!(d.vector, [1.0, 0.0]);
    }

    #[test]
    fn symmetric_pair() {
        let w: BTreeMap<_, _> = [((1, 3), 1.0), ((3, 1), 1.0)].into();
        let d = propagation_direction(&w).unwrap();
        let s = 0.5f64.sqrt();
        assert!((d.vector[0] - s).abs() < 1e-12 && (d.vector[1] - s).abs() < 1e-12);
    }

    #[test]
    fn zero_weight_rejected() {
        let w: BTreeMap<_, _> = [((1, 3), 1.0), ((3, 1), -1.0)].into();
        assert!(propagation_direction(&w).is_err());
    }

    #[test]
    fn isotropic_fermi_surface() {
        for samples in [100, 101, 1000] {
            let v = fermi_direction(1.0, 1.0, samples).unwrap();
            assert!((v[0] - v[1]).abs() < 1e-10);
            assert!((v[0] - 0.5f64.sqrt()).abs() < 1e-10);
        }
    }

    #[test]
    fn anisotropic_fermi_surface() {
        let v = fermi_direction(2.5, 1.0, 10_000).unwrap();
        assert!(v[0] > v[1]);
        let w = fermi_direction(2.5, 1.0, 20_000).unwrap();
        assert!((v[0] - w[0]).abs() < 1e-6);
        assert!(fermi_direction(1.0, 1.0, 10).is_err());
    }
}
