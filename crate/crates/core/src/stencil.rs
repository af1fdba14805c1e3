//! Inclusion-exclusion stencils on rectangle tables.
//!
//! Scales are corner-labeled: `n` is the bottom-left corner, `l` the extent minus
//! one. Any term with a negative scale is the empty set and contributes zero.

use crate::error::{Error, Result};
use crate::index::SubsystemIndex;
use crate::plan::Axis;
use crate::table::InformationTable;

fn unit(axis: Axis) -> (i64, i64) {
    match axis {
        Axis::X => (1, 0),
        Axis::Y => (0, 1),
    }
}

/// One-dimensional difference along `axis`:
/// `f(n, l) - f(n, l-e) - f(n+e, l-e) + f(n+e, l-2e)`.
pub fn delta<F>(f: &F, idx: SubsystemIndex, axis: Axis) -> Result<f64>
where
    F: Fn(SubsystemIndex) -> Result<f64>,
{
    let (ex, ey) = unit(axis);
    Ok(
        f(idx)? - f(idx.offset(0, 0, ex, ey))? - f(idx.offset(ex, ey, ex, ey))?
            + f(idx.offset(ex, ey, 2 * ex, 2 * ey))?,
    )
}

/// Local information of a block in a chain of blocks along `axis`.
pub fn chain_local(table: &InformationTable, idx: SubsystemIndex, axis: Axis) -> Result<f64> {
    if idx.is_empty() {
        return Err(Error::InvalidIndex(idx, "negative scale"));
    }
    delta(&|i| table.get(&i), idx, axis)
}

/// Local information of the interval with center `n2 / 2` and scale `l` on a
/// chain stored along x with `ny = ly = 0`.
pub fn local_information_1d(table: &InformationTable, n2: i64, l: i64) -> Result<f64> {
    let idx = SubsystemIndex::new((n2 - l).div_euclid(2), 0, l, 0);
    if l < 0 || (n2 - l).rem_euclid(2) != 0 {
        return Err(Error::InvalidIndex(idx, "center and scale parity disagree"));
    }
    chain_local(table, idx, Axis::X)
}

const RECT_TERMS: [(i64, i64, i64, i64, f64); 16] = [
    (0, 0, 0, 0, 1.0),
    (0, 0, 1, 0, -1.0),
    (1, 0, 1, 0, -1.0),
    (0, 0, 0, 1, -1.0),
    (0, 1, 0, 1, -1.0),
    (1, 0, 2, 0, 1.0),
    (0, 1, 0, 2, 1.0),
    (0, 0, 1, 1, 1.0),
    (1, 0, 1, 1, 1.0),
    (0, 1, 1, 1, 1.0),
    (1, 1, 1, 1, 1.0),
    (1, 0, 2, 1, -1.0),
    (1, 1, 2, 1, -1.0),
    (0, 1, 1, 2, -1.0),
    (1, 1, 1, 2, -1.0),
    (1, 1, 2, 2, 1.0),
];

/// Local information of a rectangle from the 16-term inclusion-exclusion sum.
pub fn ie_local_information_rect(table: &InformationTable, idx: SubsystemIndex) -> Result<f64> {
    if idx.is_empty() {
        return Err(Error::InvalidIndex(idx, "negative scale"));
    }
    let mut s = 0.0;
    for &(dx, dy, sx, sy, c) in &RECT_TERMS {
        s += c * table.get(&idx.offset(dx, dy, sx, sy))?;
    }
    Ok(s)
}

/// The same quantity as the composition `delta_y(delta_x(I))`.
pub fn composed_local_information_rect(
    table: &InformationTable,
    idx: SubsystemIndex,
) -> Result<f64> {
    let dx = |i: SubsystemIndex| delta(&|j| table.get(&j), i, Axis::X);
    delta(&dx, idx, Axis::Y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::table::Fingerprint;

    fn chain_table(values: &[(i64, i64, f64)]) -> InformationTable {
        let mut t = InformationTable::new((8, 1), Fingerprint("t".into()));
        for &(n, l, v) in values {
            t.insert(SubsystemIndex::new(n, 0, l, 0), v);
        }
        t
    }

    #[test]
    fn one_dimensional_center_labels() {
        let t = chain_table(&[
            (0, 0, 0.1),
            (1, 0, 0.2),
            (2, 0, 0.3),
            (0, 1, 1.0),
            (1, 1, 1.5),
            (0, 2, 3.0),
        ]);
        assert!((local_information_1d(&t, 2, 2).unwrap() - (3.0 - 1.0 - 1.5 + 0.2)).abs() < 1e-15);
        assert!((local_information_1d(&t, 1, 1).unwrap() - (1.0 - 0.1 - 0.2)).abs() < 1e-15);
        assert!((local_information_1d(&t, 4, 0).unwrap() - 0.3).abs() < 1e-15);
        assert!(local_information_1d(&t, 3, 0).is_err());
    }

    #[test]
    fn rectangle_stencil_terms_balance() {
        // A constant table yields zero except where empty terms are dropped.
        let sum: f64 = RECT_TERMS.iter().map(|t| t.4).sum();
        assert_eq!(sum, 0.0);
    }
}
