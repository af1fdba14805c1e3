//! Position/scale labels of rectangular subsystems.
//!
//! A rectangle is labeled by its bottom-left corner `(nx, ny)` and its scale
//! `(lx, ly)`, the extent minus one along each axis. A negative scale denotes
//! the empty subsystem.

use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SubsystemIndex {
    pub nx: i64,
    pub ny: i64,
    pub lx: i64,
    pub ly: i64,
}

impl SubsystemIndex {
    pub const fn new(nx: i64, ny: i64, lx: i64, ly: i64) -> Self {
        Self { nx, ny, lx, ly }
    }

    pub fn is_empty(&self) -> bool {
        self.lx < 0 || self.ly < 0
    }

    /// Last covered coordinate along x and y.
    pub fn x_end(&self) -> i64 {
        self.nx + self.lx
    }

    pub fn y_end(&self) -> i64 {
        self.ny + self.ly
    }

    pub fn area(&self) -> usize {
        if self.is_empty() {
            0
        } else {
            ((self.lx + 1) * (self.ly + 1)) as usize
        }
    }

    /// Shift position by `(dx, dy)` and scale by `(-sx, -sy)`.
    pub fn offset(&self, dx: i64, dy: i64, sx: i64, sy: i64) -> Self {
        Self::new(self.nx + dx, self.ny + dy, self.lx - sx, self.ly - sy)
    }

    pub fn contains(&self, other: &SubsystemIndex) -> bool {
        if other.is_empty() {
            return true;
        }
        if self.is_empty() {
            return false;
        }
        self.nx <= other.nx
            && self.ny <= other.ny
            && other.x_end() <= self.x_end()
            && other.y_end() <= self.y_end()
    }

    /// Intersection; `None` when empty.
    pub fn intersect(&self, other: &SubsystemIndex) -> Option<SubsystemIndex> {
        if self.is_empty() || other.is_empty() {
            return None;
        }
        let nx = self.nx.max(other.nx);
        let ny = self.ny.max(other.ny);
        let xe = self.x_end().min(other.x_end());
        let ye = self.y_end().min(other.y_end());
        let r = SubsystemIndex::new(nx, ny, xe - nx, ye - ny);
        (!r.is_empty()).then_some(r)
    }

    /// True when the rectangle lies inside an `nx` by `ny` index grid.
    pub fn fits(&self, nx: usize, ny: usize) -> bool {
        self.nx >= 0 && self.ny >= 0 && self.x_end() < nx as i64 && self.y_end() < ny as i64
    }

    /// Equality of the denoted site sets.
    pub fn same_sites(&self, other: &SubsystemIndex) -> bool {
        (self.is_empty() && other.is_empty()) || self == other
    }
}

impl fmt::Display for SubsystemIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{};{},{})", self.nx, self.ny, self.lx, self.ly)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn intersection_of_overlapping_rectangles() {
        let a = SubsystemIndex::new(0, 0, 3, 3);
        let b = SubsystemIndex::new(2, 1, 3, 1);
        assert_eq!(a.intersect(&b), Some(SubsystemIndex::new(2, 1, 1, 1)));
        let c = SubsystemIndex::new(4, 0, 0, 0);
        assert_eq!(a.intersect(&c), None);
    }

    #[test]
    fn empty_indices_share_sites() {
        let a = SubsystemIndex::new(0, 0, -1, 2);
        let b = SubsystemIndex::new(3, 1, 0, -2);
        assert!(a.same_sites(&b));
        assert!(SubsystemIndex::new(0, 0, 0, 0).contains(&a));
    }

    #[test]
    fn ordering_is_lexicographic() {
        let mut v = [
            SubsystemIndex::new(1, 0, 0, 0),
            SubsystemIndex::new(0, 1, 0, 0),
            SubsystemIndex::new(0, 0, 1, 0),
            SubsystemIndex::new(0, 0, 0, 1),
        ];
        v.sort();
        assert_eq!(v[0], SubsystemIndex::new(0, 0, 0, 1));
        assert_eq!(v[3], SubsystemIndex::new(1, 0, 0, 0));
    }
}
