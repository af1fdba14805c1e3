//! Maps rectangle labels to backend site ids.

use crate::error::{Error, Result};
use crate::index::SubsystemIndex;

/// Edge numbering of a `px` by `py` plaquette patch with vertices `0..=px`, `0..=py`.
///
/// Horizontal edges `(x..x+1, y)` come first in row-major order, then vertical
/// edges `(x, y..y+1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct EdgeLayout {
    pub px: usize,
    pub py: usize,
}

impl EdgeLayout {
    pub fn new(px: usize, py: usize) -> Self {
        Self { px, py }
    }

    pub fn num_horizontal(&self) -> usize {
        self.px * (self.py + 1)
    }

    pub fn num_edges(&self) -> usize {
        self.num_horizontal() + self.py * (self.px + 1)
    }

    pub fn horizontal(&self, x: usize, y: usize) -> Option<usize> {
        (x < self.px && y <= self.py).then(|| y * self.px + x)
    }

    pub fn vertical(&self, x: usize, y: usize) -> Option<usize> {
        (x <= self.px && y < self.py).then(|| self.num_horizontal() + y * (self.px + 1) + x)
    }

    /// Edge midpoint in units of half a lattice spacing.
    pub fn midpoint2(&self, e: usize) -> (i64, i64) {
        if e < self.num_horizontal() {
            let (x, y) = (e % self.px, e / self.px);
            (2 * x as i64 + 1, 2 * y as i64)
        } else {
            let r = e - self.num_horizontal();
            let (x, y) = (r % (self.px + 1), r / (self.px + 1));
            (2 * x as i64, 2 * y as i64 + 1)
        }
    }

    /// Edges of plaquette `(x, y)`: bottom, top, left, right.
    pub fn plaquette(&self, x: usize, y: usize) -> [usize; 4] {
        [
            self.horizontal(x, y).unwrap(),
            self.horizontal(x, y + 1).unwrap(),
            self.vertical(x, y).unwrap(),
            self.vertical(x + 1, y).unwrap(),
        ]
    }

    /// Edges incident to vertex `(x, y)` that exist in the patch.
    pub fn star(&self, x: usize, y: usize) -> Vec<usize> {
        let mut v = Vec::with_capacity(4);
        if x > 0 {
            v.extend(self.horizontal(x - 1, y));
        }
        v.extend(self.horizontal(x, y));
        if y > 0 {
            v.extend(self.vertical(x, y - 1));
        }
        v.extend(self.vertical(x, y));
        v.sort_unstable();
        v
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Geometry {
    /// One site per lattice point, id `x + nx * y`.
    Sites { nx: usize, ny: usize },
    /// Qubits on the edges of a plaquette patch. Rectangles are labeled by vertex
    /// coordinates of a `region` of plaquettes whose lower-left vertex sits at
    /// `origin` in the patch, and contain every edge lying inside them.
    Edges {
        layout: EdgeLayout,
        origin: (usize, usize),
        region: (usize, usize),
    },
}

impl Geometry {
    pub fn sites(nx: usize, ny: usize) -> Self {
        Geometry::Sites { nx, ny }
    }

    /// Whole-patch edge geometry.
    pub fn edges(px: usize, py: usize) -> Self {
        Geometry::Edges {
            layout: EdgeLayout::new(px, py),
            origin: (0, 0),
            region: (px, py),
        }
    }

    /// Extent of the index grid.
    pub fn extent(&self) -> (usize, usize) {
        match *self {
            Geometry::Sites { nx, ny } => (nx, ny),
            Geometry::Edges { region, .. } => (region.0 + 1, region.1 + 1),
        }
    }

    pub fn num_sites(&self) -> usize {
        match self {
            Geometry::Sites { nx, ny } => nx * ny,
            Geometry::Edges { layout, .. } => layout.num_edges(),
        }
    }

    /// Sorted site ids of a rectangle.
    pub fn rect_sites(&self, r: &SubsystemIndex) -> Result<Vec<usize>> {
        if r.is_empty() {
            return Ok(Vec::new());
        }
        let (ex, ey) = self.extent();
        if !r.fits(ex, ey) {
            return Err(Error::OutOfBounds {
                index: *r,
                nx: ex,
                ny: ey,
            });
        }
        let (x0, y0, x1, y1) = (
            r.nx as usize,
            r.ny as usize,
            r.x_end() as usize,
            r.y_end() as usize,
        );
        let mut out = Vec::new();
        match self {
            Geometry::Sites { nx, .. } => {
                for y in y0..=y1 {
                    for x in x0..=x1 {
                        out.push(x + nx * y);
                    }
                }
            }
            Geometry::Edges { layout, origin, .. } => {
                let (ox, oy) = *origin;
                for y in y0..=y1 {
                    for x in x0..x1 {
                        out.extend(layout.horizontal(x + ox, y + oy));
                    }
                }
                for y in y0..y1 {
                    for x in x0..=x1 {
                        out.extend(layout.vertical(x + ox, y + oy));
                    }
                }
                out.sort_unstable();
            }
        }
        Ok(out)
    }
}
