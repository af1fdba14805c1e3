//! Toric code patches with qubits on edges.
//!
//! Plaquettes are `Z` on their four edges, stars `X` on the edges meeting at a
//! vertex. An open patch keeps every plaquette and every vertex star, truncated
//! at the boundary; the product of all stars is the identity, so exactly one
//! generator is dependent and the remaining ones fix a unique state.

use super::check_size;
use crate::backend::stabilizer::StabilizerTableau;
use crate::backend::EntropyBackend;
use crate::error::{Error, Result};
use crate::geometry::{EdgeLayout, Geometry};
use crate::gf2::IndependenceTracker;
use crate::pauli::PauliString;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Generator {
    Plaquette(usize, usize),
    Star(usize, usize),
}

#[derive(Clone, Debug)]
pub struct ToricPatch {
    pub layout: EdgeLayout,
    pub tableau: StabilizerTableau,
    /// Kept generators, aligned with the tableau rows.
    pub labels: Vec<Generator>,
    /// Generators found dependent on earlier ones in canonical order.
    pub dropped: Vec<Generator>,
}

impl ToricPatch {
    pub fn geometry(&self) -> Geometry {
        Geometry::edges(self.layout.px, self.layout.py)
    }

    pub fn row_of(&self, g: Generator) -> Option<usize> {
        self.labels.iter().position(|&l| l == g)
    }
}

/// Plaquettes row by row, then stars row by row.
pub fn canonical_generators(layout: &EdgeLayout) -> Vec<(Generator, PauliString)> {
    let n = layout.num_edges();
    let mut out = Vec::new();
    for y in 0..layout.py {
        for x in 0..layout.px {
            out.push((
                Generator::Plaquette(x, y),
                PauliString::on_sites(n, &layout.plaquette(x, y), 'Z'),
            ));
        }
    }
    for y in 0..=layout.py {
        for x in 0..=layout.px {
            out.push((
                Generator::Star(x, y),
                PauliString::on_sites(n, &layout.star(x, y), 'X'),
            ));
        }
    }
    out
}

/// Drop generators dependent on earlier ones; returns kept and dropped.
pub fn split_dependent(
    gens: Vec<(Generator, PauliString)>,
) -> (Vec<(Generator, PauliString)>, Vec<Generator>) {
    let mut tracker = IndependenceTracker::new();
    let mut kept = Vec::new();
    let mut dropped = Vec::new();
    for (label, g) in gens {
        let mut v = g.x_words().to_vec();
        v.extend_from_slice(g.z_words());
        if tracker.insert(&v) {
            kept.push((label, g));
        } else {
            dropped.push(label);
        }
    }
    (kept, dropped)
}

/// Open `px` by `py` plaquette patch.
pub fn toric_open_patch(px: usize, py: usize) -> Result<ToricPatch> {
    check_size(px, py)?;
    let layout = EdgeLayout::new(px, py);
    let (kept, dropped) = split_dependent(canonical_generators(&layout));
    if dropped.len() != 1 {
        return Err(Error::Construction(format!(
            "expected one dependent generator, found {}",
            dropped.len()
        )));
    }
    let (labels, gens): (Vec<_>, Vec<_>) = kept.into_iter().unzip();
    let tableau = StabilizerTableau::new(layout.num_edges(), gens)?;
    if !tableau.is_pure() {
        return Err(Error::Construction("patch state is not pure".into()));
    }
    Ok(ToricPatch {
        layout,
        tableau,
        labels,
        dropped,
    })
}

/// An `n` by `n` plaquette region embedded with `margin` plaquettes on every side
/// in a larger open patch, as a stand-in for the infinite plane. Rectangles of
/// the returned geometry are labeled by vertex coordinates of the region.
pub fn toric_plane_region(n: usize, margin: usize) -> Result<(ToricPatch, Geometry)> {
    if margin == 0 {
        return Err(Error::InvalidParameter(
            "margin must be at least one plaquette".into(),
        ));
    }
    let p = n + 2 * margin;
    let patch = toric_open_patch(p, p)?;
    let geom = Geometry::Edges {
        layout: patch.layout,
        origin: (margin, margin),
        region: (n, n),
    };
    Ok((patch, geom))
}

/// `Z` on a horizontal string of edges from vertex `(x0, y)` to `(x1, y)`;
/// creates star excitations at both ends.
pub fn electric_string(layout: &EdgeLayout, y: usize, x0: usize, x1: usize) -> PauliString {
    let edges: Vec<usize> = (x0..x1).filter_map(|x| layout.horizontal(x, y)).collect();
    PauliString::on_sites(layout.num_edges(), &edges, 'Z')
}

/// `X` on the vertical edges crossed by a dual string from plaquette `(x0, y)`
/// to plaquette `(x1, y)`; creates plaquette excitations at both ends.
pub fn magnetic_string(layout: &EdgeLayout, y: usize, x0: usize, x1: usize) -> PauliString {
    let edges: Vec<usize> = (x0 + 1..=x1)
        .filter_map(|x| layout.vertical(x, y))
        .collect();
    PauliString::on_sites(layout.num_edges(), &edges, 'X')
}
