//! Toric code patch with a line defect that exchanges electric and magnetic
//! charges, ending in two twists.
//!
//! Rotating the edge lattice by 45 degrees puts the qubits on a square grid
//! `(i, j) = (x + y, y - x)` for horizontal edges and `(x + y, y - x + 1)` for
//! vertical ones; plaquettes and stars become the two colors of a checkerboard
//! of faces. The defect is a dislocation: a segment of one qubit row is taken
//! out of the code and the face rows above and below it are glued. A glued
//! face acts as a plaquette on one side and as a star on the other. At each
//! end of the segment the two faces sharing the last removed qubit fuse into a
//! weight-five twist operator with a `Y` on the qubit next to the segment.
//!
//! A disk whose boundary is all of one type fixes the fusion channel of a twist
//! pair. The patch therefore has a rough segment on its bottom boundary: the
//! bottom edges of the segment are removed together with the stars they touch,
//! which leaves the defect-free patch with a unique ground state and the
//! patch with a twist pair with a two-dimensional ground space. Removed qubits
//! stay in the register as decoupled qubits in `|0>`.

use super::check_size;
use super::toric::{canonical_generators, Generator};
use crate::backend::dense::{prepare_stabilizer_projected, DenseState};
use crate::backend::stabilizer::StabilizerTableau;
use crate::error::{Error, Result};
use crate::geometry::EdgeLayout;
use crate::gf2::IndependenceTracker;
use crate::pauli::PauliString;
use std::collections::BTreeMap;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DefectPath {
    /// Horizontal edge `(x, y)` where the removed staircase starts.
    pub start: (usize, usize),
    /// Number of removed edges; the staircase alternates horizontal and
    /// vertical edges towards the upper right.
    pub length: usize,
}

/// Rough stretch `x0..x1` of the bottom boundary.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RoughSegment {
    pub x0: usize,
    pub x1: usize,
}

#[derive(Clone, Debug)]
pub struct TwistPatch {
    pub layout: EdgeLayout,
    pub tableau: StabilizerTableau,
    /// Qubits taken out of the code.
    pub removed: Vec<usize>,
    /// Twist positions in vertex coordinates; empty without a defect.
    pub twists: Vec<(f64, f64)>,
    /// Base-2 logarithm of the ground-space dimension.
    pub logical_qubits: usize,
}

pub fn rotated(layout: &EdgeLayout, e: usize) -> (i64, i64) {
    let (mx, my) = layout.midpoint2(e);
    ((mx + my - 1) / 2, (my - mx + 1) / 2)
}

fn face_corner(g: Generator) -> (i64, i64) {
    match g {
        Generator::Plaquette(x, y) => ((x + y) as i64, y as i64 - x as i64),
        Generator::Star(x, y) => ((x + y) as i64 - 1, y as i64 - x as i64),
    }
}

fn unrotated(i: f64, j: f64) -> (f64, f64) {
    ((i - j + 1.0) / 2.0, (i + j) / 2.0)
}

fn drop_dependent(gens: Vec<PauliString>) -> Vec<PauliString> {
    let mut tracker = IndependenceTracker::new();
    gens.into_iter()
        .filter(|g| {
            let mut v = g.x_words().to_vec();
            v.extend_from_slice(g.z_words());
            tracker.insert(&v)
        })
        .collect()
}

fn restricted(g: &PauliString, removed: &[usize]) -> PauliString {
    let mut p = PauliString::identity(g.num_qubits());
    for q in g.support() {
        if !removed.contains(&q) {
            p.set(q, g.op(q));
        }
    }
    p
}

fn build(
    px: usize,
    py: usize,
    defect: Option<DefectPath>,
    rough: Option<RoughSegment>,
) -> Result<TwistPatch> {
    check_size(px, py)?;
    let rough = rough.unwrap_or(RoughSegment { x0: 0, x1: 0 });
    if rough.x1 > 0 && rough.x0 >= rough.x1 || rough.x1 > px {
        return Err(Error::InvalidParameter(format!(
            "rough segment {}..{} outside the bottom boundary",
            rough.x0, rough.x1
        )));
    }
    let layout = EdgeLayout::new(px, py);
    let n = layout.num_edges();
    let mut faces = BTreeMap::new();
    for (label, g) in canonical_generators(&layout) {
        let dropped = rough.x1 > 0
            && matches!(label, Generator::Star(x, 0) if (rough.x0..=rough.x1).contains(&x));
        if !dropped {
            faces.insert(face_corner(label), g);
        }
    }
    let mut removed: Vec<usize> = (rough.x0..rough.x1)
        .map(|x| layout.horizontal(x, 0).unwrap())
        .collect();
    let mut gens = Vec::new();
    let mut twists = Vec::new();
    let mut defect_faces = Vec::new();
    if let Some(path) = defect {
        if path.length == 0 {
            return Err(Error::InvalidParameter("empty defect".into()));
        }
        let (x0, y0) = path.start;
        let j0 = y0 as i64 - x0 as i64;
        let i1 = (x0 + y0) as i64;
        let i2 = i1 + path.length as i64 - 1;
        let segment: Vec<usize> = (0..n)
            .filter(|&e| {
                let (i, j) = rotated(&layout, e);
                j == j0 && (i1..=i2).contains(&i)
            })
            .collect();
        if segment.len() != path.length {
            return Err(Error::InvalidParameter(format!(
                "defect of length {} leaves the {px}x{py} patch",
                path.length
            )));
        }
        for i in i1 - 1..=i2 {
            let (Some(top), Some(bottom)) = (faces.get(&(i, j0)), faces.get(&(i, j0 - 1))) else {
                return Err(Error::InvalidParameter(
                    "defect touches the patch boundary".into(),
                ));
            };
            if top.weight() != 4 || bottom.weight() != 4 {
                return Err(Error::InvalidParameter(
                    "defect touches the patch boundary".into(),
                ));
            }
            let mut p = restricted(top, &segment).mul(&restricted(bottom, &segment));
            p.make_hermitian_positive();
            gens.push(p);
            defect_faces.extend([(i, j0), (i, j0 - 1)]);
        }
        let j = j0 as f64;
        twists = vec![unrotated((i1 - 1) as f64, j), unrotated((i2 + 1) as f64, j)];
        removed.extend(segment);
    }
    removed.sort_unstable();
    for (corner, g) in &faces {
        if !defect_faces.contains(corner) {
            let p = restricted(g, &removed);
            if p.weight() > 0 {
                gens.push(p);
            }
        }
    }
    let mut gens = drop_dependent(gens);
    for &q in &removed {
        gens.push(PauliString::on_sites(n, &[q], 'Z'));
    }
    let tableau = StabilizerTableau::new(n, gens)?;
    let logical_qubits = n - tableau.generators().len();
    Ok(TwistPatch {
        layout,
        tableau,
        removed,
        twists,
        logical_qubits,
    })
}

/// Patch with a line defect; fails unless the ground space is two-dimensional.
pub fn toric_line_defect(
    px: usize,
    py: usize,
    path: DefectPath,
    rough: RoughSegment,
) -> Result<TwistPatch> {
    let patch = build(px, py, Some(path), Some(rough))?;
    if patch.logical_qubits != 1 {
        return Err(Error::Construction(format!(
            "ground space has dimension 2^{}, expected 2",
            patch.logical_qubits
        )));
    }
    Ok(patch)
}

/// The same patch without the defect; its ground state is unique.
pub fn toric_rough_patch(px: usize, py: usize, rough: RoughSegment) -> Result<TwistPatch> {
    let patch = build(px, py, None, Some(rough))?;
    if patch.logical_qubits != 0 {
        return Err(Error::Construction(format!(
            "ground space has dimension 2^{}, expected 1",
            patch.logical_qubits
        )));
    }
    Ok(patch)
}

/// Project computational basis states onto the stabilized space until one
/// survives.
pub fn project_ground_state(tableau: &StabilizerTableau, limit: usize) -> Result<DenseState> {
    let n = tableau.num_qubits();
    let gens = tableau.generators();
    let signs = vec![1i8; gens.len()];
    let mask = if n >= 64 { u64::MAX } else { (1u64 << n) - 1 };
    for b in 0..8u64 {
        let s = DenseState::basis(n, b.wrapping_mul(0x9e37_79b9_7f4a_7c15) & mask)?;
        match prepare_stabilizer_projected(&s.with_limit(limit), gens, &signs) {
            Ok(st) => return Ok(st),
            Err(Error::ZeroProjection) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::ZeroProjection)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::backend::EntropyBackend;

    const ROUGH: RoughSegment = RoughSegment { x0: 0, x1: 1 };
    const PATH: DefectPath = DefectPath {
        start: (1, 1),
        length: 2,
    };

    #[test]
    fn rotated_coordinates_of_a_plaquette() {
        let l = EdgeLayout::new(3, 3);
        let mut pts: Vec<_> = l.plaquette(1, 0).iter().map(|&e| rotated(&l, e)).collect();
        pts.sort();
        assert_eq!(pts, vec![(1, -1), (1, 0), (2, -1), (2, 0)]);
    }

    #[test]
    fn reference_patch_is_pure() {
        let p = toric_rough_patch(3, 3, ROUGH).unwrap();
        assert!(p.tableau.is_pure());
        assert_eq!(p.removed.len(), 1);
    }

    #[test]
    fn defect_gives_two_fold_degeneracy() {
        let p = toric_line_defect(3, 3, PATH, ROUGH).unwrap();
        assert_eq!(p.logical_qubits, 1);
        assert_eq!(p.twists, vec![(1.0, 0.5), (2.5, 2.0)]);
        let weights: Vec<usize> = p.tableau.generators().iter().map(|g| g.weight()).collect();
        assert_eq!(weights.iter().filter(|&&w| w == 5).count(), 2);
    }

    #[test]
    fn defect_on_the_boundary_rejected() {
        let path = DefectPath {
            start: (0, 0),
            length: 1,
        };
        assert!(toric_line_defect(3, 3, path, ROUGH).is_err());
    }

    #[test]
    fn uniform_boundary_fixes_fusion_channel() {
        let p = build(3, 3, Some(PATH), None).unwrap();
        assert_eq!(p.logical_qubits, 0);
        assert!(build(3, 3, None, None).unwrap().tableau.is_pure());
    }
}
