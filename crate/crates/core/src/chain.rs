//! One-dimensional chains of site sets on a square grid.

use crate::error::{Error, Result};
use crate::family::GenericFamily;
use crate::plan::Axis;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChainKind {
    /// Intervals along `axis` spanning the whole orthogonal direction.
    CoarseGrain(Axis),
    /// Square annuli around the center of a square system.
    RadialRings,
}

/// A chain family with a `(position, scale)` label for every member.
///
/// Coarse-grained intervals are labeled by center and extent minus one.
/// Annuli are labeled by mid radius and thickness, where ring `k` spans the
/// radii `[k, k + 1]`.
#[derive(Clone, Debug)]
pub struct ChainFamily {
    pub family: GenericFamily,
    pub labels: Vec<(f64, f64)>,
}

impl ChainFamily {
    pub fn label_of(&self, sites: &[usize]) -> Option<(f64, f64)> {
        self.family.position(sites).map(|k| self.labels[k])
    }

    pub fn member_at(&self, position: f64, scale: f64) -> Option<&[usize]> {
        self.labels
            .iter()
            .position(|&(p, s)| p == position && s == scale)
            .map(|k| self.family.members()[k].as_slice())
    }
}

/// Ring index of every site, and the number of rings.
fn rings(l: usize) -> (Vec<usize>, usize) {
    let c = l as i64 - 1;
    let ring = |x: usize, y: usize| {
        let d = (2 * x as i64 - c).abs().max((2 * y as i64 - c).abs());
        (d / 2) as usize
    };
    let v = (0..l * l).map(|s| ring(s % l, s / l)).collect();
    (v, l.div_ceil(2))
}

pub fn chain_construction(kind: ChainKind, nx: usize, ny: usize) -> Result<ChainFamily> {
    if nx == 0 || ny == 0 {
        return Err(Error::InvalidParameter("empty system".into()));
    }
    let (cell, count): (Vec<usize>, usize) = match kind {
        ChainKind::CoarseGrain(Axis::X) => ((0..nx * ny).map(|s| s % nx).collect(), nx),
        ChainKind::CoarseGrain(Axis::Y) => ((0..nx * ny).map(|s| s / nx).collect(), ny),
        ChainKind::RadialRings => {
            if nx != ny {
                return Err(Error::InvalidParameter(format!(
                    "radial rings need a square system, got {nx}x{ny}"
                )));
            }
            rings(nx)
        }
    };
    let mut members = Vec::new();
    let mut keyed = Vec::new();
    for a in 0..count {
        for b in a..count {
            let sites: Vec<usize> = (0..nx * ny)
                .filter(|&s| (a..=b).contains(&cell[s]))
                .collect();
            let label = match kind {
                ChainKind::CoarseGrain(_) => ((a + b) as f64 / 2.0, (b - a) as f64),
                ChainKind::RadialRings => ((a + b + 1) as f64 / 2.0, (b + 1 - a) as f64),
            };
            keyed.push((sites.clone(), label));
            members.push(sites);
        }
    }
    let family = GenericFamily::new(members)?;
    let labels = family
        .members()
        .iter()
        .map(|m| keyed.iter().find(|(s, _)| s == m).unwrap().1)
        .collect();
    Ok(ChainFamily { family, labels })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coarse_grained_columns() {
        let c = chain_construction(ChainKind::CoarseGrain(Axis::X), 4, 4).unwrap();
        assert_eq!(c.family.len(), 10);
        assert!(c.family.members().iter().all(|m| m.len() % 4 == 0));
        let col = c.member_at(1.0, 0.0).unwrap();
        assert_eq!(col, &[1, 5, 9, 13]);
    }

    #[test]
    fn radial_rings_on_six_by_six() {
        let c = chain_construction(ChainKind::RadialRings, 6, 6).unwrap();
        assert_eq!(c.member_at(0.5, 1.0).unwrap(), &[14, 15, 20, 21]);
        assert_eq!(c.member_at(2.5, 1.0).unwrap().len(), 20);
        assert_eq!(c.member_at(1.5, 3.0).unwrap().len(), 36);
    }

    #[test]
    fn radial_rejects_rectangles() {
        assert!(chain_construction(ChainKind::RadialRings, 6, 4).is_err());
    }
}
