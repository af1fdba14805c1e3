//! Declarative selection of the subsystems to evaluate.

use crate::error::{Error, Result};
use crate::family::GenericFamily;
use crate::index::SubsystemIndex;
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Axis {
    X,
    Y,
}

impl Axis {
    pub fn name(&self) -> &'static str {
        match self {
            Axis::X => "x",
            Axis::Y => "y",
        }
    }

    pub fn parse(s: &str) -> Option<Axis> {
        match s {
            "x" => Some(Axis::X),
            "y" => Some(Axis::Y),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum SubsystemPlan {
    /// Every rectangle of the system.
    Full,
    /// Every rectangle inside a region, e.g. an edge strip.
    Region(SubsystemIndex),
    /// Every rectangle inside a region at distance at least one from all edges.
    Bulk(SubsystemIndex),
    /// Blocks spanning the full orthogonal extent of the region, one per
    /// position and scale along `axis`.
    Quasi1d { region: SubsystemIndex, axis: Axis },
    /// An arbitrary intersection-closed family of site sets.
    Explicit(GenericFamily),
}

impl SubsystemPlan {
    /// Region covered by a rectangular plan on a grid of the given extent.
    pub fn region(&self, extent: (usize, usize)) -> Option<SubsystemIndex> {
        match self {
            SubsystemPlan::Full => Some(SubsystemIndex::new(
                0,
                0,
                extent.0 as i64 - 1,
                extent.1 as i64 - 1,
            )),
            SubsystemPlan::Region(r) | SubsystemPlan::Bulk(r) => Some(*r),
            SubsystemPlan::Quasi1d { region, .. } => Some(*region),
            SubsystemPlan::Explicit(_) => None,
        }
    }

    pub fn validate(&self, extent: (usize, usize)) -> Result<()> {
        let (ex, ey) = extent;
        if ex == 0 || ey == 0 {
            return Err(Error::InvalidParameter(
                "system extent must be positive".into(),
            ));
        }
        match self {
            SubsystemPlan::Full | SubsystemPlan::Explicit(_) => Ok(()),
            SubsystemPlan::Region(r) | SubsystemPlan::Quasi1d { region: r, .. } => {
                check_region(r, extent)
            }
            SubsystemPlan::Bulk(r) => {
                check_region(r, extent)?;
                let (xmax, ymax) = (ex as i64 - 2, ey as i64 - 2);
                let violated = if r.nx < 1 {
                    Some("nx >= 1 (left edge)".to_string())
                } else if r.ny < 1 {
                    Some("ny >= 1 (bottom edge)".to_string())
                } else if r.x_end() > xmax {
                    Some(format!("nx + lx <= {xmax} (right edge)"))
                } else if r.y_end() > ymax {
                    Some(format!("ny + ly <= {ymax} (top edge)"))
                } else {
                    None
                };
                match violated {
                    Some(bound) => Err(Error::InvalidParameter(format!(
                        "bulk region {r} touches an edge: needs {bound}"
                    ))),
                    None => Ok(()),
                }
            }
        }
    }
}

fn check_region(r: &SubsystemIndex, extent: (usize, usize)) -> Result<()> {
    if r.is_empty() {
        return Err(Error::InvalidIndex(*r, "region scale must be non-negative"));
    }
    if !r.fits(extent.0, extent.1) {
        return Err(Error::OutOfBounds {
            index: *r,
            nx: extent.0,
            ny: extent.1,
        });
    }
    Ok(())
}

impl fmt::Display for SubsystemPlan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = |r: &SubsystemIndex| format!("{} {} {} {}", r.nx, r.ny, r.lx, r.ly);
        match self {
            SubsystemPlan::Full => write!(f, "full"),
            SubsystemPlan::Region(x) => write!(f, "region {}", r(x)),
            SubsystemPlan::Bulk(x) => write!(f, "bulk {}", r(x)),
            SubsystemPlan::Quasi1d { region, axis } => {
                write!(f, "quasi1d {} {}", axis.name(), r(region))
            }
            SubsystemPlan::Explicit(fam) => write!(f, "explicit {}", fam.len()),
        }
    }
}

/// Parse the rectangular plan forms written by `Display`.
pub fn parse_plan(s: &str) -> Option<SubsystemPlan> {
    let toks: Vec<&str> = s.split_whitespace().collect();
    let rect = |t: &[&str]| -> Option<SubsystemIndex> {
        if t.len() != 4 {
            return None;
        }
        let v: Vec<i64> = t.iter().map(|x| x.parse().ok()).collect::<Option<_>>()?;
        Some(SubsystemIndex::new(v[0], v[1], v[2], v[3]))
    };
    match *toks.first()? {
        "full" if toks.len() == 1 => Some(SubsystemPlan::Full),
        "region" => rect(&toks[1..]).map(SubsystemPlan::Region),
        "bulk" => rect(&toks[1..]).map(SubsystemPlan::Bulk),
        "quasi1d" => Some(SubsystemPlan::Quasi1d {
            axis: Axis::parse(toks.get(1)?)?,
            region: rect(&toks[2..])?,
        }),
        _ => None,
    }
}

/// All rectangles selected by a rectangular plan, in canonical order.
pub fn enumerate_rectangles(
    extent: (usize, usize),
    plan: &SubsystemPlan,
) -> Result<Vec<SubsystemIndex>> {
    plan.validate(extent)?;
    let region = plan
        .region(extent)
        .ok_or_else(|| Error::InvalidParameter("explicit plans have no rectangles".into()))?;
    let mut out = Vec::new();
    match plan {
        SubsystemPlan::Quasi1d { axis, .. } => {
            let (start, len) = match axis {
                Axis::X => (region.nx, region.lx + 1),
                Axis::Y => (region.ny, region.ly + 1),
            };
            for n in 0..len {
                for l in 0..len - n {
                    out.push(match axis {
                        Axis::X => SubsystemIndex::new(start + n, region.ny, l, region.ly),
                        Axis::Y => SubsystemIndex::new(region.nx, start + n, region.lx, l),
                    });
                }
            }
        }
        _ => {
            for nx in region.nx..=region.x_end() {
                for ny in region.ny..=region.y_end() {
                    for lx in 0..=region.x_end() - nx {
                        for ly in 0..=region.y_end() - ny {
                            out.push(SubsystemIndex::new(nx, ny, lx, ly));
                        }
                    }
                }
            }
        }
    }
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_family_count() {
        let r = enumerate_rectangles((3, 3), &SubsystemPlan::Full).unwrap();
        assert_eq!(r.len(), 36);
        let r = enumerate_rectangles((6, 4), &SubsystemPlan::Full).unwrap();
        assert_eq!(r.len(), 21 * 10);
        assert!(r.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn quasi1d_chain_count() {
        let plan = SubsystemPlan::Quasi1d {
            region: SubsystemIndex::new(0, 0, 5, 3),
            axis: Axis::X,
        };
        let r = enumerate_rectangles((6, 4), &plan).unwrap();
        assert_eq!(r.len(), 21);
        assert!(r.iter().all(|i| i.ny == 0 && i.ly == 3));
    }

    #[test]
    fn bulk_touching_edge_rejected() {
        let plan = SubsystemPlan::Bulk(SubsystemIndex::new(0, 1, 2, 2));
        assert!(enumerate_rectangles((6, 6), &plan).is_err());
        let plan = SubsystemPlan::Bulk(SubsystemIndex::new(1, 1, 3, 3));
        assert!(enumerate_rectangles((6, 6), &plan).is_ok());
    }

    #[test]
    fn plan_text_round_trip() {
        for p in [
            SubsystemPlan::Full,
            SubsystemPlan::Region(SubsystemIndex::new(1, 0, 3, 2)),
            SubsystemPlan::Quasi1d {
                region: SubsystemIndex::new(0, 0, 7, 3),
                axis: Axis::Y,
            },
        ] {
            assert_eq!(parse_plan(&p.to_string()), Some(p));
        }
    }
}
