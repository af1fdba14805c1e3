//! Building information lattices from a backend.

use crate::backend::EntropyBackend;
use crate::error::{Error, Result};
use crate::family::{is_subset, GenericFamily, SiteSet};
use crate::geometry::Geometry;
use crate::index::SubsystemIndex;
use crate::plan::{enumerate_rectangles, SubsystemPlan};
use crate::stencil::{chain_local, ie_local_information_rect};
use crate::table::{Fingerprint, InformationTable};
use rayon::prelude::*;
use std::collections::{BTreeMap, HashMap};

#[derive(Clone, Copy, Debug, Default)]
pub struct BuildOptions {
    /// Worker threads; `None` uses the global pool.
    pub threads: Option<usize>,
}

/// Local information per rectangle.
#[derive(Clone, Debug, PartialEq)]
pub struct InformationLattice {
    pub extent: (usize, usize),
    pub plan: SubsystemPlan,
    pub fingerprint: Fingerprint,
    pub entries: BTreeMap<SubsystemIndex, f64>,
}

impl InformationLattice {
    pub fn get(&self, idx: &SubsystemIndex) -> Option<f64> {
        self.entries.get(idx).copied()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn total(&self) -> f64 {
        self.entries.values().sum()
    }

    /// Sum of local information over entries contained in `c`.
    pub fn sum_within(&self, c: &SubsystemIndex) -> f64 {
        self.entries
            .iter()
            .filter(|(k, _)| c.contains(k))
            .map(|(_, v)| v)
            .sum()
    }
}

fn run_in_pool<T: Send>(threads: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T> {
    match threads {
        None => Ok(f()),
        Some(t) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(t.max(1))
                .build()
                .map_err(|e| Error::InvalidParameter(format!("thread pool: {e}")))?;
            Ok(pool.install(f))
        }
    }
}

/// Information of every listed rectangle, evaluating each distinct site set once.
///
/// Entries already present in `cache` with a matching fingerprint are reused.
pub fn evaluate_table<B: EntropyBackend + ?Sized>(
    backend: &B,
    geometry: &Geometry,
    indices: &[SubsystemIndex],
    opts: &BuildOptions,
    cache: Option<&InformationTable>,
) -> Result<InformationTable> {
    if geometry.num_sites() != backend.num_sites() {
        return Err(Error::InvalidParameter(format!(
            "geometry has {} sites, backend {}",
            geometry.num_sites(),
            backend.num_sites()
        )));
    }
    let fp = backend.fingerprint();
    let cache = cache.filter(|c| c.fingerprint == fp);
    let mut table = InformationTable::new(geometry.extent(), fp);
    let mut sets: Vec<(SubsystemIndex, SiteSet)> = Vec::with_capacity(indices.len());
    for idx in indices {
        if let Some(v) = cache.and_then(|c| c.values.get(idx)) {
            table.insert(*idx, *v);
        } else {
            sets.push((*idx, geometry.rect_sites(idx)?));
        }
    }
    let mut unique: Vec<SiteSet> = sets.iter().map(|(_, s)| s.clone()).collect();
    unique.sort();
    unique.dedup();
    let values: Vec<Result<f64>> = run_in_pool(opts.threads, || {
        unique
            .par_iter()
            .map(|s| {
                if s.is_empty() {
                    Ok(0.0)
                } else {
                    backend.information(s)
                }
            })
            .collect()
    })?;
    let mut memo: HashMap<&SiteSet, f64> = HashMap::with_capacity(unique.len());
    for (s, v) in unique.iter().zip(values) {
        match v {
            Ok(v) => memo.insert(s, v),
            Err(e) => {
                let index = sets
                    .iter()
                    .find(|(_, t)| t == s)
                    .map(|(i, _)| *i)
                    .expect("set of a listed index");
                return Err(Error::AtSubsystem {
                    index,
                    source: Box::new(e),
                });
            }
        };
    }
    for (idx, s) in &sets {
        table.insert(*idx, memo[s]);
    }
    Ok(table)
}

/// Local information of every member of a rectangular plan.
pub fn lattice_from_table(
    table: &InformationTable,
    plan: &SubsystemPlan,
) -> Result<InformationLattice> {
    let indices = enumerate_rectangles(table.extent, plan)?;
    let mut entries = BTreeMap::new();
    for idx in indices {
        let v = match plan {
            SubsystemPlan::Quasi1d { axis, .. } => chain_local(table, idx, *axis)?,
            _ => ie_local_information_rect(table, idx)?,
        };
        entries.insert(idx, v);
    }
    Ok(InformationLattice {
        extent: table.extent,
        plan: plan.clone(),
        fingerprint: table.fingerprint.clone(),
        entries,
    })
}

/// Evaluate a rectangular plan and invert it into an information lattice.
pub fn build_lattice<B: EntropyBackend + ?Sized>(
    backend: &B,
    geometry: &Geometry,
    plan: &SubsystemPlan,
    opts: &BuildOptions,
) -> Result<(InformationLattice, InformationTable)> {
    let indices = enumerate_rectangles(geometry.extent(), plan)?;
    let table = evaluate_table(backend, geometry, &indices, opts, None)?;
    Ok((lattice_from_table(&table, plan)?, table))
}

/// Largest `|sum_{D in C} i(D) - I(C)|` over the table entries.
pub fn decomposition_check(lattice: &InformationLattice, table: &InformationTable) -> Result<f64> {
    if lattice.fingerprint != table.fingerprint {
        return Err(Error::FingerprintMismatch {
            lattice: lattice.fingerprint.0.clone(),
            table: table.fingerprint.0.clone(),
        });
    }
    let mut worst = 0.0f64;
    for (c, &info) in &table.values {
        worst = worst.max((lattice.sum_within(c) - info).abs());
    }
    Ok(worst)
}

/// Local information on an explicit family of site sets.
#[derive(Clone, Debug, PartialEq)]
pub struct GenericLattice {
    pub family: GenericFamily,
    pub fingerprint: Fingerprint,
    pub information: Vec<f64>,
    pub local: Vec<f64>,
}

impl GenericLattice {
    pub fn local_of(&self, sites: &[usize]) -> Option<f64> {
        self.family.position(sites).map(|k| self.local[k])
    }

    pub fn residual(&self) -> f64 {
        self.family
            .decomposition_residual(&self.local, &self.information)
    }

    /// Members contained in `sites`, with their local information.
    pub fn within(&self, sites: &[usize]) -> Vec<(&SiteSet, f64)> {
        self.family
            .members()
            .iter()
            .zip(&self.local)
            .filter(|(m, _)| is_subset(m, sites))
            .map(|(m, v)| (m, *v))
            .collect()
    }
}

pub fn build_generic_lattice<B: EntropyBackend + ?Sized>(
    backend: &B,
    family: &GenericFamily,
) -> Result<GenericLattice> {
    let information: Vec<f64> = family
        .members()
        .iter()
        .map(|m| backend.information(m))
        .collect::<Result<_>>()?;
    let lookup: HashMap<&SiteSet, f64> = family
        .members()
        .iter()
        .zip(information.iter().copied())
        .collect();
    let local = family.local_information(|s| {
        lookup
            .get(&s.to_vec())
            .copied()
            .ok_or_else(|| Error::MissingSiteSet(crate::family::join_sites(s)))
    })?;
    Ok(GenericLattice {
        family: family.clone(),
        fingerprint: backend.fingerprint(),
        information,
        local,
    })
}
