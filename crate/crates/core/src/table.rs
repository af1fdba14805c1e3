//! Subsystem information tables and backend fingerprints.

use crate::error::{Error, Result};
use crate::index::SubsystemIndex;
use sha2::{Digest, Sha256};
use std::collections::BTreeMap;
use std::fmt;

/// Opaque hash identifying a backend configuration.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fingerprint(pub String);

impl fmt::Display for Fingerprint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Incremental builder for [`Fingerprint`].
pub struct FingerprintBuilder(Sha256);

impl FingerprintBuilder {
    pub fn new(tag: &str) -> Self {
        let mut h = Sha256::new();
        h.update(tag.as_bytes());
        h.update([0u8]);
        Self(h)
    }

    pub fn u64(mut self, x: u64) -> Self {
        self.0.update(x.to_le_bytes());
        self
    }

    pub fn f64(mut self, x: f64) -> Self {
        self.0.update(x.to_bits().to_le_bytes());
        self
    }

    pub fn f64s(mut self, xs: impl IntoIterator<Item = f64>) -> Self {
        for x in xs {
            self.0.update(x.to_bits().to_le_bytes());
        }
        self
    }

    pub fn bytes(mut self, b: &[u8]) -> Self {
        self.0.update((b.len() as u64).to_le_bytes());
        self.0.update(b);
        self
    }

    pub fn finish(self) -> Fingerprint {
        let d = self.0.finalize();
        Fingerprint(d.iter().take(12).map(|b| format!("{b:02x}")).collect())
    }
}

/// Information `I(C)` in bits per rectangle.
#[derive(Clone, Debug, PartialEq)]
pub struct InformationTable {
    pub extent: (usize, usize),
    pub fingerprint: Fingerprint,
    pub values: BTreeMap<SubsystemIndex, f64>,
}

impl InformationTable {
    pub fn new(extent: (usize, usize), fingerprint: Fingerprint) -> Self {
        Self {
            extent,
            fingerprint,
            values: BTreeMap::new(),
        }
    }

    /// Information of a rectangle; empty rectangles carry zero.
    pub fn get(&self, idx: &SubsystemIndex) -> Result<f64> {
        if idx.is_empty() {
            return Ok(0.0);
        }
        self.values
            .get(idx)
            .copied()
            .ok_or(Error::MissingEntry(*idx))
    }

    pub fn insert(&mut self, idx: SubsystemIndex, value: f64) {
        self.values.insert(idx, value);
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}
