//! Entropy backends.
//!
//! Every backend reports the von Neumann information `I(C) = |C| - S(C)` in bits
//! for a sorted set of site ids.

pub mod dense;
pub mod gaussian;
pub mod stabilizer;

use crate::error::{Error, Result};
use crate::table::Fingerprint;

/// Eigenvalues of density matrices below this contribute nothing.
pub const EIG_CLIP: f64 = 1e-12;

pub trait EntropyBackend: Sync {
    fn num_sites(&self) -> usize;

    /// Information of the sorted, duplicate-free site set `sites`.
    fn information(&self, sites: &[usize]) -> Result<f64>;

    fn fingerprint(&self) -> Fingerprint;

    /// Whether the global state is known to be pure.
    fn is_pure(&self) -> bool;
}

pub fn check_sites(sites: &[usize], n: usize) -> Result<()> {
    for w in sites.windows(2) {
        if w[0] >= w[1] {
            return Err(Error::InvalidParameter(
                "site sets must be sorted and duplicate-free".into(),
            ));
        }
    }
    if let Some(&s) = sites.last() {
        if s >= n {
            return Err(Error::SiteOutOfRange { site: s, n });
        }
    }
    Ok(())
}

/// `-p log2 p`, zero at the clip threshold and below.
pub fn xlog2x(p: f64) -> f64 {
    if p <= EIG_CLIP {
        0.0
    } else {
        -p * p.log2()
    }
}

/// Binary entropy in bits; arguments within the clip of 0 or 1 give zero.
pub fn binary_entropy(p: f64) -> f64 {
    if p <= EIG_CLIP || p >= 1.0 - EIG_CLIP {
        return 0.0;
    }
    xlog2x(p) + xlog2x(1.0 - p)
}

/// Entropy of a density matrix spectrum in bits.
pub fn spectrum_entropy(eigs: impl IntoIterator<Item = f64>) -> f64 {
    eigs.into_iter().map(xlog2x).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binary_entropy_values() {
        assert!((binary_entropy(0.5) - 1.0).abs() < 1e-15);
        assert_eq!(binary_entropy(0.0), 0.0);
        assert_eq!(binary_entropy(1.0 - 1e-13), 0.0);
        let p: f64 = 0.1;
        let h = -p * p.log2() - (1.0 - p) * (1.0 - p).log2();
        assert!((binary_entropy(p) - h).abs() < 1e-15);
    }

    #[test]
    fn site_checks() {
        assert!(check_sites(&[0, 2, 5], 6).is_ok());
        assert!(check_sites(&[0, 0], 6).is_err());
        assert!(check_sites(&[6], 6).is_err());
    }
}
