//! Stabilizer states given by commuting, independent Pauli generators.
//!
//! For a state stabilized by `k` generators on `n` qubits, the generators
//! supported inside `C` form a group of dimension `k - rank(G restricted to
//! the complement of C)`, which equals the information `I(C)` in bits.

use super::{check_sites, EntropyBackend};
use crate::error::{Error, Result};
use crate::gf2::BitMatrix;
use crate::pauli::PauliString;
use crate::table::{Fingerprint, FingerprintBuilder};

#[derive(Clone, Debug)]
pub struct StabilizerTableau {
    n: usize,
    generators: Vec<PauliString>,
    matrix: BitMatrix,
}

impl StabilizerTableau {
    pub fn new(n: usize, generators: Vec<PauliString>) -> Result<Self> {
        for (i, g) in generators.iter().enumerate() {
            if g.num_qubits() != n {
                return Err(Error::InvalidParameter(format!(
                    "generator {i} acts on {} qubits, expected {n}",
                    g.num_qubits()
                )));
            }
            if !g.is_hermitian() {
                return Err(Error::InvalidParameter(format!(
                    "generator {i} is not Hermitian"
                )));
            }
        }
        for i in 0..generators.len() {
            for j in i + 1..generators.len() {
                if !generators[i].commutes(&generators[j]) {
                    return Err(Error::NonCommuting(i, j));
                }
            }
        }
        let mut matrix = BitMatrix::zeros(generators.len(), 2 * n);
        for (r, g) in generators.iter().enumerate() {
            for q in 0..n {
                matrix.set(r, q, g.x_bit(q));
                matrix.set(r, n + q, g.z_bit(q));
            }
        }
        if matrix.rank() != generators.len() {
            return Err(Error::Construction("generators are not independent".into()));
        }
        Ok(Self {
            n,
            generators,
            matrix,
        })
    }

    /// Parse one generator per line; blank lines and `#` comments are skipped.
    pub fn from_text(text: &str) -> Result<Self> {
        let mut gens = Vec::new();
        for (k, line) in text.lines().enumerate() {
            let t = line.trim();
            if t.is_empty() || t.starts_with('#') {
                continue;
            }
            gens.push(PauliString::parse(t).map_err(|e| Error::Parse {
                line: k + 1,
                msg: e.to_string(),
            })?);
        }
        let n = gens.first().map_or(0, |g| g.num_qubits());
        Self::new(n, gens)
    }

    pub fn to_text(&self) -> String {
        self.generators.iter().map(|g| format!("{g}\n")).collect()
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[PauliString] {
        &self.generators
    }

    /// Conjugate-free update for applying the Pauli `p` to the state: every
    /// generator anticommuting with `p` changes sign.
    pub fn apply_pauli(&mut self, p: &PauliString) {
        for g in self.generators.iter_mut() {
            if !g.commutes(p) {
                g.negate();
            }
        }
    }

    fn columns(&self, qubits: impl Iterator<Item = usize> + Clone) -> Vec<usize> {
        qubits.clone().chain(qubits.map(|q| q + self.n)).collect()
    }

    /// Dimension of the stabilizer subgroup supported inside `sites`.
    pub fn supported_dimension(&self, sites: &[usize]) -> Result<usize> {
        check_sites(sites, self.n)?;
        let mut inside = vec![false; self.n];
        for &s in sites {
            inside[s] = true;
        }
        let comp = (0..self.n).filter(|&q| !inside[q]);
        let cols = self.columns(comp);
        Ok(self.generators.len() - self.matrix.select_columns(&cols).rank())
    }

    /// `2|C| - rank(G restricted to C)`, valid for pure states only.
    pub fn pure_information(&self, sites: &[usize]) -> Result<usize> {
        check_sites(sites, self.n)?;
        if self.generators.len() != self.n {
            return Err(Error::InvalidParameter("state is not pure".into()));
        }
        let cols = self.columns(sites.iter().copied());
        Ok(2 * sites.len() - self.matrix.select_columns(&cols).rank())
    }
}

impl EntropyBackend for StabilizerTableau {
    fn num_sites(&self) -> usize {
        self.n
    }

    fn information(&self, sites: &[usize]) -> Result<f64> {
        Ok(self.supported_dimension(sites)? as f64)
    }

    fn fingerprint(&self) -> Fingerprint {
        FingerprintBuilder::new("stabilizer")
            .u64(self.n as u64)
            .bytes(self.to_text().as_bytes())
            .finish()
    }

    fn is_pure(&self) -> bool {
        self.generators.len() == self.n
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bell_pair_information() {
        let t = StabilizerTableau::from_text("+XX\n+ZZ\n").unwrap();
        assert_eq!(t.information(&[0]).unwrap(), 0.0);
        assert_eq!(t.information(&[0, 1]).unwrap(), 2.0);
        assert_eq!(t.information(&[]).unwrap(), 0.0);
    }

    #[test]
    fn mixed_classical_correlation() {
        // Three-qubit classical GHZ mixture stabilized by ZZ pairs.
        let t = StabilizerTableau::from_text("+ZZI\n+IZZ\n").unwrap();
        assert_eq!(t.information(&[0]).unwrap(), 0.0);
        assert_eq!(t.information(&[0, 1]).unwrap(), 1.0);
        assert_eq!(t.information(&[0, 1, 2]).unwrap(), 2.0);
        assert!(!t.is_pure());
    }

    #[test]
    fn rejects_anticommuting_and_dependent() {
        assert!(matches!(
            StabilizerTableau::from_text("+XI\n+ZI\n"),
            Err(Error::NonCommuting(0, 1))
        ));
        assert!(StabilizerTableau::from_text("+ZZ\n+ZZ\n").is_err());
        assert!(matches!(
            StabilizerTableau::from_text("+ZZ\n+QZ\n"),
            Err(Error::Parse { line: 2, .. })
        ));
    }

    #[test]
    fn pauli_application_flips_signs() {
        let mut t = StabilizerTableau::from_text("+XX\n+ZZ\n").unwrap();
        t.apply_pauli(&PauliString::parse("ZI").unwrap());
        assert_eq!(t.to_text(), "-XX\n+ZZ\n");
    }
}
