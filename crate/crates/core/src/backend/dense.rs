//! Explicit many-qubit states.
//!
//! Pure states are stored as sorted sparse amplitude lists, so product and cat
//! states stay cheap on many qubits. Entropies of pure states use the smaller of
//! the two Gram matrices of the amplitude matrix split along the cut. Qubit `q`
//! is bit `q` of the basis index.

use super::{check_sites, spectrum_entropy, EntropyBackend};
use crate::error::{Error, Result};
use crate::pauli::PauliString;
use crate::table::{Fingerprint, FingerprintBuilder};
use nalgebra::{Complex, DMatrix};
use std::collections::HashMap;

pub type C64 = Complex<f64>;

/// Default cap, in qubits, on the dimension of reduced matrices.
pub const DEFAULT_DENSE_LIMIT: usize = 12;
/// Largest register handled by projection-based preparation.
pub const MAX_VECTOR_QUBITS: usize = 26;

const AMP_CUTOFF: f64 = 1e-14;

#[derive(Clone, Debug)]
enum Kind {
    Pure(Vec<(u64, C64)>),
    Mixed(DMatrix<C64>),
}

#[derive(Clone, Debug)]
pub struct DenseState {
    n: usize,
    kind: Kind,
    limit: usize,
}

/// Eigenvalues of a Hermitian matrix, using the real solver when possible.
pub fn hermitian_eigenvalues(m: DMatrix<C64>) -> Vec<f64> {
    if m.iter().all(|z| z.im == 0.0) {
        m.map(|z| z.re)
            .symmetric_eigenvalues()
            .iter()
            .copied()
            .collect()
    } else {
        m.symmetric_eigenvalues().iter().copied().collect()
    }
}

fn extract_bits(b: u64, sites: &[usize]) -> u64 {
    sites
        .iter()
        .enumerate()
        .fold(0, |acc, (k, &s)| acc | ((b >> s) & 1) << k)
}

fn complement(sites: &[usize], n: usize) -> Vec<usize> {
    let mut inside = vec![false; n];
    for &s in sites {
        inside[s] = true;
    }
    (0..n).filter(|&q| !inside[q]).collect()
}

impl DenseState {
    pub fn from_amplitudes(n: usize, mut amps: Vec<(u64, C64)>) -> Result<Self> {
        if n > 63 {
            return Err(Error::InvalidParameter("at most 63 qubits".into()));
        }
        if let Some(&(b, _)) = amps.iter().find(|(b, _)| *b >> n != 0) {
            return Err(Error::InvalidParameter(format!(
                "basis index {b} exceeds {n} qubits"
            )));
        }
        amps.sort_by_key(|a| a.0);
        if amps.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(Error::InvalidParameter("repeated basis index".into()));
        }
        amps.retain(|(_, a)| a.norm() > AMP_CUTOFF);
        let norm: f64 = amps.iter().map(|(_, a)| a.norm_sqr()).sum();
        if (norm - 1.0).abs() > 1e-9 {
            return Err(Error::NotNormalized(norm.sqrt()));
        }
        Ok(Self {
            n,
            kind: Kind::Pure(amps),
            limit: DEFAULT_DENSE_LIMIT,
        })
    }

    pub fn from_vector(n: usize, v: &[C64]) -> Result<Self> {
        if v.len() != 1usize << n {
            return Err(Error::InvalidParameter(format!(
                "vector of length {} for {n} qubits",
                v.len()
            )));
        }
        let amps = v.iter().enumerate().map(|(b, &a)| (b as u64, a)).collect();
        Self::from_amplitudes(n, amps)
    }

    /// Normalize the vector first.
    pub fn from_unnormalized(n: usize, v: &[C64]) -> Result<Self> {
        let norm = v.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if norm < 1e-12 {
            return Err(Error::ZeroProjection);
        }
        let w: Vec<C64> = v.iter().map(|a| a / norm).collect();
        Self::from_vector(n, &w)
    }

    pub fn from_density_matrix(n: usize, rho: DMatrix<C64>) -> Result<Self> {
        let d = 1usize << n;
        if rho.nrows() != d || rho.ncols() != d {
            return Err(Error::BadMatrix("of dimension 2^n"));
        }
        if (&rho - rho.adjoint()).camax() > 1e-10 {
            return Err(Error::BadMatrix("Hermitian"));
        }
        let tr = rho.trace();
        if (tr.re - 1.0).abs() > 1e-9 {
            return Err(Error::NotNormalized(tr.re));
        }
        Ok(Self {
            n,
            kind: Kind::Mixed(rho),
            limit: DEFAULT_DENSE_LIMIT,
        })
    }

    /// Computational basis state.
    pub fn basis(n: usize, b: u64) -> Result<Self> {
        Self::from_amplitudes(n, vec![(b, C64::new(1.0, 0.0))])
    }

    /// `|+>` on every qubit.
    pub fn plus(n: usize) -> Result<Self> {
        let a = C64::new((0.5f64).powf(n as f64 / 2.0), 0.0);
        Self::from_amplitudes(n, (0..1u64 << n).map(|b| (b, a)).collect())
    }

    pub fn with_limit(mut self, limit: usize) -> Self {
        self.limit = limit;
        self
    }

    pub fn limit(&self) -> usize {
        self.limit
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn amplitudes(&self) -> Option<&[(u64, C64)]> {
        match &self.kind {
            Kind::Pure(a) => Some(a),
            Kind::Mixed(_) => None,
        }
    }

    pub fn to_vector(&self) -> Result<Vec<C64>> {
        let amps = self
            .amplitudes()
            .ok_or_else(|| Error::InvalidParameter("mixed state has no state vector".into()))?;
        if self.n > MAX_VECTOR_QUBITS {
            return Err(Error::DenseLimit {
                requested: self.n,
                limit: MAX_VECTOR_QUBITS,
            });
        }
        let mut v = vec![C64::new(0.0, 0.0); 1 << self.n];
        for &(b, a) in amps {
            v[b as usize] = a;
        }
        Ok(v)
    }

    /// Explicit reduced density matrix on `sites` (bit `k` is `sites[k]`).
    pub fn reduced_density_matrix(&self, sites: &[usize]) -> Result<DMatrix<C64>> {
        check_sites(sites, self.n)?;
        if sites.len() > self.limit {
            return Err(Error::DenseLimit {
                requested: sites.len(),
                limit: self.limit,
            });
        }
        let comp = complement(sites, self.n);
        let d = 1usize << sites.len();
        let mut rho = DMatrix::<C64>::zeros(d, d);
        match &self.kind {
            Kind::Pure(amps) => {
                let mut cols: HashMap<u64, Vec<(usize, C64)>> = HashMap::new();
                for &(b, a) in amps {
                    cols.entry(extract_bits(b, &comp))
                        .or_default()
                        .push((extract_bits(b, sites) as usize, a));
                }
                for col in cols.values() {
                    for &(i, a) in col {
                        for &(j, c) in col {
                            rho[(i, j)] += a * c.conj();
                        }
                    }
                }
            }
            Kind::Mixed(full) => {
                let dim = 1u64 << self.n;
                let split: Vec<(usize, u64)> = (0..dim)
                    .map(|b| (extract_bits(b, sites) as usize, extract_bits(b, &comp)))
                    .collect();
                for (b, &(i, o)) in split.iter().enumerate() {
                    for (c, &(j, p)) in split.iter().enumerate() {
                        if o == p {
                            rho[(i, j)] += full[(b, c)];
                        }
                    }
                }
            }
        }
        Ok(rho)
    }

    /// Von Neumann entropy of `sites` in bits.
    pub fn entropy(&self, sites: &[usize]) -> Result<f64> {
        check_sites(sites, self.n)?;
        match &self.kind {
            Kind::Mixed(_) => Ok(spectrum_entropy(hermitian_eigenvalues(
                self.reduced_density_matrix(sites)?,
            ))),
            Kind::Pure(amps) => {
                if sites.is_empty() || sites.len() == self.n {
                    return Ok(0.0);
                }
                let comp = complement(sites, self.n);
                let mut rows: HashMap<u64, usize> = HashMap::new();
                let mut cols: HashMap<u64, usize> = HashMap::new();
                let mut entries = Vec::with_capacity(amps.len());
                for &(b, a) in amps {
                    let nr = rows.len();
                    let r = *rows.entry(extract_bits(b, sites)).or_insert(nr);
                    let nc = cols.len();
                    let c = *cols.entry(extract_bits(b, &comp)).or_insert(nc);
                    entries.push((r, c, a));
                }
                // Gram matrix over the smaller index set.
                let by_rows = rows.len() <= cols.len();
                let d = rows.len().min(cols.len());
                if d > 1usize << self.limit {
                    return Err(Error::DenseLimit {
                        requested: d.ilog2() as usize + 1,
                        limit: self.limit,
                    });
                }
                let groups = if by_rows { cols.len() } else { rows.len() };
                let mut grouped: Vec<Vec<(usize, C64)>> = vec![Vec::new(); groups];
                for (r, c, a) in entries {
                    if by_rows {
                        grouped[c].push((r, a));
                    } else {
                        grouped[r].push((c, a.conj()));
                    }
                }
                let mut g = DMatrix::<C64>::zeros(d, d);
                for grp in &grouped {
                    for &(i, a) in grp {
                        for &(j, c) in grp {
                            g[(i, j)] += a * c.conj();
                        }
                    }
                }
                Ok(spectrum_entropy(hermitian_eigenvalues(g)))
            }
        }
    }

    /// `<psi| P |psi>` for a pure state.
    pub fn expectation(&self, p: &PauliString) -> Result<C64> {
        let amps = self
            .amplitudes()
            .ok_or_else(|| Error::InvalidParameter("expectation needs a pure state".into()))?;
        let map: HashMap<u64, C64> = amps.iter().copied().collect();
        let (x, z) = p.masks_u64();
        let ph = C64::i().powu(p.phase() as u32);
        let mut s = C64::new(0.0, 0.0);
        for &(b, a) in amps {
            // P|b> = i^e (-1)^{z.b} |b ^ x>
            if let Some(&c) = map.get(&(b ^ x)) {
                let sg = if (z & b).count_ones() % 2 == 0 {
                    1.0
                } else {
                    -1.0
                };
                s += c.conj() * ph * sg * a;
            }
        }
        Ok(s)
    }

    /// Apply a Pauli string to a pure state.
    pub fn apply_pauli(&self, p: &PauliString) -> Result<DenseState> {
        let amps = self
            .amplitudes()
            .ok_or_else(|| Error::InvalidParameter("Pauli action needs a pure state".into()))?;
        let (x, z) = p.masks_u64();
        let ph = C64::i().powu(p.phase() as u32);
        let out = amps
            .iter()
            .map(|&(b, a)| {
                let sg = if (z & b).count_ones() % 2 == 0 {
                    1.0
                } else {
                    -1.0
                };
                (b ^ x, ph * sg * a)
            })
            .collect();
        Ok(DenseState::from_amplitudes(self.n, out)?.with_limit(self.limit))
    }
}

/// Apply `prod_g (1 + s_g g) / 2` to the pure state `start` and renormalize.
///
/// Works on the sparse amplitudes, so the cost scales with the support of the
/// intermediate states rather than with `2^n`. Diagonal generators go first.
pub fn prepare_stabilizer_projected(
    start: &DenseState,
    generators: &[PauliString],
    signs: &[i8],
) -> Result<DenseState> {
    if generators.len() != signs.len() {
        return Err(Error::InvalidParameter("one sign per generator".into()));
    }
    let n = start.num_qubits();
    let Some(amps) = start.amplitudes() else {
        return Err(Error::InvalidParameter(
            "projection needs a pure state".into(),
        ));
    };
    let mut order: Vec<usize> = (0..generators.len()).collect();
    for g in generators {
        if g.num_qubits() != n {
            return Err(Error::InvalidParameter("generator size mismatch".into()));
        }
        if !g.is_hermitian() {
            return Err(Error::InvalidParameter("generator is not Hermitian".into()));
        }
    }
    order.sort_by_key(|&k| generators[k].masks_u64().0 != 0);
    let mut v: HashMap<u64, C64> = amps.iter().copied().collect();
    for k in order {
        let g = &generators[k];
        let (x, z) = g.masks_u64();
        let coef = C64::i().powu(g.phase() as u32) * signs[k] as f64;
        let act = |b: u64| {
            if (z & b).count_ones().is_multiple_of(2) {
                coef
            } else {
                -coef
            }
        };
        // (g psi)[b ^ x] = act(b) psi[b]
        let mut next: HashMap<u64, C64> = HashMap::with_capacity(v.len() * 2);
        for (&b, &a) in &v {
            *next.entry(b).or_default() += a * 0.5;
            *next.entry(b ^ x).or_default() += act(b) * a * 0.5;
        }
        next.retain(|_, a| a.norm() > AMP_CUTOFF);
        v = next;
    }
    let norm = v.values().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    if norm < 1e-12 {
        return Err(Error::ZeroProjection);
    }
    let out = v.into_iter().map(|(b, a)| (b, a / norm)).collect();
    Ok(DenseState::from_amplitudes(n, out)?.with_limit(start.limit()))
}

impl EntropyBackend for DenseState {
    fn num_sites(&self) -> usize {
        self.n
    }

    fn information(&self, sites: &[usize]) -> Result<f64> {
        Ok(sites.len() as f64 - self.entropy(sites)?)
    }

    fn fingerprint(&self) -> Fingerprint {
        let b = FingerprintBuilder::new("dense").u64(self.n as u64);
        match &self.kind {
            Kind::Pure(a) => a
                .iter()
                .fold(b.u64(0), |b, (i, z)| b.u64(*i).f64(z.re).f64(z.im))
                .finish(),
            Kind::Mixed(m) => m
                .iter()
                .fold(b.u64(1), |b, z| b.f64(z.re).f64(z.im))
                .finish(),
        }
    }

    fn is_pure(&self) -> bool {
        matches!(self.kind, Kind::Pure(_))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    fn bell() -> DenseState {
        let s = (0.5f64).sqrt();
        DenseState::from_amplitudes(2, vec![(0, c(s)), (3, c(s))]).unwrap()
    }

    #[test]
    fn bell_entropies() {
        let b = bell();
        assert!((b.entropy(&[0]).unwrap() - 1.0).abs() < 1e-12);
        assert!(b.entropy(&[0, 1]).unwrap().abs() < 1e-12);
        assert!((b.information(&[0, 1]).unwrap() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn gram_and_explicit_matrices_agree() {
        // Deterministic complex 5-qubit state.
        let v: Vec<C64> = (0..32)
            .map(|k| C64::new(((k * 7 % 11) as f64).sin(), ((k * 3 % 5) as f64).cos()))
            .collect();
        let s = DenseState::from_unnormalized(5, &v).unwrap();
        for sites in [vec![0], vec![1, 3], vec![0, 2, 4], vec![1, 2, 3, 4]] {
            let a = s.entropy(&sites).unwrap();
            let b = spectrum_entropy(hermitian_eigenvalues(
                s.reduced_density_matrix(&sites).unwrap(),
            ));
            assert!((a - b).abs() < 1e-10, "{sites:?}: {a} vs {b}");
        }
    }

    #[test]
    fn mixed_partial_trace() {
        // (|000><000| + |111><111|) / 2
        let mut rho = DMatrix::<C64>::zeros(8, 8);
        rho[(0, 0)] = c(0.5);
        rho[(7, 7)] = c(0.5);
        let s = DenseState::from_density_matrix(3, rho).unwrap();
        assert!((s.entropy(&[1]).unwrap() - 1.0).abs() < 1e-12);
        assert!((s.entropy(&[0, 2]).unwrap() - 1.0).abs() < 1e-12);
        assert!((s.information(&[0, 1, 2]).unwrap() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn limit_is_enforced() {
        let s = DenseState::basis(4, 0).unwrap().with_limit(2);
        assert!(matches!(
            s.reduced_density_matrix(&[0, 1, 2]),
            Err(Error::DenseLimit { .. })
        ));
    }

    #[test]
    fn projection_prepares_bell_state() {
        let gens = [
            PauliString::parse("XX").unwrap(),
            PauliString::parse("ZZ").unwrap(),
        ];
        let s = prepare_stabilizer_projected(&DenseState::basis(2, 0).unwrap(), &gens, &[1, 1])
            .unwrap();
        for g in &gens {
            assert!((s.expectation(g).unwrap() - c(1.0)).norm() < 1e-12);
        }
        let y = PauliString::parse("YY").unwrap();
        assert!((s.expectation(&y).unwrap() - c(-1.0)).norm() < 1e-12);
        let r = prepare_stabilizer_projected(&DenseState::basis(2, 1).unwrap(), &gens[1..], &[1]);
        assert!(matches!(r, Err(Error::ZeroProjection)));
    }

    #[test]
    fn unnormalized_input_rejected() {
        assert!(matches!(
            DenseState::from_amplitudes(1, vec![(0, c(1.0)), (1, c(1.0))]),
            Err(Error::NotNormalized(_))
        ));
    }
}
