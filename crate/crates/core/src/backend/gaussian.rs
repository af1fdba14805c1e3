//! Fermionic Gaussian states.
//!
//! Number-conserving states are described by `C_ij = <c_i^dag c_j>`; general
//! states by the real antisymmetric Majorana covariance
//! `M_ab = (i/2) <[g_a, g_b]>` with `g_{2j} = c_j + c_j^dag` and
//! `g_{2j+1} = -i (c_j - c_j^dag)`.

use super::dense::C64;
use super::{binary_entropy, check_sites, EntropyBackend};
use crate::error::{Error, Result};
use crate::table::{Fingerprint, FingerprintBuilder};
use nalgebra::DMatrix;

const SPECTRUM_TOL: f64 = 1e-8;

#[derive(Clone, Debug)]
pub enum CorrelationState {
    Real(DMatrix<f64>),
    Complex(DMatrix<C64>),
    Majorana(DMatrix<f64>),
}

fn is_real(m: &DMatrix<C64>) -> bool {
    m.iter().all(|z| z.im == 0.0)
}

fn check_hermitian(m: &DMatrix<C64>) -> Result<()> {
    if !m.is_square() {
        return Err(Error::BadMatrix("square"));
    }
    let scale = m.camax().max(1.0);
    if (m - m.adjoint()).camax() > 1e-10 * scale {
        return Err(Error::BadMatrix("Hermitian"));
    }
    Ok(())
}

/// Eigenpairs of a Hermitian matrix sorted by eigenvalue, then original order.
fn sorted_eigen(h: &DMatrix<C64>) -> (Vec<f64>, DMatrix<C64>) {
    let (vals, vecs): (Vec<f64>, DMatrix<C64>) = if is_real(h) {
        let e = h.map(|z| z.re).symmetric_eigen();
        (
            e.eigenvalues.iter().copied().collect(),
            e.eigenvectors.map(|x| C64::new(x, 0.0)),
        )
    } else {
        let e = h.clone().symmetric_eigen();
        (e.eigenvalues.iter().copied().collect(), e.eigenvectors)
    };
    let mut order: Vec<usize> = (0..vals.len()).collect();
    order.sort_by(|&a, &b| vals[a].total_cmp(&vals[b]).then(a.cmp(&b)));
    let sv = order.iter().map(|&k| vals[k]).collect();
    let sm = DMatrix::from_fn(vecs.nrows(), vecs.ncols(), |i, j| vecs[(i, order[j])]);
    (sv, sm)
}

/// Orthonormal occupied orbitals within a degenerate block.
///
/// The block projector is applied to `e_0, e_1, ...` in turn and the
/// projections are orthonormalized; the first `need` survivors are occupied.
fn resolve_degenerate(block: &DMatrix<C64>, need: usize) -> DMatrix<C64> {
    let n = block.nrows();
    let mut chosen: Vec<nalgebra::DVector<C64>> = Vec::new();
    for k in 0..n {
        if chosen.len() == need {
            break;
        }
        // P e_k = B B^dag e_k
        let coeffs = block.row(k).adjoint();
        let mut v = block * coeffs;
        for _ in 0..2 {
            for u in &chosen {
                let ov = u.dotc(&v);
                v -= u * ov;
            }
        }
        let norm = v.norm();
        if norm > 1e-6 {
            chosen.push(v / C64::new(norm, 0.0));
        }
    }
    DMatrix::from_columns(&chosen)
}

/// Slater-determinant ground state of the quadratic Hamiltonian `h` with
/// `filling` particles.
///
/// When the Fermi level sits inside a degenerate shell, the occupied part of
/// the shell is fixed by [`resolve_degenerate`], which makes the state a
/// deterministic function of `h`.
pub fn ground_state_number_conserving(
    h: &DMatrix<C64>,
    filling: usize,
) -> Result<CorrelationState> {
    check_hermitian(h)?;
    let n = h.nrows();
    if filling > n {
        return Err(Error::InvalidParameter(format!(
            "filling {filling} exceeds {n} modes"
        )));
    }
    let (vals, vecs) = sorted_eigen(h);
    let scale = vals.iter().fold(1.0f64, |a, v| a.max(v.abs()));
    let tol = 1e-9 * scale;
    let mut occ: Vec<usize> = (0..filling).collect();
    let mut extra: Option<DMatrix<C64>> = None;
    if filling > 0 && filling < n && vals[filling] - vals[filling - 1] < tol {
        let ef = vals[filling - 1];
        let below: Vec<usize> = (0..n).filter(|&k| vals[k] < ef - tol).collect();
        let shell: Vec<usize> = (0..n).filter(|&k| (vals[k] - ef).abs() <= tol).collect();
        let block = DMatrix::from_fn(n, shell.len(), |i, j| vecs[(i, shell[j])]);
        extra = Some(resolve_degenerate(&block, filling - below.len()));
        occ = below;
    }
    let mut cols: Vec<nalgebra::DVector<C64>> =
        occ.iter().map(|&k| vecs.column(k).into()).collect();
    if let Some(e) = extra {
        cols.extend(e.column_iter().map(|c| c.into()));
    }
    let c = if cols.is_empty() {
        DMatrix::<C64>::zeros(n, n)
    } else {
        let v = DMatrix::from_columns(&cols);
        // C_ij = sum_k conj(phi_k(i)) phi_k(j)
        (&v * v.adjoint()).map(|z| z.conj())
    };
    Ok(if is_real(h) {
        CorrelationState::Real(c.map(|z| z.re))
    } else {
        CorrelationState::Complex(c)
    })
}

/// Same as [`ground_state_number_conserving`] for a real symmetric `h`.
pub fn ground_state_real(h: &DMatrix<f64>, filling: usize) -> Result<CorrelationState> {
    ground_state_number_conserving(&h.map(|x| C64::new(x, 0.0)), filling)
}

/// Real antisymmetric `A` with `H = (i/4) sum_ab A_ab g_a g_b + const` for
/// `H = (1/2) Psi^dag H_bdg Psi`, `Psi = (c_1..c_N, c_1^dag..c_N^dag)`.
pub fn majorana_hamiltonian(h_bdg: &DMatrix<C64>) -> Result<DMatrix<f64>> {
    check_hermitian(h_bdg)?;
    let n2 = h_bdg.nrows();
    if !n2.is_multiple_of(2) {
        return Err(Error::BadMatrix("of even dimension"));
    }
    let n = n2 / 2;
    let scale = h_bdg.camax().max(1.0);
    for i in 0..n {
        for j in 0..n {
            let tl = h_bdg[(i, j)];
            let br = h_bdg[(n + i, n + j)];
            let tr = h_bdg[(i, n + j)];
            let bl = h_bdg[(n + i, j)];
            if (br + tl.conj()).norm() > 1e-10 * scale || (bl + tr.conj()).norm() > 1e-10 * scale {
                return Err(Error::BadMatrix("particle-hole symmetric"));
            }
        }
    }
    // Psi_p = sum_a W_pa g_a with c_j = (g_2j + i g_2j+1)/2.
    let half = C64::new(0.5, 0.0);
    let ihalf = C64::new(0.0, 0.5);
    let w = |a: usize| -> [(usize, C64); 2] {
        let j = a / 2;
        if a.is_multiple_of(2) {
            [(j, half), (n + j, half)]
        } else {
            [(j, ihalf), (n + j, -ihalf)]
        }
    };
    Ok(DMatrix::from_fn(n2, n2, |a, b| {
        let mut k = C64::new(0.0, 0.0);
        for (p, wp) in w(a) {
            for (q, wq) in w(b) {
                k += wp.conj() * h_bdg[(p, q)] * wq;
            }
        }
        2.0 * k.im
    }))
}

/// Ground state of a BdG Hamiltonian as a Majorana covariance.
pub fn ground_state_bdg(h_bdg: &DMatrix<C64>) -> Result<CorrelationState> {
    let a = majorana_hamiltonian(h_bdg)?;
    ground_state_majorana(&a)
}

/// Ground state of `H = (i/4) g^T A g`: `M = -A (-A^2)^{-1/2}`.
pub fn ground_state_majorana(a: &DMatrix<f64>) -> Result<CorrelationState> {
    let s = a.transpose() * a;
    let e = s.symmetric_eigen();
    let max = e.eigenvalues.camax().max(1e-300);
    if let Some(min) = e.eigenvalues.iter().copied().reduce(f64::min) {
        if min <= 1e-20 * max.max(1.0) || min.sqrt() < 1e-10 * max.sqrt() {
            return Err(Error::AmbiguousGroundState(format!(
                "zero mode in the single-particle spectrum (|e| = {:.3e})",
                min.max(0.0).sqrt()
            )));
        }
    }
    let inv = DMatrix::from_diagonal(&e.eigenvalues.map(|l| 1.0 / l.sqrt()));
    let v = &e.eigenvectors;
    let m = -(a * v) * inv * v.transpose();
    let m = (&m - m.transpose()) * 0.5;
    let dev = (&m * &m + DMatrix::identity(m.nrows(), m.ncols())).camax();
    if dev > 1e-8 {
        return Err(Error::Unphysical(format!(
            "covariance is not pure (|M^2 + 1| = {dev:.3e})"
        )));
    }
    Ok(CorrelationState::Majorana(m))
}

impl CorrelationState {
    /// Validated number-conserving correlation matrix.
    pub fn from_correlation(c: DMatrix<C64>) -> Result<Self> {
        check_hermitian(&c)?;
        let s = if is_real(&c) {
            CorrelationState::Real(c.map(|z| z.re))
        } else {
            CorrelationState::Complex(c)
        };
        let all: Vec<usize> = (0..s.num_modes()).collect();
        s.mode_entropy(&all)?;
        Ok(s)
    }

    /// Validated Majorana covariance.
    pub fn from_majorana(m: DMatrix<f64>) -> Result<Self> {
        if !m.is_square() || !m.nrows().is_multiple_of(2) {
            return Err(Error::BadMatrix("square of even dimension"));
        }
        if (&m + m.transpose()).camax() > 1e-10 {
            return Err(Error::BadMatrix("antisymmetric"));
        }
        let s = CorrelationState::Majorana(m);
        let all: Vec<usize> = (0..s.num_modes()).collect();
        s.mode_entropy(&all)?;
        Ok(s)
    }

    pub fn num_modes(&self) -> usize {
        match self {
            CorrelationState::Real(c) => c.nrows(),
            CorrelationState::Complex(c) => c.nrows(),
            CorrelationState::Majorana(m) => m.nrows() / 2,
        }
    }

    /// Majorana covariance of any representation.
    pub fn to_majorana(&self) -> DMatrix<f64> {
        let c = match self {
            CorrelationState::Majorana(m) => return m.clone(),
            CorrelationState::Real(c) => c.map(|x| C64::new(x, 0.0)),
            CorrelationState::Complex(c) => c.clone(),
        };
        let n = c.nrows();
        let mut m = DMatrix::zeros(2 * n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                let z = c[(i, j)];
                if i != j {
                    m[(2 * i, 2 * j)] = -2.0 * z.im;
                    m[(2 * i + 1, 2 * j + 1)] = -2.0 * z.im;
                }
                let d = if i == j { 1.0 } else { 0.0 };
                m[(2 * i, 2 * j + 1)] = 2.0 * z.re - d;
                m[(2 * j + 1, 2 * i)] = -(2.0 * z.re - d);
            }
        }
        m
    }

    /// Entropy in bits of the modes `sites`.
    pub fn mode_entropy(&self, sites: &[usize]) -> Result<f64> {
        check_sites(sites, self.num_modes())?;
        if sites.is_empty() {
            return Ok(0.0);
        }
        let k = sites.len();
        let check = |nu: f64, lo: f64, hi: f64| {
            if nu < lo - SPECTRUM_TOL || nu > hi + SPECTRUM_TOL || nu.is_nan() {
                Err(Error::Unphysical(format!(
                    "eigenvalue {nu:.3e} outside [{lo}, {hi}]"
                )))
            } else {
                Ok(())
            }
        };
        match self {
            CorrelationState::Real(c) => {
                let sub = DMatrix::from_fn(k, k, |i, j| c[(sites[i], sites[j])]);
                let mut s = 0.0;
                for nu in sub.symmetric_eigenvalues().iter() {
                    check(*nu, 0.0, 1.0)?;
                    s += binary_entropy(*nu);
                }
                Ok(s)
            }
            CorrelationState::Complex(c) => {
                let sub = DMatrix::from_fn(k, k, |i, j| c[(sites[i], sites[j])]);
                let mut s = 0.0;
                for nu in sub.symmetric_eigenvalues().iter() {
                    check(*nu, 0.0, 1.0)?;
                    s += binary_entropy(*nu);
                }
                Ok(s)
            }
            CorrelationState::Majorana(m) => {
                let idx: Vec<usize> = sites.iter().flat_map(|&s| [2 * s, 2 * s + 1]).collect();
                let sub = DMatrix::from_fn(2 * k, 2 * k, |i, j| m[(idx[i], idx[j])]);
                let sq = sub.transpose() * &sub;
                let mut s = 0.0;
                for lam in sq.symmetric_eigenvalues().iter() {
                    check(*lam, 0.0, 1.0)?;
                    let nu = lam.clamp(0.0, 1.0).sqrt();
                    s += binary_entropy((1.0 + nu) / 2.0);
                }
                // Each nu appears twice in the spectrum of -M_A^2.
                Ok(s / 2.0)
            }
        }
    }
}

impl EntropyBackend for CorrelationState {
    fn num_sites(&self) -> usize {
        self.num_modes()
    }

    fn information(&self, sites: &[usize]) -> Result<f64> {
        Ok(sites.len() as f64 - self.mode_entropy(sites)?)
    }

    fn fingerprint(&self) -> Fingerprint {
        match self {
            CorrelationState::Real(c) => FingerprintBuilder::new("gaussian-real")
                .u64(c.nrows() as u64)
                .f64s(c.iter().copied())
                .finish(),
            CorrelationState::Complex(c) => FingerprintBuilder::new("gaussian-complex")
                .u64(c.nrows() as u64)
                .f64s(c.iter().flat_map(|z| [z.re, z.im]))
                .finish(),
            CorrelationState::Majorana(m) => FingerprintBuilder::new("gaussian-majorana")
                .u64(m.nrows() as u64)
                .f64s(m.iter().copied())
                .finish(),
        }
    }

    fn is_pure(&self) -> bool {
        true
    }
}

pub mod fock {
    //! Exact many-body states of fermion modes, used as an oracle.

    use super::super::dense::{DenseState, C64};
    use super::super::{check_sites, EntropyBackend};
    use crate::error::{Error, Result};
    use crate::table::{Fingerprint, FingerprintBuilder};
    use nalgebra::DMatrix;

    pub const MAX_MODES: usize = 12;

    /// Apply `c_j` (`dag = false`) or `c_j^dag` to occupation `b`.
    fn apply(b: u64, j: usize, dag: bool) -> Option<(f64, u64)> {
        let occ = b >> j & 1 == 1;
        if occ == dag {
            return None;
        }
        let sign = if (b & ((1u64 << j) - 1)).count_ones().is_multiple_of(2) {
            1.0
        } else {
            -1.0
        };
        Some((sign, b ^ (1 << j)))
    }

    /// Many-body state with modes in Jordan-Wigner order.
    #[derive(Clone, Debug)]
    pub struct FockState {
        n: usize,
        amps: Vec<C64>,
    }

    fn lowest(h: DMatrix<C64>, basis: &[u64], n: usize) -> Result<FockState> {
        let e = h.symmetric_eigen();
        let mut order: Vec<usize> = (0..basis.len()).collect();
        order.sort_by(|&a, &b| e.eigenvalues[a].total_cmp(&e.eigenvalues[b]));
        if order.len() > 1 && e.eigenvalues[order[1]] - e.eigenvalues[order[0]] < 1e-8 {
            return Err(Error::AmbiguousGroundState(
                "degenerate many-body ground state".into(),
            ));
        }
        let mut amps = vec![C64::new(0.0, 0.0); 1 << n];
        for (k, &b) in basis.iter().enumerate() {
            amps[b as usize] = e.eigenvectors[(k, order[0])];
        }
        Ok(FockState { n, amps })
    }

    impl FockState {
        /// Ground state of `sum_ij h_ij c_i^dag c_j` with `filling` particles.
        pub fn number_conserving(h: &DMatrix<C64>, filling: usize) -> Result<FockState> {
            let n = h.nrows();
            if n > MAX_MODES {
                return Err(Error::DenseLimit {
                    requested: n,
                    limit: MAX_MODES,
                });
            }
            let basis: Vec<u64> = (0..1u64 << n)
                .filter(|b| b.count_ones() as usize == filling)
                .collect();
            let pos = |b: u64| basis.binary_search(&b).unwrap();
            let mut m = DMatrix::<C64>::zeros(basis.len(), basis.len());
            for (col, &b) in basis.iter().enumerate() {
                for i in 0..n {
                    for j in 0..n {
                        if h[(i, j)] == C64::new(0.0, 0.0) {
                            continue;
                        }
                        if let Some((s1, b1)) = apply(b, j, false) {
                            if let Some((s2, b2)) = apply(b1, i, true) {
                                m[(pos(b2), col)] += h[(i, j)] * (s1 * s2);
                            }
                        }
                    }
                }
            }
            lowest(m, &basis, n)
        }

        /// Ground state of `(1/2) Psi^dag H_bdg Psi`.
        pub fn bdg(h_bdg: &DMatrix<C64>) -> Result<FockState> {
            let n = h_bdg.nrows() / 2;
            if n > MAX_MODES {
                return Err(Error::DenseLimit {
                    requested: n,
                    limit: MAX_MODES,
                });
            }
            let basis: Vec<u64> = (0..1u64 << n).collect();
            // Psi_p: c_p for p < n, c_{p-n}^dag otherwise; Psi_p^dag the adjoint.
            let psi = |p: usize| if p < n { (p, false) } else { (p - n, true) };
            let mut m = DMatrix::<C64>::zeros(basis.len(), basis.len());
            for &b in &basis {
                for p in 0..2 * n {
                    for q in 0..2 * n {
                        let hpq = h_bdg[(p, q)];
                        if hpq == C64::new(0.0, 0.0) {
                            continue;
                        }
                        let (jq, dq) = psi(q);
                        let (jp, dp) = psi(p);
                        if let Some((s1, b1)) = apply(b, jq, dq) {
                            if let Some((s2, b2)) = apply(b1, jp, !dp) {
                                m[(b2 as usize, b as usize)] += hpq * (0.5 * s1 * s2);
                            }
                        }
                    }
                }
            }
            lowest(m, &basis, n)
        }

        pub fn num_modes(&self) -> usize {
            self.n
        }

        /// Entropy in bits of the modes `sites`, computed after reordering the
        /// modes so that `sites` come first.
        pub fn mode_entropy(&self, sites: &[usize]) -> Result<f64> {
            check_sites(sites, self.n)?;
            let mut order: Vec<usize> = sites.to_vec();
            order.extend((0..self.n).filter(|q| !sites.contains(q)));
            let mut amps = Vec::with_capacity(self.amps.len());
            for (b, &a) in self.amps.iter().enumerate() {
                if a.norm() == 0.0 {
                    continue;
                }
                let occupied: Vec<usize> =
                    order.iter().copied().filter(|&m| b >> m & 1 == 1).collect();
                let mut inv = 0;
                for x in 0..occupied.len() {
                    for y in x + 1..occupied.len() {
                        if occupied[x] > occupied[y] {
                            inv += 1;
                        }
                    }
                }
                let nb = order
                    .iter()
                    .enumerate()
                    .fold(0u64, |acc, (k, &m)| acc | ((b as u64 >> m) & 1) << k);
                amps.push((nb, if inv % 2 == 0 { a } else { -a }));
            }
            let prefix: Vec<usize> = (0..sites.len()).collect();
            DenseState::from_amplitudes(self.n, amps)?.entropy(&prefix)
        }
    }

    impl EntropyBackend for FockState {
        fn num_sites(&self) -> usize {
            self.n
        }

        fn information(&self, sites: &[usize]) -> Result<f64> {
            Ok(sites.len() as f64 - self.mode_entropy(sites)?)
        }

        fn fingerprint(&self) -> Fingerprint {
            FingerprintBuilder::new("fock")
                .u64(self.n as u64)
                .f64s(self.amps.iter().flat_map(|z| [z.re, z.im]))
                .finish()
        }

        fn is_pure(&self) -> bool {
            true
        }
    }
}
