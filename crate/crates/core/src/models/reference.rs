//! Reference states with known information lattices.
//!
//! Sites of an `nx` by `ny` grid are qubits `x + nx * y`; `|0>` is spin up.

use super::check_size;
use crate::backend::dense::{DenseState, C64};
use crate::backend::stabilizer::StabilizerTableau;
use crate::error::{Error, Result};
use crate::pauli::PauliString;
use nalgebra::DMatrix;

pub type Site = (usize, usize);

fn site_id(nx: usize, ny: usize, s: Site) -> Result<usize> {
    if s.0 >= nx || s.1 >= ny {
        return Err(Error::InvalidParameter(format!(
            "site {s:?} outside {nx}x{ny}"
        )));
    }
    Ok(s.0 + nx * s.1)
}

fn pair_ids(nx: usize, ny: usize, pairs: &[(Site, Site)]) -> Result<Vec<(usize, usize)>> {
    check_size(nx, ny)?;
    let mut used = vec![false; nx * ny];
    let mut out = Vec::new();
    for &(a, b) in pairs {
        let (i, j) = (site_id(nx, ny, a)?, site_id(nx, ny, b)?);
        if i == j || used[i] || used[j] {
            return Err(Error::InvalidParameter(format!(
                "overlapping singlet {a:?}-{b:?}"
            )));
        }
        used[i] = true;
        used[j] = true;
        out.push((i, j));
    }
    Ok(out)
}

/// Singlets `(|01> - |10>)/sqrt 2` on the given pairs, spin up elsewhere.
pub fn singlet_state(nx: usize, ny: usize, pairs: &[(Site, Site)]) -> Result<DenseState> {
    let ids = pair_ids(nx, ny, pairs)?;
    let mut amps = vec![(0u64, C64::new(1.0, 0.0))];
    let s = (0.5f64).sqrt();
    for (i, j) in ids {
        amps = amps
            .into_iter()
            .flat_map(|(b, a)| [(b | 1 << j, a * s), (b | 1 << i, -a * s)])
            .collect();
    }
    DenseState::from_amplitudes(nx * ny, amps)
}

/// Stabilizer form of [`singlet_state`].
pub fn singlet_tableau(nx: usize, ny: usize, pairs: &[(Site, Site)]) -> Result<StabilizerTableau> {
    let ids = pair_ids(nx, ny, pairs)?;
    let n = nx * ny;
    let mut paired = vec![false; n];
    let mut gens = Vec::new();
    for &(i, j) in &ids {
        paired[i] = true;
        paired[j] = true;
        for op in ['X', 'Z'] {
            let mut g = PauliString::on_sites(n, &[i, j], op);
            g.negate();
            gens.push(g);
        }
    }
    for q in (0..n).filter(|&q| !paired[q]) {
        gens.push(PauliString::on_sites(n, &[q], 'Z'));
    }
    StabilizerTableau::new(n, gens)
}

/// `(|0...0> + e^{i phase} |1...1>) / sqrt 2` on `n` qubits.
pub fn cat_state(n: usize, phase: f64) -> Result<DenseState> {
    if n == 0 || n > 63 {
        return Err(Error::InvalidParameter(format!("cat state on {n} qubits")));
    }
    let s = (0.5f64).sqrt();
    DenseState::from_amplitudes(
        n,
        vec![
            (0, C64::new(s, 0.0)),
            ((1u64 << n) - 1, C64::from_polar(s, phase)),
        ],
    )
}

/// Stabilizer form of the zero-phase cat state.
pub fn cat_tableau(n: usize) -> Result<StabilizerTableau> {
    let mut gens: Vec<PauliString> = (0..n - 1)
        .map(|q| PauliString::on_sites(n, &[q, q + 1], 'Z'))
        .collect();
    gens.push(PauliString::on_sites(n, &(0..n).collect::<Vec<_>>(), 'X'));
    StabilizerTableau::new(n, gens)
}

/// The mixed state `(|000><000| + |111><111|) / 2`.
pub fn triangle_state() -> DenseState {
    let mut rho = DMatrix::<C64>::zeros(8, 8);
    rho[(0, 0)] = C64::new(0.5, 0.0);
    rho[(7, 7)] = C64::new(0.5, 0.0);
    DenseState::from_density_matrix(3, rho).expect("valid density matrix")
}
