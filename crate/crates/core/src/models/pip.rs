//! Spinless p+ip superconductor on an open square lattice.
//!
//! `H = -mu sum n_r - t sum (c_r^dag c_{r+e} + h.c.)
//!      + (D/2) sum (c_r c_{r+x} + h.c.) + i (D/2) sum (c_r c_{r+y} - h.c.)`,
//! topological for `|mu| < 4t`.

use super::{check_finite, check_size};
use crate::backend::dense::C64;
use crate::backend::gaussian::{ground_state_bdg, CorrelationState};
use crate::error::Result;
use nalgebra::DMatrix;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PipParams {
    pub nx: usize,
    pub ny: usize,
    pub t: f64,
    pub delta: f64,
    pub mu: f64,
}

/// BdG matrix in the basis `(c_1..c_N, c_1^dag..c_N^dag)` with `H = (1/2) Psi^dag H Psi`.
pub fn pip_bdg_hamiltonian(p: &PipParams) -> Result<DMatrix<C64>> {
    check_size(p.nx, p.ny)?;
    for (name, v) in [("t", p.t), ("delta", p.delta), ("mu", p.mu)] {
        check_finite(name, v)?;
    }
    let n = p.nx * p.ny;
    let mut h = DMatrix::<C64>::zeros(n, n);
    let mut d = DMatrix::<C64>::zeros(n, n);
    let half = p.delta / 2.0;
    for y in 0..p.ny {
        for x in 0..p.nx {
            let i = x + p.nx * y;
            h[(i, i)] = C64::new(-p.mu, 0.0);
            if x + 1 < p.nx {
                let j = i + 1;
                h[(i, j)] = C64::new(-p.t, 0.0);
                h[(j, i)] = C64::new(-p.t, 0.0);
                // (D/2) c_i c_j + h.c. carries c_j^dag c_i^dag = -c_i^dag c_j^dag.
                d[(i, j)] = C64::new(-half, 0.0);
                d[(j, i)] = C64::new(half, 0.0);
            }
            if y + 1 < p.ny {
                let j = i + p.nx;
                h[(i, j)] = C64::new(-p.t, 0.0);
                h[(j, i)] = C64::new(-p.t, 0.0);
                d[(i, j)] = C64::new(0.0, half);
                d[(j, i)] = C64::new(0.0, -half);
            }
        }
    }
    let mut big = DMatrix::<C64>::zeros(2 * n, 2 * n);
    big.view_mut((0, 0), (n, n)).copy_from(&h);
    big.view_mut((0, n), (n, n)).copy_from(&d);
    big.view_mut((n, 0), (n, n)).copy_from(&d.adjoint());
    big.view_mut((n, n), (n, n)).copy_from(&(-h.transpose()));
    Ok(big)
}

pub fn pip_ground_state(p: &PipParams) -> Result<CorrelationState> {
    ground_state_bdg(&pip_bdg_hamiltonian(p)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::backend::gaussian::majorana_hamiltonian;

    #[test]
    fn bdg_matrix_is_particle_hole_symmetric() {
        let p = PipParams {
            nx: 3,
            ny: 2,
            t: 1.0,
            delta: 1.0,
            mu: 2.0,
        };
        let h = pip_bdg_hamiltonian(&p).unwrap();
        let a = majorana_hamiltonian(&h).unwrap();
        assert!((&a + a.transpose()).amax() < 1e-14);
    }
}
