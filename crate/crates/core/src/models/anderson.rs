//! Anderson model of spinless fermions with anisotropic hopping.
//!
//! `H = -tx sum (c_r^dag c_{r+x} + h.c.) - ty sum (c_r^dag c_{r+y} + h.c.) + sum_r e_r n_r`
//! with open boundaries and `e_r` uniform in `[-W/2, W/2]`. Site `(x, y)` is mode
//! `x + nx * y`.

use super::{check_finite, check_size};
use crate::backend::gaussian::{ground_state_real, CorrelationState};
use crate::error::{Error, Result};
use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AndersonParams {
    pub nx: usize,
    pub ny: usize,
    pub tx: f64,
    pub ty: f64,
    pub w: f64,
    pub seed: u64,
}

/// On-site energies drawn from a ChaCha8 stream seeded with `seed`.
pub fn disorder(n: usize, w: f64, seed: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| w * (rng.random::<f64>() - 0.5)).collect()
}

pub fn anderson_hamiltonian(p: &AndersonParams) -> Result<DMatrix<f64>> {
    check_size(p.nx, p.ny)?;
    for (name, v) in [("tx", p.tx), ("ty", p.ty), ("W", p.w)] {
        check_finite(name, v)?;
    }
    if p.w < 0.0 {
        return Err(Error::InvalidParameter(format!(
            "disorder strength W = {}",
            p.w
        )));
    }
    let n = p.nx * p.ny;
    let mut h = DMatrix::zeros(n, n);
    for (i, e) in disorder(n, p.w, p.seed).into_iter().enumerate() {
        h[(i, i)] = e;
    }
    for y in 0..p.ny {
        for x in 0..p.nx {
            let i = x + p.nx * y;
            if x + 1 < p.nx {
                h[(i, i + 1)] = -p.tx;
                h[(i + 1, i)] = -p.tx;
            }
            if y + 1 < p.ny {
                h[(i, i + p.nx)] = -p.ty;
                h[(i + p.nx, i)] = -p.ty;
            }
        }
    }
    Ok(h)
}

/// Ground state with `filling` particles (half filling when `None`).
pub fn anderson_ground_state(
    p: &AndersonParams,
    filling: Option<usize>,
) -> Result<CorrelationState> {
    let h = anderson_hamiltonian(p)?;
    ground_state_real(&h, filling.unwrap_or(p.nx * p.ny / 2))
}
