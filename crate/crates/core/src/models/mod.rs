//! Model states: disordered and superconducting fermions, toric codes and
//! small reference states.

pub mod anderson;
pub mod pip;
pub mod reference;
pub mod toric;
pub mod twist;

use crate::error::{Error, Result};

pub(crate) fn check_size(nx: usize, ny: usize) -> Result<()> {
    if nx == 0 || ny == 0 {
        return Err(Error::InvalidParameter(format!("lattice size {nx}x{ny}")));
    }
    Ok(())
}

pub(crate) fn check_finite(name: &str, v: f64) -> Result<()> {
    if !v.is_finite() {
        return Err(Error::InvalidParameter(format!("{name} = {v}")));
    }
    Ok(())
}
