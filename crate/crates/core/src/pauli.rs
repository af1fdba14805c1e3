//! Pauli strings as paired bit masks with a phase exponent.
//!
//! A string stands for `i^phase * prod_q X_q^{x_q} Z_q^{z_q}`.

use crate::error::{Error, Result};
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PauliString {
    n: usize,
    x: Vec<u64>,
    z: Vec<u64>,
    phase: u8,
}

fn words(n: usize) -> usize {
    n.div_ceil(64)
}

impl PauliString {
    pub fn identity(n: usize) -> Self {
        Self {
            n,
            x: vec![0; words(n)],
            z: vec![0; words(n)],
            phase: 0,
        }
    }

    /// Hermitian string with `+1` sign acting as `op` (one of `X`, `Y`, `Z`) on `sites`.
    pub fn on_sites(n: usize, sites: &[usize], op: char) -> Self {
        let mut p = Self::identity(n);
        for &s in sites {
            p.set(s, op);
        }
        p
    }

    /// Set the single-qubit factor on `q`, keeping the string Hermitian with its sign.
    pub fn set(&mut self, q: usize, op: char) {
        let (w, b) = (q / 64, 1u64 << (q % 64));
        let was_y = self.x[w] & b != 0 && self.z[w] & b != 0;
        self.x[w] &= !b;
        self.z[w] &= !b;
        if was_y {
            self.phase = (self.phase + 3) % 4;
        }
        match op {
            'X' => self.x[w] |= b,
            'Z' => self.z[w] |= b,
            'Y' => {
                self.x[w] |= b;
                self.z[w] |= b;
                self.phase = (self.phase + 1) % 4;
            }
            _ => {}
        }
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn phase(&self) -> u8 {
        self.phase
    }

    pub fn x_bit(&self, q: usize) -> bool {
        self.x[q / 64] >> (q % 64) & 1 == 1
    }

    pub fn z_bit(&self, q: usize) -> bool {
        self.z[q / 64] >> (q % 64) & 1 == 1
    }

    pub fn x_words(&self) -> &[u64] {
        &self.x
    }

    pub fn z_words(&self) -> &[u64] {
        &self.z
    }

    /// Low 64 bits of the masks, for dense states.
    pub fn masks_u64(&self) -> (u64, u64) {
        (
            self.x.first().copied().unwrap_or(0),
            self.z.first().copied().unwrap_or(0),
        )
    }

    pub fn op(&self, q: usize) -> char {
        match (self.x_bit(q), self.z_bit(q)) {
            (false, false) => 'I',
            (true, false) => 'X',
            (false, true) => 'Z',
            (true, true) => 'Y',
        }
    }

    fn y_count(&self) -> u32 {
        self.x
            .iter()
            .zip(&self.z)
            .map(|(a, b)| (a & b).count_ones())
            .sum()
    }

    pub fn weight(&self) -> usize {
        self.x
            .iter()
            .zip(&self.z)
            .map(|(a, b)| (a | b).count_ones() as usize)
            .sum()
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.n)
            .filter(|&q| self.x_bit(q) || self.z_bit(q))
            .collect()
    }

    pub fn is_hermitian(&self) -> bool {
        (self.phase as u32 + self.y_count()).is_multiple_of(2)
    }

    /// Sign in front of the `IXYZ` word of a Hermitian string.
    pub fn sign(&self) -> i8 {
        // X Z = -i Y on every Y site.
        let e = (self.phase as i64 - self.y_count() as i64).rem_euclid(4);
        match e {
            0 => 1,
            2 => -1,
            _ => 0,
        }
    }

    pub fn negate(&mut self) {
        self.phase = (self.phase + 2) % 4;
    }

    pub fn commutes(&self, other: &PauliString) -> bool {
        let mut c = 0u32;
        for w in 0..self.x.len() {
            c += (self.x[w] & other.z[w]).count_ones() + (self.z[w] & other.x[w]).count_ones();
        }
        c.is_multiple_of(2)
    }

    /// Operator product `self * other`.
    pub fn mul(&self, other: &PauliString) -> PauliString {
        let mut extra = 0u32;
        for w in 0..self.x.len() {
            extra += (self.z[w] & other.x[w]).count_ones();
        }
        PauliString {
            n: self.n,
            x: self.x.iter().zip(&other.x).map(|(a, b)| a ^ b).collect(),
            z: self.z.iter().zip(&other.z).map(|(a, b)| a ^ b).collect(),
            phase: ((self.phase as u32 + other.phase as u32 + 2 * extra) % 4) as u8,
        }
    }

    /// Multiply by the power of `i` that makes the string Hermitian with sign `+1`.
    pub fn make_hermitian_positive(&mut self) {
        self.phase = (self.y_count() % 4) as u8;
    }

    /// Parse `[+|-]` followed by one `IXYZ` character per qubit.
    pub fn parse(s: &str) -> Result<PauliString> {
        let s = s.trim();
        let (neg, body) = match s.as_bytes().first() {
            Some(b'+') => (false, &s[1..]),
            Some(b'-') => (true, &s[1..]),
            _ => (false, s),
        };
        let mut p = PauliString::identity(body.len());
        for (q, c) in body.chars().enumerate() {
            if !"IXYZ".contains(c) {
                return Err(Error::InvalidParameter(format!(
                    "bad Pauli character {c:?}"
                )));
            }
            p.set(q, c);
        }
        if neg {
            p.negate();
        }
        Ok(p)
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = match self.sign() {
            1 => "+",
            -1 => "-",
            _ => "?",
        };
        f.write_str(sign)?;
        for q in 0..self.n {
            write!(f, "{}", self.op(q))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_display_round_trip() {
        for s in ["+XIZY", "-YYZ", "+IIII"] {
            assert_eq!(PauliString::parse(s).unwrap().to_string(), s);
        }
    }

    #[test]
    fn products_follow_pauli_algebra() {
        let x = PauliString::parse("X").unwrap();
        let z = PauliString::parse("Z").unwrap();
        let y = PauliString::parse("Y").unwrap();
        // X Z = -i Y, so i X Z = Y.
        let mut xz = x.mul(&z);
        assert!(!xz.is_hermitian());
        xz.phase = (xz.phase + 1) % 4;
        assert_eq!(xz, y);
        assert!(!x.commutes(&z));
        let xx = PauliString::parse("XX").unwrap();
        let zz = PauliString::parse("ZZ").unwrap();
        assert!(xx.commutes(&zz));
        assert_eq!(xx.mul(&zz).to_string(), "-YY");
    }

    #[test]
    fn wide_strings() {
        let mut p = PauliString::identity(130);
        p.set(129, 'Y');
        p.set(3, 'X');
        assert_eq!(p.weight(), 2);
        assert_eq!(p.support(), vec![3, 129]);
        assert_eq!(p.sign(), 1);
    }
}
