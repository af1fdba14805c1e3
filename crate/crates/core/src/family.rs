//! Intersection-closed families of site sets and their Möbius inversion.

use crate::error::{Error, Result};
use std::collections::HashSet;

/// Sorted, duplicate-free site ids.
pub type SiteSet = Vec<usize>;

pub fn join_sites(s: &[usize]) -> String {
    s.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

pub fn is_subset(a: &[usize], b: &[usize]) -> bool {
    let mut j = 0;
    for &x in a {
        while j < b.len() && b[j] < x {
            j += 1;
        }
        if j == b.len() || b[j] != x {
            return false;
        }
        j += 1;
    }
    true
}

pub fn intersect_sites(a: &[usize], b: &[usize]) -> SiteSet {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::new();
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

/// A family of non-empty site sets closed under intersection (the empty set is implicit).
///
/// Members are kept sorted by size, then lexicographically, so every subset
/// precedes its supersets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenericFamily {
    members: Vec<SiteSet>,
}

impl GenericFamily {
    pub fn new(members: Vec<Vec<usize>>) -> Result<Self> {
        let mut ms: Vec<SiteSet> = members
            .into_iter()
            .map(|mut m| {
                m.sort_unstable();
                m.dedup();
                m
            })
            .filter(|m| !m.is_empty())
            .collect();
        ms.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        for w in ms.windows(2) {
            if w[0] == w[1] {
                return Err(Error::DuplicateMember(join_sites(&w[0])));
            }
        }
        let set: HashSet<&SiteSet> = ms.iter().collect();
        for (i, a) in ms.iter().enumerate() {
            for b in &ms[i + 1..] {
                let m = intersect_sites(a, b);
                if !m.is_empty() && !set.contains(&m) {
                    return Err(Error::NotIntersectionClosed {
                        a: join_sites(a),
                        b: join_sites(b),
                        meet: join_sites(&m),
                    });
                }
            }
        }
        Ok(Self { members: ms })
    }

    pub fn members(&self) -> &[SiteSet] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn position(&self, s: &[usize]) -> Option<usize> {
        self.members.iter().position(|m| m == s)
    }

    /// Indices of members contained in member `k`, including `k`.
    pub fn downset(&self, k: usize) -> Vec<usize> {
        let x = &self.members[k];
        (0..=k)
            .filter(|&j| self.members[j].len() <= x.len() && is_subset(&self.members[j], x))
            .collect()
    }

    /// Möbius coefficients `mu(D, X)` for all `D` below member `k`, as `(D, mu)` pairs.
    pub fn moebius_row(&self, k: usize) -> Vec<(usize, i64)> {
        let down = self.downset(k);
        // `down` is ordered by size, so walk it from the top.
        let mut mu = vec![0i64; down.len()];
        let top = down.len() - 1;
        mu[top] = 1;
        for a in (0..top).rev() {
            let d = &self.members[down[a]];
            let mut s = 0;
            for b in a + 1..=top {
                let z = &self.members[down[b]];
                if z.len() > d.len() && is_subset(d, z) {
                    s += mu[b];
                }
            }
            mu[a] = -s;
        }
        down.into_iter().zip(mu).filter(|&(_, m)| m != 0).collect()
    }

    /// Local information of every member: `i(X) = sum_D mu(D, X) I(D)`.
    pub fn local_information<F>(&self, info: F) -> Result<Vec<f64>>
    where
        F: Fn(&[usize]) -> Result<f64>,
    {
        let values: Vec<f64> = self
            .members
            .iter()
            .map(|m| info(m))
            .collect::<Result<_>>()?;
        Ok((0..self.len())
            .map(|k| {
                self.moebius_row(k)
                    .into_iter()
                    .map(|(d, mu)| mu as f64 * values[d])
                    .sum()
            })
            .collect())
    }

    /// Largest `|sum_{D <= X} i(D) - I(X)|` over members.
    pub fn decomposition_residual(&self, local: &[f64], info: &[f64]) -> f64 {
        (0..self.len())
            .map(|k| {
                let s: f64 = self.downset(k).into_iter().map(|d| local[d]).sum();
                (s - info[k]).abs()
            })
            .fold(0.0, f64::max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> GenericFamily {
        GenericFamily::new(vec![
            vec![0],
            vec![1],
            vec![2],
            vec![0, 1],
            vec![1, 2],
            vec![0, 2],
            vec![0, 1, 2],
        ])
        .unwrap()
    }

    #[test]
    fn triangle_moebius_coefficients() {
        let f = triangle();
        let top = f.position(&[0, 1, 2]).unwrap();
        let row = f.moebius_row(top);
        let mu = |s: &[usize]| {
            let k = f.position(s).unwrap();
            row.iter()
                .find(|&&(d, _)| d == k)
                .map(|&(_, m)| m)
                .unwrap_or(0)
        };
        assert_eq!(mu(&[0, 1, 2]), 1);
        assert_eq!(mu(&[0, 1]), -1);
        assert_eq!(mu(&[0]), 1);
    }

    #[test]
    fn inversion_reproduces_information() {
        let f = triangle();
        let info = |s: &[usize]| Ok(s.len() as f64 * 0.5 + if s.len() == 3 { 0.25 } else { 0.0 });
        let local = f.local_information(info).unwrap();
        let values: Vec<f64> = f.members().iter().map(|m| info(m).unwrap()).collect();
        assert!(f.decomposition_residual(&local, &values) < 1e-14);
    }

    #[test]
    fn non_closed_family_rejected() {
        let r = GenericFamily::new(vec![vec![0, 1], vec![1, 2]]);
        assert!(matches!(r, Err(Error::NotIntersectionClosed { .. })));
        let r = GenericFamily::new(vec![vec![0, 1], vec![1, 0]]);
        assert!(matches!(r, Err(Error::DuplicateMember(_))));
    }
}
