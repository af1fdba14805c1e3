//! Dense bit matrices over GF(2).

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    words: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let words = cols.div_ceil(64).max(1);
        Self {
            rows,
            cols,
            words,
            data: vec![0; rows * words],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.data[r * self.words + c / 64] >> (c % 64) & 1 == 1
    }

    pub fn set(&mut self, r: usize, c: usize, v: bool) {
        let w = &mut self.data[r * self.words + c / 64];
        if v {
            *w |= 1 << (c % 64);
        } else {
            *w &= !(1 << (c % 64));
        }
    }

    pub fn row(&self, r: usize) -> &[u64] {
        &self.data[r * self.words..(r + 1) * self.words]
    }

    fn xor_rows(&mut self, dst: usize, src: usize) {
        let w = self.words;
        let (a, b) = if dst < src {
            let (lo, hi) = self.data.split_at_mut(src * w);
            (&mut lo[dst * w..dst * w + w], &hi[..w])
        } else {
            let (lo, hi) = self.data.split_at_mut(dst * w);
            (&mut hi[..w], &lo[src * w..src * w + w])
        };
        for (x, y) in a.iter_mut().zip(b) {
            *x ^= y;
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for k in 0..self.words {
            self.data.swap(a * self.words + k, b * self.words + k);
        }
    }

    /// Reduce to row echelon form in place and return the pivot columns.
    pub fn echelon(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| self.get(i, c)) else {
                continue;
            };
            self.swap_rows(r, p);
            for i in r + 1..self.rows {
                if self.get(i, c) {
                    self.xor_rows(i, r);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().echelon().len()
    }

    /// Submatrix keeping the listed columns, in order.
    pub fn select_columns(&self, cols: &[usize]) -> BitMatrix {
        let mut m = BitMatrix::zeros(self.rows, cols.len());
        for r in 0..self.rows {
            let row = self.row(r);
            let out = &mut m.data[r * m.words..(r + 1) * m.words];
            for (k, &c) in cols.iter().enumerate() {
                if row[c / 64] >> (c % 64) & 1 == 1 {
                    out[k / 64] |= 1 << (k % 64);
                }
            }
        }
        m
    }

    /// Basis of `{v : M v = 0}` as bit vectors of length `cols`.
    pub fn nullspace(&self) -> Vec<Vec<bool>> {
        let mut m = self.clone();
        let pivots = m.echelon();
        // Back-substitute to reduced form.
        for (r, &c) in pivots.iter().enumerate().rev() {
            for i in 0..r {
                if m.get(i, c) {
                    m.xor_rows(i, r);
                }
            }
        }
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![false; self.cols];
                v[f] = true;
                for (r, &c) in pivots.iter().enumerate() {
                    if m.get(r, f) {
                        v[c] = true;
                    }
                }
                v
            })
            .collect()
    }
}

/// Incremental test for linear independence of bit vectors.
#[derive(Clone, Debug, Default)]
pub struct IndependenceTracker {
    basis: Vec<(usize, Vec<u64>)>,
}

impl IndependenceTracker {
    pub fn new() -> Self {
        Self::default()
    }

    /// Insert a vector; returns false when it is a combination of earlier ones.
    pub fn insert(&mut self, v: &[u64]) -> bool {
        let mut v = v.to_vec();
        for (p, b) in &self.basis {
            if v[p / 64] >> (p % 64) & 1 == 1 {
                for (x, y) in v.iter_mut().zip(b) {
                    *x ^= y;
                }
            }
        }
        match (0..v.len() * 64).find(|&c| v[c / 64] >> (c % 64) & 1 == 1) {
            None => false,
            Some(p) => {
                // Keep the basis reduced at the new pivot.
                for (_, b) in self.basis.iter_mut() {
                    if b[p / 64] >> (p % 64) & 1 == 1 {
                        for (x, y) in b.iter_mut().zip(&v) {
                            *x ^= y;
                        }
                    }
                }
                self.basis.push((p, v));
                true
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }
}
