//! Dense GF(2) matrices on u64 words: rank, solving, kernel bases.
//!
//! Pivoting is deterministic: the lowest available column index wins, so
//! solutions and kernel bases are reproducible across runs.

use alloc::vec;
use alloc::vec::Vec;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gf2Mat {
    rows: usize,
    cols: usize,
    words: usize,
    data: Vec<u64>,
}

impl Gf2Mat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        let words = cols.div_ceil(64);
        Gf2Mat {
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
        let w = r * self.words + c / 64;
        let bit = 1u64 << (c % 64);
        if v {
            self.data[w] |= bit;
        } else {
            self.data[w] &= !bit;
        }
    }

    fn xor_row_into(&mut self, src: usize, dst: usize) {
        let (s, d) = (src * self.words, dst * self.words);
        for i in 0..self.words {
            self.data[d + i] ^= self.data[s + i];
        }
    }

    fn row_is_zero(&self, r: usize) -> bool {
        self.data[r * self.words..(r + 1) * self.words]
            .iter()
            .all(|&w| w == 0)
    }

    pub fn rank(&self) -> usize {
        self.clone().eliminate(None).0
    }

    /// Row-reduces in place. Returns (rank, pivot column per reduced row).
    /// When `rhs` is given it is carried along as an augmented column.
    fn eliminate(&mut self, mut rhs: Option<&mut Vec<bool>>) -> (usize, Vec<usize>) {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            let Some(p) = (row..self.rows).find(|&r| self.get(r, col)) else {
                continue;
            };
            if p != row {
                for i in 0..self.words {
                    self.data.swap(row * self.words + i, p * self.words + i);
                }
                if let Some(b) = rhs.as_deref_mut() {
                    b.swap(row, p);
                }
            }
            for r in 0..self.rows {
                if r != row && self.get(r, col) {
                    self.xor_row_into(row, r);
                    if let Some(b) = rhs.as_deref_mut() {
                        b[r] ^= b[row];
                    }
                }
            }
            pivots.push(col);
            row += 1;
            if row == self.rows {
                break;
            }
        }
        (row, pivots)
    }

    /// Solves `self * x = rhs`. Free variables are set to 0. Returns None if
    /// the system is inconsistent.
    pub fn solve(&self, rhs: &[bool]) -> Option<Vec<bool>> {
        assert_eq!(rhs.len(), self.rows);
        let mut m = self.clone();
        let mut b = rhs.to_vec();
        let (rank, pivots) = m.eliminate(Some(&mut b));
        for r in rank..self.rows {
            if m.row_is_zero(r) && b[r] {
                return None;
            }
        }
        let mut x = vec![false; self.cols];
        for (r, &col) in pivots.iter().enumerate() {
            x[col] = b[r];
        }
        Some(x)
    }

    /// Basis of the kernel `{x : self * x = 0}`, one vector per free column,
    /// ordered by free column index.
    pub fn kernel_basis(&self) -> Vec<Vec<bool>> {
        let mut m = self.clone();
        let (_, pivots) = m.eliminate(None);
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if is_pivot[free] {
                continue;
            }
            let mut x = vec![false; self.cols];
            x[free] = true;
            for (r, &col) in pivots.iter().enumerate() {
                x[col] = m.get(r, free);
            }
            basis.push(x);
        }
        basis
    }

    /// Multiplies by a column vector.
    pub fn apply(&self, x: &[bool]) -> Vec<bool> {
        assert_eq!(x.len(), self.cols);
        let mut out = vec![false; self.rows];
        for r in 0..self.rows {
            let mut acc = false;
            for c in 0..self.cols {
                acc ^= self.get(r, c) && x[c];
            }
            out[r] = acc;
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_and_kernel() {
        // [1 1 0; 0 1 1] has rank 2 and kernel spanned by (1,1,1).
        let mut m = Gf2Mat::zero(2, 3);
        m.set(0, 0, true);
        m.set(0, 1, true);
        m.set(1, 1, true);
        m.set(1, 2, true);
        assert_eq!(m.rank(), 2);
        let basis = m.kernel_basis();
        assert_eq!(basis, alloc::vec![alloc::vec![true, true, true]]);
        assert!(m.apply(&basis[0]).iter().all(|&b| !b));
    }

    #[test]
    fn solve_consistent_and_not() {
        let mut m = Gf2Mat::zero(2, 2);
        m.set(0, 0, true);
        m.set(1, 0, true);
        // x0 = 1, x0 = 1: consistent.
        let x = m.solve(&[true, true]).unwrap();
        assert_eq!(x, alloc::vec![true, false]);
        // x0 = 1, x0 = 0: inconsistent.
        assert!(m.solve(&[true, false]).is_none());
    }

    #[test]
    fn solve_prefers_low_pivots_and_zero_frees() {
        // Single equation x0 + x1 + x2 = 1: lowest pivot solution is x0 = 1.
        let mut m = Gf2Mat::zero(1, 3);
        for c in 0..3 {
            m.set(0, c, true);
        }
        assert_eq!(m.solve(&[true]).unwrap(), alloc::vec![true, false, false]);
    }
}
