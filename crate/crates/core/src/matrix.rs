//! Dense integer matrices and Smith normal form.
//!
//! Matrices carry `i64` entries. Products accumulate in `i128` and report
//! overflow instead of wrapping. Smith normal form runs a fixed-width fast
//! path first and promotes the whole computation to arbitrary-precision
//! integers when any intermediate value would overflow.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

/// Row-major dense matrix over `i64`.
#[derive(Clone, PartialEq, Eq)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MatError {
    ShapeMismatch {
        lhs: (usize, usize),
        rhs: (usize, usize),
    },
    Overflow,
    BadRow {
        expected: usize,
        got: usize,
    },
}

impl fmt::Display for MatError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MatError::ShapeMismatch { lhs, rhs } => {
                write!(
                    f,
                    "shape mismatch: {}x{} vs {}x{}",
                    lhs.0, lhs.1, rhs.0, rhs.1
                )
            }
            MatError::Overflow => write!(f, "integer overflow in matrix arithmetic"),
            MatError::BadRow { expected, got } => {
                write!(f, "row length {got} does not match column count {expected}")
            }
        }
    }
}

impl Mat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zero(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<i64>>, cols: usize) -> Result<Self, MatError> {
        let nrows = rows.len();
        let mut data = Vec::with_capacity(nrows * cols);
        for r in rows {
            if r.len() != cols {
                return Err(MatError::BadRow {
                    expected: cols,
                    got: r.len(),
                });
            }
            data.extend_from_slice(&r);
        }
        Ok(Mat {
            rows: nrows,
            cols,
            data,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: i64) {
        self.data[r * self.cols + c] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zero(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.data[r * self.cols + c];
            }
        }
        t
    }

    pub fn scale(&self, k: i64) -> Result<Mat, MatError> {
        let mut out = self.clone();
        for v in &mut out.data {
            *v = v.checked_mul(k).ok_or(MatError::Overflow)?;
        }
        Ok(out)
    }

    pub fn add(&self, other: &Mat) -> Result<Mat, MatError> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(MatError::ShapeMismatch {
                lhs: (self.rows, self.cols),
                rhs: (other.rows, other.cols),
            });
        }
        let mut out = self.clone();
        for (v, w) in out.data.iter_mut().zip(&other.data) {
            *v = v.checked_add(*w).ok_or(MatError::Overflow)?;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Mat) -> Result<Mat, MatError> {
        self.add(&other.scale(-1)?)
    }

    /// `self * other`, with `i128` accumulation.
    pub fn mul(&self, other: &Mat) -> Result<Mat, MatError> {
        if self.cols != other.rows {
            return Err(MatError::ShapeMismatch {
                lhs: (self.rows, self.cols),
                rhs: (other.rows, other.cols),
            });
        }
        let mut out = Mat::zero(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.data[r * self.cols + k] as i128;
                if a == 0 {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.data[k * other.cols + c] as i128;
                    if b == 0 {
                        continue;
                    }
                    let cur = out.data[r * other.cols + c] as i128;
                    let next = cur
                        .checked_add(a.checked_mul(b).ok_or(MatError::Overflow)?)
                        .ok_or(MatError::Overflow)?;
                    out.data[r * other.cols + c] =
                        i64::try_from(next).map_err(|_| MatError::Overflow)?;
                }
            }
        }
        Ok(out)
    }

    /// Submatrix selecting the given rows and columns, in the given order.
    pub fn submatrix(&self, row_sel: &[usize], col_sel: &[usize]) -> Mat {
        let mut out = Mat::zero(row_sel.len(), col_sel.len());
        for (i, &r) in row_sel.iter().enumerate() {
            for (j, &c) in col_sel.iter().enumerate() {
                out.data[i * col_sel.len() + j] = self.data[r * self.cols + c];
            }
        }
        out
    }

    /// Writes `block` into `self` with its upper-left corner at `(r0, c0)`.
    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Mat) {
        debug_assert!(r0 + block.rows <= self.rows && c0 + block.cols <= self.cols);
        for r in 0..block.rows {
            for c in 0..block.cols {
                self.data[(r0 + r) * self.cols + (c0 + c)] = block.data[r * block.cols + c];
            }
        }
    }

    pub fn row(&self, r: usize) -> &[i64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Mat {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        write!(f, "]")
    }
}

/// Entry type for the Smith normal form elimination. `i64` reports overflow
/// through `None`; `BigInt` never fails.
trait SnfEntry: Clone + Ord {
    fn is_zero(&self) -> bool;
    fn abs(&self) -> Self;
    fn checked_sub_mul(&self, q: &Self, b: &Self) -> Option<Self>;
    fn checked_add(&self, b: &Self) -> Option<Self>;
    fn div_floor_q(&self, b: &Self) -> Self;
    fn rem_by(&self, b: &Self) -> Self;
}

impl SnfEntry for i64 {
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn abs(&self) -> Self {
        i64::wrapping_abs(*self)
    }
    fn checked_sub_mul(&self, q: &Self, b: &Self) -> Option<Self> {
        self.checked_sub(q.checked_mul(*b)?)
    }
    fn checked_add(&self, b: &Self) -> Option<Self> {
        i64::checked_add(*self, *b)
    }
    fn div_floor_q(&self, b: &Self) -> Self {
        // Truncated division is fine: any quotient leaving |r| < |b| works.
        self / b
    }
    fn rem_by(&self, b: &Self) -> Self {
        self % b
    }
}

impl SnfEntry for BigInt {
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn abs(&self) -> Self {
        Signed::abs(self)
    }
    fn checked_sub_mul(&self, q: &Self, b: &Self) -> Option<Self> {
        Some(self - q * b)
    }
    fn checked_add(&self, b: &Self) -> Option<Self> {
        Some(self + b)
    }
    fn div_floor_q(&self, b: &Self) -> Self {
        self / b
    }
    fn rem_by(&self, b: &Self) -> Self {
        self % b
    }
}

/// Diagonalization by row/column reduction. Returns the nonzero diagonal
/// entries (positive, in divisibility order), or None on overflow.
fn snf_eliminate<T: SnfEntry>(rows: usize, cols: usize, a: &mut Vec<Vec<T>>) -> Option<Vec<T>> {
    let n = rows.min(cols);
    let mut factors: Vec<T> = Vec::new();
    let mut k = 0;
    while k < n {
        // Locate the nonzero entry of minimal absolute value in a[k.., k..].
        let mut pivot: Option<(usize, usize)> = None;
        for i in k..rows {
            for j in k..cols {
                if !a[i][j].is_zero() {
                    match pivot {
                        Some((pi, pj)) if a[pi][pj].abs() <= a[i][j].abs() => {}
                        _ => pivot = Some((i, j)),
                    }
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        a.swap(k, pi);
        for row in a.iter_mut() {
            row.swap(k, pj);
        }

        'reduce: loop {
            // Clear column k below the pivot.
            for i in k + 1..rows {
                if a[i][k].is_zero() {
                    continue;
                }
                let q = a[i][k].div_floor_q(&a[k][k]);
                for j in k..cols {
                    a[i][j] = a[i][j].checked_sub_mul(&q, &a[k][j])?;
                }
                if !a[i][k].is_zero() {
                    // Remainder is smaller than the pivot; swap and restart.
                    a.swap(k, i);
                    continue 'reduce;
                }
            }
            // Clear row k to the right of the pivot.
            for j in k + 1..cols {
                if a[k][j].is_zero() {
                    continue;
                }
                let q = a[k][j].div_floor_q(&a[k][k]);
                for i in k..rows {
                    a[i][j] = a[i][j].checked_sub_mul(&q, &a[i][k])?;
                }
                if !a[k][j].is_zero() {
                    for row in a.iter_mut() {
                        row.swap(k, j);
                    }
                    continue 'reduce;
                }
            }
            // Pivot must divide the remaining submatrix for the divisibility
            // chain; if not, fold the offending row in and reduce again.
            for i in k + 1..rows {
                for j in k + 1..cols {
                    if !a[i][j].rem_by(&a[k][k]).is_zero() {
                        for jj in k..cols {
                            let folded = a[k][jj].checked_add(&a[i][jj])?;
                            a[k][jj] = folded;
                        }
                        continue 'reduce;
                    }
                }
            }
            break;
        }
        factors.push(a[k][k].abs());
        k += 1;
    }
    Some(factors)
}

/// Invariant factors of the matrix: the nonzero diagonal of its Smith normal
/// form, each positive, each dividing the next.
pub fn smith_invariant_factors(m: &Mat) -> Vec<BigInt> {
    let mut small: Vec<Vec<i64>> = (0..m.rows).map(|r| m.row(r).to_vec()).collect();
    if let Some(f) = snf_eliminate(m.rows, m.cols, &mut small) {
        return f.into_iter().map(BigInt::from).collect();
    }
    let mut big: Vec<Vec<BigInt>> = (0..m.rows)
        .map(|r| m.row(r).iter().map(|&v| BigInt::from(v)).collect())
        .collect();
    snf_eliminate(m.rows, m.cols, &mut big).expect("bigint elimination cannot overflow")
}

/// Rank over the rationals (count of nonzero invariant factors).
pub fn rank_over_q(m: &Mat) -> usize {
    smith_invariant_factors(m).len()
}

/// Rank over the prime field F_p, by Gaussian elimination mod p.
pub fn rank_mod_p(m: &Mat, p: u32) -> usize {
    assert!(p >= 2, "modulus must be at least 2");
    let p = p as i64;
    let mut a: Vec<Vec<i64>> = (0..m.rows)
        .map(|r| m.row(r).iter().map(|&v| v.rem_euclid(p)).collect())
        .collect();
    let mut rank = 0;
    for col in 0..m.cols {
        let Some(pivot) = (rank..m.rows).find(|&r| a[r][col] != 0) else {
            continue;
        };
        a.swap(rank, pivot);
        let inv = mod_inverse(a[rank][col], p);
        for j in col..m.cols {
            a[rank][j] = a[rank][j] * inv % p;
        }
        for r in 0..m.rows {
            if r != rank && a[r][col] != 0 {
                let f = a[r][col];
                for j in col..m.cols {
                    a[r][j] = (a[r][j] - f * a[rank][j]).rem_euclid(p);
                }
            }
        }
        rank += 1;
        if rank == m.rows {
            break;
        }
    }
    rank
}

fn mod_inverse(a: i64, p: i64) -> i64 {
    // Extended Euclid; p is prime and a is nonzero mod p.
    let (mut t, mut new_t) = (0i64, 1i64);
    let (mut r, mut new_r) = (p, a.rem_euclid(p));
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    debug_assert_eq!(r, 1);
    t.rem_euclid(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn m(rows: Vec<Vec<i64>>) -> Mat {
        let cols = rows[0].len();
        Mat::from_rows(rows, cols).unwrap()
    }

    #[test]
    fn snf_of_diag() {
        let a = m(vec![vec![2, 0], vec![0, 3]]);
        let f = smith_invariant_factors(&a);
        assert_eq!(f, vec![BigInt::from(1), BigInt::from(6)]);
    }

    #[test]
    fn snf_divisibility_chain() {
        let a = m(vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, 4, 16]]);
        let f = smith_invariant_factors(&a);
        // Known example: invariant factors 2, 2, 156.
        assert_eq!(f, vec![BigInt::from(2), BigInt::from(2), BigInt::from(156)]);
    }

    #[test]
    fn snf_zero_and_empty() {
        assert!(smith_invariant_factors(&Mat::zero(3, 2)).is_empty());
        assert!(smith_invariant_factors(&Mat::zero(0, 5)).is_empty());
    }

    #[test]
    fn rank_mod_p_matches_snf() {
        let a = m(vec![vec![2, 4], vec![6, 8]]);
        // SNF is diag(2, 4): rank 2 over Q, rank 0 over F_2, rank 2 over F_3.
        assert_eq!(rank_over_q(&a), 2);
        assert_eq!(rank_mod_p(&a, 2), 0);
        assert_eq!(rank_mod_p(&a, 3), 2);
    }

    #[test]
    fn snf_promotes_on_overflow() {
        // Entries near i64::MAX force the BigInt path.
        let big = i64::MAX / 2;
        let a = m(vec![vec![big, big - 1], vec![big - 3, big - 7]]);
        let f = smith_invariant_factors(&a);
        assert_eq!(f.len(), 2);
        assert_eq!(f[0], BigInt::from(1));
    }

    #[test]
    fn mul_checks_shapes() {
        let a = Mat::zero(2, 3);
        let b = Mat::zero(2, 3);
        assert!(a.mul(&b).is_err());
        assert!(a.mul(&b.transpose()).is_ok());
    }
}
