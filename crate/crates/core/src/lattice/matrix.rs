//! Dense integer matrices.

use super::LatticeError;
use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;

/// A dense row-major matrix of arbitrary-precision integers.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from rows; every row must have the same length.
    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Result<Self, LatticeError> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(LatticeError::Ragged);
        }
        let data = rows.iter().flat_map(|r| r.iter().cloned().map(Into::into)).collect();
        Ok(IntMatrix { rows: rows.len(), cols, data })
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Self {
        Self::from_rows(rows).expect("rows have equal length")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    /// Rows as machine integers, if every entry fits.
    pub fn to_i64_rows(&self) -> Option<Vec<Vec<i64>>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(ToPrimitive::to_i64).collect())
            .collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix, LatticeError> {
        if self.cols != other.rows {
            return Err(LatticeError::Shape { left: (self.rows, self.cols), right: (other.rows, other.cols) });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * other.cols + j;
                    out.data[idx] += a * other.get(k, j);
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &BigInt) -> IntMatrix {
        IntMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * c).collect() }
    }

    pub fn sub(&self, other: &IntMatrix) -> Result<IntMatrix, LatticeError> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(LatticeError::Shape { left: (self.rows, self.cols), right: (other.rows, other.cols) });
        }
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        Ok(IntMatrix { rows: self.rows, cols: self.cols, data })
    }

    /// True when every off-diagonal entry vanishes.
    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.get(i, j).is_zero()))
    }

    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i).clone()).collect()
    }

    pub fn from_diagonal(rows: usize, cols: usize, diag: &[BigInt]) -> Self {
        let mut m = Self::zeros(rows, cols);
        for (i, d) in diag.iter().enumerate() {
            m.set(i, i, d.clone());
        }
        m
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries((0..self.rows).map(|i| self.row(i))).finish()
    }
}

/// Machine-integer matrix kernels used on hot paths; they panic on overflow,
/// which callers rule out by the size of their inputs.
pub mod small {
    pub type Mat = Vec<Vec<i64>>;

    pub fn identity(n: usize) -> Mat {
        (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect()
    }

    pub fn mul(a: &Mat, b: &Mat) -> Mat {
        let cols = b.first().map_or(0, Vec::len);
        a.iter()
            .map(|row| {
                (0..cols)
                    .map(|j| {
                        row.iter().zip(b).fold(0i64, |acc, (x, brow)| {
                            acc.checked_add(x.checked_mul(brow[j]).expect("entry overflow"))
                                .expect("entry overflow")
                        })
                    })
                    .collect()
            })
            .collect()
    }

    /// Row vector times matrix.
    pub fn vec_mul(v: &[i64], m: &Mat) -> Vec<i64> {
        let cols = m.first().map_or(0, Vec::len);
        let mut out = vec![0i64; cols];
        for (x, row) in v.iter().zip(m) {
            if *x != 0 {
                for (o, y) in out.iter_mut().zip(row) {
                    *o += x * y;
                }
            }
        }
        out
    }

    pub fn neg(a: &Mat) -> Mat {
        a.iter().map(|r| r.iter().map(|x| -x).collect()).collect()
    }

    pub fn transpose(a: &Mat) -> Mat {
        let cols = a.first().map_or(0, Vec::len);
        (0..cols).map(|j| a.iter().map(|r| r[j]).collect()).collect()
    }

    pub fn dot(a: &[i64], b: &[i64]) -> i64 {
        a.iter().zip(b).map(|(x, y)| x * y).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_and_transpose() {
        let a = IntMatrix::from_i64_rows(&[vec![1, 2], vec![3, 4]]);
        let b = IntMatrix::from_i64_rows(&[vec![0, 1], vec![1, 0]]);
        let p = a.mul(&b).unwrap();
        assert_eq!(p, IntMatrix::from_i64_rows(&[vec![2, 1], vec![4, 3]]));
        assert_eq!(a.transpose().transpose(), a);
        assert!(a.mul(&IntMatrix::zeros(3, 1)).is_err());
    }

    #[test]
    fn ragged_rows_rejected() {
        assert!(matches!(IntMatrix::from_rows(&[vec![1i64], vec![1, 2]]), Err(LatticeError::Ragged)));
    }
}
