//! Dense matrices over F_p, used for the natural representation on `A(n)`.

use std::ops::{Index, IndexMut};

use crate::params::Params;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FpMatrix {
    params: Params,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl FpMatrix {
    pub fn zeros(params: Params, rows: usize, cols: usize) -> Self {
        FpMatrix { params, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(params: Params, size: usize) -> Self {
        let mut m = Self::zeros(params, size, size);
        for i in 0..size {
            m[(i, i)] = 1;
        }
        m
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&c| c == 0)
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!(self.cols, other.rows, "matrix shapes do not compose");
        let p = self.params.p() as u64;
        let mut out = Self::zeros(self.params, self.rows, other.cols);
        let mut acc = vec![0u64; other.cols];
        for i in 0..self.rows {
            acc.iter_mut().for_each(|a| *a = 0);
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k] as u64;
                if a == 0 {
                    continue;
                }
                let brow = other.row(k);
                for (slot, &b) in acc.iter_mut().zip(brow) {
                    *slot += a * b as u64;
                }
                // keep the accumulator bounded
                if k % 1024 == 1023 {
                    acc.iter_mut().for_each(|v| *v %= p);
                }
            }
            for (j, v) in acc.iter().enumerate() {
                out.data[i * other.cols + j] = (v % p) as u32;
            }
        }
        out
    }

    pub fn sub(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!(self.shape(), other.shape());
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| self.params.sub(a, b)).collect();
        FpMatrix { params: self.params, rows: self.rows, cols: self.cols, data }
    }

    /// `AB - BA`.
    pub fn commutator(&self, other: &FpMatrix) -> FpMatrix {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn pow(&self, mut e: u64) -> FpMatrix {
        assert_eq!(self.rows, self.cols);
        let mut base = self.clone();
        let mut acc = Self::identity(self.params, self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Submatrix on the given row and column index sets.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> FpMatrix {
        let mut out = Self::zeros(self.params, rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                out[(a, b)] = self[(i, j)];
            }
        }
        out
    }

    /// Gauss-Jordan inverse; `None` when singular.
    pub fn inverse(&self) -> Option<FpMatrix> {
        assert_eq!(self.rows, self.cols);
        let pr = self.params;
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Self::identity(pr, n);
        for col in 0..n {
            let piv = (col..n).find(|&r| a[(r, col)] != 0)?;
            if piv != col {
                for j in 0..n {
                    a.data.swap(piv * n + j, col * n + j);
                    inv.data.swap(piv * n + j, col * n + j);
                }
            }
            let s = pr.inv(a[(col, col)]);
            for j in 0..n {
                a[(col, j)] = pr.mul(a[(col, j)], s);
                inv[(col, j)] = pr.mul(inv[(col, j)], s);
            }
            for r in 0..n {
                if r == col || a[(r, col)] == 0 {
                    continue;
                }
                let f = a[(r, col)];
                for j in 0..n {
                    a[(r, j)] = pr.sub(a[(r, j)], pr.mul(f, a[(col, j)]));
                    inv[(r, j)] = pr.sub(inv[(r, j)], pr.mul(f, inv[(col, j)]));
                }
            }
        }
        Some(inv)
    }
}

impl Index<(usize, usize)> for FpMatrix {
    type Output = u32;
    fn index(&self, (i, j): (usize, usize)) -> &u32 {
        assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for FpMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut u32 {
        assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_roundtrip() {
        let pr = Params::new(5, 1).unwrap();
        let mut m = FpMatrix::zeros(pr, 2, 2);
        m[(0, 0)] = 2;
        m[(0, 1)] = 1;
        m[(1, 1)] = 3;
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), FpMatrix::identity(pr, 2));
        let mut sing = FpMatrix::zeros(pr, 2, 2);
        sing[(0, 0)] = 1;
        sing[(1, 0)] = 2;
        assert!(sing.inverse().is_none());
    }

    #[test]
    fn pow_matches_repeated_product() {
        let pr = Params::new(7, 1).unwrap();
        let mut m = FpMatrix::zeros(pr, 3, 3);
        m[(0, 1)] = 3;
        m[(1, 2)] = 5;
        m[(2, 0)] = 1;
        m[(1, 1)] = 2;
        let mut manual = FpMatrix::identity(pr, 3);
        for _ in 0..7 {
            manual = manual.mul(&m);
        }
        assert_eq!(m.pow(7), manual);
    }
}
