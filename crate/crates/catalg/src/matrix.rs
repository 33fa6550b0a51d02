//! Exact integer matrices and fraction-free determinants.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::fmt;

/// Binomial coefficient with the conventions used throughout the crate:
/// `C(a, b) = 0` whenever `b < 0` or `b > a`, except `C(-1, -1) = 1`.
///
/// The single negative-negative case is what makes the `(empty, empty)`
/// corner of the Cartan matrix of `SEO_n` come out as 1.
pub fn binomial(a: i64, b: i64) -> BigInt {
    if a == -1 && b == -1 {
        return BigInt::one();
    }
    if b < 0 || a < 0 || b > a {
        return BigInt::zero();
    }
    let b = b.min(a - b);
    let mut acc = BigInt::one();
    for t in 1..=b {
        acc = acc * BigInt::from(a - b + t) / BigInt::from(t);
    }
    acc
}

/// Dense integer matrix with arbitrary-precision entries, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    /// Builds a matrix from a function of (row, col), both 0-based.
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> BigInt) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        ExactMatrix {
            rows,
            cols,
            entries,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, row: usize, col: usize) -> &BigInt {
        &self.entries[row * self.cols + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: BigInt) {
        self.entries[row * self.cols + col] = value;
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// True when every diagonal entry is 1 and everything below is 0.
    pub fn is_upper_unitriangular(&self) -> bool {
        if !self.is_square() {
            return false;
        }
        for i in 0..self.rows {
            if !self.get(i, i).is_one() {
                return false;
            }
            for j in 0..i {
                if !self.get(i, j).is_zero() {
                    return false;
                }
            }
        }
        true
    }

    /// Exact determinant by Bareiss fraction-free elimination with row
    /// pivoting. Every division below is exact, so no rationals appear.
    pub fn determinant(&self) -> BigInt {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut m: Vec<Vec<BigInt>> = (0..n)
            .map(|i| (0..n).map(|j| self.get(i, j).clone()).collect())
            .collect();
        let mut sign = 1i8;
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m[k][k].is_zero() {
                match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                    Some(r) => {
                        m.swap(k, r);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                    m[i][j] = num / &prev;
                }
                m[i][k] = BigInt::zero();
            }
            prev = m[k][k].clone();
        }
        if sign < 0 {
            -m[n - 1][n - 1].clone()
        } else {
            m[n - 1][n - 1].clone()
        }
    }
}

impl fmt::Display for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self
            .entries
            .iter()
            .map(|e| e.to_string().len())
            .max()
            .unwrap_or(1);
        for i in 0..self.rows {
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{:>width$}", self.get(i, j).to_string(), width = width)?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}
