//! Dense integer matrices with arbitrary-precision entries.
//!
//! Only what the engine needs: indexing, products, transposition and an
//! exact determinant/adjugate pair for unimodular inversion.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// `max(x, 0)`.
pub fn pos(x: &BigInt) -> BigInt {
    if x.is_positive() {
        x.clone()
    } else {
        BigInt::zero()
    }
}

/// `max(-x, 0)`.
pub fn neg_part(x: &BigInt) -> BigInt {
    if x.is_negative() {
        -x
    } else {
        BigInt::zero()
    }
}

/// Row-major `rows × cols` matrix over ℤ.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    /// Builds a matrix from rows; returns `None` when rows are ragged.
    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>], cols: usize) -> Option<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            if row.len() != cols {
                return None;
            }
            data.extend(row.iter().cloned().map(Into::into));
        }
        Some(IntMatrix {
            rows: rows.len(),
            cols,
            data,
        })
    }

    /// Convenience constructor for tests and examples.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let owned: Vec<Vec<i64>> = rows.iter().map(|r| r.to_vec()).collect();
        Self::from_rows(&owned, cols).expect("ragged rows")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.data
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

    pub fn mul(&self, other: &IntMatrix) -> Option<IntMatrix> {
        if self.cols != other.rows {
            return None;
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = BigInt::zero();
                for k in 0..self.cols {
                    acc += self.get(i, k) * other.get(k, j);
                }
                out.set(i, j, acc);
            }
        }
        Some(out)
    }

    /// Rows `start..end` as a new matrix.
    pub fn row_block(&self, start: usize, end: usize) -> IntMatrix {
        IntMatrix {
            rows: end - start,
            cols: self.cols,
            data: self.data[start * self.cols..end * self.cols].to_vec(),
        }
    }

    /// Largest absolute value of any entry (zero for an empty matrix).
    pub fn max_abs(&self) -> BigInt {
        self.data
            .iter()
            .map(|x| x.abs())
            .max()
            .unwrap_or_else(BigInt::zero)
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> Option<BigInt> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        if n == 0 {
            return Some(BigInt::one());
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a.get(k, k).is_zero() {
                let Some(p) = (k + 1..n).find(|&r| !a.get(r, k).is_zero()) else {
                    return Some(BigInt::zero());
                };
                for c in 0..n {
                    a.data.swap(k * n + c, p * n + c);
                }
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = a.get(i, j) * a.get(k, k) - a.get(i, k) * a.get(k, j);
                    // Bareiss guarantees exactness.
                    let (q, r) = v.div_rem(&prev);
                    debug_assert!(r.is_zero());
                    a.set(i, j, q);
                }
            }
            prev = a.get(k, k).clone();
        }
        Some(sign * a.get(n - 1, n - 1))
    }

    fn minor(&self, skip_row: usize, skip_col: usize) -> IntMatrix {
        let n = self.rows;
        let mut out = IntMatrix::zeros(n - 1, n - 1);
        let mut r = 0;
        for i in (0..n).filter(|&i| i != skip_row) {
            let mut c = 0;
            for j in (0..n).filter(|&j| j != skip_col) {
                out.set(r, c, self.get(i, j).clone());
                c += 1;
            }
            r += 1;
        }
        out
    }

    /// Classical adjugate: `adj(A)·A = det(A)·I`.
    pub fn adjugate(&self) -> Option<IntMatrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        if n == 0 {
            return Some(IntMatrix::zeros(0, 0));
        }
        if n == 1 {
            return Some(IntMatrix::identity(1));
        }
        let mut adj = IntMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let cofactor = self.minor(i, j).determinant()?;
                let signed = if (i + j) % 2 == 0 { cofactor } else { -cofactor };
                adj.set(j, i, signed);
            }
        }
        Some(adj)
    }

    /// Inverse over ℤ; `None` unless square with determinant ±1.
    pub fn unimodular_inverse(&self) -> Option<IntMatrix> {
        let det = self.determinant()?;
        if det.abs() != BigInt::one() {
            return None;
        }
        let mut adj = self.adjugate()?;
        if det.is_negative() {
            for x in adj.data.iter_mut() {
                *x = -&*x;
            }
        }
        Some(adj)
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list()
            .entries(self.to_rows().iter().map(|r| {
                r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
            }))
            .finish()
    }
}

/// Aligned integer grid, one row per line.
impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.data.iter().map(|x| x.to_string()).collect();
        let width = cells.iter().map(|c| c.len()).max().unwrap_or(1);
        for i in 0..self.rows {
            let line: Vec<String> = (0..self.cols)
                .map(|j| format!("{:>width$}", cells[i * self.cols + j]))
                .collect();
            writeln!(f, "[{}]", line.join(" "))?;
        }
        Ok(())
    }
}
