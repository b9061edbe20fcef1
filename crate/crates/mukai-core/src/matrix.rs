//! Dense integer matrices with exact kernel and Smith normal form.
//!
//! Sizes here are tiny (3×3 lattice actions, 2×2 Gram matrices), so the
//! implementation favors clarity over asymptotics: Euclidean column
//! reduction for kernels, the classical elimination for Smith normal form,
//! Bareiss for determinants.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::ser::SerializeSeq;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Row-major matrix over ℤ. Serializes as nested arrays of integers.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum MatrixError {
    #[error("ragged rows: expected {expected} columns, row {row} has {got}")]
    Ragged {
        row: usize,
        expected: usize,
        got: usize,
    },
    #[error("shape mismatch: {lhs_rows}x{lhs_cols} * {rhs_rows}x{rhs_cols}")]
    ShapeMismatch {
        lhs_rows: usize,
        lhs_cols: usize,
        rhs_rows: usize,
        rhs_cols: usize,
    },
    #[error("determinant requires a square matrix, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
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
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Result<Self, MatrixError> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != ncols {
                return Err(MatrixError::Ragged {
                    row: i,
                    expected: ncols,
                    got: row.len(),
                });
            }
        }
        Ok(IntMatrix {
            rows: nrows,
            cols: ncols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Convenience constructor for literal matrices.
    pub fn from_i64(rows: &[&[i64]]) -> Result<Self, MatrixError> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    if i == j {
                        self[(i, j)].is_one()
                    } else {
                        self[(i, j)].is_zero()
                    }
                })
            })
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut out = IntMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].clone();
            }
        }
        out
    }

    pub fn mul(&self, rhs: &IntMatrix) -> Result<IntMatrix, MatrixError> {
        if self.cols != rhs.rows {
            return Err(MatrixError::ShapeMismatch {
                lhs_rows: self.rows,
                lhs_cols: self.cols,
                rhs_rows: rhs.rows,
                rhs_cols: rhs.cols,
            });
        }
        let mut out = IntMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for j in 0..rhs.cols {
                let mut acc = BigInt::zero();
                for k in 0..self.cols {
                    acc += &self[(i, k)] * &rhs[(k, j)];
                }
                out[(i, j)] = acc;
            }
        }
        Ok(out)
    }

    pub fn mul_column(&self, col: &[BigInt]) -> Result<Vec<BigInt>, MatrixError> {
        if self.cols != col.len() {
            return Err(MatrixError::ShapeMismatch {
                lhs_rows: self.rows,
                lhs_cols: self.cols,
                rhs_rows: col.len(),
                rhs_cols: 1,
            });
        }
        Ok((0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|k| &self[(i, k)] * &col[k])
                    .sum::<BigInt>()
            })
            .collect())
    }

    /// Determinant by the Bareiss fraction-free elimination.
    pub fn det(&self) -> Result<BigInt, MatrixError> {
        if self.rows != self.cols {
            return Err(MatrixError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut m = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m[(k, k)].is_zero() {
                match (k + 1..n).find(|&i| !m[(i, k)].is_zero()) {
                    Some(i) => {
                        m.swap_rows(k, i);
                        sign = -sign;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let val = (&m[(i, j)] * &m[(k, k)] - &m[(i, k)] * &m[(k, j)]) / &prev;
                    m[(i, j)] = val;
                }
                m[(i, k)] = BigInt::zero();
            }
            prev = m[(k, k)].clone();
        }
        Ok(sign * m[(n - 1, n - 1)].clone())
    }

    /// Basis of the integer kernel `{x : Mx = 0}`, returned as the columns
    /// of a `cols × dim` matrix (zero columns count means trivial kernel).
    ///
    /// The output lattice is saturated: kernels of ℤ-linear maps always are,
    /// and the basis comes from the unimodular column transformation that
    /// puts `M` in column echelon form.
    pub fn kernel(&self) -> IntMatrix {
        let mut a = self.clone();
        let mut u = IntMatrix::identity(self.cols);
        let mut pivot = 0usize;
        for row in 0..self.rows {
            if pivot == self.cols {
                break;
            }
            // Euclidean reduction across columns pivot.. on this row.
            loop {
                let best = (pivot..self.cols)
                    .filter(|&j| !a[(row, j)].is_zero())
                    .min_by_key(|&j| a[(row, j)].abs());
                let Some(best) = best else { break };
                a.swap_cols(pivot, best);
                u.swap_cols(pivot, best);
                let mut clean = true;
                for j in pivot + 1..self.cols {
                    if a[(row, j)].is_zero() {
                        continue;
                    }
                    let q = &a[(row, j)] / &a[(row, pivot)];
                    if !q.is_zero() {
                        a.col_axpy(j, pivot, &-&q);
                        u.col_axpy(j, pivot, &-&q);
                    }
                    if !a[(row, j)].is_zero() {
                        clean = false;
                    }
                }
                if clean {
                    break;
                }
            }
            if !a[(row, pivot)].is_zero() {
                pivot += 1;
            }
        }
        // Trailing columns of the transformation span the kernel.
        let dim = self.cols - pivot;
        let mut out = IntMatrix::zeros(self.cols, dim);
        for (jj, j) in (pivot..self.cols).enumerate() {
            for i in 0..self.cols {
                out[(i, jj)] = u[(i, j)].clone();
            }
        }
        out
    }

    /// Diagonal of the Smith normal form: nonnegative invariant factors
    /// `d₁ | d₂ | …`, one per `min(rows, cols)` slot, trailing zeros for
    /// rank deficiency. For square nonsingular input, `∏ dᵢ = |det|`.
    pub fn smith_normal_form(&self) -> Vec<BigInt> {
        let mut a = self.clone();
        let n = self.rows.min(self.cols);
        let mut t = 0usize;
        while t < n {
            let Some((pi, pj)) = a.min_abs_entry(t) else {
                break;
            };
            a.swap_rows(t, pi);
            a.swap_cols(t, pj);
            // Clear row and column t; each pass strictly shrinks the pivot
            // unless it already divides everything it meets.
            loop {
                let mut dirty = false;
                for i in t + 1..a.rows {
                    if a[(i, t)].is_zero() {
                        continue;
                    }
                    let q = &a[(i, t)] / &a[(t, t)];
                    a.row_axpy(i, t, &-&q);
                    if !a[(i, t)].is_zero() {
                        a.swap_rows(t, i);
                        dirty = true;
                    }
                }
                if dirty {
                    continue;
                }
                for j in t + 1..a.cols {
                    if a[(t, j)].is_zero() {
                        continue;
                    }
                    let q = &a[(t, j)] / &a[(t, t)];
                    a.col_axpy(j, t, &-&q);
                    if !a[(t, j)].is_zero() {
                        a.swap_cols(t, j);
                        dirty = true;
                    }
                }
                if !dirty {
                    break;
                }
            }
            // Divisibility: the pivot must divide the remaining submatrix.
            let offender = (t + 1..a.rows)
                .flat_map(|i| (t + 1..a.cols).map(move |j| (i, j)))
                .find(|&(i, j)| !(&a[(i, j)] % &a[(t, t)]).is_zero());
            if let Some((i, _)) = offender {
                let one = BigInt::one();
                a.row_axpy(t, i, &one);
                continue;
            }
            t += 1;
        }
        (0..n).map(|i| a[(i, i)].abs()).collect()
    }

    fn min_abs_entry(&self, from: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in from..self.rows {
            for j in from..self.cols {
                if self[(i, j)].is_zero() {
                    continue;
                }
                match best {
                    Some(b) if self[b].abs() <= self[(i, j)].abs() => {}
                    _ => best = Some((i, j)),
                }
            }
        }
        best
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for k in 0..self.cols {
            self.data.swap(i * self.cols + k, j * self.cols + k);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for k in 0..self.rows {
            self.data.swap(k * self.cols + i, k * self.cols + j);
        }
    }

    /// row_dst += q · row_src
    fn row_axpy(&mut self, dst: usize, src: usize, q: &BigInt) {
        for k in 0..self.cols {
            let add = q * &self[(src, k)];
            self[(dst, k)] += add;
        }
    }

    /// col_dst += q · col_src
    fn col_axpy(&mut self, dst: usize, src: usize, q: &BigInt) {
        for k in 0..self.rows {
            let add = q * &self[(k, src)];
            self[(k, dst)] += add;
        }
    }
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  [")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self[(i, j)])?;
            }
            writeln!(f, "]")?;
        }
        write!(f, "]")
    }
}

impl Serialize for IntMatrix {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        struct Row<'a>(&'a IntMatrix, usize);
        impl Serialize for Row<'_> {
            fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
                let mut seq = ser.serialize_seq(Some(self.0.cols))?;
                for j in 0..self.0.cols {
                    seq.serialize_element(&crate::jsonnum::BigIntRepr(&self.0[(self.1, j)]))?;
                }
                seq.end()
            }
        }
        let mut seq = ser.serialize_seq(Some(self.rows))?;
        for i in 0..self.rows {
            seq.serialize_element(&Row(self, i))?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for IntMatrix {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let rows: Vec<Vec<crate::jsonnum::BigIntOwned>> = Vec::deserialize(de)?;
        IntMatrix::from_rows(
            rows.into_iter()
                .map(|r| r.into_iter().map(|x| x.0).collect())
                .collect(),
        )
        .map_err(serde::de::Error::custom)
    }
}
