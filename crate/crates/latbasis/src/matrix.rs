//! Dense matrices over exact integers and rationals.
//!
//! Generators are columns everywhere in this crate, so storage is
//! column-major and column access is cheap.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_traits::{One, Signed, Zero};

use crate::arith::{Int, Rat};
use crate::error::Error;

/// Dense integer matrix, column-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Int>,
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![Int::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zero(n, n);
        for i in 0..n {
            m[(i, i)] = Int::one();
        }
        m
    }

    /// Builds a matrix from its columns. All columns must have length `rows`.
    pub fn from_cols(rows: usize, cols: Vec<Vec<Int>>) -> Self {
        let mut data = Vec::with_capacity(rows * cols.len());
        let ncols = cols.len();
        for col in cols {
            assert_eq!(col.len(), rows, "column length mismatch");
            data.extend(col);
        }
        IntMatrix { rows, cols: ncols, data }
    }

    /// Builds a matrix from its rows. All rows must have equal length.
    pub fn from_rows(rows: Vec<Vec<Int>>) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let mut m = IntMatrix::zero(nrows, ncols);
        for (r, row) in rows.into_iter().enumerate() {
            assert_eq!(row.len(), ncols, "row length mismatch");
            for (c, v) in row.into_iter().enumerate() {
                m[(r, c)] = v;
            }
        }
        m
    }

    /// Convenience constructor for literals in tests and examples.
    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        IntMatrix::from_rows(
            rows.iter().map(|row| row.iter().map(|&v| Int::from(v)).collect()).collect(),
        )
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

    pub fn col(&self, c: usize) -> &[Int] {
        &self.data[c * self.rows..(c + 1) * self.rows]
    }

    pub fn col_vec(&self, c: usize) -> Vec<Int> {
        self.col(c).to_vec()
    }

    pub fn set_col(&mut self, c: usize, col: &[Int]) {
        assert_eq!(col.len(), self.rows, "column length mismatch");
        self.data[c * self.rows..(c + 1) * self.rows].clone_from_slice(col);
    }

    /// New matrix keeping the columns listed in `idx`, in that order.
    pub fn select_columns(&self, idx: &[usize]) -> IntMatrix {
        IntMatrix::from_cols(self.rows, idx.iter().map(|&c| self.col_vec(c)).collect())
    }

    /// New matrix keeping the rows listed in `idx`, in that order.
    pub fn select_rows(&self, idx: &[usize]) -> IntMatrix {
        let mut m = IntMatrix::zero(idx.len(), self.cols);
        for (r_new, &r) in idx.iter().enumerate() {
            for c in 0..self.cols {
                m[(r_new, c)] = self[(r, c)].clone();
            }
        }
        m
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut m = IntMatrix::zero(self.cols, self.rows);
        for c in 0..self.cols {
            for r in 0..self.rows {
                m[(c, r)] = self[(r, c)].clone();
            }
        }
        m
    }

    /// Largest absolute value of any entry; 0 for empty matrices.
    pub fn max_norm(&self) -> Int {
        let mut best = Int::zero();
        for v in &self.data {
            let a = v.abs();
            if a > best {
                best = a;
            }
        }
        best
    }

    /// Squared Euclidean norm of column `c`.
    pub fn col_norm_sq(&self, c: usize) -> Int {
        self.col(c).iter().map(|v| v * v).sum()
    }

    /// Matrix-vector product with an integer vector.
    pub fn mul_int_vec(&self, x: &[Int]) -> Vec<Int> {
        assert_eq!(x.len(), self.cols, "vector length mismatch");
        let mut out = vec![Int::zero(); self.rows];
        for (c, xc) in x.iter().enumerate() {
            if xc.is_zero() {
                continue;
            }
            for (r, v) in self.col(c).iter().enumerate() {
                out[r] += v * xc;
            }
        }
        out
    }

    /// Matrix-vector product with a rational vector.
    pub fn mul_rat_vec(&self, x: &[Rat]) -> Vec<Rat> {
        assert_eq!(x.len(), self.cols, "vector length mismatch");
        let mut out = vec![Rat::zero(); self.rows];
        for (c, xc) in x.iter().enumerate() {
            if xc.is_zero() {
                continue;
            }
            for (r, v) in self.col(c).iter().enumerate() {
                out[r] += Rat::from_integer(v.clone()) * xc;
            }
        }
        out
    }
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = Int;

    fn index(&self, (r, c): (usize, usize)) -> &Int {
        &self.data[c * self.rows + r]
    }
}

impl IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Int {
        &mut self.data[c * self.rows + r]
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self.data.iter().map(|v| v.to_string().len()).max().unwrap_or(1);
        for r in 0..self.rows {
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{:>width$}", self[(r, c)].to_string())?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Dense rational matrix, column-major. Entries stay reduced because the
/// underlying rational type reduces after every operation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl RatMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        RatMatrix { rows, cols, data: vec![Rat::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = RatMatrix::zero(n, n);
        for i in 0..n {
            m[(i, i)] = Rat::one();
        }
        m
    }

    pub fn from_cols(rows: usize, cols: Vec<Vec<Rat>>) -> Self {
        let mut data = Vec::with_capacity(rows * cols.len());
        let ncols = cols.len();
        for col in cols {
            assert_eq!(col.len(), rows, "column length mismatch");
            data.extend(col);
        }
        RatMatrix { rows, cols: ncols, data }
    }

    pub fn from_int(m: &IntMatrix) -> Self {
        let mut out = RatMatrix::zero(m.rows(), m.cols());
        for c in 0..m.cols() {
            for r in 0..m.rows() {
                out[(r, c)] = Rat::from_integer(m[(r, c)].clone());
            }
        }
        out
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn col(&self, c: usize) -> &[Rat] {
        &self.data[c * self.rows..(c + 1) * self.rows]
    }

    pub fn col_vec(&self, c: usize) -> Vec<Rat> {
        self.col(c).to_vec()
    }

    pub fn set_col(&mut self, c: usize, col: &[Rat]) {
        assert_eq!(col.len(), self.rows, "column length mismatch");
        self.data[c * self.rows..(c + 1) * self.rows].clone_from_slice(col);
    }

    pub fn is_integral(&self) -> bool {
        self.data.iter().all(Rat::is_integer)
    }

    /// Converts to an integer matrix if every entry is integral.
    pub fn to_integer(&self) -> Option<IntMatrix> {
        if !self.is_integral() {
            return None;
        }
        let mut m = IntMatrix::zero(self.rows, self.cols);
        for c in 0..self.cols {
            for r in 0..self.rows {
                m[(r, c)] = self[(r, c)].to_integer();
            }
        }
        Some(m)
    }

    /// Largest denominator bit length over all entries (0 for empty).
    pub fn max_denom_bits(&self) -> u64 {
        self.data.iter().map(|q| q.denom().bits()).max().unwrap_or(0)
    }
}

impl Index<(usize, usize)> for RatMatrix {
    type Output = Rat;

    fn index(&self, (r, c): (usize, usize)) -> &Rat {
        &self.data[c * self.rows + r]
    }
}

impl IndexMut<(usize, usize)> for RatMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Rat {
        &mut self.data[c * self.rows + r]
    }
}

impl fmt::Display for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self.data.iter().map(|v| v.to_string().len()).max().unwrap_or(1);
        for r in 0..self.rows {
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{:>width$}", self[(r, c)].to_string())?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Schoolbook matrix product.
pub fn naive_matmul(m: &IntMatrix, n: &IntMatrix) -> Result<IntMatrix, Error> {
    if m.cols() != n.rows() {
        return Err(Error::DimensionMismatch(format!(
            "cannot multiply {}x{} by {}x{}",
            m.rows(),
            m.cols(),
            n.rows(),
            n.cols()
        )));
    }
    let mut out = IntMatrix::zero(m.rows(), n.cols());
    for c in 0..n.cols() {
        for k in 0..m.cols() {
            let nv = &n[(k, c)];
            if nv.is_zero() {
                continue;
            }
            for r in 0..m.rows() {
                let mv = &m[(r, k)];
                if !mv.is_zero() {
                    out[(r, c)] += mv * nv;
                }
            }
        }
    }
    Ok(out)
}
