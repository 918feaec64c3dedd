use std::fmt;
use std::ops::Mul;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{ExactError, Rational};

/// Dense integer matrix in row-major order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
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
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from rows. All rows must have the same length; an
    /// empty list gives a `0 x 0` matrix.
    pub fn from_rows<T: Clone + Into<BigInt>>(rows: &[Vec<T>]) -> Result<Self, ExactError> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(ExactError::Dimension("ragged rows".into()));
        }
        Ok(IntMatrix {
            rows: rows.len(),
            cols,
            data: rows
                .iter()
                .flat_map(|r| r.iter().cloned().map(Into::into))
                .collect(),
        })
    }

    /// Convenience for literal matrices; panics on ragged input.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let v: Vec<Vec<i64>> = rows.iter().map(|r| r.to_vec()).collect();
        Self::from_rows(&v).expect("rectangular literal")
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns<T: Clone + Into<BigInt>>(cols: &[Vec<T>]) -> Result<Self, ExactError> {
        Ok(Self::from_rows(cols)?.transpose())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> Vec<BigInt> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn to_rational_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .into_iter()
                    .map(Rational::from_integer)
                    .collect()
            })
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

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Matrix product, or a dimension error.
    pub fn checked_mul(&self, other: &IntMatrix) -> Result<IntMatrix, ExactError> {
        if self.cols != other.rows {
            return Err(ExactError::Dimension(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * out.cols + j;
                    out.data[idx] += a * other.get(k, j);
                }
            }
        }
        Ok(out)
    }

    /// Applies the matrix to a column vector.
    pub fn apply(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.cols, "vector length");
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j) * &v[j]).sum())
            .collect()
    }

    /// Applies the matrix to a rational column vector.
    pub fn apply_q(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols, "vector length");
        (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| Rational::from_integer(self.get(i, j).clone()) * &v[j])
                    .fold(Rational::zero(), |a, b| a + b)
            })
            .collect()
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// `row[dst] += k * row[src]`
    pub fn add_row_multiple(&mut self, dst: usize, src: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let v = self.get(src, j) * k;
            self.data[dst * self.cols + j] += v;
        }
    }

    /// `col[dst] += k * col[src]`
    pub fn add_col_multiple(&mut self, dst: usize, src: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let v = self.get(i, src) * k;
            self.data[i * self.cols + dst] += v;
        }
    }

    pub fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let idx = i * self.cols + j;
            self.data[idx] = -&self.data[idx];
        }
    }

    pub fn negate_col(&mut self, j: usize) {
        for i in 0..self.rows {
            let idx = i * self.cols + j;
            self.data[idx] = -&self.data[idx];
        }
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> Result<BigInt, ExactError> {
        if !self.is_square() {
            return Err(ExactError::Dimension("determinant of a non-square matrix".into()));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut m = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m.get(k, k).is_zero() {
                match (k + 1..n).find(|&i| !m.get(i, k).is_zero()) {
                    Some(i) => {
                        m.swap_rows(i, k);
                        sign = -sign;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (m.get(i, j) * m.get(k, k) - m.get(i, k) * m.get(k, j)) / &prev;
                    m.set(i, j, v);
                }
            }
            prev = m.get(k, k).clone();
        }
        Ok(sign * m.get(n - 1, n - 1))
    }

    pub fn rank(&self) -> usize {
        super::rank_q(&self.to_rational_rows())
    }

    /// Exact inverse when the matrix is unimodular.
    pub fn unimodular_inverse(&self) -> Option<IntMatrix> {
        let d = self.det().ok()?;
        if d.abs() != BigInt::one() {
            return None;
        }
        let n = self.rows;
        let rows = self.to_rational_rows();
        let mut inv = Self::zeros(n, n);
        for j in 0..n {
            let mut e = vec![Rational::zero(); n];
            e[j] = Rational::one();
            let x = super::solve_q(&rows, &e)?;
            for (i, xi) in x.into_iter().enumerate() {
                if !xi.is_integer() {
                    return None;
                }
                inv.set(i, j, xi.to_integer());
            }
        }
        Some(inv)
    }

    pub fn pow(&self, e: u32) -> IntMatrix {
        let mut acc = Self::identity(self.rows);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }
}

impl Mul for &IntMatrix {
    type Output = IntMatrix;
    fn mul(self, rhs: &IntMatrix) -> IntMatrix {
        self.checked_mul(rhs).expect("compatible dimensions")
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for i in 0..self.rows {
            if i > 0 {
                f.write_str(",")?;
            }
            f.write_str("[")?;
            for j in 0..self.cols {
                if j > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn determinant() {
        let m = IntMatrix::from_i64(&[&[0, 1, -1], &[3, -8, -1], &[-3, 7, -7]]);
        assert_eq!(m.det().unwrap(), BigInt::from(27));
        let s = IntMatrix::from_i64(&[&[1, 2], &[2, 4]]);
        assert!(s.det().unwrap().is_zero());
        assert_eq!(IntMatrix::identity(4).det().unwrap(), BigInt::one());
        let swap = IntMatrix::from_i64(&[&[0, 1], &[1, 0]]);
        assert_eq!(swap.det().unwrap(), BigInt::from(-1));
    }

    #[test]
    fn products_and_inverse() {
        let tau = IntMatrix::from_i64(&[&[-1, 0, 0], &[5, 1, 0], &[-2, 0, 1]]);
        assert_eq!(tau.pow(2), IntMatrix::identity(3));
        assert_eq!(tau.unimodular_inverse().unwrap(), tau);
        let a = IntMatrix::from_i64(&[&[2, 0], &[0, 1]]);
        assert!(a.unimodular_inverse().is_none());
        assert!(a.checked_mul(&IntMatrix::identity(3)).is_err());
    }

    #[test]
    fn display() {
        let m = IntMatrix::from_i64(&[&[-3, 3], &[-6, -3]]);
        assert_eq!(m.to_string(), "[[-3,3],[-6,-3]]");
    }
}
