use std::fmt;
use std::ops::{Index, IndexMut, Mul};

use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);

/// Dense row-major complex matrix.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl ComplexMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = ONE;
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    /// Builds a matrix from row-major complex entries.
    pub fn from_vec(rows: usize, cols: usize, data: Vec<C64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{} entries supplied for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Self { rows, cols, data })
    }

    /// Builds a matrix from row-major real entries.
    ///
    /// Panics if `data.len() != rows * cols`.
    pub fn from_real(rows: usize, cols: usize, data: &[f64]) -> Self {
        assert_eq!(data.len(), rows * cols, "real data length mismatch");
        Self {
            rows,
            cols,
            data: data.iter().map(|&x| C64::new(x, 0.0)).collect(),
        }
    }

    pub fn diagonal(values: &[C64]) -> Self {
        let mut m = Self::zeros(values.len(), values.len());
        for (i, &v) in values.iter().enumerate() {
            m[(i, i)] = v;
        }
        m
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

    pub fn as_slice(&self) -> &[C64] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[C64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<C64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            let out_row = &mut out.data[i * other.cols..(i + 1) * other.cols];
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a == ZERO {
                    continue;
                }
                let b_row = &other.data[k * other.cols..(k + 1) * other.cols];
                for (o, &b) in out_row.iter_mut().zip(b_row) {
                    *o += a * b;
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[C64]) -> Result<Vec<C64>> {
        if v.len() != self.cols {
            return Err(Error::Dimension(format!(
                "vector of length {} for a {}x{} matrix",
                v.len(),
                self.rows,
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect())
    }

    pub fn conj_transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn scale(&self, c: C64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&x| x * c).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    fn zip_with(&self, other: &Self, f: impl Fn(C64, C64) -> C64) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Dimension(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        })
    }

    /// Largest entry modulus.
    pub fn max_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest entrywise modulus of `self − other`; infinite on shape mismatch.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        if self.rows != other.rows || self.cols != other.cols {
            return f64::INFINITY;
        }
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Reflection `2·A·A* − I` about the column space of an isometry.
    pub fn reflection(&self) -> Self {
        let mut r = (self * &self.conj_transpose()).scale(C64::new(2.0, 0.0));
        for i in 0..self.rows {
            r[(i, i)] -= ONE;
        }
        r
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.is_square() && self.max_abs_diff(&self.conj_transpose()) <= tol
    }

    pub fn is_isometry(&self, tol: f64) -> bool {
        let gram = &self.conj_transpose() * self;
        gram.max_abs_diff(&Self::identity(self.cols)) <= tol
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        self.is_square() && self.is_isometry(tol)
    }

    /// LU factorisation with partial pivoting. Returns the packed factors,
    /// the row permutation and the permutation sign.
    fn lu(&self) -> (Vec<C64>, Vec<usize>, f64, bool) {
        let n = self.rows;
        let mut a = self.data.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut sign = 1.0;
        let mut singular = false;
        for k in 0..n {
            let (p, pivot_abs) = (k..n)
                .map(|i| (i, a[i * n + k].norm()))
                .fold((k, -1.0), |best, cur| if cur.1 > best.1 { cur } else { best });
            if pivot_abs == 0.0 {
                singular = true;
                continue;
            }
            if p != k {
                for j in 0..n {
                    a.swap(k * n + j, p * n + j);
                }
                perm.swap(k, p);
                sign = -sign;
            }
            let pivot = a[k * n + k];
            for i in k + 1..n {
                let factor = a[i * n + k] / pivot;
                a[i * n + k] = factor;
                if factor == ZERO {
                    continue;
                }
                for j in k + 1..n {
                    let akj = a[k * n + j];
                    a[i * n + j] -= factor * akj;
                }
            }
        }
        (a, perm, sign, singular)
    }

    /// Determinant by LU with partial pivoting; singular input gives zero.
    pub fn determinant(&self) -> Result<C64> {
        if !self.is_square() {
            return Err(Error::Dimension(format!(
                "determinant of a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        let (a, _, sign, singular) = self.lu();
        if singular {
            return Ok(ZERO);
        }
        let mut det = C64::new(sign, 0.0);
        for i in 0..n {
            det *= a[i * n + i];
        }
        Ok(det)
    }

    /// Solves `self · x = b` for square nonsingular `self`.
    pub fn solve(&self, b: &[C64]) -> Result<Vec<C64>> {
        if !self.is_square() || b.len() != self.rows {
            return Err(Error::Dimension(format!(
                "solve with a {}x{} matrix and rhs of length {}",
                self.rows,
                self.cols,
                b.len()
            )));
        }
        let n = self.rows;
        let (a, perm, _, singular) = self.lu();
        if singular {
            return Err(Error::Validation("singular system".into()));
        }
        let mut y: Vec<C64> = perm.iter().map(|&p| b[p]).collect();
        for i in 0..n {
            for k in 0..i {
                let l = a[i * n + k];
                let yk = y[k];
                y[i] -= l * yk;
            }
        }
        for i in (0..n).rev() {
            for k in i + 1..n {
                let u = a[i * n + k];
                let yk = y[k];
                y[i] -= u * yk;
            }
            y[i] /= a[i * n + i];
        }
        Ok(y)
    }

    /// Principal submatrix on the given row/column indices.
    pub fn submatrix(&self, idx: &[usize]) -> Self {
        Self::from_fn(idx.len(), idx.len(), |i, j| self[(idx[i], idx[j])])
    }

    /// Real parts, row-major.
    pub fn real_parts(&self) -> Vec<f64> {
        self.data.iter().map(|z| z.re).collect()
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = C64;

    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

/// Unchecked product; panics on a shape mismatch. Use [`ComplexMatrix::matmul`]
/// where shapes come from user input.
impl Mul<&ComplexMatrix> for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.matmul(rhs).expect("matrix shape mismatch")
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for z in self.row(i) {
                if z.im == 0.0 {
                    write!(f, "{:>9.5} ", z.re)?;
                } else {
                    write!(f, "{:>9.5}{:+.5}i ", z.re, z.im)?;
                }
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn identity_is_left_neutral() {
        let x = ComplexMatrix::from_fn(2, 3, |i, j| c(i as f64 + 0.5, j as f64 - 1.0));
        assert_eq!(ComplexMatrix::identity(2).matmul(&x).unwrap(), x);
    }

    #[test]
    fn swap_squares_to_identity() {
        let x = ComplexMatrix::from_real(2, 2, &[0.0, 1.0, 1.0, 0.0]);
        assert_eq!(&x * &x, ComplexMatrix::identity(2));
    }

    #[test]
    fn matmul_rejects_bad_shapes() {
        let a = ComplexMatrix::zeros(2, 3);
        assert!(matches!(a.matmul(&a), Err(Error::Dimension(_))));
    }

    #[test]
    fn conj_transpose_of_i() {
        let m = ComplexMatrix::from_vec(1, 1, vec![c(0.0, 1.0)]).unwrap();
        assert_eq!(m.conj_transpose()[(0, 0)], c(0.0, -1.0));
        let sym = ComplexMatrix::from_real(2, 2, &[1.0, 2.0, 2.0, 3.0]);
        assert_eq!(sym.conj_transpose(), sym);
    }

    #[test]
    fn determinants() {
        assert_eq!(ComplexMatrix::identity(4).determinant().unwrap(), c(1.0, 0.0));
        let d = ComplexMatrix::diagonal(&[c(2.0, 0.0), c(3.0, 0.0)]);
        assert!((d.determinant().unwrap() - c(6.0, 0.0)).norm() < 1e-15);
        let singular = ComplexMatrix::from_real(2, 2, &[1.0, 2.0, 2.0, 4.0]);
        assert!(singular.determinant().unwrap().norm() < 1e-15);
        // odd permutation
        let p = ComplexMatrix::from_real(2, 2, &[0.0, 1.0, 1.0, 0.0]);
        assert_eq!(p.determinant().unwrap(), c(-1.0, 0.0));
    }

    #[test]
    fn solve_recovers_rhs() {
        let a = ComplexMatrix::from_vec(
            3,
            3,
            vec![
                c(2.0, 1.0),
                c(0.0, 0.0),
                c(1.0, 0.0),
                c(1.0, 0.0),
                c(3.0, -1.0),
                c(0.0, 2.0),
                c(0.0, 0.0),
                c(1.0, 1.0),
                c(4.0, 0.0),
            ],
        )
        .unwrap();
        let x = vec![c(1.0, 0.0), c(-2.0, 1.0), c(0.5, 0.5)];
        let b = a.mul_vec(&x).unwrap();
        let got = a.solve(&b).unwrap();
        for (g, e) in got.iter().zip(&x) {
            assert!((g - e).norm() < 1e-12);
        }
    }

    #[test]
    fn isometry_checks() {
        let column = ComplexMatrix::from_real(2, 1, &[1.0, 1.0]);
        assert!(!column.is_isometry(1e-12));
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let k = ComplexMatrix::from_real(4, 2, &[h, 0.0, h, 0.0, 0.0, h, 0.0, h]);
        assert!(k.is_isometry(1e-12));
        assert!(k.reflection().is_hermitian(1e-15));
    }
}
