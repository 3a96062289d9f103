//! Dense exact matrices over a [`Scalar`] field.
//!
//! Products skip zero entries, which keeps the unipotent and toral
//! generators cheap to multiply even at dimension 78.

use std::fmt;
use std::ops::Mul;

use crate::scalars::{FieldDescriptor, FieldError, Polynomial, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MatrixError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is singular")]
    Singular,
    #[error(transparent)]
    Field(#[from] FieldError),
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize, field: &FieldDescriptor) -> Self {
        Matrix { rows, cols, data: vec![Scalar::zero(field); rows * cols] }
    }

    pub fn identity(n: usize, field: &FieldDescriptor) -> Self {
        let mut m = Self::zeros(n, n, field);
        let one = Scalar::one(field);
        for i in 0..n {
            m.data[i * n + i] = one.clone();
        }
        m
    }

    pub fn from_diagonal(entries: Vec<Scalar>) -> Self {
        let n = entries.len();
        assert!(n > 0, "empty diagonal");
        let zero = entries[0].zero_like();
        let mut data = vec![zero; n * n];
        for (i, e) in entries.into_iter().enumerate() {
            data[i * n + i] = e;
        }
        Matrix { rows: n, cols: n, data }
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self, MatrixError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if r == 0 || c == 0 || rows.iter().any(|row| row.len() != c) {
            return Err(MatrixError::DimensionMismatch("ragged or empty rows".into()));
        }
        let data: Vec<Scalar> = rows.into_iter().flatten().collect();
        if data.iter().any(|x| !x.same_field(&data[0])) {
            return Err(MatrixError::Field(FieldError::FieldMismatch(
                data[0].descriptor().to_string(),
                "mixed entries".into(),
            )));
        }
        Ok(Matrix { rows: r, cols: c, data })
    }

    pub fn from_int_rows(field: &FieldDescriptor, rows: &[Vec<i64>]) -> Result<Self, MatrixError> {
        Self::from_rows(
            rows.iter().map(|r| r.iter().map(|&v| Scalar::from_int(field, v)).collect()).collect(),
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

    pub fn field(&self) -> FieldDescriptor {
        self.data[0].descriptor()
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn try_mul(&self, other: &Matrix) -> Result<Matrix, MatrixError> {
        if self.cols != other.rows {
            return Err(MatrixError::DimensionMismatch(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        if !self.data[0].same_field(&other.data[0]) {
            return Err(FieldError::FieldMismatch(self.field().to_string(), other.field().to_string()).into());
        }
        let (n, c) = (self.cols, other.cols);
        let mut out = vec![self.data[0].zero_like(); self.rows * c];
        for i in 0..self.rows {
            let acc = &mut out[i * c..(i + 1) * c];
            for k in 0..n {
                let a = &self.data[i * n + k];
                if a.is_zero() {
                    continue;
                }
                let row = &other.data[k * c..(k + 1) * c];
                let unit = a.is_one();
                for (slot, b) in acc.iter_mut().zip(row) {
                    if b.is_zero() {
                        continue;
                    }
                    *slot = if unit { &*slot + b } else { &*slot + &(a * b) };
                }
            }
        }
        Ok(Matrix { rows: self.rows, cols: c, data: out })
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = v[0].zero_like();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Matrix { data, ..*self }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        Matrix { data, ..*self }
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        Matrix { data: self.data.iter().map(|a| a * c).collect(), ..*self }
    }

    /// Apply `f` to every entry.
    pub fn map<F>(&self, f: F) -> Result<Matrix, FieldError>
    where
        F: Fn(&Scalar) -> Result<Scalar, FieldError>,
    {
        let data = self.data.iter().map(f).collect::<Result<Vec<_>, _>>()?;
        Ok(Matrix { data, ..*self })
    }

    pub fn transpose(&self) -> Matrix {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j).clone());
            }
        }
        Matrix { rows: self.cols, cols: self.rows, data }
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let x = self.get(i, j);
                    if i == j {
                        x.is_one()
                    } else {
                        x.is_zero()
                    }
                })
            })
    }

    pub fn is_diagonal(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.get(i, j).is_zero()))
    }

    pub fn diagonal(&self) -> Vec<Scalar> {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i).clone()).collect()
    }

    pub fn trace(&self) -> Scalar {
        self.diagonal().iter().fold(self.data[0].zero_like(), |acc, x| &acc + x)
    }

    /// Gauss–Jordan inverse.
    pub fn inverse(&self) -> Result<Matrix, MatrixError> {
        if !self.is_square() {
            return Err(MatrixError::DimensionMismatch("inverse of a non-square matrix".into()));
        }
        if self.is_diagonal() {
            let inv = self.diagonal().iter().map(Scalar::try_inv).collect::<Result<Vec<_>, _>>();
            return inv.map(Matrix::from_diagonal).map_err(|_| MatrixError::Singular);
        }
        let n = self.rows;
        let mut a = self.to_rows();
        let mut inv = Matrix::identity(n, &self.field()).to_rows();
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a[r][col].is_zero()).ok_or(MatrixError::Singular)?;
            a.swap(col, pivot);
            inv.swap(col, pivot);
            let p = a[col][col].try_inv()?;
            if !p.is_one() {
                for x in a[col].iter_mut().chain(inv[col].iter_mut()) {
                    if !x.is_zero() {
                        *x = &*x * &p;
                    }
                }
            }
            for r in 0..n {
                if r == col || a[r][col].is_zero() {
                    continue;
                }
                let factor = a[r][col].clone();
                for j in 0..n {
                    if !a[col][j].is_zero() {
                        let d = &factor * &a[col][j];
                        a[r][j] = &a[r][j] - &d;
                    }
                    if !inv[col][j].is_zero() {
                        let d = &factor * &inv[col][j];
                        inv[r][j] = &inv[r][j] - &d;
                    }
                }
            }
        }
        Matrix::from_rows(inv)
    }

    /// Determinant by Bareiss fraction-free elimination.
    pub fn det(&self) -> Scalar {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        let mut a = self.to_rows();
        let one = self.data[0].one_like();
        let mut sign_negative = false;
        let mut prev = one.clone();
        for k in 0..n {
            let Some(pivot) = (k..n).find(|&r| !a[r][k].is_zero()) else {
                return self.data[0].zero_like();
            };
            if pivot != k {
                a.swap(k, pivot);
                sign_negative = !sign_negative;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                    a[i][j] = num.try_div(&prev).expect("Bareiss division is exact");
                }
                a[i][k] = self.data[0].zero_like();
            }
            prev = a[k][k].clone();
        }
        let d = a[n - 1][n - 1].clone();
        if sign_negative {
            -d
        } else {
            d
        }
    }

    /// Characteristic polynomial `det(xI - A)`, via reduction to upper
    /// Hessenberg form by similarity transforms.
    pub fn charpoly(&self) -> Polynomial {
        assert!(self.is_square(), "characteristic polynomial of a non-square matrix");
        let n = self.rows;
        let field = self.field();
        if self.is_diagonal() {
            return self.diagonal().iter().fold(Polynomial::constant(Scalar::one(&field)), |acc, d| {
                acc.mul(&Polynomial::linear_root(d, &field))
            });
        }
        let mut h = self.to_rows();
        for m in 1..n.saturating_sub(1) {
            let Some(i) = (m..n).find(|&i| !h[i][m - 1].is_zero()) else {
                continue;
            };
            if i != m {
                h.swap(i, m);
                for row in h.iter_mut() {
                    row.swap(i, m);
                }
            }
            let pivot_inv = h[m][m - 1].try_inv().expect("nonzero pivot");
            for i in m + 1..n {
                if h[i][m - 1].is_zero() {
                    continue;
                }
                let u = &h[i][m - 1] * &pivot_inv;
                let (upper, lower) = h.split_at_mut(i);
                for (hij, hmj) in lower[0].iter_mut().zip(&upper[m]) {
                    if !hmj.is_zero() {
                        let d = &u * hmj;
                        *hij = &*hij - &d;
                    }
                }
                for row in h.iter_mut() {
                    if !row[i].is_zero() {
                        let d = &u * &row[i];
                        row[m] = &row[m] + &d;
                    }
                }
            }
        }
        let x = Polynomial::monomial(Scalar::one(&field), 1, &field);
        let mut p: Vec<Polynomial> = vec![Polynomial::constant(Scalar::one(&field))];
        for m in 1..=n {
            let mut pm = x.sub(&Polynomial::constant(h[m - 1][m - 1].clone())).mul(&p[m - 1]);
            let mut t = Scalar::one(&field);
            for i in 1..m {
                t = &t * &h[m - i][m - i - 1];
                if t.is_zero() {
                    break;
                }
                let c = &t * &h[m - i - 1][m - 1];
                if !c.is_zero() {
                    pm = pm.sub(&p[m - i - 1].scale(&c));
                }
            }
            p.push(pm);
        }
        p.pop().expect("n >= 0")
    }

    pub fn pow(&self, k: u64) -> Matrix {
        let mut acc = Matrix::identity(self.rows, &self.field());
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Entries as printable strings, row by row.
    pub fn to_strings(&self) -> Vec<Vec<String>> {
        (0..self.rows).map(|i| self.row(i).iter().map(Scalar::to_string).collect()).collect()
    }

    pub fn from_strings(field: &FieldDescriptor, rows: &[Vec<String>]) -> Result<Matrix, MatrixError> {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|s| Scalar::parse(field, s)).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        Matrix::from_rows(rows)
    }
}

impl Mul for &Matrix {
    type Output = Matrix;
    /// Panics on dimension or field mismatch.
    fn mul(self, rhs: &Matrix) -> Matrix {
        self.try_mul(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for row in self.to_strings() {
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldDescriptor {
        FieldDescriptor::Rationals
    }

    fn m(rows: &[&[i64]]) -> Matrix {
        Matrix::from_int_rows(&q(), &rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    fn poly(c: &[i64]) -> Polynomial {
        Polynomial::from_coeffs(c.iter().map(|&n| Scalar::from_int(&q(), n)).collect())
    }

    #[test]
    fn inverse_and_det() {
        let a = m(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        let inv = a.inverse().unwrap();
        assert!((&a * &inv).is_identity());
        assert_eq!(a.det(), Scalar::from_int(&q(), 18));
        assert_eq!(m(&[&[1, 2], &[2, 4]]).inverse(), Err(MatrixError::Singular));
        assert_eq!(m(&[&[0, 1], &[1, 0]]).det(), Scalar::from_int(&q(), -1));
    }

    #[test]
    fn charpoly_small() {
        // [[0,1],[-2,-3]] has x^2 + 3x + 2
        assert_eq!(m(&[&[0, 1], &[-2, -3]]).charpoly(), poly(&[2, 3, 1]));
        // identity 3x3 -> (x-1)^3
        assert_eq!(Matrix::identity(3, &q()).charpoly(), poly(&[-1, 3, -3, 1]));
        // a matrix that needs a row swap during the Hessenberg reduction
        let a = m(&[&[1, 2, 3], &[0, 4, 5], &[6, 0, 7]]);
        // det(xI - A) = x^3 - 12x^2 + 21x - 16
        assert_eq!(a.charpoly(), poly(&[-16, 21, -12, 1]));
    }

    #[test]
    fn dimension_errors() {
        let a = m(&[&[1, 2]]);
        assert!(matches!(a.try_mul(&a), Err(MatrixError::DimensionMismatch(_))));
        assert!(matches!(a.inverse(), Err(MatrixError::DimensionMismatch(_))));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn small_matrix(n: usize) -> impl Strategy<Value = Matrix> {
            prop::collection::vec(-4i64..=4, n * n).prop_map(move |v| {
                let rows: Vec<Vec<i64>> = v.chunks(n).map(<[i64]>::to_vec).collect();
                Matrix::from_int_rows(&FieldDescriptor::Rationals, &rows).unwrap()
            })
        }

        proptest! {
            #[test]
            fn charpoly_matches_det(a in small_matrix(4), c in -5i64..=5) {
                let f = FieldDescriptor::Rationals;
                let c = Scalar::from_int(&f, c);
                let shifted = Matrix::identity(4, &f).scale(&c).sub(&a);
                prop_assert_eq!(a.charpoly().eval(&c), shifted.det());
            }

            #[test]
            fn inverse_is_two_sided(a in small_matrix(3)) {
                if let Ok(inv) = a.inverse() {
                    prop_assert!((&a * &inv).is_identity());
                    prop_assert!((&inv * &a).is_identity());
                } else {
                    prop_assert!(a.det().is_zero());
                }
            }
        }
    }
}
