use std::fmt;

use super::{axpy, linalg, zero_vector, ExactError, Field, Scalar, Vector};

/// Dense row-major matrix; column `j` is the image of the `j`-th basis vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    field: Field,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Matrix {
        Matrix {
            rows,
            cols,
            field,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = field.one();
        }
        m
    }

    pub fn diag(field: Field, entries: &[i64]) -> Matrix {
        let n = entries.len();
        let mut m = Matrix::zeros(field, n, n);
        for (i, &e) in entries.iter().enumerate() {
            m.data[i * n + i] = field.int(e);
        }
        m
    }

    pub fn from_fn(
        field: Field,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Scalar,
    ) -> Matrix {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix {
            rows,
            cols,
            field,
            data,
        }
    }

    /// Integer matrix given by rows.
    pub fn from_ints(field: Field, rows: &[&[i64]]) -> Matrix {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        Matrix::from_fn(field, r, c, |i, j| field.int(rows[i][j]))
    }

    pub fn from_columns(field: Field, rows: usize, columns: &[Vector]) -> Matrix {
        Matrix::from_fn(field, rows, columns.len(), |i, j| columns[j][i].clone())
    }

    pub fn from_row_vectors(field: Field, cols: usize, rows: &[Vector]) -> Matrix {
        Matrix::from_fn(field, rows.len(), cols, |i, j| rows[i][j].clone())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        assert_eq!(v.field(), self.field, "matrix entry from another field");
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vector {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let e = self.get(i, j);
                    if i == j {
                        e.is_one()
                    } else {
                        e.is_zero()
                    }
                })
            })
    }

    pub fn check_shape(
        &self,
        context: &'static str,
        rows: usize,
        cols: usize,
    ) -> Result<(), ExactError> {
        if self.rows != rows {
            return Err(ExactError::Dimension {
                context,
                expected: rows,
                found: self.rows,
            });
        }
        if self.cols != cols {
            return Err(ExactError::Dimension {
                context,
                expected: cols,
                found: self.cols,
            });
        }
        Ok(())
    }

    /// Matrix-vector product. Panics on a length mismatch.
    pub fn apply(&self, v: &[Scalar]) -> Vector {
        assert_eq!(
            v.len(),
            self.cols,
            "matrix applied to a vector of wrong length"
        );
        let mut out = zero_vector(self.field, self.rows);
        for (j, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (i, o) in out.iter_mut().enumerate() {
                let e = self.get(i, j);
                if !e.is_zero() {
                    *o += &(e * c);
                }
            }
        }
        out
    }

    /// Product `self · other`. Panics on a shape mismatch; see
    /// [`compose_linear`](super::compose_linear) for the checked form.
    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let mut out = Matrix::zeros(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            let row = &mut out.data[i * other.cols..(i + 1) * other.cols];
            for k in 0..self.cols {
                axpy(row, self.get(i, k), other.row(k));
            }
        }
        out
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + b)
                .collect(),
            ..self.clone()
        }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a - b)
                .collect(),
            ..self.clone()
        }
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        Matrix {
            data: self.data.iter().map(|a| a * c).collect(),
            ..self.clone()
        }
    }

    pub fn neg(&self) -> Matrix {
        Matrix {
            data: self.data.iter().map(|a| -a).collect(),
            ..self.clone()
        }
    }

    /// `self += c · other`.
    pub fn add_scaled(&mut self, c: &Scalar, other: &Matrix) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        axpy(&mut self.data, c, &other.data);
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.field, self.cols, self.rows, |i, j| {
            self.get(j, i).clone()
        })
    }

    pub fn pow(&self, k: u32) -> Matrix {
        assert!(self.is_square(), "power of a non-square matrix");
        let mut acc = Matrix::identity(self.field, self.rows);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn rank(&self) -> usize {
        linalg::rank(self)
    }

    pub fn kernel_basis(&self) -> Vec<Vector> {
        linalg::kernel_basis(self)
    }

    /// Coordinates of nonzero entries, row-major.
    pub fn nonzero_entries(&self) -> impl Iterator<Item = (usize, usize, &Scalar)> {
        let cols = self.cols;
        self.data
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(move |(k, v)| (k / cols, k % cols, v))
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|s| s.to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}
