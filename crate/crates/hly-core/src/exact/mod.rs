//! Exact arithmetic kernel: scalars, matrices, multilinear tensors and
//! Gaussian elimination.

mod linalg;
mod matrix;
mod scalar;
mod tensor;

pub use linalg::{compose_linear, kernel_basis, rank, solve};
pub use matrix::Matrix;
pub use scalar::{Field, Scalar};
pub use tensor::{Tensor, Tuples};

use thiserror::Error;

/// Coordinate vector over the active field.
pub type Vector = Vec<Scalar>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("{0} is not a supported prime modulus")]
    NotPrime(u32),
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("dimension mismatch in {context}: expected {expected}, found {found}")]
    Dimension {
        context: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("argument slot {slot}: expected length {expected}, found {found}")]
    Slot {
        slot: usize,
        expected: usize,
        found: usize,
    },
    #[error("field mismatch: expected {expected}, found {found}")]
    FieldMismatch { expected: Field, found: Field },
}

pub fn zero_vector(field: Field, n: usize) -> Vector {
    vec![field.zero(); n]
}

pub fn unit_vector(field: Field, n: usize, i: usize) -> Vector {
    let mut v = zero_vector(field, n);
    v[i] = field.one();
    v
}

/// `acc += c * x`.
pub fn axpy(acc: &mut [Scalar], c: &Scalar, x: &[Scalar]) {
    if c.is_zero() {
        return;
    }
    let unit = c.is_one();
    for (a, xi) in acc.iter_mut().zip(x) {
        if xi.is_zero() {
            continue;
        }
        if unit {
            *a += xi;
        } else {
            *a += &(c * xi);
        }
    }
}

pub fn add_vec(a: &[Scalar], b: &[Scalar]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub_vec(a: &[Scalar], b: &[Scalar]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale_vec(c: &Scalar, a: &[Scalar]) -> Vector {
    a.iter().map(|x| c * x).collect()
}

pub fn is_zero_vec(a: &[Scalar]) -> bool {
    a.iter().all(Scalar::is_zero)
}
