//! Gaussian elimination over the active field.

use super::{ExactError, Field, Matrix, Scalar, Vector};

/// Reduced row echelon form in place; returns the pivot columns.
fn rref(rows: &mut [Vector], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].inv().expect("pivot is nonzero");
        if !inv.is_one() {
            for x in rows[r].iter_mut() {
                if !x.is_zero() {
                    *x = &*x * &inv;
                }
            }
        }
        let support: Vec<usize> = (c..ncols).filter(|&j| !rows[r][j].is_zero()).collect();
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            for &j in &support {
                let t = &factor * &pivot_row[j];
                row[j] -= &t;
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

fn rows_of(m: &Matrix) -> Vec<Vector> {
    (0..m.rows())
        .map(|i| m.row(i).to_vec())
        .filter(|row| row.iter().any(|x| !x.is_zero()))
        .collect()
}

/// Exact rank.
pub fn rank(m: &Matrix) -> usize {
    // Eliminate along the shorter side.
    if m.rows() > m.cols() {
        let t = m.transpose();
        let mut rows = rows_of(&t);
        return rref(&mut rows, t.cols()).len();
    }
    let mut rows = rows_of(m);
    rref(&mut rows, m.cols()).len()
}

/// Basis of the null space; empty iff `m` is injective.
pub fn kernel_basis(m: &Matrix) -> Vec<Vector> {
    let field = m.field();
    let n = m.cols();
    let mut rows = rows_of(m);
    let pivots = rref(&mut rows, n);
    let mut is_pivot = vec![false; n];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let mut basis = Vec::new();
    for free in (0..n).filter(|&j| !is_pivot[j]) {
        let mut v = vec![field.zero(); n];
        v[free] = field.one();
        for (i, &p) in pivots.iter().enumerate() {
            v[p] = -&rows[i][free];
        }
        basis.push(v);
    }
    basis
}

/// One solution of `m x = b`, or `None` when the system is inconsistent.
pub fn solve(m: &Matrix, b: &[Scalar]) -> Result<Option<Vector>, ExactError> {
    if b.len() != m.rows() {
        return Err(ExactError::Dimension {
            context: "right-hand side",
            expected: m.rows(),
            found: b.len(),
        });
    }
    let field: Field = m.field();
    let n = m.cols();
    let mut rows: Vec<Vector> = (0..m.rows())
        .map(|i| {
            let mut row = m.row(i).to_vec();
            row.push(b[i].clone());
            row
        })
        .filter(|row| row.iter().any(|x| !x.is_zero()))
        .collect();
    let pivots = rref(&mut rows, n + 1);
    if pivots.last() == Some(&n) {
        return Ok(None);
    }
    let mut x = vec![field.zero(); n];
    for (i, &p) in pivots.iter().enumerate() {
        x[p] = rows[i][n].clone();
    }
    Ok(Some(x))
}

/// Checked matrix product `a · b`.
pub fn compose_linear(a: &Matrix, b: &Matrix) -> Result<Matrix, ExactError> {
    if a.cols() != b.rows() {
        return Err(ExactError::Dimension {
            context: "compose_linear",
            expected: a.cols(),
            found: b.rows(),
        });
    }
    if a.field() != b.field() {
        return Err(ExactError::FieldMismatch {
            expected: a.field(),
            found: b.field(),
        });
    }
    Ok(a.mul(b))
}
