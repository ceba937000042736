use super::{axpy, zero_vector, ExactError, Field, Matrix, Scalar, Vector};

/// Dense k-linear map `(F^n)^k -> F^m`, stored with the output index last so
/// that the value on a basis tuple is a contiguous slice.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Tensor {
    arity: usize,
    in_dim: usize,
    out_dim: usize,
    field: Field,
    data: Vec<Scalar>,
}

/// Lexicographic enumeration of `{0..dim}^arity`, first slot slowest.
#[derive(Clone, Debug)]
pub struct Tuples {
    dim: usize,
    current: Option<Vec<usize>>,
}

impl Tuples {
    pub fn new(arity: usize, dim: usize) -> Tuples {
        let current = if dim == 0 && arity > 0 {
            None
        } else {
            Some(vec![0; arity])
        };
        Tuples { dim, current }
    }
}

impl Iterator for Tuples {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.current.clone()?;
        let cur = self.current.as_mut().expect("checked above");
        let mut k = cur.len();
        loop {
            if k == 0 {
                self.current = None;
                break;
            }
            k -= 1;
            cur[k] += 1;
            if cur[k] < self.dim {
                break;
            }
            cur[k] = 0;
        }
        Some(out)
    }
}

impl Tensor {
    pub fn zeros(field: Field, arity: usize, in_dim: usize, out_dim: usize) -> Tensor {
        Tensor {
            arity,
            in_dim,
            out_dim,
            field,
            data: vec![field.zero(); in_dim.pow(arity as u32) * out_dim],
        }
    }

    /// Builds a tensor from its values on basis tuples.
    pub fn from_fn(
        field: Field,
        arity: usize,
        in_dim: usize,
        out_dim: usize,
        mut f: impl FnMut(&[usize]) -> Vector,
    ) -> Tensor {
        let mut data = Vec::with_capacity(in_dim.pow(arity as u32) * out_dim);
        for idx in Tuples::new(arity, in_dim) {
            let v = f(&idx);
            assert_eq!(v.len(), out_dim, "tensor value has wrong length");
            data.extend(v);
        }
        Tensor {
            arity,
            in_dim,
            out_dim,
            field,
            data,
        }
    }

    /// Tensor whose flattened entries are `coords` (same layout as storage).
    pub fn from_coords(
        field: Field,
        arity: usize,
        in_dim: usize,
        out_dim: usize,
        coords: Vector,
    ) -> Tensor {
        assert_eq!(coords.len(), in_dim.pow(arity as u32) * out_dim);
        Tensor {
            arity,
            in_dim,
            out_dim,
            field,
            data: coords,
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn in_dim(&self) -> usize {
        self.in_dim
    }

    pub fn out_dim(&self) -> usize {
        self.out_dim
    }

    pub fn field(&self) -> Field {
        self.field
    }

    /// Flattened entries, `(i1, …, ik, out)` row-major.
    pub fn coords(&self) -> &[Scalar] {
        &self.data
    }

    fn offset(&self, idx: &[usize]) -> usize {
        debug_assert_eq!(idx.len(), self.arity);
        idx.iter().fold(0, |acc, &i| {
            debug_assert!(i < self.in_dim);
            acc * self.in_dim + i
        }) * self.out_dim
    }

    /// Value on a basis tuple.
    pub fn at(&self, idx: &[usize]) -> &[Scalar] {
        let o = self.offset(idx);
        &self.data[o..o + self.out_dim]
    }

    pub fn entry(&self, idx: &[usize], out: usize) -> &Scalar {
        &self.data[self.offset(idx) + out]
    }

    pub fn set(&mut self, idx: &[usize], out: usize, v: Scalar) {
        assert_eq!(v.field(), self.field, "tensor entry from another field");
        let o = self.offset(idx);
        self.data[o + out] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    /// Nonzero entries as `(index tuple, output index, value)` in storage order.
    pub fn nonzero_entries(&self) -> Vec<(Vec<usize>, usize, Scalar)> {
        let mut out = Vec::new();
        for (t, idx) in Tuples::new(self.arity, self.in_dim).enumerate() {
            for m in 0..self.out_dim {
                let v = &self.data[t * self.out_dim + m];
                if !v.is_zero() {
                    out.push((idx.clone(), m, v.clone()));
                }
            }
        }
        out
    }

    /// Multilinear evaluation with per-slot length checks.
    pub fn eval(&self, args: &[&[Scalar]]) -> Result<Vector, ExactError> {
        if args.len() != self.arity {
            return Err(ExactError::Dimension {
                context: "tensor arity",
                expected: self.arity,
                found: args.len(),
            });
        }
        for (slot, a) in args.iter().enumerate() {
            if a.len() != self.in_dim {
                return Err(ExactError::Slot {
                    slot,
                    expected: self.in_dim,
                    found: a.len(),
                });
            }
            if let Some(s) = a.iter().find(|s| s.field() != self.field) {
                return Err(ExactError::FieldMismatch {
                    expected: self.field,
                    found: s.field(),
                });
            }
        }
        Ok(self.apply(args))
    }

    /// Multilinear evaluation; skips zero coordinates so that sparse
    /// arguments cost only their support.
    pub fn apply(&self, args: &[&[Scalar]]) -> Vector {
        let mut out = zero_vector(self.field, self.out_dim);
        self.apply_into(&mut out, None, args);
        out
    }

    /// `out += c · t(args)` (`c = None` means 1).
    pub fn apply_into(&self, out: &mut [Scalar], c: Option<&Scalar>, args: &[&[Scalar]]) {
        debug_assert_eq!(args.len(), self.arity);
        let supports: Vec<Vec<usize>> = args
            .iter()
            .map(|a| (0..a.len()).filter(|&i| !a[i].is_zero()).collect())
            .collect();
        if supports.iter().any(Vec::is_empty) && self.arity > 0 {
            return;
        }
        let k = self.arity;
        let mut pos = vec![0usize; k];
        loop {
            let mut coeff = c.cloned().unwrap_or_else(|| self.field.one());
            let mut off = 0usize;
            for s in 0..k {
                let i = supports[s][pos[s]];
                off = off * self.in_dim + i;
                let a = &args[s][i];
                if !a.is_one() {
                    coeff = &coeff * a;
                }
            }
            let o = off * self.out_dim;
            axpy(out, &coeff, &self.data[o..o + self.out_dim]);
            // advance the odometer
            let mut s = k;
            loop {
                if s == 0 {
                    return;
                }
                s -= 1;
                pos[s] += 1;
                if pos[s] < supports[s].len() {
                    break;
                }
                pos[s] = 0;
            }
        }
    }

    /// `m ∘ t`: post-compose the output with a linear map.
    pub fn map_output(&self, m: &Matrix) -> Tensor {
        assert_eq!(m.cols(), self.out_dim, "output map has wrong width");
        Tensor::from_fn(self.field, self.arity, self.in_dim, m.rows(), |idx| {
            m.apply(self.at(idx))
        })
    }

    /// `t(m ·, …, m ·)`: pre-compose every slot with a linear map.
    pub fn map_inputs(&self, m: &Matrix) -> Tensor {
        assert_eq!(m.rows(), self.in_dim);
        let cols: Vec<Vector> = (0..m.cols()).map(|j| m.column(j)).collect();
        Tensor::from_fn(self.field, self.arity, m.cols(), self.out_dim, |idx| {
            let args: Vec<&[Scalar]> = idx.iter().map(|&i| cols[i].as_slice()).collect();
            self.apply(&args)
        })
    }

    pub fn scale(&self, c: &Scalar) -> Tensor {
        Tensor {
            data: self.data.iter().map(|x| x * c).collect(),
            ..self.clone()
        }
    }

    pub fn add(&self, other: &Tensor) -> Tensor {
        self.assert_same_shape(other);
        Tensor {
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + b)
                .collect(),
            ..self.clone()
        }
    }

    pub fn sub(&self, other: &Tensor) -> Tensor {
        self.assert_same_shape(other);
        Tensor {
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a - b)
                .collect(),
            ..self.clone()
        }
    }

    fn assert_same_shape(&self, other: &Tensor) {
        assert_eq!(
            (self.arity, self.in_dim, self.out_dim),
            (other.arity, other.in_dim, other.out_dim),
            "tensor shape mismatch"
        );
    }

    pub fn check_shape(
        &self,
        context: &'static str,
        arity: usize,
        in_dim: usize,
        out_dim: usize,
    ) -> Result<(), ExactError> {
        for (expected, found) in [
            (arity, self.arity),
            (in_dim, self.in_dim),
            (out_dim, self.out_dim),
        ] {
            if expected != found {
                return Err(ExactError::Dimension {
                    context,
                    expected,
                    found,
                });
            }
        }
        Ok(())
    }
}
