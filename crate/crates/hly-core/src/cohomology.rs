//! Yamaguti-type cochains, coboundaries, cocycle conditions and exact
//! cohomology dimensions, plus the complex attached to a twisted O-operator.
//!
//! A cochain of arity `m` is stored by its values on canonical tuples: each
//! argument pair `(x₂ᵢ₋₁, x₂ᵢ)` is a basis pair `a < b`, and an odd arity
//! keeps one free trailing slot. This is the same data as a full multilinear
//! tensor that alternates in each pair, without the redundant coordinates.

use rayon::prelude::*;

use crate::config::{Config, Reading};
use crate::error::{require, Error, Result};
use crate::exact::{
    add_vec, axpy, is_zero_vec, kernel_basis, sub_vec, unit_vector, zero_vector, Field, Matrix,
    Scalar, Tensor, Tuples, Vector,
};
use crate::operators::{v_structure_unchecked, TwistedOperator};
use crate::report::IdentityReport;
use crate::representations::{
    induced_rep_unchecked, theta_from_rho_unchecked, verify_hly_rep, verify_hom_lie_rep, HlyRep,
    HomLieRep, RepEval,
};
use crate::structures::{check_skew, induced_hly_unchecked, same_field, HlyAlgebra, HomLieAlgebra};

/// Index layout of one pairwise-skew cochain space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CochainShape {
    arity: usize,
    dim_a: usize,
    dim_v: usize,
    field: Field,
    pairs: Vec<(usize, usize)>,
    pair_index: Vec<Option<usize>>,
}

impl CochainShape {
    pub fn new(field: Field, arity: usize, dim_a: usize, dim_v: usize) -> Self {
        let mut pairs = Vec::new();
        let mut pair_index = vec![None; dim_a * dim_a];
        for a in 0..dim_a {
            for b in a + 1..dim_a {
                pair_index[a * dim_a + b] = Some(pairs.len());
                pairs.push((a, b));
            }
        }
        CochainShape {
            arity,
            dim_a,
            dim_v,
            field,
            pairs,
            pair_index,
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn dim_v(&self) -> usize {
        self.dim_v
    }

    fn radices(&self) -> Vec<usize> {
        let mut r = vec![self.pairs.len(); self.arity / 2];
        if self.arity % 2 == 1 {
            r.push(self.dim_a);
        }
        r
    }

    /// Number of canonical argument tuples.
    pub fn tuple_count(&self) -> usize {
        self.radices().iter().product()
    }

    /// Number of coordinates: tuples × dim V.
    pub fn len(&self) -> usize {
        self.tuple_count() * self.dim_v
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// The basis indices `x₁ … x_m` of canonical tuple `t`.
    pub fn tuple(&self, mut t: usize) -> Vec<usize> {
        let radices = self.radices();
        let mut digits = vec![0; radices.len()];
        for k in (0..radices.len()).rev() {
            digits[k] = t % radices[k];
            t /= radices[k];
        }
        let mut out = Vec::with_capacity(self.arity);
        for (k, d) in digits.iter().enumerate() {
            if k < self.arity / 2 {
                let (a, b) = self.pairs[*d];
                out.push(a);
                out.push(b);
            } else {
                out.push(*d);
            }
        }
        out
    }

    /// Canonical tuple index and sign of a basis tuple, `None` if some pair repeats.
    pub fn locate(&self, xs: &[usize]) -> Option<(usize, bool)> {
        let mut idx = 0;
        let mut negative = false;
        for k in 0..self.arity / 2 {
            let (a, b) = (xs[2 * k], xs[2 * k + 1]);
            if a == b {
                return None;
            }
            let (lo, hi) = if a < b { (a, b) } else { (b, a) };
            negative ^= a > b;
            idx = idx * self.pairs.len() + self.pair_index[lo * self.dim_a + hi].unwrap();
        }
        if self.arity % 2 == 1 {
            idx = idx * self.dim_a + xs[self.arity - 1];
        }
        Some((idx, negative))
    }

    /// Expansion of arbitrary arguments into canonical tuples with coefficients.
    fn expand(&self, args: &[&[Scalar]]) -> Vec<(usize, Scalar)> {
        let mut factors: Vec<(usize, Vec<(usize, Scalar)>)> =
            Vec::with_capacity(self.radices().len());
        for k in 0..self.arity / 2 {
            let (u, v) = (args[2 * k], args[2 * k + 1]);
            let mut list = Vec::new();
            for (p, &(a, b)) in self.pairs.iter().enumerate() {
                let w = &(&u[a] * &v[b]) - &(&u[b] * &v[a]);
                if !w.is_zero() {
                    list.push((p, w));
                }
            }
            factors.push((self.pairs.len(), list));
        }
        if self.arity % 2 == 1 {
            let u = args[self.arity - 1];
            let list = u
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (i, c.clone()))
                .collect();
            factors.push((self.dim_a, list));
        }
        let mut acc = vec![(0usize, self.field.one())];
        for (radix, list) in factors {
            let mut next = Vec::with_capacity(acc.len() * list.len());
            for (idx, c) in &acc {
                for (d, w) in &list {
                    next.push((idx * radix + d, c * w));
                }
            }
            acc = next;
            if acc.is_empty() {
                break;
            }
        }
        acc
    }

    /// `f(args)` for a cochain given by canonical coordinates.
    pub fn eval(&self, coords: &[Scalar], args: &[&[Scalar]]) -> Vector {
        debug_assert_eq!(args.len(), self.arity);
        let dv = self.dim_v;
        let mut out = zero_vector(self.field, dv);
        for (t, c) in self.expand(args) {
            axpy(&mut out, &c, &coords[t * dv..(t + 1) * dv]);
        }
        out
    }

    /// `f` on basis arguments.
    pub fn eval_basis(&self, coords: &[Scalar], xs: &[usize]) -> Vector {
        let dv = self.dim_v;
        match self.locate(xs) {
            None => zero_vector(self.field, dv),
            Some((t, neg)) => {
                let v = coords[t * dv..(t + 1) * dv].to_vec();
                if neg {
                    v.iter().map(|s| -s).collect()
                } else {
                    v
                }
            }
        }
    }

    /// Reads the canonical coordinates of a tensor, refusing tensors that do
    /// not alternate in each argument pair.
    pub fn from_tensor(&self, t: &Tensor) -> Result<Vector> {
        t.check_shape("cochain", self.arity, self.dim_a, self.dim_v)?;
        let mut report = IdentityReport::new(1);
        let n = self.dim_a;
        for xs in Tuples::new(self.arity, n) {
            for k in 0..self.arity / 2 {
                let (a, b) = (xs[2 * k], xs[2 * k + 1]);
                if a > b {
                    continue;
                }
                let residual = if a == b {
                    t.at(&xs).to_vec()
                } else {
                    let mut ys = xs.clone();
                    ys.swap(2 * k, 2 * k + 1);
                    add_vec(t.at(&xs), t.at(&ys))
                };
                report.check("pair-skew", &xs, residual);
            }
        }
        if !report.ok() {
            return Err(Error::NotACochain("tensor without pairwise skew symmetry"));
        }
        let mut out = Vec::with_capacity(self.len());
        for c in 0..self.tuple_count() {
            out.extend_from_slice(t.at(&self.tuple(c)));
        }
        Ok(out)
    }

    /// The full multilinear tensor of a cochain.
    pub fn to_tensor(&self, coords: &[Scalar]) -> Tensor {
        Tensor::from_fn(self.field, self.arity, self.dim_a, self.dim_v, |xs| {
            self.eval_basis(coords, xs)
        })
    }

    /// Rows of `f ↦ f(α·) − β f(·)` on canonical tuples.
    fn equivariance_constraints(&self, alpha: &Matrix, beta: &Matrix) -> Matrix {
        let dv = self.dim_v;
        let cols = self.len();
        let mut rows = Vec::with_capacity(cols);
        for t in 0..self.tuple_count() {
            let xs = self.tuple(t);
            let args: Vec<Vector> = xs.iter().map(|&x| alpha.column(x)).collect();
            let refs: Vec<&[Scalar]> = args.iter().map(Vec::as_slice).collect();
            let expansion = self.expand(&refs);
            for o in 0..dv {
                let mut row = zero_vector(self.field, cols);
                for (s, c) in &expansion {
                    row[s * dv + o] += c;
                }
                for k in 0..dv {
                    row[t * dv + k] -= beta.get(o, k);
                }
                rows.push(row);
            }
        }
        Matrix::from_row_vectors(self.field, cols, &rows)
    }
}

/// `C^m(A,V)`: pairwise-skew, `f(αx₁,…,αx_m) = β f(x₁,…,x_m)`.
#[derive(Clone, Debug)]
pub struct CochainSpace {
    shape: CochainShape,
    basis: Vec<Vector>,
    alpha: Matrix,
    beta: Matrix,
}

impl CochainSpace {
    pub fn shape(&self) -> &CochainShape {
        &self.shape
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    pub fn contains(&self, coords: &[Scalar]) -> bool {
        coords.len() == self.shape.len()
            && is_zero_vec(
                &self
                    .shape
                    .equivariance_constraints(&self.alpha, &self.beta)
                    .apply(coords),
            )
    }
}

/// Basis of `C^m` for a twist `α` on `A` and `β` on `V`.
pub fn cochain_basis(
    arity: usize,
    alpha: &Matrix,
    beta: &Matrix,
    cfg: &Config,
) -> Result<CochainSpace> {
    if arity == 0 {
        return Err(Error::Invalid("cochain arity must be at least 1"));
    }
    if arity > cfg.max_cochain_arity {
        return Err(Error::CapExceeded {
            what: "cochain arity",
            limit: cfg.max_cochain_arity,
            requested: arity,
        });
    }
    same_field(alpha.field(), beta.field())?;
    let shape = CochainShape::new(alpha.field(), arity, alpha.rows(), beta.rows());
    let basis = if alpha.is_identity() && beta.is_identity() {
        (0..shape.len())
            .map(|i| unit_vector(shape.field, shape.len(), i))
            .collect()
    } else {
        kernel_basis(&shape.equivariance_constraints(alpha, beta))
    };
    Ok(CochainSpace {
        shape,
        basis,
        alpha: alpha.clone(),
        beta: beta.clone(),
    })
}

/// Arities making up one level: `[1]` at level 0, `[2n, 2n+1]` above.
pub fn level_arities(level: usize) -> Vec<usize> {
    if level == 0 {
        vec![1]
    } else {
        vec![2 * level, 2 * level + 1]
    }
}

/// `C^{2n} × C^{2n+1}` (or `C¹` at level 0) with concatenated coordinates.
#[derive(Clone, Debug)]
pub struct LevelSpace {
    level: usize,
    parts: Vec<CochainSpace>,
}

impl LevelSpace {
    pub fn level(&self) -> usize {
        self.level
    }

    pub fn parts(&self) -> &[CochainSpace] {
        &self.parts
    }

    pub fn dim(&self) -> usize {
        self.parts.iter().map(CochainSpace::dim).sum()
    }

    pub fn coords_len(&self) -> usize {
        self.parts.iter().map(|p| p.shape.len()).sum()
    }

    /// Basis vectors in concatenated coordinates.
    pub fn basis(&self) -> Vec<Vector> {
        let total = self.coords_len();
        let field = self.parts[0].shape.field;
        let mut out = Vec::with_capacity(self.dim());
        let mut offset = 0;
        for p in &self.parts {
            for b in &p.basis {
                let mut v = zero_vector(field, total);
                v[offset..offset + b.len()].clone_from_slice(b);
                out.push(v);
            }
            offset += p.shape.len();
        }
        out
    }

    pub fn contains(&self, coords: &[Scalar]) -> bool {
        if coords.len() != self.coords_len() {
            return false;
        }
        let mut offset = 0;
        self.parts.iter().all(|p| {
            let len = p.shape.len();
            let ok = p.contains(&coords[offset..offset + len]);
            offset += len;
            ok
        })
    }
}

/// `(𝓕, 𝓖)` with `𝓕 ∈ C²(A,V)` and `𝓖 ∈ C³(A,V)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CocyclePair {
    f: Tensor,
    g: Tensor,
}

impl CocyclePair {
    /// Checks membership of both tensors in their cochain spaces.
    pub fn new(h: &HlyAlgebra, rep: &HlyRep, f: Tensor, g: Tensor) -> Result<Self> {
        rep.check_against(h)?;
        let pair = CocyclePair { f, g };
        pair.check_membership(h.alpha(), rep.beta())?;
        Ok(pair)
    }

    pub fn zero(h: &HlyAlgebra, rep: &HlyRep) -> Self {
        CocyclePair {
            f: Tensor::zeros(h.field(), 2, h.dim(), rep.carrier_dim()),
            g: Tensor::zeros(h.field(), 3, h.dim(), rep.carrier_dim()),
        }
    }

    pub(crate) fn unchecked(f: Tensor, g: Tensor) -> Self {
        CocyclePair { f, g }
    }

    pub fn f(&self) -> &Tensor {
        &self.f
    }

    pub fn g(&self) -> &Tensor {
        &self.g
    }

    pub fn is_zero(&self) -> bool {
        self.f.is_zero() && self.g.is_zero()
    }

    fn check_membership(&self, alpha: &Matrix, beta: &Matrix) -> Result<()> {
        let (na, nv) = (alpha.rows(), beta.rows());
        for (t, arity, name) in [(&self.f, 2, "F"), (&self.g, 3, "G")] {
            let shape = CochainShape::new(alpha.field(), arity, na, nv);
            let coords = shape.from_tensor(t).map_err(|e| match e {
                Error::NotACochain(_) => Error::NotACochain(name),
                other => other,
            })?;
            if !is_zero_vec(&shape.equivariance_constraints(alpha, beta).apply(&coords)) {
                return Err(Error::NotACochain(name));
            }
        }
        Ok(())
    }
}

/// The cochain complex of an HLY algebra with coefficients in a representation.
#[derive(Clone, Debug)]
pub struct Complex {
    algebra: HlyAlgebra,
    rep: HlyRep,
}

/// Dimensions at one level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyDims {
    pub level: usize,
    pub dim_c: usize,
    pub dim_z: usize,
    pub dim_b: usize,
    pub dim_h: usize,
    /// Whether the image from the level below lies in the kernel out of this level.
    pub delta_squared_zero: bool,
}

/// `δ ∘ δ` on the basis of a level.
#[derive(Clone, Debug)]
pub struct DeltaSquared {
    pub start: usize,
    pub product: Matrix,
    pub zero: bool,
}

impl Complex {
    /// Requires `rep` to be a representation of `h`.
    pub fn new(h: &HlyAlgebra, rep: &HlyRep, cfg: &Config) -> Result<Self> {
        rep.check_against(h)?;
        require("not a representation", verify_hly_rep(h, rep, cfg)?)?;
        Ok(Complex::unchecked(h.clone(), rep.clone()))
    }

    pub(crate) fn unchecked(algebra: HlyAlgebra, rep: HlyRep) -> Self {
        Complex { algebra, rep }
    }

    pub fn algebra(&self) -> &HlyAlgebra {
        &self.algebra
    }

    pub fn rep(&self) -> &HlyRep {
        &self.rep
    }

    fn shape(&self, arity: usize) -> CochainShape {
        CochainShape::new(
            self.algebra.field(),
            arity,
            self.algebra.dim(),
            self.rep.carrier_dim(),
        )
    }

    pub fn space(&self, level: usize, cfg: &Config) -> Result<LevelSpace> {
        let parts = level_arities(level)
            .into_iter()
            .map(|m| cochain_basis(m, self.algebra.alpha(), self.rep.beta(), cfg))
            .collect::<Result<Vec<_>>>()?;
        Ok(LevelSpace { level, parts })
    }

    fn coords_len(&self, level: usize) -> usize {
        level_arities(level)
            .iter()
            .map(|&m| self.shape(m).len())
            .sum()
    }

    /// `δ` from `level` to `level + 1`, evaluated on concatenated coordinates.
    pub fn coboundary(&self, level: usize, coords: &[Scalar], cfg: &Config) -> Result<Vector> {
        let top = 2 * level + 3;
        if top > cfg.max_cochain_arity {
            return Err(Error::CapExceeded {
                what: "cochain arity",
                limit: cfg.max_cochain_arity,
                requested: top,
            });
        }
        let expected = self.coords_len(level);
        if coords.len() != expected {
            return Err(crate::exact::ExactError::Dimension {
                context: "cochain coordinates",
                expected,
                found: coords.len(),
            }
            .into());
        }
        let ev = RepEval::new(&self.algebra, &self.rep, (2 * level).max(2));
        Ok(if level == 0 {
            self.delta_low(&ev, coords)
        } else {
            self.delta_high(&ev, level, coords)
        })
    }

    fn delta_low(&self, ev: &RepEval, f: &[Scalar]) -> Vector {
        let (s1, s2, s3) = (self.shape(1), self.shape(2), self.shape(3));
        let h = &self.algebra;
        let fe = |x: &[Scalar]| s1.eval(f, &[x]);
        let mut out = Vec::with_capacity(s2.len() + s3.len());
        for t in 0..s2.tuple_count() {
            let xs = s2.tuple(t);
            let (x, y) = (h.e(xs[0]), h.e(xs[1]));
            let mut v = ev.rho(&x).apply(&fe(&y));
            v = sub_vec(&v, &ev.rho(&y).apply(&fe(&x)));
            v = sub_vec(&v, &fe(&h.br(&x, &y)));
            out.extend(v);
        }
        for t in 0..s3.tuple_count() {
            let xs = s3.tuple(t);
            let (x, y, z) = (h.e(xs[0]), h.e(xs[1]), h.e(xs[2]));
            let mut v = ev.d(&x, &y).apply(&fe(&z));
            v = add_vec(&v, &ev.theta(&y, &z).apply(&fe(&x)));
            v = sub_vec(&v, &ev.theta(&x, &z).apply(&fe(&y)));
            v = sub_vec(&v, &fe(&h.tri(&x, &y, &z)));
            out.extend(v);
        }
        out
    }

    fn delta_high(&self, ev: &RepEval, n: usize, coords: &[Scalar]) -> Vector {
        let h = &self.algebra;
        let f_shape = self.shape(2 * n);
        let g_shape = self.shape(2 * n + 1);
        let (f, g) = coords.split_at(f_shape.len());
        let out_i = self.shape(2 * n + 2);
        let out_ii = self.shape(2 * n + 3);
        let field = h.field();
        let sign = |e: usize| {
            if e.is_multiple_of(2) {
                field.one()
            } else {
                -field.one()
            }
        };
        let eval = |shape: &CochainShape, c: &[Scalar], args: &[Vector]| {
            let refs: Vec<&[Scalar]> = args.iter().map(Vec::as_slice).collect();
            shape.eval(c, &refs)
        };
        // Arguments with slots 2k−1, 2k removed, slot j replaced by ⟦x₂ₖ₋₁,x₂ₖ,xⱼ⟧
        // and every other slot hit by α².
        let bracket_args = |xs: &[usize], k: usize, j: usize| -> Vec<Vector> {
            let mut args = Vec::with_capacity(xs.len() - 2);
            for (pos, &x) in xs.iter().enumerate() {
                if pos == 2 * k || pos == 2 * k + 1 {
                    continue;
                }
                if pos == j {
                    args.push(h.tri(&h.e(xs[2 * k]), &h.e(xs[2 * k + 1]), &h.e(x)));
                } else {
                    args.push(ev.a(2, x));
                }
            }
            args
        };
        let removed = |xs: &[usize], k: usize| -> Vec<Vector> {
            xs.iter()
                .enumerate()
                .filter(|(pos, _)| *pos != 2 * k && *pos != 2 * k + 1)
                .map(|(_, &x)| h.e(x))
                .collect()
        };
        let mut out = Vec::with_capacity(out_i.len() + out_ii.len());
        let p = 2 * n;
        for t in 0..out_i.tuple_count() {
            let xs = out_i.tuple(t);
            let mut v = zero_vector(field, self.rep.carrier_dim());
            let mut head: Vec<Vector> = xs[..p].iter().map(|&x| h.e(x)).collect();
            head.push(h.e(xs[p + 1]));
            v = add_vec(
                &v,
                &ev.rho(&ev.a(p, xs[p])).apply(&eval(&g_shape, g, &head)),
            );
            let mut head: Vec<Vector> = xs[..=p].iter().map(|&x| h.e(x)).collect();
            v = sub_vec(
                &v,
                &ev.rho(&ev.a(p, xs[p + 1])).apply(&eval(&g_shape, g, &head)),
            );
            head = xs[..p].iter().map(|&x| ev.a(1, x)).collect();
            head.push(h.br(&h.e(xs[p]), &h.e(xs[p + 1])));
            v = sub_vec(&v, &eval(&g_shape, g, &head));
            for k in 0..n {
                let d = ev.d(&ev.a(p - 1, xs[2 * k]), &ev.a(p - 1, xs[2 * k + 1]));
                let term = d.apply(&eval(&f_shape, f, &removed(&xs, k)));
                // (−1)^{n+k+1} with k counted from 1
                axpy(&mut v, &sign(n + k), &term);
                for j in 2 * k + 2..p + 2 {
                    let term = eval(&f_shape, f, &bracket_args(&xs, k, j));
                    axpy(&mut v, &sign(n + k + 1), &term);
                }
            }
            out.extend(v);
        }
        for t in 0..out_ii.tuple_count() {
            let xs = out_ii.tuple(t);
            let mut v = zero_vector(field, self.rep.carrier_dim());
            let head: Vec<Vector> = xs[..=p].iter().map(|&x| h.e(x)).collect();
            let th = ev.theta(&ev.a(p, xs[p + 1]), &ev.a(p, xs[p + 2]));
            v = add_vec(&v, &th.apply(&eval(&g_shape, g, &head)));
            let mut head: Vec<Vector> = xs[..p].iter().map(|&x| h.e(x)).collect();
            head.push(h.e(xs[p + 1]));
            let th = ev.theta(&ev.a(p, xs[p]), &ev.a(p, xs[p + 2]));
            v = sub_vec(&v, &th.apply(&eval(&g_shape, g, &head)));
            for k in 0..=n {
                let d = ev.d(&ev.a(p, xs[2 * k]), &ev.a(p, xs[2 * k + 1]));
                let term = d.apply(&eval(&g_shape, g, &removed(&xs, k)));
                axpy(&mut v, &sign(n + k), &term);
                for j in 2 * k + 2..p + 3 {
                    let term = eval(&g_shape, g, &bracket_args(&xs, k, j));
                    axpy(&mut v, &sign(n + k + 1), &term);
                }
            }
            out.extend(v);
        }
        out
    }

    /// Matrix of `δ` out of `level`: rows are target coordinates, columns the
    /// basis of the level.
    pub fn coboundary_matrix(&self, level: usize, cfg: &Config) -> Result<Matrix> {
        let space = self.space(level, cfg)?;
        let rows = self.coords_len(level + 1);
        let cols: Vec<Vector> = space
            .basis()
            .par_iter()
            .map(|b| self.coboundary(level, b, cfg))
            .collect::<Result<_>>()?;
        Ok(Matrix::from_columns(self.algebra.field(), rows, &cols))
    }

    pub fn dims(&self, level: usize, cfg: &Config) -> Result<CohomologyDims> {
        let space = self.space(level, cfg)?;
        let basis = space.basis();
        let out = self.coboundary_matrix(level, cfg)?;
        let dim_c = space.dim();
        let kernel = kernel_basis(&out);
        let dim_z = kernel.len();
        let field = self.algebra.field();
        let len = space.coords_len();
        let z_vectors: Vec<Vector> = kernel
            .iter()
            .map(|k| {
                let mut v = zero_vector(field, len);
                for (c, b) in k.iter().zip(&basis) {
                    if !c.is_zero() {
                        axpy(&mut v, c, b);
                    }
                }
                v
            })
            .collect();
        let b_vectors: Vec<Vector> = if level == 0 {
            Vec::new()
        } else {
            let below = self.coboundary_matrix(level - 1, cfg)?;
            (0..below.cols()).map(|j| below.column(j)).collect()
        };
        let dim_b = Matrix::from_columns(field, len, &b_vectors).rank();
        let mut joint = b_vectors.clone();
        joint.extend(z_vectors);
        let dim_sum = Matrix::from_columns(field, len, &joint).rank();
        let meet = dim_b + dim_z - dim_sum;
        Ok(CohomologyDims {
            level,
            dim_c,
            dim_z,
            dim_b,
            dim_h: dim_z - meet,
            delta_squared_zero: meet == dim_b,
        })
    }

    /// `δ_{start+1} ∘ δ_start` applied to every basis cochain of `start`.
    pub fn delta_squared(&self, start: usize, cfg: &Config) -> Result<DeltaSquared> {
        let space = self.space(start, cfg)?;
        let rows = self.coords_len(start + 2);
        let cols: Vec<Vector> = space
            .basis()
            .par_iter()
            .map(|b| {
                let once = self.coboundary(start, b, cfg)?;
                self.coboundary(start + 1, &once, cfg)
            })
            .collect::<Result<_>>()?;
        let product = Matrix::from_columns(self.algebra.field(), rows, &cols);
        let zero = product.is_zero();
        Ok(DeltaSquared {
            start,
            product,
            zero,
        })
    }
}

/// `δ` out of `level` on concatenated coordinates, after checking that the
/// input lies in the level's cochain space.
pub fn coboundary(
    level: usize,
    coords: &[Scalar],
    h: &HlyAlgebra,
    rep: &HlyRep,
    cfg: &Config,
) -> Result<Vector> {
    let cx = Complex::new(h, rep, cfg)?;
    let space = cx.space(level, cfg)?;
    if !space.contains(coords) {
        return Err(Error::NotACochain("coboundary input"));
    }
    cx.coboundary(level, coords, cfg)
}

/// Coordinates of a 1-cochain `f: A → V` given as a `dim V × dim A` matrix.
pub fn one_cochain_coords(f: &Matrix) -> Vector {
    let mut out = Vec::with_capacity(f.rows() * f.cols());
    for i in 0..f.cols() {
        out.extend(f.column(i));
    }
    out
}

/// `δ_I 𝓕(x,y) = ρ(x)𝓕(y) − ρ(y)𝓕(x) − 𝓕([x,y])` and
/// `δ_II 𝓕(x,y,z) = D(x,y)𝓕(z) + θ(y,z)𝓕(x) − θ(x,z)𝓕(y) − 𝓕(⟦x,y,z⟧)`.
pub fn coboundary_deg1(
    f: &Matrix,
    h: &HlyAlgebra,
    rep: &HlyRep,
    cfg: &Config,
) -> Result<(Tensor, Tensor)> {
    rep.check_against(h)?;
    f.check_shape("1-cochain", rep.carrier_dim(), h.dim())?;
    let c1 = cochain_basis(1, h.alpha(), rep.beta(), cfg)?;
    let coords = one_cochain_coords(f);
    if !c1.contains(&coords) {
        return Err(Error::NotACochain("1-cochain"));
    }
    let ev = RepEval::new(h, rep, 1);
    let fe = |x: &[Scalar]| f.apply(x);
    let field = h.field();
    let (n, nv) = (h.dim(), rep.carrier_dim());
    let di = Tensor::from_fn(field, 2, n, nv, |t| {
        let (x, y) = (h.e(t[0]), h.e(t[1]));
        let v = sub_vec(&ev.rho(&x).apply(&fe(&y)), &ev.rho(&y).apply(&fe(&x)));
        sub_vec(&v, &fe(&h.br(&x, &y)))
    });
    let dii = Tensor::from_fn(field, 3, n, nv, |t| {
        let (x, y, z) = (h.e(t[0]), h.e(t[1]), h.e(t[2]));
        let mut v = ev.d(&x, &y).apply(&fe(&z));
        v = add_vec(&v, &ev.theta(&y, &z).apply(&fe(&x)));
        v = sub_vec(&v, &ev.theta(&x, &z).apply(&fe(&y)));
        sub_vec(&v, &fe(&h.tri(&x, &y, &z)))
    });
    Ok((di, dii))
}

/// `↺ ρ(αx)𝓕(y,z) + 𝓕(αx,[y,z]) = 0`, named `hom-lie-cocycle`, plus the cochain
/// conditions: skew (`F-skew`) and `𝓕(αx,αy) = β𝓕(x,y)` (`F-alpha`).
pub fn verify_2cocycle_hom_lie(
    f: &Tensor,
    l: &HomLieAlgebra,
    rep: &HomLieRep,
    cfg: &Config,
) -> Result<IdentityReport> {
    f.check_shape("F", 2, l.dim(), rep.carrier_dim())?;
    same_field(l.field(), f.field())?;
    let mut r = IdentityReport::new(cfg.max_failures);
    let n = l.dim();
    let alphas: Vec<Vector> = (0..n).map(|i| l.alpha().column(i)).collect();
    r.check_all("F-skew", 2, n, |t| add_vec(f.at(t), f.at(&[t[1], t[0]])));
    r.check_all("F-alpha", 2, n, |t| {
        sub_vec(
            &f.apply(&[&alphas[t[0]], &alphas[t[1]]]),
            &rep.beta().apply(f.at(t)),
        )
    });
    r.check_all("hom-lie-cocycle", 3, n, |t| {
        let mut acc = zero_vector(l.field(), rep.carrier_dim());
        for k in 0..3 {
            let (x, y, z) = (t[k], t[(k + 1) % 3], t[(k + 2) % 3]);
            acc = add_vec(&acc, &rep.rho_of(&alphas[x]).apply(f.at(&[y, z])));
            acc = add_vec(&acc, &f.apply(&[&alphas[x], l.bracket().at(&[y, z])]));
        }
        acc
    });
    Ok(r)
}

/// The four (2,3)-cocycle conditions, named `cocycle1` … `cocycle4`.
///
/// `cocycle4` is checked in the form `−δ_II 𝓖 = 0`, whose two θ-terms carry
/// the opposite signs to the ones in [`Reading::Literal`].
pub fn verify_23cocycle(
    pair: &CocyclePair,
    h: &HlyAlgebra,
    rep: &HlyRep,
    cfg: &Config,
) -> Result<IdentityReport> {
    rep.check_against(h)?;
    let (n, nv) = (h.dim(), rep.carrier_dim());
    pair.f.check_shape("F", 2, n, nv)?;
    pair.g.check_shape("G", 3, n, nv)?;
    let ev = RepEval::new(h, rep, 2);
    let (f, g) = (&pair.f, &pair.g);
    let field = h.field();
    let lit = cfg.reading == Reading::Literal;
    let mut r = IdentityReport::new(cfg.max_failures);
    check_skew(&mut r, "skew-F", f);
    check_skew(&mut r, "skew-G", g);
    r.check_all("cocycle1", 3, n, |t| {
        let mut acc = zero_vector(field, nv);
        for k in 0..3 {
            let (x, y, z) = (t[k], t[(k + 1) % 3], t[(k + 2) % 3]);
            acc = add_vec(&acc, &f.apply(&[h.binary().at(&[x, y]), &ev.a(1, z)]));
            acc = sub_vec(&acc, &ev.rho(&ev.a(1, x)).apply(f.at(&[y, z])));
            acc = add_vec(&acc, g.at(&[x, y, z]));
        }
        acc
    });
    r.check_all("cocycle2", 4, n, |t| {
        let at = ev.a(1, t[3]);
        let mut acc = zero_vector(field, nv);
        for k in 0..3 {
            let (x, y, z) = (t[k], t[(k + 1) % 3], t[(k + 2) % 3]);
            acc = add_vec(&acc, &ev.theta(&ev.a(1, x), &at).apply(f.at(&[y, z])));
            acc = add_vec(&acc, &g.apply(&[h.binary().at(&[x, y]), &ev.a(1, z), &at]));
        }
        acc
    });
    r.check_all("cocycle3", 4, n, |t| {
        let (x, y, z, w) = (t[0], t[1], t[2], t[3]);
        let (ex, ey, ez, ew) = (h.e(x), h.e(y), h.e(z), h.e(w));
        let mut acc = ev.d(&ev.a(1, x), &ev.a(1, y)).apply(f.at(&[z, w]));
        acc = add_vec(&acc, &ev.rho(&ev.a(2, w)).apply(g.at(&[x, y, z])));
        acc = sub_vec(&acc, &f.apply(&[&h.tri(&ex, &ey, &ez), &ev.a(2, w)]));
        acc = add_vec(&acc, &g.apply(&[&ev.a(1, x), &ev.a(1, y), &h.br(&ez, &ew)]));
        acc = sub_vec(&acc, &ev.rho(&ev.a(2, z)).apply(g.at(&[x, y, w])));
        sub_vec(&acc, &f.apply(&[&ev.a(2, z), &h.tri(&ex, &ey, &ew)]))
    });
    r.check_all("cocycle4", 5, n, |t| {
        let e: Vec<Vector> = t.iter().map(|&i| h.e(i)).collect();
        let a2: Vec<Vector> = t.iter().map(|&i| ev.a(2, i)).collect();
        let mut th = sub_vec(
            &ev.theta(&a2[3], &a2[4]).apply(g.at(&[t[0], t[1], t[2]])),
            &ev.theta(&a2[2], &a2[4]).apply(g.at(&[t[0], t[1], t[3]])),
        );
        if !lit {
            th = th.iter().map(|s| -s).collect();
        }
        let mut acc = th;
        acc = add_vec(&acc, &ev.d(&a2[0], &a2[1]).apply(g.at(&[t[2], t[3], t[4]])));
        acc = sub_vec(&acc, &ev.d(&a2[2], &a2[3]).apply(g.at(&[t[0], t[1], t[4]])));
        acc = sub_vec(
            &acc,
            &g.apply(&[&h.tri(&e[0], &e[1], &e[2]), &a2[3], &a2[4]]),
        );
        acc = sub_vec(
            &acc,
            &g.apply(&[&a2[2], &h.tri(&e[0], &e[1], &e[3]), &a2[4]]),
        );
        acc = add_vec(
            &acc,
            &g.apply(&[&a2[0], &a2[1], &h.tri(&e[2], &e[3], &e[4])]),
        );
        sub_vec(
            &acc,
            &g.apply(&[&a2[2], &a2[3], &h.tri(&e[0], &e[1], &e[4])]),
        )
    });
    Ok(r)
}

/// `𝓖_{ρ,𝓕}(x,y,z) = 𝓕([x,y],αz) − ρ(αz)𝓕(x,y)`.
pub fn g_from_f(f: &Tensor, l: &HomLieAlgebra, rep: &HomLieRep, cfg: &Config) -> Result<Tensor> {
    require(
        "not a Hom-Lie representation",
        verify_hom_lie_rep(l, rep, cfg)?,
    )?;
    require(
        "F is not a Hom-Lie 2-cocycle",
        verify_2cocycle_hom_lie(f, l, rep, cfg)?,
    )?;
    Ok(g_from_f_unchecked(f, l, rep))
}

pub(crate) fn g_from_f_unchecked(f: &Tensor, l: &HomLieAlgebra, rep: &HomLieRep) -> Tensor {
    let n = l.dim();
    let alphas: Vec<Vector> = (0..n).map(|i| l.alpha().column(i)).collect();
    Tensor::from_fn(l.field(), 3, n, rep.carrier_dim(), |t| {
        let lhs = f.apply(&[l.bracket().at(&[t[0], t[1]]), &alphas[t[2]]]);
        sub_vec(&lhs, &rep.rho_of(&alphas[t[2]]).apply(f.at(&[t[0], t[1]])))
    })
}

/// The induced HLY algebra, its `θ_ρ` representation and `(𝓕, 𝓖_{ρ,𝓕})`.
pub fn induced_cocycle_context(
    l: &HomLieAlgebra,
    rep: &HomLieRep,
    f: &Tensor,
    cfg: &Config,
) -> Result<(HlyAlgebra, HlyRep, CocyclePair)> {
    let g = g_from_f(f, l, rep, cfg)?;
    let h = induced_hly_unchecked(l);
    let r = theta_from_rho_unchecked(l.alpha(), rep);
    let pair = CocyclePair::new(&h, &r, f.clone(), g)?;
    Ok((h, r, pair))
}

pub fn cohomology_dims(
    level: usize,
    h: &HlyAlgebra,
    rep: &HlyRep,
    cfg: &Config,
) -> Result<CohomologyDims> {
    Complex::new(h, rep, cfg)?.dims(level, cfg)
}

pub fn delta_squared_check(
    h: &HlyAlgebra,
    rep: &HlyRep,
    start: usize,
    cfg: &Config,
) -> Result<DeltaSquared> {
    Complex::new(h, rep, cfg)?.delta_squared(start, cfg)
}

/// The complex of the V-structure of `T` with coefficients `(A, ρ_T, θ_T, α)`.
pub fn twisted_complex(op: &TwistedOperator, cfg: &Config) -> Result<Complex> {
    require("not a twisted O-operator", op.verify(cfg)?)?;
    Ok(Complex::unchecked(
        v_structure_unchecked(op),
        induced_rep_unchecked(op),
    ))
}

/// Coordinates of `χ ∈ ∧²A` are indexed by basis pairs `a < b` in
/// lexicographic order.
pub fn wedge_pairs(dim: usize) -> Vec<(usize, usize)> {
    CochainShape::new(Field::Rational, 2, dim, 1).pairs
}

/// `∂_T(χ)u = T(D(χ)u + 𝓖(χ,Tu)) − ⟦χ,Tu⟧` as a `dim A × dim V` matrix.
pub fn partial_t(chi: &[Scalar], op: &TwistedOperator, cfg: &Config) -> Result<Matrix> {
    require("not a twisted O-operator", op.verify(cfg)?)?;
    let ctx = op.context();
    let h = ctx.algebra();
    let pairs = wedge_pairs(h.dim());
    if chi.len() != pairs.len() {
        return Err(crate::exact::ExactError::Dimension {
            context: "wedge coordinates",
            expected: pairs.len(),
            found: chi.len(),
        }
        .into());
    }
    Ok(partial_t_unchecked(chi, op))
}

pub(crate) fn partial_t_unchecked(chi: &[Scalar], op: &TwistedOperator) -> Matrix {
    let ctx = op.context();
    let (h, rep, pair) = (ctx.algebra(), ctx.rep(), ctx.cocycle());
    let t = op.map();
    let (na, nv) = (h.dim(), rep.carrier_dim());
    let field = h.field();
    let pairs = wedge_pairs(na);
    let ev = RepEval::new(h, rep, 1);
    let cols: Vec<Vector> = (0..nv)
        .map(|u| {
            let tu = t.column(u);
            let eu = unit_vector(field, nv, u);
            let mut inner = zero_vector(field, nv);
            let mut bracket = zero_vector(field, na);
            for (c, &(a, b)) in chi.iter().zip(&pairs) {
                if c.is_zero() {
                    continue;
                }
                let (ea, eb) = (h.e(a), h.e(b));
                axpy(&mut inner, c, &ev.d(&ea, &eb).apply(&eu));
                axpy(&mut inner, c, &pair.g().apply(&[&ea, &eb, &tu]));
                axpy(&mut bracket, c, &h.tri(&ea, &eb, &tu));
            }
            sub_vec(&t.apply(&inner), &bracket)
        })
        .collect();
    Matrix::from_columns(field, na, &cols)
}
