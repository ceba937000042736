//! Small presentations shared by tests, the acceptance suite and the CLI.

use std::sync::Arc;

use crate::cohomology::{g_from_f_unchecked, CocyclePair};
use crate::exact::{Field, Matrix, Tensor};
use crate::ns::NsHomLie;
use crate::operators::TwistedContext;
use crate::representations::{adjoint_rep_unchecked, HlyRep, HomLieRep};
use crate::structures::{induced_hly_unchecked, HlyAlgebra, HomLieAlgebra};

/// Skew bracket from a list of `(i, j, k, c)`: `[e_i, e_j] = c e_k` for `i < j`.
pub fn skew_bracket(field: Field, dim: usize, entries: &[(usize, usize, usize, i64)]) -> Tensor {
    let mut t = Tensor::zeros(field, 2, dim, dim);
    for &(i, j, k, c) in entries {
        let v = field.int(c);
        let cur = t.entry(&[i, j], k).clone();
        t.set(&[i, j], k, &cur + &v);
        let cur = t.entry(&[j, i], k).clone();
        t.set(&[j, i], k, &cur - &v);
    }
    t
}

/// Dimension 3, zero bracket, `α = id`.
pub fn zero3(field: Field) -> HomLieAlgebra {
    HomLieAlgebra::new(Matrix::identity(field, 3), Tensor::zeros(field, 2, 3, 3)).unwrap()
}

pub fn zero3_hly(field: Field) -> HlyAlgebra {
    HlyAlgebra::with_zero_ternary(&zero3(field))
}

/// Heisenberg: `[e1,e2] = e3`, `α = id`.
pub fn h3(field: Field) -> HomLieAlgebra {
    HomLieAlgebra::new(
        Matrix::identity(field, 3),
        skew_bracket(field, 3, &[(0, 1, 2, 1)]),
    )
    .unwrap()
}

/// Yau twist of `h3` by `diag(1,2,2)`: `α = diag(1,2,2)`, `[e1,e2] = 2e3`.
pub fn h3q(field: Field) -> HomLieAlgebra {
    HomLieAlgebra::new(
        Matrix::diag(field, &[1, 2, 2]),
        skew_bracket(field, 3, &[(0, 1, 2, 2)]),
    )
    .unwrap()
}

pub fn h3_induced(field: Field) -> HlyAlgebra {
    induced_hly_unchecked(&h3(field))
}

pub fn h3q_induced(field: Field) -> HlyAlgebra {
    induced_hly_unchecked(&h3q(field))
}

/// Projection onto `e1`; a weight-zero Rota-Baxter operator on `h3`.
pub fn p1(field: Field) -> Matrix {
    Matrix::diag(field, &[1, 0, 0])
}

/// Two-dimensional, `e1 ∘ e1 = e2`, `⋎ = 0`, `α = id`.
pub fn pre_lie(field: Field) -> NsHomLie {
    let mut circ = Tensor::zeros(field, 2, 2, 2);
    circ.set(&[0, 0], 1, field.one());
    NsHomLie::new(
        Matrix::identity(field, 2),
        circ,
        Tensor::zeros(field, 2, 2, 2),
    )
    .unwrap()
}

/// The non-abelian two-dimensional Lie algebra `[e1,e2] = e1`.
pub fn aff2(field: Field) -> HomLieAlgebra {
    HomLieAlgebra::new(
        Matrix::identity(field, 2),
        skew_bracket(field, 2, &[(0, 1, 0, 1)]),
    )
    .unwrap()
}

/// Twisted O-operator contexts over GF(2) with `dim A = dim V = 2`, `α = β = id`.
pub fn gf2_contexts() -> Vec<(&'static str, Arc<TwistedContext>)> {
    let f = Field::prime(2).unwrap();
    let l = aff2(f);
    let h = induced_hly_unchecked(&l);
    let id = Matrix::identity(f, 2);
    let zero_rep = HlyRep::zero(2, id.clone());
    let adjoint = adjoint_rep_unchecked(&h);

    let mut out = Vec::new();
    let zero_pair = CocyclePair::zero(&h, &zero_rep);
    out.push((
        "zero-rep",
        TwistedContext::unchecked(h.clone(), zero_rep, zero_pair),
    ));
    let pair = CocyclePair::zero(&h, &adjoint);
    out.push((
        "adjoint",
        TwistedContext::unchecked(h.clone(), adjoint.clone(), pair),
    ));

    let mut fe = Tensor::zeros(f, 2, 2, 2);
    fe.set(&[0, 1], 1, f.one());
    fe.set(&[1, 0], 1, f.one());
    let g = g_from_f_unchecked(&fe, &l, &HomLieRep::adjoint(&l));
    out.push((
        "adjoint-f",
        TwistedContext::unchecked(h, adjoint, CocyclePair::unchecked(fe, g)),
    ));

    let ab = HlyAlgebra::new(
        id.clone(),
        Tensor::zeros(f, 2, 2, 2),
        Tensor::zeros(f, 3, 2, 2),
    )
    .unwrap();
    let zr = HlyRep::zero(2, id);
    let mut fv = Tensor::zeros(f, 2, 2, 2);
    fv.set(&[0, 1], 0, f.one());
    fv.set(&[1, 0], 0, f.one());
    let g0 = Tensor::zeros(f, 3, 2, 2);
    out.push((
        "abelian-f",
        TwistedContext::unchecked(ab, zr, CocyclePair::unchecked(fv, g0)),
    ));
    out.into_iter().map(|(n, c)| (n, Arc::new(c))).collect()
}
