//! Hom-Lie and Hom-Lie-Yamaguti presentations by structure constants.

use crate::config::Config;
use crate::error::{require, Error, Result};
use crate::exact::{
    add_vec, sub_vec, unit_vector, zero_vector, ExactError, Field, Matrix, Scalar, Tensor, Vector,
};
use crate::report::IdentityReport;

pub(crate) fn same_field(expected: Field, found: Field) -> Result<()> {
    if expected != found {
        return Err(ExactError::FieldMismatch { expected, found }.into());
    }
    Ok(())
}

/// `(A, [·,·], α)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomLieAlgebra {
    alpha: Matrix,
    bracket: Tensor,
}

impl HomLieAlgebra {
    pub fn new(alpha: Matrix, bracket: Tensor) -> Result<Self> {
        let n = alpha.rows();
        alpha.check_shape("alpha", n, n)?;
        bracket.check_shape("bracket", 2, n, n)?;
        same_field(alpha.field(), bracket.field())?;
        Ok(HomLieAlgebra { alpha, bracket })
    }

    pub fn dim(&self) -> usize {
        self.alpha.rows()
    }

    pub fn field(&self) -> Field {
        self.alpha.field()
    }

    pub fn alpha(&self) -> &Matrix {
        &self.alpha
    }

    pub fn bracket(&self) -> &Tensor {
        &self.bracket
    }

    pub fn br(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        self.bracket.apply(&[x, y])
    }

    pub fn e(&self, i: usize) -> Vector {
        unit_vector(self.field(), self.dim(), i)
    }
}

/// `(A, [·,·], ⟦·,·,·⟧, α)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HlyAlgebra {
    alpha: Matrix,
    binary: Tensor,
    ternary: Tensor,
}

impl HlyAlgebra {
    pub fn new(alpha: Matrix, binary: Tensor, ternary: Tensor) -> Result<Self> {
        let n = alpha.rows();
        alpha.check_shape("alpha", n, n)?;
        binary.check_shape("binary bracket", 2, n, n)?;
        ternary.check_shape("ternary bracket", 3, n, n)?;
        same_field(alpha.field(), binary.field())?;
        same_field(alpha.field(), ternary.field())?;
        Ok(HlyAlgebra {
            alpha,
            binary,
            ternary,
        })
    }

    /// A Hom-Lie algebra viewed as an HLY algebra with zero ternary bracket.
    pub fn with_zero_ternary(l: &HomLieAlgebra) -> Self {
        HlyAlgebra {
            alpha: l.alpha.clone(),
            binary: l.bracket.clone(),
            ternary: Tensor::zeros(l.field(), 3, l.dim(), l.dim()),
        }
    }

    pub fn dim(&self) -> usize {
        self.alpha.rows()
    }

    pub fn field(&self) -> Field {
        self.alpha.field()
    }

    pub fn alpha(&self) -> &Matrix {
        &self.alpha
    }

    pub fn binary(&self) -> &Tensor {
        &self.binary
    }

    pub fn ternary(&self) -> &Tensor {
        &self.ternary
    }

    pub fn br(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        self.binary.apply(&[x, y])
    }

    pub fn tri(&self, x: &[Scalar], y: &[Scalar], z: &[Scalar]) -> Vector {
        self.ternary.apply(&[x, y, z])
    }

    pub fn e(&self, i: usize) -> Vector {
        unit_vector(self.field(), self.dim(), i)
    }
}

/// Cached powers `α^k` applied to basis vectors.
pub(crate) struct AlphaPowers {
    pows: Vec<Matrix>,
}

impl AlphaPowers {
    pub(crate) fn new(alpha: &Matrix, max: usize) -> Self {
        let mut pows = vec![Matrix::identity(alpha.field(), alpha.rows())];
        for k in 1..=max {
            let next = pows[k - 1].mul(alpha);
            pows.push(next);
        }
        AlphaPowers { pows }
    }

    /// `α^k e_i`.
    pub(crate) fn on_basis(&self, k: usize, i: usize) -> Vector {
        self.pows[k].column(i)
    }

    pub(crate) fn matrix(&self, k: usize) -> &Matrix {
        &self.pows[k]
    }
}

fn skew_residual(t: &Tensor, i: usize, j: usize, rest: &[usize]) -> Vector {
    let mut a = vec![i, j];
    a.extend_from_slice(rest);
    if i == j {
        return t.at(&a).to_vec();
    }
    let mut b = vec![j, i];
    b.extend_from_slice(rest);
    add_vec(t.at(&a), t.at(&b))
}

/// Skew-symmetry in the first two slots: `t(i,j,…) + t(j,i,…)` for `i < j`
/// and `t(i,i,…)` on the diagonal (the alternating form, valid in every
/// characteristic).
pub(crate) fn check_skew(report: &mut IdentityReport, name: &str, t: &Tensor) {
    let n = t.in_dim();
    let rest_arity = t.arity() - 2;
    for i in 0..n {
        for j in i..n {
            for rest in crate::exact::Tuples::new(rest_arity, n) {
                let mut tuple = vec![i, j];
                tuple.extend_from_slice(&rest);
                report.check(name, &tuple, skew_residual(t, i, j, &rest));
            }
        }
    }
}

/// Skew-symmetry and the Hom-Jacobi identity `↺ [α x, [y, z]] = 0`.
pub fn verify_hom_lie(l: &HomLieAlgebra, cfg: &Config) -> IdentityReport {
    let mut r = IdentityReport::new(cfg.max_failures);
    check_skew(&mut r, "skew-symmetry", &l.bracket);
    let n = l.dim();
    r.check_all("hom-jacobi", 3, n, |t| {
        let e: Vec<Vector> = t.iter().map(|&i| l.e(i)).collect();
        let a: Vec<Vector> = t.iter().map(|&i| l.alpha.column(i)).collect();
        let mut acc = zero_vector(l.field(), n);
        for k in 0..3 {
            let (x, y, z) = (k, (k + 1) % 3, (k + 2) % 3);
            let inner = l.br(&e[y], &e[z]);
            acc = add_vec(&acc, &l.br(&a[x], &inner));
        }
        acc
    });
    r
}

/// `α[x,y] = [αx, αy]`.
pub fn verify_multiplicative_hom_lie(l: &HomLieAlgebra, cfg: &Config) -> IdentityReport {
    let mut r = IdentityReport::new(cfg.max_failures);
    r.check_all("multiplicative-binary", 2, l.dim(), |t| {
        let lhs = l.alpha.apply(l.bracket.at(t));
        let rhs = l.br(&l.alpha.column(t[0]), &l.alpha.column(t[1]));
        sub_vec(&lhs, &rhs)
    });
    r
}

/// `α` commutes with both brackets.
pub fn verify_multiplicative(h: &HlyAlgebra, cfg: &Config) -> IdentityReport {
    let mut r = IdentityReport::new(cfg.max_failures);
    r.check_all("multiplicative-binary", 2, h.dim(), |t| {
        let lhs = h.alpha.apply(h.binary.at(t));
        let rhs = h.br(&h.alpha.column(t[0]), &h.alpha.column(t[1]));
        sub_vec(&lhs, &rhs)
    });
    r.check_all("multiplicative-ternary", 3, h.dim(), |t| {
        let lhs = h.alpha.apply(h.ternary.at(t));
        let a: Vec<Vector> = t.iter().map(|&i| h.alpha.column(i)).collect();
        sub_vec(&lhs, &h.tri(&a[0], &a[1], &a[2]))
    });
    r
}

/// Skew-symmetries plus the four HLY axioms, named `LY1`…`LY4`
/// (`LY4` being the α²-twisted ternary Leibniz rule).
pub fn verify_hly(h: &HlyAlgebra, cfg: &Config) -> IdentityReport {
    let mut r = IdentityReport::new(cfg.max_failures);
    check_skew(&mut r, "skew-binary", &h.binary);
    check_skew(&mut r, "skew-ternary", &h.ternary);
    let n = h.dim();
    let f = h.field();
    let ap = AlphaPowers::new(&h.alpha, 2);
    r.check_all("LY1", 3, n, |t| {
        let mut acc = zero_vector(f, n);
        for k in 0..3 {
            let (x, y, z) = (t[k], t[(k + 1) % 3], t[(k + 2) % 3]);
            acc = add_vec(&acc, &h.br(h.binary.at(&[x, y]), &ap.on_basis(1, z)));
            acc = add_vec(&acc, h.ternary.at(&[x, y, z]));
        }
        acc
    });
    r.check_all("LY2", 4, n, |t| {
        let w = ap.on_basis(1, t[3]);
        let mut acc = zero_vector(f, n);
        for k in 0..3 {
            let (x, y, z) = (t[k], t[(k + 1) % 3], t[(k + 2) % 3]);
            acc = add_vec(&acc, &h.tri(h.binary.at(&[x, y]), &ap.on_basis(1, z), &w));
        }
        acc
    });
    r.check_all("LY3", 4, n, |t| {
        let (x, y, z, w) = (t[0], t[1], t[2], t[3]);
        let lhs = h.tri(&ap.on_basis(1, x), &ap.on_basis(1, y), h.binary.at(&[z, w]));
        let r1 = h.br(h.ternary.at(&[x, y, z]), &ap.on_basis(2, w));
        let r2 = h.br(&ap.on_basis(2, z), h.ternary.at(&[x, y, w]));
        sub_vec(&sub_vec(&lhs, &r1), &r2)
    });
    r.check_all("LY4", 5, n, |t| {
        let a2: Vec<Vector> = t.iter().map(|&i| ap.on_basis(2, i)).collect();
        let (x, y, z, w, u) = (t[0], t[1], t[2], t[3], t[4]);
        let lhs = h.tri(&a2[0], &a2[1], h.ternary.at(&[z, w, u]));
        let r1 = h.tri(h.ternary.at(&[x, y, z]), &a2[3], &a2[4]);
        let r2 = h.tri(&a2[2], h.ternary.at(&[x, y, w]), &a2[4]);
        let r3 = h.tri(&a2[2], &a2[3], h.ternary.at(&[x, y, u]));
        sub_vec(&sub_vec(&sub_vec(&lhs, &r1), &r2), &r3)
    });
    r
}

/// The HLY algebra with ternary bracket `⟦x,y,z⟧ = [[x,y], α z]`.
pub fn induced_hly_from_hom_lie(l: &HomLieAlgebra, cfg: &Config) -> Result<HlyAlgebra> {
    require("Hom-Lie algebra is invalid", verify_hom_lie(l, cfg))?;
    require(
        "Hom-Lie algebra is not multiplicative",
        verify_multiplicative_hom_lie(l, cfg),
    )?;
    Ok(induced_hly_unchecked(l))
}

pub(crate) fn induced_hly_unchecked(l: &HomLieAlgebra) -> HlyAlgebra {
    let n = l.dim();
    let ternary = Tensor::from_fn(l.field(), 3, n, n, |t| {
        l.br(l.bracket.at(&[t[0], t[1]]), &l.alpha.column(t[2]))
    });
    HlyAlgebra {
        alpha: l.alpha.clone(),
        binary: l.bracket.clone(),
        ternary,
    }
}

/// Twist by an algebra endomorphism `φ`: `(φα, φ∘[·,·], φ²∘⟦·,·,·⟧)`.
pub fn yau_twist(h: &HlyAlgebra, phi: &Matrix, cfg: &Config) -> Result<HlyAlgebra> {
    phi.check_shape("twisting morphism", h.dim(), h.dim())?;
    require(
        "twisting map is not a morphism",
        is_hly_morphism(phi, h, h, cfg)?,
    )?;
    let phi2 = phi.mul(phi);
    Ok(HlyAlgebra {
        alpha: phi.mul(&h.alpha),
        binary: h.binary.map_output(phi),
        ternary: h.ternary.map_output(&phi2),
    })
}

fn nonzero_positions(t: &Tensor) -> Vec<(Vec<usize>, usize)> {
    t.nonzero_entries()
        .into_iter()
        .map(|(i, m, _)| (i, m))
        .collect()
}

/// Drops a zero ternary bracket.
pub fn as_hom_lie(h: &HlyAlgebra) -> Result<HomLieAlgebra> {
    if !h.ternary.is_zero() {
        return Err(Error::NonzeroDiscarded {
            tensor: "ternary bracket",
            entries: nonzero_positions(&h.ternary),
        });
    }
    HomLieAlgebra::new(h.alpha.clone(), h.binary.clone())
}

/// Requires a zero binary bracket; the result is the Hom-Lie triple system
/// carried by the ternary bracket.
pub fn as_hlts(h: &HlyAlgebra) -> Result<HlyAlgebra> {
    if !h.binary.is_zero() {
        return Err(Error::NonzeroDiscarded {
            tensor: "binary bracket",
            entries: nonzero_positions(&h.binary),
        });
    }
    Ok(h.clone())
}

/// `φ[x,y]₁ = [φx,φy]₂`, `φ⟦x,y,z⟧₁ = ⟦φx,φy,φz⟧₂` and `φα₁ = α₂φ`.
pub fn is_hly_morphism(
    phi: &Matrix,
    h1: &HlyAlgebra,
    h2: &HlyAlgebra,
    cfg: &Config,
) -> Result<IdentityReport> {
    phi.check_shape("morphism", h2.dim(), h1.dim())?;
    same_field(h1.field(), h2.field())?;
    let mut r = IdentityReport::new(cfg.max_failures);
    let cols: Vec<Vector> = (0..h1.dim()).map(|j| phi.column(j)).collect();
    r.check_all("morphism-binary", 2, h1.dim(), |t| {
        sub_vec(
            &phi.apply(h1.binary.at(t)),
            &h2.br(&cols[t[0]], &cols[t[1]]),
        )
    });
    r.check_all("morphism-ternary", 3, h1.dim(), |t| {
        sub_vec(
            &phi.apply(h1.ternary.at(t)),
            &h2.tri(&cols[t[0]], &cols[t[1]], &cols[t[2]]),
        )
    });
    let diff = phi.mul(&h1.alpha).sub(&h2.alpha.mul(phi));
    r.check_all("morphism-alpha", 1, h1.dim(), |t| diff.column(t[0]));
    Ok(r)
}
