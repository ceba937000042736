//! Representations of Hom-Lie and HLY algebras, the derived action `D`,
//! semidirect products and the representation induced by a twisted
//! O-operator.

use crate::cohomology::{verify_23cocycle, CocyclePair};
use crate::config::{Config, Reading};
use crate::error::{require, Error, Result};
use crate::exact::{
    add_vec, sub_vec, zero_vector, ExactError, Field, Matrix, Scalar, Tensor, Vector,
};
use crate::operators::TwistedOperator;
use crate::report::IdentityReport;
use crate::structures::{same_field, verify_hly, AlphaPowers, HlyAlgebra, HomLieAlgebra};

/// `Σ xᵢ family[i]`.
pub(crate) fn linear_family(field: Field, dim: usize, family: &[Matrix], x: &[Scalar]) -> Matrix {
    let mut out = Matrix::zeros(field, dim, dim);
    for (i, c) in x.iter().enumerate() {
        if !c.is_zero() {
            out.add_scaled(c, &family[i]);
        }
    }
    out
}

/// `Σ xᵢ yⱼ family[i·n + j]`.
pub(crate) fn bilinear_family(
    field: Field,
    dim: usize,
    family: &[Matrix],
    x: &[Scalar],
    y: &[Scalar],
) -> Matrix {
    let n = x.len();
    let mut out = Matrix::zeros(field, dim, dim);
    for (i, a) in x.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        for (j, b) in y.iter().enumerate() {
            if !b.is_zero() {
                out.add_scaled(&(a * b), &family[i * n + j]);
            }
        }
    }
    out
}

fn check_family(
    family: &[Matrix],
    count: usize,
    dim: usize,
    field: Field,
    ctx: &'static str,
) -> Result<()> {
    if family.len() != count {
        return Err(ExactError::Dimension {
            context: ctx,
            expected: count,
            found: family.len(),
        }
        .into());
    }
    for m in family {
        m.check_shape(ctx, dim, dim)?;
        same_field(field, m.field())?;
    }
    Ok(())
}

/// `(V, ρ, β)` for a Hom-Lie algebra; `rho[i] = ρ(eᵢ)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomLieRep {
    beta: Matrix,
    rho: Vec<Matrix>,
}

impl HomLieRep {
    pub fn new(algebra_dim: usize, beta: Matrix, rho: Vec<Matrix>) -> Result<Self> {
        let v = beta.rows();
        beta.check_shape("beta", v, v)?;
        check_family(&rho, algebra_dim, v, beta.field(), "rho")?;
        Ok(HomLieRep { beta, rho })
    }

    /// `ρ(x) = [x, ·]`, `β = α`.
    pub fn adjoint(l: &HomLieAlgebra) -> Self {
        let n = l.dim();
        let rho = (0..n)
            .map(|i| {
                Matrix::from_fn(l.field(), n, n, |r, c| {
                    l.bracket().entry(&[i, c], r).clone()
                })
            })
            .collect();
        HomLieRep {
            beta: l.alpha().clone(),
            rho,
        }
    }

    pub fn zero(l: &HomLieAlgebra, beta: Matrix) -> Self {
        let v = beta.rows();
        HomLieRep {
            rho: vec![Matrix::zeros(l.field(), v, v); l.dim()],
            beta,
        }
    }

    pub fn carrier_dim(&self) -> usize {
        self.beta.rows()
    }

    pub fn algebra_dim(&self) -> usize {
        self.rho.len()
    }

    pub fn field(&self) -> Field {
        self.beta.field()
    }

    pub fn beta(&self) -> &Matrix {
        &self.beta
    }

    pub fn rho(&self) -> &[Matrix] {
        &self.rho
    }

    pub fn rho_of(&self, x: &[Scalar]) -> Matrix {
        linear_family(self.field(), self.carrier_dim(), &self.rho, x)
    }
}

/// `(V, ρ, θ, β)` for an HLY algebra; `theta[i·n + j] = θ(eᵢ, eⱼ)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HlyRep {
    beta: Matrix,
    rho: Vec<Matrix>,
    theta: Vec<Matrix>,
}

impl HlyRep {
    pub fn new(
        algebra_dim: usize,
        beta: Matrix,
        rho: Vec<Matrix>,
        theta: Vec<Matrix>,
    ) -> Result<Self> {
        let v = beta.rows();
        beta.check_shape("beta", v, v)?;
        check_family(&rho, algebra_dim, v, beta.field(), "rho")?;
        check_family(&theta, algebra_dim * algebra_dim, v, beta.field(), "theta")?;
        Ok(HlyRep { beta, rho, theta })
    }

    pub fn zero(algebra_dim: usize, beta: Matrix) -> Self {
        let v = beta.rows();
        let z = Matrix::zeros(beta.field(), v, v);
        HlyRep {
            rho: vec![z.clone(); algebra_dim],
            theta: vec![z; algebra_dim * algebra_dim],
            beta,
        }
    }

    pub fn carrier_dim(&self) -> usize {
        self.beta.rows()
    }

    pub fn algebra_dim(&self) -> usize {
        self.rho.len()
    }

    pub fn field(&self) -> Field {
        self.beta.field()
    }

    pub fn beta(&self) -> &Matrix {
        &self.beta
    }

    pub fn rho(&self) -> &[Matrix] {
        &self.rho
    }

    pub fn theta(&self) -> &[Matrix] {
        &self.theta
    }

    pub fn theta_at(&self, i: usize, j: usize) -> &Matrix {
        &self.theta[i * self.algebra_dim() + j]
    }

    pub fn rho_of(&self, x: &[Scalar]) -> Matrix {
        linear_family(self.field(), self.carrier_dim(), &self.rho, x)
    }

    pub fn theta_of(&self, x: &[Scalar], y: &[Scalar]) -> Matrix {
        bilinear_family(self.field(), self.carrier_dim(), &self.theta, x, y)
    }

    /// Replaces one θ entry; used to build perturbations.
    pub fn with_theta_entry(&self, i: usize, j: usize, row: usize, col: usize, v: Scalar) -> Self {
        let mut out = self.clone();
        let n = self.algebra_dim();
        out.theta[i * n + j].set(row, col, v);
        out
    }

    pub(crate) fn check_against(&self, h: &HlyAlgebra) -> Result<()> {
        if self.algebra_dim() != h.dim() {
            return Err(ExactError::Dimension {
                context: "representation vs algebra",
                expected: h.dim(),
                found: self.algebra_dim(),
            }
            .into());
        }
        same_field(h.field(), self.field())
    }
}

/// `D(x,y) = θ(y,x) − θ(x,y) + ρ(αx)ρ(y) − ρ(αy)ρ(x) − ρ([x,y])β` on basis pairs.
pub fn d_map(rep: &HlyRep, alpha: &Matrix, binary: &Tensor) -> Result<Vec<Matrix>> {
    let n = rep.algebra_dim();
    alpha.check_shape("alpha", n, n)?;
    binary.check_shape("binary bracket", 2, n, n)?;
    Ok(d_family(rep, alpha, binary))
}

pub(crate) fn d_family(rep: &HlyRep, alpha: &Matrix, binary: &Tensor) -> Vec<Matrix> {
    let n = rep.algebra_dim();
    let rho_alpha: Vec<Matrix> = (0..n).map(|i| rep.rho_of(&alpha.column(i))).collect();
    let mut out = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let mut d = rep.theta_at(j, i).sub(rep.theta_at(i, j));
            d = d.add(&rho_alpha[i].mul(&rep.rho[j]));
            d = d.sub(&rho_alpha[j].mul(&rep.rho[i]));
            d = d.sub(&rep.rho_of(binary.at(&[i, j])).mul(&rep.beta));
            out.push(d);
        }
    }
    out
}

/// Evaluation helper bundling an algebra, a representation and `D`.
pub(crate) struct RepEval<'a> {
    pub(crate) h: &'a HlyAlgebra,
    pub(crate) rep: &'a HlyRep,
    pub(crate) d: Vec<Matrix>,
    pub(crate) ap: AlphaPowers,
    pub(crate) bp: AlphaPowers,
}

impl<'a> RepEval<'a> {
    pub(crate) fn new(h: &'a HlyAlgebra, rep: &'a HlyRep, max_power: usize) -> Self {
        RepEval {
            h,
            rep,
            d: d_family(rep, h.alpha(), h.binary()),
            ap: AlphaPowers::new(h.alpha(), max_power),
            bp: AlphaPowers::new(rep.beta(), max_power),
        }
    }

    pub(crate) fn field(&self) -> Field {
        self.h.field()
    }

    pub(crate) fn rho(&self, x: &[Scalar]) -> Matrix {
        self.rep.rho_of(x)
    }

    pub(crate) fn theta(&self, x: &[Scalar], y: &[Scalar]) -> Matrix {
        self.rep.theta_of(x, y)
    }

    pub(crate) fn d(&self, x: &[Scalar], y: &[Scalar]) -> Matrix {
        bilinear_family(self.field(), self.rep.carrier_dim(), &self.d, x, y)
    }

    pub(crate) fn a(&self, k: usize, i: usize) -> Vector {
        self.ap.on_basis(k, i)
    }

    pub(crate) fn beta(&self, k: usize) -> &Matrix {
        self.bp.matrix(k)
    }
}

fn flat(m: Matrix) -> Vector {
    m.entries().to_vec()
}

/// Both lines of the Hom-Lie representation axiom (`RLIE-1`, `RLIE-2`).
pub fn verify_hom_lie_rep(
    l: &HomLieAlgebra,
    rep: &HomLieRep,
    cfg: &Config,
) -> Result<IdentityReport> {
    if rep.algebra_dim() != l.dim() {
        return Err(ExactError::Dimension {
            context: "representation vs algebra",
            expected: l.dim(),
            found: rep.algebra_dim(),
        }
        .into());
    }
    same_field(l.field(), rep.field())?;
    let mut r = IdentityReport::new(cfg.max_failures);
    let n = l.dim();
    let rho_alpha: Vec<Matrix> = (0..n).map(|i| rep.rho_of(&l.alpha().column(i))).collect();
    r.check_all("RLIE-1", 1, n, |t| {
        flat(
            rho_alpha[t[0]]
                .mul(rep.beta())
                .sub(&rep.beta().mul(&rep.rho[t[0]])),
        )
    });
    r.check_all("RLIE-2", 2, n, |t| {
        let (x, y) = (t[0], t[1]);
        let lhs = rep.rho_of(l.bracket().at(&[x, y])).mul(rep.beta());
        let rhs = rho_alpha[x]
            .mul(&rep.rho[y])
            .sub(&rho_alpha[y].mul(&rep.rho[x]));
        flat(lhs.sub(&rhs))
    });
    Ok(r)
}

/// The representation axioms `RL1-rho`, `RL1-theta`, `RL5`…`RL10`.
///
/// With [`Reading::Consistent`], `RL5` is composed with `β` and the last
/// term of `RL7` uses `β²`; these are the forms forced by the semidirect
/// product and satisfied by the adjoint representation. [`Reading::Literal`]
/// drops the `β` in `RL5` and uses `β` in `RL7`.
pub fn verify_hly_rep(h: &HlyAlgebra, rep: &HlyRep, cfg: &Config) -> Result<IdentityReport> {
    rep.check_against(h)?;
    let ev = RepEval::new(h, rep, 2);
    let n = h.dim();
    let lit = cfg.reading == Reading::Literal;
    let mut r = IdentityReport::new(cfg.max_failures);
    let b = ev.beta(1);
    let b2 = ev.beta(2);
    r.check_all("RL1-rho", 1, n, |t| {
        flat(ev.rho(&ev.a(1, t[0])).mul(b).sub(&b.mul(&rep.rho[t[0]])))
    });
    r.check_all("RL1-theta", 2, n, |t| {
        let lhs = ev.theta(&ev.a(1, t[0]), &ev.a(1, t[1])).mul(b);
        flat(lhs.sub(&b.mul(rep.theta_at(t[0], t[1]))))
    });
    r.check_all("RL5", 3, n, |t| {
        let mut acc = Matrix::zeros(ev.field(), rep.carrier_dim(), rep.carrier_dim());
        for k in 0..3 {
            let (x, y, z) = (t[k], t[(k + 1) % 3], t[(k + 2) % 3]);
            acc = acc.add(&ev.d(h.binary().at(&[x, y]), &ev.a(1, z)));
        }
        flat(if lit { acc } else { acc.mul(b) })
    });
    r.check_all("RL6", 3, n, |t| {
        let (x1, x2, y) = (t[0], t[1], t[2]);
        let ay = ev.a(1, y);
        let lhs = ev.theta(h.binary().at(&[x1, x2]), &ay).mul(b);
        let r1 = ev.theta(&ev.a(1, x1), &ay).mul(&rep.rho[x2]);
        let r2 = ev.theta(&ev.a(1, x2), &ay).mul(&rep.rho[x1]);
        flat(lhs.sub(&r1).add(&r2))
    });
    r.check_all("RL7", 3, n, |t| {
        let (x1, x2, y) = (t[0], t[1], t[2]);
        let lhs = ev.d(&ev.a(1, x1), &ev.a(1, x2)).mul(&rep.rho[y]);
        let r1 = ev.rho(&ev.a(2, y)).mul(&ev.d[x1 * n + x2]);
        let tail = if lit { b } else { b2 };
        let r2 = ev.rho(h.ternary().at(&[x1, x2, y])).mul(tail);
        flat(lhs.sub(&r1).sub(&r2))
    });
    r.check_all("RL8", 3, n, |t| {
        let (x, y1, y2) = (t[0], t[1], t[2]);
        let lhs = ev.theta(&ev.a(1, x), h.binary().at(&[y1, y2])).mul(b);
        let r1 = ev.rho(&ev.a(2, y1)).mul(rep.theta_at(x, y2));
        let r2 = ev.rho(&ev.a(2, y2)).mul(rep.theta_at(x, y1));
        flat(lhs.sub(&r1).add(&r2))
    });
    r.check_all("RL9", 4, n, |t| {
        let (x1, x2, y1, y2) = (t[0], t[1], t[2], t[3]);
        let lhs = ev.d(&ev.a(2, x1), &ev.a(2, x2)).mul(rep.theta_at(y1, y2));
        let r1 = ev.theta(&ev.a(2, y1), &ev.a(2, y2)).mul(&ev.d[x1 * n + x2]);
        let r2 = ev
            .theta(h.ternary().at(&[x1, x2, y1]), &ev.a(2, y2))
            .mul(b2);
        let r3 = ev
            .theta(&ev.a(2, y1), h.ternary().at(&[x1, x2, y2]))
            .mul(b2);
        flat(lhs.sub(&r1).sub(&r2).sub(&r3))
    });
    r.check_all("RL10", 4, n, |t| {
        let (x, y1, y2, y3) = (t[0], t[1], t[2], t[3]);
        let lhs = ev.theta(&ev.a(2, x), h.ternary().at(&[y1, y2, y3])).mul(b2);
        let r1 = ev
            .theta(&ev.a(2, y2), &ev.a(2, y3))
            .mul(rep.theta_at(x, y1));
        let r2 = ev
            .theta(&ev.a(2, y1), &ev.a(2, y3))
            .mul(rep.theta_at(x, y2));
        let r3 = ev.d(&ev.a(2, y1), &ev.a(2, y2)).mul(rep.theta_at(x, y3));
        flat(lhs.sub(&r1).add(&r2).sub(&r3))
    });
    Ok(r)
}

/// `ρ(x) = [x,·]`, `θ(x,y)z = ⟦z,x,y⟧`, `β = α`.
pub fn adjoint_rep(h: &HlyAlgebra, cfg: &Config) -> Result<HlyRep> {
    require("algebra is not an HLY algebra", verify_hly(h, cfg))?;
    Ok(adjoint_rep_unchecked(h))
}

pub(crate) fn adjoint_rep_unchecked(h: &HlyAlgebra) -> HlyRep {
    let n = h.dim();
    let f = h.field();
    let rho = (0..n)
        .map(|i| Matrix::from_fn(f, n, n, |r, c| h.binary().entry(&[i, c], r).clone()))
        .collect();
    let mut theta = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            theta.push(Matrix::from_fn(f, n, n, |r, c| {
                h.ternary().entry(&[c, i, j], r).clone()
            }));
        }
    }
    HlyRep {
        beta: h.alpha().clone(),
        rho,
        theta,
    }
}

/// `θ_ρ(x,y) = ρ(αy)ρ(x)`; with `ρ` and `β` this is a representation of the
/// induced HLY algebra.
pub fn theta_from_rho(l: &HomLieAlgebra, rep: &HomLieRep, cfg: &Config) -> Result<HlyRep> {
    require(
        "Hom-Lie representation is invalid",
        verify_hom_lie_rep(l, rep, cfg)?,
    )?;
    Ok(theta_from_rho_unchecked(l.alpha(), rep))
}

pub(crate) fn theta_from_rho_unchecked(alpha: &Matrix, rep: &HomLieRep) -> HlyRep {
    let n = rep.algebra_dim();
    let mut theta = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            theta.push(rep.rho_of(&alpha.column(j)).mul(&rep.rho[i]));
        }
    }
    HlyRep {
        beta: rep.beta.clone(),
        rho: rep.rho.clone(),
        theta,
    }
}

/// `A ⋉ V` with `α ⊕ β` and the semidirect brackets.
pub fn semidirect(h: &HlyAlgebra, rep: &HlyRep, cfg: &Config) -> Result<HlyAlgebra> {
    rep.check_against(h)?;
    require("algebra is not an HLY algebra", verify_hly(h, cfg))?;
    require("not a representation", verify_hly_rep(h, rep, cfg)?)?;
    semidirect_unchecked(h, rep, None, cfg)
}

/// The `(F,G)`-twisted semidirect product.
pub fn twisted_semidirect(
    h: &HlyAlgebra,
    rep: &HlyRep,
    pair: &CocyclePair,
    cfg: &Config,
) -> Result<HlyAlgebra> {
    rep.check_against(h)?;
    require(
        "(F,G) is not a (2,3)-cocycle",
        verify_23cocycle(pair, h, rep, cfg)?,
    )?;
    semidirect_unchecked(h, rep, Some(pair), cfg)
}

/// Literal evaluation of the (twisted) semidirect formulas without any
/// validity precondition; the iff tests feed it invalid data on purpose.
pub fn semidirect_unchecked(
    h: &HlyAlgebra,
    rep: &HlyRep,
    pair: Option<&CocyclePair>,
    cfg: &Config,
) -> Result<HlyAlgebra> {
    let (na, nv) = (h.dim(), rep.carrier_dim());
    let total = na + nv;
    if total > cfg.max_product_dim {
        return Err(Error::CapExceeded {
            what: "semidirect product dimension",
            limit: cfg.max_product_dim,
            requested: total,
        });
    }
    let f = h.field();
    let d = d_family(rep, h.alpha(), h.binary());
    let alpha = Matrix::from_fn(f, total, total, |i, j| {
        if i < na && j < na {
            h.alpha().get(i, j).clone()
        } else if i >= na && j >= na {
            rep.beta().get(i - na, j - na).clone()
        } else {
            f.zero()
        }
    });
    // A basis vector of A ⊕ V is either an A basis vector or a V basis vector.
    let binary = Tensor::from_fn(f, 2, total, total, |t| {
        let (x, y) = (t[0], t[1]);
        let mut out = zero_vector(f, total);
        match (x < na, y < na) {
            (true, true) => {
                place(&mut out, 0, h.binary().at(&[x, y]));
                if let Some(p) = pair {
                    place(&mut out, na, p.f().at(&[x, y]));
                }
            }
            (true, false) => place(&mut out, na, &rep.rho[x].column(y - na)),
            (false, true) => place(
                &mut out,
                na,
                &rep.rho[y]
                    .column(x - na)
                    .iter()
                    .map(|s| -s)
                    .collect::<Vec<_>>(),
            ),
            (false, false) => {}
        }
        out
    });
    let ternary = Tensor::from_fn(f, 3, total, total, |t| {
        let (x, y, z) = (t[0], t[1], t[2]);
        let mut out = zero_vector(f, total);
        match (x < na, y < na, z < na) {
            (true, true, true) => {
                place(&mut out, 0, h.ternary().at(&[x, y, z]));
                if let Some(p) = pair {
                    place(&mut out, na, p.g().at(&[x, y, z]));
                }
            }
            // D(x,y)w
            (true, true, false) => place(&mut out, na, &d[x * na + y].column(z - na)),
            // −θ(x,z)v
            (true, false, true) => place(
                &mut out,
                na,
                &rep.theta_at(x, z)
                    .column(y - na)
                    .iter()
                    .map(|s| -s)
                    .collect::<Vec<_>>(),
            ),
            // θ(y,z)u
            (false, true, true) => place(&mut out, na, &rep.theta_at(y, z).column(x - na)),
            _ => {}
        }
        out
    });
    HlyAlgebra::new(alpha, binary, ternary)
}

fn place(out: &mut [Scalar], offset: usize, v: &[Scalar]) {
    for (k, s) in v.iter().enumerate() {
        out[offset + k] = s.clone();
    }
}

/// `(φ, ψ)` from `(A, V)` to `(A', V')`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepMorphism {
    pub phi: Matrix,
    pub psi: Matrix,
}

/// `c1`: `ψβ = β'ψ` together with `φα = α'φ` (`c1-alpha`); with
/// [`Reading::Literal`] `c1` is `φβ = β'ψ`, which only type-checks when all
/// four spaces share one dimension. `c2`: `ψρ(x) = ρ'(φx)ψ`. `c3`:
/// `ψθ(x,y) = θ'(φx,φy)ψ`.
pub fn verify_rep_morphism(
    m: &RepMorphism,
    source: (&HlyAlgebra, &HlyRep),
    target: (&HlyAlgebra, &HlyRep),
    cfg: &Config,
) -> Result<IdentityReport> {
    let (h1, r1) = source;
    let (h2, r2) = target;
    r1.check_against(h1)?;
    r2.check_against(h2)?;
    same_field(h1.field(), h2.field())?;
    m.phi.check_shape("phi", h2.dim(), h1.dim())?;
    m.psi
        .check_shape("psi", r2.carrier_dim(), r1.carrier_dim())?;
    let mut r = IdentityReport::new(cfg.max_failures);
    match cfg.reading {
        Reading::Consistent => {
            let c1 = m.psi.mul(r1.beta()).sub(&r2.beta().mul(&m.psi));
            r.check("c1", &[], flat(c1));
            let ca = m.phi.mul(h1.alpha()).sub(&h2.alpha().mul(&m.phi));
            r.check("c1-alpha", &[], flat(ca));
        }
        Reading::Literal => {
            let square = r1.carrier_dim() == h1.dim() && r2.carrier_dim() == h2.dim();
            if !square {
                return Err(Error::Invalid(
                    "literal c1 needs dim A = dim V on both sides",
                ));
            }
            let c1 = m.phi.mul(r1.beta()).sub(&r2.beta().mul(&m.psi));
            r.check("c1", &[], flat(c1));
        }
    }
    let phis: Vec<Vector> = (0..h1.dim()).map(|i| m.phi.column(i)).collect();
    r.check_all("c2", 1, h1.dim(), |t| {
        flat(
            m.psi
                .mul(&r1.rho[t[0]])
                .sub(&r2.rho_of(&phis[t[0]]).mul(&m.psi)),
        )
    });
    r.check_all("c3", 2, h1.dim(), |t| {
        let lhs = m.psi.mul(r1.theta_at(t[0], t[1]));
        let rhs = r2.theta_of(&phis[t[0]], &phis[t[1]]).mul(&m.psi);
        flat(lhs.sub(&rhs))
    });
    Ok(r)
}

/// The representation `(A, ρ_T, θ_T, α)` of the V-structure:
/// `ρ_T(u)x = [Tu,x] + T(ρ(x)u + F(x,Tu))`,
/// `θ_T(u,v)x = ⟦x,Tu,Tv⟧ − T(D(x,Tu)v − θ(x,Tv)u + G(x,Tu,Tv))`.
pub fn induced_rep_from_top(op: &TwistedOperator, cfg: &Config) -> Result<HlyRep> {
    require("not a twisted O-operator", op.verify(cfg)?)?;
    Ok(induced_rep_unchecked(op))
}

pub(crate) fn induced_rep_unchecked(op: &TwistedOperator) -> HlyRep {
    let ctx = op.context();
    let (h, rep, pair) = (ctx.algebra(), ctx.rep(), ctx.cocycle());
    let t = op.map();
    let (na, nv) = (h.dim(), rep.carrier_dim());
    let f = h.field();
    let d = d_family(rep, h.alpha(), h.binary());
    let tu: Vec<Vector> = (0..nv).map(|u| t.column(u)).collect();
    let rho = (0..nv)
        .map(|u| {
            let cols: Vec<Vector> = (0..na)
                .map(|x| {
                    let ex = h.e(x);
                    let mut inner = rep.rho[x].column(u);
                    inner = add_vec(&inner, &pair.f().apply(&[&ex, &tu[u]]));
                    add_vec(&h.br(&tu[u], &ex), &t.apply(&inner))
                })
                .collect();
            Matrix::from_columns(f, na, &cols)
        })
        .collect();
    let mut theta = Vec::with_capacity(nv * nv);
    for u in 0..nv {
        for v in 0..nv {
            let cols: Vec<Vector> = (0..na)
                .map(|x| {
                    let ex = h.e(x);
                    let dx = bilinear_family(f, nv, &d, &ex, &tu[u]).column(v);
                    let th = rep.theta_of(&ex, &tu[v]).column(u);
                    let g = pair.g().apply(&[&ex, &tu[u], &tu[v]]);
                    let inner = add_vec(&sub_vec(&dx, &th), &g);
                    sub_vec(&h.tri(&ex, &tu[u], &tu[v]), &t.apply(&inner))
                })
                .collect();
            theta.push(Matrix::from_columns(f, na, &cols));
        }
    }
    HlyRep {
        beta: h.alpha().clone(),
        rho,
        theta,
    }
}
