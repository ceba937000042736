//! Rota-Baxter, weighted Reynolds and twisted O-operators.

use std::sync::Arc;

use rayon::prelude::*;

use crate::cohomology::{induced_cocycle_context, verify_23cocycle, CocyclePair};
use crate::config::{Config, Reading};
use crate::error::{require, Error, Result};
use crate::exact::{
    add_vec, kernel_basis, scale_vec, sub_vec, zero_vector, Field, Matrix, Scalar, Tensor, Vector,
};
use crate::report::IdentityReport;
use crate::representations::{
    adjoint_rep_unchecked, bilinear_family, d_family, semidirect_unchecked, verify_hly_rep,
    verify_hom_lie_rep, verify_rep_morphism, HlyRep, HomLieRep, RepMorphism,
};
use crate::structures::{
    induced_hly_unchecked, same_field, verify_hly, verify_hom_lie, HlyAlgebra, HomLieAlgebra,
};

fn flat(m: Matrix) -> Vector {
    m.entries().to_vec()
}

fn check_square(r: &Matrix, n: usize) -> Result<()> {
    Ok(r.check_shape("operator", n, n)?)
}

/// `R α = α R` plus the two weighted equations. Names: `R-alpha`,
/// `reynolds-binary`, `reynolds-ternary`.
pub fn verify_weighted_reynolds(
    r: &Matrix,
    lambda: &Scalar,
    mu: &Scalar,
    h: &HlyAlgebra,
    cfg: &Config,
) -> Result<IdentityReport> {
    check_square(r, h.dim())?;
    same_field(h.field(), r.field())?;
    let n = h.dim();
    let rc: Vec<Vector> = (0..n).map(|i| r.column(i)).collect();
    let mut rep = IdentityReport::new(cfg.max_failures);
    rep.check(
        "R-alpha",
        &[],
        flat(r.mul(h.alpha()).sub(&h.alpha().mul(r))),
    );
    rep.check_all("reynolds-binary", 2, n, |t| {
        let (x, y) = (h.e(t[0]), h.e(t[1]));
        let (rx, ry) = (&rc[t[0]], &rc[t[1]]);
        let lhs = h.br(rx, ry);
        let mut inner = add_vec(&h.br(rx, &y), &h.br(&x, ry));
        inner = add_vec(&inner, &scale_vec(lambda, &lhs));
        sub_vec(&lhs, &r.apply(&inner))
    });
    rep.check_all("reynolds-ternary", 3, n, |t| {
        let (x, y, z) = (h.e(t[0]), h.e(t[1]), h.e(t[2]));
        let (rx, ry, rz) = (&rc[t[0]], &rc[t[1]], &rc[t[2]]);
        let lhs = h.tri(rx, ry, rz);
        let mut inner = h.tri(rx, ry, &z);
        inner = add_vec(&inner, &h.tri(rx, &y, rz));
        inner = add_vec(&inner, &h.tri(&x, ry, rz));
        inner = add_vec(&inner, &scale_vec(mu, &lhs));
        sub_vec(&lhs, &r.apply(&inner))
    });
    Ok(rep)
}

/// The `(0,0)` case.
pub fn verify_rota_baxter(r: &Matrix, h: &HlyAlgebra, cfg: &Config) -> Result<IdentityReport> {
    let z = h.field().zero();
    verify_weighted_reynolds(r, &z, &z, h, cfg)
}

/// A verified `(λ,μ)`-weighted Reynolds operator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedReynolds {
    r: Matrix,
    lambda: Scalar,
    mu: Scalar,
}

impl WeightedReynolds {
    pub fn new(
        r: Matrix,
        lambda: Scalar,
        mu: Scalar,
        h: &HlyAlgebra,
        cfg: &Config,
    ) -> Result<Self> {
        require(
            "not a weighted Reynolds operator",
            verify_weighted_reynolds(&r, &lambda, &mu, h, cfg)?,
        )?;
        Ok(WeightedReynolds { r, lambda, mu })
    }

    pub fn map(&self) -> &Matrix {
        &self.r
    }

    pub fn lambda(&self) -> &Scalar {
        &self.lambda
    }

    pub fn mu(&self) -> &Scalar {
        &self.mu
    }
}

/// `[x,y]_R = [Rx,y] + [x,Ry] + λ[Rx,Ry]` and
/// `⟦x,y,z⟧_R = ⟦Rx,Ry,z⟧ + ⟦Rx,y,Rz⟧ + ⟦x,Ry,Rz⟧ + μ⟦Rx,Ry,Rz⟧`.
pub fn reynolds_descendent(
    r: &Matrix,
    lambda: &Scalar,
    mu: &Scalar,
    h: &HlyAlgebra,
    cfg: &Config,
) -> Result<HlyAlgebra> {
    require(
        "not a weighted Reynolds operator",
        verify_weighted_reynolds(r, lambda, mu, h, cfg)?,
    )?;
    Ok(descendent_unchecked(r, lambda, mu, h))
}

pub(crate) fn descendent_unchecked(
    r: &Matrix,
    lambda: &Scalar,
    mu: &Scalar,
    h: &HlyAlgebra,
) -> HlyAlgebra {
    let n = h.dim();
    let f = h.field();
    let rc: Vec<Vector> = (0..n).map(|i| r.column(i)).collect();
    let binary = Tensor::from_fn(f, 2, n, n, |t| {
        let (x, y) = (h.e(t[0]), h.e(t[1]));
        let (rx, ry) = (&rc[t[0]], &rc[t[1]]);
        let v = add_vec(&h.br(rx, &y), &h.br(&x, ry));
        add_vec(&v, &scale_vec(lambda, &h.br(rx, ry)))
    });
    let ternary = Tensor::from_fn(f, 3, n, n, |t| {
        let (x, y, z) = (h.e(t[0]), h.e(t[1]), h.e(t[2]));
        let (rx, ry, rz) = (&rc[t[0]], &rc[t[1]], &rc[t[2]]);
        let mut v = h.tri(rx, ry, &z);
        v = add_vec(&v, &h.tri(rx, &y, rz));
        v = add_vec(&v, &h.tri(&x, ry, rz));
        add_vec(&v, &scale_vec(mu, &h.tri(rx, ry, rz)))
    });
    HlyAlgebra::new(h.alpha().clone(), binary, ternary).expect("shapes come from h")
}

/// `R α = α R` and `[Rx,Ry] = R([Rx,y] + [x,Ry] + λ[Rx,Ry])` on a Hom-Lie algebra.
pub fn verify_hom_lie_reynolds(
    r: &Matrix,
    lambda: &Scalar,
    l: &HomLieAlgebra,
    cfg: &Config,
) -> Result<IdentityReport> {
    // With a zero ternary bracket the ternary equation is vacuous.
    let h = HlyAlgebra::with_zero_ternary(l);
    verify_weighted_reynolds(r, lambda, &l.field().zero(), &h, cfg)
}

/// A λ-weighted Reynolds operator on `L` checked as a `(λ,2λ)`-weighted one
/// on the induced HLY algebra.
pub fn check_lambda_two_lambda(
    r: &Matrix,
    lambda: &Scalar,
    l: &HomLieAlgebra,
    cfg: &Config,
) -> Result<IdentityReport> {
    require(
        "not a λ-weighted Reynolds operator",
        verify_hom_lie_reynolds(r, lambda, l, cfg)?,
    )?;
    let h = induced_hly_unchecked(l);
    let mu = lambda + lambda;
    verify_weighted_reynolds(r, lambda, &mu, &h, cfg)
}

/// `(H, (V,ρ,θ,β), (𝓕,𝓖))` with every component verified.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistedContext {
    algebra: HlyAlgebra,
    rep: HlyRep,
    cocycle: CocyclePair,
}

impl TwistedContext {
    pub fn new(
        algebra: HlyAlgebra,
        rep: HlyRep,
        cocycle: CocyclePair,
        cfg: &Config,
    ) -> Result<Self> {
        rep.check_against(&algebra)?;
        require(
            "context algebra is not an HLY algebra",
            verify_hly(&algebra, cfg),
        )?;
        require(
            "context representation is invalid",
            verify_hly_rep(&algebra, &rep, cfg)?,
        )?;
        require(
            "context (F,G) is not a (2,3)-cocycle",
            verify_23cocycle(&cocycle, &algebra, &rep, cfg)?,
        )?;
        Ok(TwistedContext::unchecked(algebra, rep, cocycle))
    }

    pub(crate) fn unchecked(algebra: HlyAlgebra, rep: HlyRep, cocycle: CocyclePair) -> Self {
        TwistedContext {
            algebra,
            rep,
            cocycle,
        }
    }

    pub fn algebra(&self) -> &HlyAlgebra {
        &self.algebra
    }

    pub fn rep(&self) -> &HlyRep {
        &self.rep
    }

    pub fn cocycle(&self) -> &CocyclePair {
        &self.cocycle
    }

    pub fn field(&self) -> Field {
        self.algebra.field()
    }
}

/// A map `T: V → A` attached to a context. Candidates need not be valid;
/// [`TwistedOperator::verify`] decides.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistedOperator {
    map: Matrix,
    context: Arc<TwistedContext>,
}

impl TwistedOperator {
    pub fn candidate(map: Matrix, context: Arc<TwistedContext>) -> Result<Self> {
        map.check_shape("T", context.algebra.dim(), context.rep.carrier_dim())?;
        same_field(context.field(), map.field())?;
        Ok(TwistedOperator { map, context })
    }

    /// A candidate that passes `R1`–`R3`.
    pub fn new(map: Matrix, context: Arc<TwistedContext>, cfg: &Config) -> Result<Self> {
        let op = TwistedOperator::candidate(map, context)?;
        require("not a twisted O-operator", op.verify(cfg)?)?;
        Ok(op)
    }

    pub fn map(&self) -> &Matrix {
        &self.map
    }

    pub fn context(&self) -> &TwistedContext {
        &self.context
    }

    pub fn shared_context(&self) -> &Arc<TwistedContext> {
        &self.context
    }

    pub fn with_map(&self, map: Matrix) -> Result<Self> {
        TwistedOperator::candidate(map, self.context.clone())
    }

    pub fn verify(&self, cfg: &Config) -> Result<IdentityReport> {
        Ok(verify_twisted_op_report(self, cfg))
    }
}

/// `R1`: `Tβ = αT`; `R2`, `R3`: the two bracket equations.
pub fn verify_twisted_op(op: &TwistedOperator, cfg: &Config) -> Result<IdentityReport> {
    op.verify(cfg)
}

fn verify_twisted_op_report(op: &TwistedOperator, cfg: &Config) -> IdentityReport {
    let ctx = &op.context;
    let (h, rep, pair) = (&ctx.algebra, &ctx.rep, &ctx.cocycle);
    let t = &op.map;
    let nv = rep.carrier_dim();
    let d = d_family(rep, h.alpha(), h.binary());
    let tu: Vec<Vector> = (0..nv).map(|u| t.column(u)).collect();
    let mut r = IdentityReport::new(cfg.max_failures);
    r.check("R1", &[], flat(t.mul(rep.beta()).sub(&h.alpha().mul(t))));
    r.check_all("R2", 2, nv, |p| {
        let (u, v) = (p[0], p[1]);
        let lhs = h.br(&tu[u], &tu[v]);
        let mut inner = sub_vec(&rep.rho_of(&tu[u]).column(v), &rep.rho_of(&tu[v]).column(u));
        inner = add_vec(&inner, &pair.f().apply(&[&tu[u], &tu[v]]));
        sub_vec(&lhs, &t.apply(&inner))
    });
    r.check_all("R3", 3, nv, |p| {
        let (u, v, w) = (p[0], p[1], p[2]);
        let lhs = h.tri(&tu[u], &tu[v], &tu[w]);
        let mut inner = bilinear_family(h.field(), nv, &d, &tu[u], &tu[v]).column(w);
        inner = add_vec(&inner, &rep.theta_of(&tu[v], &tu[w]).column(u));
        inner = sub_vec(&inner, &rep.theta_of(&tu[u], &tu[w]).column(v));
        inner = add_vec(&inner, &pair.g().apply(&[&tu[u], &tu[v], &tu[w]]));
        sub_vec(&lhs, &t.apply(&inner))
    });
    r
}

/// `Tβ = αT` and `[Tu,Tv] = T(ρ(Tu)v − ρ(Tv)u + 𝓕(Tu,Tv))`. Names `R1`, `R2`.
pub fn verify_twisted_op_hom_lie(
    t: &Matrix,
    l: &HomLieAlgebra,
    rep: &HomLieRep,
    f: &Tensor,
    cfg: &Config,
) -> Result<IdentityReport> {
    let nv = rep.carrier_dim();
    t.check_shape("T", l.dim(), nv)?;
    f.check_shape("F", 2, l.dim(), nv)?;
    let tu: Vec<Vector> = (0..nv).map(|u| t.column(u)).collect();
    let mut r = IdentityReport::new(cfg.max_failures);
    r.check("R1", &[], flat(t.mul(rep.beta()).sub(&l.alpha().mul(t))));
    r.check_all("R2", 2, nv, |p| {
        let (u, v) = (p[0], p[1]);
        let lhs = l.br(&tu[u], &tu[v]);
        let mut inner = sub_vec(&rep.rho_of(&tu[u]).column(v), &rep.rho_of(&tu[v]).column(u));
        inner = add_vec(&inner, &f.apply(&[&tu[u], &tu[v]]));
        sub_vec(&lhs, &t.apply(&inner))
    });
    Ok(r)
}

/// The same `T` over the induced HLY algebra, `θ_ρ` and `(𝓕, 𝓖_{ρ,𝓕})`.
pub fn induced_twisted_from_hom_lie(
    t: &Matrix,
    l: &HomLieAlgebra,
    rep: &HomLieRep,
    f: &Tensor,
    cfg: &Config,
) -> Result<TwistedOperator> {
    require("Hom-Lie algebra is invalid", verify_hom_lie(l, cfg))?;
    require(
        "Hom-Lie representation is invalid",
        verify_hom_lie_rep(l, rep, cfg)?,
    )?;
    require(
        "not an F-twisted O-operator",
        verify_twisted_op_hom_lie(t, l, rep, f, cfg)?,
    )?;
    let (h, r, pair) = induced_cocycle_context(l, rep, f, cfg)?;
    let ctx = Arc::new(TwistedContext::unchecked(h, r, pair));
    TwistedOperator::new(t.clone(), ctx, cfg)
}

/// Context `(H, adjoint, (λ[·,·], μ⟦·,·,·⟧))` and the cocycle report for it.
pub fn reynolds_context(
    lambda: &Scalar,
    mu: &Scalar,
    h: &HlyAlgebra,
    cfg: &Config,
) -> Result<(Arc<TwistedContext>, IdentityReport)> {
    require("algebra is not an HLY algebra", verify_hly(h, cfg))?;
    let rep = adjoint_rep_unchecked(h);
    let pair = CocyclePair::new(h, &rep, h.binary().scale(lambda), h.ternary().scale(mu))?;
    let report = verify_23cocycle(&pair, h, &rep, cfg)?;
    Ok((
        Arc::new(TwistedContext::unchecked(h.clone(), rep, pair)),
        report,
    ))
}

/// Outcome of [`graph_is_subalgebra`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphVerdict {
    pub closed: bool,
    /// Which operation escaped, on which graph basis tuple, and `a − Tv` for
    /// the offending `(a, v)`.
    pub witness: Option<(&'static str, Vec<usize>, Vector)>,
}

/// Whether `Gr(T) = {(Tu, u)}` is closed under `α ⊕ β` and both brackets of
/// the twisted semidirect product.
pub fn graph_is_subalgebra(op: &TwistedOperator, cfg: &Config) -> Result<GraphVerdict> {
    let ctx = &op.context;
    let (h, rep, pair) = (&ctx.algebra, &ctx.rep, &ctx.cocycle);
    let s = semidirect_unchecked(h, rep, Some(pair), cfg)?;
    let (na, nv) = (h.dim(), rep.carrier_dim());
    let t = &op.map;
    let graph: Vec<Vector> = (0..nv)
        .map(|u| {
            let mut g = t.column(u);
            g.extend(crate::exact::unit_vector(h.field(), nv, u));
            g
        })
        .collect();
    let escape = |v: &[Scalar]| -> Vector { sub_vec(&v[..na], &t.apply(&v[na..])) };
    let is_zero = |v: &[Scalar]| v.iter().all(Scalar::is_zero);
    for (u, g) in graph.iter().enumerate() {
        let res = escape(&s.alpha().apply(g));
        if !is_zero(&res) {
            return Ok(GraphVerdict {
                closed: false,
                witness: Some(("alpha", vec![u], res)),
            });
        }
    }
    for u in 0..nv {
        for v in 0..nv {
            let res = escape(&s.br(&graph[u], &graph[v]));
            if !is_zero(&res) {
                return Ok(GraphVerdict {
                    closed: false,
                    witness: Some(("binary", vec![u, v], res)),
                });
            }
        }
    }
    for u in 0..nv {
        for v in 0..nv {
            for w in 0..nv {
                let res = escape(&s.tri(&graph[u], &graph[v], &graph[w]));
                if !is_zero(&res) {
                    return Ok(GraphVerdict {
                        closed: false,
                        witness: Some(("ternary", vec![u, v, w], res)),
                    });
                }
            }
        }
    }
    Ok(GraphVerdict {
        closed: true,
        witness: None,
    })
}

/// `[u,v]_T = ρ(Tu)v − ρ(Tv)u + 𝓕(Tu,Tv)`,
/// `⟦u,v,w⟧_T = D(Tu,Tv)w + θ(Tv,Tw)u − θ(Tu,Tw)v + 𝓖(Tu,Tv,Tw)`, twist `β`.
pub fn v_structure(op: &TwistedOperator, cfg: &Config) -> Result<HlyAlgebra> {
    require("not a twisted O-operator", op.verify(cfg)?)?;
    Ok(v_structure_unchecked(op))
}

pub(crate) fn v_structure_unchecked(op: &TwistedOperator) -> HlyAlgebra {
    let ctx = &op.context;
    let (h, rep, pair) = (&ctx.algebra, &ctx.rep, &ctx.cocycle);
    let nv = rep.carrier_dim();
    let f = h.field();
    let d = d_family(rep, h.alpha(), h.binary());
    let tu: Vec<Vector> = (0..nv).map(|u| op.map.column(u)).collect();
    let binary = Tensor::from_fn(f, 2, nv, nv, |p| {
        let (u, v) = (p[0], p[1]);
        let x = sub_vec(&rep.rho_of(&tu[u]).column(v), &rep.rho_of(&tu[v]).column(u));
        add_vec(&x, &pair.f().apply(&[&tu[u], &tu[v]]))
    });
    let ternary = Tensor::from_fn(f, 3, nv, nv, |p| {
        let (u, v, w) = (p[0], p[1], p[2]);
        let mut x = bilinear_family(f, nv, &d, &tu[u], &tu[v]).column(w);
        x = add_vec(&x, &rep.theta_of(&tu[v], &tu[w]).column(u));
        x = sub_vec(&x, &rep.theta_of(&tu[u], &tu[w]).column(v));
        add_vec(&x, &pair.g().apply(&[&tu[u], &tu[v], &tu[w]]))
    });
    HlyAlgebra::new(rep.beta().clone(), binary, ternary).expect("shapes come from the context")
}

/// Representation-morphism conditions plus the intertwining equation, named
/// `intertwine`: `φT = T'ψ`, or with [`Reading::Literal`] `Tψ = φT'`.
pub fn verify_top_morphism(
    m: &RepMorphism,
    source: &TwistedOperator,
    target: &TwistedOperator,
    cfg: &Config,
) -> Result<IdentityReport> {
    let (c1, c2) = (&source.context, &target.context);
    let mut r = verify_rep_morphism(m, (&c1.algebra, &c1.rep), (&c2.algebra, &c2.rep), cfg)?;
    let diff = match cfg.reading {
        Reading::Consistent => m.phi.mul(&source.map).sub(&target.map.mul(&m.psi)),
        Reading::Literal => {
            if m.psi.rows() != source.map.cols() || m.phi.cols() != target.map.rows() {
                return Err(Error::Invalid("literal intertwining needs matching spaces"));
            }
            source.map.mul(&m.psi).sub(&m.phi.mul(&target.map))
        }
    };
    r.check_all("intertwine", 1, diff.cols(), |t| diff.column(t[0]));
    Ok(r)
}

/// Row-major digit index of a matrix over GF(p), entry `(0,0)` least significant.
pub fn enumeration_index(m: &Matrix) -> u128 {
    let p = m.field().characteristic() as u128;
    let mut idx = 0u128;
    for s in m.entries().iter().rev() {
        let (num, _) = s.to_ratio();
        let d: u128 = num.try_into().unwrap_or(0);
        idx = idx * p + d;
    }
    idx
}

/// Every `T` over GF(p) passing `R1`–`R3`, sorted by [`enumeration_index`].
///
/// Only maps with `Tβ = αT` are enumerated: the candidates are all GF(p)
/// combinations of a kernel basis of that linear condition.
pub fn search_twisted_ops(ctx: &Arc<TwistedContext>, cfg: &Config) -> Result<Vec<Matrix>> {
    let field = ctx.field();
    let p = match field {
        Field::Prime(p) => p,
        Field::Rational => return Err(Error::NotFinite(field)),
    };
    let (na, nv) = (ctx.algebra.dim(), ctx.rep.carrier_dim());
    let alpha = ctx.algebra.alpha();
    let beta = ctx.rep.beta();
    // Linear map T ↦ Tβ − αT on row-major coordinates of T.
    let cols: Vec<Vector> = (0..na * nv)
        .map(|k| {
            let mut t = Matrix::zeros(field, na, nv);
            t.set(k / nv, k % nv, field.one());
            flat(t.mul(beta).sub(&alpha.mul(&t)))
        })
        .collect();
    let basis = kernel_basis(&Matrix::from_columns(field, na * nv, &cols));
    let required = (p as u128)
        .checked_pow(basis.len() as u32)
        .unwrap_or(u128::MAX);
    if required > cfg.search_budget as u128 {
        return Err(Error::BudgetExceeded {
            budget: cfg.search_budget,
            required,
        });
    }
    let elements = field.elements().expect("prime field");
    let mut found: Vec<(u128, Matrix)> = (0..required as u64)
        .into_par_iter()
        .filter_map(|mut n| {
            let mut coords = zero_vector(field, na * nv);
            for b in &basis {
                let c = &elements[(n % p as u64) as usize];
                n /= p as u64;
                if !c.is_zero() {
                    crate::exact::axpy(&mut coords, c, b);
                }
            }
            let m = Matrix::from_fn(field, na, nv, |i, j| coords[i * nv + j].clone());
            let op = TwistedOperator {
                map: m,
                context: ctx.clone(),
            };
            if verify_twisted_op_report(&op, cfg).ok() {
                Some((enumeration_index(&op.map), op.map))
            } else {
                None
            }
        })
        .collect();
    found.sort_by_key(|(i, _)| *i);
    Ok(found.into_iter().map(|(_, m)| m).collect())
}

/// All `p^(dim A · dim V)` matrices over GF(p) in enumeration order.
pub fn all_matrices(field: Field, rows: usize, cols: usize) -> Result<Vec<Matrix>> {
    let p = match field {
        Field::Prime(p) => p as u64,
        Field::Rational => return Err(Error::NotFinite(field)),
    };
    let elements = field.elements().expect("prime field");
    let total = p.pow((rows * cols) as u32);
    Ok((0..total)
        .map(|mut n| {
            Matrix::from_fn(field, rows, cols, |_, _| {
                let c = elements[(n % p) as usize].clone();
                n /= p;
                c
            })
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn cfg() -> Config {
        Config::default()
    }

    #[test]
    fn p1_is_rota_baxter_on_h3() {
        let q = Field::Rational;
        let h = fixtures::h3_induced(q);
        let p1 = fixtures::p1(q);
        assert!(verify_rota_baxter(&p1, &h, &cfg()).unwrap().ok());
        let d = reynolds_descendent(&p1, &q.zero(), &q.zero(), &h, &cfg()).unwrap();
        // [x,y]_P1 = [P1 x, y] + [x, P1 y]: only [e1,e2]_P1 = e3 survives
        assert_eq!(d.binary(), h.binary());
        assert!(d.ternary().is_zero());
    }

    #[test]
    fn identity_is_not_weight_zero_reynolds() {
        // [x,y] = 2[x,y] fails on h3
        let q = Field::Rational;
        let h = fixtures::h3_induced(q);
        let r = verify_rota_baxter(&Matrix::identity(q, 3), &h, &cfg()).unwrap();
        assert!(r.failed("reynolds-binary"));
        assert!(!r.failed("R-alpha"));
        // with λ = −1 the identity satisfies [x,y] = [x,y] + [x,y] − [x,y]
        let minus = q.int(-1);
        let w = verify_hom_lie_reynolds(&Matrix::identity(q, 3), &minus, &fixtures::h3(q), &cfg())
            .unwrap();
        assert!(w.ok());
    }

    #[test]
    fn lambda_two_lambda_on_p1() {
        let q = Field::Rational;
        let r =
            check_lambda_two_lambda(&fixtures::p1(q), &q.zero(), &fixtures::h3(q), &cfg()).unwrap();
        assert!(r.ok());
    }

    #[test]
    fn gf2_contexts_are_valid() {
        for (name, ctx) in fixtures::gf2_contexts() {
            let (h, rep, pair) = (
                ctx.algebra().clone(),
                ctx.rep().clone(),
                ctx.cocycle().clone(),
            );
            assert!(TwistedContext::new(h, rep, pair, &cfg()).is_ok(), "{name}");
        }
    }

    #[test]
    fn zero_operator_and_graph() {
        for (_, ctx) in fixtures::gf2_contexts() {
            let f = ctx.field();
            let op = TwistedOperator::new(Matrix::zeros(f, 2, 2), ctx.clone(), &cfg()).unwrap();
            let g = graph_is_subalgebra(&op, &cfg()).unwrap();
            assert!(g.closed && g.witness.is_none());
            assert!(v_structure(&op, &cfg()).unwrap().binary().is_zero());
        }
    }

    #[test]
    fn identity_on_adjoint_escapes_the_graph() {
        let (_, ctx) = fixtures::gf2_contexts()
            .into_iter()
            .find(|(n, _)| *n == "adjoint")
            .unwrap();
        let f = ctx.field();
        let op = TwistedOperator::candidate(Matrix::identity(f, 2), ctx).unwrap();
        let report = op.verify(&cfg()).unwrap();
        assert!(report.failed("R2"));
        let g = graph_is_subalgebra(&op, &cfg()).unwrap();
        let (what, tuple, _) = g.witness.unwrap();
        assert_eq!((what, tuple), ("binary", vec![0, 1]));
        assert!(
            TwistedOperator::new(Matrix::identity(f, 2), op.shared_context().clone(), &cfg())
                .is_err()
        );
    }

    #[test]
    fn enumeration_index_is_row_major_little_endian() {
        let f = Field::prime(3).unwrap();
        let m = Matrix::from_ints(f, &[&[1, 0], &[2, 0]]);
        assert_eq!(enumeration_index(&m), 1 + 2 * 9);
        let all = all_matrices(f, 1, 2).unwrap();
        let idx: Vec<u128> = all.iter().map(enumeration_index).collect();
        assert_eq!(idx, (0..9).collect::<Vec<_>>());
    }

    #[test]
    fn search_on_zero_rep_context() {
        let (_, ctx) = fixtures::gf2_contexts().into_iter().next().unwrap();
        let found = search_twisted_ops(&ctx, &cfg()).unwrap();
        let brute: Vec<Matrix> = all_matrices(ctx.field(), 2, 2)
            .unwrap()
            .into_iter()
            .filter(|m| {
                let op = TwistedOperator::candidate(m.clone(), ctx.clone()).unwrap();
                op.verify(&cfg()).unwrap().ok()
            })
            .collect();
        assert_eq!(found, brute);
        assert_eq!(found.len(), 10);
    }

    #[test]
    fn search_limits() {
        let (_, ctx) = fixtures::gf2_contexts().into_iter().next().unwrap();
        let tight = Config {
            search_budget: 15,
            ..cfg()
        };
        assert!(matches!(
            search_twisted_ops(&ctx, &tight),
            Err(Error::BudgetExceeded {
                budget: 15,
                required: 16
            })
        ));
        let q = Field::Rational;
        let h = fixtures::h3_induced(q);
        let (qctx, report) = reynolds_context(&q.zero(), &q.zero(), &h, &cfg()).unwrap();
        assert!(report.ok());
        assert!(matches!(
            search_twisted_ops(&qctx, &cfg()),
            Err(Error::NotFinite(_))
        ));
    }

    #[test]
    fn v_structure_makes_t_a_morphism() {
        for (_, ctx) in fixtures::gf2_contexts() {
            for t in search_twisted_ops(&ctx, &cfg()).unwrap() {
                let op = TwistedOperator::new(t.clone(), ctx.clone(), &cfg()).unwrap();
                let v = v_structure(&op, &cfg()).unwrap();
                let h = ctx.algebra();
                for u in 0..2 {
                    for w in 0..2 {
                        let lhs = t.apply(v.binary().at(&[u, w]));
                        assert_eq!(lhs, h.br(&t.column(u), &t.column(w)));
                    }
                }
            }
        }
    }
}
