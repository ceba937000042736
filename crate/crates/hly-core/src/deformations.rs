//! Truncated formal deformations of a twisted O-operator.

use crate::cohomology::{one_cochain_coords, partial_t_unchecked, twisted_complex, wedge_pairs};
use crate::config::{Config, Reading};
use crate::error::{require, Error, Result};
use crate::exact::{add_vec, is_zero_vec, solve, sub_vec, zero_vector, Matrix, Scalar, Vector};
use crate::operators::TwistedOperator;
use crate::report::IdentityReport;
use crate::representations::{bilinear_family, d_family};

fn flat(m: Matrix) -> Vector {
    m.entries().to_vec()
}

/// `T_t = T_0 + t T_1 + … + t^N T_N` with `T_0` the base operator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedDeformation {
    base: TwistedOperator,
    coefficients: Vec<Matrix>,
}

impl TruncatedDeformation {
    /// `higher` holds `T_1 … T_N`.
    pub fn new(base: TwistedOperator, higher: Vec<Matrix>) -> Result<Self> {
        let (rows, cols) = (base.map().rows(), base.map().cols());
        for m in &higher {
            m.check_shape("deformation coefficient", rows, cols)?;
        }
        let mut coefficients = vec![base.map().clone()];
        coefficients.extend(higher);
        Ok(TruncatedDeformation { base, coefficients })
    }

    /// `T_i = 0` for `i ≥ 1`.
    pub fn stationary(base: TwistedOperator, order: usize) -> Self {
        let z = Matrix::zeros(base.map().field(), base.map().rows(), base.map().cols());
        TruncatedDeformation::new(base, vec![z; order]).expect("shapes match")
    }

    pub fn order(&self) -> usize {
        self.coefficients.len() - 1
    }

    pub fn base(&self) -> &TwistedOperator {
        &self.base
    }

    pub fn coefficients(&self) -> &[Matrix] {
        &self.coefficients
    }

    /// The same series cut at `order`.
    pub fn truncate(&self, order: usize) -> Self {
        let keep = (order + 1).min(self.coefficients.len());
        TruncatedDeformation {
            base: self.base.clone(),
            coefficients: self.coefficients[..keep].to_vec(),
        }
    }
}

/// Compositions of `s` into `parts` non-negative summands.
fn compositions(s: usize, parts: usize) -> Vec<Vec<usize>> {
    if parts == 1 {
        return vec![vec![s]];
    }
    let mut out = Vec::new();
    for first in 0..=s {
        for mut rest in compositions(s - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Order-`s` coefficients of `T_t β = α T_t` and the two bracket equations,
/// named `R1[s]`, `R2[s]`, `R3[s]`.
pub fn verify_deformation(defn: &TruncatedDeformation, cfg: &Config) -> Result<IdentityReport> {
    let ctx = defn.base.context();
    let (h, rep, pair) = (ctx.algebra(), ctx.rep(), ctx.cocycle());
    let nv = rep.carrier_dim();
    let field = h.field();
    let d = d_family(rep, h.alpha(), h.binary());
    let ts = &defn.coefficients;
    // tu[i][u] = T_i u
    let tu: Vec<Vec<Vector>> = ts
        .iter()
        .map(|t| (0..nv).map(|u| t.column(u)).collect())
        .collect();
    let mut r = IdentityReport::new(cfg.max_failures);
    for s in 0..=defn.order() {
        let name = |base: &str| format!("{base}[{s}]");
        r.check(
            &name("R1"),
            &[],
            flat(ts[s].mul(rep.beta()).sub(&h.alpha().mul(&ts[s]))),
        );
        let two = compositions(s, 2);
        let three = compositions(s, 3);
        let four = compositions(s, 4);
        r.check_all(&name("R2"), 2, nv, |p| {
            let (u, v) = (p[0], p[1]);
            let mut acc = zero_vector(field, h.dim());
            for c in &two {
                let (i, j) = (c[0], c[1]);
                acc = add_vec(&acc, &h.br(&tu[i][u], &tu[j][v]));
                let inner = sub_vec(
                    &rep.rho_of(&tu[j][u]).column(v),
                    &rep.rho_of(&tu[j][v]).column(u),
                );
                acc = sub_vec(&acc, &ts[i].apply(&inner));
            }
            for c in &three {
                let (i, j, k) = (c[0], c[1], c[2]);
                acc = sub_vec(&acc, &ts[i].apply(&pair.f().apply(&[&tu[j][u], &tu[k][v]])));
            }
            acc
        });
        r.check_all(&name("R3"), 3, nv, |p| {
            let (u, v, w) = (p[0], p[1], p[2]);
            let mut acc = zero_vector(field, h.dim());
            for c in &three {
                let (i, j, k) = (c[0], c[1], c[2]);
                acc = add_vec(&acc, &h.tri(&tu[i][u], &tu[j][v], &tu[k][w]));
                let mut inner = bilinear_family(field, nv, &d, &tu[j][u], &tu[k][v]).column(w);
                inner = add_vec(&inner, &rep.theta_of(&tu[j][v], &tu[k][w]).column(u));
                inner = sub_vec(&inner, &rep.theta_of(&tu[j][u], &tu[k][w]).column(v));
                acc = sub_vec(&acc, &ts[i].apply(&inner));
            }
            for c in &four {
                let (i, j, k, l) = (c[0], c[1], c[2], c[3]);
                let g = pair.g().apply(&[&tu[j][u], &tu[k][v], &tu[l][w]]);
                acc = sub_vec(&acc, &ts[i].apply(&g));
            }
            acc
        });
    }
    Ok(r)
}

/// `δ T_1` in the twisted complex; zero exactly when `T_1` is a 1-cocycle.
pub fn infinitesimal_is_cocycle(
    defn: &TruncatedDeformation,
    cfg: &Config,
) -> Result<(bool, Vector)> {
    if defn.order() < 1 {
        return Err(Error::Invalid("deformation has no order-1 term"));
    }
    require(
        "deformation fails through order 1",
        verify_deformation(&defn.truncate(1), cfg)?,
    )?;
    let cx = twisted_complex(&defn.base, cfg)?;
    let image = cx.coboundary(0, &one_cochain_coords(&defn.coefficients[1]), cfg)?;
    Ok((is_zero_vec(&image), image))
}

/// `χ ∈ A∧A` plus user-supplied `φ_i`, `ψ_i` for `i ≥ 2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivalencePair {
    pub chi: Vector,
    pub phi: Vec<Matrix>,
    pub psi: Vec<Matrix>,
}

/// `[χ, x] = Σ χ_ab ⟦e_a, e_b, x⟧` as a matrix on `A`.
pub fn chi_action(chi: &[Scalar], op: &TwistedOperator) -> Matrix {
    let h = op.context().algebra();
    let pairs = wedge_pairs(h.dim());
    let cols: Vec<Vector> = (0..h.dim())
        .map(|x| {
            let mut acc = zero_vector(h.field(), h.dim());
            for (c, &(a, b)) in chi.iter().zip(&pairs) {
                if !c.is_zero() {
                    crate::exact::axpy(&mut acc, c, &h.tri(&h.e(a), &h.e(b), &h.e(x)));
                }
            }
            acc
        })
        .collect();
    Matrix::from_columns(h.field(), h.dim(), &cols)
}

/// `u ↦ D(χ)u + 𝓖(χ, Tu)` as a matrix on `V`.
pub fn chi_carrier_action(chi: &[Scalar], op: &TwistedOperator) -> Matrix {
    let ctx = op.context();
    let (h, rep, pair) = (ctx.algebra(), ctx.rep(), ctx.cocycle());
    let nv = rep.carrier_dim();
    let field = h.field();
    let pairs = wedge_pairs(h.dim());
    let d = d_family(rep, h.alpha(), h.binary());
    let cols: Vec<Vector> = (0..nv)
        .map(|u| {
            let tu = op.map().column(u);
            let mut acc = zero_vector(field, nv);
            for (c, &(a, b)) in chi.iter().zip(&pairs) {
                if c.is_zero() {
                    continue;
                }
                let (ea, eb) = (h.e(a), h.e(b));
                crate::exact::axpy(
                    &mut acc,
                    c,
                    &bilinear_family(field, nv, &d, &ea, &eb).column(u),
                );
                crate::exact::axpy(&mut acc, c, &pair.g().apply(&[&ea, &eb, &tu]));
            }
            acc
        })
        .collect();
    Matrix::from_columns(field, nv, &cols)
}

/// Coefficients `φ_0 … φ_N` and `ψ_0 … ψ_N`; missing higher terms are zero.
pub fn assemble_equivalence(
    pair: &EquivalencePair,
    op: &TwistedOperator,
    order: usize,
) -> (Vec<Matrix>, Vec<Matrix>) {
    let ctx = op.context();
    let field = ctx.field();
    let (na, nv) = (ctx.algebra().dim(), ctx.rep().carrier_dim());
    let mut phi = vec![Matrix::identity(field, na)];
    let mut psi = vec![Matrix::identity(field, nv)];
    if order >= 1 {
        phi.push(chi_action(&pair.chi, op));
        psi.push(chi_carrier_action(&pair.chi, op));
    }
    for i in 2..=order {
        phi.push(
            pair.phi
                .get(i - 2)
                .cloned()
                .unwrap_or_else(|| Matrix::zeros(field, na, na)),
        );
        psi.push(
            pair.psi
                .get(i - 2)
                .cloned()
                .unwrap_or_else(|| Matrix::zeros(field, nv, nv)),
        );
    }
    (phi, psi)
}

/// Morphism conditions for `(φ_t, ψ_t)` from `T_t` to `T'_t`, order by order:
/// `c1[s]`, `c1-alpha[s]`, `c2[s]`, `c3[s]` and `intertwine[s]`
/// (`φ_t T_t = T'_t ψ_t`, or `T_t ψ_t = φ_t T'_t` with [`Reading::Literal`]).
pub fn verify_equivalence(
    d1: &TruncatedDeformation,
    d2: &TruncatedDeformation,
    pair: &EquivalencePair,
    cfg: &Config,
) -> Result<IdentityReport> {
    if d1.base.context() != d2.base.context() {
        return Err(Error::Invalid("deformations live over different contexts"));
    }
    if d1.order() != d2.order() {
        return Err(Error::Invalid("deformations have different orders"));
    }
    if pair.chi.len() != wedge_pairs(d1.base.context().algebra().dim()).len() {
        return Err(Error::Invalid(
            "χ has the wrong number of wedge coordinates",
        ));
    }
    let n = d1.order();
    let ctx = d1.base.context();
    let (h, rep) = (ctx.algebra(), ctx.rep());
    let (na, nv) = (h.dim(), rep.carrier_dim());
    let field = h.field();
    let (phi, psi) = assemble_equivalence(pair, &d1.base, n);
    let mut r = IdentityReport::new(cfg.max_failures);
    for s in 0..=n {
        let name = |base: &str| format!("{base}[{s}]");
        r.check(
            &name("c1"),
            &[],
            flat(psi[s].mul(rep.beta()).sub(&rep.beta().mul(&psi[s]))),
        );
        r.check(
            &name("c1-alpha"),
            &[],
            flat(phi[s].mul(h.alpha()).sub(&h.alpha().mul(&phi[s]))),
        );
        let two = compositions(s, 2);
        let three = compositions(s, 3);
        r.check_all(&name("c2"), 1, na, |t| {
            let x = h.e(t[0]);
            let mut m = psi[s].mul(&rep.rho()[t[0]]);
            for c in &two {
                m = m.sub(&rep.rho_of(&phi[c[0]].apply(&x)).mul(&psi[c[1]]));
            }
            flat(m)
        });
        r.check_all(&name("c3"), 2, na, |t| {
            let (x, y) = (h.e(t[0]), h.e(t[1]));
            let mut m = psi[s].mul(rep.theta_at(t[0], t[1]));
            for c in &three {
                let th = rep.theta_of(&phi[c[0]].apply(&x), &phi[c[1]].apply(&y));
                m = m.sub(&th.mul(&psi[c[2]]));
            }
            flat(m)
        });
        let mut diff = Matrix::zeros(field, na, nv);
        for c in &two {
            let (i, j) = (c[0], c[1]);
            diff = match cfg.reading {
                Reading::Consistent => diff
                    .add(&phi[i].mul(&d1.coefficients[j]))
                    .sub(&d2.coefficients[i].mul(&psi[j])),
                Reading::Literal => diff
                    .add(&d1.coefficients[i].mul(&psi[j]))
                    .sub(&phi[i].mul(&d2.coefficients[j])),
            };
        }
        r.check_all(&name("intertwine"), 1, nv, |t| diff.column(t[0]));
    }
    Ok(r)
}

/// Verdict of [`same_class_check`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassVerdict {
    pub same: bool,
    /// `χ` with `∂_T(χ) = T'_1 − T_1`.
    pub witness: Option<Vector>,
    /// `T'_1 − T_1` when no `χ` exists.
    pub difference: Matrix,
}

/// Solves `T'_1 − T_1 = ∂_T(χ)` for `χ ∈ A∧A`.
pub fn same_class_check(
    t1: &Matrix,
    t1_prime: &Matrix,
    op: &TwistedOperator,
    cfg: &Config,
) -> Result<ClassVerdict> {
    let cx = twisted_complex(op, cfg)?;
    for m in [t1, t1_prime] {
        m.check_shape("infinitesimal", op.map().rows(), op.map().cols())?;
        let image = cx.coboundary(0, &one_cochain_coords(m), cfg)?;
        if !is_zero_vec(&image) {
            return Err(Error::Invalid(
                "input is not a 1-cocycle of the twisted complex",
            ));
        }
    }
    let field = op.context().field();
    let na = op.context().algebra().dim();
    let pairs = wedge_pairs(na);
    let cols: Vec<Vector> = (0..pairs.len())
        .map(|p| {
            let mut chi = zero_vector(field, pairs.len());
            chi[p] = field.one();
            flat(partial_t_unchecked(&chi, op))
        })
        .collect();
    let difference = t1_prime.sub(t1);
    let rows = difference.rows() * difference.cols();
    let system = Matrix::from_columns(field, rows, &cols);
    let witness = solve(&system, difference.entries())?;
    Ok(ClassVerdict {
        same: witness.is_some(),
        witness,
        difference,
    })
}
