//! NS-Hom-Lie and NS-Hom-Lie-Yamaguti algebras.
//!
//! Products are written `∘` (`circ`), `⋎` (`vee`), `{·,·,·}` (`curly`) and
//! `[·,·,·]` (`square`). The derived brackets are
//! `[x,y]* = x∘y − y∘x + x⋎y`,
//! `{x,y,z}^ = {z,y,x} − {z,x,y} + αx∘(y∘z) − αy∘(x∘z) − [x,y]*∘αz` and
//! `⟦x,y,z⟧ = {x,y,z}^ + {x,y,z} − {y,x,z} + [x,y,z]`.

use crate::config::{Config, Reading};
use crate::error::{require, Result};
use crate::exact::{add_vec, sub_vec, Field, Matrix, Scalar, Tensor, Vector};
use crate::operators::{verify_twisted_op_hom_lie, verify_weighted_reynolds, TwistedOperator};
use crate::report::IdentityReport;
use crate::representations::{HlyRep, HomLieRep};
use crate::structures::{check_skew, induced_hly_unchecked, same_field, HlyAlgebra, HomLieAlgebra};

/// Identity names checked by [`verify_ns_hly`], in evaluation order.
pub const NS_HLY_IDENTITIES: [&str; 10] = [
    "ns-vee-cyclic",
    "ns-curly-vee",
    "ns-curly-star-cyclic",
    "ns-curly-star",
    "ns-hat-circ",
    "ns-curly-circ",
    "ns-hat-curly",
    "ns-curly-court",
    "ns-mixed-vee",
    "ns-mixed-square",
];

/// Under [`Reading::Consistent`] the first term of `ns-mixed-vee` carries the
/// hat, i.e. `{αx1,αx2,x3⋎x4}^`. The literal form uses `{·,·,·}`.
pub const MIXED_VEE_HAT_FIRST_TERM: bool = true;

/// Under [`Reading::Consistent`] `ns-mixed-square` is the image of the
/// fourth cocycle condition: `{α²x1,α²x2,[x3,x4,x5]}^` replaces
/// `{[x3,x4,x5],α²x1,α²x2}^`, and the `[x1,x2,x3]`, `[x1,x2,x4]`,
/// `[x1,x2,x5]` terms become `−{·,α²x4,α²x5}`, `+{·,α²x3,α²x5}` and
/// `−{α²x3,α²x4,·}^`.
pub const MIXED_SQUARE_FROM_COCYCLE: bool = true;

fn check_dims(alpha: &Matrix, tensors: &[(&'static str, &Tensor, usize)]) -> Result<()> {
    alpha.check_shape("α", alpha.rows(), alpha.rows())?;
    for (name, t, arity) in tensors {
        t.check_shape(name, *arity, alpha.rows(), alpha.rows())?;
        same_field(alpha.field(), t.field())?;
    }
    Ok(())
}

/// `(A, ∘, ⋎, α)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NsHomLie {
    alpha: Matrix,
    circ: Tensor,
    vee: Tensor,
}

impl NsHomLie {
    pub fn new(alpha: Matrix, circ: Tensor, vee: Tensor) -> Result<Self> {
        check_dims(&alpha, &[("∘", &circ, 2), ("⋎", &vee, 2)])?;
        Ok(NsHomLie { alpha, circ, vee })
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

    pub fn circ(&self) -> &Tensor {
        &self.circ
    }

    pub fn vee(&self) -> &Tensor {
        &self.vee
    }

    /// `[x,y] = x∘y − y∘x + x⋎y`.
    pub fn adjacent_bracket(&self) -> Tensor {
        star_tensor(&self.circ, &self.vee)
    }
}

/// One of the four NS products.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NsProduct {
    Circ,
    Vee,
    Curly,
    Square,
}

/// `(A, ∘, ⋎, {·,·,·}, [·,·,·], α)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NsHly {
    alpha: Matrix,
    circ: Tensor,
    vee: Tensor,
    curly: Tensor,
    square: Tensor,
}

impl NsHly {
    pub fn new(
        alpha: Matrix,
        circ: Tensor,
        vee: Tensor,
        curly: Tensor,
        square: Tensor,
    ) -> Result<Self> {
        check_dims(
            &alpha,
            &[
                ("∘", &circ, 2),
                ("⋎", &vee, 2),
                ("{}", &curly, 3),
                ("[]", &square, 3),
            ],
        )?;
        Ok(NsHly {
            alpha,
            circ,
            vee,
            curly,
            square,
        })
    }

    pub fn zero(field: Field, dim: usize) -> Self {
        NsHly {
            alpha: Matrix::identity(field, dim),
            circ: Tensor::zeros(field, 2, dim, dim),
            vee: Tensor::zeros(field, 2, dim, dim),
            curly: Tensor::zeros(field, 3, dim, dim),
            square: Tensor::zeros(field, 3, dim, dim),
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

    pub fn circ(&self) -> &Tensor {
        &self.circ
    }

    pub fn vee(&self) -> &Tensor {
        &self.vee
    }

    pub fn curly(&self) -> &Tensor {
        &self.curly
    }

    pub fn square(&self) -> &Tensor {
        &self.square
    }

    /// Copy with one structure constant replaced.
    pub fn with_entry(&self, product: NsProduct, idx: &[usize], out: usize, v: Scalar) -> Self {
        let mut n = self.clone();
        let t = match product {
            NsProduct::Circ => &mut n.circ,
            NsProduct::Vee => &mut n.vee,
            NsProduct::Curly => &mut n.curly,
            NsProduct::Square => &mut n.square,
        };
        t.set(idx, out, v);
        n
    }
}

fn star_tensor(circ: &Tensor, vee: &Tensor) -> Tensor {
    let n = circ.in_dim();
    Tensor::from_fn(circ.field(), 2, n, n, |p| {
        let swapped = [p[1], p[0]];
        add_vec(&sub_vec(circ.at(p), circ.at(&swapped)), vee.at(p))
    })
}

/// The three derived brackets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivedBrackets {
    pub star: Tensor,
    pub hat: Tensor,
    pub court: Tensor,
}

/// `[·,·]*`, `{·,·,·}^` and `⟦·,·,·⟧` as tensors.
pub fn derived_brackets(n: &NsHly) -> DerivedBrackets {
    let dim = n.dim();
    let field = n.field();
    let star = star_tensor(&n.circ, &n.vee);
    let e = |i: usize| crate::exact::unit_vector(field, dim, i);
    let hat = Tensor::from_fn(field, 3, dim, dim, |p| {
        let (x, y, z) = (e(p[0]), e(p[1]), e(p[2]));
        let mut acc = sub_vec(
            n.curly.at(&[p[2], p[1], p[0]]),
            n.curly.at(&[p[2], p[0], p[1]]),
        );
        let ax = n.alpha.apply(&x);
        let ay = n.alpha.apply(&y);
        let az = n.alpha.apply(&z);
        acc = add_vec(&acc, &n.circ.apply(&[&ax, n.circ.at(&[p[1], p[2]])]));
        acc = sub_vec(&acc, &n.circ.apply(&[&ay, n.circ.at(&[p[0], p[2]])]));
        sub_vec(&acc, &n.circ.apply(&[star.at(&[p[0], p[1]]), &az]))
    });
    let court = Tensor::from_fn(field, 3, dim, dim, |p| {
        let mut acc = add_vec(hat.at(p), n.curly.at(p));
        acc = sub_vec(&acc, n.curly.at(&[p[1], p[0], p[2]]));
        add_vec(&acc, n.square.at(p))
    });
    DerivedBrackets { star, hat, court }
}

/// Vector-level evaluation of all NS operations.
struct NsEval<'a> {
    n: &'a NsHly,
    d: DerivedBrackets,
    alpha2: Matrix,
}

impl<'a> NsEval<'a> {
    fn new(n: &'a NsHly) -> Self {
        NsEval {
            n,
            d: derived_brackets(n),
            alpha2: n.alpha.mul(&n.alpha),
        }
    }

    fn e(&self, i: usize) -> Vector {
        crate::exact::unit_vector(self.n.field(), self.n.dim(), i)
    }

    fn a(&self, x: &[Scalar]) -> Vector {
        self.n.alpha.apply(x)
    }

    fn a2(&self, x: &[Scalar]) -> Vector {
        self.alpha2.apply(x)
    }

    fn circ(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        self.n.circ.apply(&[x, y])
    }

    fn vee(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        self.n.vee.apply(&[x, y])
    }

    fn curly(&self, x: &[Scalar], y: &[Scalar], z: &[Scalar]) -> Vector {
        self.n.curly.apply(&[x, y, z])
    }

    fn square(&self, x: &[Scalar], y: &[Scalar], z: &[Scalar]) -> Vector {
        self.n.square.apply(&[x, y, z])
    }

    fn star(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        self.d.star.apply(&[x, y])
    }

    fn hat(&self, x: &[Scalar], y: &[Scalar], z: &[Scalar]) -> Vector {
        self.d.hat.apply(&[x, y, z])
    }

    fn court(&self, x: &[Scalar], y: &[Scalar], z: &[Scalar]) -> Vector {
        self.d.court.apply(&[x, y, z])
    }
}

/// Sums `f` over the cyclic rotations of the first three arguments.
fn cyclic3(xs: &[Vector], f: impl Fn(&[Vector]) -> Vector) -> Vector {
    let mut acc = f(xs);
    for rot in [[1, 2, 0], [2, 0, 1]] {
        let mut ys: Vec<Vector> = rot.iter().map(|&i| xs[i].clone()).collect();
        ys.extend(xs[3..].iter().cloned());
        acc = add_vec(&acc, &f(&ys));
    }
    acc
}

/// All ten identities plus skew-symmetry of `⋎` (`vee-skew`) on basis
/// tuples. See [`NS_HLY_IDENTITIES`].
pub fn verify_ns_hly(n: &NsHly, cfg: &Config) -> IdentityReport {
    let ev = NsEval::new(n);
    let consistent = cfg.reading == Reading::Consistent;
    let dim = n.dim();
    let mut r = IdentityReport::new(cfg.max_failures);
    check_skew(&mut r, "vee-skew", &n.vee);
    let basis = |p: &[usize]| -> Vec<Vector> { p.iter().map(|&i| ev.e(i)).collect() };

    r.check_all(NS_HLY_IDENTITIES[0], 3, dim, |p| {
        cyclic3(&basis(p), |x| {
            let mut acc = ev.vee(&ev.star(&x[0], &x[1]), &ev.a(&x[2]));
            acc = sub_vec(&acc, &ev.circ(&ev.a(&x[0]), &ev.vee(&x[1], &x[2])));
            add_vec(&acc, &ev.square(&x[0], &x[1], &x[2]))
        })
    });
    r.check_all(NS_HLY_IDENTITIES[1], 4, dim, |p| {
        cyclic3(&basis(p), |x| {
            let (ax3, ax4) = (ev.a(&x[2]), ev.a(&x[3]));
            add_vec(
                &ev.curly(&ev.vee(&x[1], &x[2]), &ev.a(&x[0]), &ax4),
                &ev.square(&ev.star(&x[0], &x[1]), &ax3, &ax4),
            )
        })
    });
    r.check_all(NS_HLY_IDENTITIES[2], 4, dim, |p| {
        cyclic3(&basis(p), |x| {
            ev.curly(&ev.star(&x[0], &x[1]), &ev.a(&x[2]), &ev.a(&x[3]))
        })
    });
    r.check_all(NS_HLY_IDENTITIES[3], 4, dim, |p| {
        let x = basis(p);
        let (ax1, ax2, ax3) = (ev.a(&x[0]), ev.a(&x[1]), ev.a(&x[2]));
        let mut acc = ev.curly(&ev.a(&x[3]), &ev.star(&x[0], &x[1]), &ax3);
        acc = sub_vec(&acc, &ev.curly(&ev.circ(&x[1], &x[3]), &ax1, &ax3));
        add_vec(&acc, &ev.curly(&ev.circ(&x[0], &x[3]), &ax2, &ax3))
    });
    r.check_all(NS_HLY_IDENTITIES[4], 4, dim, |p| {
        let x = basis(p);
        let mut acc = ev.hat(&ev.a(&x[0]), &ev.a(&x[1]), &ev.circ(&x[2], &x[3]));
        acc = sub_vec(&acc, &ev.circ(&ev.a2(&x[2]), &ev.hat(&x[0], &x[1], &x[3])));
        sub_vec(
            &acc,
            &ev.circ(&ev.court(&x[0], &x[1], &x[2]), &ev.a2(&x[3])),
        )
    });
    r.check_all(NS_HLY_IDENTITIES[5], 4, dim, |p| {
        let x = basis(p);
        let (ax4, ax1) = (ev.a(&x[3]), ev.a(&x[0]));
        let mut acc = ev.curly(&ax4, &ax1, &ev.star(&x[1], &x[2]));
        acc = sub_vec(
            &acc,
            &ev.circ(&ev.a2(&x[1]), &ev.curly(&x[3], &x[0], &x[2])),
        );
        add_vec(
            &acc,
            &ev.circ(&ev.a2(&x[2]), &ev.curly(&x[3], &x[0], &x[1])),
        )
    });
    r.check_all(NS_HLY_IDENTITIES[6], 5, dim, |p| {
        let x = basis(p);
        let a2: Vec<Vector> = x.iter().map(|v| ev.a2(v)).collect();
        let mut acc = ev.hat(&a2[0], &a2[1], &ev.curly(&x[4], &x[2], &x[3]));
        acc = sub_vec(
            &acc,
            &ev.curly(&ev.hat(&x[0], &x[1], &x[4]), &a2[2], &a2[3]),
        );
        acc = sub_vec(
            &acc,
            &ev.curly(&a2[4], &ev.court(&x[0], &x[1], &x[2]), &a2[3]),
        );
        sub_vec(
            &acc,
            &ev.curly(&a2[4], &a2[2], &ev.court(&x[0], &x[1], &x[3])),
        )
    });
    r.check_all(NS_HLY_IDENTITIES[7], 5, dim, |p| {
        let x = basis(p);
        let a2: Vec<Vector> = x.iter().map(|v| ev.a2(v)).collect();
        let mut acc = ev.curly(&a2[4], &a2[0], &ev.court(&x[1], &x[2], &x[3]));
        acc = sub_vec(
            &acc,
            &ev.curly(&ev.curly(&x[4], &x[0], &x[1]), &a2[2], &a2[3]),
        );
        acc = add_vec(
            &acc,
            &ev.curly(&ev.curly(&x[4], &x[0], &x[2]), &a2[1], &a2[3]),
        );
        sub_vec(
            &acc,
            &ev.hat(&a2[1], &a2[2], &ev.curly(&x[4], &x[0], &x[3])),
        )
    });
    r.check_all(NS_HLY_IDENTITIES[8], 4, dim, |p| {
        let x = basis(p);
        let (ax1, ax2) = (ev.a(&x[0]), ev.a(&x[1]));
        let (a2x3, a2x4) = (ev.a2(&x[2]), ev.a2(&x[3]));
        let v34 = ev.vee(&x[2], &x[3]);
        let mut acc = if consistent && MIXED_VEE_HAT_FIRST_TERM {
            ev.hat(&ax1, &ax2, &v34)
        } else {
            ev.curly(&ax1, &ax2, &v34)
        };
        acc = add_vec(&acc, &ev.circ(&a2x4, &ev.square(&x[0], &x[1], &x[2])));
        acc = sub_vec(&acc, &ev.vee(&ev.court(&x[0], &x[1], &x[2]), &a2x4));
        acc = add_vec(&acc, &ev.square(&ax1, &ax2, &ev.star(&x[2], &x[3])));
        acc = sub_vec(&acc, &ev.circ(&a2x3, &ev.square(&x[0], &x[1], &x[3])));
        sub_vec(&acc, &ev.vee(&a2x3, &ev.court(&x[0], &x[1], &x[3])))
    });
    r.check_all(NS_HLY_IDENTITIES[9], 5, dim, |p| {
        let x = basis(p);
        let a2: Vec<Vector> = x.iter().map(|v| ev.a2(v)).collect();
        let sq123 = ev.square(&x[0], &x[1], &x[2]);
        let sq124 = ev.square(&x[0], &x[1], &x[3]);
        let sq125 = ev.square(&x[0], &x[1], &x[4]);
        let sq345 = ev.square(&x[2], &x[3], &x[4]);
        let mut acc = if consistent && MIXED_SQUARE_FROM_COCYCLE {
            let mut acc = ev.hat(&a2[0], &a2[1], &sq345);
            acc = sub_vec(&acc, &ev.curly(&sq123, &a2[3], &a2[4]));
            acc = add_vec(&acc, &ev.curly(&sq124, &a2[2], &a2[4]));
            sub_vec(&acc, &ev.hat(&a2[2], &a2[3], &sq125))
        } else {
            let mut acc = ev.hat(&sq123, &a2[3], &a2[4]);
            acc = sub_vec(&acc, &ev.curly(&sq124, &a2[2], &a2[4]));
            acc = add_vec(&acc, &ev.hat(&sq345, &a2[0], &a2[1]));
            sub_vec(&acc, &ev.hat(&sq125, &a2[2], &a2[3]))
        };
        acc = sub_vec(
            &acc,
            &ev.square(&ev.court(&x[0], &x[1], &x[2]), &a2[3], &a2[4]),
        );
        acc = sub_vec(
            &acc,
            &ev.square(&a2[2], &ev.court(&x[0], &x[1], &x[3]), &a2[4]),
        );
        acc = add_vec(
            &acc,
            &ev.square(&a2[0], &a2[1], &ev.court(&x[2], &x[3], &x[4])),
        );
        sub_vec(
            &acc,
            &ev.square(&a2[2], &a2[3], &ev.court(&x[0], &x[1], &x[4])),
        )
    });
    r
}

/// Skew-symmetry of `⋎` plus `ns-lie-circ`:
/// `[x,y]∘αz − αx∘(y∘z) + αy∘(x∘z) = 0` and `ns-lie-vee`:
/// `↺ (αx⋎[y,z] + αx∘(y⋎z)) = 0`.
pub fn verify_ns_hom_lie(n: &NsHomLie, cfg: &Config) -> IdentityReport {
    let dim = n.dim();
    let field = n.field();
    let br = n.adjacent_bracket();
    let e = |i: usize| crate::exact::unit_vector(field, dim, i);
    let circ = |x: &[Scalar], y: &[Scalar]| n.circ.apply(&[x, y]);
    let vee = |x: &[Scalar], y: &[Scalar]| n.vee.apply(&[x, y]);
    let a = |x: &[Scalar]| n.alpha.apply(x);
    let mut r = IdentityReport::new(cfg.max_failures);
    check_skew(&mut r, "vee-skew", &n.vee);
    r.check_all("ns-lie-circ", 3, dim, |p| {
        let (x, y, z) = (e(p[0]), e(p[1]), e(p[2]));
        let mut acc = circ(br.at(&[p[0], p[1]]), &a(&z));
        acc = sub_vec(&acc, &circ(&a(&x), n.circ.at(&[p[1], p[2]])));
        add_vec(&acc, &circ(&a(&y), n.circ.at(&[p[0], p[2]])))
    });
    r.check_all("ns-lie-vee", 3, dim, |p| {
        let xs: Vec<Vector> = p.iter().map(|&i| e(i)).collect();
        cyclic3(&xs, |x| {
            let yz = br.apply(&[&x[1], &x[2]]);
            add_vec(&vee(&a(&x[0]), &yz), &circ(&a(&x[0]), &vee(&x[1], &x[2])))
        })
    });
    r
}

/// `(A, [·,·]*, ⟦·,·,·⟧, α)` with the representation `ρ(x)y = x∘y`,
/// `θ(x,y)z = {z,x,y}` on `(A, α)`.
pub fn subadjacent_hly(n: &NsHly, cfg: &Config) -> Result<(HlyAlgebra, HlyRep)> {
    require("not an NS-Hom-Lie-Yamaguti algebra", verify_ns_hly(n, cfg))?;
    Ok(subadjacent_unchecked(n))
}

pub(crate) fn subadjacent_unchecked(n: &NsHly) -> (HlyAlgebra, HlyRep) {
    let d = derived_brackets(n);
    let dim = n.dim();
    let field = n.field();
    let h = HlyAlgebra::new(n.alpha.clone(), d.star, d.court).expect("shapes match");
    let rho = (0..dim)
        .map(|i| {
            Matrix::from_fn(field, dim, dim, |row, col| {
                n.circ.entry(&[i, col], row).clone()
            })
        })
        .collect();
    let mut theta = Vec::with_capacity(dim * dim);
    for i in 0..dim {
        for j in 0..dim {
            theta.push(Matrix::from_fn(field, dim, dim, |row, col| {
                n.curly.entry(&[col, i, j], row).clone()
            }));
        }
    }
    let rep = HlyRep::new(dim, n.alpha.clone(), rho, theta).expect("shapes match");
    (h, rep)
}

/// The adjacent Hom-Lie algebra `(A, [·,·], α)`.
pub fn adjacent_hom_lie(n: &NsHomLie, cfg: &Config) -> Result<HomLieAlgebra> {
    require("not an NS-Hom-Lie algebra", verify_ns_hom_lie(n, cfg))?;
    HomLieAlgebra::new(n.alpha.clone(), n.adjacent_bracket())
}

/// `u∘v = ρ(Tu)v`, `u⋎v = 𝓕(Tu,Tv)`, `{u,v,w} = θ(Tv,Tw)u`,
/// `[u,v,w] = 𝓖(Tu,Tv,Tw)`, twisted by `β`.
pub fn ns_from_twisted_op(op: &TwistedOperator, cfg: &Config) -> Result<NsHly> {
    require("not a twisted O-operator", op.verify(cfg)?)?;
    Ok(ns_from_twisted_unchecked(op))
}

pub(crate) fn ns_from_twisted_unchecked(op: &TwistedOperator) -> NsHly {
    let ctx = op.context();
    let (rep, pair) = (ctx.rep(), ctx.cocycle());
    let nv = rep.carrier_dim();
    let field = ctx.field();
    let tu: Vec<Vector> = (0..nv).map(|u| op.map().column(u)).collect();
    let circ = Tensor::from_fn(field, 2, nv, nv, |p| rep.rho_of(&tu[p[0]]).column(p[1]));
    let vee = Tensor::from_fn(field, 2, nv, nv, |p| {
        pair.f().apply(&[&tu[p[0]], &tu[p[1]]])
    });
    let curly = Tensor::from_fn(field, 3, nv, nv, |p| {
        rep.theta_of(&tu[p[1]], &tu[p[2]]).column(p[0])
    });
    let square = Tensor::from_fn(field, 3, nv, nv, |p| {
        pair.g().apply(&[&tu[p[0]], &tu[p[1]], &tu[p[2]]])
    });
    NsHly::new(rep.beta().clone(), circ, vee, curly, square).expect("shapes match")
}

/// `x∘y = [Rx,y]`, `x⋎y = λ[Rx,Ry]`, `{x,y,z} = ⟦Rx,Ry,z⟧`,
/// `[x,y,z] = μ⟦Rx,Ry,Rz⟧`.
pub fn ns_from_reynolds(
    r: &Matrix,
    lambda: &Scalar,
    mu: &Scalar,
    h: &HlyAlgebra,
    cfg: &Config,
) -> Result<NsHly> {
    require(
        "not a weighted Reynolds operator",
        verify_weighted_reynolds(r, lambda, mu, h, cfg)?,
    )?;
    let dim = h.dim();
    let field = h.field();
    let rx: Vec<Vector> = (0..dim).map(|i| r.column(i)).collect();
    let circ = Tensor::from_fn(field, 2, dim, dim, |p| h.br(&rx[p[0]], &h.e(p[1])));
    let vee = Tensor::from_fn(field, 2, dim, dim, |p| {
        crate::exact::scale_vec(lambda, &h.br(&rx[p[0]], &rx[p[1]]))
    });
    let curly = Tensor::from_fn(field, 3, dim, dim, |p| {
        h.tri(&rx[p[0]], &rx[p[1]], &h.e(p[2]))
    });
    let square = Tensor::from_fn(field, 3, dim, dim, |p| {
        crate::exact::scale_vec(mu, &h.tri(&rx[p[0]], &rx[p[1]], &rx[p[2]]))
    });
    NsHly::new(h.alpha().clone(), circ, vee, curly, square)
}

/// `u∘v = ρ(Tu)v`, `u⋎v = 𝓕(Tu,Tv)` for an `𝓕`-twisted O-operator on a
/// Hom-Lie algebra.
pub fn ns_lie_from_twisted_op_hom_lie(
    t: &Matrix,
    l: &HomLieAlgebra,
    rep: &HomLieRep,
    f: &Tensor,
    cfg: &Config,
) -> Result<NsHomLie> {
    require(
        "not an F-twisted O-operator",
        verify_twisted_op_hom_lie(t, l, rep, f, cfg)?,
    )?;
    let nv = rep.carrier_dim();
    let field = l.field();
    let tu: Vec<Vector> = (0..nv).map(|u| t.column(u)).collect();
    let circ = Tensor::from_fn(field, 2, nv, nv, |p| rep.rho_of(&tu[p[0]]).column(p[1]));
    let vee = Tensor::from_fn(field, 2, nv, nv, |p| f.apply(&[&tu[p[0]], &tu[p[1]]]));
    NsHomLie::new(rep.beta().clone(), circ, vee)
}

/// `{x,y,z} = αz∘(y∘x)` and `[x,y,z] = [x,y]⋎αz − αz∘(x⋎y)`, with `∘`, `⋎`
/// carried over.
pub fn ns_hly_from_ns_lie(n: &NsHomLie, cfg: &Config) -> Result<NsHly> {
    require("not an NS-Hom-Lie algebra", verify_ns_hom_lie(n, cfg))?;
    let dim = n.dim();
    let field = n.field();
    let br = n.adjacent_bracket();
    let a: Vec<Vector> = (0..dim).map(|i| n.alpha.column(i)).collect();
    let curly = Tensor::from_fn(field, 3, dim, dim, |p| {
        n.circ.apply(&[&a[p[2]], n.circ.at(&[p[1], p[0]])])
    });
    let square = Tensor::from_fn(field, 3, dim, dim, |p| {
        sub_vec(
            &n.vee.apply(&[br.at(&[p[0], p[1]]), &a[p[2]]]),
            &n.circ.apply(&[&a[p[2]], n.vee.at(&[p[0], p[1]])]),
        )
    });
    NsHly::new(
        n.alpha.clone(),
        n.circ.clone(),
        n.vee.clone(),
        curly,
        square,
    )
}

/// Whether the sub-adjacent HLY algebra of [`ns_hly_from_ns_lie`] equals the
/// HLY algebra induced from the adjacent Hom-Lie algebra (`⟦x,y,z⟧ = [[x,y],αz]`).
/// Returned as a fact, not assumed.
pub fn subadjacent_matches_induced(n: &NsHomLie, cfg: &Config) -> Result<bool> {
    let ns = ns_hly_from_ns_lie(n, cfg)?;
    let (h, _) = subadjacent_unchecked(&ns);
    let l = HomLieAlgebra::new(n.alpha.clone(), n.adjacent_bracket())?;
    Ok(h == induced_hly_unchecked(&l))
}
