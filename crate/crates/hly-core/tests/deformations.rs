//! Truncated deformations against graph closure over `F[t]/t^{N+1}`.

mod common;

use common::*;
use hly_core::cohomology::{
    one_cochain_coords, partial_t, twisted_complex, wedge_pairs, CocyclePair,
};
use hly_core::deformations::{
    infinitesimal_is_cocycle, same_class_check, verify_deformation, verify_equivalence,
    EquivalencePair, TruncatedDeformation,
};
use hly_core::exact::is_zero_vec;
use hly_core::fixtures;
use hly_core::operators::{all_matrices, TwistedContext, TwistedOperator};
use hly_core::representations::HlyRep;
use hly_core::structures::induced_hly_from_hom_lie;
use hly_core::{Config, Field, Matrix};
use std::sync::Arc;

fn cfg() -> Config {
    Config::default()
}

fn twisted_semidirect(ctx: &TwistedContext) -> Alg {
    let h = Alg::of(ctx.algebra());
    let r = Rep::of(h.p, ctx.rep());
    let (f, g) = pair_of(h.p, ctx.cocycle());
    semidirect(&h, &r, Some(&f), Some(&g))
}

fn gf2_ops() -> Vec<TwistedOperator> {
    let mut out = Vec::new();
    for (_, ctx) in fixtures::gf2_contexts() {
        for m in all_matrices(ctx.field(), 2, 2).unwrap() {
            let op = TwistedOperator::candidate(m, ctx.clone()).unwrap();
            if op.verify(&cfg()).unwrap().ok() {
                out.push(op);
            }
        }
    }
    out
}

#[test]
fn order_one_agrees_with_deformed_graph() {
    let all = all_matrices(Field::prime(2).unwrap(), 2, 2).unwrap();
    for op in gf2_ops() {
        let s = twisted_semidirect(op.context());
        let cx = twisted_complex(&op, &cfg()).unwrap();
        for t1 in &all {
            let d = TruncatedDeformation::new(op.clone(), vec![t1.clone()]).unwrap();
            let lib = verify_deformation(&d, &cfg()).unwrap().ok();
            let closed = deformed_graph_closed(&s, 2, &PMat::series(s.p, d.coefficients()));
            assert_eq!(lib, closed);
            let cocycle = is_zero_vec(&cx.coboundary(0, &one_cochain_coords(t1), &cfg()).unwrap());
            if lib {
                assert!(cocycle);
                assert!(infinitesimal_is_cocycle(&d, &cfg()).unwrap().0);
            }
        }
    }
}

#[test]
fn order_two_agrees_with_deformed_graph() {
    let all = all_matrices(Field::prime(2).unwrap(), 2, 2).unwrap();
    let mut valid = 0;
    for op in gf2_ops() {
        let s = twisted_semidirect(op.context());
        for t1 in &all {
            for t2 in &all {
                let d =
                    TruncatedDeformation::new(op.clone(), vec![t1.clone(), t2.clone()]).unwrap();
                let lib = verify_deformation(&d, &cfg()).unwrap().ok();
                assert_eq!(
                    lib,
                    deformed_graph_closed(&s, 2, &PMat::series(s.p, d.coefficients()))
                );
                valid += lib as usize;
            }
        }
    }
    assert!(valid > 0);
}

fn rational_op() -> TwistedOperator {
    let q = Field::Rational;
    let h = induced_hly_from_hom_lie(&fixtures::aff2(q), &cfg()).unwrap();
    let rep = HlyRep::zero(2, Matrix::identity(q, 2));
    let pair = CocyclePair::zero(&h, &rep);
    let ctx = Arc::new(TwistedContext::new(h, rep, pair, &cfg()).unwrap());
    TwistedOperator::new(Matrix::from_ints(q, &[&[0, 0], &[1, 0]]), ctx, &cfg()).unwrap()
}

#[test]
fn rational_series_agree_with_deformed_graph() {
    let q = Field::Rational;
    let op = rational_op();
    let s = twisted_semidirect(op.context());
    let samples = [
        [0, 0, 0, 0],
        [1, 0, 0, 0],
        [0, 0, 3, 0],
        [0, 0, 0, 1],
        [2, 0, -1, 2],
        [0, 1, 0, 0],
    ];
    for a in &samples {
        for b in &samples {
            let m = |v: &[i64; 4]| Matrix::from_ints(q, &[&v[..2], &v[2..]]);
            let d = TruncatedDeformation::new(op.clone(), vec![m(a), m(b)]).unwrap();
            let lib = verify_deformation(&d, &cfg()).unwrap().ok();
            assert_eq!(
                lib,
                deformed_graph_closed(&s, 2, &PMat::series(s.p, d.coefficients())),
                "{a:?} {b:?}"
            );
        }
    }
}

/// `φ_t = id + t⟦χ,·⟧` and `ψ_t = id + t(D(χ) + G(χ,T·))` as polynomial
/// matrices, and the morphism conditions between two series.
fn oracle_equivalent(
    op: &TwistedOperator,
    chi: &[u64],
    d1: &TruncatedDeformation,
    d2: &TruncatedDeformation,
) -> bool {
    let ctx = op.context();
    let h = Alg::of(ctx.algebra());
    let r = Rep::of(h.p, ctx.rep());
    let (_, g) = pair_of(h.p, ctx.cocycle());
    let p = h.p;
    let len = d1.order() + 1;
    let t = Mat::of(p, op.map());
    let mut phi1 = Mat::zero(h.n, h.n);
    let mut psi1 = Mat::zero(r.nv, r.nv);
    for (&c, &(a, b)) in chi.iter().zip(&wedge_pairs(h.n)) {
        let (ea, eb) = (h.e(a), h.e(b));
        let mut bracket = Mat::zero(h.n, h.n);
        for x in 0..h.n {
            for (row, v) in h.tr(&ea, &eb, &h.e(x)).into_iter().enumerate() {
                bracket.a[row * h.n + x] = v;
            }
        }
        let mut twist = Mat::zero(r.nv, r.nv);
        for u in 0..r.nv {
            let tu = t.apply(p, &unit(p, r.nv, u));
            for (row, v) in g.eval(p, &[&ea, &eb, &tu]).into_iter().enumerate() {
                twist.a[row * r.nv + u] = v;
            }
        }
        phi1 = phi1.lin(p, c, &bracket);
        psi1 = psi1.lin(p, c, &r.d(&h, &ea, &eb).lin(p, 1, &twist));
    }
    let series = |id: Mat, one: Mat| {
        let mut out = PMat::constant(&id, len);
        if len > 1 {
            for (k, v) in one.a.iter().enumerate() {
                out.a[k][1] = *v;
            }
        }
        out
    };
    let phi = series(Mat::id(p, h.n), phi1);
    let psi = series(Mat::id(p, r.nv), psi1);
    let alpha = PMat::constant(&h.alpha, len);
    let beta = PMat::constant(&r.beta, len);
    let rho_p = |x: &[Poly]| {
        let mut out = PMat::constant(&Mat::zero(r.nv, r.nv), len);
        for (i, c) in x.iter().enumerate() {
            out = out.add(p, &PMat::constant(&r.rho[i], len).scaled(p, c));
        }
        out
    };
    let theta_p = |x: &[Poly], y: &[Poly]| {
        let mut out = PMat::constant(&Mat::zero(r.nv, r.nv), len);
        for (i, a) in x.iter().enumerate() {
            for (j, b) in y.iter().enumerate() {
                out = out.add(
                    p,
                    &PMat::constant(&r.theta[i][j], len).scaled(p, &pmul(p, a, b)),
                );
            }
        }
        out
    };
    let tt = PMat::series(p, d1.coefficients());
    let tt2 = PMat::series(p, d2.coefficients());
    let commutes = phi.mul(p, &alpha).sub(p, &alpha.mul(p, &phi)).is_zero()
        && psi.mul(p, &beta).sub(p, &beta.mul(p, &psi)).is_zero();
    let rho_ok = (0..h.n).all(|x| {
        let px = phi.column(x);
        psi.mul(p, &PMat::constant(&r.rho[x], len))
            .sub(p, &rho_p(&px).mul(p, &psi))
            .is_zero()
    });
    let theta_ok = (0..h.n).all(|x| {
        (0..h.n).all(|y| {
            let lhs = psi.mul(p, &PMat::constant(&r.theta[x][y], len));
            lhs.sub(p, &theta_p(&phi.column(x), &phi.column(y)).mul(p, &psi))
                .is_zero()
        })
    });
    let intertwines = phi.mul(p, &tt).sub(p, &tt2.mul(p, &psi)).is_zero();
    commutes && rho_ok && theta_ok && intertwines
}

#[test]
fn equivalence_agrees_with_series_morphism() {
    let q = Field::Rational;
    let op = rational_op();
    let base = TruncatedDeformation::stationary(op.clone(), 1);
    for c in [-2i64, -1, 0, 1, 3] {
        let chi = vec![q.int(c)];
        let dt = partial_t(&chi, &op, &cfg()).unwrap();
        for shift in [dt.neg(), dt.clone(), Matrix::zeros(q, 2, 2)] {
            let d2 = TruncatedDeformation::new(op.clone(), vec![shift]).unwrap();
            let pair = EquivalencePair {
                chi: chi.clone(),
                phi: vec![],
                psi: vec![],
            };
            let lib = verify_equivalence(&base, &d2, &pair, &cfg()).unwrap().ok();
            let oracle_chi = [lift(BIG, &q.int(c))];
            assert_eq!(
                lib,
                oracle_equivalent(&op, &oracle_chi, &base, &d2),
                "χ = {c}"
            );
        }
    }
}

#[test]
fn gf2_equivalences_agree() {
    let f = Field::prime(2).unwrap();
    let all = all_matrices(f, 2, 2).unwrap();
    for op in gf2_ops() {
        let base = TruncatedDeformation::stationary(op.clone(), 1);
        for c in 0..2i64 {
            let chi = vec![f.int(c)];
            for shift in &all {
                let d2 = TruncatedDeformation::new(op.clone(), vec![shift.clone()]).unwrap();
                let pair = EquivalencePair {
                    chi: chi.clone(),
                    phi: vec![],
                    psi: vec![],
                };
                let lib = verify_equivalence(&base, &d2, &pair, &cfg()).unwrap().ok();
                assert_eq!(lib, oracle_equivalent(&op, &[c as u64], &base, &d2));
            }
        }
    }
}

#[test]
fn same_class_is_an_equivalence_relation() {
    let mut ops = gf2_ops();
    ops.push(rational_op());
    for op in ops {
        let field = op.context().field();
        let cx = twisted_complex(&op, &cfg()).unwrap();
        let candidates: Vec<Matrix> = match all_matrices(field, 2, 2) {
            Ok(all) => all,
            Err(_) => [
                [0, 0, 0, 0],
                [1, 0, 0, 0],
                [0, 1, 0, 0],
                [0, 0, 1, 0],
                [0, 0, 0, 1],
                [2, 1, -1, 0],
            ]
            .iter()
            .map(|v| Matrix::from_ints(field, &[&v[..2], &v[2..]]))
            .collect(),
        };
        let cocycles: Vec<Matrix> = candidates
            .into_iter()
            .filter(|m| is_zero_vec(&cx.coboundary(0, &one_cochain_coords(m), &cfg()).unwrap()))
            .collect();
        assert!(!cocycles.is_empty());
        let same = |a: &Matrix, b: &Matrix| same_class_check(a, b, &op, &cfg()).unwrap();
        for a in &cocycles {
            assert!(same(a, a).same);
            for b in &cocycles {
                let ab = same(a, b);
                assert_eq!(ab.same, same(b, a).same);
                if let Some(w) = &ab.witness {
                    assert_eq!(&partial_t(w, &op, &cfg()).unwrap(), &b.sub(a));
                } else {
                    assert_eq!(ab.difference, b.sub(a));
                }
                for c in &cocycles {
                    if ab.same && same(b, c).same {
                        assert!(same(a, c).same);
                    }
                }
            }
        }
    }
}

#[test]
fn shifted_infinitesimals_share_a_class() {
    let mut ops = gf2_ops();
    ops.push(rational_op());
    for op in ops {
        let field = op.context().field();
        let t1 = Matrix::zeros(field, 2, 2);
        for c in [1i64, 2, 5] {
            let chi = vec![field.int(c)];
            let shifted = t1.add(&partial_t(&chi, &op, &cfg()).unwrap());
            let v = same_class_check(&t1, &shifted, &op, &cfg()).unwrap();
            assert!(v.same);
            let w = v.witness.unwrap();
            assert_eq!(partial_t(&w, &op, &cfg()).unwrap(), shifted.sub(&t1));
        }
    }
}
