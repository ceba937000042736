//! The default formula readings against the dense oracle, and instances
//! where the literal variants part ways with it.

mod common;

use std::collections::BTreeMap;

use common::*;
use hly_core::cohomology::{cochain_basis, verify_23cocycle, CocyclePair};
use hly_core::exact::Tuples;
use hly_core::fixtures;
use hly_core::ns::{ns_from_twisted_op, verify_ns_hly};
use hly_core::operators::{all_matrices, TwistedOperator};
use hly_core::representations::{adjoint_rep, verify_hly_rep, HlyRep};
use hly_core::structures::{induced_hly_from_hom_lie, yau_twist, HlyAlgebra, HomLieAlgebra};
use hly_core::{Config, Field, Matrix, Scalar, Tensor};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn gf5() -> Field {
    Field::prime(5).unwrap()
}

fn everything(cfg: Config) -> Config {
    Config {
        max_failures: usize::MAX,
        ..cfg
    }
}

/// sl2 with basis `(h, e, f)`, Yau-twisted by the automorphism `diag(1,2,3)`.
fn twisted_sl2(f: Field) -> HlyAlgebra {
    let cfg = Config::default();
    let bracket = fixtures::skew_bracket(f, 3, &[(0, 1, 1, 2), (0, 2, 2, -2), (1, 2, 0, 1)]);
    let l = HomLieAlgebra::new(Matrix::identity(f, 3), bracket).unwrap();
    let h = induced_hly_from_hom_lie(&l, &cfg).unwrap();
    yau_twist(&h, &Matrix::diag(f, &[1, 2, 3]), &cfg).unwrap()
}

fn algebras() -> Vec<HlyAlgebra> {
    vec![
        fixtures::h3q_induced(gf5()),
        induced_hly_from_hom_lie(&fixtures::aff2(gf5()), &Config::default()).unwrap(),
        twisted_sl2(gf5()),
    ]
}

/// The adjoint rep and every single-entry change of its `ρ` or `θ`.
fn nearby_reps(h: &HlyAlgebra) -> Vec<HlyRep> {
    let f = h.field();
    let ad = adjoint_rep(h, &Config::default()).unwrap();
    let n = h.dim();
    let mut out = vec![ad.clone()];
    for t in Tuples::new(4, n) {
        out.push(ad.with_theta_entry(t[0], t[1], t[2], t[3], f.int(1)));
        let mut rho = ad.rho().to_vec();
        rho[t[0]].set(t[1], t[2], f.int(1));
        out.push(HlyRep::new(n, ad.beta().clone(), rho, ad.theta().to_vec()).unwrap());
    }
    out
}

#[test]
fn rep_reading_matches_the_semidirect_product() {
    let mut literal_misses = 0;
    for h in algebras() {
        let o = Alg::of(&h);
        for rep in nearby_reps(&h) {
            let truth = semidirect(&o, &Rep::of(o.p, &rep), None, None).is_hly();
            let ok = verify_hly_rep(&h, &rep, &Config::default()).unwrap().ok();
            assert_eq!(ok, truth);
            let literal = verify_hly_rep(&h, &rep, &Config::literal()).unwrap().ok();
            literal_misses += (literal != truth) as usize;
        }
    }
    assert!(literal_misses > 0);
}

fn random_g(h: &HlyAlgebra, rep: &HlyRep, rng: &mut ChaCha8Rng) -> Tensor {
    let f = h.field();
    let space = cochain_basis(3, h.alpha(), rep.beta(), &Config::default()).unwrap();
    let mut coords = vec![f.zero(); space.shape().len()];
    for b in space.basis() {
        let c = f.int(rng.gen_range(0..5));
        for (x, y) in coords.iter_mut().zip(b) {
            *x = &*x + &(&c * y);
        }
    }
    space.shape().to_tensor(&coords)
}

fn residuals(
    pair: &CocyclePair,
    h: &HlyAlgebra,
    rep: &HlyRep,
    cfg: Config,
) -> BTreeMap<Vec<usize>, Vec<Scalar>> {
    let r = verify_23cocycle(pair, h, rep, &everything(cfg)).unwrap();
    r.failures()
        .iter()
        .filter(|f| f.identity == "cocycle4")
        .map(|f| (f.tuple.clone(), f.residual.clone()))
        .collect()
}

/// With `F = 0`, the V-part of LY4 on the twisted semidirect product is the
/// fourth cocycle residual, tuple by tuple.
#[test]
fn fourth_cocycle_residual_is_the_ly4_defect() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut literal_differs = 0;
    for h in algebras() {
        let f = h.field();
        let rep = adjoint_rep(&h, &Config::default()).unwrap();
        let o = Alg::of(&h);
        let r = Rep::of(o.p, &rep);
        for _ in 0..20 {
            let zero = Tensor::zeros(f, 2, h.dim(), h.dim());
            let pair = CocyclePair::new(&h, &rep, zero, random_g(&h, &rep, &mut rng)).unwrap();
            let (mf, mg) = pair_of(o.p, &pair);
            let (_, four) = twisted_ly34(&o, &r, &mf, &mg);
            let consistent = residuals(&pair, &h, &rep, Config::default());
            let literal = residuals(&pair, &h, &rep, Config::literal());
            for t in Tuples::new(5, h.dim()) {
                let lifted = |m: &BTreeMap<Vec<usize>, Vec<Scalar>>| match m.get(&t) {
                    Some(v) => v.iter().map(|s| lift(o.p, s)).collect(),
                    None => vec![0; rep.carrier_dim()],
                };
                assert_eq!(lifted(&consistent), four.get(&t), "{t:?}");
                literal_differs += (lifted(&literal) != four.get(&t)) as usize;
            }
        }
    }
    assert!(literal_differs > 0);
}

#[test]
fn ns_reading_holds_on_every_operator_output() {
    let cfg = Config::default();
    let mut literal_fails = 0;
    for (_, ctx) in fixtures::gf2_contexts() {
        for m in all_matrices(ctx.field(), 2, 2).unwrap() {
            let op = TwistedOperator::candidate(m, ctx.clone()).unwrap();
            if !op.verify(&cfg).unwrap().ok() {
                continue;
            }
            let ns = ns_from_twisted_op(&op, &cfg).unwrap();
            assert!(verify_ns_hly(&ns, &cfg).ok());
            literal_fails += !verify_ns_hly(&ns, &Config::literal()).ok() as usize;
        }
    }
    assert!(literal_fails > 0);
}
