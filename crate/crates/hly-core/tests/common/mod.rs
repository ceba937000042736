//! Dense brute-force oracle over `Z/p`, written straight from the semidirect
//! product picture: a representation is valid when `A ⊕ V` is an HLY algebra,
//! a twisted operator is valid when its graph is a subalgebra of the twisted
//! semidirect product, and so on. Rational instances are reduced modulo a
//! large prime.
#![allow(dead_code)]

use hly_core::cohomology::CocyclePair;
use hly_core::exact::Tuples;
use hly_core::ns::NsHly;
use hly_core::representations::HlyRep;
use hly_core::structures::HlyAlgebra;
use hly_core::{Field, Matrix, Scalar, Tensor};
use num_bigint::BigInt;
use num_traits::ToPrimitive;

pub const BIG: u64 = 1_000_000_007;

pub fn modulus(field: Field) -> u64 {
    match field {
        Field::Rational => BIG,
        Field::Prime(p) => p as u64,
    }
}

pub fn add(p: u64, a: u64, b: u64) -> u64 {
    (a + b) % p
}

pub fn sub(p: u64, a: u64, b: u64) -> u64 {
    (a + p - b) % p
}

pub fn mul(p: u64, a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn pw(p: u64, mut a: u64, mut e: u64) -> u64 {
    let mut r = 1 % p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul(p, r, a);
        }
        a = mul(p, a, a);
        e >>= 1;
    }
    r
}

pub fn lift(p: u64, s: &Scalar) -> u64 {
    let (n, d) = s.to_ratio();
    let red = |x: BigInt| {
        let m = BigInt::from(p);
        (((x % &m) + &m) % &m).to_u64().unwrap()
    };
    mul(p, red(n), pw(p, red(d), p - 2))
}

fn vadd(p: u64, a: &mut [u64], c: u64, b: &[u64]) {
    for (x, y) in a.iter_mut().zip(b) {
        *x = add(p, *x, mul(p, c, *y));
    }
}

pub fn is_zero(v: &[u64]) -> bool {
    v.iter().all(|&x| x == 0)
}

/// Square or rectangular matrix, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct Mat {
    pub rows: usize,
    pub cols: usize,
    pub a: Vec<u64>,
}

impl Mat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            a: vec![0; rows * cols],
        }
    }

    pub fn id(p: u64, n: usize) -> Self {
        let mut m = Mat::zero(n, n);
        for i in 0..n {
            m.a[i * n + i] = 1 % p;
        }
        m
    }

    pub fn of(p: u64, m: &Matrix) -> Self {
        let mut out = Mat::zero(m.rows(), m.cols());
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                out.a[i * m.cols() + j] = lift(p, m.get(i, j));
            }
        }
        out
    }

    pub fn at(&self, i: usize, j: usize) -> u64 {
        self.a[i * self.cols + j]
    }

    pub fn apply(&self, p: u64, v: &[u64]) -> Vec<u64> {
        (0..self.rows)
            .map(|i| (0..self.cols).fold(0, |acc, j| add(p, acc, mul(p, self.at(i, j), v[j]))))
            .collect()
    }

    pub fn mul(&self, p: u64, o: &Mat) -> Mat {
        let mut out = Mat::zero(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let c = self.at(i, k);
                if c == 0 {
                    continue;
                }
                for j in 0..o.cols {
                    let x = &mut out.a[i * o.cols + j];
                    *x = add(p, *x, mul(p, c, o.at(k, j)));
                }
            }
        }
        out
    }

    pub fn lin(&self, p: u64, c: u64, o: &Mat) -> Mat {
        let mut out = self.clone();
        vadd(p, &mut out.a, c, &o.a);
        out
    }
}

/// Multilinear map `(F^n)^k → F^m` stored densely.
#[derive(Clone, Debug, PartialEq)]
pub struct Multi {
    pub arity: usize,
    pub n: usize,
    pub m: usize,
    pub c: Vec<u64>,
}

impl Multi {
    pub fn zero(arity: usize, n: usize, m: usize) -> Self {
        Multi {
            arity,
            n,
            m,
            c: vec![0; n.pow(arity as u32) * m],
        }
    }

    pub fn of(p: u64, t: &Tensor) -> Self {
        let mut out = Multi::zero(t.arity(), t.in_dim(), t.out_dim());
        for idx in Tuples::new(t.arity(), t.in_dim()) {
            let v: Vec<u64> = t.at(&idx).iter().map(|s| lift(p, s)).collect();
            out.set(&idx, &v);
        }
        out
    }

    fn offset(&self, idx: &[usize]) -> usize {
        idx.iter().fold(0, |acc, &i| acc * self.n + i) * self.m
    }

    pub fn get(&self, idx: &[usize]) -> &[u64] {
        let o = self.offset(idx);
        &self.c[o..o + self.m]
    }

    pub fn set(&mut self, idx: &[usize], v: &[u64]) {
        let o = self.offset(idx);
        self.c[o..o + self.m].copy_from_slice(v);
    }

    /// Evaluation on arbitrary vectors, skipping zero coordinates.
    pub fn eval(&self, p: u64, args: &[&[u64]]) -> Vec<u64> {
        let mut out = vec![0; self.m];
        let mut idx = vec![0; self.arity];
        self.walk(p, args, 0, 1 % p, &mut idx, &mut out);
        out
    }

    fn walk(
        &self,
        p: u64,
        args: &[&[u64]],
        depth: usize,
        c: u64,
        idx: &mut Vec<usize>,
        out: &mut [u64],
    ) {
        if depth == self.arity {
            vadd(p, out, c, self.get(idx));
            return;
        }
        for i in 0..self.n {
            let x = args[depth][i];
            if x != 0 {
                idx[depth] = i;
                self.walk(p, args, depth + 1, mul(p, c, x), idx, out);
            }
        }
    }
}

pub fn unit(p: u64, n: usize, i: usize) -> Vec<u64> {
    let mut v = vec![0; n];
    v[i] = 1 % p;
    v
}

/// `(α, [·,·], ⟦·,·,·⟧)` on one space.
#[derive(Clone, Debug)]
pub struct Alg {
    pub p: u64,
    pub n: usize,
    pub alpha: Mat,
    pub bin: Multi,
    pub tri: Multi,
}

impl Alg {
    pub fn of(h: &HlyAlgebra) -> Self {
        let p = modulus(h.field());
        Alg {
            p,
            n: h.dim(),
            alpha: Mat::of(p, h.alpha()),
            bin: Multi::of(p, h.binary()),
            tri: Multi::of(p, h.ternary()),
        }
    }

    pub fn e(&self, i: usize) -> Vec<u64> {
        unit(self.p, self.n, i)
    }

    pub fn br(&self, x: &[u64], y: &[u64]) -> Vec<u64> {
        self.bin.eval(self.p, &[x, y])
    }

    pub fn tr(&self, x: &[u64], y: &[u64], z: &[u64]) -> Vec<u64> {
        self.tri.eval(self.p, &[x, y, z])
    }

    pub fn a(&self, k: usize, x: &[u64]) -> Vec<u64> {
        (0..k).fold(x.to_vec(), |v, _| self.alpha.apply(self.p, &v))
    }

    fn lc(&self, terms: &[(bool, Vec<u64>)]) -> Vec<u64> {
        let mut out = vec![0; self.n];
        for (plus, v) in terms {
            let c = if *plus {
                1 % self.p
            } else {
                self.p - 1 % self.p
            };
            vadd(self.p, &mut out, c, v);
        }
        out
    }

    pub fn ly1(&self, x: &[u64], y: &[u64], z: &[u64]) -> Vec<u64> {
        let xs = [x, y, z];
        let mut terms = Vec::new();
        for k in 0..3 {
            let (a, b, c) = (xs[k], xs[(k + 1) % 3], xs[(k + 2) % 3]);
            terms.push((true, self.br(&self.br(a, b), &self.a(1, c))));
            terms.push((true, self.tr(a, b, c)));
        }
        self.lc(&terms)
    }

    pub fn ly2(&self, x: &[u64], y: &[u64], z: &[u64], w: &[u64]) -> Vec<u64> {
        let xs = [x, y, z];
        let aw = self.a(1, w);
        let terms: Vec<_> = (0..3)
            .map(|k| {
                let (a, b, c) = (xs[k], xs[(k + 1) % 3], xs[(k + 2) % 3]);
                (true, self.tr(&self.br(a, b), &self.a(1, c), &aw))
            })
            .collect();
        self.lc(&terms)
    }

    pub fn ly3(&self, x: &[u64], y: &[u64], z: &[u64], w: &[u64]) -> Vec<u64> {
        self.lc(&[
            (true, self.tr(&self.a(1, x), &self.a(1, y), &self.br(z, w))),
            (false, self.br(&self.tr(x, y, z), &self.a(2, w))),
            (false, self.br(&self.a(2, z), &self.tr(x, y, w))),
        ])
    }

    pub fn ly4(&self, x: &[u64], y: &[u64], z: &[u64], w: &[u64], u: &[u64]) -> Vec<u64> {
        let (x2, y2, z2, w2, u2) = (
            self.a(2, x),
            self.a(2, y),
            self.a(2, z),
            self.a(2, w),
            self.a(2, u),
        );
        self.lc(&[
            (true, self.tr(&x2, &y2, &self.tr(z, w, u))),
            (false, self.tr(&self.tr(x, y, z), &w2, &u2)),
            (false, self.tr(&z2, &self.tr(x, y, w), &u2)),
            (false, self.tr(&z2, &w2, &self.tr(x, y, u))),
        ])
    }

    /// Every axiom on every basis tuple, including `α` being multiplicative.
    pub fn is_hly(&self) -> bool {
        let p = self.p;
        let e: Vec<Vec<u64>> = (0..self.n).map(|i| self.e(i)).collect();
        for t in Tuples::new(2, self.n) {
            let mut skew = self.br(&e[t[0]], &e[t[1]]);
            vadd(p, &mut skew, 1, &self.br(&e[t[1]], &e[t[0]]));
            if !is_zero(&skew) || !is_zero(&self.br(&e[t[0]], &e[t[0]])) {
                return false;
            }
            let lhs = self.a(1, &self.br(&e[t[0]], &e[t[1]]));
            if lhs != self.br(&self.a(1, &e[t[0]]), &self.a(1, &e[t[1]])) {
                return false;
            }
        }
        for t in Tuples::new(3, self.n) {
            let (x, y, z) = (&e[t[0]], &e[t[1]], &e[t[2]]);
            let mut skew = self.tr(x, y, z);
            vadd(p, &mut skew, 1, &self.tr(y, x, z));
            if !is_zero(&skew) || !is_zero(&self.tr(x, x, z)) {
                return false;
            }
            let lhs = self.a(1, &self.tr(x, y, z));
            if lhs != self.tr(&self.a(1, x), &self.a(1, y), &self.a(1, z))
                || !is_zero(&self.ly1(x, y, z))
            {
                return false;
            }
        }
        for t in Tuples::new(4, self.n) {
            let (x, y, z, w) = (&e[t[0]], &e[t[1]], &e[t[2]], &e[t[3]]);
            if !is_zero(&self.ly2(x, y, z, w)) || !is_zero(&self.ly3(x, y, z, w)) {
                return false;
            }
        }
        Tuples::new(5, self.n)
            .all(|t| is_zero(&self.ly4(&e[t[0]], &e[t[1]], &e[t[2]], &e[t[3]], &e[t[4]])))
    }
}

/// `(β, ρ, θ)` on `V`, with `ρ[i]` and `θ[i][j]` acting on `V`.
#[derive(Clone, Debug)]
pub struct Rep {
    pub nv: usize,
    pub beta: Mat,
    pub rho: Vec<Mat>,
    pub theta: Vec<Vec<Mat>>,
}

impl Rep {
    pub fn of(p: u64, r: &HlyRep) -> Self {
        let n = r.algebra_dim();
        Rep {
            nv: r.carrier_dim(),
            beta: Mat::of(p, r.beta()),
            rho: r.rho().iter().map(|m| Mat::of(p, m)).collect(),
            theta: (0..n)
                .map(|i| (0..n).map(|j| Mat::of(p, r.theta_at(i, j))).collect())
                .collect(),
        }
    }

    pub fn rho_of(&self, p: u64, x: &[u64]) -> Mat {
        x.iter()
            .enumerate()
            .fold(Mat::zero(self.nv, self.nv), |acc, (i, &c)| {
                acc.lin(p, c, &self.rho[i])
            })
    }

    pub fn theta_of(&self, p: u64, x: &[u64], y: &[u64]) -> Mat {
        let mut acc = Mat::zero(self.nv, self.nv);
        for (i, &a) in x.iter().enumerate() {
            for (j, &b) in y.iter().enumerate() {
                acc = acc.lin(p, mul(p, a, b), &self.theta[i][j]);
            }
        }
        acc
    }

    /// `θ(y,x) − θ(x,y) + ρ(αx)ρ(y) − ρ(αy)ρ(x) − ρ([x,y])β`.
    pub fn d(&self, h: &Alg, x: &[u64], y: &[u64]) -> Mat {
        let p = h.p;
        let m1 = p - 1;
        let ax = self.rho_of(p, &h.a(1, x)).mul(p, &self.rho_of(p, y));
        let ay = self.rho_of(p, &h.a(1, y)).mul(p, &self.rho_of(p, x));
        let last = self.rho_of(p, &h.br(x, y)).mul(p, &self.beta);
        self.theta_of(p, y, x)
            .lin(p, m1, &self.theta_of(p, x, y))
            .lin(p, 1, &ax)
            .lin(p, m1, &ay)
            .lin(p, m1, &last)
    }
}

pub fn block(m: &Mat, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Mat {
    let mut out = Mat::zero(rows.len(), cols.len());
    for (i, r) in rows.clone().enumerate() {
        for (j, c) in cols.clone().enumerate() {
            out.a[i * cols.len() + j] = m.at(r, c);
        }
    }
    out
}

/// `A ⊕ V` with `[x+u, y+v] = [x,y] + ρ(x)v − ρ(y)u + F(x,y)` and
/// `⟦x+u, y+v, z+w⟧ = ⟦x,y,z⟧ + D(x,y)w + θ(y,z)u − θ(x,z)v + G(x,y,z)`.
pub fn semidirect(h: &Alg, r: &Rep, f: Option<&Multi>, g: Option<&Multi>) -> Alg {
    let (p, n, nv) = (h.p, h.n, r.nv);
    let dim = n + nv;
    let mut alpha = Mat::zero(dim, dim);
    for i in 0..n {
        for j in 0..n {
            alpha.a[i * dim + j] = h.alpha.at(i, j);
        }
    }
    for i in 0..nv {
        for j in 0..nv {
            alpha.a[(n + i) * dim + n + j] = r.beta.at(i, j);
        }
    }
    let split = |v: &[u64]| (v[..n].to_vec(), v[n..].to_vec());
    let join = |a: Vec<u64>, b: Vec<u64>| [a, b].concat();
    let e = |i: usize| unit(p, dim, i);
    let mut bin = Multi::zero(2, dim, dim);
    for t in Tuples::new(2, dim) {
        let ((x, u), (y, v)) = (split(&e(t[0])), split(&e(t[1])));
        let mut out_v = r.rho_of(p, &x).apply(p, &v);
        vadd(p, &mut out_v, p - 1, &r.rho_of(p, &y).apply(p, &u));
        if let Some(f) = f {
            vadd(p, &mut out_v, 1, &f.eval(p, &[&x, &y]));
        }
        bin.set(&t, &join(h.br(&x, &y), out_v));
    }
    let mut tri = Multi::zero(3, dim, dim);
    for t in Tuples::new(3, dim) {
        let ((x, u), (y, v), (z, w)) = (split(&e(t[0])), split(&e(t[1])), split(&e(t[2])));
        let mut out_v = r.d(h, &x, &y).apply(p, &w);
        vadd(p, &mut out_v, 1, &r.theta_of(p, &y, &z).apply(p, &u));
        vadd(p, &mut out_v, p - 1, &r.theta_of(p, &x, &z).apply(p, &v));
        if let Some(g) = g {
            vadd(p, &mut out_v, 1, &g.eval(p, &[&x, &y, &z]));
        }
        tri.set(&t, &join(h.tr(&x, &y, &z), out_v));
    }
    Alg {
        p,
        n: dim,
        alpha,
        bin,
        tri,
    }
}

pub fn pair_of(p: u64, pair: &CocyclePair) -> (Multi, Multi) {
    (Multi::of(p, pair.f()), Multi::of(p, pair.g()))
}

/// The graph `{Tu + u}` is closed under both brackets and under `α ⊕ β`.
pub fn graph_closed(s: &Alg, n: usize, t: &Mat) -> bool {
    let p = s.p;
    let nv = s.n - n;
    let lift_u = |u: usize| [t.apply(p, &unit(p, nv, u)), unit(p, nv, u)].concat();
    let inside = |v: &[u64]| t.apply(p, &v[n..]) == v[..n];
    let gs: Vec<Vec<u64>> = (0..nv).map(lift_u).collect();
    gs.iter().all(|g| inside(&s.alpha.apply(p, g)))
        && Tuples::new(2, nv).all(|i| inside(&s.br(&gs[i[0]], &gs[i[1]])))
        && Tuples::new(3, nv).all(|i| inside(&s.tr(&gs[i[0]], &gs[i[1]], &gs[i[2]])))
}

/// The V-parts of the brackets of graph elements, as an algebra on `V`.
pub fn graph_structure(s: &Alg, n: usize, t: &Mat) -> Alg {
    let p = s.p;
    let nv = s.n - n;
    let gs: Vec<Vec<u64>> = (0..nv)
        .map(|u| [t.apply(p, &unit(p, nv, u)), unit(p, nv, u)].concat())
        .collect();
    let mut bin = Multi::zero(2, nv, nv);
    for i in Tuples::new(2, nv) {
        bin.set(&i, &s.br(&gs[i[0]], &gs[i[1]])[n..]);
    }
    let mut tri = Multi::zero(3, nv, nv);
    for i in Tuples::new(3, nv) {
        tri.set(&i, &s.tr(&gs[i[0]], &gs[i[1]], &gs[i[2]])[n..]);
    }
    Alg {
        p,
        n: nv,
        alpha: block(&s.alpha, n..s.n, n..s.n),
        bin,
        tri,
    }
}

/// Failure of `id + f` to preserve both brackets of `A ⋉ V`, restricted to
/// `A`: the binary and ternary residuals.
pub fn morphism_residual(h: &Alg, r: &Rep, f: &Mat) -> (Multi, Multi) {
    let p = h.p;
    let s = semidirect(h, r, None, None);
    let up = |x: &[u64]| [x.to_vec(), f.apply(p, x)].concat();
    let mut b = Multi::zero(2, h.n, r.nv);
    for t in Tuples::new(2, h.n) {
        let (x, y) = (h.e(t[0]), h.e(t[1]));
        let mut v = s.br(&up(&x), &up(&y))[h.n..].to_vec();
        vadd(p, &mut v, p - 1, &f.apply(p, &h.br(&x, &y)));
        b.set(&t, &v);
    }
    let mut c = Multi::zero(3, h.n, r.nv);
    for t in Tuples::new(3, h.n) {
        let (x, y, z) = (h.e(t[0]), h.e(t[1]), h.e(t[2]));
        let mut v = s.tr(&up(&x), &up(&y), &up(&z))[h.n..].to_vec();
        vadd(p, &mut v, p - 1, &f.apply(p, &h.tr(&x, &y, &z)));
        c.set(&t, &v);
    }
    (b, c)
}

/// V-parts of the `LY3` and `LY4` residuals of the twisted semidirect
/// product, on basis tuples of `A`.
pub fn twisted_ly34(h: &Alg, r: &Rep, f: &Multi, g: &Multi) -> (Multi, Multi) {
    let s = semidirect(h, r, Some(f), Some(g));
    let e = |i: usize| unit(h.p, s.n, i);
    let mut three = Multi::zero(4, h.n, r.nv);
    for t in Tuples::new(4, h.n) {
        three.set(&t, &s.ly3(&e(t[0]), &e(t[1]), &e(t[2]), &e(t[3]))[h.n..]);
    }
    let mut four = Multi::zero(5, h.n, r.nv);
    for t in Tuples::new(5, h.n) {
        four.set(
            &t,
            &s.ly4(&e(t[0]), &e(t[1]), &e(t[2]), &e(t[3]), &e(t[4]))[h.n..],
        );
    }
    (three, four)
}

pub fn neg(p: u64, m: &Multi) -> Multi {
    let mut out = m.clone();
    for x in out.c.iter_mut() {
        *x = (p - *x) % p;
    }
    out
}

/// The NS operations as a representation of the algebra they generate:
/// `ρ(x)y = x∘y`, `θ(x,y)z = {z,x,y}`, cocycle `(⋎, [·,·,·])`, and the algebra
/// itself read off the graph of the identity.
pub struct NsPicture {
    pub alg: Alg,
    pub rep: Rep,
    pub f: Multi,
    pub g: Multi,
}

pub fn ns_picture(ns: &NsHly) -> NsPicture {
    let p = modulus(ns.field());
    let n = ns.dim();
    let circ = Multi::of(p, ns.circ());
    let curly = Multi::of(p, ns.curly());
    let f = Multi::of(p, ns.vee());
    let g = Multi::of(p, ns.square());
    let alpha = Mat::of(p, ns.alpha());
    let rho = (0..n)
        .map(|x| {
            let mut m = Mat::zero(n, n);
            for y in 0..n {
                for (row, &c) in circ.get(&[x, y]).iter().enumerate() {
                    m.a[row * n + y] = c;
                }
            }
            m
        })
        .collect();
    let theta = (0..n)
        .map(|x| {
            (0..n)
                .map(|y| {
                    let mut m = Mat::zero(n, n);
                    for z in 0..n {
                        for (row, &c) in curly.get(&[z, x, y]).iter().enumerate() {
                            m.a[row * n + z] = c;
                        }
                    }
                    m
                })
                .collect()
        })
        .collect();
    let rep = Rep {
        nv: n,
        beta: alpha.clone(),
        rho,
        theta,
    };
    // Bootstrap: the brackets of the identity's graph only need the
    // algebra's binary bracket inside D, which is itself a V-part.
    let mut bin = Multi::zero(2, n, n);
    for t in Tuples::new(2, n) {
        let mut v = rep.rho[t[0]].apply(p, &unit(p, n, t[1]));
        vadd(p, &mut v, p - 1, &rep.rho[t[1]].apply(p, &unit(p, n, t[0])));
        vadd(p, &mut v, 1, f.get(&t));
        bin.set(&t, &v);
    }
    let mut alg = Alg {
        p,
        n,
        alpha,
        bin,
        tri: Multi::zero(3, n, n),
    };
    let s = semidirect(&alg, &rep, Some(&f), Some(&g));
    alg.tri = graph_structure(&s, n, &Mat::id(p, n)).tri;
    NsPicture { alg, rep, f, g }
}

impl NsPicture {
    /// The algebra is HLY, the rep is a rep, the twisted semidirect product
    /// is HLY (so the identity is a twisted operator).
    pub fn holds(&self) -> bool {
        self.alg.is_hly()
            && semidirect(&self.alg, &self.rep, None, None).is_hly()
            && semidirect(&self.alg, &self.rep, Some(&self.f), Some(&self.g)).is_hly()
    }
}

/// Truncated polynomials in `t`: coefficient vectors of length `order + 1`.
pub type Poly = Vec<u64>;

pub fn pmul(p: u64, a: &[u64], b: &[u64]) -> Poly {
    let mut out = vec![0; a.len()];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate().take(a.len() - i) {
            out[i + j] = add(p, out[i + j], mul(p, x, y));
        }
    }
    out
}

/// Matrix with polynomial entries, row-major.
#[derive(Clone, Debug)]
pub struct PMat {
    pub rows: usize,
    pub cols: usize,
    pub a: Vec<Poly>,
}

impl PMat {
    pub fn series(p: u64, coeffs: &[Matrix]) -> Self {
        let (rows, cols) = (coeffs[0].rows(), coeffs[0].cols());
        let mut a = vec![vec![0; coeffs.len()]; rows * cols];
        for (s, m) in coeffs.iter().enumerate() {
            for i in 0..rows {
                for j in 0..cols {
                    a[i * cols + j][s] = lift(p, m.get(i, j));
                }
            }
        }
        PMat { rows, cols, a }
    }

    pub fn constant(m: &Mat, len: usize) -> Self {
        let a =
            m.a.iter()
                .map(|&x| {
                    let mut v = vec![0; len];
                    v[0] = x;
                    v
                })
                .collect();
        PMat {
            rows: m.rows,
            cols: m.cols,
            a,
        }
    }

    pub fn mul(&self, p: u64, o: &PMat) -> PMat {
        let len = self.a[0].len();
        let mut a = vec![vec![0; len]; self.rows * o.cols];
        for i in 0..self.rows {
            for k in 0..self.cols {
                for j in 0..o.cols {
                    let prod = pmul(p, &self.a[i * self.cols + k], &o.a[k * o.cols + j]);
                    vadd(p, &mut a[i * o.cols + j], 1, &prod);
                }
            }
        }
        PMat {
            rows: self.rows,
            cols: o.cols,
            a,
        }
    }

    pub fn sub(&self, p: u64, o: &PMat) -> PMat {
        let mut out = self.clone();
        for (x, y) in out.a.iter_mut().zip(&o.a) {
            vadd(p, x, p - 1, y);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.a.iter().all(|v| is_zero(v))
    }

    pub fn column(&self, j: usize) -> Vec<Poly> {
        (0..self.rows)
            .map(|i| self.a[i * self.cols + j].clone())
            .collect()
    }

    pub fn apply(&self, p: u64, v: &[Poly]) -> Vec<Poly> {
        (0..self.rows)
            .map(|i| {
                let mut acc = vec![0; v[0].len()];
                for (j, x) in v.iter().enumerate() {
                    vadd(p, &mut acc, 1, &pmul(p, &self.a[i * self.cols + j], x));
                }
                acc
            })
            .collect()
    }
}

/// A constant multilinear map on polynomial vectors.
pub fn peval(p: u64, m: &Multi, args: &[&[Poly]]) -> Vec<Poly> {
    let len = args[0][0].len();
    let mut out = vec![vec![0; len]; m.m];
    for idx in Tuples::new(m.arity, m.n) {
        let mut c = vec![0; len];
        c[0] = 1 % p;
        for (slot, &i) in idx.iter().enumerate() {
            c = pmul(p, &c, &args[slot][i]);
            if is_zero(&c) {
                break;
            }
        }
        if is_zero(&c) {
            continue;
        }
        for (k, &x) in m.get(&idx).iter().enumerate() {
            if x != 0 {
                vadd(p, &mut out[k], x, &c);
            }
        }
    }
    out
}

/// The graph of `T_t` is closed in the twisted semidirect product over
/// `F[t]/t^{N+1}`.
pub fn deformed_graph_closed(s: &Alg, n: usize, tt: &PMat) -> bool {
    let p = s.p;
    let nv = s.n - n;
    let len = tt.a[0].len();
    let constant = |x: u64| {
        let mut v = vec![0; len];
        v[0] = x;
        v
    };
    let gs: Vec<Vec<Poly>> = (0..nv)
        .map(|u| {
            let mut g = tt.column(u);
            g.extend((0..nv).map(|k| constant((k == u) as u64)));
            g
        })
        .collect();
    let inside = |v: &[Poly]| {
        let img = tt.apply(p, &v[n..]);
        img.iter().zip(&v[..n]).all(|(a, b)| a == b)
    };
    let alpha = PMat::constant(&s.alpha, len);
    gs.iter().all(|g| inside(&alpha.apply(p, g)))
        && Tuples::new(2, nv).all(|i| inside(&peval(p, &s.bin, &[&gs[i[0]], &gs[i[1]]])))
        && Tuples::new(3, nv).all(|i| inside(&peval(p, &s.tri, &[&gs[i[0]], &gs[i[1]], &gs[i[2]]])))
}

/// Rank over `Z/p` by elimination on row vectors.
pub fn rank(p: u64, mut rows: Vec<Vec<u64>>) -> usize {
    let mut r = 0;
    let cols = rows.first().map_or(0, Vec::len);
    for c in 0..cols {
        let Some(piv) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, piv);
        let inv = pw(p, rows[r][c], p - 2);
        let pivot: Vec<u64> = rows[r].iter().map(|&x| mul(p, x, inv)).collect();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && row[c] != 0 {
                let k = p - row[c];
                vadd(p, row, k, &pivot);
            }
        }
        rows[r] = pivot;
        r += 1;
    }
    r
}

impl PMat {
    pub fn scaled(&self, p: u64, c: &[u64]) -> PMat {
        PMat {
            rows: self.rows,
            cols: self.cols,
            a: self.a.iter().map(|x| pmul(p, x, c)).collect(),
        }
    }

    pub fn add(&self, p: u64, o: &PMat) -> PMat {
        let mut out = self.clone();
        for (x, y) in out.a.iter_mut().zip(&o.a) {
            vadd(p, x, 1, y);
        }
        out
    }
}
