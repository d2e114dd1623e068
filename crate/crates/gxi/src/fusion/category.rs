use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use rayon::prelude::*;

use super::{FusionError, FusionRing, Obj, Word};
use crate::kernel::{Field, FromScalar, Mat, Scalar};
use crate::report::CheckReport;

/// Skeletal fusion category: fusion ring, F-symbols and quantum dimensions.
///
/// `F^{abc}_d` expresses left-associated trees `(α ⊗ 1)β` in the right-associated
/// basis `(1 ⊗ μ)ν`. Rows run over `(e, α ∈ V^{ab}_e, β ∈ V^{ec}_d)` and columns over
/// `(f, μ ∈ V^{bc}_f, ν ∈ V^{af}_d)`, both lexicographic.
pub struct SkeletalCategory<F> {
    ring: FusionRing,
    fsym: Vec<Mat<F>>,
    row_off: Vec<usize>,
    col_off: Vec<usize>,
    dims: Vec<F>,
    pub(super) split_cache: RwLock<HashMap<(Word, Word), Arc<Vec<Mat<F>>>>>,
}

impl<F: Field> Clone for SkeletalCategory<F> {
    fn clone(&self) -> Self {
        SkeletalCategory {
            ring: self.ring.clone(),
            fsym: self.fsym.clone(),
            row_off: self.row_off.clone(),
            col_off: self.col_off.clone(),
            dims: self.dims.clone(),
            split_cache: RwLock::new(HashMap::new()),
        }
    }
}

impl<F: Field> std::fmt::Debug for SkeletalCategory<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SkeletalCategory")
            .field("labels", &self.ring.labels())
            .finish_non_exhaustive()
    }
}

impl<F: Field> SkeletalCategory<F> {
    /// `fblock(a, b, c, d)` returns the F-block for an admissible quadruple, or
    /// `None` for the identity.
    pub fn new(
        ring: FusionRing,
        mut fblock: impl FnMut(usize, usize, usize, usize) -> Option<Mat<F>>,
        dims: Vec<F>,
    ) -> Result<Self, FusionError> {
        let r = ring.rank();
        if dims.len() != r {
            return Err(FusionError::Malformed("one dimension per label required".into()));
        }
        let mut fsym = Vec::with_capacity(r * r * r * r);
        let mut row_off = vec![0; r.pow(5)];
        let mut col_off = vec![0; r.pow(5)];
        for a in 0..r {
            for b in 0..r {
                for c in 0..r {
                    for d in 0..r {
                        let q = ((a * r + b) * r + c) * r + d;
                        let (mut ro, mut co) = (0, 0);
                        for x in 0..r {
                            row_off[q * r + x] = ro;
                            col_off[q * r + x] = co;
                            ro += ring.n(a, b, x) * ring.n(x, c, d);
                            co += ring.n(b, c, x) * ring.n(a, x, d);
                        }
                        debug_assert_eq!(ro, co);
                        let m = match fblock(a, b, c, d) {
                            Some(m) => m,
                            None => Mat::identity(ro),
                        };
                        if m.shape() != (ro, ro) {
                            return Err(FusionError::Shape(format!(
                                "F block ({},{},{};{}) must be {ro}x{ro}, got {:?}",
                                ring.name(a),
                                ring.name(b),
                                ring.name(c),
                                ring.name(d),
                                m.shape()
                            )));
                        }
                        fsym.push(m);
                    }
                }
            }
        }
        Ok(SkeletalCategory {
            ring,
            fsym,
            row_off,
            col_off,
            dims,
            split_cache: RwLock::new(HashMap::new()),
        })
    }

    pub fn ring(&self) -> &FusionRing {
        &self.ring
    }

    pub fn rank(&self) -> usize {
        self.ring.rank()
    }

    #[inline]
    pub fn n(&self, a: usize, b: usize, c: usize) -> usize {
        self.ring.n(a, b, c)
    }

    pub fn unit(&self) -> usize {
        self.ring.unit()
    }

    pub fn dual(&self, a: usize) -> usize {
        self.ring.dual(a)
    }

    pub fn simple(&self, a: usize) -> Obj {
        self.ring.simple(a)
    }

    pub fn fuse(&self, a: usize, b: usize) -> Obj {
        self.ring.fuse(a, b)
    }

    pub fn qdim(&self, a: usize) -> &F {
        &self.dims[a]
    }

    pub fn dims(&self) -> &[F] {
        &self.dims
    }

    /// Quantum dimension of a formal sum.
    pub fn obj_dim(&self, x: &Obj) -> F {
        let mut d = F::zero();
        for a in x.support() {
            d += &(F::from_i64(x.mult(a) as i64) * &self.dims[a]);
        }
        d
    }

    #[inline]
    fn quad(&self, a: usize, b: usize, c: usize, d: usize) -> usize {
        let r = self.rank();
        ((a * r + b) * r + c) * r + d
    }

    pub fn f(&self, a: usize, b: usize, c: usize, d: usize) -> &Mat<F> {
        &self.fsym[self.quad(a, b, c, d)]
    }

    /// Row of `(e, α, β)` in `F^{abc}_d`.
    #[inline]
    #[allow(clippy::too_many_arguments)]
    pub fn f_row(&self, a: usize, b: usize, c: usize, d: usize, e: usize, alpha: usize, beta: usize) -> usize {
        self.row_off[self.quad(a, b, c, d) * self.rank() + e] + alpha * self.n(e, c, d) + beta
    }

    /// Column of `(f, μ, ν)` in `F^{abc}_d`.
    #[inline]
    #[allow(clippy::too_many_arguments)]
    pub fn f_col(&self, a: usize, b: usize, c: usize, d: usize, f: usize, mu: usize, nu: usize) -> usize {
        self.col_off[self.quad(a, b, c, d) * self.rank() + f] + mu * self.n(a, f, d) + nu
    }

    /// Replaces one F-block; used to build perturbed instances.
    pub fn with_f_block(mut self, a: usize, b: usize, c: usize, d: usize, m: Mat<F>) -> Self {
        let q = self.quad(a, b, c, d);
        assert_eq!(self.fsym[q].shape(), m.shape(), "F block shape");
        self.fsym[q] = m;
        self.split_cache = RwLock::new(HashMap::new());
        self
    }

    fn names(&self, ls: &[usize]) -> String {
        let keys = ["a", "b", "c", "d", "e"];
        ls.iter()
            .zip(keys)
            .map(|(&l, k)| format!("{k}={}", self.ring.name(l)))
            .collect::<Vec<_>>()
            .join(" ")
    }

    fn quads(&self) -> Vec<[usize; 4]> {
        let r = self.rank();
        let mut out = Vec::new();
        for a in 0..r {
            for b in 0..r {
                for c in 0..r {
                    for d in 0..r {
                        if self.f(a, b, c, d).rows() > 0 {
                            out.push([a, b, c, d]);
                        }
                    }
                }
            }
        }
        out
    }

    /// Pentagon, triangle and unitarity over all admissible tuples, plus the ring
    /// axioms and the dimension character.
    pub fn check_pentagon(&self) -> CheckReport {
        let mut rep = CheckReport::new("fusion");
        let ring_ok = self.ring.check_axioms();
        rep.single("ring_axioms", ring_ok.is_ok(), || ring_ok.clone().unwrap_err());
        if ring_ok.is_err() {
            return rep;
        }
        let r = self.rank();
        let u = self.unit();
        let quads = self.quads();
        rep.tally(
            "f_unitary",
            quads
                .par_iter()
                .map(|&[a, b, c, d]| {
                    let m = self.f(a, b, c, d);
                    (!m.mul(&m.adjoint()).is_identity()).then(|| self.names(&[a, b, c, d]))
                })
                .collect::<Vec<_>>(),
        );
        rep.tally(
            "triangle",
            quads
                .iter()
                .filter(|q| q[..3].contains(&u))
                .map(|&[a, b, c, d]| (!self.f(a, b, c, d).is_identity()).then(|| self.names(&[a, b, c, d])))
                .collect::<Vec<_>>(),
        );
        let tuples: Vec<[usize; 5]> = (0..r.pow(5))
            .map(|i| [i / r.pow(4), (i / r.pow(3)) % r, (i / r.pow(2)) % r, (i / r) % r, i % r])
            .collect();
        rep.tally(
            "pentagon",
            tuples
                .par_iter()
                .filter_map(|t| self.pentagon_at(*t))
                .collect::<Vec<_>>(),
        );
        rep.tally(
            "dims_character",
            (0..r * r)
                .map(|i| {
                    let (a, b) = (i / r, i % r);
                    let lhs = self.dims[a].clone() * &self.dims[b];
                    let rhs = self.obj_dim(&self.fuse(a, b));
                    (!lhs.eq_field(&rhs)).then(|| self.names(&[a, b]))
                })
                .collect::<Vec<_>>(),
        );
        rep.tally(
            "dims_at_least_one",
            (0..r)
                .map(|a| {
                    let d = &self.dims[a];
                    let ok = d.eq_field(&d.conj()) && (d.clone() - F::one()).to_c64().re > -1e-12;
                    (!ok).then(|| self.names(&[a]))
                })
                .collect::<Vec<_>>(),
        );
        rep
    }

    /// `None` when the tuple is inadmissible; `Some(None)` on success.
    fn pentagon_at(&self, [a, b, c, d, e]: [usize; 5]) -> Option<Option<String>> {
        let r = self.rank();
        let n = |x, y, z| self.n(x, y, z);
        // left-most tree ((ab)c)d: (f, α, g, β, γ); right-most a(b(cd)): (l, μ, k, ρ, σ)
        let mut src = Vec::new();
        for f in 0..r {
            for g in 0..r {
                let cnt = n(a, b, f) * n(f, c, g) * n(g, d, e);
                if cnt == 0 {
                    continue;
                }
                for al in 0..n(a, b, f) {
                    for be in 0..n(f, c, g) {
                        for ga in 0..n(g, d, e) {
                            src.push((f, al, g, be, ga));
                        }
                    }
                }
            }
        }
        if src.is_empty() {
            return None;
        }
        let mut dst = Vec::new();
        for l in 0..r {
            for k in 0..r {
                if n(c, d, l) * n(b, l, k) * n(a, k, e) == 0 {
                    continue;
                }
                for mu in 0..n(c, d, l) {
                    for rho in 0..n(b, l, k) {
                        for si in 0..n(a, k, e) {
                            dst.push((l, mu, k, rho, si));
                        }
                    }
                }
            }
        }
        for &(f, al, g, be, ga) in &src {
            for &(l, mu, k, rho, si) in &dst {
                let mut p1 = F::zero();
                let fa = self.f(f, c, d, e);
                let fb = self.f(a, b, l, e);
                for nu in 0..n(f, l, e) {
                    let x = &fa[(self.f_row(f, c, d, e, g, be, ga), self.f_col(f, c, d, e, l, mu, nu))];
                    if x.is_zero() {
                        continue;
                    }
                    let y = &fb[(self.f_row(a, b, l, e, f, al, nu), self.f_col(a, b, l, e, k, rho, si))];
                    p1.add_mul(x, y);
                }
                let mut p2 = F::zero();
                let f1 = self.f(a, b, c, g);
                for h in 0..r {
                    if n(b, c, h) == 0 || n(a, h, g) == 0 || n(h, d, k) == 0 {
                        continue;
                    }
                    let f2 = self.f(a, h, d, e);
                    let f3 = self.f(b, c, d, k);
                    for de in 0..n(b, c, h) {
                        for ep in 0..n(a, h, g) {
                            let x = &f1[(self.f_row(a, b, c, g, f, al, be), self.f_col(a, b, c, g, h, de, ep))];
                            if x.is_zero() {
                                continue;
                            }
                            for ze in 0..n(h, d, k) {
                                let y = &f2[(self.f_row(a, h, d, e, g, ep, ga), self.f_col(a, h, d, e, k, ze, si))];
                                if y.is_zero() {
                                    continue;
                                }
                                let z = &f3[(self.f_row(b, c, d, k, h, de, ze), self.f_col(b, c, d, k, l, mu, rho))];
                                if z.is_zero() {
                                    continue;
                                }
                                p2.add_mul(&(x.clone() * y), z);
                            }
                        }
                    }
                }
                if !p1.eq_field(&p2) {
                    return Some(Some(format!(
                        "{} f={} g={} l={} k={}",
                        self.names(&[a, b, c, d, e]),
                        self.ring.name(f),
                        self.ring.name(g),
                        self.ring.name(l),
                        self.ring.name(k)
                    )));
                }
            }
        }
        Some(None)
    }
}

impl SkeletalCategory<Scalar> {
    /// Same category over another working field.
    pub fn convert<G: FromScalar>(&self, tol: f64) -> SkeletalCategory<G> {
        SkeletalCategory {
            ring: self.ring.clone(),
            fsym: self.fsym.iter().map(|m| m.map(|x| G::from_scalar(x, tol))).collect(),
            row_off: self.row_off.clone(),
            col_off: self.col_off.clone(),
            dims: self.dims.iter().map(|x| G::from_scalar(x, tol)).collect(),
            split_cache: RwLock::new(HashMap::new()),
        }
    }
}
