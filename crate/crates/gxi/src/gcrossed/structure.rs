use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use super::{FiniteGroup, GCrossedError};
use crate::fusion::{FusionRing, Mor, Obj, SkeletalCategory, Word};
use crate::kernel::{Field, FromScalar, Mat, Scalar};

/// Grading, strict action and crossed braiding on a skeletal category.
///
/// The action of `g` sends the vertex `v^{ab}_{c,μ}` to
/// `Σ_ν A^g_{abc}[ν][μ] v^{γa,γb}_{γc,ν}`, and the braiding acts on vertices by
/// `c(a,b) v^{ab}_{c,μ} = Σ_ν R^{ab}_c[ν][μ] v^{γb,a}_{c,ν}` with `γ = γ_{∂a}`.
pub struct GCrossed<F> {
    cat: SkeletalCategory<F>,
    group: FiniteGroup,
    grading: Vec<usize>,
    perm: Vec<Vec<usize>>,
    vert: Vec<Mat<F>>,
    rmat: Vec<Mat<F>>,
    act_cache: RwLock<HashMap<(usize, Word), Arc<Vec<Mat<F>>>>>,
}

impl<F: Field> Clone for GCrossed<F> {
    fn clone(&self) -> Self {
        GCrossed {
            cat: self.cat.clone(),
            group: self.group.clone(),
            grading: self.grading.clone(),
            perm: self.perm.clone(),
            vert: self.vert.clone(),
            rmat: self.rmat.clone(),
            act_cache: RwLock::new(HashMap::new()),
        }
    }
}

impl<F: Field> std::fmt::Debug for GCrossed<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("GCrossed")
            .field("cat", &self.cat)
            .field("group", &self.group.names())
            .finish_non_exhaustive()
    }
}

impl<F: Field> GCrossed<F> {
    /// Missing vertex or R blocks default to identities.
    pub fn new(
        cat: SkeletalCategory<F>,
        group: FiniteGroup,
        grading: Vec<usize>,
        perm: Vec<Vec<usize>>,
        mut vert: impl FnMut(usize, usize, usize, usize) -> Option<Mat<F>>,
        mut rblock: impl FnMut(usize, usize, usize) -> Option<Mat<F>>,
    ) -> Result<Self, GCrossedError> {
        let r = cat.rank();
        let name = |a: usize| cat.ring().name(a).to_string();
        if grading.len() != r || grading.iter().any(|&g| g >= group.order()) {
            return Err(GCrossedError::Malformed("grading must map every label into the group".into()));
        }
        if perm.len() != group.order() {
            return Err(GCrossedError::Malformed("one label permutation per group element".into()));
        }
        for p in &perm {
            let mut s = p.clone();
            s.sort_unstable();
            if s != (0..r).collect::<Vec<_>>() {
                return Err(GCrossedError::Malformed("action on labels must be a permutation".into()));
            }
        }
        let mut vs = Vec::with_capacity(group.order() * r * r * r);
        for g in group.elements() {
            for a in 0..r {
                for b in 0..r {
                    for c in 0..r {
                        let n = cat.n(a, b, c);
                        let np = cat.n(perm[g][a], perm[g][b], perm[g][c]);
                        let m = vert(g, a, b, c).unwrap_or_else(|| Mat::identity(n));
                        if m.shape() != (np, n) {
                            return Err(GCrossedError::Shape(format!(
                                "action block g={} ({},{};{}) must be {np}x{n}",
                                group.name(g),
                                name(a),
                                name(b),
                                name(c)
                            )));
                        }
                        vs.push(m);
                    }
                }
            }
        }
        let mut rs = Vec::with_capacity(r * r * r);
        for a in 0..r {
            let ga = grading[a];
            for b in 0..r {
                let gb = perm[ga][b];
                for c in 0..r {
                    let n = cat.n(a, b, c);
                    let np = cat.n(gb, a, c);
                    let m = rblock(a, b, c).unwrap_or_else(|| Mat::identity(n));
                    if m.shape() != (np, n) {
                        return Err(GCrossedError::Shape(format!(
                            "R block ({},{};{}) must be {np}x{n}",
                            name(a),
                            name(b),
                            name(c)
                        )));
                    }
                    rs.push(m);
                }
            }
        }
        Ok(GCrossed {
            cat,
            group,
            grading,
            perm,
            vert: vs,
            rmat: rs,
            act_cache: RwLock::new(HashMap::new()),
        })
    }

    /// Trivial group, trivial grading and action, braiding from `rblock`.
    pub fn braided(
        cat: SkeletalCategory<F>,
        rblock: impl FnMut(usize, usize, usize) -> Option<Mat<F>>,
    ) -> Result<Self, GCrossedError> {
        let r = cat.rank();
        GCrossed::new(
            cat,
            FiniteGroup::trivial(),
            vec![0; r],
            vec![(0..r).collect()],
            |_, _, _, _| None,
            rblock,
        )
    }

    pub fn cat(&self) -> &SkeletalCategory<F> {
        &self.cat
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn rank(&self) -> usize {
        self.cat.rank()
    }

    pub fn grade(&self, a: usize) -> usize {
        self.grading[a]
    }

    pub fn grading(&self) -> &[usize] {
        &self.grading
    }

    pub fn act_label(&self, g: usize, a: usize) -> usize {
        self.perm[g][a]
    }

    pub fn perms(&self) -> &[Vec<usize>] {
        &self.perm
    }

    #[inline]
    pub fn vertex_action(&self, g: usize, a: usize, b: usize, c: usize) -> &Mat<F> {
        let r = self.rank();
        &self.vert[((g * r + a) * r + b) * r + c]
    }

    #[inline]
    pub fn r_block(&self, a: usize, b: usize, c: usize) -> &Mat<F> {
        let r = self.rank();
        &self.rmat[(a * r + b) * r + c]
    }

    /// Replaces one R-block; used to build perturbed instances.
    pub fn with_r_block(mut self, a: usize, b: usize, c: usize, m: Mat<F>) -> Self {
        let r = self.rank();
        assert_eq!(self.rmat[(a * r + b) * r + c].shape(), m.shape(), "R block shape");
        self.rmat[(a * r + b) * r + c] = m;
        self
    }

    /// Degree of an object whose summands all share one degree.
    pub fn obj_degree(&self, x: &Obj) -> Option<usize> {
        let mut it = x.support().map(|a| self.grading[a]);
        let g = it.next()?;
        it.all(|h| h == g).then_some(g)
    }

    /// Degree of a word of homogeneous objects; the empty word has degree `e`.
    pub fn word_degree(&self, w: &[Obj]) -> Result<usize, GCrossedError> {
        let mut g = self.group.identity();
        for x in w {
            let h = self
                .obj_degree(x)
                .ok_or_else(|| GCrossedError::NotHomogeneous(format!("{x:?}")))?;
            g = self.group.mul(g, h);
        }
        Ok(g)
    }

    pub fn act_obj(&self, g: usize, x: &Obj) -> Obj {
        let mut m = vec![0; x.rank()];
        for a in x.support() {
            m[self.perm[g][a]] = x.mult(a);
        }
        Obj::from_mult(m)
    }

    pub fn act_word(&self, g: usize, w: &[Obj]) -> Word {
        w.iter().map(|x| self.act_obj(g, x)).collect()
    }

    /// Matrices of `γ_g : Hom(c, W) → Hom(γc, γW)` for every `c`.
    pub fn action_matrices(&self, g: usize, w: &[Obj]) -> Arc<Vec<Mat<F>>> {
        let key = (g, w.to_vec());
        if let Some(m) = self.act_cache.read().unwrap().get(&key) {
            return m.clone();
        }
        let m = Arc::new(self.build_action(g, w));
        self.act_cache.write().unwrap().insert(key, m.clone());
        m
    }

    fn build_action(&self, g: usize, w: &[Obj]) -> Vec<Mat<F>> {
        let cat = &self.cat;
        let r = self.rank();
        let p = &self.perm[g];
        let Some((head, rest)) = w.split_first() else {
            return cat.word_dims(&[]).into_iter().map(Mat::identity).collect();
        };
        let inner = self.action_matrices(g, rest);
        let rd = cat.word_dims(rest);
        let grest = self.act_word(g, rest);
        let grd = cat.word_dims(&grest);
        let ghead = self.act_obj(g, head);
        (0..r)
            .map(|c| {
                let src = cat.canon(c, head, rd.clone());
                let dst = cat.canon(p[c], &ghead, grd.clone());
                let mut m = Mat::<F>::zeros(dst.total, src.total);
                for a in head.support() {
                    for k in 0..head.mult(a) as usize {
                        for f in 0..r {
                            let n = cat.n(a, f, c);
                            if n == 0 || rd[f] == 0 {
                                continue;
                            }
                            let av = self.vertex_action(g, a, f, c);
                            let sub = &inner[f];
                            for mu in 0..n {
                                for nu in 0..n {
                                    let x = &av[(nu, mu)];
                                    if x.is_zero() {
                                        continue;
                                    }
                                    for t in 0..rd[f] {
                                        for tp in 0..grd[p[f]] {
                                            let y = &sub[(tp, t)];
                                            if y.is_zero() {
                                                continue;
                                            }
                                            m[(dst.index(p[a], k, p[f], nu, tp), src.index(a, k, f, mu, t))].add_mul(x, y);
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
                m
            })
            .collect()
    }

    /// `γ_g(f)`
    pub fn act(&self, g: usize, f: &Mor<F>) -> Mor<F> {
        let asrc = self.action_matrices(g, &f.src);
        let adst = self.action_matrices(g, &f.dst);
        let r = self.rank();
        let mut blocks = vec![Mat::zeros(0, 0); r];
        for c in 0..r {
            blocks[self.perm[g][c]] = adst[c].mul(&f.blocks[c]).mul(&asrc[c].adjoint());
        }
        Mor {
            src: self.act_word(g, &f.src),
            dst: self.act_word(g, &f.dst),
            blocks,
        }
    }

    /// `c(X, Y) : XY → γ_{∂X}(Y) X` for homogeneous `X`.
    pub fn braid(&self, x: &[Obj], y: &[Obj]) -> Result<Mor<F>, GCrossedError> {
        let cat = &self.cat;
        let r = self.rank();
        let g = self.word_degree(x)?;
        let p = &self.perm[g];
        let gy = self.act_word(g, y);
        let bs = cat.split_basis(x, y);
        let bd = cat.split_basis(&gy, x);
        let ay = self.action_matrices(g, y);
        let xd = cat.word_dims(x);
        let yd = cat.word_dims(y);
        let gyd = cat.word_dims(&gy);
        let blocks = (0..r)
            .map(|c| {
                let sl = cat.split(c, xd.clone(), yd.clone());
                let dl = cat.split(c, gyd.clone(), xd.clone());
                let mut m = Mat::<F>::zeros(dl.total, sl.total);
                for a in 0..r {
                    if xd[a] == 0 {
                        continue;
                    }
                    for b in 0..r {
                        let n = cat.n(a, b, c);
                        if n == 0 || yd[b] == 0 {
                            continue;
                        }
                        let rb = self.r_block(a, b, c);
                        let aq = &ay[b];
                        for mu in 0..n {
                            for nu in 0..n {
                                let x = &rb[(nu, mu)];
                                if x.is_zero() {
                                    continue;
                                }
                                for u in 0..xd[a] {
                                    for w in 0..yd[b] {
                                        for wp in 0..gyd[p[b]] {
                                            let y = &aq[(wp, w)];
                                            if y.is_zero() {
                                                continue;
                                            }
                                            m[(dl.index(p[b], a, nu, wp, u), sl.index(a, b, mu, u, w))].add_mul(x, y);
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
                bd[c].mul(&m).mul(&bs[c].adjoint())
            })
            .collect();
        let mut src = x.to_vec();
        src.extend_from_slice(y);
        let mut dst = gy;
        dst.extend_from_slice(x);
        Ok(Mor { src, dst, blocks })
    }

    /// `c⁻(X, Y) = c(Y, γ_{∂Y⁻¹} X)⁻¹ : XY → Y γ_{∂Y⁻¹}(X)` for homogeneous `Y`.
    pub fn braid_op(&self, x: &[Obj], y: &[Obj]) -> Result<Mor<F>, GCrossedError> {
        let h = self.word_degree(y)?;
        let gx = self.act_word(self.group.inv(h), x);
        Ok(self.braid(y, &gx)?.adjoint())
    }

    pub fn braid_simple(&self, a: usize, b: usize) -> Mor<F> {
        self.braid(&[self.cat.simple(a)], &[self.cat.simple(b)])
            .expect("simples are homogeneous")
    }

    pub fn braid_op_simple(&self, a: usize, b: usize) -> Mor<F> {
        self.braid_op(&[self.cat.simple(a)], &[self.cat.simple(b)])
            .expect("simples are homogeneous")
    }

    /// Degree-`e` labels with trivial monodromy against every degree-`e` label.
    pub fn muger_center(&self) -> Vec<usize> {
        let e = self.group.identity();
        let deg_e: Vec<usize> = (0..self.rank()).filter(|&a| self.grading[a] == e).collect();
        deg_e
            .iter()
            .copied()
            .filter(|&a| {
                deg_e.iter().all(|&b| {
                    self.braid_simple(b, a)
                        .compose(&self.braid_simple(a, b))
                        .is_identity()
                })
            })
            .collect()
    }
}

impl GCrossed<Scalar> {
    pub fn convert<G: FromScalar>(&self, tol: f64) -> GCrossed<G> {
        let conv = |m: &Mat<Scalar>| m.map(|x| G::from_scalar(x, tol));
        GCrossed {
            cat: self.cat.convert(tol),
            group: self.group.clone(),
            grading: self.grading.clone(),
            perm: self.perm.clone(),
            vert: self.vert.iter().map(conv).collect(),
            rmat: self.rmat.iter().map(conv).collect(),
            act_cache: RwLock::new(HashMap::new()),
        }
    }
}

impl<F: Field> GCrossed<F> {
    /// Deligne product of two multiplicity-free instances; labels and group
    /// elements are ordered with `self` outer.
    pub fn product(&self, other: &GCrossed<F>) -> Result<GCrossed<F>, GCrossedError> {
        let (c1, c2) = (self.cat(), other.cat());
        let multiplicity_free = |c: &SkeletalCategory<F>| {
            let r = c.rank();
            (0..r).all(|a| (0..r).all(|b| (0..r).all(|x| c.n(a, b, x) <= 1)))
        };
        if !multiplicity_free(c1) || !multiplicity_free(c2) {
            return Err(GCrossedError::Malformed("product needs multiplicity-free factors".into()));
        }
        let r2 = c2.rank();
        let split = move |a: usize| (a / r2, a % r2);
        let pair = move |a: usize, b: usize| a * r2 + b;
        let labels = (0..c1.rank() * r2)
            .map(|a| {
                let (x, y) = split(a);
                match (x == c1.unit(), y == c2.unit()) {
                    (true, true) => c1.ring().name(x).to_string(),
                    _ => format!("{}:{}", c1.ring().name(x), c2.ring().name(y)),
                }
            })
            .collect();
        let dual = (0..c1.rank() * r2)
            .map(|a| {
                let (x, y) = split(a);
                pair(c1.dual(x), c2.dual(y))
            })
            .collect();
        let ring = FusionRing::new(labels, pair(c1.unit(), c2.unit()), dual, |a, b, c| {
            let ((a1, a2), (b1, b2), (x1, x2)) = (split(a), split(b), split(c));
            (c1.n(a1, b1, x1) * c2.n(a2, b2, x2)) as u32
        })
        .map_err(|e| GCrossedError::Malformed(e.to_string()))?;
        let dims = (0..c1.rank() * r2)
            .map(|a| {
                let (x, y) = split(a);
                c1.qdim(x).clone() * c2.qdim(y)
            })
            .collect();
        let cat = SkeletalCategory::new(
            ring,
            |a, b, c, d| {
                let ((a1, a2), (b1, b2), (x1, x2), (d1, d2)) = (split(a), split(b), split(c), split(d));
                Some(c1.f(a1, b1, x1, d1).kron(c2.f(a2, b2, x2, d2)))
            },
            dims,
        )
        .map_err(|e| GCrossedError::Malformed(e.to_string()))?;
        let (g1, g2) = (self.group(), other.group());
        let m = g2.order();
        let group = g1.product(g2)?;
        let grading = (0..cat.rank())
            .map(|a| {
                let (x, y) = split(a);
                self.grade(x) * m + other.grade(y)
            })
            .collect();
        let perm = group
            .elements()
            .map(|g| {
                (0..cat.rank())
                    .map(|a| {
                        let (x, y) = split(a);
                        pair(self.act_label(g / m, x), other.act_label(g % m, y))
                    })
                    .collect()
            })
            .collect();
        GCrossed::new(
            cat,
            group,
            grading,
            perm,
            |g, a, b, c| {
                let ((a1, a2), (b1, b2), (x1, x2)) = (split(a), split(b), split(c));
                Some(
                    self.vertex_action(g / m, a1, b1, x1)
                        .kron(other.vertex_action(g % m, a2, b2, x2)),
                )
            },
            |a, b, c| {
                let ((a1, a2), (b1, b2), (x1, x2)) = (split(a), split(b), split(c));
                Some(self.r_block(a1, b1, x1).kron(other.r_block(a2, b2, x2)))
            },
        )
    }
}
