use std::sync::Arc;

use super::{FusionError, Obj, SkeletalCategory, Word};
use crate::kernel::{Field, FromScalar, Mat, Scalar};

/// Morphism between tensor words, stored per simple `c` as a matrix from the
/// tree basis of `Hom(c, src)` to that of `Hom(c, dst)`.
///
/// The tree basis of `Hom(c, X1 ⊗ W)` is right-leaning and ordered by
/// `(a ∈ X1, copy k, f, μ ∈ V^{af}_c, t ∈ Hom(f, W))`.
#[derive(Clone, Debug, PartialEq)]
pub struct Mor<F> {
    pub src: Word,
    pub dst: Word,
    pub blocks: Vec<Mat<F>>,
}

/// Offsets of the tree basis of `Hom(c, head ⊗ tail)`.
pub(crate) struct Canon {
    rank: usize,
    base: Vec<usize>,
    stride: Vec<usize>,
    pub tail: Vec<usize>,
    pub total: usize,
}

impl Canon {
    #[inline]
    pub fn index(&self, a: usize, k: usize, f: usize, mu: usize, t: usize) -> usize {
        self.base[a * self.rank + f] + k * self.stride[a] + mu * self.tail[f] + t
    }
}

/// Offsets of the split basis `(p, q, μ ∈ V^{pq}_c, u ∈ Hom(p, X), w ∈ Hom(q, Y))`.
pub(crate) struct Split {
    rank: usize,
    off: Vec<usize>,
    pub xd: Vec<usize>,
    pub yd: Vec<usize>,
    pub total: usize,
}

impl Split {
    #[inline]
    pub fn index(&self, p: usize, q: usize, mu: usize, u: usize, w: usize) -> usize {
        self.off[p * self.rank + q] + (mu * self.xd[p] + u) * self.yd[q] + w
    }
}

impl<F: Field> SkeletalCategory<F> {
    /// `dim Hom(c, word)` for every simple `c`.
    pub fn word_dims(&self, word: &[Obj]) -> Vec<usize> {
        let r = self.rank();
        let mut d = vec![0; r];
        d[self.unit()] = 1;
        for x in word.iter().rev() {
            let mut nd = vec![0; r];
            for a in x.support() {
                let m = x.mult(a) as usize;
                for f in 0..r {
                    if d[f] == 0 {
                        continue;
                    }
                    for (c, v) in nd.iter_mut().enumerate() {
                        *v += m * self.n(a, f, c) * d[f];
                    }
                }
            }
            d = nd;
        }
        d
    }

    pub(crate) fn canon(&self, c: usize, head: &Obj, tail: Vec<usize>) -> Canon {
        let r = self.rank();
        let mut base = vec![0; r * r];
        let mut stride = vec![0; r];
        let mut off = 0;
        for a in 0..r {
            let mut s = 0;
            for f in 0..r {
                base[a * r + f] = off + s;
                s += self.n(a, f, c) * tail[f];
            }
            stride[a] = s;
            off += s * head.mult(a) as usize;
        }
        Canon {
            rank: r,
            base,
            stride,
            tail,
            total: off,
        }
    }

    pub(crate) fn split(&self, c: usize, xd: Vec<usize>, yd: Vec<usize>) -> Split {
        let r = self.rank();
        let mut off = vec![0; r * r];
        let mut o = 0;
        for p in 0..r {
            for q in 0..r {
                off[p * r + q] = o;
                o += self.n(p, q, c) * xd[p] * yd[q];
            }
        }
        Split {
            rank: r,
            off,
            xd,
            yd,
            total: o,
        }
    }

    /// Change of basis from the split basis of `Hom(c, X ⊗ Y)` to the tree basis
    /// of `Hom(c, XY)`, for every `c`.
    pub fn split_basis(&self, x: &[Obj], y: &[Obj]) -> Arc<Vec<Mat<F>>> {
        let key = (x.to_vec(), y.to_vec());
        if let Some(b) = self.split_cache.read().unwrap().get(&key) {
            return b.clone();
        }
        let b = Arc::new(self.build_split(x, y));
        self.split_cache.write().unwrap().insert(key, b.clone());
        b
    }

    fn build_split(&self, x: &[Obj], y: &[Obj]) -> Vec<Mat<F>> {
        let r = self.rank();
        let yd = self.word_dims(y);
        let xd = self.word_dims(x);
        let Some((head, rest)) = x.split_first() else {
            return yd.iter().map(|&d| Mat::identity(d)).collect();
        };
        let inner = self.split_basis(rest, y);
        let rd = self.word_dims(rest);
        let mut rest_y = rest.to_vec();
        rest_y.extend_from_slice(y);
        let ryd = self.word_dims(&rest_y);
        let inner_layouts: Vec<Split> = (0..r).map(|f| self.split(f, rd.clone(), yd.clone())).collect();
        (0..r)
            .map(|c| {
                let sl = self.split(c, xd.clone(), yd.clone());
                let cl = self.canon(c, head, ryd.clone());
                let mut m = Mat::<F>::zeros(cl.total, sl.total);
                for p in 0..r {
                    let pl = self.canon(p, head, rd.clone());
                    for q in 0..r {
                        let nm = self.n(p, q, c);
                        if nm == 0 || xd[p] == 0 || yd[q] == 0 {
                            continue;
                        }
                        for a in head.support() {
                            for k in 0..head.mult(a) as usize {
                                for rr in 0..r {
                                    let nv = self.n(a, rr, p);
                                    if nv == 0 || rd[rr] == 0 {
                                        continue;
                                    }
                                    let fm = self.f(a, rr, q, c);
                                    for mu in 0..nm {
                                        for nu in 0..nv {
                                            let row_f = self.f_row(a, rr, q, c, p, nu, mu);
                                            for up in 0..rd[rr] {
                                                let u = pl.index(a, k, rr, nu, up);
                                                for w in 0..yd[q] {
                                                    let col = sl.index(p, q, mu, u, w);
                                                    for f in 0..r {
                                                        let nr = self.n(rr, q, f);
                                                        let ns = self.n(a, f, c);
                                                        if nr == 0 || ns == 0 {
                                                            continue;
                                                        }
                                                        let sub = &inner[f];
                                                        for rho in 0..nr {
                                                            let subcol = inner_layouts[f].index(rr, q, rho, up, w);
                                                            for sigma in 0..ns {
                                                                let coef = &fm[(row_f, self.f_col(a, rr, q, c, f, rho, sigma))];
                                                                if coef.is_zero() {
                                                                    continue;
                                                                }
                                                                for t in 0..ryd[f] {
                                                                    let s = &sub[(t, subcol)];
                                                                    if s.is_zero() {
                                                                        continue;
                                                                    }
                                                                    let row = cl.index(a, k, f, sigma, t);
                                                                    m[(row, col)].add_mul(coef, s);
                                                                }
                                                            }
                                                        }
                                                    }
                                                }
                                            }
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

    pub fn zero_mor(&self, src: Word, dst: Word) -> Mor<F> {
        let sd = self.word_dims(&src);
        let dd = self.word_dims(&dst);
        Mor {
            blocks: (0..self.rank()).map(|c| Mat::zeros(dd[c], sd[c])).collect(),
            src,
            dst,
        }
    }

    pub fn id(&self, word: &[Obj]) -> Mor<F> {
        Mor {
            src: word.to_vec(),
            dst: word.to_vec(),
            blocks: self.word_dims(word).into_iter().map(Mat::identity).collect(),
        }
    }

    pub fn id_obj(&self, x: &Obj) -> Mor<F> {
        self.id(std::slice::from_ref(x))
    }

    /// Morphism `[x] → [y]` from per-label matrices of shape `mult_y(c) × mult_x(c)`.
    pub fn obj_mor(&self, x: &Obj, y: &Obj, blocks: Vec<Mat<F>>) -> Result<Mor<F>, FusionError> {
        for (c, b) in blocks.iter().enumerate() {
            if b.shape() != (y.mult(c) as usize, x.mult(c) as usize) {
                return Err(FusionError::Shape(format!(
                    "block for {} must be {}x{}",
                    self.ring().name(c),
                    y.mult(c),
                    x.mult(c)
                )));
            }
        }
        Ok(Mor {
            src: vec![x.clone()],
            dst: vec![y.clone()],
            blocks,
        })
    }

    /// Splitting vertex `v^{ab}_{c,μ} : c → a ⊗ b`.
    pub fn vertex(&self, a: usize, b: usize, c: usize, mu: usize) -> Mor<F> {
        let (sa, sb, sc) = (self.simple(a), self.simple(b), self.simple(c));
        let mut m = self.zero_mor(vec![sc], vec![sa.clone(), sb.clone()]);
        let cl = self.canon(c, &sa, self.word_dims(std::slice::from_ref(&sb)));
        m.blocks[c][(cl.index(a, 0, b, mu, 0), 0)] = F::one();
        m
    }

    /// Inclusion of copy `k` of the simple `a` into `x`.
    pub fn inclusion(&self, x: &Obj, a: usize, k: usize) -> Mor<F> {
        let mut m = self.zero_mor(vec![self.simple(a)], vec![x.clone()]);
        m.blocks[a][(k, 0)] = F::one();
        m
    }

    /// `f ⊗ g : XY → X'Y'`, re-associated through the split bases.
    pub fn tensor(&self, f: &Mor<F>, g: &Mor<F>) -> Mor<F> {
        let r = self.rank();
        let bs = self.split_basis(&f.src, &g.src);
        let bd = self.split_basis(&f.dst, &g.dst);
        let fsd = self.word_dims(&f.src);
        let fdd = self.word_dims(&f.dst);
        let gsd = self.word_dims(&g.src);
        let gdd = self.word_dims(&g.dst);
        let blocks = (0..r)
            .map(|c| {
                let sl = self.split(c, fsd.clone(), gsd.clone());
                let dl = self.split(c, fdd.clone(), gdd.clone());
                let mut mid = Mat::zeros(dl.total, sl.total);
                for p in 0..r {
                    for q in 0..r {
                        let nm = self.n(p, q, c);
                        if nm == 0 {
                            continue;
                        }
                        let k = f.blocks[p].kron(&g.blocks[q]);
                        if k.rows() == 0 || k.cols() == 0 {
                            continue;
                        }
                        for mu in 0..nm {
                            mid.set_block(dl.index(p, q, mu, 0, 0), sl.index(p, q, mu, 0, 0), &k);
                        }
                    }
                }
                bd[c].mul(&mid).mul(&bs[c].adjoint())
            })
            .collect();
        let mut src = f.src.clone();
        src.extend_from_slice(&g.src);
        let mut dst = f.dst.clone();
        dst.extend_from_slice(&g.dst);
        Mor { src, dst, blocks }
    }

    /// `1_X ⊗ f`
    pub fn lid(&self, x: &[Obj], f: &Mor<F>) -> Mor<F> {
        if x.is_empty() {
            return f.clone();
        }
        self.tensor(&self.id(x), f)
    }

    /// `f ⊗ 1_X`
    pub fn rid(&self, f: &Mor<F>, x: &[Obj]) -> Mor<F> {
        if x.is_empty() {
            return f.clone();
        }
        self.tensor(f, &self.id(x))
    }

    pub fn try_tensor(&self, f: &Mor<F>, g: &Mor<F>) -> Result<Mor<F>, FusionError> {
        let r = self.rank();
        if f.blocks.len() != r || g.blocks.len() != r {
            return Err(FusionError::Shape("morphism rank mismatch".into()));
        }
        Ok(self.tensor(f, g))
    }

    /// True when `f` is `s` times an identity.
    pub fn is_endo_scalar(&self, f: &Mor<F>, s: &F) -> bool {
        f.src == f.dst && f.approx_eq(&self.id(&f.src).scale(s))
    }
}

impl<F: Field> Mor<F> {
    /// `self ∘ g`
    pub fn compose(&self, g: &Mor<F>) -> Mor<F> {
        self.try_compose(g).unwrap_or_else(|e| panic!("{e}"))
    }

    pub fn try_compose(&self, g: &Mor<F>) -> Result<Mor<F>, FusionError> {
        if self.src != g.dst {
            return Err(FusionError::Shape(format!(
                "cannot compose: source {:?} vs target {:?}",
                self.src, g.dst
            )));
        }
        Ok(Mor {
            src: g.src.clone(),
            dst: self.dst.clone(),
            blocks: self.blocks.iter().zip(&g.blocks).map(|(a, b)| a.mul(b)).collect(),
        })
    }

    pub fn adjoint(&self) -> Mor<F> {
        Mor {
            src: self.dst.clone(),
            dst: self.src.clone(),
            blocks: self.blocks.iter().map(Mat::adjoint).collect(),
        }
    }

    pub fn add(&self, g: &Mor<F>) -> Mor<F> {
        assert!(self.src == g.src && self.dst == g.dst, "sum of morphisms with different types");
        Mor {
            src: self.src.clone(),
            dst: self.dst.clone(),
            blocks: self.blocks.iter().zip(&g.blocks).map(|(a, b)| a.add(b)).collect(),
        }
    }

    pub fn sub(&self, g: &Mor<F>) -> Mor<F> {
        self.add(&g.scale(&-F::one()))
    }

    pub fn scale(&self, s: &F) -> Mor<F> {
        Mor {
            src: self.src.clone(),
            dst: self.dst.clone(),
            blocks: self.blocks.iter().map(|b| b.scale(s)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(Mat::is_zero)
    }

    pub fn approx_eq(&self, g: &Mor<F>) -> bool {
        self.src == g.src
            && self.dst == g.dst
            && self.blocks.iter().zip(&g.blocks).all(|(a, b)| a.approx_eq(b))
    }

    /// Equality of blocks, ignoring how the words are labelled.
    pub fn blocks_eq(&self, g: &Mor<F>) -> bool {
        self.blocks.len() == g.blocks.len() && self.blocks.iter().zip(&g.blocks).all(|(a, b)| a.approx_eq(b))
    }

    pub fn is_identity(&self) -> bool {
        self.src == self.dst && self.blocks.iter().all(Mat::is_identity)
    }

    pub fn is_unitary(&self) -> bool {
        self.adjoint().compose(self).is_identity() && self.compose(&self.adjoint()).is_identity()
    }

    pub fn is_isometry(&self) -> bool {
        self.adjoint().compose(self).is_identity()
    }

    /// Total multiplicity of the image.
    pub fn rank(&self) -> usize {
        self.blocks.iter().map(Mat::rank).sum()
    }

    /// Same blocks under a different word labelling with identical dimensions.
    pub fn retype(mut self, src: Word, dst: Word) -> Mor<F> {
        self.src = src;
        self.dst = dst;
        self
    }
}

impl Mor<Scalar> {
    pub fn convert<G: FromScalar>(&self, tol: f64) -> Mor<G> {
        Mor {
            src: self.src.clone(),
            dst: self.dst.clone(),
            blocks: self.blocks.iter().map(|m| m.map(|x| G::from_scalar(x, tol))).collect(),
        }
    }
}
