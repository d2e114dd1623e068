//! Twisted α-induction over a commutative Q-system with equivariant structure.
//!
//! An induced sector is the free module `θ ⊗ λ` carrying a half-braiding
//! `e : λθ → θλ`. Intertwiners between sectors are left module maps
//! `θλ₁ → θλ₂` that also intertwine the half-braidings; every identity is
//! checked as an equation between morphisms of the underlying category, with
//! "apply a sector to an intertwiner" rendered as conjugation by its
//! half-braiding.

mod braiding;
mod modules;
mod suites;

pub use braiding::{check_exchange, check_relative_braiding, relative_braiding};
pub use modules::{
    check_embedding, check_reciprocity, find_twisted_reps, free_generator, minimal_projections, sigma_restrict,
    Presentation, TwistedModule,
};
pub use suites::{all_modules, run_suite, Suite};

use rayon::prelude::*;
use thiserror::Error;

use crate::fusion::{Mor, Obj, Word};
use crate::gcrossed::{FiniteGroup, GCrossed};
use crate::kernel::{Field, FromScalar, Mat, Scalar};
use crate::qsystem::{check_equivariant, check_qsystem, EquivariantStructure, QSystem};
use crate::report::CheckReport;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InductionError {
    #[error("grading mismatch: expected degree {expected}, found {found}")]
    GradingMismatch { expected: String, found: String },
    #[error("object is not homogeneous: {0}")]
    NotHomogeneous(String),
    #[error("invalid setting: {0}")]
    Setting(String),
    #[error("half-braiding fails the module identity: {0}")]
    HalfBraiding(String),
    #[error("cannot split endomorphism algebra: {0}")]
    Split(String),
    #[error("presentation mismatch: {0}")]
    Presentation(String),
}

/// A braided G'-crossed category with a Q-system and a lift of the action to
/// `G → G'`.
#[derive(Clone, Debug)]
pub struct InductionSetting<F: Field> {
    pub name: String,
    pub gx: GCrossed<F>,
    pub q: QSystem<F>,
    pub z: EquivariantStructure<F>,
}

impl InductionSetting<Scalar> {
    /// Same setting over another working field.
    pub fn convert<G: FromScalar>(&self, tol: f64) -> InductionSetting<G> {
        InductionSetting {
            name: self.name.clone(),
            gx: self.gx.convert(tol),
            q: self.q.convert(tol),
            z: self.z.convert(tol),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize)]
pub enum Chirality {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
    /// Composites of plus and minus sectors.
    #[serde(rename = "mixed")]
    Mixed,
}

/// Free module `θ ⊗ lam` with half-braiding `lam ⊗ θ → θ ⊗ lam`.
#[derive(Clone, Debug)]
pub struct InducedSector<F> {
    pub chirality: Chirality,
    /// Element of `G` for plus sectors.
    pub g: Option<usize>,
    pub lam: Word,
    pub half_braiding: Mor<F>,
}

impl<F: Field> InductionSetting<F> {
    pub fn new(
        name: impl Into<String>,
        gx: GCrossed<F>,
        q: QSystem<F>,
        z: EquivariantStructure<F>,
    ) -> Result<Self, InductionError> {
        if !z.group.is_surjection_onto(gx.group(), &z.proj) {
            return Err(InductionError::Setting("proj must be a surjective homomorphism G → G'".into()));
        }
        if z.z.len() != z.group.order() {
            return Err(InductionError::Setting("one z_g per element of G is required".into()));
        }
        if q.theta.rank() != gx.rank() {
            return Err(InductionError::Setting("θ has the wrong rank".into()));
        }
        Ok(InductionSetting {
            name: name.into(),
            gx,
            q,
            z,
        })
    }

    /// Q-system and equivariance reports together.
    pub fn validate(&self) -> CheckReport {
        let mut rep = CheckReport::new("setting");
        rep.absorb(check_qsystem(&self.gx, &self.q));
        rep.absorb(check_equivariant(&self.gx, &self.q, &self.z));
        rep
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.z.group
    }

    /// `g ↦ g'`
    pub fn proj(&self, g: usize) -> usize {
        self.z.proj[g]
    }

    pub fn theta(&self) -> Word {
        self.q.theta_word()
    }

    fn with_theta(&self, w: &[Obj]) -> Word {
        let mut out = self.theta();
        out.extend_from_slice(w);
        out
    }

    fn degree_name(&self, d: usize) -> String {
        self.gx.group().name(d).to_string()
    }

    pub fn word_degree(&self, lam: &[Obj]) -> Result<usize, InductionError> {
        self.gx
            .word_degree(lam)
            .map_err(|e| InductionError::NotHomogeneous(e.to_string()))
    }

    /// Simples of degree `d ∈ G'`.
    pub fn simples_of_degree(&self, d: usize) -> Vec<usize> {
        (0..self.gx.rank()).filter(|&a| self.gx.grade(a) == d).collect()
    }

    /// `α^{g;+}_λ` with half-braiding `(z_g ⊗ 1_λ) c(λ, θ)`.
    pub fn alpha_plus(&self, g: usize, lam: &[Obj]) -> Result<InducedSector<F>, InductionError> {
        let d = self.word_degree(lam)?;
        if d != self.proj(g) {
            return Err(InductionError::GradingMismatch {
                expected: self.degree_name(self.proj(g)),
                found: self.degree_name(d),
            });
        }
        let cat = self.gx.cat();
        let c = self
            .gx
            .braid(lam, &self.theta())
            .map_err(|e| InductionError::NotHomogeneous(e.to_string()))?;
        let e = cat.rid(&self.z.z[g], lam).compose(&c);
        self.verified(InducedSector {
            chirality: Chirality::Plus,
            g: Some(g),
            lam: lam.to_vec(),
            half_braiding: e,
        })
    }

    /// `α^-_λ` with half-braiding `c⁻(λ, θ)`.
    pub fn alpha_minus(&self, lam: &[Obj]) -> Result<InducedSector<F>, InductionError> {
        self.word_degree(lam)?;
        let e = self
            .gx
            .braid_op(lam, &self.theta())
            .map_err(|e| InductionError::NotHomogeneous(e.to_string()))?;
        self.verified(InducedSector {
            chirality: Chirality::Minus,
            g: None,
            lam: lam.to_vec(),
            half_braiding: e,
        })
    }

    pub fn alpha_plus_simple(&self, g: usize, a: usize) -> Result<InducedSector<F>, InductionError> {
        self.alpha_plus(g, &[self.gx.cat().simple(a)])
    }

    pub fn alpha_minus_simple(&self, a: usize) -> Result<InducedSector<F>, InductionError> {
        self.alpha_minus(&[self.gx.cat().simple(a)])
    }

    /// Sector of `lam₁ lam₂` whose half-braiding is `(e₁ ⊗ 1)(1 ⊗ e₂)`.
    pub fn composite(&self, s1: &InducedSector<F>, s2: &InducedSector<F>) -> InducedSector<F> {
        let cat = self.gx.cat();
        let e = cat
            .rid(&s1.half_braiding, &s2.lam)
            .compose(&cat.lid(&s1.lam, &s2.half_braiding));
        let mut lam = s1.lam.clone();
        lam.extend_from_slice(&s2.lam);
        let chirality = if s1.chirality == s2.chirality {
            s1.chirality
        } else {
            Chirality::Mixed
        };
        let g = match (s1.g, s2.g, chirality) {
            (Some(a), Some(b), Chirality::Plus) => Some(self.group().mul(a, b)),
            _ => None,
        };
        InducedSector {
            chirality,
            g,
            lam,
            half_braiding: e,
        }
    }

    /// The half-braiding must be unitary, unital and compatible with `x`.
    fn verified(&self, s: InducedSector<F>) -> Result<InducedSector<F>, InductionError> {
        self.half_braiding_defect(&s)
            .map_or(Ok(s), |w| Err(InductionError::HalfBraiding(w)))
    }

    pub(crate) fn half_braiding_defect(&self, s: &InducedSector<F>) -> Option<String> {
        let cat = self.gx.cat();
        let t = self.theta();
        let e = &s.half_braiding;
        if !e.is_unitary() {
            return Some("not unitary".into());
        }
        let lhs = cat
            .lid(&t, e)
            .compose(&cat.rid(e, &t))
            .compose(&cat.lid(&s.lam, &self.q.x));
        let rhs = cat.rid(&self.q.x, &s.lam).compose(e);
        if !lhs.approx_eq(&rhs) {
            return Some("(1⊗e)(e⊗1)(1⊗x) != (x⊗1)e".into());
        }
        let unit = e.compose(&cat.lid(&s.lam, &self.q.w));
        if !unit.approx_eq(&cat.rid(&self.q.w, &s.lam)) {
            return Some("e(1⊗w) != w⊗1".into());
        }
        None
    }

    /// `⟨θλ, μ⟩`, the predicted intertwiner dimension for sectors of matching degree.
    pub fn hom_dim_formula(&self, lam: &Obj, mu: &Obj) -> Result<usize, InductionError> {
        let dl = self.word_degree(std::slice::from_ref(lam))?;
        let dm = self.word_degree(std::slice::from_ref(mu))?;
        if dl != dm {
            return Err(InductionError::GradingMismatch {
                expected: self.degree_name(dl),
                found: self.degree_name(dm),
            });
        }
        let ring = self.gx.cat().ring();
        let tl = ring.fuse_obj(&self.q.theta, lam);
        Ok(ring.pairing(&tl, mu))
    }

    /// `α_λ(y) = (e ⊗ 1)(1_λ ⊗ y)(e† ⊗ 1)` for `y : θX → θX'`.
    pub fn apply(&self, s: &InducedSector<F>, y: &Mor<F>) -> Mor<F> {
        let cat = self.gx.cat();
        let n = self.theta().len();
        let x_src = &y.src[n..];
        let x_dst = &y.dst[n..];
        cat.rid(&s.half_braiding, x_dst)
            .compose(&cat.lid(&s.lam, y))
            .compose(&cat.rid(&s.half_braiding.adjoint(), x_src))
    }

    /// `γ̃_g(y) = (z_g ⊗ 1) γ_{g'}(y) (z_g† ⊗ 1)` for `y : θX → θX'`.
    pub fn twist(&self, g: usize, y: &Mor<F>) -> Mor<F> {
        let cat = self.gx.cat();
        let gp = self.proj(g);
        let n = self.theta().len();
        let moved = self.gx.act(gp, y);
        let zg = &self.z.z[g];
        cat.rid(zg, &moved.dst[n..])
            .compose(&moved)
            .compose(&cat.rid(&zg.adjoint(), &moved.src[n..]))
    }

    /// Defects of the two intertwiner constraints for a candidate `s : θλ₁ → θλ₂`,
    /// as one flat vector.
    fn constraint_defect(&self, pre: &Precomputed<F>, s: &Mor<F>) -> Vec<F> {
        let cat = self.gx.cat();
        let t = self.theta();
        let module = s.compose(&pre.a1).sub(&pre.a2.compose(&cat.lid(&t, s)));
        let half = cat.rid(s, &t).compose(&pre.b1).sub(&pre.b2.compose(s));
        let mut out = flat(&module);
        out.extend(flat(&half));
        out
    }

    fn precompute(&self, s1: &InducedSector<F>, s2: &InducedSector<F>) -> Precomputed<F> {
        let cat = self.gx.cat();
        let t = self.theta();
        let xa = self.q.x.adjoint();
        Precomputed {
            a1: cat.rid(&xa, &s1.lam),
            a2: cat.rid(&xa, &s2.lam),
            b1: cat
                .lid(&t, &s1.half_braiding.adjoint())
                .compose(&cat.rid(&self.q.x, &s1.lam)),
            b2: cat
                .lid(&t, &s2.half_braiding.adjoint())
                .compose(&cat.rid(&self.q.x, &s2.lam)),
        }
    }

    /// True when `s` is a left module map intertwining the half-braidings.
    pub fn is_intertwiner(&self, s1: &InducedSector<F>, s2: &InducedSector<F>, s: &Mor<F>) -> bool {
        if s.src != self.with_theta(&s1.lam) || s.dst != self.with_theta(&s2.lam) {
            return false;
        }
        let pre = self.precompute(s1, s2);
        self.constraint_defect(&pre, s).iter().all(Field::is_zero)
    }

    /// True when `s` is a left module map `θλ₁ → θλ₂`.
    pub fn is_module_map(&self, lam1: &[Obj], lam2: &[Obj], s: &Mor<F>) -> bool {
        let cat = self.gx.cat();
        let t = self.theta();
        let xa = self.q.x.adjoint();
        s.src == self.with_theta(lam1)
            && s.dst == self.with_theta(lam2)
            && s.compose(&cat.rid(&xa, lam1))
                .approx_eq(&cat.rid(&xa, lam2).compose(&cat.lid(&t, s)))
    }

    /// Basis of the intertwiner space, by an exact linear solve over the
    /// entries of `s : θλ₁ → θλ₂`.
    pub fn hom_space_solver(&self, s1: &InducedSector<F>, s2: &InducedSector<F>) -> Vec<Mor<F>> {
        let template = self
            .gx
            .cat()
            .zero_mor(self.with_theta(&s1.lam), self.with_theta(&s2.lam));
        let pre = self.precompute(s1, s2);
        kernel_of(&template, |s| self.constraint_defect(&pre, s))
    }

    /// Basis of the left module maps `θλ₁ → θλ₂`, ignoring half-braidings.
    pub fn module_map_basis(&self, lam1: &[Obj], lam2: &[Obj]) -> Vec<Mor<F>> {
        let cat = self.gx.cat();
        let t = self.theta();
        let template = cat.zero_mor(self.with_theta(lam1), self.with_theta(lam2));
        let xa = self.q.x.adjoint();
        let (a1, a2) = (cat.rid(&xa, lam1), cat.rid(&xa, lam2));
        kernel_of(&template, |s| flat(&s.compose(&a1).sub(&a2.compose(&cat.lid(&t, s)))))
    }

    pub fn hom_dim(&self, s1: &InducedSector<F>, s2: &InducedSector<F>) -> usize {
        self.hom_space_solver(s1, s2).len()
    }
}

struct Precomputed<F> {
    a1: Mor<F>,
    a2: Mor<F>,
    b1: Mor<F>,
    b2: Mor<F>,
}

/// Entries of all blocks, in block order.
pub(crate) fn flat<F: Field>(m: &Mor<F>) -> Vec<F> {
    m.blocks.iter().flat_map(|b| b.flatten()).collect()
}

pub(crate) fn unflat<F: Field>(template: &Mor<F>, v: &[F]) -> Mor<F> {
    let mut out = template.clone();
    let mut k = 0;
    for b in &mut out.blocks {
        let (r, c) = b.shape();
        *b = Mat::from_vec(r, c, v[k..k + r * c].to_vec());
        k += r * c;
    }
    out
}

/// Kernel of a linear map on morphisms shaped like `template`, evaluated on
/// matrix units.
fn kernel_of<F: Field>(template: &Mor<F>, f: impl Fn(&Mor<F>) -> Vec<F> + Sync) -> Vec<Mor<F>> {
    let unknowns = unit_positions(template);
    let columns: Vec<Vec<F>> = unknowns
        .par_iter()
        .map(|&(c, i, j)| {
            let mut s = template.clone();
            s.blocks[c][(i, j)] = F::one();
            f(&s)
        })
        .collect();
    if columns.is_empty() {
        return Vec::new();
    }
    let mut a = Mat::zeros(columns[0].len(), columns.len());
    for (k, col) in columns.into_iter().enumerate() {
        for (r, v) in col.into_iter().enumerate() {
            a[(r, k)] = v;
        }
    }
    let kernel = a.nullspace();
    (0..kernel.cols())
        .map(|k| {
            let v: Vec<F> = (0..kernel.rows()).map(|r| kernel[(r, k)].clone()).collect();
            unflat(template, &v)
        })
        .collect()
}

fn unit_positions<F: Field>(m: &Mor<F>) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for (c, b) in m.blocks.iter().enumerate() {
        for i in 0..b.rows() {
            for j in 0..b.cols() {
                out.push((c, i, j));
            }
        }
    }
    out
}

/// Dimension of the span of a family of morphisms of one type.
pub(crate) fn span_rank<F: Field>(ms: &[Mor<F>]) -> usize {
    independent(ms).len()
}

/// Indices of a maximal independent subfamily, greedily from the front.
pub(crate) fn independent<F: Field>(ms: &[Mor<F>]) -> Vec<usize> {
    if ms.is_empty() {
        return Vec::new();
    }
    let cols: Vec<Vec<F>> = ms.iter().map(flat).collect();
    let n = cols[0].len();
    let mut a = Mat::zeros(n, cols.len());
    for (k, col) in cols.iter().enumerate() {
        for (r, v) in col.iter().enumerate() {
            a[(r, k)] = v.clone();
        }
    }
    a.echelon().pivots
}
