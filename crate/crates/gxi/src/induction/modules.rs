//! Twisted modules: irreducible simultaneous subobjects of plus and minus inductions.

use super::{independent, span_rank, InducedSector, InductionError, InductionSetting};
use crate::fusion::{Mor, Obj, Word};
use crate::kernel::Field;
use crate::report::CheckReport;

/// A sector together with a projection onto a subobject, `P ∈ End(θλ)`.
#[derive(Clone, Debug)]
pub struct Presentation<F> {
    pub sector: InducedSector<F>,
    pub proj: Mor<F>,
}

impl<F: Field> Presentation<F> {
    pub fn lam(&self) -> &Word {
        &self.sector.lam
    }
}

/// A g-twisted representation of the extension.
///
/// Subobjects are carried as projections: an isometry would need square roots
/// outside the cyclotomic field. `link : θλ → θμ` is an intertwiner from the
/// first plus presentation to the first minus presentation with
/// `link† link = link_norm · P` and `link link† = link_norm · Q`.
#[derive(Clone, Debug)]
pub struct TwistedModule<F> {
    pub g: usize,
    pub plus: Vec<Presentation<F>>,
    pub minus: Vec<Presentation<F>>,
    pub link: Mor<F>,
    pub link_norm: F,
    /// Image object of the projections, the σ-restriction.
    pub underlying: Obj,
}

impl<F: Field> TwistedModule<F> {
    pub fn lam(&self) -> &Word {
        self.plus[0].lam()
    }

    pub fn mu(&self) -> &Word {
        self.minus[0].lam()
    }
}

/// Minimal projections summing to `unit` in the *-algebra spanned by `basis`.
///
/// Splits with spectral projections of self-adjoint elements whose
/// eigenvalues the field can produce exactly; reports an error otherwise.
pub fn minimal_projections<F: Field>(basis: &[Mor<F>], unit: &Mor<F>) -> Result<Vec<Mor<F>>, InductionError> {
    let mut out = Vec::new();
    split_into(basis, unit, &mut out)?;
    Ok(out)
}

fn split_into<F: Field>(basis: &[Mor<F>], p: &Mor<F>, out: &mut Vec<Mor<F>>) -> Result<(), InductionError> {
    let corner: Vec<Mor<F>> = basis.iter().map(|b| p.compose(b).compose(p)).collect();
    let keep = independent(&corner);
    if keep.len() <= 1 {
        out.push(p.clone());
        return Ok(());
    }
    let mut candidates = Vec::new();
    for &k in &keep {
        let b = &corner[k];
        let ba = b.adjoint();
        candidates.push(b.add(&ba));
        if let Some(i) = F::imag_unit() {
            candidates.push(b.sub(&ba).scale(&i));
        }
        candidates.push(ba.compose(b));
    }
    for h in candidates {
        if span_rank(&[p.clone(), h.clone()]) < 2 {
            continue;
        }
        let Some(poly) = minimal_polynomial(&h, p) else {
            continue;
        };
        let Some(roots) = F::roots(&poly) else {
            continue;
        };
        if roots.len() + 1 != poly.len() {
            continue;
        }
        for (i, ri) in roots.iter().enumerate() {
            let mut q = p.clone();
            for (j, rj) in roots.iter().enumerate() {
                if i == j {
                    continue;
                }
                let inv = (ri.clone() - rj.clone())
                    .inv()
                    .ok_or_else(|| InductionError::Split("repeated eigenvalue".into()))?;
                q = h.sub(&p.scale(rj)).compose(&q).scale(&inv);
            }
            split_into(basis, &q, out)?;
        }
        return Ok(());
    }
    Err(InductionError::Split(
        "no self-adjoint element with eigenvalues in the field".into(),
    ))
}

/// Monic minimal polynomial of `h` in the corner with unit `p`, low degree first.
fn minimal_polynomial<F: Field>(h: &Mor<F>, p: &Mor<F>) -> Option<Vec<F>> {
    let mut powers = vec![p.clone()];
    loop {
        let next = h.compose(powers.last()?);
        let k = powers.len();
        let n = super::flat(p).len();
        let mut a = crate::kernel::Mat::zeros(n, k);
        for (j, m) in powers.iter().enumerate() {
            for (i, v) in super::flat(m).into_iter().enumerate() {
                a[(i, j)] = v;
            }
        }
        let rhs = crate::kernel::Mat::from_vec(n, 1, super::flat(&next));
        if let Ok(sol) = a.solve(&rhs) {
            let mut poly: Vec<F> = (0..k).map(|j| -sol.particular[(j, 0)].clone()).collect();
            poly.push(F::one());
            return Some(poly);
        }
        if k > n {
            return None;
        }
        powers.push(next);
    }
}

/// `c` with `m = c · p`, for nonzero `p`.
fn ratio<F: Field>(m: &Mor<F>, p: &Mor<F>) -> Option<F> {
    let (pv, mv) = (super::flat(p), super::flat(m));
    let k = pv.iter().position(|v| !v.is_zero())?;
    let c = mv[k].clone() * &pv[k].inv()?;
    m.approx_eq(&p.scale(&c)).then_some(c)
}

fn image_object<F: Field>(p: &Mor<F>) -> Obj {
    Obj::from_mult(p.blocks.iter().map(|b| b.rank() as u32).collect())
}

fn isomorphic<F: Field>(s: &InductionSetting<F>, a: &Presentation<F>, b: &Presentation<F>) -> Option<Mor<F>> {
    s.hom_space_solver(&a.sector, &b.sector)
        .into_iter()
        .map(|t| b.proj.compose(&t).compose(&a.proj))
        .find(|u| !u.is_zero())
}

/// Irreducible simultaneous subobjects of `α^{g;+}_λ` and `α^-_μ` over simple
/// `λ, μ` of degree `g'`, up to isomorphism, with every presentation found.
pub fn find_twisted_reps<F: Field>(s: &InductionSetting<F>, g: usize) -> Result<Vec<TwistedModule<F>>, InductionError> {
    let cat = s.gx.cat();
    let simples = s.simples_of_degree(s.proj(g));
    let minus: Vec<InducedSector<F>> = simples
        .iter()
        .map(|&m| s.alpha_minus_simple(m))
        .collect::<Result<_, _>>()?;
    let mut found: Vec<TwistedModule<F>> = Vec::new();
    for &l in &simples {
        let plus = s.alpha_plus_simple(g, l)?;
        let unit = cat.id(&s.with_theta(&plus.lam));
        let algebra = s.hom_space_solver(&plus, &plus);
        for p in minimal_projections(&algebra, &unit)? {
            let pres = Presentation {
                sector: plus.clone(),
                proj: p,
            };
            let mut mins = Vec::new();
            let mut link = None;
            for ms in &minus {
                let hit = s
                    .hom_space_solver(&plus, ms)
                    .into_iter()
                    .map(|t| t.compose(&pres.proj))
                    .find(|t| !t.is_zero());
                let Some(t) = hit else { continue };
                let c = ratio(&t.adjoint().compose(&t), &pres.proj)
                    .ok_or_else(|| InductionError::Split("subobject is not irreducible".into()))?;
                let q = t.compose(&t.adjoint()).scale(&c.inv().expect("nonzero norm"));
                if link.is_none() {
                    link = Some((t, c));
                }
                mins.push(Presentation {
                    sector: ms.clone(),
                    proj: q,
                });
            }
            let Some((link, link_norm)) = link else { continue };
            match found.iter_mut().find(|m| isomorphic(s, &m.plus[0], &pres).is_some()) {
                Some(m) => {
                    m.plus.push(pres);
                    for q in mins {
                        if !m.minus.iter().any(|o| o.lam() == q.lam()) {
                            m.minus.push(q);
                        }
                    }
                }
                None => found.push(TwistedModule {
                    g,
                    underlying: image_object(&pres.proj),
                    plus: vec![pres],
                    minus: mins,
                    link,
                    link_norm,
                }),
            }
        }
    }
    Ok(found)
}

/// The underlying object of a module, checked to have degree `g'`.
pub fn sigma_restrict<F: Field>(s: &InductionSetting<F>, beta: &TwistedModule<F>) -> Result<Obj, InductionError> {
    let want = s.proj(beta.g);
    match s.gx.obj_degree(&beta.underlying) {
        Some(d) if d == want => Ok(beta.underlying.clone()),
        Some(d) => Err(InductionError::GradingMismatch {
            expected: s.degree_name(want),
            found: s.degree_name(d),
        }),
        None => Err(InductionError::NotHomogeneous(format!("{:?}", beta.underlying))),
    }
}

/// Simple `λ` with `θ ⊗ λ = x`, when `x` is a free module of rank one.
pub fn free_generator<F: Field>(s: &InductionSetting<F>, x: &Obj) -> Option<usize> {
    let cat = s.gx.cat();
    (0..cat.rank()).find(|&l| &cat.ring().fuse_obj(&s.q.theta, &cat.simple(l)) == x)
}

/// Reciprocity between `α^{g;+}_λ`, `α^-_λ` and `σ_β` for a simple `λ`.
pub fn check_reciprocity<F: Field>(s: &InductionSetting<F>, lam: usize, beta: &TwistedModule<F>) -> CheckReport {
    let cat = s.gx.cat();
    let mut rep = CheckReport::new("reciprocity");
    let name = cat.ring().name(lam).to_string();
    let gname = s.group().name(beta.g).to_string();
    if s.gx.grade(lam) != s.proj(beta.g) {
        rep.single("degree", false, || format!("lambda={name} has the wrong degree for g={gname}"));
        return rep;
    }
    let rhs = beta.underlying.mult(lam) as usize;
    let lw = vec![cat.simple(lam)];
    let t = s.theta();
    for (tag, src, pres) in [
        ("plus", s.alpha_plus(beta.g, &lw), &beta.plus[0]),
        ("minus", s.alpha_minus(&lw), &beta.minus[0]),
    ] {
        let src = match src {
            Ok(x) => x,
            Err(e) => {
                rep.single(format!("{tag}.sector"), false, || e.to_string());
                continue;
            }
        };
        let p = &pres.proj;
        let compress = |m: &Mor<F>| m.compose(&cat.rid(&s.q.w, &lw));
        let expand = |r: &Mor<F>| cat.rid(&s.q.x.adjoint(), pres.lam()).compose(&cat.lid(&t, r));
        let images: Vec<Mor<F>> = s
            .hom_space_solver(&src, &pres.sector)
            .into_iter()
            .map(|m| p.compose(&m))
            .collect();
        let keep = independent(&images);
        rep.single(format!("{tag}.dimension"), keep.len() == rhs, || {
            format!("lambda={name} g={gname}: solver {} vs fusion {rhs}", keep.len())
        });
        rep.tally(
            format!("{tag}.expand_after_compress"),
            keep.iter().map(|&k| {
                let m = &images[k];
                (!expand(&compress(m)).approx_eq(m)).then(|| format!("lambda={name} g={gname}"))
            }),
        );
        let mut tmpl = cat.zero_mor(lw.clone(), s.with_theta(pres.lam()));
        let mut rs = Vec::new();
        for c in 0..tmpl.blocks.len() {
            let (nr, nc) = tmpl.blocks[c].shape();
            for i in 0..nr {
                for j in 0..nc {
                    tmpl.blocks[c][(i, j)] = F::one();
                    rs.push(p.compose(&tmpl));
                    tmpl.blocks[c][(i, j)] = F::zero();
                }
            }
        }
        let rkeep = independent(&rs);
        rep.single(format!("{tag}.hom_into_sigma"), rkeep.len() == rhs, || {
            format!("lambda={name}: dim Hom(lambda, sigma) = {} vs {rhs}", rkeep.len())
        });
        rep.tally(
            format!("{tag}.compress_after_expand"),
            rkeep.iter().map(|&k| {
                let r = &rs[k];
                let m = expand(r);
                let ok = s.is_intertwiner(&src, &pres.sector, &m) && p.compose(&m).approx_eq(&m) && compress(&m).approx_eq(r);
                (!ok).then(|| format!("lambda={name} g={gname}"))
            }),
        );
    }
    rep
}

/// `β ≺ α_{θ σ_β}` in both chiralities via `(1 ⊗ P)(x ⊗ 1)P`, an isometry up to `dθ`.
pub fn check_embedding<F: Field>(s: &InductionSetting<F>, beta: &TwistedModule<F>) -> CheckReport {
    let cat = s.gx.cat();
    let mut rep = CheckReport::new("embedding");
    let t = s.theta();
    let d = s.q.sqrt_dtheta.clone() * &s.q.sqrt_dtheta;
    for (tag, pres) in [("plus", &beta.plus[0]), ("minus", &beta.minus[0])] {
        let big = s.with_theta(pres.lam());
        let target = match tag {
            "plus" => s.alpha_plus(beta.g, &big),
            _ => s.alpha_minus(&big),
        };
        let target = match target {
            Ok(x) => x,
            Err(e) => {
                rep.single(format!("{tag}.sector"), false, || e.to_string());
                continue;
            }
        };
        let p = &pres.proj;
        let v = cat.lid(&t, p).compose(&cat.rid(&s.q.x, pres.lam())).compose(p);
        rep.single(format!("{tag}.intertwiner"), s.is_intertwiner(&pres.sector, &target, &v), || {
            format!("g={}", s.group().name(beta.g))
        });
        rep.single(format!("{tag}.isometry"), v.adjoint().compose(&v).approx_eq(&p.scale(&d)), || {
            format!("g={}", s.group().name(beta.g))
        });
    }
    rep
}
