//! Relative braiding between plus- and minus-presented modules.

use super::modules::{Presentation, TwistedModule};
use super::{Chirality, InducedSector, InductionError, InductionSetting};
use crate::fusion::{Mor, Obj, Word};
use crate::kernel::Field;
use crate::report::CheckReport;

/// Everything needed to compare relative braidings of one pair.
pub(crate) struct Dilated<F> {
    pub op: Mor<F>,
    pub src_proj: Mor<F>,
    pub dst_proj: Mor<F>,
    pub src_sector: InducedSector<F>,
    pub dst_sector: InducedSector<F>,
}

/// `c_r⁺(β, δ)` in the θ-picture: a partial isometry `θλμ → θ γ_{g'}(μ) λ`
/// between the images of the two presentations' projections.
pub fn relative_braiding<F: Field>(
    s: &InductionSetting<F>,
    beta: &Presentation<F>,
    delta: &Presentation<F>,
) -> Result<Mor<F>, InductionError> {
    dilated(s, beta, delta).map(|d| d.op)
}

pub(crate) fn dilated<F: Field>(
    s: &InductionSetting<F>,
    beta: &Presentation<F>,
    delta: &Presentation<F>,
) -> Result<Dilated<F>, InductionError> {
    let (Chirality::Plus, Some(g)) = (beta.sector.chirality, beta.sector.g) else {
        return Err(InductionError::Presentation("first module needs a plus presentation".into()));
    };
    if delta.sector.chirality != Chirality::Minus {
        return Err(InductionError::Presentation("second module needs a minus presentation".into()));
    }
    let cat = s.gx.cat();
    let t = s.theta();
    let (lam, mu) = (beta.lam(), delta.lam());
    let gmu = s.gx.act_word(s.proj(g), mu);
    let minus_gmu = s.alpha_minus(&gmu)?;
    let c = s
        .gx
        .braid(lam, mu)
        .map_err(|e| InductionError::NotHomogeneous(e.to_string()))?;
    let src_proj = cat
        .rid(&beta.proj, mu)
        .compose(&s.apply(&beta.sector, &delta.proj));
    let dst_proj = s
        .apply(&minus_gmu, &beta.proj)
        .compose(&cat.rid(&s.twist(g, &delta.proj), lam));
    let op = dst_proj.compose(&cat.lid(&t, &c)).compose(&src_proj);
    Ok(Dilated {
        op,
        src_proj,
        dst_proj,
        src_sector: s.composite(&beta.sector, &delta.sector),
        dst_sector: s.composite(&minus_gmu, &beta.sector),
    })
}

/// `γ̃_k` of a plus or minus presentation.
fn moved<F: Field>(s: &InductionSetting<F>, k: usize, p: &Presentation<F>) -> Result<Presentation<F>, InductionError> {
    let lam = s.gx.act_word(s.proj(k), p.lam());
    let sector = match p.sector.g {
        Some(g) => s.alpha_plus(s.group().conj(k, g), &lam)?,
        None => s.alpha_minus(&lam)?,
    };
    Ok(Presentation {
        sector,
        proj: s.twist(k, &p.proj),
    })
}

/// `β₁β₂` presented in `α^{g₁g₂;+}_{λ₁λ₂}`, or `δ₁δ₂` in `α^-_{μ₁μ₂}`.
fn product<F: Field>(s: &InductionSetting<F>, a: &Presentation<F>, b: &Presentation<F>) -> Result<Presentation<F>, InductionError> {
    let mut lam: Word = a.lam().clone();
    lam.extend_from_slice(b.lam());
    let sector = match (a.sector.g, b.sector.g) {
        (Some(g), Some(h)) => s.alpha_plus(s.group().mul(g, h), &lam)?,
        _ => s.alpha_minus(&lam)?,
    };
    let proj = s
        .gx
        .cat()
        .rid(&a.proj, b.lam())
        .compose(&s.apply(&a.sector, &b.proj));
    Ok(Presentation { sector, proj })
}

/// Nonzero `P_b S P_a` for an intertwiner `S`, aligning two presentations.
fn alignment<F: Field>(s: &InductionSetting<F>, a: &Presentation<F>, b: &Presentation<F>) -> Option<Mor<F>> {
    s.hom_space_solver(&a.sector, &b.sector)
        .into_iter()
        .map(|m| b.proj.compose(&m).compose(&a.proj))
        .find(|u| !u.is_zero())
}

fn is_projection<F: Field>(p: &Mor<F>) -> bool {
    p.compose(p).approx_eq(p) && p.adjoint().approx_eq(p)
}

fn tag<F: Field>(s: &InductionSetting<F>, m: &TwistedModule<F>) -> String {
    let cat = s.gx.cat();
    let names: Vec<String> = m
        .lam()
        .iter()
        .map(|o| o.support().map(|a| cat.ring().name(a).to_string()).collect::<Vec<_>>().join("+"))
        .collect();
    format!("{}@{}", names.join("."), s.group().name(m.g))
}

/// Unitarity, intertwining, presentation independence, covariance and both
/// braid relations of `c_r⁺` on the given modules.
pub fn check_relative_braiding<F: Field>(s: &InductionSetting<F>, modules: &[TwistedModule<F>]) -> CheckReport {
    let cat = s.gx.cat();
    let mut rep = CheckReport::new("relative_braiding");
    let pairs: Vec<(usize, usize)> = (0..modules.len())
        .flat_map(|i| (0..modules.len()).map(move |j| (i, j)))
        .collect();
    let mut unitary = Vec::new();
    let mut intertwiner = Vec::new();
    let mut independent = Vec::new();
    let mut covariant = Vec::new();
    let mut trivial = Vec::new();
    let theta_trivial = s.q.theta == cat.simple(cat.unit());
    for &(i, j) in &pairs {
        let (b, d) = (&modules[i], &modules[j]);
        let w = || format!("beta={} delta={}", tag(s, b), tag(s, d));
        let base = match dilated(s, &b.plus[0], &d.minus[0]) {
            Ok(x) => x,
            Err(e) => {
                unitary.push(Some(format!("{}: {e}", w())));
                continue;
            }
        };
        let op = &base.op;
        let ok = is_projection(&base.src_proj)
            && is_projection(&base.dst_proj)
            && op.adjoint().compose(op).approx_eq(&base.src_proj)
            && op.compose(&op.adjoint()).approx_eq(&base.dst_proj);
        unitary.push((!ok).then(w));
        intertwiner.push((!s.is_intertwiner(&base.src_sector, &base.dst_sector, op)).then(w));
        if theta_trivial {
            let c = s.gx.braid(b.lam(), d.lam()).expect("homogeneous words");
            trivial.push((!op.blocks_eq(&c)).then(w));
        }
        for (pi, bp) in b.plus.iter().enumerate() {
            for (mi, dm) in d.minus.iter().enumerate() {
                if pi == 0 && mi == 0 {
                    continue;
                }
                let ww = || format!("{} presentations ({pi},{mi})", w());
                let (Some(u), Some(v)) = (alignment(s, &b.plus[0], bp), alignment(s, &d.minus[0], dm)) else {
                    independent.push(Some(ww()));
                    continue;
                };
                let other = match dilated(s, bp, dm) {
                    Ok(x) => x.op,
                    Err(e) => {
                        independent.push(Some(format!("{}: {e}", ww())));
                        continue;
                    }
                };
                let g = b.g;
                let gmu0 = s.gx.act_word(s.proj(g), d.mu());
                let minus_gmu0 = match s.alpha_minus(&gmu0) {
                    Ok(x) => x,
                    Err(e) => {
                        independent.push(Some(format!("{}: {e}", ww())));
                        continue;
                    }
                };
                let x = cat.rid(&u, dm.lam()).compose(&s.apply(&b.plus[0].sector, &v));
                let y = cat
                    .rid(&s.twist(g, &v), bp.lam())
                    .compose(&s.apply(&minus_gmu0, &u));
                independent.push((!other.compose(&x).approx_eq(&y.compose(op))).then(ww));
            }
        }
        for k in s.group().elements() {
            let wk = || format!("{} k={}", w(), s.group().name(k));
            let res = moved(s, k, &b.plus[0])
                .and_then(|bk| Ok((bk, moved(s, k, &d.minus[0])?)))
                .and_then(|(bk, dk)| dilated(s, &bk, &dk));
            match res {
                Ok(x) => covariant.push((!x.op.approx_eq(&s.twist(k, op))).then(wk)),
                Err(e) => covariant.push(Some(format!("{}: {e}", wk()))),
            }
        }
    }
    rep.tally("partial_isometry", unitary);
    rep.tally("intertwiner", intertwiner);
    rep.note_last("source and target sectors are mixed composites; solver-derived constraint check");
    rep.tally("presentation_independence", independent);
    rep.note_last("naturality on irreducible modules: intertwiners between presentations are aligned isomorphisms");
    rep.tally("covariance", covariant);
    if theta_trivial {
        rep.tally("equals_braiding_for_trivial_theta", trivial);
    }
    let (br1, br2) = braid_relations(s, modules);
    rep.tally("braid_relation_1", br1);
    rep.tally("braid_relation_2", br2);
    rep.not_checkable(
        "agrees_with_extension_braiding",
        "the finite model has no independent braiding on the extension to compare with; \
         the axiom-level checks above stand in for it",
    );
    rep
}

type Outcomes = Vec<Option<String>>;

fn braid_relations<F: Field>(s: &InductionSetting<F>, modules: &[TwistedModule<F>]) -> (Outcomes, Outcomes) {
    let cat = s.gx.cat();
    let n = modules.len();
    let mut br1 = Vec::new();
    let mut br2 = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let (a, b, c) = (&modules[i], &modules[j], &modules[k]);
                let w = || format!("{} {} {}", tag(s, a), tag(s, b), tag(s, c));
                let first = (|| -> Result<bool, InductionError> {
                    let ab = product(s, &a.plus[0], &b.plus[0])?;
                    let lhs = relative_braiding(s, &ab, &c.minus[0])?;
                    let moved_c = moved(s, b.g, &c.minus[0])?;
                    let d1 = relative_braiding(s, &a.plus[0], &moved_c)?;
                    let d2 = relative_braiding(s, &b.plus[0], &c.minus[0])?;
                    let rhs = cat
                        .rid(&d1, b.lam())
                        .compose(&s.apply(&a.plus[0].sector, &d2));
                    Ok(lhs.approx_eq(&rhs))
                })();
                br1.push(verdict(first, w));
                let second = (|| -> Result<bool, InductionError> {
                    let bc = product(s, &b.minus[0], &c.minus[0])?;
                    let lhs = relative_braiding(s, &a.plus[0], &bc)?;
                    let d1 = relative_braiding(s, &a.plus[0], &b.minus[0])?;
                    let d2 = relative_braiding(s, &a.plus[0], &c.minus[0])?;
                    let gmu1 = s.gx.act_word(s.proj(a.g), b.mu());
                    let minus_gmu1 = s.alpha_minus(&gmu1)?;
                    let rhs = s.apply(&minus_gmu1, &d2).compose(&cat.rid(&d1, c.mu()));
                    Ok(lhs.approx_eq(&rhs))
                })();
                br2.push(verdict(second, w));
            }
        }
    }
    (br1, br2)
}

fn verdict(r: Result<bool, InductionError>, w: impl FnOnce() -> String) -> Option<String> {
    match r {
        Ok(true) => None,
        Ok(false) => Some(w()),
        Err(e) => Some(format!("{}: {e}", w())),
    }
}

/// The commutation identity between plus and minus half-braidings and the
/// three exchange identities, over all simples of matching degree.
pub fn check_exchange<F: Field>(s: &InductionSetting<F>) -> CheckReport {
    let cat = s.gx.cat();
    let gx = &s.gx;
    let mut rep = CheckReport::new("exchange");
    let t = s.theta();
    let rank = cat.rank();
    let simple = |a: usize| -> Word { vec![cat.simple(a)] };
    let name = |a: usize| cat.ring().name(a).to_string();
    let mut comm = Vec::new();
    for g in s.group().elements() {
        let gp = s.proj(g);
        for l in s.simples_of_degree(gp) {
            for m in 0..rank {
                let (lw, mw) = (simple(l), simple(m));
                let gmu = gx.act_word(gp, &mw);
                let zg = &s.z.z[g];
                let br = |x: &[Obj], y: &[Obj]| gx.braid(x, y).expect("homogeneous");
                let lhs = cat
                    .lid(&gmu, &cat.rid(zg, &lw))
                    .compose(&cat.lid(&gmu, &br(&lw, &t)))
                    .compose(&cat.rid(&br(&lw, &mw), &t))
                    .compose(&cat.lid(&lw, &br(&t, &mw)));
                let mut lm = lw.clone();
                lm.extend_from_slice(&mw);
                let rhs = cat
                    .rid(&br(&t, &gmu), &lw)
                    .compose(&cat.lid(&t, &br(&lw, &mw)))
                    .compose(&cat.rid(zg, &lm))
                    .compose(&cat.rid(&br(&lw, &t), &mw));
                comm.push((!lhs.approx_eq(&rhs)).then(|| format!("g={} lambda={} mu={}", s.group().name(g), name(l), name(m))));
            }
        }
    }
    rep.tally("commutation_identity", comm);

    let mut ex1 = Vec::new();
    let mut ex2 = Vec::new();
    let mut ex3 = Vec::new();
    for l in 0..rank {
        for m in (0..rank).filter(|&m| gx.grade(m) == gx.grade(l)) {
            let (lw, mw) = (simple(l), simple(m));
            let basis = s.module_map_basis(&lw, &mw);
            for r in 0..rank {
                let rw = simple(r);
                let w = || format!("rho={} lambda={} mu={}", name(r), name(l), name(m));
                let Ok(minus_r) = s.alpha_minus(&rw) else {
                    ex2.push(Some(format!("{}: minus sector", w())));
                    continue;
                };
                let grho = gx.act_word(gx.grade(l), &rw);
                let Ok(minus_gr) = s.alpha_minus(&grho) else {
                    ex3.push(Some(format!("{}: minus sector", w())));
                    continue;
                };
                let cm_l = gx.braid_op(&rw, &lw).expect("homogeneous");
                let cm_m = gx.braid_op(&rw, &mw).expect("homogeneous");
                let c_lr = gx.braid(&lw, &rw).expect("homogeneous");
                let c_mr = gx.braid(&mw, &rw).expect("homogeneous");
                let plus: Vec<(usize, InducedSector<F>)> = s
                    .group()
                    .elements()
                    .filter(|&g| s.proj(g) == gx.grade(r))
                    .filter_map(|g| s.alpha_plus(g, &rw).ok().map(|x| (g, x)))
                    .collect();
                let c_rl = gx.braid(&rw, &lw).expect("homogeneous");
                let c_rm = gx.braid(&rw, &mw).expect("homogeneous");
                for sm in &basis {
                    for (g, pr) in &plus {
                        let lhs = cat.rid(&s.twist(*g, sm), &rw).compose(&cat.lid(&t, &c_rl));
                        let rhs = cat.lid(&t, &c_rm).compose(&s.apply(pr, sm));
                        ex1.push((!lhs.approx_eq(&rhs)).then(|| format!("{} g={}", w(), s.group().name(*g))));
                    }
                    let tail = cm_l.dst[1..].to_vec();
                    let lhs = cat.rid(sm, &tail).compose(&cat.lid(&t, &cm_l));
                    let rhs = cat.lid(&t, &cm_m).compose(&s.apply(&minus_r, sm));
                    ex2.push((!lhs.approx_eq(&rhs)).then(w));
                    let lhs = s.apply(&minus_gr, sm).compose(&cat.lid(&t, &c_lr));
                    let rhs = cat.lid(&t, &c_mr).compose(&cat.rid(sm, &rw));
                    ex3.push((!lhs.approx_eq(&rhs)).then(w));
                }
            }
        }
    }
    rep.tally("exchange_plus", ex1);
    rep.note_last("evaluated on a basis of left module maps θλ → θμ");
    rep.tally("exchange_minus", ex2);
    rep.tally("exchange_mixed", ex3);
    rep
}
