//! Theorem suites over every degree-matched tuple of simples.

use rayon::prelude::*;

use super::braiding::{check_exchange, check_relative_braiding};
use super::modules::{check_embedding, check_reciprocity, find_twisted_reps, sigma_restrict, TwistedModule};
use super::{InductionError, InductionSetting};
use crate::fusion::{Obj, Word};
use crate::kernel::Field;
use crate::report::CheckReport;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    Multiplicativity,
    Covariance,
    Intertwiners,
    Reciprocity,
    RelativeBraiding,
}

impl Suite {
    pub const ALL: [Suite; 5] = [
        Suite::Multiplicativity,
        Suite::Covariance,
        Suite::Intertwiners,
        Suite::Reciprocity,
        Suite::RelativeBraiding,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Multiplicativity => "multiplicativity",
            Suite::Covariance => "covariance",
            Suite::Intertwiners => "intertwiners",
            Suite::Reciprocity => "reciprocity",
            Suite::RelativeBraiding => "relative-braiding",
        }
    }

    pub fn parse(name: &str) -> Option<Suite> {
        Suite::ALL.into_iter().find(|s| s.name() == name)
    }
}

pub fn run_suite<F: Field>(s: &InductionSetting<F>, suite: Suite) -> CheckReport {
    match suite {
        Suite::Multiplicativity => multiplicativity(s),
        Suite::Covariance => covariance(s),
        Suite::Intertwiners => intertwiners(s),
        Suite::Reciprocity => reciprocity(s),
        Suite::RelativeBraiding => relative(s),
    }
}

/// Twisted modules for every element of `G`, in group order.
pub fn all_modules<F: Field>(s: &InductionSetting<F>) -> Result<Vec<TwistedModule<F>>, InductionError> {
    let mut out = Vec::new();
    for g in s.group().elements() {
        out.extend(find_twisted_reps(s, g)?);
    }
    Ok(out)
}

fn one<F: Field>(s: &InductionSetting<F>, a: usize) -> Word {
    vec![s.gx.cat().simple(a)]
}

fn name<F: Field>(s: &InductionSetting<F>, a: usize) -> &str {
    s.gx.cat().ring().name(a)
}

fn pair(a: &[Obj], b: &[Obj]) -> Word {
    let mut w = a.to_vec();
    w.extend_from_slice(b);
    w
}

fn outcome(r: Result<bool, InductionError>, w: impl FnOnce() -> String) -> Option<String> {
    match r {
        Ok(true) => None,
        Ok(false) => Some(w()),
        Err(e) => Some(format!("{}: {e}", w())),
    }
}

fn multiplicativity<F: Field>(s: &InductionSetting<F>) -> CheckReport {
    let cat = s.gx.cat();
    let grp = s.group();
    let mut rep = CheckReport::new("multiplicativity");
    let mut tuples = Vec::new();
    for g in grp.elements() {
        for h in grp.elements() {
            for l in s.simples_of_degree(s.proj(g)) {
                for m in s.simples_of_degree(s.proj(h)) {
                    tuples.push((g, h, l, m));
                }
            }
        }
    }
    let plus: Vec<Option<String>> = tuples
        .par_iter()
        .map(|&(g, h, l, m)| {
            let r = (|| {
                let (lw, mw) = (one(s, l), one(s, m));
                let a = s.alpha_plus(g, &lw)?;
                let b = s.alpha_plus(h, &mw)?;
                let ab = s.alpha_plus(grp.mul(g, h), &pair(&lw, &mw))?;
                let rhs = cat.rid(&a.half_braiding, &mw).compose(&cat.lid(&lw, &b.half_braiding));
                Ok(ab.half_braiding.approx_eq(&rhs))
            })();
            outcome(r, || {
                format!("g={} h={} lambda={} mu={}", grp.name(g), grp.name(h), name(s, l), name(s, m))
            })
        })
        .collect();
    rep.tally("plus", plus);
    let n = cat.rank();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|l| (0..n).map(move |m| (l, m))).collect();
    let minus: Vec<Option<String>> = pairs
        .par_iter()
        .map(|&(l, m)| {
            let r = (|| {
                let (lw, mw) = (one(s, l), one(s, m));
                let a = s.alpha_minus(&lw)?;
                let b = s.alpha_minus(&mw)?;
                let ab = s.alpha_minus(&pair(&lw, &mw))?;
                let rhs = cat.rid(&a.half_braiding, &mw).compose(&cat.lid(&lw, &b.half_braiding));
                Ok(ab.half_braiding.approx_eq(&rhs))
            })();
            outcome(r, || format!("lambda={} mu={}", name(s, l), name(s, m)))
        })
        .collect();
    rep.tally("minus", minus);
    rep
}

fn covariance<F: Field>(s: &InductionSetting<F>) -> CheckReport {
    let cat = s.gx.cat();
    let gx = &s.gx;
    let grp = s.group();
    let z = &s.z.z;
    let mut rep = CheckReport::new("covariance");
    let mut tuples = Vec::new();
    for k in grp.elements() {
        for g in grp.elements() {
            for l in s.simples_of_degree(s.proj(g)) {
                tuples.push((k, g, l));
            }
        }
    }
    let plus: Vec<Option<String>> = tuples
        .par_iter()
        .map(|&(k, g, l)| {
            let r = (|| {
                let kp = s.proj(k);
                let lw = one(s, l);
                let gl = gx.act_word(kp, &lw);
                let e = s.alpha_plus(g, &lw)?;
                let e2 = s.alpha_plus(grp.conj(k, g), &gl)?;
                let lhs = e2.half_braiding.compose(&cat.lid(&gl, &z[k]));
                let rhs = cat.rid(&z[k], &gl).compose(&gx.act(kp, &e.half_braiding));
                Ok(lhs.approx_eq(&rhs))
            })();
            outcome(r, || format!("k={} g={} lambda={}", grp.name(k), grp.name(g), name(s, l)))
        })
        .collect();
    rep.tally("plus", plus);
    let pairs: Vec<(usize, usize)> = grp.elements().flat_map(|k| grp.elements().map(move |g| (k, g))).collect();
    rep.tally(
        "z_conjugation",
        pairs.iter().map(|&(k, g)| {
            let (kp, gp) = (s.proj(k), s.proj(g));
            let rhs = z[k]
                .compose(&gx.act(kp, &z[g]))
                .compose(&gx.act(gx.group().mul(kp, gp), &z[grp.inv(k)]));
            (!z[grp.conj(k, g)].approx_eq(&rhs)).then(|| format!("k={} g={}", grp.name(k), grp.name(g)))
        }),
    );
    let n = cat.rank();
    let minus_tuples: Vec<(usize, usize)> = grp.elements().flat_map(|k| (0..n).map(move |l| (k, l))).collect();
    let minus: Vec<Option<String>> = minus_tuples
        .par_iter()
        .map(|&(k, l)| {
            let r = (|| {
                let kp = s.proj(k);
                let lw = one(s, l);
                let gl = gx.act_word(kp, &lw);
                let e = s.alpha_minus(&lw)?;
                let e2 = s.alpha_minus(&gl)?;
                let lhs = e2.half_braiding.compose(&cat.lid(&gl, &z[k]));
                let rhs = cat.rid(&z[k], &gl).compose(&gx.act(kp, &e.half_braiding));
                Ok(lhs.approx_eq(&rhs))
            })();
            outcome(r, || format!("k={} lambda={}", grp.name(k), name(s, l)))
        })
        .collect();
    rep.tally("minus", minus);
    rep.tally(
        "z_inverse",
        grp.elements().map(|k| {
            let m = z[k].compose(&gx.act(s.proj(k), &z[grp.inv(k)]));
            (!m.is_identity()).then(|| format!("k={}", grp.name(k)))
        }),
    );
    rep
}

fn intertwiners<F: Field>(s: &InductionSetting<F>) -> CheckReport {
    let cat = s.gx.cat();
    let grp = s.group();
    let n = cat.rank();
    let mut rep = CheckReport::new("intertwiners");
    let mut plus_t = Vec::new();
    for g in grp.elements() {
        let simples = s.simples_of_degree(s.proj(g));
        for &l in &simples {
            for &m in &simples {
                plus_t.push((g, l, m));
            }
        }
    }
    let central_plus: Vec<Option<String>> = plus_t
        .par_iter()
        .map(|&(g, l, m)| {
            let r = (|| -> Result<(usize, usize), InductionError> {
                let a = s.alpha_plus_simple(g, l)?;
                let b = s.alpha_plus_simple(g, m)?;
                let solved = s.hom_dim(&a, &b);
                let formula = s.hom_dim_formula(&cat.simple(l), &cat.simple(m))?;
                Ok((solved, formula))
            })();
            let w = || format!("g={} lambda={} mu={}", grp.name(g), name(s, l), name(s, m));
            match r {
                Ok((a, b)) if a == b => None,
                Ok((a, b)) => Some(format!("{}: solver {a} vs formula {b}", w())),
                Err(e) => Some(format!("{}: {e}", w())),
            }
        })
        .collect();
    rep.tally("central_plus", central_plus);
    let minus_t: Vec<(usize, usize)> = (0..n)
        .flat_map(|l| (0..n).map(move |m| (l, m)))
        .filter(|&(l, m)| s.gx.grade(l) == s.gx.grade(m))
        .collect();
    let central_minus: Vec<Option<String>> = minus_t
        .par_iter()
        .map(|&(l, m)| {
            let r = (|| -> Result<(usize, usize), InductionError> {
                let a = s.alpha_minus_simple(l)?;
                let b = s.alpha_minus_simple(m)?;
                Ok((s.hom_dim(&a, &b), s.hom_dim_formula(&cat.simple(l), &cat.simple(m))?))
            })();
            let w = || format!("lambda={} mu={}", name(s, l), name(s, m));
            match r {
                Ok((a, b)) if a == b => None,
                Ok((a, b)) => Some(format!("{}: solver {a} vs formula {b}", w())),
                Err(e) => Some(format!("{}: {e}", w())),
            }
        })
        .collect();
    rep.tally("central_minus", central_minus);

    // θ-expanded vertices b : ab → c intertwine the induced sectors.
    let mut vertices = Vec::new();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for mu in 0..cat.n(a, b, c) {
                    vertices.push((a, b, c, mu));
                }
            }
        }
    }
    let functor: Vec<(Vec<Option<String>>, Option<String>)> = vertices
        .par_iter()
        .map(|&(a, b, c, mu)| {
            let w = || format!("vertex {}{}->{}", name(s, a), name(s, b), name(s, c));
            let ab = pair(&one(s, a), &one(s, b));
            let cw = one(s, c);
            let v = cat.vertex(a, b, c, mu).adjoint().retype(ab.clone(), cw.clone());
            let lifted = cat.lid(&s.theta(), &v);
            let d = s.gx.grade(c);
            let plus = grp
                .elements()
                .filter(|&g| s.proj(g) == d)
                .map(|g| {
                    let r = (|| Ok(s.is_intertwiner(&s.alpha_plus(g, &ab)?, &s.alpha_plus(g, &cw)?, &lifted)))();
                    outcome(r, || format!("{} g={}", w(), grp.name(g)))
                })
                .collect();
            let r = (|| Ok(s.is_intertwiner(&s.alpha_minus(&ab)?, &s.alpha_minus(&cw)?, &lifted)))();
            (plus, outcome(r, w))
        })
        .collect();
    let (fp, fm): (Vec<_>, Vec<_>) = functor.into_iter().unzip();
    rep.tally("functor_plus", fp.into_iter().flatten());
    rep.tally("functor_minus", fm);

    let mixed: Vec<(String, Option<String>)> = plus_t
        .par_iter()
        .map(|&(g, l, m)| {
            let w = || format!("g={} lambda={} mu={}", grp.name(g), name(s, l), name(s, m));
            let r = (|| -> Result<(usize, usize), InductionError> {
                let a = s.alpha_plus_simple(g, l)?;
                let b = s.alpha_minus_simple(m)?;
                Ok((s.hom_dim(&a, &b), s.hom_dim(&b, &a)))
            })();
            match r {
                Ok((x, y)) if x == y => (format!("{}:{x}", w()), None),
                Ok((x, y)) => (String::new(), Some(format!("{}: {x} vs reverse {y}", w()))),
                Err(e) => (String::new(), Some(format!("{}: {e}", w()))),
            }
        })
        .collect();
    let nonzero = mixed
        .iter()
        .filter(|(d, o)| o.is_none() && !d.ends_with(":0"))
        .count();
    rep.tally("mixed_adjoint_symmetry", mixed.into_iter().map(|(_, o)| o));
    rep.note_last(format!(
        "mixed chirality dimensions come from the linear solver only; {nonzero} nonzero pairs"
    ));
    rep
}

fn module_invariants<F: Field>(s: &InductionSetting<F>, m: &TwistedModule<F>) -> Option<String> {
    let underlying = |p: &crate::fusion::Mor<F>| Obj::from_mult(p.blocks.iter().map(|b| b.rank() as u32).collect());
    for (k, pres) in m.plus.iter().chain(&m.minus).enumerate() {
        let p = &pres.proj;
        let ok = p.compose(p).approx_eq(p)
            && p.adjoint().approx_eq(p)
            && s.is_intertwiner(&pres.sector, &pres.sector, p)
            && underlying(p) == m.underlying;
        if !ok {
            return Some(format!("presentation {k}"));
        }
    }
    let (p, q) = (&m.plus[0].proj, &m.minus[0].proj);
    let l = &m.link;
    let ok = s.is_intertwiner(&m.plus[0].sector, &m.minus[0].sector, l)
        && l.adjoint().compose(l).approx_eq(&p.scale(&m.link_norm))
        && l.compose(&l.adjoint()).approx_eq(&q.scale(&m.link_norm))
        && m.link_norm.is_positive_real();
    (!ok).then(|| "link".to_string())
}

fn reciprocity<F: Field>(s: &InductionSetting<F>) -> CheckReport {
    let grp = s.group();
    let mut rep = CheckReport::new("reciprocity");
    let mut counts = Vec::new();
    let mut found = Vec::new();
    let mut failed = Vec::new();
    for g in grp.elements() {
        match find_twisted_reps(s, g) {
            Ok(ms) => {
                counts.push(format!("{}:{}", grp.name(g), ms.len()));
                found.extend(ms);
                failed.push(None);
            }
            Err(e) => failed.push(Some(format!("g={}: {e}", grp.name(g)))),
        }
    }
    rep.tally("find_twisted_reps", failed);
    rep.note_last(format!("modules per element {}", counts.join(" ")));
    rep.tally(
        "module_invariants",
        found.iter().map(|m| module_invariants(s, m).map(|w| format!("g={} {w}", grp.name(m.g)))),
    );
    rep.tally(
        "sigma_degree",
        found.iter().map(|m| sigma_restrict(s, m).err().map(|e| e.to_string())),
    );
    let tuples: Vec<(usize, usize)> = found
        .iter()
        .enumerate()
        .flat_map(|(i, m)| s.simples_of_degree(s.proj(m.g)).into_iter().map(move |l| (i, l)))
        .collect();
    let parts: Vec<CheckReport> = tuples
        .par_iter()
        .map(|&(i, l)| check_reciprocity(s, l, &found[i]))
        .collect();
    for p in parts {
        rep.merge(p);
    }
    let emb: Vec<CheckReport> = found.par_iter().map(|m| check_embedding(s, m)).collect();
    let mut merged = CheckReport::new("embedding");
    for p in emb {
        merged.merge(p);
    }
    rep.absorb(merged);
    rep
}

fn relative<F: Field>(s: &InductionSetting<F>) -> CheckReport {
    let mut rep = CheckReport::new("relative-braiding");
    match all_modules(s) {
        Ok(ms) => {
            for c in check_relative_braiding(s, &ms).checks {
                rep.checks.push(c);
            }
        }
        Err(e) => {
            rep.single("find_twisted_reps", false, || e.to_string());
        }
    }
    for c in check_exchange(s).checks {
        rep.checks.push(c);
    }
    rep
}
