//! Built-in instances, shipped as ordinary instance files.
//!
//! Core entries pass every structural check and reproduce their expected
//! tables. `ising_toric` is large and kept out of the default list. Probes are
//! deliberately broken copies used to show that the checks bite; they load
//! only without validation.

use thiserror::Error;

use crate::induction::{find_twisted_reps, InductionSetting};
use crate::io::{self, obj_to, ExpectedRepr, Instance, LoadError};
use crate::kernel::Scalar;
use crate::report::CheckReport;

const ENTRIES: &[(&str, &str)] = &[
    ("trivial", include_str!("data/trivial.json")),
    ("vec_z2", include_str!("data/vec_z2.json")),
    ("toric_z2", include_str!("data/toric_z2.json")),
    ("ising_crossed", include_str!("data/ising_crossed.json")),
    ("toric_em", include_str!("data/toric_em.json")),
];

const LARGE: &[(&str, &str)] = &[("ising_toric", include_str!("data/ising_toric.json"))];

const PROBES: &[(&str, &str)] = &[
    ("ising_f_flip", include_str!("data/ising_f_flip.json")),
    ("ising_r_phase", include_str!("data/ising_r_phase.json")),
    ("toric_z_i", include_str!("data/toric_z_i.json")),
    ("ising_psi", include_str!("data/ising_psi.json")),
];

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("unknown catalog entry {0:?}")]
    Unknown(String),
    #[error("catalog entry {name} does not load: {source}")]
    Load { name: String, source: LoadError },
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub instance: Instance,
}

pub fn list_entries() -> Vec<&'static str> {
    ENTRIES.iter().map(|(n, _)| *n).collect()
}

pub fn list_large() -> Vec<&'static str> {
    LARGE.iter().map(|(n, _)| *n).collect()
}

pub fn list_probes() -> Vec<&'static str> {
    PROBES.iter().map(|(n, _)| *n).collect()
}

fn find(name: &str) -> Option<(&'static str, &'static str, bool)> {
    let hit = |t: &'static [(&'static str, &'static str)], probe: bool| {
        t.iter().find(|(n, _)| *n == name).map(|(n, s)| (*n, *s, probe))
    };
    hit(ENTRIES, false).or_else(|| hit(LARGE, false)).or_else(|| hit(PROBES, true))
}

pub fn is_probe(name: &str) -> bool {
    matches!(find(name), Some((_, _, true)))
}

/// File text of any entry or probe.
pub fn source(name: &str) -> Result<&'static str, CatalogError> {
    find(name).map(|(_, s, _)| s).ok_or_else(|| CatalogError::Unknown(name.into()))
}

/// Loads an entry; probes come back unvalidated.
pub fn get_entry(name: &str) -> Result<CatalogEntry, CatalogError> {
    let (name, text, probe) = find(name).ok_or_else(|| CatalogError::Unknown(name.into()))?;
    let instance = io::load_str(text, !probe).map_err(|source| CatalogError::Load {
        name: name.into(),
        source,
    })?;
    Ok(CatalogEntry { name, instance })
}

/// Compares the engine against the instance's expected tables.
pub fn check_expected(inst: &Instance) -> CheckReport {
    let mut rep = CheckReport::new("expected");
    for s in &inst.settings {
        if let Some(exp) = inst.expected.get(&s.name) {
            let mut sub = check_setting(s, exp);
            sub.suite = s.name.clone();
            rep.absorb(sub);
        }
    }
    rep
}

fn check_setting(s: &InductionSetting<Scalar>, exp: &ExpectedRepr) -> CheckReport {
    let mut rep = CheckReport::new("expected");
    let cat = s.gx.cat();
    let ring = cat.ring();
    let label = |n: &str| ring.index(n).ok();
    let pairs: Vec<(usize, usize, usize, String)> = exp
        .hom_dims
        .iter()
        .filter_map(|(l, m, d)| Some((label(l)?, label(m)?, *d as usize, format!("lambda={l} mu={m}"))))
        .collect();
    rep.single("hom_dims.labels", pairs.len() == exp.hom_dims.len(), || "unknown label".into());
    rep.tally(
        "hom_dims.formula",
        pairs.iter().map(|(l, m, d, w)| {
            let got = s.hom_dim_formula(&cat.simple(*l), &cat.simple(*m));
            (got.as_ref() != Ok(d)).then(|| format!("{w}: {got:?} vs {d}"))
        }),
    );
    let mut plus = Vec::new();
    for (l, m, d, w) in &pairs {
        for g in s.group().elements() {
            if s.proj(g) != s.gx.grade(*l) {
                continue;
            }
            let got = match (s.alpha_plus_simple(g, *l), s.alpha_plus_simple(g, *m)) {
                (Ok(a), Ok(b)) => Some(s.hom_dim(&a, &b)),
                _ => None,
            };
            plus.push((got != Some(*d)).then(|| format!("{w} g={}: {got:?} vs {d}", s.group().name(g))));
        }
    }
    rep.tally("hom_dims.plus", plus);
    rep.tally(
        "hom_dims.minus",
        pairs.iter().map(|(l, m, d, w)| {
            let got = match (s.alpha_minus_simple(*l), s.alpha_minus_simple(*m)) {
                (Ok(a), Ok(b)) => Some(s.hom_dim(&a, &b)),
                _ => None,
            };
            (got != Some(*d)).then(|| format!("{w}: {got:?} vs {d}"))
        }),
    );
    rep.tally(
        "sectors",
        s.group().elements().map(|g| {
            let gname = s.group().name(g);
            let want = exp.sectors.get(gname).cloned().unwrap_or_default();
            let got = find_twisted_reps(s, g).map(|ms| {
                let mut objs: Vec<_> = ms.iter().map(|m| obj_to(cat, &m.underlying)).collect();
                objs.sort();
                objs
            });
            match got {
                Ok(objs) if objs == want => None,
                other => Some(format!("g={gname}: {other:?} vs {want:?}")),
            }
        }),
    );
    rep
}
