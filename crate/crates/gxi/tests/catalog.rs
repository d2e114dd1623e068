//! Catalog files against hand-written fixtures.
//!
//! Run with `GXI_REGENERATE=1` to rewrite `src/catalog/data` from the fixtures.

mod common;

use std::collections::BTreeMap;
use std::path::PathBuf;

use common::*;
use gxi::catalog;
use gxi::fusion::{FusionRing, SkeletalCategory};
use gxi::gcrossed::{FiniteGroup, GCrossed};
use gxi::induction::{find_twisted_reps, InductionSetting};
use gxi::io::{self, obj_to, ExpectedRepr, Instance};
use gxi::kernel::{Mat, Scalar};
use gxi::qsystem::*;

fn r2() -> Scalar {
    Scalar::sqrt_of_int(2).unwrap()
}

fn trivial_setting(gx: &GCrossed<Scalar>, group: FiniteGroup, proj: Vec<usize>) -> InductionSetting<Scalar> {
    let q = trivial_qsystem(gx);
    let z = EquivariantStructure {
        z: vec![gx.cat().id_obj(&q.theta); group.order()],
        group,
        proj,
    };
    InductionSetting::new("trivial", gx.clone(), q, z).unwrap()
}

fn z2_fusion() -> SkeletalCategory<Scalar> {
    let ring = FusionRing::new(vec!["1".into(), "j".into()], 0, vec![0, 1], |a, b, c| u32::from(a ^ b == c)).unwrap();
    SkeletalCategory::new(ring, |_, _, _, _| None, vec![s(1); 2]).unwrap()
}

fn klein() -> FiniteGroup {
    let names = ["e", "g", "h", "gh"].map(String::from).to_vec();
    FiniteGroup::new(names, (0..4).map(|i| (0..4).map(|j| i ^ j).collect()).collect()).unwrap()
}

/// `⟨θλ, μ⟩` straight from the fusion multiplicities.
fn pairing_table(s: &InductionSetting<Scalar>) -> Vec<(String, String, u32)> {
    let cat = s.gx.cat();
    let r = cat.rank();
    let mut out = Vec::new();
    for l in 0..r {
        for m in 0..r {
            if s.gx.grade(l) != s.gx.grade(m) {
                continue;
            }
            let d: usize = (0..r).map(|a| s.q.theta.mult(a) as usize * cat.n(a, l, m)).sum();
            out.push((cat.ring().name(l).into(), cat.ring().name(m).into(), d as u32));
        }
    }
    out
}

fn sectors(s: &InductionSetting<Scalar>) -> BTreeMap<String, Vec<BTreeMap<String, u32>>> {
    s.group()
        .elements()
        .map(|g| {
            let mut objs: Vec<_> = find_twisted_reps(s, g)
                .unwrap()
                .iter()
                .map(|m| obj_to(s.gx.cat(), &m.underlying))
                .collect();
            objs.sort();
            (s.group().name(g).to_string(), objs)
        })
        .collect()
}

fn with_expected(mut inst: Instance, notes: &[(&str, &str)]) -> Instance {
    for s in &inst.settings {
        let note = notes.iter().find(|(n, _)| *n == s.name).map_or("", |(_, t)| t);
        inst.expected.insert(
            s.name.clone(),
            ExpectedRepr {
                note: note.to_string(),
                hom_dims: pairing_table(s),
                sectors: sectors(s),
            },
        );
    }
    inst
}

fn trivial_entry() -> Instance {
    let ring = FusionRing::new(vec!["1".into()], 0, vec![0], |_, _, _| 1).unwrap();
    let cat = SkeletalCategory::new(ring, |_, _, _, _| None, vec![s(1)]).unwrap();
    let gx = GCrossed::braided(cat, |_, _, _| None).unwrap();
    let st = trivial_setting(&gx, FiniteGroup::trivial(), vec![0]);
    let inst = io::instance("trivial", "Vec: one simple object, everything trivial.", gx, vec![st]);
    with_expected(inst, &[("trivial", "induction is the identity")])
}

fn vec_z2_entry() -> Instance {
    let gx = GCrossed::braided(z2_fusion(), |_, _, _| None).unwrap();
    let q = group_qsystem(&gx, &[0, 1], None, r2()).unwrap();
    let z = EquivariantStructure::trivial(&gx, &q, FiniteGroup::trivial());
    let group = InductionSetting::new("group", gx.clone(), q, z).unwrap();
    let triv = trivial_setting(&gx, FiniteGroup::trivial(), vec![0]);
    let inst = io::instance(
        "vec_z2",
        "Z2-graded vector spaces with the symmetric (bosonic) braiding.",
        gx,
        vec![group, triv],
    );
    with_expected(
        inst,
        &[("group", "theta = 1+j is the regular algebra; both simples induce to the same free module")],
    )
}

fn toric_entry() -> Instance {
    let gx = toric();
    let q = group_qsystem(&gx, &[0, 1], None, r2()).unwrap();
    let z = EquivariantStructure {
        group: FiniteGroup::cyclic(2),
        proj: vec![0, 0],
        z: vec![
            gx.cat().id_obj(&q.theta),
            diagonal_z(&gx, &q.theta, 0, &[s(1), s(-1), s(0), s(0)]),
        ],
    };
    let cond = InductionSetting::new("condensed", gx.clone(), q, z).unwrap();
    let triv = trivial_setting(&gx, FiniteGroup::trivial(), vec![0]);
    let inst = io::instance(
        "toric_z2",
        "Toric code with the boson e condensed; Z2 acts on the extension through z_g = (1, -1).",
        gx,
        vec![cond, triv],
    );
    with_expected(
        inst,
        &[(
            "condensed",
            "untwisted: the vacuum only; g-twisted: one defect whose underlying object is m+f = theta.m",
        )],
    )
}

fn ising_entry() -> Instance {
    let gx = ising_crossed();
    let st = trivial_setting(&gx, FiniteGroup::cyclic(2), vec![0, 1]);
    let inst = io::instance(
        "ising_crossed",
        "Ising as a Z2-crossed category: sigma is the defect, psi is untwisted, the action is trivial.",
        gx,
        vec![st],
    );
    with_expected(inst, &[("trivial", "trivial theta: twisted modules are the simples of each degree")])
}

fn toric_em_entry() -> Instance {
    let gx = toric_em();
    let st = trivial_setting(&gx, FiniteGroup::cyclic(2), vec![0, 1]);
    let inst = io::instance(
        "toric_em",
        "Toric code with the e-m swap as a Z2 action of trivial degree.",
        gx,
        vec![st],
    );
    with_expected(inst, &[])
}

fn large_entry() -> Instance {
    let gx = ising_crossed().product(&toric()).unwrap();
    let e = gx.cat().ring().index("1:e").unwrap();
    let q = group_qsystem(&gx, &[0, e], None, r2()).unwrap();
    let flip = diagonal_z(
        &gx,
        &q.theta,
        0,
        &(0..gx.rank()).map(|a| if a == e { s(-1) } else { s(1) }).collect::<Vec<_>>(),
    );
    let id = gx.cat().id_obj(&q.theta);
    let z = EquivariantStructure {
        group: klein(),
        proj: vec![0, 1, 0, 1],
        z: vec![id.clone(), id, flip.clone(), flip],
    };
    let st = InductionSetting::new("condensed", gx.clone(), q, z).unwrap();
    let inst = io::instance(
        "ising_toric",
        "Ising x toric code, graded by the Ising Z2, with 1:e condensed and a Klein group lifting the grading.",
        gx,
        vec![st],
    );
    with_expected(inst, &[])
}

fn probes() -> Vec<Instance> {
    let mut out = Vec::new();
    let cat = ising_cat().with_f_block(1, 2, 1, 2, Mat::scalar(s(1)));
    let gx = GCrossed::new(
        cat,
        FiniteGroup::cyclic(2),
        vec![0, 0, 1],
        vec![vec![0, 1, 2]; 2],
        |_, _, _, _| None,
        ising_r,
    )
    .unwrap();
    out.push(io::instance("ising_f_flip", "Ising with F(psi,sigma,psi;sigma) = +1.", gx, vec![]));

    let gx = ising_crossed().with_r_block(2, 2, 0, Mat::scalar(z16(1)));
    out.push(io::instance(
        "ising_r_phase",
        "Ising with the phase of R(sigma,sigma;1) conjugated.",
        gx,
        vec![],
    ));

    let gx = toric();
    let q = group_qsystem(&gx, &[0, 1], None, r2()).unwrap();
    let z = EquivariantStructure {
        group: FiniteGroup::cyclic(2),
        proj: vec![0, 0],
        z: vec![
            gx.cat().id_obj(&q.theta),
            diagonal_z(&gx, &q.theta, 0, &[s(1), Scalar::root_of_unity(4, 1), s(0), s(0)]),
        ],
    };
    let st = InductionSetting::new("condensed", gx.clone(), q, z).unwrap();
    out.push(io::instance("toric_z_i", "Toric code with z_g = (1, i).", gx, vec![st]));

    let gx = ising_crossed();
    let q = group_qsystem(&gx, &[0, 1], None, r2()).unwrap();
    let z = EquivariantStructure {
        z: vec![gx.cat().id_obj(&q.theta); 2],
        group: FiniteGroup::cyclic(2),
        proj: vec![0, 1],
    };
    let st = InductionSetting::new("fermion", gx.clone(), q, z).unwrap();
    out.push(io::instance("ising_psi", "Ising with theta = 1+psi, a non-commutative Q-system.", gx, vec![st]));
    out
}

fn data_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("src/catalog/data")
}

#[test]
fn catalog_files_match_fixtures() {
    let regen = std::env::var_os("GXI_REGENERATE").is_some();
    let entries = [
        trivial_entry(),
        vec_z2_entry(),
        toric_entry(),
        ising_entry(),
        toric_em_entry(),
        large_entry(),
    ];
    for inst in entries.iter().chain(probes().iter()) {
        let path = data_dir().join(format!("{}.json", inst.name));
        let text = inst.export();
        if regen {
            std::fs::create_dir_all(data_dir()).unwrap();
            std::fs::write(&path, &text).unwrap();
        } else {
            assert_eq!(catalog::source(&inst.name).unwrap(), text, "{} drifted from its fixture", inst.name);
        }
    }
}

#[test]
fn entries_load_validate_and_round_trip() {
    for name in catalog::list_entries().into_iter().chain(catalog::list_large()) {
        let e = catalog::get_entry(name).unwrap();
        assert_eq!(e.instance.export(), catalog::source(name).unwrap(), "{name}");
        let rep = catalog::check_expected(&e.instance);
        assert!(rep.passed(), "{name}: {:?}", rep.first_failure());
        assert!(rep.checks.iter().all(|c| c.instances > 0 || c.id.ends_with("labels")), "{name}: {rep:?}");
    }
}

#[test]
fn spec_examples() {
    let v = catalog::get_entry("vec_z2").unwrap().instance;
    assert_eq!(v.gx.rank(), 2);
    assert_eq!(v.gx.group().order(), 1);
    let r = v.gx.cat().rank();
    for a in 0..r {
        for b in 0..r {
            assert_eq!(v.gx.braid_simple(a, b), v.gx.braid_op_simple(a, b));
        }
    }
    let t = catalog::get_entry("toric_z2").unwrap().instance;
    let st = t.setting(Some("condensed")).unwrap();
    assert_eq!(t.gx.rank(), 4);
    assert_eq!(st.group().order(), 2);
    assert_eq!(st.q.theta.mults(), &[1, 1, 0, 0]);
    assert_eq!(st.z.z[1].blocks[1][(0, 0)], s(-1));
    let i = catalog::get_entry("ising_crossed").unwrap().instance;
    assert_eq!(i.gx.grading(), &[0, 0, 1]);
    assert_eq!(i.gx.group().order(), 2);
    assert_eq!(i.settings[0].q.theta.mults(), &[1, 0, 0]);
    assert!(matches!(catalog::get_entry("nope"), Err(catalog::CatalogError::Unknown(_))));
}

#[test]
fn probes_are_rejected_with_witnesses() {
    let expect = [
        ("ising_f_flip", "fusion"),
        ("ising_r_phase", "gcrossed"),
        ("toric_z_i", "setting:condensed"),
        ("ising_psi", "setting:fermion"),
    ];
    for (name, suite) in expect {
        assert!(catalog::is_probe(name));
        match io::load_str(catalog::source(name).unwrap(), true) {
            Err(io::LoadError::Axiom { suite: got, witness, check, .. }) => {
                assert_eq!(got, suite, "{name}: {check}");
                assert!(!witness.is_empty(), "{name}");
            }
            other => panic!("{name}: {other:?}"),
        }
    }
    let psi = catalog::get_entry("ising_psi").unwrap().instance;
    let rep = psi.settings[0].validate();
    let failing: Vec<_> = rep.checks.iter().filter(|c| c.status == gxi::Status::Fail).map(|c| c.id.as_str()).collect();
    assert_eq!(failing, ["qsystem.commutative", "qsystem.commutative_opposite"]);
    let zi = catalog::get_entry("toric_z_i").unwrap().instance;
    let rep = zi.settings[0].validate();
    assert_eq!(rep.status_of("equivariant.cocycle"), Some(gxi::Status::Fail));
}

fn run_all(name: &str) {
    use gxi::induction::{run_suite, Suite};
    let inst = catalog::get_entry(name).unwrap().instance;
    for st in &inst.settings {
        for suite in Suite::ALL {
            let rep = run_suite(st, suite);
            assert!(rep.passed(), "{name}/{} {}: {:?}", st.name, suite.name(), rep.first_failure());
        }
    }
}

#[test]
fn suites_pass_on_every_entry() {
    for name in catalog::list_entries() {
        run_all(name);
    }
}

#[test]
fn suites_pass_on_large_entry() {
    run_all("ising_toric");
}
