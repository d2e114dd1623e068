mod common;

use common::*;
use gxi::gcrossed::GCrossed;
use gxi::kernel::Mat;

#[test]
fn ising_crossed_axioms_pass() {
    let gx = ising_crossed();
    let rep = gx.check_crossed_axioms();
    assert!(rep.passed(), "{rep:#?}");
}

#[test]
fn toric_axioms_pass() {
    let rep = toric().check_crossed_axioms();
    assert!(rep.passed(), "{rep:#?}");
}

#[test]
fn toric_monodromy_em() {
    let gx = toric();
    let mono = gx.braid_simple(2, 1).compose(&gx.braid_simple(1, 2));
    // e ⊗ m = f, single channel
    assert_eq!(mono.blocks[3][(0, 0)], s(-1));
    assert_eq!(gx.muger_center(), vec![0]);
}

#[test]
fn ising_sign_flip_breaks_axioms() {
    for (a, b, c) in [(2, 2, 0), (2, 2, 1), (1, 2, 2), (2, 1, 2), (1, 1, 0)] {
        let m = ising_r(a, b, c).unwrap();
        let rep = ising_crossed().with_r_block(a, b, c, m.scale(&s(-1))).check_crossed_axioms();
        let c = rep.first_failure().expect("negated R entry must be detected");
        assert!(c.witness.is_some());
    }
}

#[test]
fn ising_phase_flip_breaks_yang_baxter() {
    // e^{-iπ/8} -> e^{+iπ/8} on R^{σσ}_1
    let gx = ising_crossed().with_r_block(2, 2, 0, Mat::scalar(z16(1)));
    let rep = gx.check_crossed_axioms();
    let ybe = rep.get("yang_baxter").unwrap();
    assert_eq!(ybe.status, gxi::Status::Fail);
    assert!(ybe.witness.as_deref().unwrap().contains("sigma"));
}

#[test]
fn vec_z2_symmetric() {
    let cat = gxi::fusion::SkeletalCategory::new(
        gxi::fusion::FusionRing::new(vec!["1".into(), "j".into()], 0, vec![0, 1], |a, b, c| u32::from(a ^ b == c)).unwrap(),
        |_, _, _, _| None,
        vec![s(1), s(1)],
    )
    .unwrap();
    let gx = GCrossed::braided(cat, |_, _, _| None).unwrap();
    assert!(gx.check_crossed_axioms().passed());
    for a in 0..2 {
        for b in 0..2 {
            assert!(gx.braid_op_simple(a, b).approx_eq(&gx.braid_simple(a, b)));
        }
    }
    assert_eq!(gx.muger_center(), vec![0, 1]);
}

#[test]
fn toric_em_swap_axioms_pass() {
    let gx = toric_em();
    let rep = gx.check_crossed_axioms();
    assert!(rep.passed(), "{rep:#?}");
    let ide = gx.cat().id_obj(&gx.cat().simple(1));
    let moved = gx.act(1, &ide);
    assert!(moved.approx_eq(&gx.cat().id_obj(&gx.cat().simple(2))));
}

#[test]
fn action_is_functorial_and_strict() {
    let gx = toric_em();
    let cat = gx.cat();
    let v = cat.vertex(1, 2, 3, 0);
    let w = cat.tensor(&cat.vertex(3, 3, 0, 0), &cat.id_obj(&cat.simple(1)));
    let f = cat.tensor(&v, &cat.id_obj(&cat.simple(2)));
    let lhs = gx.act(1, &cat.tensor(&v, &v));
    let rhs = cat.tensor(&gx.act(1, &v), &gx.act(1, &v));
    assert!(lhs.approx_eq(&rhs));
    assert!(gx.act(1, &gx.act(1, &f)).approx_eq(&f));
    assert!(gx.act(1, &w.adjoint()).approx_eq(&gx.act(1, &w).adjoint()));
}

#[test]
fn product_of_ising_and_toric_is_crossed() {
    let p = ising_crossed().product(&toric()).unwrap();
    assert_eq!(p.rank(), 12);
    assert_eq!(p.group().order(), 2);
    assert!(p.cat().ring().check_axioms().is_ok());
    let pent = p.cat().check_pentagon();
    assert!(pent.passed(), "{:?}", pent.first_failure());
    let rep = p.check_crossed_axioms();
    assert!(rep.passed(), "{:?}", rep.first_failure());
}
