mod common;

use common::*;
use gxi::fusion::Obj;
use gxi::gcrossed::{FiniteGroup, GCrossed};
use gxi::induction::*;
use gxi::kernel::{Mat, Scalar};
use gxi::qsystem::*;
use gxi::Status;

fn r2() -> Scalar {
    Scalar::sqrt_of_int(2).unwrap()
}

fn condensed(phase: Scalar) -> InductionSetting<Scalar> {
    let gx = toric();
    let q = group_qsystem(&gx, &[0, 1], None, r2()).unwrap();
    let z = EquivariantStructure {
        group: FiniteGroup::cyclic(2),
        proj: vec![0, 0],
        z: vec![
            gx.cat().id_obj(&q.theta),
            diagonal_z(&gx, &q.theta, 0, &[s(1), phase, s(0), s(0)]),
        ],
    };
    InductionSetting::new("toric", gx, q, z).unwrap()
}

fn ising_setting() -> InductionSetting<Scalar> {
    let gx = ising_crossed();
    let q = trivial_qsystem(&gx);
    let z = EquivariantStructure {
        group: FiniteGroup::cyclic(2),
        proj: vec![0, 1],
        z: vec![gx.cat().id_obj(&q.theta); 2],
    };
    InductionSetting::new("ising", gx, q, z).unwrap()
}

fn obj(gx: &GCrossed<Scalar>, labels: &[usize]) -> Obj {
    let mut m = vec![0; gx.rank()];
    for &a in labels {
        m[a] += 1;
    }
    Obj::from_mult(m)
}

const M: usize = 2;
const F: usize = 3;

#[test]
fn toric_half_braiding_signs() {
    let st = condensed(s(-1));
    // the e-summand of θ⊗m lands in the f channel
    let untwisted = st.alpha_plus_simple(0, M).unwrap();
    assert_eq!(untwisted.half_braiding.blocks[F][(0, 0)], s(-1));
    assert_eq!(untwisted.half_braiding.blocks[M][(0, 0)], s(1));
    let twisted = st.alpha_plus_simple(1, M).unwrap();
    assert_eq!(twisted.half_braiding.blocks[F][(0, 0)], s(1));
    let minus = st.alpha_minus_simple(M).unwrap();
    assert_eq!(minus.half_braiding.blocks[F][(0, 0)], s(1));
}

#[test]
fn trivial_theta_half_braiding_is_identity() {
    let st = ising_setting();
    for a in 0..3 {
        let g = st.gx.grade(a);
        let e = st.alpha_plus_simple(g, a).unwrap();
        assert!(e.half_braiding.blocks.iter().all(|b| b.is_identity()));
    }
}

#[test]
fn grading_mismatch_is_rejected() {
    let st = ising_setting();
    assert!(matches!(
        st.alpha_plus_simple(0, 2),
        Err(InductionError::GradingMismatch { .. })
    ));
}

#[test]
fn non_cocycle_z_breaks_half_braiding() {
    let st = condensed(Scalar::root_of_unity(4, 1));
    assert!(matches!(st.alpha_plus_simple(1, M), Err(InductionError::HalfBraiding(_))));
}

#[test]
fn hom_dimensions_match_fusion() {
    let st = condensed(s(-1));
    let cat = st.gx.cat();
    assert_eq!(st.hom_dim_formula(&cat.simple(M), &cat.simple(M)).unwrap(), 1);
    assert_eq!(st.hom_dim_formula(&cat.simple(M), &cat.simple(F)).unwrap(), 1);
    assert_eq!(st.hom_dim_formula(&cat.simple(0), &cat.simple(1)).unwrap(), 1);
    for g in 0..2 {
        for l in 0..4 {
            for m in 0..4 {
                let a = st.alpha_plus_simple(g, l).unwrap();
                let b = st.alpha_plus_simple(g, m).unwrap();
                let want = st.hom_dim_formula(&cat.simple(l), &cat.simple(m)).unwrap();
                assert_eq!(st.hom_dim(&a, &b), want, "g={g} l={l} m={m}");
            }
        }
    }
    let plus = st.alpha_plus_simple(0, M).unwrap();
    let minus = st.alpha_minus_simple(M).unwrap();
    assert_eq!(st.hom_dim(&plus, &minus), 0);
    let twisted = st.alpha_plus_simple(1, M).unwrap();
    assert_eq!(st.hom_dim(&twisted, &minus), 1);
    assert!(st.hom_space_solver(&plus, &plus).iter().all(|b| st.is_intertwiner(&plus, &plus, b)));
}

#[test]
fn toric_inventory() {
    let st = condensed(s(-1));
    let vac = find_twisted_reps(&st, 0).unwrap();
    assert_eq!(vac.len(), 1);
    assert_eq!(sigma_restrict(&st, &vac[0]).unwrap(), st.q.theta);
    let defects = find_twisted_reps(&st, 1).unwrap();
    assert_eq!(defects.len(), 1);
    let d = &defects[0];
    assert_eq!(d.underlying, obj(&st.gx, &[M, F]));
    assert_eq!(free_generator(&st, &d.underlying), Some(M));
    assert_eq!(d.plus.len(), 2);
    assert_eq!(d.minus.len(), 2);
}

#[test]
fn ising_inventory() {
    let st = ising_setting();
    let e = find_twisted_reps(&st, 0).unwrap();
    assert_eq!(e.len(), 2);
    let g = find_twisted_reps(&st, 1).unwrap();
    assert_eq!(g.len(), 1);
    assert_eq!(g[0].underlying, obj(&st.gx, &[2]));
}

#[test]
fn reciprocity_counts() {
    let st = condensed(s(-1));
    let d = &find_twisted_reps(&st, 1).unwrap()[0];
    for l in [M, F] {
        let rep = check_reciprocity(&st, l, d);
        assert!(rep.passed(), "{rep:?}");
        assert_eq!(rep.get("plus.dimension").unwrap().status, Status::Pass);
    }
    assert!(check_embedding(&st, d).passed());
}

#[test]
fn defect_self_braiding_is_partial_isometry() {
    let st = condensed(s(-1));
    let d = &find_twisted_reps(&st, 1).unwrap()[0];
    let op = relative_braiding(&st, &d.plus[0], &d.minus[0]).unwrap();
    let back = op.adjoint().compose(&op);
    assert!(back.compose(&back).approx_eq(&back));
    // β∘δ is again a free module of rank one over θ = 1⊕e
    assert_eq!(op.rank(), 2);
}

#[test]
fn suites_pass_on_toric() {
    let st = condensed(s(-1));
    for suite in Suite::ALL {
        let rep = run_suite(&st, suite);
        assert!(rep.passed(), "{}: {:?}", suite.name(), rep.first_failure());
    }
}

#[test]
fn suites_pass_on_ising() {
    let st = ising_setting();
    for suite in Suite::ALL {
        let rep = run_suite(&st, suite);
        assert!(rep.passed(), "{}: {:?}", suite.name(), rep.first_failure());
    }
    let rb = run_suite(&st, Suite::RelativeBraiding);
    assert_eq!(rb.status_of("equals_braiding_for_trivial_theta"), Some(Status::Pass));
    assert_eq!(rb.status_of("agrees_with_extension_braiding"), Some(Status::NotCheckable));
}

#[test]
#[ignore]
fn dump_reports() {
    for st in [condensed(s(-1)), ising_setting()] {
        for suite in Suite::ALL {
            let rep = run_suite(&st, suite);
            for c in &rep.checks {
                println!("{} {} {} {:?} {:?} {:?}", st.name, rep.suite, c.id, c.status, c.instances, c.note);
            }
        }
    }
}

fn failing(st: &InductionSetting<Scalar>) -> Vec<String> {
    let mut out = Vec::new();
    for suite in Suite::ALL {
        let rep = run_suite(st, suite);
        for c in rep.checks.iter().filter(|c| c.status == Status::Fail) {
            assert!(c.witness.is_some());
            out.push(format!("{}:{}", rep.suite, c.id));
        }
    }
    out
}

#[test]
fn ising_phase_flip_breaks_braid_relations() {
    let gx = ising_crossed().with_r_block(2, 2, 0, Mat::scalar(z16(1)));
    let q = trivial_qsystem(&gx);
    let z = EquivariantStructure {
        group: FiniteGroup::cyclic(2),
        proj: vec![0, 1],
        z: vec![gx.cat().id_obj(&q.theta); 2],
    };
    let st = InductionSetting::new("ising_flip", gx, q, z).unwrap();
    assert_eq!(
        failing(&st),
        ["relative-braiding:braid_relation_1", "relative-braiding:braid_relation_2"]
    );
}

#[test]
fn toric_braiding_flip_is_detected() {
    // c(m, e) sign flipped on the f channel
    let gx = toric().with_r_block(M, 1, F, Mat::scalar(s(1)));
    let q = group_qsystem(&gx, &[0, 1], None, r2()).unwrap();
    let z = EquivariantStructure {
        group: FiniteGroup::cyclic(2),
        proj: vec![0, 0],
        z: vec![
            gx.cat().id_obj(&q.theta),
            diagonal_z(&gx, &q.theta, 0, &[s(1), s(-1), s(0), s(0)]),
        ],
    };
    let st = InductionSetting::new("toric_flip", gx, q, z).unwrap();
    let bad = failing(&st);
    for id in [
        "multiplicativity:plus",
        "intertwiners:central_plus",
        "reciprocity:plus.dimension",
        "relative-braiding:exchange_plus",
        "relative-braiding:presentation_independence",
    ] {
        assert!(bad.iter().any(|b| b == id), "{id} missing from {bad:?}");
    }
}

#[test]
fn fermionic_theta_fails_dimension_counts() {
    let gx = toric();
    let q = group_qsystem(&gx, &[0, F], None, r2()).unwrap();
    let z = EquivariantStructure::trivial(&gx, &q, FiniteGroup::trivial());
    let st = InductionSetting::new("fermion", gx, q, z).unwrap();
    let bad = failing(&st);
    assert!(bad.iter().any(|b| b == "intertwiners:central_plus"));
    assert!(bad.iter().any(|b| b == "reciprocity:minus.dimension"));
}
