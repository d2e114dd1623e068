use gxi::fusion::{FusionRing, Mor, SkeletalCategory};
use gxi::kernel::{Field, Mat, Scalar};

fn s(n: i64) -> Scalar {
    Scalar::integer(n)
}

/// Ising written out by hand, independent of the catalog files.
fn ising() -> SkeletalCategory<Scalar> {
    let ring = FusionRing::new(
        vec!["1".into(), "psi".into(), "sigma".into()],
        0,
        vec![0, 1, 2],
        |a, b, c| {
            let allowed = match (a, b) {
                (0, x) | (x, 0) => vec![x],
                (1, 1) => vec![0],
                (1, 2) | (2, 1) => vec![2],
                (2, 2) => vec![0, 1],
                _ => unreachable!(),
            };
            u32::from(allowed.contains(&c))
        },
    )
    .unwrap();
    let r2 = Scalar::sqrt_of_int(2).unwrap();
    let h = Scalar::integer(1) * &r2.inv().unwrap();
    SkeletalCategory::new(
        ring,
        |a, b, c, d| match (a, b, c, d) {
            (2, 2, 2, 2) => Some(Mat::from_rows(vec![
                vec![h.clone(), h.clone()],
                vec![h.clone(), -h.clone()],
            ])),
            (1, 2, 1, 2) | (2, 1, 2, 1) => Some(Mat::scalar(s(-1))),
            _ => None,
        },
        vec![s(1), s(1), r2.clone()],
    )
    .unwrap()
}

#[test]
fn ising_pentagon_passes() {
    let cat = ising();
    let rep = cat.check_pentagon();
    assert!(rep.passed(), "{rep:#?}");
}

#[test]
fn ising_perturbed_fails_with_witness() {
    let cat = ising().with_f_block(1, 2, 1, 2, Mat::scalar(s(1)));
    let rep = cat.check_pentagon();
    let c = rep.first_failure().expect("perturbation must fail");
    assert_eq!(c.id, "pentagon");
    assert!(c.witness.is_some());
}

#[test]
fn fuse_and_dims() {
    let cat = ising();
    let ss = cat.fuse(2, 2);
    assert_eq!(ss.mults(), &[1, 1, 0]);
    assert_eq!(cat.qdim(2).clone() * cat.qdim(2), s(2));
}

#[test]
fn standard_solutions() {
    let cat = ising();
    for a in 0..3 {
        cat.check_standard(a).unwrap();
    }
    let st = cat.standard_solution(2);
    let n = st.rbar.adjoint().compose(&st.rbar);
    assert_eq!(n.blocks[0][(0, 0)], s(2));
}

#[test]
fn f_move_round_trip() {
    let cat = ising();
    let sig = cat.simple(2);
    let w = vec![sig.clone(), sig.clone(), sig.clone()];
    // vertex trees built two ways agree after re-association
    let a = cat.tensor(&cat.vertex(2, 2, 0, 0), &cat.id_obj(&sig));
    let b = cat.tensor(&cat.id_obj(&sig), &cat.vertex(2, 2, 0, 0));
    assert_eq!(a.dst, w);
    assert_eq!(b.dst, w);
    let g = a.adjoint().compose(&b);
    // <(v⊗1), (1⊗v)> on sigma equals F^{σσσ}_σ[1,1] = 1/√2
    let h = Scalar::integer(1) * &Scalar::sqrt_of_int(2).unwrap().inv().unwrap();
    assert_eq!(g.blocks[2][(0, 0)], h);
}

#[test]
fn interchange_law() {
    let cat = ising();
    let f: Mor<Scalar> = cat.vertex(2, 2, 1, 0);
    let g = cat.vertex(2, 1, 2, 0);
    let lhs = cat.tensor(&f, &g);
    let rhs = cat.tensor(&f, &cat.id(&g.dst)).compose(&cat.tensor(&cat.id(&f.src), &g));
    assert!(lhs.approx_eq(&rhs));
}
