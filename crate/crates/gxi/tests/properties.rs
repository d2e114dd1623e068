//! Randomised invariants.

use gxi::catalog;
use gxi::fusion::Obj;
use gxi::gcrossed::FiniteGroup;
use gxi::induction::InductionSetting;
use gxi::io::{to_canonical_string, ScalarRepr};
use gxi::kernel::{Approx, Field, FromScalar, Mat, Scalar};
use proptest::prelude::*;
use serde_json::Value;

/// Divisors of 24, so mixed arithmetic stays in a degree-8 field.
const CONDUCTORS: [u32; 6] = [1, 3, 4, 6, 8, 24];

/// Small integer combinations of roots of unity.
fn scalar() -> impl Strategy<Value = Scalar> {
    (
        prop::sample::select(CONDUCTORS.to_vec()),
        prop::collection::vec((-3i64..=3, 0i64..24, 1i64..=3), 1..4),
    )
        .prop_map(|(n, terms)| {
            terms.into_iter().fold(Scalar::integer(0), |acc, (c, k, d)| {
                acc + Scalar::root_of_unity(n, k) * Scalar::frac(c, d)
            })
        })
}

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = Mat<Scalar>> {
    prop::collection::vec(scalar(), rows * cols).prop_map(move |d| Mat::from_vec(rows, cols, d))
}

fn close(a: num_complex::Complex64, b: num_complex::Complex64) -> bool {
    (a - b).norm() < 1e-9 * (1.0 + a.norm() + b.norm())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn scalar_ring_laws(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert!((a.clone() + b.clone()).eq_field(&(b.clone() + a.clone())));
        prop_assert!((a.clone() * b.clone()).eq_field(&(b.clone() * a.clone())));
        prop_assert!(((a.clone() * b.clone()) * c.clone()).eq_field(&(a.clone() * (b.clone() * c.clone()))));
        prop_assert!((a.clone() * (b.clone() + c.clone())).eq_field(&(a.clone() * b.clone() + a.clone() * c.clone())));
        prop_assert!((a.clone() - a.clone()).is_zero());
    }

    #[test]
    fn scalar_inverse_and_conjugate(a in scalar(), b in scalar()) {
        if !a.is_zero() {
            let inv = a.inv().unwrap();
            prop_assert!((a.clone() * inv).is_one());
        }
        prop_assert!(a.conj().conj().eq_field(&a));
        prop_assert!((a.clone() * b.clone()).conj().eq_field(&(a.conj() * b.conj())));
        prop_assert!(close((a.clone() * b.clone()).to_c64(), a.to_c64() * b.to_c64()));
        prop_assert!(close((a.clone() + b.clone()).to_c64(), a.to_c64() + b.to_c64()));
    }

    #[test]
    fn reduced_conductor_is_same_number(a in scalar()) {
        let r = a.reduce_conductor();
        prop_assert!(r.conductor() <= a.conductor());
        prop_assert!(r.eq_field(&a));
    }

    #[test]
    fn scalar_file_repr_round_trips(a in scalar()) {
        let back = ScalarRepr::from_scalar(&a).to_scalar().unwrap();
        prop_assert!(back.eq_field(&a));
        let json = serde_json::to_string(&ScalarRepr::from_scalar(&a)).unwrap();
        let again: ScalarRepr = serde_json::from_str(&json).unwrap();
        prop_assert!(again.to_scalar().unwrap().eq_field(&a));
    }

    #[test]
    fn approx_tracks_exact(a in scalar(), b in scalar()) {
        let (x, y) = (Approx::from_scalar(&a, 1e-9), Approx::from_scalar(&b, 1e-9));
        prop_assert!(close((x * y).to_c64(), (a * b).to_c64()));
    }

    #[test]
    fn adjoint_reverses_products(a in matrix(2, 3), b in matrix(3, 2)) {
        let lhs = a.mul(&b).adjoint();
        let rhs = b.adjoint().mul(&a.adjoint());
        prop_assert!(lhs.approx_eq(&rhs));
        prop_assert!(a.adjoint().adjoint().approx_eq(&a));
    }

    #[test]
    fn kron_mixed_product(a in matrix(2, 2), b in matrix(1, 2), c in matrix(2, 1), d in matrix(2, 2)) {
        let lhs = a.kron(&b).mul(&c.kron(&d));
        let rhs = a.mul(&c).kron(&b.mul(&d));
        prop_assert!(lhs.approx_eq(&rhs));
    }

    #[test]
    fn rank_nullity(a in matrix(3, 4)) {
        let null = a.nullspace();
        prop_assert_eq!(a.rank() + null.cols(), 4);
        prop_assert!(a.mul(&null).is_zero());
    }

    #[test]
    fn inverse_of_invertible(a in matrix(3, 3)) {
        if let Some(inv) = a.inverse() {
            prop_assert!(a.mul(&inv).is_identity());
            prop_assert!(inv.mul(&a).is_identity());
        } else {
            prop_assert!(a.rank() < 3);
        }
    }

    #[test]
    fn product_groups_satisfy_axioms(m in 1usize..5, n in 1usize..5) {
        let g = FiniteGroup::cyclic(m).product(&FiniteGroup::cyclic(n)).unwrap();
        prop_assert_eq!(g.order(), m * n);
        prop_assert!(g.check_axioms().is_ok());
        for a in g.elements() {
            prop_assert_eq!(g.mul(a, g.inv(a)), g.identity());
        }
    }
}

fn json_value() -> impl Strategy<Value = Value> {
    let leaf = prop_oneof![
        Just(Value::Null),
        any::<bool>().prop_map(Value::Bool),
        any::<i64>().prop_map(Value::from),
        "[a-z\\\\\"ψσ ]{0,6}".prop_map(Value::String),
    ];
    leaf.prop_recursive(3, 24, 6, |inner| {
        prop_oneof![
            prop::collection::vec(inner.clone(), 0..6).prop_map(Value::Array),
            prop::collection::btree_map("[a-zA-Z_]{1,4}", inner, 0..5)
                .prop_map(|m| Value::Object(m.into_iter().collect())),
        ]
    })
}

proptest! {
    #[test]
    fn canonical_json_round_trips(v in json_value()) {
        let text = to_canonical_string(&v);
        let back: Value = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(&back, &v);
        prop_assert_eq!(to_canonical_string(&back), text);
    }
}

fn core_settings() -> Vec<InductionSetting<Scalar>> {
    ["vec_z2", "toric_z2", "ising_crossed", "toric_em"]
        .into_iter()
        .flat_map(|n| catalog::get_entry(n).unwrap().instance.settings)
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// Hom dimensions are bilinear in the objects being induced.
    #[test]
    fn minus_hom_dims_are_bilinear(pick in 0usize..16, xs in prop::collection::vec(0u32..=2, 8), ys in prop::collection::vec(0u32..=2, 8)) {
        let settings = core_settings();
        let s = &settings[pick % settings.len()];
        let cat = s.gx.cat();
        let r = cat.rank();
        let deg = s.gx.grade(pick % r);
        let restrict = |v: &[u32]| -> Vec<u32> {
            (0..r).map(|a| if s.gx.grade(a) == deg { v[a % v.len()] } else { 0 }).collect()
        };
        let (x, y) = (restrict(&xs), restrict(&ys));
        prop_assume!(x.iter().any(|&k| k > 0) && y.iter().any(|&k| k > 0));
        let pairing = |l: usize, m: usize| -> usize {
            (0..r).map(|a| s.q.theta.mult(a) as usize * cat.n(a, l, m)).sum()
        };
        let want: usize = (0..r)
            .flat_map(|l| (0..r).map(move |m| (l, m)))
            .map(|(l, m)| (x[l] * y[m]) as usize * pairing(l, m))
            .sum();
        let ax = s.alpha_minus(&[Obj::from_mult(x)]).unwrap();
        let ay = s.alpha_minus(&[Obj::from_mult(y)]).unwrap();
        prop_assert_eq!(s.hom_dim(&ax, &ay), want);
        prop_assert_eq!(s.hom_dim(&ay, &ax), want);
    }
}
