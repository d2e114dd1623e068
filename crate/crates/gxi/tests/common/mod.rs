#![allow(dead_code)]

use gxi::fusion::{FusionRing, SkeletalCategory};
use gxi::gcrossed::{FiniteGroup, GCrossed};
use gxi::kernel::{Field, Mat, Scalar};

pub fn s(n: i64) -> Scalar {
    Scalar::integer(n)
}

pub fn z16(k: i64) -> Scalar {
    Scalar::root_of_unity(16, k)
}

/// Ising written out by hand, independent of the catalog files.
pub fn ising_cat() -> SkeletalCategory<Scalar> {
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
    let h = r2.inv().unwrap();
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

pub fn ising_r(a: usize, b: usize, c: usize) -> Option<Mat<Scalar>> {
    let v = match (a, b, c) {
        (2, 2, 0) => z16(15),
        (2, 2, 1) => z16(3),
        (1, 2, 2) | (2, 1, 2) => z16(12),
        (1, 1, 0) => s(-1),
        _ => return None,
    };
    Some(Mat::scalar(v))
}

/// Ising graded by Z2 (sigma odd) with trivial action.
pub fn ising_crossed() -> GCrossed<Scalar> {
    GCrossed::new(
        ising_cat(),
        FiniteGroup::cyclic(2),
        vec![0, 0, 1],
        vec![vec![0, 1, 2], vec![0, 1, 2]],
        |_, _, _, _| None,
        ising_r,
    )
    .unwrap()
}

/// Toric code: labels 1, e, m, f = (0,0), (1,0), (0,1), (1,1).
pub fn toric_cat() -> SkeletalCategory<Scalar> {
    let ring = FusionRing::new(
        vec!["1".into(), "e".into(), "m".into(), "f".into()],
        0,
        vec![0, 1, 2, 3],
        |a, b, c| u32::from(a ^ b == c),
    )
    .unwrap();
    SkeletalCategory::new(ring, |_, _, _, _| None, vec![s(1); 4]).unwrap()
}

pub fn toric_r(a: usize, b: usize, c: usize) -> Option<Mat<Scalar>> {
    if a ^ b != c {
        return None;
    }
    // (-1)^{a2 b1} with a = a1 + 2 a2
    let (a2, b1) = (a >> 1, b & 1);
    Some(Mat::scalar(s(if a2 & b1 == 1 { -1 } else { 1 })))
}

pub fn toric() -> GCrossed<Scalar> {
    GCrossed::braided(toric_cat(), toric_r).unwrap()
}

/// Toric code with the e↔m swap; vertex phases (-1)^{a1 b2} μ(a)μ(b)/μ(a+b), μ = (1,1,1,i).
pub fn toric_em() -> GCrossed<Scalar> {
    let mu = |a: usize| if a == 3 { Scalar::root_of_unity(4, 1) } else { s(1) };
    GCrossed::new(
        toric_cat(),
        FiniteGroup::cyclic(2),
        vec![0; 4],
        vec![vec![0, 1, 2, 3], vec![0, 2, 1, 3]],
        |g, a, b, c| {
            if g == 0 || a ^ b != c {
                return None;
            }
            let sign = if (a & 1) * (b >> 1) == 1 { s(-1) } else { s(1) };
            Some(Mat::scalar(sign * &mu(a) * &mu(b) * &mu(c).inv().unwrap()))
        },
        toric_r,
    )
    .unwrap()
}
