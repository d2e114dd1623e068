use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_complex::Complex64;

use super::field::Field;

/// Double-precision complex number with a zero tolerance.
///
/// Constants built from integers carry tolerance 0; values converted from
/// exact data carry the user tolerance, and arithmetic keeps the larger one.
#[derive(Clone, Copy, Debug)]
pub struct Approx {
    pub z: Complex64,
    pub tol: f64,
}

impl Approx {
    pub fn new(z: Complex64, tol: f64) -> Self {
        Approx { z, tol }
    }
}

impl PartialEq for Approx {
    fn eq(&self, other: &Self) -> bool {
        (*self - *other).is_zero()
    }
}

impl Add for Approx {
    type Output = Approx;
    fn add(self, rhs: Approx) -> Approx {
        Approx::new(self.z + rhs.z, self.tol.max(rhs.tol))
    }
}

impl Sub for Approx {
    type Output = Approx;
    fn sub(self, rhs: Approx) -> Approx {
        Approx::new(self.z - rhs.z, self.tol.max(rhs.tol))
    }
}

impl Mul for Approx {
    type Output = Approx;
    fn mul(self, rhs: Approx) -> Approx {
        Approx::new(self.z * rhs.z, self.tol.max(rhs.tol))
    }
}

impl<'a> Mul<&'a Approx> for Approx {
    type Output = Approx;
    fn mul(self, rhs: &'a Approx) -> Approx {
        self * *rhs
    }
}

impl Neg for Approx {
    type Output = Approx;
    fn neg(self) -> Approx {
        Approx::new(-self.z, self.tol)
    }
}

impl<'a> AddAssign<&'a Approx> for Approx {
    fn add_assign(&mut self, rhs: &'a Approx) {
        *self = *self + *rhs;
    }
}

impl<'a> SubAssign<&'a Approx> for Approx {
    fn sub_assign(&mut self, rhs: &'a Approx) {
        *self = *self - *rhs;
    }
}

impl Field for Approx {
    fn zero() -> Self {
        Approx::new(Complex64::new(0.0, 0.0), 0.0)
    }
    fn one() -> Self {
        Approx::new(Complex64::new(1.0, 0.0), 0.0)
    }
    fn from_i64(n: i64) -> Self {
        Approx::new(Complex64::new(n as f64, 0.0), 0.0)
    }
    fn is_zero(&self) -> bool {
        self.z.norm() <= self.tol
    }
    fn conj(&self) -> Self {
        Approx::new(self.z.conj(), self.tol)
    }
    fn inv(&self) -> Option<Self> {
        if self.is_zero() || self.z.norm() == 0.0 {
            None
        } else {
            Some(Approx::new(self.z.inv(), self.tol))
        }
    }
    fn to_c64(&self) -> Complex64 {
        self.z
    }
    fn add_mul(&mut self, a: &Self, b: &Self) {
        self.z += a.z * b.z;
        self.tol = self.tol.max(a.tol).max(b.tol);
    }
    fn pivot_weight(&self) -> f64 {
        if self.is_zero() {
            0.0
        } else {
            self.z.norm()
        }
    }
    fn is_positive_real(&self) -> bool {
        self.z.im.abs() <= self.tol && self.z.re > self.tol
    }
    fn imag_unit() -> Option<Self> {
        Some(Approx::new(Complex64::new(0.0, 1.0), 0.0))
    }
    /// Closed forms up to degree two.
    fn roots(monic: &[Self]) -> Option<Vec<Self>> {
        let tol = monic.iter().map(|c| c.tol).fold(0.0, f64::max);
        match monic.len() {
            2 => Some(vec![-monic[0]]),
            3 => {
                let (c, b) = (monic[0].z, monic[1].z);
                let disc = (b * b - 4.0 * c).sqrt();
                let r1 = Approx::new((-b + disc) / 2.0, tol);
                let r2 = Approx::new((-b - disc) / 2.0, tol);
                (!(r1 - r2).is_zero()).then(|| vec![r1, r2])
            }
            _ => None,
        }
    }
}
