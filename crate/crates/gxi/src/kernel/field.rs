use std::fmt::Debug;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Coefficient domain for matrices and morphisms.
///
/// Exact implementations decide `is_zero` structurally; the approximate one
/// compares against a tolerance carried by its values.
pub trait Field:
    Clone
    + Debug
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
    + for<'a> AddAssign<&'a Self>
    + for<'a> SubAssign<&'a Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(n: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn conj(&self) -> Self;
    fn inv(&self) -> Option<Self>;
    /// Complex value under the standard embedding `ζ_n ↦ exp(2πi/n)`.
    fn to_c64(&self) -> Complex64;

    /// `self += a * b`
    fn add_mul(&mut self, a: &Self, b: &Self) {
        *self += &(a.clone() * b);
    }

    fn is_one(&self) -> bool {
        (self.clone() - Self::one()).is_zero()
    }

    fn eq_field(&self, other: &Self) -> bool {
        (self.clone() - other.clone()).is_zero()
    }

    /// Weight used to choose elimination pivots; larger is preferred.
    fn pivot_weight(&self) -> f64 {
        if self.is_zero() {
            0.0
        } else {
            self.to_c64().norm()
        }
    }

    /// True when the value is real and strictly positive.
    fn is_positive_real(&self) -> bool {
        if self.is_zero() || !self.eq_field(&self.conj()) {
            return false;
        }
        self.to_c64().re > 0.0
    }

    fn abs_sq(&self) -> Self {
        self.clone() * &self.conj()
    }

    /// `i`, when the field contains it.
    fn imag_unit() -> Option<Self> {
        None
    }

    /// Distinct roots of a monic polynomial given low degree first, or `None`
    /// when they cannot all be produced in this field.
    fn roots(_monic: &[Self]) -> Option<Vec<Self>> {
        None
    }
}

/// Distinct rational roots of a polynomial with rational coefficients (low
/// degree first). Gives up on constant terms too large to factor by trial division.
pub fn rational_roots(poly: &[BigRational]) -> Option<Vec<BigRational>> {
    use num_integer::Integer;
    let mut lcm = BigInt::one();
    for c in poly {
        lcm = lcm.lcm(c.denom());
    }
    let mut ints: Vec<BigInt> = poly.iter().map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer()).collect();
    while ints.last().is_some_and(Zero::is_zero) {
        ints.pop();
    }
    if ints.is_empty() {
        return None;
    }
    let mut roots = Vec::new();
    let lead = ints.last().cloned()?;
    let shift = ints.iter().take_while(|c| Zero::is_zero(*c)).count();
    if shift > 0 {
        roots.push(<BigRational as Zero>::zero());
        ints.drain(..shift);
    }
    let divisors = |n: &BigInt| -> Option<Vec<BigInt>> {
        let n = n.abs().to_u64()?;
        if n > 1_000_000_000_000 {
            return None;
        }
        let mut out = Vec::new();
        let mut d = 1u64;
        while d * d <= n {
            if n % d == 0 {
                out.push(BigInt::from(d));
                if d * d != n {
                    out.push(BigInt::from(n / d));
                }
            }
            d += 1;
        }
        Some(out)
    };
    let eval = |x: &BigRational| {
        ints.iter()
            .rev()
            .fold(<BigRational as Zero>::zero(), |acc, c| acc * x + BigRational::from_integer(c.clone()))
    };
    if ints.len() > 1 {
        let ps = divisors(&ints[0])?;
        let qs = divisors(&lead)?;
        for p in &ps {
            for q in &qs {
                for sign in [1, -1] {
                    let x = BigRational::new(p * sign, q.clone());
                    if !roots.contains(&x) && Zero::is_zero(&eval(&x)) {
                        roots.push(x);
                    }
                }
            }
        }
    }
    roots.sort();
    Some(roots)
}

impl Field for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn conj(&self) -> Self {
        self.clone()
    }
    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn to_c64(&self) -> Complex64 {
        Complex64::new(self.to_f64().unwrap_or(f64::NAN), 0.0)
    }
    fn add_mul(&mut self, a: &Self, b: &Self) {
        *self += a * b;
    }
    fn pivot_weight(&self) -> f64 {
        if Zero::is_zero(self) {
            0.0
        } else {
            1.0
        }
    }
    fn is_positive_real(&self) -> bool {
        self.is_positive()
    }
    fn roots(monic: &[Self]) -> Option<Vec<Self>> {
        let r = rational_roots(monic)?;
        (r.len() + 1 == monic.len()).then_some(r)
    }
}
