//! Elements of cyclotomic fields in the power basis `1, ζ, …, ζ^{φ(n)-1}`.

use std::cell::RefCell;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::rc::Rc;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};


use super::mat::Mat;
use super::KernelError;

/// Largest conductor the operator impls will lift to.
pub const DEFAULT_MAX_CONDUCTOR: u32 = 1 << 12;

/// Reduction data for one conductor.
struct Cyclo {
    phi: usize,
    /// `ζ^k` reduced modulo `Φ_n`, for `k = 0..n`.
    powers: Vec<Vec<i64>>,
}

thread_local! {
    static TABLES: RefCell<HashMap<u32, Rc<Cyclo>>> = RefCell::new(HashMap::new());
}

fn table(n: u32) -> Rc<Cyclo> {
    TABLES.with(|t| {
        if let Some(c) = t.borrow().get(&n) {
            return c.clone();
        }
        let c = Rc::new(build_table(n));
        t.borrow_mut().insert(n, c.clone());
        c
    })
}

/// Integer coefficients of the n-th cyclotomic polynomial, lowest degree first.
pub fn cyclotomic_polynomial(n: u32) -> Vec<i64> {
    // x^n - 1 divided by Φ_d for every proper divisor d.
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            num = poly_div_exact(&num, &cyclotomic_polynomial(d));
        }
    }
    num
}

fn poly_div_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let qd = rem.len() - 1 - dd;
    let mut q = vec![0i64; qd + 1];
    for k in (0..=qd).rev() {
        let c = rem[k + dd] / den[dd];
        q[k] = c;
        for (j, &dj) in den.iter().enumerate() {
            rem[k + j] -= c * dj;
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    q
}

fn build_table(n: u32) -> Cyclo {
    let phi_poly = cyclotomic_polynomial(n);
    let phi = phi_poly.len() - 1;
    let mut powers = Vec::with_capacity(n as usize);
    let mut cur = vec![0i64; phi];
    cur[0] = 1;
    for _ in 0..n {
        powers.push(cur.clone());
        // multiply by x and reduce with the monic Φ_n
        let top = cur[phi - 1];
        for i in (1..phi).rev() {
            cur[i] = cur[i - 1];
        }
        cur[0] = 0;
        if top != 0 {
            for i in 0..phi {
                cur[i] -= top * phi_poly[i];
            }
        }
    }
    Cyclo { phi, powers }
}

pub fn euler_phi(n: u32) -> usize {
    table(n).phi
}

/// An element of `Q(ζ_n)`.
#[derive(Clone)]
pub struct Scalar {
    conductor: u32,
    coeffs: Vec<BigRational>,
}

impl Scalar {
    pub fn from_coeffs(conductor: u32, coeffs: Vec<BigRational>) -> Result<Self, KernelError> {
        if conductor == 0 {
            return Err(KernelError::BadConductor(conductor));
        }
        if conductor > DEFAULT_MAX_CONDUCTOR {
            return Err(KernelError::ConductorOverflow {
                needed: conductor,
                bound: DEFAULT_MAX_CONDUCTOR,
            });
        }
        let phi = euler_phi(conductor);
        if coeffs.len() != phi {
            return Err(KernelError::CoeffLength {
                conductor,
                expected: phi,
                got: coeffs.len(),
            });
        }
        Ok(Scalar { conductor, coeffs })
    }

    pub fn rational(q: BigRational) -> Self {
        Scalar {
            conductor: 1,
            coeffs: vec![q],
        }
    }

    pub fn integer(n: i64) -> Self {
        Self::rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn frac(p: i64, q: i64) -> Self {
        Self::rational(BigRational::new(BigInt::from(p), BigInt::from(q)))
    }

    /// `ζ_n^k`
    pub fn root_of_unity(n: u32, k: i64) -> Self {
        let t = table(n);
        let e = k.rem_euclid(n as i64) as usize;
        Scalar {
            conductor: n,
            coeffs: t.powers[e].iter().map(|&c| int(c)).collect(),
        }
    }

    /// Square root of a positive integer, as a Gauss-sum expression.
    pub fn sqrt_of_int(m: u64) -> Option<Self> {
        if m == 0 {
            return Some(Self::integer(0));
        }
        let mut rest = m;
        let mut out = Self::integer(1);
        let mut p = 2u64;
        while rest > 1 {
            if p * p > rest {
                p = rest;
            }
            let mut e = 0;
            while rest.is_multiple_of(p) {
                rest /= p;
                e += 1;
            }
            if e > 0 {
                let whole = Self::integer(p.pow(e / 2) as i64);
                out = out * whole;
                if e % 2 == 1 {
                    out = out * sqrt_prime(p)?;
                }
            }
            p += 1;
        }
        Some(out)
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Re-express in `Q(ζ_m)`; `m` must be a multiple of the conductor.
    pub fn lift(&self, m: u32) -> Result<Self, KernelError> {
        if m == self.conductor {
            return Ok(self.clone());
        }
        if !m.is_multiple_of(self.conductor) {
            return Err(KernelError::BadLift {
                from: self.conductor,
                to: m,
            });
        }
        if m > DEFAULT_MAX_CONDUCTOR {
            return Err(KernelError::ConductorOverflow {
                needed: m,
                bound: DEFAULT_MAX_CONDUCTOR,
            });
        }
        let t = table(m);
        let step = (m / self.conductor) as usize;
        let mut out = vec![BigRational::zero(); t.phi];
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            accumulate(&mut out, c, &t.powers[i * step]);
        }
        Ok(Scalar {
            conductor: m,
            coeffs: out,
        })
    }

    /// Lift both operands to the lcm of their conductors, respecting `bound`.
    pub fn unify(&self, other: &Self, bound: u32) -> Result<(Self, Self), KernelError> {
        let m = self.conductor.lcm(&other.conductor);
        if m > bound {
            return Err(KernelError::ConductorOverflow { needed: m, bound });
        }
        Ok((self.lift(m)?, other.lift(m)?))
    }

    pub fn try_mul(&self, other: &Self, bound: u32) -> Result<Self, KernelError> {
        let (a, b) = self.unify(other, bound)?;
        Ok(mul_same(&a, &b))
    }

    pub fn try_add(&self, other: &Self, bound: u32) -> Result<Self, KernelError> {
        let (mut a, b) = self.unify(other, bound)?;
        for (x, y) in a.coeffs.iter_mut().zip(&b.coeffs) {
            *x += y;
        }
        Ok(a)
    }

    /// Rational value, if the element lies in `Q`.
    pub fn as_rational(&self) -> Option<BigRational> {
        let reduced = self.reduce_conductor();
        if reduced.conductor == 1 {
            Some(reduced.coeffs[0].clone())
        } else {
            None
        }
    }

    /// Smallest conductor representing the same element.
    pub fn reduce_conductor(&self) -> Self {
        if self.coeffs.iter().all(|c| c.is_zero()) {
            return Self::integer(0);
        }
        let n = self.conductor;
        let mut best = self.clone();
        for d in 1..n {
            if !n.is_multiple_of(d) || d >= best.conductor {
                continue;
            }
            if let Some(s) = self.descend(d) {
                best = s;
                break;
            }
        }
        best
    }

    /// Try to write the element in `Q(ζ_d)` for a divisor `d` of the conductor.
    fn descend(&self, d: u32) -> Option<Self> {
        let phi_d = euler_phi(d);
        // Solve lift_d(y) = self as a rational linear system.
        let n = self.conductor;
        let t = table(n);
        let step = (n / d) as usize;
        let mut m = Mat::<BigRational>::zeros(t.phi, phi_d);
        for j in 0..phi_d {
            for (i, &c) in t.powers[j * step].iter().enumerate() {
                m[(i, j)] = int(c);
            }
        }
        let rhs = Mat::from_vec(t.phi, 1, self.coeffs.clone());
        let sol = m.solve(&rhs).ok()?;
        let y = (0..phi_d).map(|i| sol.particular[(i, 0)].clone()).collect();
        Some(Scalar {
            conductor: d,
            coeffs: y,
        })
    }

    fn is_zero_exact(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }
}

fn sqrt_prime(p: u64) -> Option<Scalar> {
    if p == 2 {
        // ζ_8 + ζ_8^{-1}
        return Some(Scalar::root_of_unity(8, 1) + Scalar::root_of_unity(8, 7));
    }
    if p as u32 as u64 != p || 4 * p > DEFAULT_MAX_CONDUCTOR as u64 {
        return None;
    }
    let n = p as u32;
    // Quadratic Gauss sum g = Σ (a/p) ζ_p^a with g² = (-1)^{(p-1)/2} p.
    let mut g = Scalar::integer(0);
    for a in 1..p {
        let leg = legendre(a, p);
        g = g + Scalar::integer(leg) * Scalar::root_of_unity(n, a as i64);
    }
    if p % 4 == 1 {
        Some(g)
    } else {
        // g = i √p
        Some(g * Scalar::root_of_unity(4, 3))
    }
}

fn legendre(a: u64, p: u64) -> i64 {
    let mut r = 1u64;
    let mut base = a % p;
    let mut e = (p - 1) / 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    if r == 1 {
        1
    } else {
        -1
    }
}

fn int(c: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(c))
}

fn accumulate(out: &mut [BigRational], c: &BigRational, pattern: &[i64]) {
    for (o, &p) in out.iter_mut().zip(pattern) {
        match p {
            0 => {}
            1 => *o += c,
            -1 => *o -= c,
            _ => *o += c * BigInt::from(p),
        }
    }
}

fn mul_same(a: &Scalar, b: &Scalar) -> Scalar {
    let n = a.conductor;
    let t = table(n);
    if a.is_zero_exact() || b.is_zero_exact() {
        return Scalar {
            conductor: n,
            coeffs: vec![BigRational::zero(); t.phi],
        };
    }
    if n == 1 {
        return Scalar {
            conductor: 1,
            coeffs: vec![&a.coeffs[0] * &b.coeffs[0]],
        };
    }
    let nn = n as usize;
    let mut wrap = vec![BigRational::zero(); nn];
    for (i, x) in a.coeffs.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.coeffs.iter().enumerate() {
            if y.is_zero() {
                continue;
            }
            wrap[(i + j) % nn] += x * y;
        }
    }
    let mut out = vec![BigRational::zero(); t.phi];
    for (k, c) in wrap.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        if k < t.phi {
            out[k] += c;
        } else {
            accumulate(&mut out, c, &t.powers[k]);
        }
    }
    Scalar {
        conductor: n,
        coeffs: out,
    }
}

fn unify_default(a: &Scalar, b: &Scalar) -> (Scalar, Scalar) {
    if a.conductor == b.conductor {
        return (a.clone(), b.clone());
    }
    a.unify(b, DEFAULT_MAX_CONDUCTOR)
        .expect("conductor exceeds DEFAULT_MAX_CONDUCTOR")
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        if self.conductor == other.conductor {
            return self.coeffs == other.coeffs;
        }
        let (a, b) = unify_default(self, other);
        a.coeffs == b.coeffs
    }
}

impl Eq for Scalar {}

impl Add for Scalar {
    type Output = Scalar;
    fn add(mut self, rhs: Scalar) -> Scalar {
        self += &rhs;
        self
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(mut self, rhs: Scalar) -> Scalar {
        self -= &rhs;
        self
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        self * &rhs
    }
}

impl<'a> Mul<&'a Scalar> for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &'a Scalar) -> Scalar {
        if self.conductor == rhs.conductor {
            return mul_same(&self, rhs);
        }
        let (a, b) = unify_default(&self, rhs);
        mul_same(&a, &b)
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(mut self) -> Scalar {
        for c in &mut self.coeffs {
            *c = -c.clone();
        }
        self
    }
}

impl<'a> AddAssign<&'a Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &'a Scalar) {
        if self.conductor == rhs.conductor {
            for (x, y) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
                *x += y;
            }
            return;
        }
        let (mut a, b) = unify_default(self, rhs);
        for (x, y) in a.coeffs.iter_mut().zip(&b.coeffs) {
            *x += y;
        }
        *self = a;
    }
}

impl<'a> SubAssign<&'a Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &'a Scalar) {
        if self.conductor == rhs.conductor {
            for (x, y) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
                *x -= y;
            }
            return;
        }
        let (mut a, b) = unify_default(self, rhs);
        for (x, y) in a.coeffs.iter_mut().zip(&b.coeffs) {
            *x -= y;
        }
        *self = a;
    }
}

impl super::field::Field for Scalar {
    fn zero() -> Self {
        Scalar::integer(0)
    }
    fn one() -> Self {
        Scalar::integer(1)
    }
    fn from_i64(n: i64) -> Self {
        Scalar::integer(n)
    }
    fn is_zero(&self) -> bool {
        self.is_zero_exact()
    }
    fn conj(&self) -> Self {
        let n = self.conductor;
        if n <= 2 {
            return self.clone();
        }
        let t = table(n);
        let mut out = vec![<BigRational as Zero>::zero(); t.phi];
        for (i, c) in self.coeffs.iter().enumerate() {
            if Zero::is_zero(c) {
                continue;
            }
            let e = (n as usize - i) % n as usize;
            accumulate(&mut out, c, &t.powers[e]);
        }
        Scalar {
            conductor: n,
            coeffs: out,
        }
    }
    fn inv(&self) -> Option<Self> {
        if self.is_zero_exact() {
            return None;
        }
        if self.conductor == 1 {
            return Some(Scalar::rational(self.coeffs[0].recip()));
        }
        // Columns of the multiplication-by-self matrix are self·ζ^j.
        let n = self.conductor;
        let phi = table(n).phi;
        let mut m = Mat::<BigRational>::zeros(phi, phi);
        for j in 0..phi {
            let col = mul_same(self, &Scalar::root_of_unity(n, j as i64));
            for i in 0..phi {
                m[(i, j)] = col.coeffs[i].clone();
            }
        }
        let mut rhs = Mat::<BigRational>::zeros(phi, 1);
        rhs[(0, 0)] = <BigRational as One>::one();
        let sol = m.solve(&rhs).ok()?;
        Some(Scalar {
            conductor: n,
            coeffs: (0..phi).map(|i| sol.particular[(i, 0)].clone()).collect(),
        })
    }
    fn to_c64(&self) -> Complex64 {
        let n = self.conductor as f64;
        let mut z = Complex64::new(0.0, 0.0);
        for (k, c) in self.coeffs.iter().enumerate() {
            if Zero::is_zero(c) {
                continue;
            }
            let ang = 2.0 * std::f64::consts::PI * k as f64 / n;
            z += Complex64::from_polar(1.0, ang) * c.to_f64().unwrap_or(f64::NAN);
        }
        z
    }
    fn add_mul(&mut self, a: &Self, b: &Self) {
        if a.is_zero_exact() || b.is_zero_exact() {
            return;
        }
        let p = a.clone() * b;
        *self += &p;
    }
    fn is_one(&self) -> bool {
        One::is_one(&self.coeffs[0]) && self.coeffs[1..].iter().all(Zero::is_zero)
    }
    fn eq_field(&self, other: &Self) -> bool {
        self == other
    }
    fn pivot_weight(&self) -> f64 {
        if self.is_zero_exact() {
            0.0
        } else {
            1.0
        }
    }
    fn is_positive_real(&self) -> bool {
        if self.is_zero_exact() || *self != self.conj() {
            return false;
        }
        if let Some(q) = self.as_rational() {
            return q.is_positive();
        }
        self.to_c64().re > 0.0
    }
    fn imag_unit() -> Option<Self> {
        Some(Scalar::root_of_unity(4, 1))
    }
    fn roots(monic: &[Self]) -> Option<Vec<Self>> {
        let q: Option<Vec<BigRational>> = monic.iter().map(Scalar::as_rational).collect();
        let r = super::field::rational_roots(&q?)?;
        (r.len() + 1 == monic.len()).then(|| r.into_iter().map(Scalar::rational).collect())
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let coef = if c.denom().is_one() {
                c.numer().to_string()
            } else {
                format!("{}/{}", c.numer(), c.denom())
            };
            terms.push(match k {
                0 => coef,
                _ if c.is_one() => format!("z{}^{}", self.conductor, k),
                _ => format!("{}*z{}^{}", coef, self.conductor, k),
            });
        }
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::Field;

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(8), vec![1, 0, 0, 0, 1]);
        assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn sqrt_two_and_three() {
        for m in [2u64, 3, 5, 6, 8, 12] {
            let s = Scalar::sqrt_of_int(m).unwrap();
            assert_eq!(s.clone() * &s, Scalar::integer(m as i64), "m = {m}");
            assert!(s.is_positive_real(), "m = {m}");
        }
    }

    #[test]
    fn reduce_conductor_finds_rationals() {
        let i = Scalar::root_of_unity(4, 1);
        let lifted = (i.clone() * &i).lift(16).unwrap();
        assert_eq!(lifted.as_rational(), Some(int(-1)));
    }
}
