//! Exact arithmetic in the cyclotomic field Q(ξ_m).
//!
//! Elements are stored as the unique residue of degree < φ(m) modulo the
//! m-th cyclotomic polynomial Φ_m, with big-rational coefficients. ξ is the
//! class of the indeterminate, a primitive m-th root of unity.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::ExactError;

/// Euler's totient.
pub fn euler_phi(n: u32) -> u32 {
    let mut n = n;
    let mut result = n;
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            while n.is_multiple_of(d) {
                n /= d;
            }
            result -= result / d;
        }
        d += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// Integer coefficients of Φ_n, lowest degree first.
pub fn cyclotomic_poly(n: u32) -> Vec<BigInt> {
    assert!(n >= 1, "cyclotomic_poly: n must be positive");
    // x^n - 1 divided by Φ_d for every proper divisor d.
    let mut num: Vec<BigInt> = vec![BigInt::zero(); n as usize + 1];
    num[0] = -BigInt::one();
    num[n as usize] = BigInt::one();
    for d in 1..n {
        if n.is_multiple_of(d) {
            let den = cyclotomic_poly(d);
            num = div_monic(&num, &den);
        }
    }
    num
}

fn div_monic(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let nd = rem.len() - 1;
    let mut quot = vec![BigInt::zero(); nd - dd + 1];
    for k in (0..=nd - dd).rev() {
        let c = rem[k + dd].clone();
        if c.is_zero() {
            continue;
        }
        for (i, dc) in den.iter().enumerate() {
            rem[k + i] -= &c * dc;
        }
        quot[k] = c;
    }
    debug_assert!(rem.iter().all(|c| c.is_zero()));
    quot
}

/// An element of Q(ξ_m).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CycNum {
    order: u32,
    coeffs: Vec<BigRational>,
}

fn modulus(order: u32) -> Vec<BigRational> {
    cyclotomic_poly(order)
        .into_iter()
        .map(BigRational::from_integer)
        .collect()
}

fn reduce(order: u32, mut v: Vec<BigRational>) -> Vec<BigRational> {
    let phi = euler_phi(order) as usize;
    if v.len() > phi {
        let md = modulus(order);
        for k in (phi..v.len()).rev() {
            let c = std::mem::replace(&mut v[k], BigRational::zero());
            if c.is_zero() {
                continue;
            }
            // ξ^k = -Σ_{i<phi} md[i] ξ^{k-phi+i}
            for (i, mc) in md.iter().enumerate().take(phi) {
                if !mc.is_zero() {
                    v[k - phi + i] -= &c * mc;
                }
            }
        }
        v.truncate(phi);
    }
    v.resize(phi, BigRational::zero());
    v
}

impl CycNum {
    pub fn zero(order: u32) -> Self {
        assert!(order >= 1);
        CycNum { order, coeffs: vec![BigRational::zero(); euler_phi(order) as usize] }
    }

    pub fn one(order: u32) -> Self {
        Self::from_rational(order, BigRational::one())
    }

    pub fn from_int(order: u32, n: i64) -> Self {
        Self::from_rational(order, BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_rational(order: u32, r: BigRational) -> Self {
        let mut z = Self::zero(order);
        z.coeffs[0] = r;
        z
    }

    /// ξ_m^k for any integer k.
    pub fn root_power(order: u32, k: i64) -> Self {
        let e = k.rem_euclid(order as i64) as usize;
        let mut v = vec![BigRational::zero(); e + 1];
        v[e] = BigRational::one();
        CycNum { order, coeffs: reduce(order, v) }
    }

    /// Builds from a power-basis vector of any length, reducing modulo Φ_m.
    pub fn from_power_coeffs(order: u32, v: Vec<BigRational>) -> Self {
        CycNum { order, coeffs: reduce(order, v) }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    /// The rational value, when the element lies in Q.
    pub fn to_rational(&self) -> Option<BigRational> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    fn check(&self, other: &Self) -> Result<(), ExactError> {
        if self.order != other.order {
            Err(ExactError::OrderMismatch(self.order, other.order))
        } else {
            Ok(())
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, ExactError> {
        self.check(other)?;
        Ok(CycNum {
            order: self.order,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, ExactError> {
        self.check(other)?;
        if let Some(r) = self.to_rational() {
            return Ok(other.scale(&r));
        }
        if let Some(r) = other.to_rational() {
            return Ok(self.scale(&r));
        }
        let n = self.coeffs.len();
        let mut v = vec![BigRational::zero(); 2 * n - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    v[i + j] += a * b;
                }
            }
        }
        Ok(CycNum { order: self.order, coeffs: reduce(self.order, v) })
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        CycNum { order: self.order, coeffs: self.coeffs.iter().map(|c| c * r).collect() }
    }

    /// Multiplicative inverse via the extended Euclidean algorithm in Q[t].
    pub fn inv(&self) -> Result<Self, ExactError> {
        if self.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        if let Some(r) = self.to_rational() {
            return Ok(Self::from_rational(self.order, r.recip()));
        }
        // invariant: r_i = s_i * a (mod Φ)
        let mut r0 = trim(modulus(self.order));
        let mut r1 = trim(self.coeffs.clone());
        let mut s0: Vec<BigRational> = vec![];
        let mut s1: Vec<BigRational> = vec![BigRational::one()];
        while !(r1.len() == 1) {
            let (q, r) = poly_divrem(&r0, &r1);
            let s2 = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s2;
        }
        let c = r1[0].recip();
        let out: Vec<BigRational> = s1.iter().map(|x| x * &c).collect();
        Ok(CycNum { order: self.order, coeffs: reduce(self.order, out) })
    }

    pub fn try_div(&self, other: &Self) -> Result<Self, ExactError> {
        self.try_mul(&other.inv()?)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.order);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Complex conjugation, the automorphism ξ ↦ ξ^{-1}.
    pub fn conj(&self) -> Self {
        let m = self.order as usize;
        let mut v = vec![BigRational::zero(); m.max(1)];
        for (k, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                v[(m - k) % m] += c;
            }
        }
        CycNum { order: self.order, coeffs: reduce(self.order, v) }
    }
}

fn trim(mut v: Vec<BigRational>) -> Vec<BigRational> {
    while v.len() > 1 && v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    if v.is_empty() {
        v.push(BigRational::zero());
    }
    v
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut v = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            v[i + j] += x * y;
        }
    }
    v
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(BigRational::zero);
            let y = b.get(i).cloned().unwrap_or_else(BigRational::zero);
            x - y
        })
        .collect()
}

fn poly_divrem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let b = trim(b.to_vec());
    let mut r = trim(a.to_vec());
    let db = b.len() - 1;
    if r.len() - 1 < db {
        return (vec![BigRational::zero()], r);
    }
    let mut q = vec![BigRational::zero(); r.len() - db];
    let lead = b[db].clone();
    while r.len() > db && !(r.len() == 1 && r[0].is_zero()) {
        let k = r.len() - 1 - db;
        let c = &r[r.len() - 1] / &lead;
        for (i, bc) in b.iter().enumerate() {
            r[k + i] -= &c * bc;
        }
        q[k] = c;
        r.pop();
        r = trim(r);
        if r.len() - 1 < db {
            break;
        }
    }
    (q, r)
}

impl Add for &CycNum {
    type Output = CycNum;
    fn add(self, o: &CycNum) -> CycNum {
        self.try_add(o).expect("cyclotomic order mismatch")
    }
}

impl Sub for &CycNum {
    type Output = CycNum;
    fn sub(self, o: &CycNum) -> CycNum {
        self.try_add(&-o).expect("cyclotomic order mismatch")
    }
}

impl Mul for &CycNum {
    type Output = CycNum;
    fn mul(self, o: &CycNum) -> CycNum {
        self.try_mul(o).expect("cyclotomic order mismatch")
    }
}

impl Neg for &CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        CycNum { order: self.order, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl PartialOrd for CycNum {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A total order for canonical sorting only; it has no field meaning.
impl Ord for CycNum {
    fn cmp(&self, other: &Self) -> Ordering {
        self.order.cmp(&other.order).then_with(|| self.coeffs.cmp(&other.coeffs))
    }
}

pub(crate) fn fmt_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for CycNum {
    /// Rational values print bare; others as a parenthesized sum in `w` = ξ_m.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(r) = self.to_rational() {
            return write!(f, "{}", fmt_rational(&r));
        }
        let mut parts: Vec<String> = vec![];
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = fmt_rational(&c.abs());
            let body = match k {
                0 => mag,
                _ => {
                    let w = if k == 1 { "w".to_string() } else { format!("w^{}", k) };
                    if c.abs().is_one() {
                        w
                    } else {
                        format!("{}*{}", mag, w)
                    }
                }
            };
            if parts.is_empty() {
                parts.push(if c.is_negative() { format!("-{}", body) } else { body });
            } else {
                parts.push(format!("{} {}", if c.is_negative() { "-" } else { "+" }, body));
            }
        }
        write!(f, "({})", parts.join(" "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn small_cyclotomic_polys() {
        assert_eq!(cyclotomic_poly(1), vec![int(-1), int(1)]);
        assert_eq!(cyclotomic_poly(4), vec![int(1), int(0), int(1)]);
        assert_eq!(cyclotomic_poly(6), vec![int(1), int(-1), int(1)]);
        assert_eq!(cyclotomic_poly(12).len() as u32, euler_phi(12) + 1);
    }

    #[test]
    fn i_squared() {
        let i = CycNum::root_power(4, 1);
        assert_eq!(&i * &i, CycNum::from_int(4, -1));
    }

    #[test]
    fn cube_roots_sum() {
        let a = CycNum::root_power(3, 1);
        let b = CycNum::root_power(3, 2);
        assert_eq!(&a + &b, CycNum::from_int(3, -1));
    }

    #[test]
    fn inverse_of_root() {
        let w = CycNum::root_power(6, 1);
        assert_eq!(w.inv().unwrap(), CycNum::root_power(6, 5));
        assert!(CycNum::zero(6).inv().is_err());
    }

    #[test]
    fn inverse_general() {
        for m in [3u32, 5, 7, 8, 9, 12] {
            let a = &CycNum::root_power(m, 1) + &CycNum::from_int(m, 3);
            let b = a.inv().unwrap();
            assert!((&a * &b).is_one(), "m={}", m);
        }
    }

    #[test]
    fn root_powers_wrap() {
        for m in 1..=12u32 {
            let w = CycNum::root_power(m, 1);
            assert!(w.pow(m).is_one());
            assert_eq!(CycNum::root_power(m, -1), w.conj());
        }
    }

    #[test]
    fn mismatch_errors() {
        assert!(CycNum::one(3).try_add(&CycNum::one(4)).is_err());
    }

    #[test]
    fn display() {
        assert_eq!(CycNum::from_int(5, -3).to_string(), "-3");
        assert_eq!(CycNum::root_power(5, 2).to_string(), "(w^2)");
    }
}
