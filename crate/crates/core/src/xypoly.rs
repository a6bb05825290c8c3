//! Sparse bivariate polynomials in x, y over Q(ξ_m).

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;

use crate::cyclotomic::CycNum;
use crate::error::ExactError;
use crate::group::GroupElement;

/// Terms are keyed by the exponent pair (a, b) of x^a y^b.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct XYPoly {
    order: u32,
    terms: BTreeMap<(u32, u32), CycNum>,
}

impl XYPoly {
    pub fn zero(order: u32) -> Self {
        XYPoly { order, terms: BTreeMap::new() }
    }

    pub fn constant(c: CycNum) -> Self {
        Self::term(c, 0, 0)
    }

    pub fn one(order: u32) -> Self {
        Self::constant(CycNum::one(order))
    }

    pub fn term(c: CycNum, a: u32, b: u32) -> Self {
        let order = c.order();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((a, b), c);
        }
        XYPoly { order, terms }
    }

    pub fn monomial(order: u32, a: u32, b: u32) -> Self {
        Self::term(CycNum::one(order), a, b)
    }

    pub fn x(order: u32) -> Self {
        Self::monomial(order, 1, 0)
    }

    pub fn y(order: u32) -> Self {
        Self::monomial(order, 0, 1)
    }

    pub fn from_terms(order: u32, it: impl IntoIterator<Item = ((u32, u32), CycNum)>) -> Self {
        let mut p = Self::zero(order);
        for (k, c) in it {
            p.add_term(k, &c);
        }
        p
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn terms(&self) -> &BTreeMap<(u32, u32), CycNum> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, a: u32, b: u32) -> CycNum {
        self.terms.get(&(a, b)).cloned().unwrap_or_else(|| CycNum::zero(self.order))
    }

    fn add_term(&mut self, k: (u32, u32), c: &CycNum) {
        if c.is_zero() {
            return;
        }
        let sum = match self.terms.get(&k) {
            Some(old) => old + c,
            None => c.clone(),
        };
        if sum.is_zero() {
            self.terms.remove(&k);
        } else {
            self.terms.insert(k, sum);
        }
    }

    fn check(&self, o: &Self) -> Result<(), ExactError> {
        if self.order != o.order {
            Err(ExactError::OrderMismatch(self.order, o.order))
        } else {
            Ok(())
        }
    }

    pub fn try_add(&self, o: &Self) -> Result<Self, ExactError> {
        self.check(o)?;
        let mut r = self.clone();
        for (k, c) in &o.terms {
            r.add_term(*k, c);
        }
        Ok(r)
    }

    pub fn try_mul(&self, o: &Self) -> Result<Self, ExactError> {
        self.check(o)?;
        let mut r = Self::zero(self.order);
        for ((a1, b1), c1) in &self.terms {
            for ((a2, b2), c2) in &o.terms {
                r.add_term((a1 + a2, b1 + b2), &(c1 * c2));
            }
        }
        Ok(r)
    }

    pub fn scale(&self, c: &CycNum) -> Self {
        let mut r = Self::zero(self.order);
        if c.is_zero() {
            return r;
        }
        for (k, v) in &self.terms {
            r.terms.insert(*k, v * c);
        }
        r
    }

    pub fn scale_rational(&self, c: &BigRational) -> Self {
        self.scale(&CycNum::from_rational(self.order, c.clone()))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.order);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Total degree when homogeneous. The zero polynomial has no degree.
    pub fn homogeneous_degree(&self) -> Result<Option<u32>, ExactError> {
        let mut it = self.terms.keys().map(|(a, b)| a + b);
        let Some(d) = it.next() else { return Ok(None) };
        if it.all(|e| e == d) {
            Ok(Some(d))
        } else {
            Err(ExactError::NotHomogeneous)
        }
    }

    /// Leading term in lexicographic order (x before y).
    pub fn leading(&self) -> Option<((u32, u32), &CycNum)> {
        self.terms.iter().next_back().map(|(k, c)| (*k, c))
    }

    /// Rescales so that the lexicographically leading coefficient is 1.
    pub fn normalized(&self) -> Self {
        match self.leading() {
            None => self.clone(),
            Some((_, c)) => self.scale(&c.inv().expect("nonzero leading coefficient")),
        }
    }

    /// True when every coefficient is rational.
    pub fn is_rational(&self) -> bool {
        self.terms.values().all(|c| c.to_rational().is_some())
    }

    /// Applies g: x_i ↦ ξ^{d_i} x_{π(i)}, i.e. x, y transform as the basis
    /// vectors of the natural representation. With this convention
    /// g·z = det(g)·z for the arrangement polynomial z.
    pub fn substitute(&self, g: &GroupElement) -> Self {
        let mut r = Self::zero(self.order);
        let (ea, eb) = g.exps();
        for ((a, b), c) in &self.terms {
            let phase = CycNum::root_power(self.order, (ea as i64) * (*a as i64) + (eb as i64) * (*b as i64));
            let key = if g.swaps() { (*b, *a) } else { (*a, *b) };
            r.add_term(key, &(c * &phase));
        }
        r
    }

    /// Exact quotient by a nonzero polynomial, when it divides.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let (dk, dc) = d.leading()?;
        let dinv = dc.inv().ok()?;
        let mut rem = self.clone();
        let mut q = Self::zero(self.order);
        while let Some((k, c)) = rem.leading() {
            if k.0 < dk.0 || k.1 < dk.1 {
                return None;
            }
            let t = Self::term(c * &dinv, k.0 - dk.0, k.1 - dk.1);
            rem = &rem - &(&t * d);
            q = &q + &t;
        }
        Some(q)
    }
}

impl Add for &XYPoly {
    type Output = XYPoly;
    fn add(self, o: &XYPoly) -> XYPoly {
        self.try_add(o).expect("cyclotomic order mismatch")
    }
}

impl Sub for &XYPoly {
    type Output = XYPoly;
    fn sub(self, o: &XYPoly) -> XYPoly {
        self.try_add(&-o).expect("cyclotomic order mismatch")
    }
}

impl Mul for &XYPoly {
    type Output = XYPoly;
    fn mul(self, o: &XYPoly) -> XYPoly {
        self.try_mul(o).expect("cyclotomic order mismatch")
    }
}

impl Neg for &XYPoly {
    type Output = XYPoly;
    fn neg(self) -> XYPoly {
        XYPoly { order: self.order, terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect() }
    }
}

impl crate::grammar::ParseRing for XYPoly {
    fn from_rational(&self, r: BigRational) -> Self {
        XYPoly::constant(CycNum::from_rational(self.order, r))
    }
    fn variable(&self, name: &str) -> Result<Self, ExactError> {
        match name {
            "x" => Ok(XYPoly::x(self.order)),
            "y" => Ok(XYPoly::y(self.order)),
            "w" => Ok(XYPoly::constant(CycNum::root_power(self.order, 1))),
            _ => Err(ExactError::Parse(format!("unknown variable '{}'", name))),
        }
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn pow(&self, e: u32) -> Self {
        XYPoly::pow(self, e)
    }
}

impl XYPoly {
    /// Parses the textual grammar with ξ written as `w`.
    pub fn parse(s: &str, order: u32) -> Result<Self, ExactError> {
        crate::grammar::parse(s, &XYPoly::zero(order))
    }
}

impl fmt::Display for XYPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<(Vec<(&str, u32)>, &CycNum)> = self
            .terms
            .iter()
            .map(|((a, b), c)| (vec![("x", *a), ("y", *b)], c))
            .collect();
        f.write_str(&crate::grammar::render_terms(&terms, |c| c.to_string(), |c| c.to_rational()))
    }
}
