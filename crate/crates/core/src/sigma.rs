//! Polynomials in the fundamental invariants σ₁, σ₂ with rational
//! coefficients, and square matrices over them.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::ExactError;
use crate::grammar::{self, ParseRing};

/// Terms keyed by (i, j) for σ₁^i σ₂^j.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct SigmaPoly {
    terms: BTreeMap<(u32, u32), BigRational>,
}

impl SigmaPoly {
    pub fn zero() -> Self {
        SigmaPoly::default()
    }

    pub fn constant(c: BigRational) -> Self {
        Self::term(c, 0, 0)
    }

    pub fn int(c: i64) -> Self {
        Self::constant(BigRational::from_integer(BigInt::from(c)))
    }

    pub fn one() -> Self {
        Self::int(1)
    }

    pub fn term(c: BigRational, i: u32, j: u32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((i, j), c);
        }
        SigmaPoly { terms }
    }

    /// c·σ₁^i σ₂^j with an integer coefficient.
    pub fn mono(c: i64, i: u32, j: u32) -> Self {
        Self::term(BigRational::from_integer(BigInt::from(c)), i, j)
    }

    pub fn s1() -> Self {
        Self::mono(1, 1, 0)
    }

    pub fn s2() -> Self {
        Self::mono(1, 0, 1)
    }

    pub fn terms(&self) -> &BTreeMap<(u32, u32), BigRational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, k: (u32, u32), c: &BigRational) {
        if c.is_zero() {
            return;
        }
        let sum = match self.terms.get(&k) {
            Some(o) => o + c,
            None => c.clone(),
        };
        if sum.is_zero() {
            self.terms.remove(&k);
        } else {
            self.terms.insert(k, sum);
        }
    }

    pub fn add_monomial(&mut self, c: &BigRational, i: u32, j: u32) {
        self.add_term((i, j), c);
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        SigmaPoly { terms: self.terms.iter().map(|(k, v)| (*k, v * c)).collect() }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// The value when the polynomial is a constant (zero included).
    pub fn as_constant(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => self.terms.get(&(0, 0)).cloned(),
            _ => None,
        }
    }

    /// Nonzero constant.
    pub fn is_unit(&self) -> bool {
        matches!(self.as_constant(), Some(c) if !c.is_zero())
    }

    /// Weighted degree under deg σ₁ = w1, deg σ₂ = w2; `None` for zero.
    pub fn weighted_degree(&self, w1: u32, w2: u32) -> Result<Option<u32>, ExactError> {
        let mut it = self.terms.keys().map(|(i, j)| i * w1 + j * w2);
        let Some(d) = it.next() else { return Ok(None) };
        if it.all(|e| e == d) {
            Ok(Some(d))
        } else {
            Err(ExactError::NotHomogeneous)
        }
    }

    /// Leading term in lexicographic order on (i, j).
    pub fn leading(&self) -> Option<((u32, u32), &BigRational)> {
        self.terms.iter().next_back().map(|(k, c)| (*k, c))
    }

    /// Exact quotient, when `d` divides `self`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let (dk, dc) = d.leading()?;
        let mut rem = self.clone();
        let mut q = Self::zero();
        while let Some((k, c)) = rem.leading() {
            if k.0 < dk.0 || k.1 < dk.1 {
                return None;
            }
            let t = Self::term(c / dc, k.0 - dk.0, k.1 - dk.1);
            rem = &rem - &(&t * d);
            q = &q + &t;
        }
        Some(q)
    }

    /// `self = c · other` for some nonzero rational c.
    pub fn proportional_to(&self, other: &Self) -> Option<BigRational> {
        let (k, a) = self.leading()?;
        let (k2, b) = other.leading()?;
        if k != k2 || self.terms.len() != other.terms.len() {
            return None;
        }
        let c = a / b;
        if &other.scale(&c) == self {
            Some(c)
        } else {
            None
        }
    }

    pub fn parse(s: &str) -> Result<Self, ExactError> {
        grammar::parse(s, &SigmaPoly::zero())
    }
}

impl ParseRing for SigmaPoly {
    fn from_rational(&self, r: BigRational) -> Self {
        SigmaPoly::constant(r)
    }
    fn variable(&self, name: &str) -> Result<Self, ExactError> {
        match name {
            "s1" => Ok(SigmaPoly::s1()),
            "s2" => Ok(SigmaPoly::s2()),
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
        SigmaPoly::pow(self, e)
    }
}

impl Add for &SigmaPoly {
    type Output = SigmaPoly;
    fn add(self, o: &SigmaPoly) -> SigmaPoly {
        let mut r = self.clone();
        for (k, c) in &o.terms {
            r.add_term(*k, c);
        }
        r
    }
}

impl Sub for &SigmaPoly {
    type Output = SigmaPoly;
    fn sub(self, o: &SigmaPoly) -> SigmaPoly {
        self + &(-o)
    }
}

impl Mul for &SigmaPoly {
    type Output = SigmaPoly;
    fn mul(self, o: &SigmaPoly) -> SigmaPoly {
        let mut r = SigmaPoly::zero();
        for ((i1, j1), c1) in &self.terms {
            for ((i2, j2), c2) in &o.terms {
                r.add_term((i1 + i2, j1 + j2), &(c1 * c2));
            }
        }
        r
    }
}

impl Neg for &SigmaPoly {
    type Output = SigmaPoly;
    fn neg(self) -> SigmaPoly {
        SigmaPoly { terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect() }
    }
}

impl fmt::Display for SigmaPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<(Vec<(&str, u32)>, &BigRational)> = self
            .terms
            .iter()
            .map(|((i, j), c)| (vec![("s1", *i), ("s2", *j)], c))
            .collect();
        f.write_str(&grammar::render_terms(&terms, |c| c.to_string(), |c| Some(c.clone())))
    }
}

/// A dense matrix of SigmaPoly.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SMat {
    rows: usize,
    cols: usize,
    data: Vec<SigmaPoly>,
}

impl SMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SMat { rows, cols, data: vec![SigmaPoly::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(n, &SigmaPoly::one())
    }

    pub fn scalar(n: usize, s: &SigmaPoly) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, s.clone());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<SigmaPoly>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged matrix");
        SMat { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &SigmaPoly {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: SigmaPoly) {
        self.data[i * self.cols + j] = v;
    }

    pub fn to_rows(&self) -> Vec<Vec<SigmaPoly>> {
        (0..self.rows).map(|i| (0..self.cols).map(|j| self.get(i, j).clone()).collect()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, o: &SMat) -> SMat {
        assert_eq!(self.cols, o.rows, "dimension mismatch");
        let mut r = Self::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for j in 0..o.cols {
                let mut acc = SigmaPoly::zero();
                for k in 0..self.cols {
                    let a = self.get(i, k);
                    let b = o.get(k, j);
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                r.set(i, j, acc);
            }
        }
        r
    }

    pub fn sub_matrix(&self, rows: &[usize], cols: &[usize]) -> SMat {
        let mut r = Self::zeros(rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                r.set(a, b, self.get(i, j).clone());
            }
        }
        r
    }

    /// Determinant by cofactor expansion (sizes here are at most 4).
    pub fn det(&self) -> SigmaPoly {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        match n {
            0 => SigmaPoly::one(),
            1 => self.get(0, 0).clone(),
            _ => {
                let mut acc = SigmaPoly::zero();
                for j in 0..n {
                    let e = self.get(0, j);
                    if e.is_zero() {
                        continue;
                    }
                    let rest_rows: Vec<usize> = (1..n).collect();
                    let rest_cols: Vec<usize> = (0..n).filter(|&c| c != j).collect();
                    let minor = self.sub_matrix(&rest_rows, &rest_cols).det();
                    let t = e * &minor;
                    acc = if j % 2 == 0 { &acc + &t } else { &acc - &t };
                }
                acc
            }
        }
    }

    /// Ideal generators for the k×k minors (nonzero ones only).
    pub fn minors(&self, k: usize) -> Vec<SigmaPoly> {
        let rs = subsets(self.rows, k);
        let cs = subsets(self.cols, k);
        let mut out = vec![];
        for r in &rs {
            for c in &cs {
                let d = self.sub_matrix(r, c).det();
                if !d.is_zero() {
                    out.push(d);
                }
            }
        }
        out
    }

    pub fn is_scalar_of(&self, s: &SigmaPoly) -> bool {
        self.rows == self.cols && *self == Self::scalar(self.rows, s)
    }

    /// Direct sum of two matrices.
    pub fn direct_sum(&self, o: &SMat) -> SMat {
        let mut r = Self::zeros(self.rows + o.rows, self.cols + o.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                r.set(i, j, self.get(i, j).clone());
            }
        }
        for i in 0..o.rows {
            for j in 0..o.cols {
                r.set(self.rows + i, self.cols + j, o.get(i, j).clone());
            }
        }
        r
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

impl fmt::Display for SMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = (0..self.rows)
            .map(|i| {
                let cells: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
                format!("[{}]", cells.join(", "))
            })
            .collect();
        write!(f, "[{}]", rows.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_and_display() {
        let d = &SigmaPoly::s2().pow(2) - &SigmaPoly::mono(4, 1, 0);
        assert_eq!(d.to_string(), "s2^2 - 4*s1");
        assert_eq!(SigmaPoly::parse("s2^2 - 4*s1").unwrap(), d);
        assert!(d.weighted_degree(1, 1).is_err());
        assert_eq!(d.weighted_degree(8, 4).unwrap(), Some(8));
    }

    #[test]
    fn exact_division_and_proportional() {
        let a = &SigmaPoly::s1() * &(&SigmaPoly::s2() + &SigmaPoly::mono(2, 1, 0));
        let b = &SigmaPoly::s2() + &SigmaPoly::mono(2, 1, 0);
        assert_eq!(a.div_exact(&b), Some(SigmaPoly::s1()));
        assert!(SigmaPoly::s1().div_exact(&SigmaPoly::s2()).is_none());
        assert_eq!(b.scale(&BigRational::from_integer((-3).into())).proportional_to(&b), Some(BigRational::from_integer((-3).into())));
    }

    #[test]
    fn det_and_minors() {
        let m = SMat::from_rows(vec![
            vec![SigmaPoly::s2(), SigmaPoly::mono(2, 1, 0)],
            vec![SigmaPoly::mono(2, 1, 0), SigmaPoly::s2()],
        ]);
        assert_eq!(m.det(), SigmaPoly::parse("s2^2 - 4*s1^2").unwrap());
        assert_eq!(m.minors(1).len(), 4);
        assert_eq!(SMat::identity(3).det(), SigmaPoly::one());
    }
}
