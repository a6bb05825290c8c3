//! The invariant frame of G(m,p,2): σ₁ = (xy)^q, σ₂ = x^m + y^m, and the
//! solver that writes a polynomial in the R-span of a basis.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::binomial;
use num_rational::BigRational;
use num_traits::Zero;

use crate::cyclotomic::CycNum;
use crate::error::{ExactError, Result};
use crate::group::check_admissible;
use crate::linalg;
use crate::sigma::SigmaPoly;
use crate::xypoly::XYPoly;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantFrame {
    pub m: u32,
    pub p: u32,
    pub q: u32,
    pub sigma1_xy: XYPoly,
    pub sigma2_xy: XYPoly,
}

impl InvariantFrame {
    pub fn new(m: u32, p: u32) -> Result<Self> {
        check_admissible(m, p)?;
        Ok(Self::unchecked(m, p))
    }

    /// Frame without the admissibility filter (used for G(m,1,2) with m = 1).
    pub(crate) fn unchecked(m: u32, p: u32) -> Self {
        let q = m / p;
        let sigma1_xy = XYPoly::monomial(m, q, q);
        let sigma2_xy = &XYPoly::monomial(m, m, 0) + &XYPoly::monomial(m, 0, m);
        InvariantFrame { m, p, q, sigma1_xy, sigma2_xy }
    }

    /// (deg σ₁, deg σ₂) in the x,y grading.
    pub fn weights(&self) -> (u32, u32) {
        (2 * self.q, self.m)
    }

    /// Exponent pairs (i, j) with i·deg σ₁ + j·deg σ₂ = d.
    pub fn sigma_monomials(&self, d: i64) -> Vec<(u32, u32)> {
        let (w1, w2) = self.weights();
        if d < 0 {
            return vec![];
        }
        let d = d as u32;
        (0..=d / w2).filter(|j| (d - j * w2).is_multiple_of(w1)).map(|j| ((d - j * w2) / w1, j)).collect()
    }

    /// σ₁^i σ₂^j expanded in x, y.
    pub fn expand_monomial(&self, i: u32, j: u32) -> XYPoly {
        let (m, q) = (self.m, self.q);
        XYPoly::from_terms(
            m,
            (0..=j).map(|t| {
                let c = binomial(BigInt::from(j), BigInt::from(t));
                ((q * i + m * t, q * i + m * (j - t)), CycNum::from_rational(m, BigRational::from_integer(c)))
            }),
        )
    }

    pub fn sigma_expand(&self, s: &SigmaPoly) -> XYPoly {
        let mut acc = XYPoly::zero(self.m);
        for ((i, j), c) in s.terms() {
            acc = &acc + &self.expand_monomial(*i, *j).scale_rational(c);
        }
        acc
    }

    /// Finds c₁..c_k in R with f = Σ c_k·basis_k.
    pub fn express_in_basis(&self, f: &XYPoly, basis: &[XYPoly]) -> std::result::Result<Vec<SigmaPoly>, ExactError> {
        let Some(df) = f.homogeneous_degree()? else {
            return Ok(vec![SigmaPoly::zero(); basis.len()]);
        };
        let mut unknowns: Vec<(usize, u32, u32)> = vec![];
        let mut columns: Vec<XYPoly> = vec![];
        for (k, b) in basis.iter().enumerate() {
            let db = b.homogeneous_degree()?.ok_or_else(|| ExactError::NoSolution("zero basis element".into()))?;
            for (i, j) in self.sigma_monomials(df as i64 - db as i64) {
                unknowns.push((k, i, j));
                columns.push(&self.expand_monomial(i, j) * b);
            }
        }
        let mut monos: BTreeSet<(u32, u32)> = f.terms().keys().copied().collect();
        for c in &columns {
            monos.extend(c.terms().keys().copied());
        }
        let monos: Vec<(u32, u32)> = monos.into_iter().collect();
        let rational = f.is_rational() && columns.iter().all(|c| c.is_rational());
        let n = unknowns.len();
        let values: Vec<BigRational> = if rational {
            let a: Vec<Vec<BigRational>> = monos
                .iter()
                .map(|&(x, y)| columns.iter().map(|c| c.coeff(x, y).to_rational().unwrap()).collect())
                .collect();
            let b: Vec<BigRational> = monos.iter().map(|&(x, y)| f.coeff(x, y).to_rational().unwrap()).collect();
            linalg::solve(&a, &b, n, &BigRational::zero())?
        } else {
            let a: Vec<Vec<CycNum>> =
                monos.iter().map(|&(x, y)| columns.iter().map(|c| c.coeff(x, y)).collect()).collect();
            let b: Vec<CycNum> = monos.iter().map(|&(x, y)| f.coeff(x, y)).collect();
            let sol = linalg::solve(&a, &b, n, &CycNum::zero(self.m))?;
            sol.into_iter()
                .map(|v| v.to_rational().ok_or_else(|| ExactError::NonRational(v.to_string())))
                .collect::<std::result::Result<_, _>>()?
        };
        let mut out = vec![SigmaPoly::zero(); basis.len()];
        for ((k, i, j), v) in unknowns.into_iter().zip(values) {
            out[k].add_monomial(&v, i, j);
        }
        let mut back = XYPoly::zero(self.m);
        for (c, b) in out.iter().zip(basis) {
            back = &back + &(&self.sigma_expand(c) * b);
        }
        if &back != f {
            return Err(ExactError::NoSolution("re-expansion does not reproduce the input".into()));
        }
        Ok(out)
    }
}

/// Convenience: a rational as a 1-term σ-polynomial coefficient.
pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}
