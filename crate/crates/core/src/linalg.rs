//! Exact dense linear algebra over a field.
//!
//! `solve` uses Bareiss fraction-free forward elimination followed by back
//! substitution; `nullspace` uses Gauss-Jordan reduction.

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::cyclotomic::CycNum;
use crate::error::ExactError;

pub trait Field: Clone + PartialEq + std::fmt::Debug {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn div(&self, o: &Self) -> Self;
}

impl Field for BigRational {
    fn zero_like(&self) -> Self {
        BigRational::zero()
    }
    fn one_like(&self) -> Self {
        BigRational::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Self {
        self / o
    }
}

impl Field for CycNum {
    fn zero_like(&self) -> Self {
        CycNum::zero(self.order())
    }
    fn one_like(&self) -> Self {
        CycNum::one(self.order())
    }
    fn is_zero(&self) -> bool {
        CycNum::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Self {
        self.try_div(o).expect("division by zero")
    }
}

/// Solves `a · x = b` exactly, requiring a unique solution.
///
/// `a` is given row-major with `unknowns` columns; `zero` fixes the scalar
/// context for empty systems.
pub fn solve<F: Field>(a: &[Vec<F>], b: &[F], unknowns: usize, zero: &F) -> Result<Vec<F>, ExactError> {
    let rows = a.len();
    // augmented matrix
    let mut m: Vec<Vec<F>> = a
        .iter()
        .zip(b)
        .map(|(r, v)| {
            let mut row = r.clone();
            row.push(v.clone());
            row
        })
        .collect();
    let mut prev = zero.one_like();
    let mut pivots: Vec<usize> = vec![];
    let mut r = 0;
    for c in 0..unknowns {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, pr);
        for i in r + 1..rows {
            for j in 0..=unknowns {
                if j == c {
                    continue;
                }
                let v = m[r][c].mul(&m[i][j]).sub(&m[i][c].mul(&m[r][j])).div(&prev);
                m[i][j] = v;
            }
            m[i][c] = zero.clone();
        }
        prev = m[r][c].clone();
        pivots.push(c);
        r += 1;
    }
    for row in m.iter().skip(r) {
        if !row[unknowns].is_zero() {
            return Err(ExactError::NoSolution("inconsistent linear system".into()));
        }
    }
    if pivots.len() < unknowns {
        return Err(ExactError::AmbiguousSolution { rank: pivots.len(), unknowns });
    }
    let mut x = vec![zero.clone(); unknowns];
    for (ri, &c) in pivots.iter().enumerate().rev() {
        let mut acc = m[ri][unknowns].clone();
        for j in c + 1..unknowns {
            acc = acc.sub(&m[ri][j].mul(&x[j]));
        }
        x[c] = acc.div(&m[ri][c]);
    }
    Ok(x)
}

/// Reduced row echelon form in place; returns pivot columns.
pub fn rref<F: Field>(m: &mut [Vec<F>], cols: usize) -> Vec<usize> {
    let rows = m.len();
    let mut pivots = vec![];
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, pr);
        let inv = m[r][c].one_like().div(&m[r][c]);
        for j in c..cols {
            m[r][j] = m[r][j].mul(&inv);
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..cols {
                    let v = m[i][j].sub(&f.mul(&m[r][j]));
                    m[i][j] = v;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// A basis of the right kernel of `a` (row-major, `cols` columns).
pub fn nullspace<F: Field>(a: &[Vec<F>], cols: usize, zero: &F) -> Vec<Vec<F>> {
    let mut m = a.to_vec();
    let pivots = rref(&mut m, cols);
    let mut basis = vec![];
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![zero.clone(); cols];
        v[free] = zero.one_like();
        for (ri, &pc) in pivots.iter().enumerate() {
            v[pc] = zero.sub(&m[ri][free]);
        }
        basis.push(v);
    }
    basis
}

/// Rank of a matrix.
pub fn rank<F: Field>(a: &[Vec<F>], cols: usize) -> usize {
    let mut m = a.to_vec();
    rref(&mut m, cols).len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    #[test]
    fn unique_solution() {
        let a = vec![vec![q(2), q(1)], vec![q(1), q(3)], vec![q(3), q(4)]];
        let b = vec![q(5), q(10), q(15)];
        let x = solve(&a, &b, 2, &q(0)).unwrap();
        assert_eq!(x, vec![q(1), q(3)]);
    }

    #[test]
    fn inconsistent() {
        let a = vec![vec![q(1)], vec![q(1)]];
        let b = vec![q(1), q(2)];
        assert!(matches!(solve(&a, &b, 1, &q(0)), Err(ExactError::NoSolution(_))));
    }

    #[test]
    fn underdetermined() {
        let a = vec![vec![q(1), q(1)]];
        let b = vec![q(1)];
        assert!(matches!(solve(&a, &b, 2, &q(0)), Err(ExactError::AmbiguousSolution { .. })));
    }

    #[test]
    fn kernel() {
        let a = vec![vec![q(1), q(2), q(3)], vec![q(2), q(4), q(6)]];
        let k = nullspace(&a, 3, &q(0));
        assert_eq!(k.len(), 2);
        for v in &k {
            for row in &a {
                let s = row.iter().zip(v).fold(q(0), |acc, (x, y)| acc + x * y);
                assert!(Zero::is_zero(&s));
            }
        }
    }

    #[test]
    fn pivot_skips_zero_column() {
        let a = vec![vec![q(0), q(1), q(0)], vec![q(0), q(0), q(2)], vec![q(1), q(0), q(0)]];
        let b = vec![q(4), q(6), q(7)];
        assert_eq!(solve(&a, &b, 3, &q(0)).unwrap(), vec![q(7), q(4), q(3)]);
    }
}
