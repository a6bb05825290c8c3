//! Matrix factorizations (z|_χ, j|_{χ⊗det}) of the discriminant, built from
//! Specht bases, plus the bookkeeping needed to reduce and split them.

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::frame::InvariantFrame;
use crate::group::Arrangement;
use crate::rep::{twist_label, IrrepLabel};
use crate::sigma::{SMat, SigmaPoly};
use crate::specht::{isotypic_basis, SpechtBasis};
use crate::xypoly::XYPoly;

/// A graded pair with phi·psi = psi·phi = delta·I.
///
/// Degrees use the x,y grading (deg σ₁ = 2q, deg σ₂ = m). Entry (i,k) of
/// phi has degree `col_degrees[k] - row_degrees[i]`; entry (k,i) of psi has
/// degree `row_degrees[i] + deg delta - col_degrees[k]`.
#[derive(Clone, Debug, PartialEq)]
pub struct MatFac {
    pub phi: SMat,
    pub psi: SMat,
    pub size: usize,
    pub row_degrees: Vec<i64>,
    pub col_degrees: Vec<i64>,
    pub delta: SigmaPoly,
    pub weights: (u32, u32),
}

fn deg(s: &SigmaPoly, w: (u32, u32)) -> Result<Option<i64>> {
    Ok(s.weighted_degree(w.0, w.1)?.map(i64::from))
}

impl MatFac {
    /// Checks both products and the degree pattern.
    pub fn verify(&self) -> Result<()> {
        let n = self.size;
        let fail = |why: &str| Err(Error::MFIdentityFailure(why.to_string()));
        if self.phi.rows() != n || self.phi.cols() != n || self.psi.rows() != n || self.psi.cols() != n {
            return fail("shape");
        }
        if n > 0 && (!self.phi.mul(&self.psi).is_scalar_of(&self.delta) || !self.psi.mul(&self.phi).is_scalar_of(&self.delta)) {
            return fail("phi·psi ≠ Δ·I");
        }
        let dd = deg(&self.delta, self.weights)?.unwrap_or(0);
        for i in 0..n {
            for k in 0..n {
                let want = self.col_degrees[k] - self.row_degrees[i];
                if let Some(d) = deg(self.phi.get(i, k), self.weights)? {
                    if d != want {
                        return fail("phi entry degree");
                    }
                }
                if let Some(d) = deg(self.psi.get(k, i), self.weights)? {
                    if d != dd - want {
                        return fail("psi entry degree");
                    }
                }
            }
        }
        Ok(())
    }

    /// The swapped pair (psi, phi); its cokernel is the first syzygy.
    pub fn syzygy_pair(&self) -> MatFac {
        let dd = deg(&self.delta, self.weights).ok().flatten().unwrap_or(0);
        MatFac {
            phi: self.psi.clone(),
            psi: self.phi.clone(),
            size: self.size,
            row_degrees: self.col_degrees.clone(),
            col_degrees: self.row_degrees.iter().map(|d| d + dd).collect(),
            delta: self.delta.clone(),
            weights: self.weights,
        }
    }

    /// Restriction to the given rows of phi and columns of phi.
    pub fn sub_block(&self, rows: &[usize], cols: &[usize]) -> MatFac {
        MatFac {
            phi: self.phi.sub_matrix(rows, cols),
            psi: self.psi.sub_matrix(cols, rows),
            size: rows.len(),
            row_degrees: rows.iter().map(|&i| self.row_degrees[i]).collect(),
            col_degrees: cols.iter().map(|&k| self.col_degrees[k]).collect(),
            delta: self.delta.clone(),
            weights: self.weights,
        }
    }

    /// Block diagonal sum.
    pub fn direct_sum(&self, o: &MatFac) -> MatFac {
        MatFac {
            phi: self.phi.direct_sum(&o.phi),
            psi: self.psi.direct_sum(&o.psi),
            size: self.size + o.size,
            row_degrees: self.row_degrees.iter().chain(&o.row_degrees).copied().collect(),
            col_degrees: self.col_degrees.iter().chain(&o.col_degrees).copied().collect(),
            delta: self.delta.clone(),
            weights: self.weights,
        }
    }

    pub fn has_unit_entry(&self) -> bool {
        self.unit_position().is_some()
    }

    fn unit_position(&self) -> Option<(usize, usize)> {
        (0..self.size).flat_map(|i| (0..self.size).map(move |k| (i, k))).find(|&(i, k)| self.phi.get(i, k).is_unit())
    }

    /// Splits off every (c, Δ/c) summand with c a nonzero constant, by
    /// elementary row and column operations on phi (psi follows through the
    /// inverse operations). Returns the reduced pair and the number of unit
    /// summands removed.
    pub fn stable_reduction(&self) -> (MatFac, usize) {
        let mut cur = self.clone();
        let mut removed = 0;
        while let Some((i, k)) = cur.unit_position() {
            let c = cur.phi.get(i, k).as_constant().unwrap();
            let n = cur.size;
            for r in 0..n {
                if r == i || cur.phi.get(r, k).is_zero() {
                    continue;
                }
                // row_r -= a·row_i on phi; col_i += a·col_r on psi
                let a = cur.phi.get(r, k).scale(&(BigRational::from_integer(1.into()) / &c));
                for t in 0..n {
                    let v = cur.phi.get(r, t) - &(&a * cur.phi.get(i, t));
                    cur.phi.set(r, t, v);
                    let w = cur.psi.get(t, i) + &(&a * cur.psi.get(t, r));
                    cur.psi.set(t, i, w);
                }
            }
            for t in 0..n {
                if t == k || cur.phi.get(i, t).is_zero() {
                    continue;
                }
                // col_t -= b·col_k on phi; row_k += b·row_t on psi
                let b = cur.phi.get(i, t).scale(&(BigRational::from_integer(1.into()) / &c));
                for r in 0..n {
                    let v = cur.phi.get(r, t) - &(&b * cur.phi.get(r, k));
                    cur.phi.set(r, t, v);
                    let w = cur.psi.get(k, r) + &(&b * cur.psi.get(t, r));
                    cur.psi.set(k, r, w);
                }
            }
            let rows: Vec<usize> = (0..n).filter(|&r| r != i).collect();
            let cols: Vec<usize> = (0..n).filter(|&t| t != k).collect();
            cur = cur.sub_block(&rows, &cols);
            removed += 1;
        }
        (cur, removed)
    }

    /// Connected components of the support graph (rows of phi against its
    /// columns, an edge for each nonzero entry of phi or psiᵀ). Returns the
    /// input alone when some component is not square.
    pub fn block_split(&self) -> Vec<MatFac> {
        let n = self.size;
        if n <= 1 {
            return vec![self.clone()];
        }
        // union-find on 0..n rows, n..2n columns
        let mut parent: Vec<usize> = (0..2 * n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            p[x] = r;
            r
        }
        for i in 0..n {
            for k in 0..n {
                if !self.phi.get(i, k).is_zero() || !self.psi.get(k, i).is_zero() {
                    let (a, b) = (find(&mut parent, i), find(&mut parent, n + k));
                    parent[a] = b;
                }
            }
        }
        let mut comps: Vec<(usize, Vec<usize>, Vec<usize>)> = vec![];
        for x in 0..2 * n {
            let r = find(&mut parent, x);
            let idx = match comps.iter().position(|c| c.0 == r) {
                Some(idx) => idx,
                None => {
                    comps.push((r, vec![], vec![]));
                    comps.len() - 1
                }
            };
            if x < n {
                comps[idx].1.push(x);
            } else {
                comps[idx].2.push(x - n);
            }
        }
        if comps.len() == 1 || comps.iter().any(|c| c.1.len() != c.2.len()) {
            return vec![self.clone()];
        }
        comps.sort_by_key(|c| c.1[0]);
        comps.iter().map(|c| self.sub_block(&c.1, &c.2)).collect()
    }
}

/// Column k = coordinates of mult·src[k] in the dst basis.
pub fn restriction_matrix(mult: &XYPoly, src: &[XYPoly], dst: &[XYPoly], frame: &InvariantFrame) -> Result<SMat> {
    let mut m = SMat::zeros(dst.len(), src.len());
    for (k, s) in src.iter().enumerate() {
        let coords = frame.express_in_basis(&(mult * s), dst)?;
        for (i, c) in coords.into_iter().enumerate() {
            m.set(i, k, c);
        }
    }
    Ok(m)
}

/// The pair (z restricted to src → dst, j restricted to dst → src).
pub fn mf_from_bases(src: &[XYPoly], dst: &[XYPoly], arr: &Arrangement) -> Result<MatFac> {
    let frame = &arr.frame;
    let phi = restriction_matrix(&arr.z, src, dst, frame)?;
    let psi = restriction_matrix(&arr.j, dst, src, frame)?;
    let hdeg = |f: &XYPoly| f.homogeneous_degree().map(|d| d.unwrap_or(0) as i64);
    let dz = hdeg(&arr.z)?;
    let src_deg = src.iter().map(hdeg).collect::<std::result::Result<Vec<_>, _>>()?;
    let dst_deg = dst.iter().map(hdeg).collect::<std::result::Result<Vec<_>, _>>()?;
    let mf = MatFac {
        phi,
        psi,
        size: src.len(),
        row_degrees: dst_deg,
        col_degrees: src_deg.iter().map(|d| d + dz).collect(),
        delta: arr.delta.clone(),
        weights: frame.weights(),
    };
    mf.verify()?;
    Ok(mf)
}

/// Builds and certifies the factorization attached to one irreducible.
pub fn build_mf(label: &IrrepLabel, arr: &Arrangement) -> Result<MatFac> {
    let src = isotypic_basis(label);
    let dst = isotypic_basis(&twist_label(label));
    build_mf_from(&src, &dst, arr)
}

pub fn build_mf_from(src: &SpechtBasis, dst: &SpechtBasis, arr: &Arrangement) -> Result<MatFac> {
    let n = src.label.dim().pow(2);
    if src.len() != n || dst.len() != n {
        return Err(Error::MFIdentityFailure(format!("basis size for {} is {}, expected {}", src.label, src.len(), n)));
    }
    mf_from_bases(&src.polys(), &dst.polys(), arr).map_err(|e| match e {
        Error::MFIdentityFailure(w) => Error::MFIdentityFailure(format!("{}: {}", src.label, w)),
        other => other,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rep::{irreps, Diagram, TupleDiagram};

    fn s(t: &str) -> SigmaPoly {
        SigmaPoly::parse(t).unwrap()
    }

    #[test]
    fn last_slots_shape() {
        let arr = Arrangement::new(4, 1).unwrap();
        let l = crate::rep::restrict(&TupleDiagram::new(4, Diagram::Pair(2, 3)), 1).unwrap()[0];
        let mf = build_mf(&l, &arr).unwrap();
        assert_eq!(mf.size, 4);
        let blocks = mf.block_split();
        assert_eq!(blocks.len(), 2);
        for b in &blocks {
            assert_eq!(b.size, 2);
            b.verify().unwrap();
        }
    }

    #[test]
    fn every_irrep_small() {
        for (m, p) in [(6, 3), (4, 2), (3, 3), (2, 1), (4, 4)] {
            let arr = Arrangement::new(m, p).unwrap();
            let mut total = 0;
            for l in irreps(m, p).unwrap() {
                let mf = build_mf(&l, &arr).unwrap();
                assert_eq!(mf.size, l.dim() * l.dim());
                let d = &mf.phi.det() * &mf.psi.det();
                assert_eq!(d, arr.delta.pow(mf.size as u32));
                total += mf.size;
            }
            assert_eq!(total, arr.order());
        }
    }

    #[test]
    fn trivial_and_det() {
        let arr = Arrangement::new(5, 1).unwrap();
        let triv = IrrepLabel::parse("2@0", 5, 1).unwrap();
        let mf = build_mf(&triv, &arr).unwrap();
        assert_eq!(mf.phi.get(0, 0), &SigmaPoly::one());
        let (red, k) = mf.stable_reduction();
        assert_eq!((red.size, k), (0, 1));
        let last = IrrepLabel::parse("11@4", 5, 1).unwrap();
        let mf = build_mf(&last, &arr).unwrap();
        assert!(mf.phi.get(0, 0).proportional_to(&arr.delta).is_some());
    }

    #[test]
    fn syzygy_swaps() {
        let delta = s("s1*s2^2 - 4*s1^2");
        let mf = MatFac {
            phi: SMat::from_rows(vec![vec![s("s1")]]),
            psi: SMat::from_rows(vec![vec![s("s2^2 - 4*s1")]]),
            size: 1,
            row_degrees: vec![0],
            col_degrees: vec![6],
            delta,
            weights: (6, 3),
        };
        mf.verify().unwrap();
        let sw = mf.syzygy_pair();
        sw.verify().unwrap();
        assert_eq!(sw.phi.get(0, 0), &s("s2^2 - 4*s1"));
        let back = sw.syzygy_pair();
        assert_eq!((&back.phi, &back.psi), (&mf.phi, &mf.psi));
        assert_eq!(back.row_degrees[0] - mf.row_degrees[0], back.col_degrees[0] - mf.col_degrees[0]);
    }

    #[test]
    fn reduction_removes_units() {
        for (m, p) in [(4, 4), (6, 6), (6, 2)] {
            let arr = Arrangement::new(m, p).unwrap();
            for l in irreps(m, p).unwrap() {
                let (red, _) = build_mf(&l, &arr).unwrap().stable_reduction();
                red.verify().unwrap();
                assert!(!red.has_unit_entry());
            }
        }
    }
}
