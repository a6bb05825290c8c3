//! G(m,p,2) as monomial matrices, its reflecting hyperplanes, their orbits,
//! and the arrangement polynomials z, j, δ, Δ and Δ_𝔒.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use crate::cyclotomic::CycNum;
use crate::error::{Error, ExactError, Result};
use crate::frame::InvariantFrame;
use crate::sigma::SigmaPoly;
use crate::xypoly::XYPoly;

/// Rejects pairs outside the irreducible rank-2 family.
pub fn check_admissible(m: u32, p: u32) -> Result<()> {
    if m < 2 || p == 0 || !m.is_multiple_of(p) || (m == 2 && p == 2) {
        return Err(Error::InadmissiblePair { m, p });
    }
    Ok(())
}

/// All admissible pairs with m ≤ m_max, ordered by m then p.
pub fn admissible_pairs(m_max: u32) -> Vec<(u32, u32)> {
    let mut out = vec![];
    for m in 2..=m_max {
        for p in 1..=m {
            if check_admissible(m, p).is_ok() {
                out.push((m, p));
            }
        }
    }
    out
}

/// The matrix P·diag(ξ^a, ξ^b), P the identity or the swap.
///
/// As a map on the basis x, y of V it sends x ↦ ξ^a·P(x), y ↦ ξ^b·P(y).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    swap: bool,
    a: u32,
    b: u32,
    m: u32,
}

impl GroupElement {
    pub fn new(m: u32, swap: bool, a: i64, b: i64) -> Self {
        let md = m as i64;
        GroupElement { swap, a: a.rem_euclid(md) as u32, b: b.rem_euclid(md) as u32, m }
    }

    pub fn identity(m: u32) -> Self {
        Self::new(m, false, 0, 0)
    }

    /// s₁ = diag(ξ, 1).
    pub fn s1(m: u32) -> Self {
        Self::new(m, false, 1, 0)
    }

    /// s₂ = the coordinate swap.
    pub fn s2(m: u32) -> Self {
        Self::new(m, true, 0, 0)
    }

    pub fn swaps(&self) -> bool {
        self.swap
    }

    pub fn exps(&self) -> (u32, u32) {
        (self.a, self.b)
    }

    pub fn modulus(&self) -> u32 {
        self.m
    }

    pub fn is_identity(&self) -> bool {
        !self.swap && self.a == 0 && self.b == 0
    }

    fn image(&self, i: usize) -> usize {
        if self.swap {
            1 - i
        } else {
            i
        }
    }

    fn d(&self, i: usize) -> u32 {
        if i == 0 {
            self.a
        } else {
            self.b
        }
    }

    /// Matrix product self·o.
    pub fn mul(&self, o: &GroupElement) -> GroupElement {
        // (MN) e_i = ξ^{n_i + m_{π_N(i)}} e_{π_M(π_N(i))}
        let d0 = o.d(0) + self.d(o.image(0));
        let d1 = o.d(1) + self.d(o.image(1));
        GroupElement::new(self.m, self.swap ^ o.swap, d0 as i64, d1 as i64)
    }

    pub fn inverse(&self) -> GroupElement {
        // M^{-1} e_{π(i)} = ξ^{-d_i} e_i
        let mut d = [0i64; 2];
        for i in 0..2 {
            d[self.image(i)] = -(self.d(i) as i64);
        }
        GroupElement::new(self.m, self.swap, d[0], d[1])
    }

    pub fn pow(&self, k: u32) -> GroupElement {
        let mut acc = GroupElement::identity(self.m);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// det(M) = sign(P)·ξ^{a+b}.
    pub fn det(&self) -> CycNum {
        let r = CycNum::root_power(self.m, (self.a + self.b) as i64);
        if self.swap {
            -&r
        } else {
            r
        }
    }

    /// Membership in G(m,p,2): p | a + b.
    pub fn is_member(&self, p: u32) -> bool {
        (self.a + self.b).is_multiple_of(p)
    }

    /// Matrix entries [row][col] over Q(ξ_m).
    pub fn matrix(&self) -> [[CycNum; 2]; 2] {
        let mut mat = [[CycNum::zero(self.m), CycNum::zero(self.m)], [CycNum::zero(self.m), CycNum::zero(self.m)]];
        for i in 0..2 {
            mat[self.image(i)][i] = CycNum::root_power(self.m, self.d(i) as i64);
        }
        mat
    }

    /// A reflection has eigenvalue 1 with multiplicity exactly one.
    pub fn is_reflection(&self) -> bool {
        if self.swap {
            (self.a + self.b).is_multiple_of(self.m)
        } else {
            (self.a == 0) != (self.b == 0)
        }
    }

    /// For a reflection: the eigenvector of the non-trivial eigenvalue det(g),
    /// written as a normalized linear form.
    pub fn reflection_root(&self) -> Option<XYPoly> {
        if !self.is_reflection() {
            return None;
        }
        let lam = self.det();
        let mat = self.matrix();
        let a = &mat[0][0] - &lam;
        let b = mat[0][1].clone();
        let c = mat[1][0].clone();
        let d = &mat[1][1] - &lam;
        // kernel of [[a, b], [c, d]]
        let (vx, vy) = if !a.is_zero() || !b.is_zero() {
            (b.clone(), -&a)
        } else {
            (d.clone(), -&c)
        };
        debug_assert!((&(&a * &vx) + &(&b * &vy)).is_zero() && (&(&c * &vx) + &(&d * &vy)).is_zero());
        let form = &XYPoly::term(vx, 1, 0) + &XYPoly::term(vy, 0, 1);
        Some(form.normalized())
    }

    /// Action on polynomials, see [`XYPoly::substitute`].
    pub fn act(&self, f: &XYPoly) -> XYPoly {
        f.substitute(self)
    }
}

/// Complete element list of G(m,p,2), identity first.
pub fn build_group(m: u32, p: u32) -> Result<Vec<GroupElement>> {
    check_admissible(m, p)?;
    Ok(elements(m, p))
}

pub(crate) fn elements(m: u32, p: u32) -> Vec<GroupElement> {
    let mut out = vec![];
    for swap in [false, true] {
        for a in 0..m {
            for b in 0..m {
                let g = GroupElement::new(m, swap, a as i64, b as i64);
                if g.is_member(p) {
                    out.push(g);
                }
            }
        }
    }
    out
}

/// Order used for canonical labels of linear forms: lexicographic on the
/// coefficient pair (coefficient of x, coefficient of y).
pub fn linear_form_cmp(f: &XYPoly, g: &XYPoly) -> Ordering {
    (f.coeff(1, 0), f.coeff(0, 1)).cmp(&(g.coeff(1, 0), g.coeff(0, 1)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hyperplane {
    pub alpha: XYPoly,
    pub e_h: u32,
    pub orbit_id: usize,
}

#[derive(Clone, Debug)]
pub struct Orbit {
    pub id: usize,
    pub members: Vec<usize>,
    pub e: u32,
    /// Π_{H∈𝔒} α_H.
    pub j_orbit: XYPoly,
    /// j_𝔒^{e}, expressed in σ₁, σ₂.
    pub delta: SigmaPoly,
    /// θ_𝔒(g) for every element, aligned with `Arrangement::elements`.
    pub theta: Vec<CycNum>,
}

/// A linear character θ = Π θ_𝔒^{k_𝔒}, 0 ≤ k_𝔒 < e_𝔒.
#[derive(Clone, Debug)]
pub struct LinearCharacter {
    pub exps: Vec<u32>,
    pub j_theta: XYPoly,
    pub values: Vec<CycNum>,
}

/// Everything about G(m,p,2) that depends only on its reflections.
#[derive(Clone, Debug)]
pub struct Arrangement {
    pub frame: InvariantFrame,
    pub elements: Vec<GroupElement>,
    pub hyperplanes: Vec<Hyperplane>,
    pub orbits: Vec<Orbit>,
    pub z: XYPoly,
    pub j: XYPoly,
    pub delta_xy: XYPoly,
    pub delta: SigmaPoly,
}

impl Arrangement {
    pub fn new(m: u32, p: u32) -> Result<Self> {
        let frame = InvariantFrame::new(m, p)?;
        let elements = build_group(m, p)?;
        let mut alphas: Vec<(XYPoly, u32)> = vec![];
        for g in &elements {
            if let Some(a) = g.reflection_root() {
                match alphas.iter_mut().find(|(b, _)| *b == a) {
                    Some(slot) => slot.1 += 1,
                    None => alphas.push((a, 1)),
                }
            }
        }
        alphas.sort_by(|a, b| linear_form_cmp(&a.0, &b.0));
        let n = alphas.len();
        // orbits by closure under the group action
        let mut orbit_of: Vec<Option<usize>> = vec![None; n];
        let mut orbit_members: Vec<Vec<usize>> = vec![];
        for start in 0..n {
            if orbit_of[start].is_some() {
                continue;
            }
            let id = orbit_members.len();
            let mut members = vec![start];
            orbit_of[start] = Some(id);
            let mut k = 0;
            while k < members.len() {
                let h = members[k];
                for g in &elements {
                    let img = g.act(&alphas[h].0).normalized();
                    let idx = alphas.iter().position(|(b, _)| *b == img).expect("orbit closes on hyperplanes");
                    if orbit_of[idx].is_none() {
                        orbit_of[idx] = Some(id);
                        members.push(idx);
                    }
                }
                k += 1;
            }
            members.sort();
            orbit_members.push(members);
        }
        let hyperplanes: Vec<Hyperplane> = alphas
            .iter()
            .enumerate()
            .map(|(i, (a, c))| Hyperplane { alpha: a.clone(), e_h: c + 1, orbit_id: orbit_of[i].unwrap() })
            .collect();
        let one = XYPoly::one(m);
        let mut z = one.clone();
        let mut j = one.clone();
        for h in &hyperplanes {
            z = &z * &h.alpha;
            j = &j * &h.alpha.pow(h.e_h - 1);
        }
        let delta_xy = &z * &j;
        let delta = frame.express_in_basis(&delta_xy, std::slice::from_ref(&one))?.remove(0);
        let mut orbits = vec![];
        for (id, members) in orbit_members.into_iter().enumerate() {
            let e = hyperplanes[members[0]].e_h;
            assert!(members.iter().all(|&h| hyperplanes[h].e_h == e), "e_H constant on orbits");
            let mut j_orbit = one.clone();
            for &h in &members {
                j_orbit = &j_orbit * &hyperplanes[h].alpha;
            }
            let odelta = frame.express_in_basis(&j_orbit.pow(e), std::slice::from_ref(&one))?.remove(0);
            let theta = elements.iter().map(|g| relative_character(&j_orbit, g)).collect::<Result<Vec<_>>>()?;
            orbits.push(Orbit { id, members, e, j_orbit, delta: odelta, theta });
        }
        Ok(Arrangement { frame, elements, hyperplanes, orbits, z, j, delta_xy, delta })
    }

    pub fn m(&self) -> u32 {
        self.frame.m
    }

    pub fn p(&self) -> u32 {
        self.frame.p
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// Every linear character as a product of orbit characters, in
    /// lexicographic order of the exponent vectors.
    pub fn linear_characters(&self) -> Vec<LinearCharacter> {
        let mut out = vec![];
        let mut exps = vec![0u32; self.orbits.len()];
        loop {
            out.push(self.linear_character(&exps));
            let mut k = exps.len();
            loop {
                if k == 0 {
                    return out;
                }
                k -= 1;
                exps[k] += 1;
                if exps[k] < self.orbits[k].e {
                    break;
                }
                exps[k] = 0;
            }
        }
    }

    pub fn linear_character(&self, exps: &[u32]) -> LinearCharacter {
        let m = self.m();
        let mut j_theta = XYPoly::one(m);
        let mut values = vec![CycNum::one(m); self.elements.len()];
        for (o, &k) in self.orbits.iter().zip(exps) {
            j_theta = &j_theta * &o.j_orbit.pow(k);
            for (v, t) in values.iter_mut().zip(&o.theta) {
                *v = &*v * &t.pow(k);
            }
        }
        LinearCharacter { exps: exps.to_vec(), j_theta, values }
    }

    /// Exponent vector of θ⊗det.
    pub fn twist_exps(&self, exps: &[u32]) -> Vec<u32> {
        exps.iter().zip(&self.orbits).map(|(k, o)| (k + 1) % o.e).collect()
    }

    /// The factor F with z·j_θ = F·j_{θ⊗det}.
    pub fn linear_factor(&self, exps: &[u32]) -> Result<SigmaPoly> {
        let src = self.linear_character(exps);
        let dst = self.linear_character(&self.twist_exps(exps));
        let f = &self.z * &src.j_theta;
        Ok(self.frame.express_in_basis(&f, &[dst.j_theta])?.remove(0))
    }
}

/// c with g·f = c·f; errors when f is not a relative invariant of g.
pub fn relative_character(f: &XYPoly, g: &GroupElement) -> Result<CycNum> {
    let img = g.act(f);
    let (k, c) = f.leading().ok_or_else(|| ExactError::NoSolution("zero polynomial".into()))?;
    let ratio = img.coeff(k.0, k.1).try_div(c)?;
    if img != f.scale(&ratio) {
        return Err(ExactError::NoSolution("not a relative invariant".into()).into());
    }
    Ok(ratio)
}

/// Multiset helper used by tests and reports.
pub fn orbit_sizes(a: &Arrangement) -> BTreeMap<usize, usize> {
    a.orbits.iter().map(|o| (o.id, o.members.len())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn admissibility() {
        assert!(check_admissible(2, 2).is_err());
        assert!(check_admissible(4, 3).is_err());
        assert!(check_admissible(1, 1).is_err());
        assert!(check_admissible(3, 3).is_ok());
        assert_eq!(admissible_pairs(2), vec![(2, 1)]);
    }

    #[test]
    fn orders() {
        assert_eq!(build_group(4, 1).unwrap().len(), 32);
        assert_eq!(build_group(6, 3).unwrap().len(), 24);
        assert!(matches!(build_group(2, 2), Err(Error::InadmissiblePair { .. })));
    }

    #[test]
    fn group_laws() {
        for (m, p) in [(4, 1), (6, 2), (5, 5)] {
            let els = build_group(m, p).unwrap();
            for g in &els {
                assert!(g.mul(&g.inverse()).is_identity());
                for h in &els {
                    assert!(g.mul(h).is_member(p));
                }
            }
        }
    }

    #[test]
    fn multiplication_matches_matrices() {
        let m = 5;
        let els = build_group(m, 1).unwrap();
        for g in els.iter().step_by(7) {
            for h in els.iter().step_by(5) {
                let gh = g.mul(h).matrix();
                let (a, b) = (g.matrix(), h.matrix());
                for i in 0..2 {
                    for j in 0..2 {
                        let v = &(&a[i][0] * &b[0][j]) + &(&a[i][1] * &b[1][j]);
                        assert_eq!(v, gh[i][j]);
                    }
                }
            }
        }
    }

    #[test]
    fn action_is_left_action() {
        let m = 4;
        let f = &XYPoly::monomial(m, 3, 1) + &XYPoly::monomial(m, 0, 2).scale(&CycNum::root_power(m, 1));
        let els = build_group(m, 1).unwrap();
        for g in els.iter().step_by(3) {
            for h in els.iter().step_by(5) {
                assert_eq!(g.mul(h).act(&f), g.act(&h.act(&f)));
            }
        }
    }

    #[test]
    fn generator_examples() {
        let m = 6;
        let xmy = &XYPoly::x(m) - &XYPoly::y(m);
        assert_eq!(GroupElement::s2(m).act(&xmy), -&xmy);
        let a = Arrangement::new(m, 1).unwrap();
        let s1 = GroupElement::s1(m);
        assert_eq!(s1.act(&a.z), a.z.scale(&s1.det()));
        assert_eq!(GroupElement::identity(m).act(&a.z), a.z);
    }
}
