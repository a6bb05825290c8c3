//! Higher Specht polynomials for two-cell tuple tableaux and the bases of
//! isotypic components built from them.

use std::collections::BTreeSet;

use crate::cyclotomic::CycNum;
use crate::linalg;
use crate::rep::{shift_orbit, Cell, Diagram, IrrepLabel, TupleDiagram, TupleTableau};
use crate::xypoly::XYPoly;

/// Cells of Q paired with their index i(Q).
pub type IndexTableau = Vec<(Cell, u32)>;

/// Reading word of Q (slots left to right, columns left to right, each
/// column bottom to top) and the index of every cell: i(1) = 0 and
/// i(k+1) = i(k) + 1 exactly when k+1 is read before k.
pub fn word_and_index(q: &TupleTableau) -> (Vec<u32>, IndexTableau) {
    let mut cells = q.cells();
    cells.sort_by_key(|a| (a.slot, a.col, std::cmp::Reverse(a.row)));
    let word: Vec<u32> = cells.iter().map(|c| c.entry).collect();
    let pos = |e: u32| word.iter().position(|&w| w == e).unwrap();
    let n = word.len() as u32;
    let mut idx = vec![0u32; n as usize + 1];
    for k in 1..n {
        idx[k as usize + 1] = idx[k as usize] + u32::from(pos(k + 1) < pos(k));
    }
    let it = cells.iter().map(|c| (*c, idx[c.entry as usize])).collect();
    (word, it)
}

fn var_monomial(m: u32, exps: [u32; 2]) -> XYPoly {
    XYPoly::monomial(m, exps[0], exps[1])
}

/// Δ_{Q,T}: per slot a, the Young symmetrizer of T^{(a)} applied to
/// Π x_{T(c)}^{m·i(Q)(c)}, times Π_{k ∈ T^{(a)}} x_k^a. Variables x₁ = x, x₂ = y.
pub fn higher_specht(q: &TupleTableau, t: &TupleTableau) -> XYPoly {
    assert_eq!(q.shape, t.shape, "Q and T must share a shape");
    let m = q.shape.m;
    let (_, iq) = word_and_index(q);
    let tcells = t.cells();
    let entry_of_t = |c: &Cell| tcells.iter().find(|d| d.slot == c.slot && d.row == c.row && d.col == c.col).unwrap().entry;
    let slots: BTreeSet<u32> = tcells.iter().map(|c| c.slot).collect();
    let mut out = XYPoly::one(m);
    for a in slots {
        let mut inner = [0u32; 2];
        let mut outer = [0u32; 2];
        for (c, i) in iq.iter().filter(|(c, _)| c.slot == a) {
            let k = entry_of_t(c) as usize - 1;
            inner[k] += m * i;
            outer[k] += a;
        }
        let mono = var_monomial(m, inner);
        let swapped = var_monomial(m, [inner[1], inner[0]]);
        let half = num_rational::BigRational::new(1.into(), 2.into());
        let sym = match t.shape.kind {
            Diagram::Row(s) if s == a => (&mono + &swapped).scale_rational(&half),
            Diagram::Col(s) if s == a => (&mono - &swapped).scale_rational(&half),
            _ => mono,
        };
        out = &(&out * &sym) * &var_monomial(m, outer);
    }
    out
}

/// Δ^{(l)}_{Q,T} = Σ_{k<u} ξ^{l·k·d·b} Δ_{Q, Sh^{kb}T}, with Sh the shift by q.
pub fn higher_specht_l(q: &TupleTableau, t: &TupleTableau, l: u32, p: u32, d: u32) -> XYPoly {
    let m = q.shape.m;
    let qq = m / p;
    let b = crate::rep::stabilizer_period(&q.shape, p);
    let u = p / b;
    let mut out = XYPoly::zero(m);
    for k in 0..u {
        let tk = t.shift(k * b * qq);
        let c = CycNum::root_power(m, (l * k * d * b) as i64);
        out = &out + &higher_specht(q, &tk).scale(&c);
    }
    out
}

/// Standard tableaux with 1 in a slot below h.
pub fn stab_h(d: &TupleDiagram, h: u32) -> Vec<TupleTableau> {
    d.standard_tableaux().into_iter().filter(|t| t.slot_of(1) < h).collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct SpechtEntry {
    pub shape: TupleDiagram,
    pub q: TupleTableau,
    pub t: TupleTableau,
    pub poly: XYPoly,
}

/// An R-basis of the isotypic component of one irreducible.
#[derive(Clone, Debug, PartialEq)]
pub struct SpechtBasis {
    pub label: IrrepLabel,
    pub entries: Vec<SpechtEntry>,
}

impl SpechtBasis {
    pub fn polys(&self) -> Vec<XYPoly> {
        self.entries.iter().map(|e| e.poly.clone()).collect()
    }

    pub fn degrees(&self) -> Vec<u32> {
        self.entries.iter().map(|e| e.poly.homogeneous_degree().unwrap().unwrap()).collect()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

fn is_independent(polys: &[XYPoly], cand: &XYPoly) -> bool {
    let mut all: Vec<&XYPoly> = polys.iter().collect();
    all.push(cand);
    let monos: BTreeSet<(u32, u32)> = all.iter().flat_map(|p| p.terms().keys().copied()).collect();
    let rows: Vec<Vec<CycNum>> = monos.iter().map(|&(a, b)| all.iter().map(|p| p.coeff(a, b)).collect()).collect();
    linalg::rank(&rows, all.len()) == all.len()
}

/// Collects Δ^{(l)}_{S,T} over the members μ of the shift orbit (canonical
/// member first), S ∈ STab(μ)_q and T ∈ STab(μ), keeps an independent
/// subset and scales each polynomial to leading coefficient 1.
pub fn isotypic_basis(label: &IrrepLabel) -> SpechtBasis {
    isotypic_basis_with(label, label.q())
}

/// As [`isotypic_basis`] with an explicit value for the root exponent d.
pub fn isotypic_basis_with(label: &IrrepLabel, d: u32) -> SpechtBasis {
    let q = label.q();
    let mut entries: Vec<SpechtEntry> = vec![];
    let mut polys: Vec<XYPoly> = vec![];
    for mu in shift_orbit(&label.parent, q) {
        for s in stab_h(&mu, q) {
            for t in mu.standard_tableaux() {
                let raw = match label.split {
                    None => higher_specht(&s, &t),
                    Some(l) => higher_specht_l(&s, &t, l, label.p, d),
                };
                if raw.is_zero() || !is_independent(&polys, &raw) {
                    continue;
                }
                let poly = raw.normalized();
                polys.push(poly.clone());
                entries.push(SpechtEntry { shape: mu, q: s, t, poly });
            }
        }
    }
    SpechtBasis { label: *label, entries }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rep::restrict;

    fn pair(m: u32, i: u32, j: u32) -> TupleDiagram {
        TupleDiagram::new(m, Diagram::Pair(i, j))
    }

    #[test]
    fn words_and_indices() {
        let d = pair(5, 1, 3);
        let [q, t] = <[TupleTableau; 2]>::try_from(d.standard_tableaux()).unwrap();
        let (w, i) = word_and_index(&q);
        assert_eq!(w, vec![1, 2]);
        assert_eq!(i.iter().map(|x| x.1).collect::<Vec<_>>(), vec![0, 0]);
        let (w, i) = word_and_index(&t);
        assert_eq!(w, vec![2, 1]);
        assert_eq!(i.iter().map(|x| x.1).collect::<Vec<_>>(), vec![1, 0]);
        let r = TupleDiagram::new(5, Diagram::Row(2)).standard_tableaux()[0];
        assert_eq!(word_and_index(&r).1.iter().map(|x| x.1).collect::<Vec<_>>(), vec![0, 0]);
    }

    #[test]
    fn spec_example() {
        let (m, a, b) = (5, 1, 3);
        let [q, t] = <[TupleTableau; 2]>::try_from(pair(m, a, b).standard_tableaux()).unwrap();
        assert_eq!(higher_specht(&q, &t), XYPoly::monomial(m, b, a));
        assert_eq!(higher_specht(&t, &t), XYPoly::monomial(m, b, a + m));
    }

    #[test]
    fn one_dimensional_shapes() {
        let m = 4;
        let row0 = TupleDiagram::new(m, Diagram::Row(0)).standard_tableaux()[0];
        assert_eq!(higher_specht(&row0, &row0), XYPoly::one(m));
        let col1 = TupleDiagram::new(m, Diagram::Col(1)).standard_tableaux()[0];
        let z = &XYPoly::monomial(m, 1, 1) * &(&XYPoly::monomial(m, m, 0) - &XYPoly::monomial(m, 0, m));
        let h = higher_specht(&col1, &col1);
        assert_eq!(h.normalized(), z);
        assert_ne!(h, z);
    }

    #[test]
    fn monomial_basis_m4() {
        let m = 6;
        let l = restrict(&pair(m, 1, 4), 1).unwrap()[0];
        let b = isotypic_basis(&l);
        let mono = |a, c| XYPoly::monomial(m, a, c);
        assert_eq!(b.polys(), vec![mono(1, 4), mono(4, 1), mono(1 + m, 4), mono(4, 1 + m)]);
    }

    #[test]
    fn split_basis() {
        let l = restrict(&pair(4, 0, 2), 2).unwrap();
        let b0 = isotypic_basis(&l[0]).polys();
        let b1 = isotypic_basis(&l[1]).polys();
        assert_eq!(b0, vec![&XYPoly::monomial(4, 2, 0) + &XYPoly::monomial(4, 0, 2)]);
        assert_eq!(b1, vec![&XYPoly::monomial(4, 2, 0) - &XYPoly::monomial(4, 0, 2)]);
    }

    #[test]
    fn sizes_are_dim_squared() {
        for (m, p) in [(6, 3), (6, 2), (5, 5), (6, 6), (4, 1)] {
            for l in crate::rep::irreps(m, p).unwrap() {
                assert_eq!(isotypic_basis(&l).len(), l.dim() * l.dim(), "{} in ({},{})", l, m, p);
            }
        }
    }
}
