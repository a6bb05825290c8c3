//! Irreducible representations of G(m,1,2) as m-tuples of Young diagrams
//! with two cells, their restrictions to G(m,p,2), and characters computed
//! from explicit action matrices on standard tableaux.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::cyclotomic::CycNum;
use crate::error::{Error, Result};
use crate::group::GroupElement;

/// A two-cell m-tuple of Young diagrams.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Diagram {
    /// [2] in one slot.
    Row(u32),
    /// [1,1] in one slot.
    Col(u32),
    /// One box in slot i and one in slot j, i < j.
    Pair(u32, u32),
}

/// A partition of at most two cells, as it sits in one slot.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SlotShape {
    Empty,
    Box,
    Row,
    Col,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TupleDiagram {
    pub m: u32,
    pub kind: Diagram,
}

impl TupleDiagram {
    pub fn new(m: u32, kind: Diagram) -> Self {
        let kind = match kind {
            Diagram::Row(a) => Diagram::Row(a % m),
            Diagram::Col(a) => Diagram::Col(a % m),
            Diagram::Pair(i, j) => {
                let (i, j) = (i % m, j % m);
                assert!(i != j, "two boxes in one slot form [2] or [1,1]");
                Diagram::Pair(i.min(j), i.max(j))
            }
        };
        TupleDiagram { m, kind }
    }

    /// The m slots as partitions.
    pub fn slots(&self) -> Vec<SlotShape> {
        let mut s = vec![SlotShape::Empty; self.m as usize];
        match self.kind {
            Diagram::Row(a) => s[a as usize] = SlotShape::Row,
            Diagram::Col(a) => s[a as usize] = SlotShape::Col,
            Diagram::Pair(i, j) => {
                s[i as usize] = SlotShape::Box;
                s[j as usize] = SlotShape::Box;
            }
        }
        s
    }

    pub fn dim(&self) -> usize {
        match self.kind {
            Diagram::Pair(..) => 2,
            _ => 1,
        }
    }

    /// Shift every slot by k (the twist by δ₁^k).
    pub fn shift(&self, k: u32) -> Self {
        let m = self.m;
        match self.kind {
            Diagram::Row(a) => Self::new(m, Diagram::Row(a + k)),
            Diagram::Col(a) => Self::new(m, Diagram::Col(a + k)),
            Diagram::Pair(i, j) => Self::new(m, Diagram::Pair(i + k, j + k)),
        }
    }

    /// Standard tableaux, for a pair the one with 1 in the lower slot first.
    pub fn standard_tableaux(&self) -> Vec<TupleTableau> {
        match self.kind {
            Diagram::Pair(i, j) => vec![TupleTableau { shape: *self, one_at: i }, TupleTableau { shape: *self, one_at: j }],
            Diagram::Row(a) | Diagram::Col(a) => vec![TupleTableau { shape: *self, one_at: a }],
        }
    }
}

impl fmt::Display for TupleDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            Diagram::Row(a) => write!(f, "2@{}", a),
            Diagram::Col(a) => write!(f, "11@{}", a),
            Diagram::Pair(i, j) => write!(f, "1@{},1@{}", i, j),
        }
    }
}

/// A cell of a tuple tableau: slot, row, column and entry.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Cell {
    pub slot: u32,
    pub row: u32,
    pub col: u32,
    pub entry: u32,
}

/// A filling of a two-cell diagram by 1 and 2. For one-slot shapes the
/// only standard filling puts 1 first; `one_at` records the slot of 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TupleTableau {
    pub shape: TupleDiagram,
    pub one_at: u32,
}

impl TupleTableau {
    pub fn cells(&self) -> Vec<Cell> {
        match self.shape.kind {
            Diagram::Row(a) => vec![Cell { slot: a, row: 0, col: 0, entry: 1 }, Cell { slot: a, row: 0, col: 1, entry: 2 }],
            Diagram::Col(a) => vec![Cell { slot: a, row: 0, col: 0, entry: 1 }, Cell { slot: a, row: 1, col: 0, entry: 2 }],
            Diagram::Pair(i, j) => {
                let other = if self.one_at == i { j } else { i };
                let mut c = vec![Cell { slot: self.one_at, row: 0, col: 0, entry: 1 }, Cell { slot: other, row: 0, col: 0, entry: 2 }];
                c.sort_by_key(|c| c.slot);
                c
            }
        }
    }

    /// Rows and columns increase inside every slot.
    pub fn is_standard(&self) -> bool {
        let cells = self.cells();
        cells.iter().all(|a| {
            cells.iter().all(|b| {
                if a.slot != b.slot || a == b {
                    return true;
                }
                let right_or_below = (a.row == b.row && a.col < b.col) || (a.col == b.col && a.row < b.row);
                !right_or_below || a.entry < b.entry
            })
        })
    }

    pub fn slot_of(&self, entry: u32) -> u32 {
        self.cells().iter().find(|c| c.entry == entry).map(|c| c.slot).unwrap()
    }

    /// The tableau with both slots shifted by k.
    pub fn shift(&self, k: u32) -> Self {
        let m = self.shape.m;
        TupleTableau { shape: self.shape.shift(k), one_at: (self.one_at + k) % m }
    }
}

impl fmt::Display for TupleTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = match self.shape.kind {
            Diagram::Row(a) => vec![format!("[1 2]@{}", a)],
            Diagram::Col(a) => vec![format!("[1/2]@{}", a)],
            Diagram::Pair(..) => self.cells().iter().map(|c| format!("[{}]@{}", c.entry, c.slot)).collect(),
        };
        f.write_str(&parts.join(" "))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Generator {
    S1,
    S2,
}

/// s₁ scales by ξ^i with 1 in slot i; s₂ fixes a row, negates a column and
/// otherwise exchanges the two entries.
pub fn generator_action(t: &TupleTableau, gen: Generator) -> Vec<(CycNum, TupleTableau)> {
    let m = t.shape.m;
    match gen {
        Generator::S1 => vec![(CycNum::root_power(m, t.one_at as i64), *t)],
        Generator::S2 => match t.shape.kind {
            Diagram::Row(_) => vec![(CycNum::one(m), *t)],
            Diagram::Col(_) => vec![(-&CycNum::one(m), *t)],
            Diagram::Pair(i, j) => {
                let other = if t.one_at == i { j } else { i };
                vec![(CycNum::one(m), TupleTableau { shape: t.shape, one_at: other })]
            }
        },
    }
}

pub type Mat = Vec<Vec<CycNum>>;

pub(crate) fn mat_mul(a: &Mat, b: &Mat) -> Mat {
    let n = a.len();
    let k = b.len();
    let c = b.first().map_or(0, |r| r.len());
    let order = a[0][0].order();
    (0..n)
        .map(|i| {
            (0..c)
                .map(|j| {
                    let mut s = CycNum::zero(order);
                    for l in 0..k {
                        if !a[i][l].is_zero() && !b[l][j].is_zero() {
                            s = &s + &(&a[i][l] * &b[l][j]);
                        }
                    }
                    s
                })
                .collect()
        })
        .collect()
}

/// Matrix of a generator on the standard tableaux (column k = image of k).
pub fn generator_matrix(d: &TupleDiagram, gen: Generator) -> Mat {
    let basis = d.standard_tableaux();
    let n = basis.len();
    let mut mat = vec![vec![CycNum::zero(d.m); n]; n];
    for (k, t) in basis.iter().enumerate() {
        for (c, img) in generator_action(t, gen) {
            let i = basis.iter().position(|b| *b == img).expect("standard image");
            mat[i][k] = &mat[i][k] + &c;
        }
    }
    mat
}

/// ρ(g) for every g ∈ G(m,1,2), extended from the generators along a
/// breadth-first search of the Cayley graph.
pub fn representation_matrices(d: &TupleDiagram) -> HashMap<GroupElement, Mat> {
    let m = d.m;
    let gens = [(GroupElement::s1(m), generator_matrix(d, Generator::S1)), (GroupElement::s2(m), generator_matrix(d, Generator::S2))];
    let n = d.dim();
    let id: Mat = (0..n).map(|i| (0..n).map(|j| if i == j { CycNum::one(m) } else { CycNum::zero(m) }).collect()).collect();
    let mut out = HashMap::new();
    out.insert(GroupElement::identity(m), id);
    let mut queue = VecDeque::from([GroupElement::identity(m)]);
    while let Some(g) = queue.pop_front() {
        let rg = out[&g].clone();
        for (s, rs) in &gens {
            let h = s.mul(&g);
            if let std::collections::hash_map::Entry::Vacant(e) = out.entry(h) {
                e.insert(mat_mul(rs, &rg));
                queue.push_back(h);
            }
        }
    }
    out
}

/// Every irreducible of G(m,1,2): 2m linear ones, then the C(m,2) planes.
pub fn enumerate_irreps(m: u32) -> Vec<TupleDiagram> {
    let mut out = vec![];
    for a in 0..m {
        out.push(TupleDiagram::new(m, Diagram::Row(a)));
    }
    for a in 0..m {
        out.push(TupleDiagram::new(m, Diagram::Col(a)));
    }
    for i in 0..m {
        for j in i + 1..m {
            out.push(TupleDiagram::new(m, Diagram::Pair(i, j)));
        }
    }
    out
}

/// λ ↦ λ ⊗ det: [2]_i → [1,1]_{i+1}, [1,1]_i → [2]_{i+1}, ☐_i☐_j → ☐_{i+1}☐_{j+1}.
pub fn det_twist(d: &TupleDiagram) -> TupleDiagram {
    let m = d.m;
    match d.kind {
        Diagram::Row(a) => TupleDiagram::new(m, Diagram::Col(a + 1)),
        Diagram::Col(a) => TupleDiagram::new(m, Diagram::Row(a + 1)),
        Diagram::Pair(i, j) => TupleDiagram::new(m, Diagram::Pair(i + 1, j + 1)),
    }
}

/// Occupied slots, the key for the canonical representative of a shift orbit.
fn slot_key(d: &TupleDiagram) -> (u32, u32, u8) {
    match d.kind {
        Diagram::Row(a) => (a, a, 0),
        Diagram::Col(a) => (a, a, 1),
        Diagram::Pair(i, j) => (i, j, 2),
    }
}

/// Members of the orbit of λ under shifting by q, in order of first visit.
pub fn shift_orbit(d: &TupleDiagram, q: u32) -> Vec<TupleDiagram> {
    let mut out = vec![*d];
    let mut cur = d.shift(q);
    while cur != *d {
        out.push(cur);
        cur = cur.shift(q);
    }
    out
}

/// b(λ): the least c ≥ 1 with Sh^{cq}(λ) = λ, computed inside Z/p.
pub fn stabilizer_period(d: &TupleDiagram, p: u32) -> u32 {
    let q = d.m / p;
    (1..=p).find(|c| d.shift(c * q) == *d).unwrap()
}

/// An irreducible of G(m,p,2): the canonical member of a shift orbit and,
/// when the restriction splits, the index l of the summand.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IrrepLabel {
    pub m: u32,
    pub p: u32,
    pub parent: TupleDiagram,
    pub split: Option<u32>,
}

impl IrrepLabel {
    pub fn q(&self) -> u32 {
        self.m / self.p
    }

    pub fn dim(&self) -> usize {
        if self.split.is_some() {
            1
        } else {
            self.parent.dim()
        }
    }

    pub fn b(&self) -> u32 {
        stabilizer_period(&self.parent, self.p)
    }

    pub fn u(&self) -> u32 {
        self.p / self.b()
    }

    /// Parses "1@0,1@3", "2@1", "11@1", optionally followed by "#l".
    pub fn parse(s: &str, m: u32, p: u32) -> Result<IrrepLabel> {
        let bad = |why: &str| Error::Shape(format!("{}: '{}'", why, s));
        let (body, split) = match s.split_once('#') {
            Some((b, l)) => (b, Some(l.trim().parse::<u32>().map_err(|_| bad("bad split index"))?)),
            None => (s, None),
        };
        let mut boxes: Vec<(String, u32)> = vec![];
        for part in body.split(',') {
            let (kind, slot) = part.trim().split_once('@').ok_or_else(|| bad("expected shape@slot"))?;
            let slot: u32 = slot.trim().parse().map_err(|_| bad("bad slot"))?;
            if slot >= m {
                return Err(bad("slot out of range"));
            }
            boxes.push((kind.trim().to_string(), slot));
        }
        let kind = match boxes.as_slice() {
            [(k, a)] if k == "2" => Diagram::Row(*a),
            [(k, a)] if k == "11" => Diagram::Col(*a),
            [(k1, i), (k2, j)] if k1 == "1" && k2 == "1" && i != j => Diagram::Pair(*i, *j),
            _ => return Err(bad("expected two cells")),
        };
        let parent = TupleDiagram::new(m, kind);
        let labels = restrict(&parent, p)?;
        match (labels.len(), split) {
            (1, None) => Ok(labels[0]),
            (2, Some(l)) if l < 2 => Ok(labels[l as usize]),
            (2, None) => Err(bad("this shape splits; add #0 or #1")),
            _ => Err(bad("split index given for a shape that does not split")),
        }
    }
}

impl fmt::Display for IrrepLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.parent)?;
        if let Some(l) = self.split {
            write!(f, "#{}", l)?;
        }
        Ok(())
    }
}

/// Restriction of an irreducible of G(m,1,2) to G(m,p,2).
pub fn restrict(d: &TupleDiagram, p: u32) -> Result<Vec<IrrepLabel>> {
    let m = d.m;
    if p == 0 || !m.is_multiple_of(p) {
        return Err(Error::InadmissiblePair { m, p });
    }
    let q = m / p;
    let parent = *shift_orbit(d, q).iter().min_by_key(|x| slot_key(x)).unwrap();
    let u = p / stabilizer_period(&parent, p);
    Ok(match u {
        1 => vec![IrrepLabel { m, p, parent, split: None }],
        2 => (0..2).map(|l| IrrepLabel { m, p, parent, split: Some(l) }).collect(),
        _ => unreachable!("two-cell stabilizers have order at most 2"),
    })
}

/// All irreducibles of G(m,p,2), sorted.
pub fn irreps(m: u32, p: u32) -> Result<Vec<IrrepLabel>> {
    let mut out = vec![];
    for d in enumerate_irreps(m) {
        for l in restrict(&d, p)? {
            if !out.contains(&l) {
                out.push(l);
            }
        }
    }
    out.sort();
    Ok(out)
}

/// The vector spanning a split summand inside the parent plane: P ± T.
fn split_vector(m: u32, l: u32) -> [CycNum; 2] {
    let sign = if l == 0 { CycNum::one(m) } else { -&CycNum::one(m) };
    [CycNum::one(m), sign]
}

/// Character values on `elements`, which must lie in G(m,p,2).
pub fn character_of(label: &IrrepLabel, elements: &[GroupElement]) -> Vec<CycNum> {
    let mats = representation_matrices(&label.parent);
    let m = label.m;
    elements
        .iter()
        .map(|g| {
            let r = &mats[g];
            match label.split {
                None => r.iter().enumerate().fold(CycNum::zero(m), |acc, (i, row)| &acc + &row[i]),
                Some(l) => {
                    let v = split_vector(m, l);
                    let img0 = &(&r[0][0] * &v[0]) + &(&r[0][1] * &v[1]);
                    let img1 = &(&r[1][0] * &v[0]) + &(&r[1][1] * &v[1]);
                    debug_assert_eq!(img1, &img0 * &v[1]);
                    img0
                }
            }
        })
        .collect()
}

/// The label of χ ⊗ det.
pub fn twist_label(label: &IrrepLabel) -> IrrepLabel {
    let twisted = restrict(&det_twist(&label.parent), label.p).expect("p divides m");
    match label.split {
        None => twisted[0],
        // the summands are told apart by their value ±1 on the coordinate swap,
        // and det(swap) = -1
        Some(l) => twisted[(1 - l) as usize],
    }
}

/// Inner product ⟨χ, ψ⟩ = (1/|G|) Σ χ(g)·conj(ψ(g)).
pub fn inner_product(a: &[CycNum], b: &[CycNum]) -> CycNum {
    let m = a[0].order();
    let mut s = CycNum::zero(m);
    for (x, y) in a.iter().zip(b) {
        s = &s + &(x * &y.conj());
    }
    s.scale(&num_rational::BigRational::new(1.into(), (a.len() as i64).into()))
}
