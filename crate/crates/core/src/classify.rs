//! Canonical matrix factorizations of the three discriminant types and the
//! graded equivalence test that names a computed block.
//!
//! Canonical matrices are read in the row convention: the module attached
//! to a displayed pair (φ, ψ) is Rⁿ modulo the row space of φ. Computed
//! factorizations put images in columns, so they are transposed before
//! comparison.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::check_admissible;
use crate::linalg;
use crate::matfac::MatFac;
use crate::sigma::{SMat, SigmaPoly};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Singularity {
    A3,
    Dp2(u32),
    Am1(u32),
}

impl Singularity {
    pub fn of(m: u32, p: u32) -> Singularity {
        if p == 1 {
            Singularity::A3
        } else if p == m {
            Singularity::Am1(m)
        } else {
            Singularity::Dp2(p)
        }
    }
}

impl fmt::Display for Singularity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Singularity::A3 => write!(f, "A3"),
            Singularity::Dp2(p) => write!(f, "D{}", p + 2),
            Singularity::Am1(m) => write!(f, "A{}", m - 1),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CMClass {
    FreeR,
    RmodDelta,
    A,
    B,
    X(u32),
    Y(u32),
    K(u32),
    N(u32),
    Cplus,
    Cminus,
    Dplus,
    Dminus,
    Nplus,
    Nminus,
}

impl fmt::Display for CMClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CMClass::FreeR => write!(f, "FreeR"),
            CMClass::RmodDelta => write!(f, "RmodDelta"),
            CMClass::A => write!(f, "A"),
            CMClass::B => write!(f, "B"),
            CMClass::X(j) => write!(f, "X{j}"),
            CMClass::Y(j) => write!(f, "Y{j}"),
            CMClass::K(j) => write!(f, "K{j}"),
            CMClass::N(j) => write!(f, "N{j}"),
            CMClass::Cplus => write!(f, "C+"),
            CMClass::Cminus => write!(f, "C-"),
            CMClass::Dplus => write!(f, "D+"),
            CMClass::Dminus => write!(f, "D-"),
            CMClass::Nplus => write!(f, "N+"),
            CMClass::Nminus => write!(f, "N-"),
        }
    }
}

impl std::str::FromStr for CMClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let idx = |t: &str| t.parse::<u32>().map_err(|_| Error::Shape(format!("bad class {s}")));
        Ok(match s {
            "FreeR" => CMClass::FreeR,
            "RmodDelta" => CMClass::RmodDelta,
            "A" => CMClass::A,
            "B" => CMClass::B,
            "X" => CMClass::X(1),
            "C+" => CMClass::Cplus,
            "C-" => CMClass::Cminus,
            "D+" => CMClass::Dplus,
            "D-" => CMClass::Dminus,
            "N+" => CMClass::Nplus,
            "N-" => CMClass::Nminus,
            _ if s.starts_with('X') => CMClass::X(idx(&s[1..])?),
            _ if s.starts_with('Y') => CMClass::Y(idx(&s[1..])?),
            _ if s.starts_with('K') => CMClass::K(idx(&s[1..])?),
            _ if s.starts_with('N') => CMClass::N(idx(&s[1..])?),
            _ => return Err(Error::Shape(format!("bad class {s}"))),
        })
    }
}

impl CMClass {
    /// Name within a list: the single X of A₃ carries no index.
    pub fn name(&self, sing: Singularity) -> String {
        match (self, sing) {
            (CMClass::X(1), Singularity::A3) => "X".into(),
            _ => self.to_string(),
        }
    }

    /// Rewrites a class through the isomorphisms between named modules
    /// (X_j ≅ Y_{p+1−j}, K_j ≅ K_{p−j}, N_j ≅ N_{p−j}, X_j ≅ X_{m−j}) and
    /// expands the decomposable ones into indecomposable summands.
    pub fn normalize(&self, sing: Singularity) -> Vec<CMClass> {
        use CMClass::*;
        match (sing, *self) {
            (Singularity::A3, Y(_)) => vec![X(1)],
            (Singularity::Dp2(p), Y(j)) => vec![X(p + 1 - j)],
            (Singularity::Dp2(p), K(j)) => {
                let j = j.min(p - j);
                if j == 0 {
                    vec![B]
                } else if 2 * j == p {
                    vec![Dplus, Dminus]
                } else {
                    vec![K(j)]
                }
            }
            (Singularity::Dp2(p), N(j)) => {
                let j = j.min(p - j);
                if j == 0 {
                    vec![A, RmodDelta]
                } else if 2 * j == p {
                    vec![Cplus, Cminus]
                } else {
                    vec![N(j)]
                }
            }
            (Singularity::Am1(m), X(j)) => {
                let j = j.min(m - j);
                if j == 0 {
                    vec![RmodDelta]
                } else if 2 * j == m {
                    vec![Nplus, Nminus]
                } else {
                    vec![X(j)]
                }
            }
            (_, c) => vec![c],
        }
    }
}

/// A multiset of classes.
pub type ClassCount = BTreeMap<CMClass, usize>;

pub fn count(classes: impl IntoIterator<Item = CMClass>) -> ClassCount {
    let mut out = ClassCount::new();
    for c in classes {
        *out.entry(c).or_default() += 1;
    }
    out
}

#[derive(Clone, Debug)]
pub struct CanonicalEntry {
    pub class: CMClass,
    pub mf: MatFac,
}

#[derive(Clone, Debug)]
pub struct CanonicalList {
    pub singularity: Singularity,
    pub delta: SigmaPoly,
    pub entries: Vec<CanonicalEntry>,
}

fn s(t: &str) -> SigmaPoly {
    SigmaPoly::parse(t).expect("canonical entry")
}

fn mat(rows: Vec<Vec<String>>) -> SMat {
    SMat::from_rows(rows.into_iter().map(|r| r.iter().map(|t| s(t)).collect()).collect())
}

/// Row and column degrees of a matrix with homogeneous entries, found by
/// propagating from row 0 along nonzero entries.
pub fn infer_degrees(phi: &SMat, w: (u32, u32)) -> Option<(Vec<i64>, Vec<i64>)> {
    let n = phi.rows();
    let mut rows: Vec<Option<i64>> = vec![None; n];
    let mut cols: Vec<Option<i64>> = vec![None; phi.cols()];
    let d = |i: usize, k: usize| phi.get(i, k).weighted_degree(w.0, w.1).ok().flatten().map(i64::from);
    for start in 0..n {
        if rows[start].is_some() {
            continue;
        }
        rows[start] = Some(0);
        let mut changed = true;
        while changed {
            changed = false;
            for i in 0..n {
                for k in 0..phi.cols() {
                    let Some(e) = d(i, k) else { continue };
                    match (rows[i], cols[k]) {
                        (Some(a), None) => {
                            cols[k] = Some(a + e);
                            changed = true;
                        }
                        (None, Some(b)) => {
                            rows[i] = Some(b - e);
                            changed = true;
                        }
                        (Some(a), Some(b)) if b - a != e => return None,
                        _ => {}
                    }
                }
            }
        }
    }
    Some((rows.into_iter().map(|r| r.unwrap_or(0)).collect(), cols.into_iter().map(|c| c.unwrap_or(0)).collect()))
}

fn entry(class: CMClass, phi: SMat, psi: SMat, delta: &SigmaPoly, w: (u32, u32)) -> Result<CanonicalEntry> {
    let (row_degrees, col_degrees) =
        infer_degrees(&phi, w).ok_or_else(|| Error::MFIdentityFailure(format!("{class}: inhomogeneous")))?;
    let mf = MatFac { size: phi.rows(), phi, psi, row_degrees, col_degrees, delta: delta.clone(), weights: w };
    mf.verify().map_err(|e| Error::MFIdentityFailure(format!("canonical {class}: {e}")))?;
    Ok(CanonicalEntry { class, mf })
}

fn one(class: CMClass, f: &str, g: &str, delta: &SigmaPoly, w: (u32, u32)) -> Result<CanonicalEntry> {
    entry(class, mat(vec![vec![f.into()]]), mat(vec![vec![g.into()]]), delta, w)
}

fn two(class: CMClass, phi: [&str; 4], psi: [&str; 4], delta: &SigmaPoly, w: (u32, u32)) -> Result<CanonicalEntry> {
    let m = |a: [&str; 4]| mat(vec![vec![a[0].into(), a[1].into()], vec![a[2].into(), a[3].into()]]);
    entry(class, m(phi), m(psi), delta, w)
}

/// The displayed canonical factorizations for G(m,p,2), each certified.
pub fn canonical_list(m: u32, p: u32) -> Result<CanonicalList> {
    check_admissible(m, p)?;
    let q = m / p;
    let w = (2 * q, m);
    let sing = Singularity::of(m, p);
    let mut e = vec![];
    let delta;
    match sing {
        Singularity::A3 => {
            delta = s("s1*s2^2 - 4*s1^2");
            e.push(one(CMClass::A, "s1", "s2^2 - 4*s1", &delta, w)?);
            e.push(one(CMClass::B, "s2^2 - 4*s1", "s1", &delta, w)?);
            e.push(two(CMClass::X(1), ["2*s1", "s2*s1", "s2", "2*s1"], ["-2*s1", "s2*s1", "s2", "-2*s1"], &delta, w)?);
        }
        Singularity::Dp2(p) => {
            delta = s(&format!("s1*s2^2 - 4*s1^{}", p + 1));
            let sp = format!("s2^2 - 4*s1^{p}");
            for j in 1..=p {
                let (a, b) = (format!("2*s1^{j}"), format!("2*s1^{}", p + 1 - j));
                let (na, nb) = (format!("-{a}"), format!("-{b}"));
                e.push(two(CMClass::X(j), ["s2", &a, &b, "s2*s1"], ["s2*s1", &na, &nb, "s2"], &delta, w)?);
            }
            for j in 1..=(p - 1) / 2 {
                let (a, b) = (format!("2*s1^{j}"), format!("2*s1^{}", p - j));
                let (c, d) = (format!("-2*s1^{}", j + 1), format!("-2*s1^{}", p + 1 - j));
                let phi = ["s2", &a, &b, "s2"];
                let psi = ["s2*s1", &c, &d, "s2*s1"];
                e.push(two(CMClass::K(j), phi, psi, &delta, w)?);
                e.push(two(CMClass::N(j), psi, phi, &delta, w)?);
            }
            e.push(one(CMClass::A, "s1", &sp, &delta, w)?);
            e.push(one(CMClass::B, &sp, "s1", &delta, w)?);
            if p % 2 == 0 {
                let h = p / 2;
                let plus = format!("s2 + 2*s1^{h}");
                let minus = format!("s2 - 2*s1^{h}");
                let s1plus = format!("s1*s2 + 2*s1^{}", h + 1);
                let s1minus = format!("s1*s2 - 2*s1^{}", h + 1);
                e.push(one(CMClass::Cplus, &s1plus, &minus, &delta, w)?);
                e.push(one(CMClass::Cminus, &s1minus, &plus, &delta, w)?);
                e.push(one(CMClass::Dplus, &minus, &s1plus, &delta, w)?);
                e.push(one(CMClass::Dminus, &plus, &s1minus, &delta, w)?);
            }
        }
        Singularity::Am1(m) => {
            delta = s(&format!("s2^2 - 4*s1^{m}"));
            let top = if m % 2 == 1 { (m - 1) / 2 } else { (m - 2) / 2 };
            for j in 1..=top {
                let (a, b) = (format!("2*s1^{}", m - j), format!("2*s1^{j}"));
                let (na, nb) = (format!("-{a}"), format!("-{b}"));
                e.push(two(CMClass::X(j), ["s2", &a, &b, "s2"], ["s2", &na, &nb, "s2"], &delta, w)?);
            }
            if m % 2 == 0 {
                let h = m / 2;
                let plus = format!("s2 + 2*s1^{h}");
                let minus = format!("s2 - 2*s1^{h}");
                e.push(one(CMClass::Nplus, &plus, &minus, &delta, w)?);
                e.push(one(CMClass::Nminus, &minus, &plus, &delta, w)?);
            }
        }
    }
    let dstr = delta.to_string();
    e.push(one(CMClass::RmodDelta, &dstr, "1", &delta, w)?);
    Ok(CanonicalList { singularity: sing, delta, entries: e })
}

/// σ-monomials σ₁^i σ₂^j of weighted degree d.
fn monomials_of_degree(d: i64, w: (u32, u32)) -> Vec<(u32, u32)> {
    if d < 0 {
        return vec![];
    }
    let (w1, w2) = (w.0 as i64, w.1 as i64);
    (0..=d / w2).filter(|j| (d - j * w2) % w1 == 0).map(|j| (((d - j * w2) / w1) as u32, j as u32)).collect()
}

fn degree_shifts(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut sa = a.to_vec();
    sa.sort();
    let mut out: Vec<i64> = vec![];
    for &x in a {
        for &y in b {
            let s = x - y;
            let mut sb: Vec<i64> = b.iter().map(|v| v + s).collect();
            sb.sort();
            if sb == sa && !out.contains(&s) {
                out.push(s);
            }
        }
    }
    out
}

/// A phi-only view: matrix with row and column degrees.
#[derive(Clone, Debug)]
struct Pres {
    phi: SMat,
    rows: Vec<i64>,
    cols: Vec<i64>,
}

impl Pres {
    /// Computed (column convention) block read in the row convention.
    fn from_computed(mf: &MatFac) -> Pres {
        Pres {
            phi: mf.phi.transpose(),
            rows: mf.col_degrees.iter().map(|d| -d).collect(),
            cols: mf.row_degrees.iter().map(|d| -d).collect(),
        }
    }

    fn from_canonical(mf: &MatFac) -> Pres {
        Pres { phi: mf.phi.clone(), rows: mf.row_degrees.clone(), cols: mf.col_degrees.clone() }
    }
}

const TRIALS: usize = 12;

/// Decides whether U·A = B·V for graded invertible U, V, allowing a global
/// degree shift of B. The solution space is computed exactly; invertibility
/// is tested on seeded random points of it (det U and det V are constants).
fn graded_equivalent(a: &Pres, b: &Pres, w: (u32, u32)) -> bool {
    let n = a.phi.rows();
    if b.phi.rows() != n {
        return false;
    }
    let zero = BigRational::zero();
    for s in degree_shifts(&a.rows, &b.rows) {
        if !degree_shifts(&a.cols, &b.cols).contains(&s) {
            continue;
        }
        // unknowns: (is_v, row, col, monomial)
        let mut unknowns: Vec<(bool, usize, usize, (u32, u32))> = vec![];
        for i2 in 0..n {
            for i in 0..n {
                for mono in monomials_of_degree(a.rows[i] - b.rows[i2] - s, w) {
                    unknowns.push((false, i2, i, mono));
                }
            }
        }
        for k2 in 0..n {
            for k in 0..n {
                for mono in monomials_of_degree(a.cols[k] - b.cols[k2] - s, w) {
                    unknowns.push((true, k2, k, mono));
                }
            }
        }
        if unknowns.is_empty() {
            continue;
        }
        // equation rows keyed by (entry row, entry col, σ-monomial)
        let mut eqs: BTreeMap<(usize, usize, (u32, u32)), Vec<BigRational>> = BTreeMap::new();
        let nu = unknowns.len();
        for (u, &(is_v, r, c, (mi, mj))) in unknowns.iter().enumerate() {
            let mono = SigmaPoly::mono(1, mi, mj);
            for t in 0..n {
                // U[r][c] contributes to (U·A)[r][t] through A[c][t];
                // V[r][c] contributes −B[t][r] to (B·V)[t][c].
                let (key_r, key_c, contrib) = if is_v {
                    (t, c, -&(&mono * b.phi.get(t, r)))
                } else {
                    (r, t, &mono * a.phi.get(c, t))
                };
                for (k, coef) in contrib.terms() {
                    let row = eqs.entry((key_r, key_c, *k)).or_insert_with(|| vec![zero.clone(); nu]);
                    row[u] = &row[u] + coef;
                }
            }
        }
        let rows: Vec<Vec<BigRational>> = eqs.into_values().collect();
        let kernel = linalg::nullspace(&rows, nu, &zero);
        if kernel.is_empty() {
            continue;
        }
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        for trial in 0..TRIALS {
            let coeffs: Vec<BigRational> = (0..kernel.len())
                .map(|_| if trial == 0 { BigRational::one() } else { BigRational::from_integer(BigInt::from(rng.gen_range(-50i64..=50))) })
                .collect();
            let mut u_mat = SMat::zeros(n, n);
            let mut v_mat = SMat::zeros(n, n);
            for (idx, &(is_v, r, c, (mi, mj))) in unknowns.iter().enumerate() {
                let val = kernel.iter().zip(&coeffs).fold(zero.clone(), |acc, (kv, cf)| acc + &kv[idx] * cf);
                if val.is_zero() {
                    continue;
                }
                let target = if is_v { &mut v_mat } else { &mut u_mat };
                let cur = target.get(r, c) + &SigmaPoly::term(val, mi, mj);
                target.set(r, c, cur);
            }
            if u_mat.det().is_unit() && v_mat.det().is_unit() {
                return true;
            }
        }
    }
    false
}

/// Whether a homogeneous f lies in the ideal generated by homogeneous gens.
pub fn ideal_contains(gens: &[SigmaPoly], f: &SigmaPoly, w: (u32, u32)) -> bool {
    let Ok(Some(df)) = f.weighted_degree(w.0, w.1) else { return f.is_zero() };
    let mut cols: Vec<SigmaPoly> = vec![];
    for g in gens {
        let Ok(Some(dg)) = g.weighted_degree(w.0, w.1) else { continue };
        for (i, j) in monomials_of_degree(df as i64 - dg as i64, w) {
            cols.push(&SigmaPoly::mono(1, i, j) * g);
        }
    }
    let mut keys: Vec<(u32, u32)> = f.terms().keys().copied().collect();
    for c in &cols {
        keys.extend(c.terms().keys().copied());
    }
    keys.sort();
    keys.dedup();
    let zero = BigRational::zero();
    let coef = |p: &SigmaPoly, k: &(u32, u32)| p.terms().get(k).cloned().unwrap_or_else(|| zero.clone());
    let a: Vec<Vec<BigRational>> = keys.iter().map(|k| cols.iter().map(|c| coef(c, k)).collect()).collect();
    let aug: Vec<Vec<BigRational>> =
        keys.iter().zip(&a).map(|(k, r)| r.iter().cloned().chain([coef(f, k)]).collect()).collect();
    linalg::rank(&a, cols.len()) == linalg::rank(&aug, cols.len() + 1)
}

fn ideal_eq(a: &[SigmaPoly], b: &[SigmaPoly], w: (u32, u32)) -> bool {
    a.iter().all(|f| ideal_contains(b, f, w)) && b.iter().all(|f| ideal_contains(a, f, w))
}

/// Fitting ideals Fitt_k = I_{n−k}(φ) for k < n, as generator lists.
pub fn fitting_ideals(phi: &SMat) -> Vec<Vec<SigmaPoly>> {
    let n = phi.rows();
    (0..n).map(|k| phi.minors(n - k).into_iter().filter(|g| !g.is_zero()).collect()).collect()
}

fn fitting_agree(a: &SMat, b: &SMat, w: (u32, u32)) -> bool {
    let (fa, fb) = (fitting_ideals(a), fitting_ideals(b));
    fa.len() == fb.len() && fa.iter().zip(&fb).all(|(x, y)| ideal_eq(x, y, w))
}

fn unclassified(mf: &MatFac, detail: &str) -> Error {
    Error::Unclassified { label: mf.phi.to_string(), detail: detail.to_string() }
}

impl CanonicalList {
    fn of_size(&self, n: usize) -> impl Iterator<Item = &CanonicalEntry> {
        self.entries.iter().filter(move |e| e.mf.size == n)
    }

    fn weights(&self) -> (u32, u32) {
        self.entries[0].mf.weights
    }

    /// Every pair of entries is inequivalent.
    pub fn is_duplicate_free(&self) -> bool {
        let w = self.weights();
        self.entries.iter().enumerate().all(|(i, a)| {
            self.entries[i + 1..]
                .iter()
                .all(|b| !graded_equivalent(&Pres::from_canonical(&a.mf), &Pres::from_canonical(&b.mf), w))
        })
    }

    fn match_pres(&self, p: &Pres, size: usize) -> Option<Vec<CMClass>> {
        let w = self.weights();
        for e in self.of_size(size) {
            let c = Pres::from_canonical(&e.mf);
            if graded_equivalent(p, &c, w) {
                return Some(vec![e.class]);
            }
        }
        // direct sums of two smaller entries
        let smaller: Vec<&CanonicalEntry> = self.entries.iter().filter(|e| e.mf.size < size).collect();
        let det = p.phi.det();
        for (i, e1) in smaller.iter().enumerate() {
            for e2 in &smaller[i..] {
                if e1.mf.size + e2.mf.size != size {
                    continue;
                }
                let prod = &e1.mf.phi.det() * &e2.mf.phi.det();
                if det.proportional_to(&prod).is_none() {
                    continue;
                }
                let sum = e1.mf.direct_sum(&e2.mf);
                if graded_equivalent(p, &Pres::from_canonical(&sum), w) {
                    return Some(vec![e1.class, e2.class]);
                }
            }
        }
        None
    }
}

/// Names a computed block. Unit entries are split off as FreeR; blocks
/// that split by permutation are handled piecewise. The result is in
/// normal form and may hold several classes when the block is
/// decomposable (for instance K_{p/2} ≅ D₊ ⊕ D₋).
pub fn classify(mf: &MatFac, list: &CanonicalList) -> Result<Vec<CMClass>> {
    let mut out = vec![];
    let (red, units) = mf.stable_reduction();
    out.extend(std::iter::repeat_n(CMClass::FreeR, units));
    if red.size == 0 {
        return Ok(out);
    }
    let blocks = red.block_split();
    if blocks.len() > 1 {
        for b in &blocks {
            out.extend(classify(b, list)?);
        }
        return Ok(out);
    }
    let delta_ok = mf.delta.proportional_to(&list.delta).is_some();
    if !delta_ok {
        return Err(unclassified(mf, "discriminant differs from the canonical list"));
    }
    let p = Pres::from_computed(&red);
    let found = list.match_pres(&p, red.size).ok_or_else(|| unclassified(&red, "no canonical match"))?;
    let canon = found
        .iter()
        .map(|c| list.entries.iter().find(|e| e.class == *c).unwrap().mf.clone())
        .reduce(|a, b| a.direct_sum(&b))
        .unwrap();
    if !fitting_agree(&p.phi, &canon.phi, list.weights()) {
        return Err(unclassified(&red, "Fitting ideals disagree with the matched class"));
    }
    for c in found {
        out.extend(c.normalize(list.singularity));
    }
    Ok(out)
}

/// U·φ·V for random graded invertible U, V: constant invertible blocks on
/// equal degrees, plus random homogeneous entries below the diagonal in
/// degree order. psi follows through the inverses.
pub fn random_graded_transform(mf: &MatFac, seed: u64) -> MatFac {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = mf.size;
    let w = mf.weights;
    // U acts on rows (degree data row_degrees), V on columns.
    let (u, u_inv) = random_unimodular(&mf.row_degrees, w, &mut rng);
    let (v, v_inv) = random_unimodular(&mf.col_degrees, w, &mut rng);
    let out = MatFac {
        phi: u.mul(&mf.phi).mul(&v),
        psi: v_inv.mul(&mf.psi).mul(&u_inv),
        size: n,
        row_degrees: mf.row_degrees.clone(),
        col_degrees: mf.col_degrees.clone(),
        delta: mf.delta.clone(),
        weights: w,
    };
    debug_assert!(out.verify().is_ok());
    out
}

fn rand_rat(rng: &mut ChaCha8Rng, nonzero: bool) -> BigRational {
    loop {
        let v = rng.gen_range(-9i64..=9);
        if v != 0 || !nonzero {
            return BigRational::from_integer(BigInt::from(v));
        }
    }
}

/// A random graded automorphism of ⊕R(−d_i) as the product of elementary
/// matrices, together with its inverse.
fn random_unimodular(d: &[i64], w: (u32, u32), rng: &mut ChaCha8Rng) -> (SMat, SMat) {
    let n = d.len();
    let mut m = SMat::identity(n);
    let mut inv = SMat::identity(n);
    for i in 0..n {
        let c = rand_rat(rng, true);
        let mut e = SMat::identity(n);
        e.set(i, i, SigmaPoly::constant(c.clone()));
        let mut ei = SMat::identity(n);
        ei.set(i, i, SigmaPoly::constant(BigRational::one() / c));
        m = e.mul(&m);
        inv = inv.mul(&ei);
    }
    for _ in 0..2 * n {
        let (i, k) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if i == k {
            continue;
        }
        // row i += f·row k (for U) or column k += f·column i (for V); in
        // both cases f has degree d_k − d_i
        let deg = d[k] - d[i];
        let monos = monomials_of_degree(deg, w);
        if monos.is_empty() {
            continue;
        }
        let mut f = SigmaPoly::zero();
        for (a, b) in monos {
            f.add_monomial(&rand_rat(rng, false), a, b);
        }
        if f.is_zero() {
            continue;
        }
        let mut e = SMat::identity(n);
        e.set(i, k, f.clone());
        let mut ei = SMat::identity(n);
        ei.set(i, k, -&f);
        m = e.mul(&m);
        inv = inv.mul(&ei);
    }
    (m, inv)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lists_are_valid_and_distinct() {
        for (m, p) in [(4, 1), (6, 3), (8, 2), (8, 4), (5, 5), (6, 6), (10, 5)] {
            let l = canonical_list(m, p).unwrap();
            assert!(l.is_duplicate_free(), "({m},{p})");
        }
    }

    #[test]
    fn list_contents() {
        let names = |m, p| canonical_list(m, p).unwrap().entries.iter().map(|e| e.class.to_string()).collect::<Vec<_>>();
        assert_eq!(names(4, 1), ["A", "B", "X1", "RmodDelta"]);
        assert_eq!(names(6, 3), ["X1", "X2", "X3", "K1", "N1", "A", "B", "RmodDelta"]);
        assert_eq!(names(4, 4), ["X1", "N+", "N-", "RmodDelta"]);
    }

    #[test]
    fn normal_forms() {
        let d = Singularity::Dp2(5);
        assert_eq!(CMClass::Y(2).normalize(d), vec![CMClass::X(4)]);
        assert_eq!(CMClass::K(4).normalize(d), vec![CMClass::K(1)]);
        assert_eq!(CMClass::K(2).normalize(Singularity::Dp2(4)), vec![CMClass::Dplus, CMClass::Dminus]);
        assert_eq!(CMClass::X(3).normalize(Singularity::Am1(6)), vec![CMClass::Nplus, CMClass::Nminus]);
        for c in [CMClass::Y(1), CMClass::K(3), CMClass::N(2)] {
            let once = c.normalize(d);
            let twice: Vec<CMClass> = once.iter().flat_map(|x| x.normalize(d)).collect();
            assert_eq!(once, twice);
        }
    }

    #[test]
    fn small_blocks() {
        let l = canonical_list(4, 1).unwrap();
        let a = &l.entries[0].mf;
        assert_eq!(classify(a, &l).unwrap(), vec![CMClass::A]);
        let free = MatFac {
            phi: SMat::from_rows(vec![vec![SigmaPoly::one()]]),
            psi: SMat::from_rows(vec![vec![l.delta.clone()]]),
            size: 1,
            row_degrees: vec![0],
            col_degrees: vec![0],
            delta: l.delta.clone(),
            weights: (8, 4),
        };
        assert_eq!(classify(&free, &l).unwrap(), vec![CMClass::FreeR]);
        // the block of the last two slots at m = 4, in column convention
        let x = MatFac {
            phi: mat(vec![vec!["-2*s1".into(), "s2*s1".into()], vec!["s2".into(), "-2*s1".into()]]),
            psi: mat(vec![vec!["2*s1".into(), "s2*s1".into()], vec!["s2".into(), "2*s1".into()]]),
            size: 2,
            row_degrees: vec![0, 4],
            col_degrees: vec![8, 12],
            delta: l.delta.clone(),
            weights: (8, 4),
        };
        x.verify().unwrap();
        assert_eq!(classify(&x, &l).unwrap(), vec![CMClass::X(1)]);
    }

    #[test]
    fn composite_block() {
        let l = canonical_list(8, 4).unwrap();
        let phi = mat(vec![vec!["s2".into(), "2*s1^2".into()], vec!["2*s1^2".into(), "s2".into()]]);
        let psi = mat(vec![vec!["s2*s1".into(), "-2*s1^3".into()], vec!["-2*s1^3".into(), "s2*s1".into()]]);
        let (r, c) = infer_degrees(&phi, (4, 8)).unwrap();
        let mf = MatFac { phi, psi, size: 2, row_degrees: r, col_degrees: c, delta: l.delta.clone(), weights: (4, 8) };
        mf.verify().unwrap();
        let mut got = classify(&mf, &l).unwrap();
        got.sort();
        assert_eq!(got, vec![CMClass::Dplus, CMClass::Dminus]);
    }

    #[test]
    fn fitting_and_ideals() {
        let w = (1, 2);
        assert!(ideal_contains(&[s("s2"), s("s1^2")], &s("s2*s1 + 3*s1^3"), w));
        assert!(!ideal_contains(&[s("s2"), s("s1^2")], &s("s1"), w));
        let l = canonical_list(6, 3).unwrap();
        let x1 = &l.entries[0].mf.phi;
        let x3 = &l.entries[2].mf.phi;
        assert!(fitting_agree(x1, x3, (4, 6)));
    }

    #[test]
    fn transforms_keep_class() {
        let l = canonical_list(6, 3).unwrap();
        for e in &l.entries {
            // canonical entries are in row convention; flip to column
            let col = MatFac {
                phi: e.mf.phi.transpose(),
                psi: e.mf.psi.transpose(),
                size: e.mf.size,
                row_degrees: e.mf.col_degrees.iter().map(|d| -d).collect(),
                col_degrees: e.mf.row_degrees.iter().map(|d| -d).collect(),
                delta: e.mf.delta.clone(),
                weights: e.mf.weights,
            };
            col.verify().unwrap();
            for seed in 0..5 {
                let t = random_graded_transform(&col, seed);
                t.verify().unwrap();
                assert_eq!(classify(&t, &l).unwrap(), e.class.normalize(l.singularity));
            }
        }
    }
}
