//! Serializable summary of one decomposition, with a plain-text rendering.
//! Polynomials are stored as strings in the textual grammar so that a
//! report read back from JSON can be re-parsed exactly.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::classify::{ClassCount, Singularity};
use crate::decompose::{check_theorems, Decomposition, Prediction, theorem_predicted_multiset};
use crate::error::{ExactError, Result};
use crate::sigma::{SMat, SigmaPoly};
use crate::xypoly::XYPoly;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GroupInfo {
    pub m: u32,
    pub p: u32,
    pub order: usize,
    pub singularity: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OrbitInfo {
    pub size: usize,
    pub e: u32,
    pub j: String,
    pub delta: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Invariants {
    pub sigma1: String,
    pub sigma2: String,
    pub z: String,
    pub j: String,
    pub delta: String,
    pub orbits: Vec<OrbitInfo>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComponentInfo {
    pub label: String,
    pub dim: usize,
    pub basis_degrees: Vec<u32>,
    pub basis: Vec<String>,
    pub z_matrix: Vec<Vec<String>>,
    pub j_matrix: Vec<Vec<String>>,
    pub classes: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TheoremInfo {
    pub regime: String,
    pub predicted: BTreeMap<String, usize>,
    pub printed: Vec<BTreeMap<String, usize>>,
    #[serde(rename = "match")]
    pub matches: bool,
    pub printed_match: bool,
    pub diffs: BTreeMap<String, i64>,
    pub printed_diffs: BTreeMap<String, i64>,
    pub free_rank: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub group: GroupInfo,
    pub invariants: Invariants,
    pub components: Vec<ComponentInfo>,
    pub aggregate: BTreeMap<String, usize>,
    pub theorem: TheoremInfo,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing: Option<BTreeMap<String, u64>>,
}

fn names(c: &ClassCount, sing: Singularity) -> BTreeMap<String, usize> {
    c.iter().map(|(k, v)| (k.name(sing), *v)).collect()
}

fn rows(m: &SMat) -> Vec<Vec<String>> {
    m.to_rows().iter().map(|r| r.iter().map(|e| e.to_string()).collect()).collect()
}

impl Report {
    pub fn new(d: &Decomposition) -> Report {
        let sing = d.singularity();
        let arr = &d.arrangement;
        let t = check_theorems(d);
        let group = GroupInfo { m: d.m, p: d.p, order: arr.order(), singularity: sing.to_string() };
        let invariants = Invariants {
            sigma1: arr.frame.sigma1_xy.to_string(),
            sigma2: arr.frame.sigma2_xy.to_string(),
            z: arr.z.to_string(),
            j: arr.j.to_string(),
            delta: arr.delta.to_string(),
            orbits: arr
                .orbits
                .iter()
                .map(|o| OrbitInfo { size: o.members.len(), e: o.e, j: o.j_orbit.to_string(), delta: o.delta.to_string() })
                .collect(),
        };
        let components = d
            .components
            .iter()
            .map(|c| ComponentInfo {
                label: c.label.to_string(),
                dim: c.label.dim(),
                basis_degrees: c.basis.degrees(),
                basis: c.basis.polys().iter().map(|p| p.to_string()).collect(),
                z_matrix: rows(&c.mf.phi),
                j_matrix: rows(&c.mf.psi),
                classes: c.classes.iter().map(|k| k.name(sing)).collect(),
            })
            .collect();
        let diffs = |v: &[(crate::classify::CMClass, i64)]| v.iter().map(|(k, n)| (k.name(sing), *n)).collect();
        let theorem = TheoremInfo {
            regime: t.regime.name().to_string(),
            predicted: names(&t.reconciled, sing),
            printed: [Prediction::Printed, Prediction::PrintedAlternate]
                .iter()
                .map(|f| names(&theorem_predicted_multiset(d.m, d.p, *f), sing))
                .fold(vec![], |mut acc, x| {
                    if !acc.contains(&x) {
                        acc.push(x);
                    }
                    acc
                }),
            matches: t.matches,
            printed_match: t.printed_match,
            diffs: diffs(&t.diffs),
            printed_diffs: diffs(&t.printed_diffs),
            free_rank: t.free_rank,
        };
        Report { group, invariants, components, aggregate: names(&d.aggregate(), sing), theorem, timing: None }
    }

    /// Re-parses every polynomial string, checking that printing the parsed
    /// value gives back the same text.
    pub fn check_polynomials(&self) -> Result<()> {
        let m = self.group.m;
        let xy = |s: &str| -> Result<()> {
            let p = XYPoly::parse(s, m)?;
            same(s, &p.to_string())
        };
        let sg = |s: &str| -> Result<()> {
            let p = SigmaPoly::parse(s)?;
            same(s, &p.to_string())
        };
        let inv = &self.invariants;
        for s in [&inv.sigma1, &inv.sigma2, &inv.z, &inv.j] {
            xy(s)?;
        }
        sg(&inv.delta)?;
        for o in &inv.orbits {
            xy(&o.j)?;
            sg(&o.delta)?;
        }
        for c in &self.components {
            for b in &c.basis {
                xy(b)?;
            }
            for e in c.z_matrix.iter().chain(&c.j_matrix).flatten() {
                sg(e)?;
            }
        }
        Ok(())
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let g = &self.group;
        let _ = writeln!(s, "G({},{},2)  order {}  discriminant type {}", g.m, g.p, g.order, g.singularity);
        let inv = &self.invariants;
        let _ = writeln!(s, "sigma1 = {}", inv.sigma1);
        let _ = writeln!(s, "sigma2 = {}", inv.sigma2);
        let _ = writeln!(s, "z = {}", inv.z);
        let _ = writeln!(s, "j = {}", inv.j);
        let _ = writeln!(s, "Delta = {}", inv.delta);
        for (k, o) in inv.orbits.iter().enumerate() {
            let _ = writeln!(s, "orbit {}: {} hyperplanes, e = {}, Delta_O = {}", k, o.size, o.e, o.delta);
        }
        let _ = writeln!(s);
        let width = self.components.iter().map(|c| c.label.len()).max().unwrap_or(5).max(5);
        let _ = writeln!(s, "{:<width$}  dim  degrees              classes", "irrep");
        for c in &self.components {
            let degs = c.basis_degrees.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(",");
            let _ = writeln!(s, "{:<width$}  {:>3}  {:<19}  {}", c.label, c.dim, degs, c.classes.join(" + "));
        }
        let _ = writeln!(s);
        let _ = writeln!(s, "aggregate: {}", fmt_count(&self.aggregate));
        let t = &self.theorem;
        let _ = writeln!(s, "regime: {}", t.regime);
        let _ = writeln!(s, "predicted: {}", fmt_count(&t.predicted));
        let _ = writeln!(s, "free rank: {}", t.free_rank);
        if !t.printed_match {
            let _ = writeln!(s, "printed display differs by: {}", fmt_diff(&t.printed_diffs));
        }
        if !t.matches {
            let _ = writeln!(s, "differences: {}", fmt_diff(&t.diffs));
        }
        if let Some(tm) = &self.timing {
            let parts: Vec<String> = tm.iter().map(|(k, v)| format!("{k} {v}ms")).collect();
            let _ = writeln!(s, "timing: {}", parts.join(", "));
        }
        let _ = writeln!(s, "theorem match: {}", if t.matches { "yes" } else { "no" });
        s
    }
}

fn same(a: &str, b: &str) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(ExactError::Parse(format!("'{a}' re-prints as '{b}'")).into())
    }
}

pub fn fmt_count(c: &BTreeMap<String, usize>) -> String {
    c.iter().map(|(k, v)| if *v == 1 { k.clone() } else { format!("{k}^{v}") }).collect::<Vec<_>>().join(" + ")
}

fn fmt_diff(c: &BTreeMap<String, i64>) -> String {
    c.iter().map(|(k, v)| format!("{k} {v:+}")).collect::<Vec<_>>().join(", ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decompose::decompose_group;

    #[test]
    fn text_for_six_three() {
        let r = Report::new(&decompose_group(6, 3).unwrap());
        let t = r.to_text();
        assert!(t.ends_with("theorem match: yes\n"));
        assert!(t.contains("1@0,1@1"));
        r.check_polynomials().unwrap();
    }

    #[test]
    fn first_aggregate_names() {
        let r = Report::new(&decompose_group(4, 1).unwrap());
        assert_eq!(r.aggregate["X"], 6);
        assert_eq!(r.aggregate["B"], 9);
        assert_eq!(r.aggregate["A"], 1);
        assert_eq!(r.aggregate["RmodDelta"], 1);
    }
}
