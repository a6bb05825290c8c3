//! The full pipeline (irreducibles → Specht bases → factorizations →
//! blocks → classes) and the closed-form multisets it is compared with.

use num_bigint::BigInt;
use num_integer::binomial;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::classify::{canonical_list, classify, count, CMClass, CanonicalList, ClassCount, Singularity};
use crate::error::Result;
use crate::group::Arrangement;
use crate::matfac::{build_mf_from, MatFac};
use crate::rep::{irreps, twist_label, IrrepLabel};
use crate::specht::{isotypic_basis, SpechtBasis};

#[derive(Clone, Debug)]
pub struct Component {
    pub label: IrrepLabel,
    pub basis: SpechtBasis,
    pub mf: MatFac,
    /// Normal-form classes of the cokernel, FreeR included.
    pub classes: Vec<CMClass>,
}

#[derive(Clone, Debug)]
pub struct Decomposition {
    pub m: u32,
    pub p: u32,
    pub arrangement: Arrangement,
    pub canonical: CanonicalList,
    pub components: Vec<Component>,
}

impl Decomposition {
    pub fn singularity(&self) -> Singularity {
        self.canonical.singularity
    }

    /// Every class with multiplicity, FreeR included.
    pub fn aggregate(&self) -> ClassCount {
        count(self.components.iter().flat_map(|c| c.classes.iter().copied()))
    }

    /// (label, class) pairs in component order.
    pub fn labeled(&self) -> Vec<(IrrepLabel, CMClass)> {
        self.components.iter().flat_map(|c| c.classes.iter().map(move |k| (c.label, *k))).collect()
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct DecomposeOptions {
    /// Rescale every basis polynomial by a random nonzero rational.
    pub basis_scale_seed: Option<u64>,
}

fn rescale(b: &SpechtBasis, rng: &mut ChaCha8Rng) -> SpechtBasis {
    let mut out = b.clone();
    for e in &mut out.entries {
        let mut c = 0i64;
        while c == 0 {
            c = rng.gen_range(-7..=7);
        }
        let d: i64 = rng.gen_range(1..=5);
        e.poly = e.poly.scale_rational(&BigRational::new(BigInt::from(c), BigInt::from(d)));
    }
    out
}

pub fn decompose_group(m: u32, p: u32) -> Result<Decomposition> {
    decompose_group_with(m, p, DecomposeOptions::default())
}

pub fn decompose_group_with(m: u32, p: u32, opts: DecomposeOptions) -> Result<Decomposition> {
    let arrangement = Arrangement::new(m, p)?;
    let canonical = canonical_list(m, p)?;
    let mut rng = opts.basis_scale_seed.map(ChaCha8Rng::seed_from_u64);
    let mut components = vec![];
    for label in irreps(m, p)? {
        let mut src = isotypic_basis(&label);
        let mut dst = isotypic_basis(&twist_label(&label));
        if let Some(r) = rng.as_mut() {
            src = rescale(&src, r);
            dst = rescale(&dst, r);
        }
        let mf = build_mf_from(&src, &dst, &arrangement)?;
        let mut classes = classify(&mf, &canonical).map_err(|e| match e {
            crate::Error::Unclassified { detail, .. } => crate::Error::Unclassified { label: label.to_string(), detail },
            other => other,
        })?;
        classes.sort();
        components.push(Component { label, basis: src, mf, classes });
    }
    Ok(Decomposition { m, p, arrangement, canonical, components })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Regime {
    First,
    ModOdd,
    ModEven,
    Full,
}

impl Regime {
    pub fn of(m: u32, p: u32) -> Regime {
        if p == 1 {
            Regime::First
        } else if p == m {
            Regime::Full
        } else if p % 2 == 1 {
            Regime::ModOdd
        } else {
            Regime::ModEven
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Regime::First => "first",
            Regime::ModOdd => "mod-odd",
            Regime::ModEven => "mod-even",
            Regime::Full => "full",
        }
    }
}

/// Which reading of the decomposition theorems to evaluate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Prediction {
    /// The displays as printed. For p even there are two displays; the
    /// first contains K_{p/2}, expanded here by the normal-form rule.
    Printed,
    /// The second printed display of the even case.
    PrintedAlternate,
    /// The even case with the D± count implied by the linear characters
    /// (q−1 of them carry σ₂ ∓ 2σ₁^{p/2}) added to the K_{p/2} copies.
    Reconciled,
}

fn c2(n: u32) -> usize {
    binomial(n as usize, 2)
}

fn add(out: &mut ClassCount, c: CMClass, k: usize) {
    if k > 0 {
        *out.entry(c).or_default() += k;
    }
}

/// Closed-form multiset for S/(z), FreeR omitted, in normal form.
pub fn theorem_predicted_multiset(m: u32, p: u32, form: Prediction) -> ClassCount {
    use CMClass::*;
    let q = m / p;
    let sing = Singularity::of(m, p);
    let mut raw = ClassCount::new();
    match Regime::of(m, p) {
        Regime::First => {
            add(&mut raw, A, 1);
            add(&mut raw, B, 2 * c2(m - 1) + (m - 1) as usize);
            add(&mut raw, X(1), 2 * (m - 1) as usize);
            add(&mut raw, RmodDelta, 1);
        }
        Regime::ModOdd => {
            let q1 = (q - 1) as usize;
            for j in 1..=p {
                add(&mut raw, X(j), 2 * q1);
            }
            for j in 1..=(p - 1) / 2 {
                add(&mut raw, N(j), 2);
                add(&mut raw, K(j), 2 * q1 * q1);
            }
            add(&mut raw, A, 1);
            add(&mut raw, B, q1 + 2 * c2(q - 1));
            add(&mut raw, RmodDelta, 1);
        }
        Regime::ModEven => {
            let q1 = (q - 1) as usize;
            for j in 1..=p {
                add(&mut raw, X(j), 2 * q1);
            }
            for j in 1..=(p - 2) / 2 {
                add(&mut raw, N(j), 2);
                add(&mut raw, K(j), 2 * q1 * q1);
            }
            add(&mut raw, A, 1);
            add(&mut raw, RmodDelta, 1);
            match form {
                Prediction::Printed => {
                    add(&mut raw, K(p / 2), 2 * c2(q - 1));
                    add(&mut raw, B, q1 + 2 * c2(q - 1));
                    for c in [Cplus, Dplus, Cminus, Dminus] {
                        add(&mut raw, c, 1);
                    }
                }
                Prediction::PrintedAlternate => {
                    add(&mut raw, B, q1 + 2 * c2(q - 1));
                    for c in [Cplus, Cminus] {
                        add(&mut raw, c, 1 + 2 * c2(q - 1));
                    }
                    for c in [Dplus, Dminus] {
                        add(&mut raw, c, 1);
                    }
                }
                Prediction::Reconciled => {
                    add(&mut raw, B, q1 + 2 * c2(q - 1));
                    for c in [Cplus, Cminus] {
                        add(&mut raw, c, 1);
                    }
                    for c in [Dplus, Dminus] {
                        add(&mut raw, c, q1 + 2 * c2(q - 1));
                    }
                }
            }
        }
        Regime::Full => {
            let top = if m % 2 == 1 { (m - 1) / 2 } else { (m - 2) / 2 };
            for j in 1..=top {
                add(&mut raw, X(j), 2);
            }
            if m.is_multiple_of(2) {
                add(&mut raw, Nplus, 1);
                add(&mut raw, Nminus, 1);
            }
            add(&mut raw, RmodDelta, 1);
        }
    }
    let mut out = ClassCount::new();
    for (c, k) in raw {
        for n in c.normalize(sing) {
            add(&mut out, n, k);
        }
    }
    out
}

/// Signed difference computed − predicted for each class that differs.
pub type Diff = Vec<(CMClass, i64)>;

fn diff(computed: &ClassCount, predicted: &ClassCount) -> Diff {
    let keys: std::collections::BTreeSet<CMClass> = computed.keys().chain(predicted.keys()).copied().collect();
    keys.into_iter()
        .filter_map(|k| {
            let d = *computed.get(&k).unwrap_or(&0) as i64 - *predicted.get(&k).unwrap_or(&0) as i64;
            (d != 0).then_some((k, d))
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct TheoremCheck {
    pub regime: Regime,
    /// Computed multiset with FreeR removed.
    pub computed: ClassCount,
    pub free_rank: usize,
    /// Equality with one of the printed displays.
    pub printed_match: bool,
    pub printed_diffs: Diff,
    pub reconciled: ClassCount,
    /// Equality with the reconciled formula (the same as printed outside
    /// the even regime).
    pub matches: bool,
    pub diffs: Diff,
}

pub fn check_theorems(d: &Decomposition) -> TheoremCheck {
    let mut computed = d.aggregate();
    let free_rank = computed.remove(&CMClass::FreeR).unwrap_or(0);
    let printed = [Prediction::Printed, Prediction::PrintedAlternate].map(|f| theorem_predicted_multiset(d.m, d.p, f));
    let printed_match = printed.iter().any(|p| p == &computed);
    let printed_diffs = if printed_match { vec![] } else { diff(&computed, &printed[0]) };
    let reconciled = theorem_predicted_multiset(d.m, d.p, Prediction::Reconciled);
    let diffs = diff(&computed, &reconciled);
    TheoremCheck {
        regime: Regime::of(d.m, d.p),
        matches: diffs.is_empty(),
        computed,
        free_rank,
        printed_match,
        printed_diffs,
        reconciled,
        diffs,
    }
}

pub fn verify_theorems(m: u32, p: u32) -> Result<TheoremCheck> {
    Ok(check_theorems(&decompose_group(m, p)?))
}
