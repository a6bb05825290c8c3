//! Acceptance suite. Prints one PASS/FAIL line per criterion; all
//! comparisons are exact (tolerance zero). Criteria that cannot be met
//! because the printed statement itself is inconsistent are listed in
//! `KNOWN_FAILURES` together with the reason, and still print FAIL.

use std::collections::BTreeMap;
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;

use reflmf::classify::{classify, random_graded_transform, CMClass, ClassCount};
use reflmf::cyclotomic::CycNum;
use reflmf::decompose::{
    check_theorems, decompose_group, decompose_group_with, theorem_predicted_multiset, DecomposeOptions, Prediction,
};
use reflmf::group::{admissible_pairs, Arrangement};
use reflmf::matfac::build_mf;
use reflmf::rep::{character_of, irreps, IrrepLabel};
use reflmf::sigma::{SMat, SigmaPoly};
use reflmf::specht::isotypic_basis;
use reflmf::xypoly::XYPoly;

/// (criterion, reason)
const KNOWN_FAILURES: &[(u32, &str)] = &[(
    4,
    "both printed even-case displays give D+ and D- multiplicity 1, while the proof assigns q-1 linear \
     characters to each; for (8,2) the computed multiset has q-2 = 2 extra copies of each of D+ and D- \
     and agrees with the display once the q-1 count is used",
)];

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn without_free(mut c: ClassCount) -> ClassCount {
    c.remove(&CMClass::FreeR);
    c
}

fn show(c: &ClassCount) -> String {
    c.iter().map(|(k, v)| format!("{k}^{v}")).collect::<Vec<_>>().join(" ")
}

fn c1_mf_identity() -> Outcome {
    let t0 = Instant::now();
    let mut n = 0;
    for (m, p) in admissible_pairs(10) {
        let arr = Arrangement::new(m, p).unwrap();
        for l in irreps(m, p).unwrap() {
            let mf = match build_mf(&l, &arr) {
                Ok(mf) => mf,
                Err(e) => return outcome(false, format!("({m},{p}) {l}: {e}")),
            };
            let id = SMat::scalar(mf.size, &arr.delta);
            if mf.phi.mul(&mf.psi) != id || mf.psi.mul(&mf.phi) != id {
                return outcome(false, format!("({m},{p}) {l}: product is not Δ·I"));
            }
            n += 1;
        }
    }
    outcome(true, format!("{n} factorizations, m <= 10, exact, {:.1}s", t0.elapsed().as_secs_f64()))
}

fn compare_printed(pairs: &[(u32, u32)]) -> Outcome {
    let mut notes = vec![];
    let mut pass = true;
    for &(m, p) in pairs {
        let d = decompose_group(m, p).unwrap();
        let agg = d.aggregate();
        let free = agg.get(&CMClass::FreeR).copied().unwrap_or(0);
        let computed = without_free(agg);
        let forms = [Prediction::Printed, Prediction::PrintedAlternate].map(|f| theorem_predicted_multiset(m, p, f));
        let ok = forms.iter().any(|f| f == &computed);
        if ok {
            notes.push(format!("({m},{p}) ok, free {free}"));
        } else {
            pass = false;
            let rec = theorem_predicted_multiset(m, p, Prediction::Reconciled) == computed;
            notes.push(format!(
                "({m},{p}) computed [{}] vs printed [{}] / [{}]; reconciled count {}",
                show(&computed),
                show(&forms[0]),
                show(&forms[1]),
                if rec { "matches" } else { "differs" }
            ));
        }
    }
    outcome(pass, notes.join("; "))
}

fn c6_worked_example() -> Outcome {
    let d = decompose_group(6, 3).unwrap();
    let by_label: BTreeMap<String, Vec<CMClass>> =
        d.components.iter().map(|c| (c.label.to_string(), c.classes.clone())).collect();
    let get = |s: &str| by_label.get(&IrrepLabel::parse(s, 6, 3).unwrap().to_string()).cloned().unwrap_or_default();
    use CMClass::*;
    let want: [(&str, Vec<CMClass>); 7] = [
        ("1@0,1@1", vec![X(1), X(1)]),
        ("1@2,1@3", vec![X(1), X(1)]),
        ("1@0,1@2", vec![K(1), K(1)]),
        ("1@0,1@3", vec![X(2), X(2)]),
        ("1@1,1@3", vec![N(1), N(1)]),
        ("1@1,1@2", vec![X(3), X(3)]),
        ("1@0,1@5", vec![X(3), X(3)]),
    ];
    for (s, w) in &want {
        if &get(s) != w {
            return outcome(false, format!("{s}: got {:?}, expected {:?}", get(s), w));
        }
    }
    // trivial, R/(Δ), and the two components of Δ (order not stated)
    let mut pair = [get("11@0"), get("2@1")].concat();
    pair.sort();
    let lin = get("2@0") == vec![FreeR] && get("11@1") == vec![RmodDelta] && pair == vec![A, B];
    outcome(lin, "X1^2, K1^2, X2^2, N1^2, X3^2; [2]_0 trivial, [1,1]_1 R/(Δ), {[1,1]_0,[2]_1} = {A,B}")
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = vec![];
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

fn c7_golden_matrix() -> Outcome {
    let m = 4;
    let arr = Arrangement::new(m, 1).unwrap();
    let l = IrrepLabel::parse("1@2,1@3", m, 1).unwrap();
    let phi = build_mf(&l, &arr).unwrap().phi;
    let s = |t: &str| SigmaPoly::parse(t).unwrap();
    let z = SigmaPoly::zero();
    let (a, b, c) = (s("-2*s1"), s("s2*s1"), s("s2"));
    let shown = [
        [a.clone(), z.clone(), b.clone(), z.clone()],
        [z.clone(), a.clone(), z.clone(), b.clone()],
        [c.clone(), z.clone(), a.clone(), z.clone()],
        [z.clone(), c.clone(), z.clone(), a.clone()],
    ];
    let perms = permutations(4);
    let mut best: Option<(Vec<usize>, Vec<usize>, Vec<i64>)> = None;
    'search: for signs in 0..16u32 {
        let sg: Vec<i64> = (0..4).map(|k| if signs >> k & 1 == 1 { -1 } else { 1 }).collect();
        for r in &perms {
            for cperm in &perms {
                let ok = (0..4).all(|i| {
                    (0..4).all(|k| {
                        let v = phi.get(r[i], cperm[k]).scale(&BigRational::from_integer(BigInt::from(sg[k])));
                        v == shown[i][k]
                    })
                });
                if ok {
                    best = Some((r.clone(), cperm.clone(), sg));
                    break 'search;
                }
            }
        }
    }
    match best {
        Some((r, cp, sg)) => {
            let flips: Vec<usize> = sg.iter().enumerate().filter(|(_, s)| **s < 0).map(|(k, _)| k + 1).collect();
            outcome(
                true,
                format!("rows {:?}, columns {:?}, sign change on displayed columns {:?} (basis vectors negated)", r, cp, flips),
            )
        }
        None => outcome(false, "no signed basis permutation reproduces the displayed matrix"),
    }
}

/// Coefficients of [a]_t·[b]_t.
fn qint_product(a: u32, b: u32) -> Vec<usize> {
    let mut out = vec![0usize; (a + b - 1) as usize];
    for i in 0..a {
        for j in 0..b {
            out[(i + j) as usize] += 1;
        }
    }
    out
}

fn c8_dimensions() -> Outcome {
    for (m, p) in admissible_pairs(12) {
        let q = m / p;
        let labels = irreps(m, p).unwrap();
        let sq: usize = labels.iter().map(|l| l.dim() * l.dim()).sum();
        if sq != (2 * m * m / p) as usize {
            return outcome(false, format!("({m},{p}): sum of dim^2 = {sq}"));
        }
        let mut hist: Vec<usize> = vec![];
        let mut total = 0;
        for l in &labels {
            let b = isotypic_basis(l);
            total += b.len();
            for d in b.degrees() {
                let d = d as usize;
                if hist.len() <= d {
                    hist.resize(d + 1, 0);
                }
                hist[d] += 1;
            }
        }
        let order = Arrangement::new(m, p).unwrap().order();
        if total != order {
            return outcome(false, format!("({m},{p}): {total} Specht polynomials, |G| = {order}"));
        }
        if hist != qint_product(2 * q, m) {
            return outcome(false, format!("({m},{p}): degree counts {:?}", hist));
        }
    }
    outcome(true, "all admissible (m,p), m <= 12")
}

fn c9_projector_oracle() -> Outcome {
    let mut checked = 0;
    for (m, p) in admissible_pairs(8) {
        let q = m / p;
        let arr = Arrangement::new(m, p).unwrap();
        let g = &arr.elements;
        let order = BigRational::from_integer(BigInt::from(g.len()));
        let top = (2 * q + m - 2) as usize;
        // tr(g | S_d) by applying g to every monomial
        let traces: Vec<Vec<CycNum>> = (0..=top as u32)
            .map(|d| {
                g.iter()
                    .map(|e| {
                        (0..=d).fold(CycNum::zero(m), |acc, a| {
                            let mono = XYPoly::monomial(m, a, d - a);
                            &acc + &e.act(&mono).coeff(a, d - a)
                        })
                    })
                    .collect()
            })
            .collect();
        for l in irreps(m, p).unwrap() {
            let chi = character_of(&l, g);
            let in_s: Vec<i64> = traces
                .iter()
                .map(|tr| {
                    let s = chi.iter().zip(tr).fold(CycNum::zero(m), |acc, (c, t)| &acc + &(&c.conj() * t));
                    let r = s.to_rational().expect("rational multiplicity") / &order;
                    assert!(r.is_integer());
                    r.to_integer().try_into().unwrap()
                })
                .collect();
            let at = |d: i64| if d < 0 { 0 } else { in_s[d as usize] };
            let (a, b) = ((2 * q) as i64, m as i64);
            let basis = isotypic_basis(&l);
            let degs = basis.degrees();
            for d in 0..=top as i64 {
                let coinv = at(d) - at(d - a) - at(d - b) + at(d - a - b);
                let specht = degs.iter().filter(|&&x| x as i64 == d).count() as i64;
                if coinv * l.dim() as i64 != specht {
                    return outcome(false, format!("({m},{p}) {l} degree {d}: projector {coinv}, Specht {specht}"));
                }
            }
            // the projector fixes each basis polynomial
            let scale = BigRational::new(BigInt::from(l.dim()), BigInt::from(g.len()));
            for b in basis.polys() {
                let mut acc = XYPoly::zero(m);
                for (e, c) in g.iter().zip(&chi) {
                    acc = &acc + &e.act(&b).scale(&c.conj());
                }
                if acc.scale_rational(&scale) != b {
                    return outcome(false, format!("({m},{p}) {l}: projector moves {b}"));
                }
            }
            checked += 1;
        }
    }
    outcome(true, format!("{checked} irreducibles, all admissible m <= 8"))
}

fn c10_linear_characters() -> Outcome {
    let mut n = 0;
    for (m, p) in admissible_pairs(10) {
        let arr = Arrangement::new(m, p).unwrap();
        for o in &arr.orbits {
            if arr.frame.sigma_expand(&o.delta) != o.j_orbit.pow(o.e) {
                return outcome(false, format!("({m},{p}): Δ_O is not j_O^e"));
            }
        }
        for th in arr.linear_characters() {
            let tw = arr.linear_character(&arr.twist_exps(&th.exps));
            let mut factor = SigmaPoly::one();
            for (o, k) in arr.orbits.iter().zip(&th.exps) {
                if *k == o.e - 1 {
                    factor = &factor * &o.delta;
                }
            }
            let lhs = &arr.z * &th.j_theta;
            let rhs = &arr.frame.sigma_expand(&factor) * &tw.j_theta;
            if lhs != rhs {
                return outcome(false, format!("({m},{p}) exps {:?}", th.exps));
            }
            n += 1;
        }
    }
    outcome(true, format!("{n} linear characters, m <= 10, symbolic equality"))
}

fn c11_robustness() -> Outcome {
    let trials = 100u64;
    for (m, p) in [(4, 1), (6, 3), (4, 4)] {
        let base = decompose_group(m, p).unwrap();
        let labeled = base.labeled();
        for t in 0..trials {
            for c in &base.components {
                let (red, _) = c.mf.stable_reduction();
                if red.size == 0 {
                    continue;
                }
                for (bi, block) in red.block_split().iter().enumerate() {
                    let want = classify(block, &base.canonical).unwrap();
                    let moved = random_graded_transform(block, t * 1000 + bi as u64);
                    if moved.verify().is_err() {
                        return outcome(false, format!("({m},{p}) {}: transform broke the identity", c.label));
                    }
                    let got = classify(&moved, &base.canonical);
                    if got.as_ref().ok() != Some(&want) {
                        return outcome(false, format!("({m},{p}) {} trial {t}: {:?} vs {:?}", c.label, got, want));
                    }
                }
            }
            let scaled = decompose_group_with(m, p, DecomposeOptions { basis_scale_seed: Some(t) }).unwrap();
            if scaled.labeled() != labeled {
                return outcome(false, format!("({m},{p}) basis scaling seed {t} changed the classification"));
            }
        }
    }
    outcome(true, format!("{trials} trials each for (4,1), (6,3), (4,4)"))
}

fn main() {
    let criteria: Vec<(u32, &str, fn() -> Outcome)> = vec![
        (1, "MF identity suite", c1_mf_identity),
        (2, "first theorem, p = 1", || compare_printed(&[(2, 1), (3, 1), (4, 1), (5, 1), (6, 1)])),
        (3, "odd case", || compare_printed(&[(6, 3), (9, 3), (10, 5)])),
        (4, "even case", || compare_printed(&[(4, 2), (8, 2), (8, 4)])),
        (5, "p = m", || compare_printed(&[(3, 3), (5, 5), (4, 4), (6, 6)])),
        (6, "(6,3) worked example", c6_worked_example),
        (7, "golden 4x4 matrix at m = 4", c7_golden_matrix),
        (8, "dimension bookkeeping", c8_dimensions),
        (9, "projector oracle", c9_projector_oracle),
        (10, "linear characters and z", c10_linear_characters),
        (11, "robustness", c11_robustness),
    ];
    let mut failed = vec![];
    for (n, name, f) in criteria {
        let o = f();
        println!("criterion {n:>2} {name}: {} ({})", if o.pass { "PASS" } else { "FAIL" }, o.detail);
        if !o.pass {
            failed.push(n);
        }
    }
    for (n, why) in KNOWN_FAILURES {
        if failed.contains(n) {
            println!("criterion {n:>2} is a known failure: {why}");
        }
    }
    for (m, p) in [(4, 2), (8, 2), (8, 4), (6, 2), (12, 4)] {
        let t = check_theorems(&decompose_group(m, p).unwrap());
        assert!(t.matches, "({m},{p}) differs from the reconciled count: {:?}", t.diffs);
    }
    println!("even case with q-1 copies of D+ and D-: matches for (4,2), (8,2), (8,4), (6,2), (12,4)");
    let known: Vec<u32> = KNOWN_FAILURES.iter().map(|k| k.0).collect();
    if failed != known {
        eprintln!("failing criteria {failed:?} differ from the recorded known failures {known:?}");
        std::process::exit(1);
    }
    println!("acceptance: {} passed, known failures {:?}", 11 - failed.len(), known);
}
