use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use reflmf::classify::{canonical_list, classify, random_graded_transform, Singularity};
use reflmf::cyclotomic::CycNum;
use reflmf::decompose::decompose_group;
use reflmf::group::{build_group, GroupElement};
use reflmf::sigma::SigmaPoly;
use reflmf::xypoly::XYPoly;

fn cyc(order: u32) -> impl Strategy<Value = CycNum> {
    prop::collection::vec(-6i64..=6, order as usize).prop_map(move |v| {
        v.iter().enumerate().fold(CycNum::zero(order), |acc, (k, c)| {
            &acc + &CycNum::root_power(order, k as i64).scale(&BigRational::from_integer(BigInt::from(*c)))
        })
    })
}

fn cyc_triple() -> impl Strategy<Value = (CycNum, CycNum, CycNum)> {
    (1u32..=12).prop_flat_map(|n| (cyc(n), cyc(n), cyc(n)))
}

fn sigma() -> impl Strategy<Value = SigmaPoly> {
    prop::collection::vec((-5i64..=5, 0u32..4, 0u32..4), 0..5).prop_map(|ts| {
        ts.into_iter().fold(SigmaPoly::zero(), |acc, (c, i, j)| &acc + &SigmaPoly::mono(c, i, j))
    })
}

fn xy(order: u32) -> impl Strategy<Value = XYPoly> {
    prop::collection::vec((cyc(order), 0u32..4, 0u32..4), 0..4).prop_map(move |ts| {
        ts.into_iter().fold(XYPoly::zero(order), |acc, (c, a, b)| &acc + &XYPoly::term(c, a, b))
    })
}

fn element(m: u32) -> impl Strategy<Value = GroupElement> {
    (any::<bool>(), 0i64..m as i64, 0i64..m as i64).prop_map(move |(s, a, b)| GroupElement::new(m, s, a, b))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn cyclotomic_ring_laws((a, b, c) in cyc_triple()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(a.conj().conj(), a.clone());
        prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn sigma_ring_laws(a in sigma(), b in sigma(), c in sigma()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        if !b.is_zero() {
            prop_assert_eq!((&a * &b).div_exact(&b), Some(a.clone()));
        }
    }

    #[test]
    fn sigma_text_round_trip(a in sigma()) {
        let s = a.to_string();
        prop_assert_eq!(SigmaPoly::parse(&s).unwrap(), a);
    }

    #[test]
    fn xy_text_round_trip(f in (1u32..=8).prop_flat_map(xy)) {
        let s = f.to_string();
        prop_assert_eq!(XYPoly::parse(&s, f.order()).unwrap(), f);
    }

    #[test]
    fn action_is_a_ring_map((m, f, g, e) in (1u32..=8).prop_flat_map(|m| (Just(m), xy(m), xy(m), element(m)))) {
        prop_assert_eq!(e.act(&(&f * &g)), &e.act(&f) * &e.act(&g));
        prop_assert_eq!(e.act(&(&f + &g)), &e.act(&f) + &e.act(&g));
        prop_assert_eq!(e.inverse().act(&e.act(&f)), f.clone());
        prop_assert_eq!(GroupElement::identity(m).act(&f), f);
    }

    #[test]
    fn group_is_closed((m, p) in (2u32..=8).prop_flat_map(|m| {
        let divisors: Vec<u32> = (1..=m).filter(|p| m % p == 0).collect();
        (Just(m), prop::sample::select(divisors))
    })) {
        if (m, p) == (2, 2) {
            return Ok(());
        }
        let g = build_group(m, p).unwrap();
        prop_assert_eq!(g.len() as u32, 2 * m * m / p);
        for a in g.iter().take(6) {
            for b in &g {
                prop_assert!(a.mul(b).is_member(p));
            }
        }
    }

    #[test]
    fn classes_survive_graded_transforms(seed in any::<u64>()) {
        let d = decompose_group(6, 3).unwrap();
        for c in &d.components {
            let moved = random_graded_transform(&c.mf, seed);
            prop_assert!(moved.verify().is_ok());
            let mut got = classify(&moved, &d.canonical).unwrap();
            got.sort();
            prop_assert_eq!(&got, &c.classes);
        }
    }
}

#[test]
fn normal_forms_are_idempotent() {
    for (m, p) in [(3, 1), (6, 3), (8, 2), (12, 4), (5, 5), (6, 6)] {
        let sing = Singularity::of(m, p);
        let list = canonical_list(m, p).unwrap();
        for e in &list.entries {
            let once = e.class.normalize(sing);
            let twice: Vec<_> = once.iter().flat_map(|c| c.normalize(sing)).collect();
            assert_eq!(once, twice, "({m},{p}) {}", e.class);
        }
    }
}

#[test]
fn reduction_keeps_the_identity() {
    for (m, p) in [(4, 1), (6, 2), (6, 3), (6, 6)] {
        for c in decompose_group(m, p).unwrap().components {
            let (red, units) = c.mf.stable_reduction();
            red.verify().unwrap();
            assert_eq!(red.size + units, c.mf.size);
            for b in red.block_split() {
                b.verify().unwrap();
            }
        }
    }
}

#[test]
fn linear_characters_are_the_one_dimensional_irreducibles() {
    for (m, p) in reflmf::group::admissible_pairs(10) {
        let arr = reflmf::group::Arrangement::new(m, p).unwrap();
        let g = &arr.elements;
        let lin = arr.linear_characters();
        let labels = reflmf::rep::irreps(m, p).unwrap();
        let ones: Vec<_> = labels.iter().filter(|l| l.dim() == 1).collect();
        assert_eq!(lin.len(), ones.len(), "({m},{p})");
        let mut seen = vec![];
        for th in &lin {
            for (a, ga) in g.iter().zip(&th.values) {
                assert_eq!(a.act(&th.j_theta), th.j_theta.scale(ga), "({m},{p}) {:?}", th.exps);
            }
            let hit: Vec<_> = ones
                .iter()
                .filter(|l| reflmf::rep::character_of(l, g) == th.values)
                .map(|l| l.to_string())
                .collect();
            assert_eq!(hit.len(), 1, "({m},{p}) {:?}", th.exps);
            seen.push(hit[0].clone());
        }
        seen.sort();
        seen.dedup();
        assert_eq!(seen.len(), ones.len());
    }
}
