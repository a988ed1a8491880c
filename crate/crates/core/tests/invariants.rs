use kleppner_core::circle::CircleValue;
use kleppner_core::cocycle::{Cocycle, Homomorphism, ValidationMode};
use kleppner_core::fc::{icc_quotient, upper_fc_series};
use kleppner_core::group::{ClassSize, Group, GroupElement};
use kleppner_core::kleppner::is_sigma_regular;
use proptest::prelude::*;
use rand_chacha::ChaCha8Rng;
use rand_core::SeedableRng;

fn infinite_groups() -> Vec<Group> {
    vec![
        Group::free_abelian(3),
        Group::infinite_dihedral(),
        Group::heisenberg(),
        Group::baumslag_solitar(2).unwrap(),
        Group::baumslag_solitar(3).unwrap(),
        Group::free_product(3).unwrap(),
        Group::lamplighter(),
        Group::direct_product(vec![Group::heisenberg(), Group::cyclic(3).unwrap()]).unwrap(),
    ]
}

fn finite_groups() -> Vec<Group> {
    vec![
        Group::cyclic(6).unwrap(),
        Group::dihedral(4).unwrap(),
        Group::dihedral(5).unwrap(),
        Group::quaternion(),
        Group::elementary_abelian(2, 3).unwrap(),
        Group::direct_product(vec![Group::dihedral(4).unwrap(), Group::cyclic(2).unwrap()]).unwrap(),
    ]
}

fn all_groups() -> Vec<Group> {
    let mut v = infinite_groups();
    v.extend(finite_groups());
    v
}

fn triple(g: &Group, seed: u64) -> (GroupElement, GroupElement, GroupElement) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (g.sample(&mut rng, 4), g.sample(&mut rng, 4), g.sample(&mut rng, 4))
}

fn torus(num: i64, den: i64) -> Cocycle {
    let z = CircleValue::identity();
    Cocycle::bicharacter(
        &Group::free_abelian(2),
        vec![vec![z.clone(), CircleValue::from_fraction(num, den)], vec![z.clone(), z]],
    )
    .unwrap()
}

/// Random bicharacter on `Z_p^k` with entries in `(1/p)Z`.
fn elementary_bicharacter(p: u32, k: usize, entries: &[i64]) -> Cocycle {
    let g = Group::elementary_abelian(p, k as u32).unwrap();
    let theta = (0..k)
        .map(|i| {
            (0..k)
                .map(|j| CircleValue::from_fraction(entries[(i * k + j) % entries.len()], i64::from(p)))
                .collect()
        })
        .collect();
    Cocycle::bicharacter(&g, theta).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn group_axioms(idx in 0usize..14, seed in any::<u64>()) {
        let groups = all_groups();
        let g = &groups[idx % groups.len()];
        let (a, b, c) = triple(g, seed);
        let ab_c = g.multiply(&g.multiply(&a, &b).unwrap(), &c).unwrap();
        let a_bc = g.multiply(&a, &g.multiply(&b, &c).unwrap()).unwrap();
        prop_assert_eq!(ab_c, a_bc);
        let e = g.identity();
        prop_assert_eq!(g.multiply(&a, &e).unwrap(), a.clone());
        prop_assert_eq!(g.multiply(&e, &a).unwrap(), a.clone());
        let inv = g.inverse(&a).unwrap();
        prop_assert!(g.is_identity(&g.multiply(&a, &inv).unwrap()));
        prop_assert!(g.is_identity(&g.multiply(&inv, &a).unwrap()));
    }

    #[test]
    fn conjugation_is_an_automorphism(idx in 0usize..14, seed in any::<u64>()) {
        let groups = all_groups();
        let g = &groups[idx % groups.len()];
        let (h, a, b) = triple(g, seed);
        let lhs = g.conjugate(&g.multiply(&a, &b).unwrap(), &h).unwrap();
        let rhs = g.multiply(&g.conjugate(&a, &h).unwrap(), &g.conjugate(&b, &h).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn bs_power_is_central(n in 2u32..5, seed in any::<u64>()) {
        let g = Group::baumslag_solitar(n).unwrap();
        let z = GroupElement::BaumslagSolitar { word: vec![], central: 1 };
        let (a, _, _) = triple(&g, seed);
        prop_assert!(g.commutes(&z, &a).unwrap());
        prop_assert!(g.is_central(&z).unwrap());
    }

    #[test]
    fn bs_pullback_satisfies_cocycle_identity(n in 2u32..4, num in 0i64..12, den in 1i64..12, seed in any::<u64>()) {
        let g = Group::baumslag_solitar(n).unwrap();
        let hom = Homomorphism::new(&g, 2, vec![vec![1, 0], vec![0, 1]]).unwrap();
        let s = Cocycle::pullback(&g, hom, torus(num, den)).unwrap();
        let report = s.validate(ValidationMode::Sampled { count: 32, seed }).unwrap();
        prop_assert!(report.is_valid());
    }

    #[test]
    fn elementary_bicharacters_are_valid(p in prop::sample::select(vec![2u32, 3]), entries in prop::collection::vec(0i64..3, 9)) {
        let s = elementary_bicharacter(p, 3, &entries);
        let report = s.validate(ValidationMode::Exhaustive).unwrap();
        prop_assert!(report.is_valid());
        prop_assert_eq!(report.violation_count, 0);
    }

    #[test]
    fn defect_is_antisymmetric(p in prop::sample::select(vec![2u32, 3]), entries in prop::collection::vec(0i64..3, 9), a in 0u32..27, b in 0u32..27) {
        let s = elementary_bicharacter(p, 3, &entries);
        let n = p.pow(3);
        let (g, h) = (GroupElement::Finite(a % n), GroupElement::Finite(b % n));
        let d = s.regularity_defect(&g, &h).unwrap();
        let e = s.regularity_defect(&h, &g).unwrap();
        prop_assert!(d.mul(&e).unwrap().is_identity());
    }

    #[test]
    fn regularity_is_conjugation_invariant(idx in 0usize..6, a in 0u32..64, b in 0u32..64) {
        let groups = finite_groups();
        let g = &groups[idx % groups.len()];
        let n = g.order().unwrap() as u32;
        let s = if g.is_abelian() {
            Cocycle::pullback_finite(g, g.generators().iter().map(|_| GroupElement::Finite(1)).collect(), &Cocycle::pauli())
                .unwrap_or_else(|_| Cocycle::trivial(g))
        } else {
            Cocycle::trivial(g)
        };
        let x = GroupElement::Finite(a % n);
        let h = GroupElement::Finite(b % n);
        let y = g.conjugate(&x, &h).unwrap();
        prop_assert_eq!(
            is_sigma_regular(&s, &x, 0).unwrap().is_regular(),
            is_sigma_regular(&s, &y, 0).unwrap().is_regular()
        );
    }

    #[test]
    fn sampled_class_sizes_are_consistent(idx in 0usize..8, seed in any::<u64>()) {
        let groups = infinite_groups();
        let g = &groups[idx % groups.len()];
        let (a, _, _) = triple(g, seed);
        match g.class_size(&a, 20).unwrap() {
            ClassSize::Finite(1) => prop_assert!(g.is_central(&a).unwrap()),
            ClassSize::Infinite(cert) => {
                prop_assert!(!g.is_central(&a).unwrap());
                prop_assert!(cert.verified_powers > 0);
            }
            _ => {}
        }
    }
}

#[test]
fn class_sizes_sum_to_order() {
    for g in finite_groups() {
        let t = g.as_finite().unwrap();
        let mut total = 0u64;
        for class in t.conjugacy_classes() {
            let size = match g.class_size(&GroupElement::Finite(class[0]), 0).unwrap() {
                ClassSize::Finite(n) => n,
                other => panic!("finite group class size {other:?}"),
            };
            assert_eq!(size as usize, class.len());
            total += size;
        }
        assert_eq!(total as usize, t.order());
    }
}

#[test]
fn fc_series_is_increasing_and_quotients_are_icc() {
    for g in all_groups() {
        let series = upper_fc_series(&g, 8, 20).unwrap();
        for pair in series.steps.windows(2) {
            for x in pair[0].generators() {
                assert!(pair[1].contains(x), "{}: series not increasing", g.name());
            }
        }
        if let Ok(q) = icc_quotient(&g, 8, 20) {
            assert!(!q.group().is_icc(20).unwrap().is_no(), "{}: ICC quotient fails", g.name());
        }
    }
}
