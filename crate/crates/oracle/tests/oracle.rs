use kleppner_core::circle::CircleValue;
use kleppner_core::cocycle::Cocycle;
use kleppner_core::group::Group;
use kleppner_oracle::{ExpansionForm, OracleError, TraceVector, TwistedAlgebra};
use proptest::prelude::*;
use rand_chacha::ChaCha8Rng;
use rand_core::SeedableRng;

fn trivial(g: Group) -> TwistedAlgebra {
    TwistedAlgebra::build(&Cocycle::trivial(&g), None).unwrap()
}

#[test]
fn z2_is_two_permutations() {
    let a = trivial(Group::cyclic(2).unwrap());
    assert_eq!(a.order(), 2);
    assert_eq!(a.lambda(1).perm, vec![1, 0]);
    assert!(a.unitarity_defect() < 1e-12);
    assert_eq!(a.center_dimension().unwrap(), 2);
}

#[test]
fn pauli_is_a_full_matrix_algebra() {
    let a = TwistedAlgebra::build(&Cocycle::pauli(), None).unwrap();
    assert!(a.multiplicativity_defect() < 1e-12);
    assert!(a.unitarity_defect() < 1e-12);
    assert_eq!(a.center_dimension().unwrap(), 1);
    assert_eq!(a.block_structure().unwrap(), vec![2]);
    assert_eq!(a.invariant_trace_space_dim().unwrap(), 1);
    assert!(a.conjugation_identity_defect(2, 1).unwrap() < 1e-12);
    let tau = TraceVector::canonical(&a);
    let square = a.lambda(2).mul(a.lambda(2));
    let e = a.identity_index();
    assert!((tau.at(e) - 1.0).norm() < 1e-12);
    assert!((square.phase[e] * tau.at(square.perm[e]) - 1.0).norm() < 1e-12);
}

#[test]
fn group_algebra_examples() {
    let z4 = trivial(Group::cyclic(4).unwrap());
    assert_eq!(z4.center_dimension().unwrap(), 4);
    let k4 = trivial(Group::elementary_abelian(2, 2).unwrap());
    assert_eq!(k4.block_structure().unwrap(), vec![1, 1, 1, 1]);
    assert_eq!(k4.invariant_trace_space_dim().unwrap(), 4);
    let d4 = trivial(Group::dihedral(4).unwrap());
    assert_eq!(d4.center_dimension().unwrap(), 5);
    assert_eq!(d4.invariant_trace_space_dim().unwrap(), 5);
    let q8 = trivial(Group::quaternion());
    assert_eq!(q8.block_structure().unwrap(), vec![1, 1, 1, 1, 2]);
}

#[test]
fn canonical_trace_vanishes_off_identity() {
    let a = TwistedAlgebra::build(&Cocycle::pauli(), None).unwrap();
    let tau = TraceVector::canonical(&a);
    tau.check_state(&a).unwrap();
    for g in 0..a.order() {
        let expected = if g == a.identity_index() { 1.0 } else { 0.0 };
        assert!((tau.at(g) - expected).norm() < 1e-12);
    }
}

#[test]
fn extreme_traces_are_states() {
    let a = trivial(Group::dihedral(4).unwrap());
    let traces = TraceVector::extreme(&a).unwrap();
    assert_eq!(traces.len(), 5);
    for t in &traces {
        t.check_state(&a).unwrap();
    }
    let bogus = TraceVector {
        values: vec![nalgebra::Complex::new(2.0, 0.0); 8],
    };
    assert!(matches!(bogus.check_state(&a), Err(OracleError::InvalidTrace(_))));
}

#[test]
fn missing_theta_and_size_cap() {
    // σ(g,h) = f(g)f(h)/f(gh) with f(1) = e^{2πiθ} on Z2.
    let t = CircleValue::theta();
    let table = vec![
        vec![CircleValue::identity(), CircleValue::identity()],
        vec![CircleValue::identity(), t.mul(&t).unwrap()],
    ];
    let s = Cocycle::table(&Group::cyclic(2).unwrap(), table).unwrap();
    assert!(matches!(TwistedAlgebra::build(&s, None), Err(OracleError::MissingThetaValue)));
    let a = TwistedAlgebra::build(&s, Some(0.3)).unwrap();
    assert!(a.multiplicativity_defect() < 1e-12);
    let big = Group::cyclic(300).unwrap();
    assert!(matches!(
        TwistedAlgebra::build(&Cocycle::trivial(&big), None),
        Err(OracleError::GroupTooLarge { order: 300, .. })
    ));
}

#[test]
fn carey_moran_degenerate_cases() {
    let a = trivial(Group::dihedral(4).unwrap());
    let tau = TraceVector::canonical(&a);
    let e = a.identity_index();
    assert!(a.carey_moran_residual(&tau, 2, &[0, 3], ExpansionForm::Corrected).unwrap() < 1e-12);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let psi = TraceVector::random(&a, &mut rng).unwrap();
    assert!(a.carey_moran_residual(&psi, e, &[e], ExpansionForm::Corrected).unwrap() < 1e-12);
}

#[test]
fn carey_moran_uniform_mixture_on_d4() {
    let a = trivial(Group::dihedral(4).unwrap());
    let extreme = TraceVector::extreme(&a).unwrap();
    let mut values = vec![nalgebra::Complex::new(0.0, 0.0); a.order()];
    for t in &extreme {
        for (v, x) in values.iter_mut().zip(&t.values) {
            *v += x / extreme.len() as f64;
        }
    }
    let psi = TraceVector { values };
    // r = index 1, s = index 4 in the dihedral presentation.
    let r = a.carey_moran_residual(&psi, 1, &[a.identity_index(), 4], ExpansionForm::Corrected).unwrap();
    assert!(r < 1e-10, "{r}");
}

/// Brute force over every state, h and pair of distinct g_i on small groups:
/// only the expansion carrying |ψ(h)|² on the cross sum matches.
#[test]
fn expansion_form_brute_force() {
    let groups = [
        Group::cyclic(3).unwrap(),
        Group::elementary_abelian(2, 2).unwrap(),
        Group::dihedral(3).unwrap(),
        Group::dihedral(4).unwrap(),
        Group::quaternion(),
    ];
    let mut without_factor_failures = 0;
    for g in groups {
        let a = trivial(g);
        let n = a.order();
        let mut states = TraceVector::extreme(&a).unwrap();
        states.push(TraceVector::random(&a, &mut ChaCha8Rng::seed_from_u64(n as u64)).unwrap());
        for psi in &states {
            for h in 0..n {
                for i in 0..n {
                    for j in (i + 1)..n {
                        let gs = [i, j];
                        let good = a.carey_moran_residual(psi, h, &gs, ExpansionForm::Corrected).unwrap();
                        assert!(good < 1e-10, "corrected form residual {good}");
                        let bad = a.carey_moran_residual(psi, h, &gs, ExpansionForm::WithoutCrossFactor).unwrap();
                        if bad > 1e-6 {
                            without_factor_failures += 1;
                        }
                    }
                }
            }
        }
    }
    assert!(without_factor_failures > 0);
}

#[test]
fn carey_moran_rejects_twisted_algebras() {
    let a = TwistedAlgebra::build(&Cocycle::pauli(), None).unwrap();
    let tau = TraceVector::canonical(&a);
    assert!(matches!(
        a.carey_moran_residual(&tau, 1, &[0], ExpansionForm::Corrected),
        Err(OracleError::Precondition(_))
    ));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn blocks_square_sum_to_order(p in prop::sample::select(vec![2u32, 3]), a in 0i64..3, b in 0i64..3, c in 0i64..3) {
        let g = Group::elementary_abelian(p, 2).unwrap();
        let den = i64::from(p);
        let theta = vec![
            vec![CircleValue::from_fraction(a, den), CircleValue::from_fraction(b, den)],
            vec![CircleValue::from_fraction(c, den), CircleValue::identity()],
        ];
        let s = Cocycle::bicharacter(&g, theta).unwrap();
        let alg = TwistedAlgebra::build(&s, None).unwrap();
        let blocks = alg.block_structure().unwrap();
        prop_assert_eq!(blocks.iter().map(|n| n * n).sum::<usize>(), alg.order());
        prop_assert_eq!(blocks.len(), alg.center_dimension().unwrap());
        prop_assert_eq!(blocks.len(), alg.invariant_trace_space_dim().unwrap());
        prop_assert!(alg.conjugation_max_defect().unwrap() < 1e-12);
    }

    #[test]
    fn canonical_trace_is_gamma_invariant(seed in any::<u64>()) {
        let a = TwistedAlgebra::build(&Cocycle::pauli(), None).unwrap();
        let tau = TraceVector::canonical(&a);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = (rand_core::RngCore::next_u32(&mut rng) % 4) as usize;
        for h in 0..4 {
            let lg = a.lambda(g);
            let x = lg.mul(a.lambda(h)).mul(&lg.adjoint());
            let e = a.identity_index();
            let lhs = x.phase[e] * tau.at(x.perm[e]);
            prop_assert!((lhs - tau.at(h)).norm() < 1e-12);
        }
    }
}
