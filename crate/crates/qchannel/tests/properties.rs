//! Property tests for the module invariants: random inputs are generated
//! from proptest-chosen seeds so every case is reproducible.

mod common;

use common::*;
use proptest::prelude::*;

use qchannel::channel::{
    apply_kraus, evolve, kraus_from_unitary, pq_unitary, InteractionUnitary, MapKind, PQParams,
};
use qchannel::measures::{
    concurrence, concurrence_pure, singlet_fraction, EntanglementSummary,
};
use qchannel::qmat::{herm_eig, partial_trace_matrix, wootters_lambdas, ComplexMatrix};
use qchannel::sampling::{haar_unitary, SeedSpec};
use qchannel::teleport::{
    average_fidelity, bell_states, optimal_correction, sts_run, CorrectionSet, AXIS_DIRECTIONS,
};

fn haar4(seed: u64, stream: u64) -> InteractionUnitary {
    InteractionUnitary::new(haar_unitary(4, &SeedSpec::new(seed, stream)).unwrap()).unwrap()
}

fn local2(seed: u64, stream: u64) -> ComplexMatrix {
    haar_unitary(2, &SeedSpec::new(seed, stream)).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn kron_mixed_product_property(seed in any::<u64>()) {
        let a = random_matrix(2, seed, 0);
        let b = random_matrix(2, seed, 1);
        let c_m = random_matrix(2, seed, 2);
        let d = random_matrix(2, seed, 3);
        let lhs = a.kron(&b).unwrap().mul(&c_m.kron(&d).unwrap()).unwrap();
        let rhs = a.mul(&c_m).unwrap().kron(&b.mul(&d).unwrap()).unwrap();
        prop_assert!(lhs.max_abs_diff(&rhs) < 1e-12);
    }

    #[test]
    fn kron_associativity(seed in any::<u64>()) {
        let a = random_matrix(2, seed, 0);
        let b = random_matrix(2, seed, 1);
        let c_m = random_matrix(2, seed, 2);
        let lhs = a.kron(&b).unwrap().kron(&c_m).unwrap();
        let rhs = a.kron(&b.kron(&c_m).unwrap()).unwrap();
        prop_assert!(lhs.max_abs_diff(&rhs) < 1e-12);
    }

    #[test]
    fn partial_trace_full_contraction_is_unit_trace(seed in any::<u64>()) {
        for (dim, dims) in [(4usize, vec![2usize, 2]), (8, vec![2, 2, 2])] {
            let rho = random_density(dim, seed, 7);
            let scalar = partial_trace_matrix(rho.matrix(), &[], &dims).unwrap();
            prop_assert!((scalar.at(0, 0) - c(1.0, 0.0)).norm() < 1e-12);
        }
    }

    #[test]
    fn herm_eig_reconstructs_and_is_orthonormal(seed in any::<u64>(), dim in prop::sample::select(vec![2usize, 4, 8])) {
        let h = random_hermitian(dim, seed, 11).hermitized();
        let (vals, vecs) = herm_eig(&h).unwrap();
        // Descending order.
        for w in vals.windows(2) {
            prop_assert!(w[0] >= w[1]);
        }
        let lambda = ComplexMatrix::from_fn(dim, dim, |i, j| {
            if i == j { c(vals[i], 0.0) } else { c(0.0, 0.0) }
        }).unwrap();
        let rebuilt = vecs.mul(&lambda).unwrap().mul(&vecs.adjoint()).unwrap();
        prop_assert!(rebuilt.max_abs_diff(&h) < 1e-10);
        prop_assert!(vecs.unitarity_defect() < 1e-10);
    }

    #[test]
    fn wootters_lambdas_are_local_unitary_invariant(seed in any::<u64>()) {
        let rho = random_density(4, seed, 3);
        let u_local = local2(seed, 100).kron(&local2(seed, 101)).unwrap();
        let rotated = qchannel::qmat::DensityMatrix::new(
            u_local.mul(rho.matrix()).unwrap().mul(&u_local.adjoint()).unwrap().hermitized()
        ).unwrap();
        let a = wootters_lambdas(&rho).unwrap();
        let b = wootters_lambdas(&rotated).unwrap();
        for (x, y) in a.iter().zip(&b) {
            prop_assert!((x - y).abs() < 1e-10);
        }
    }

    #[test]
    fn wootters_lambdas_match_charpoly_oracle(seed in any::<u64>()) {
        let rho = random_density(4, seed, 5);
        let ours = wootters_lambdas(&rho).unwrap();
        let oracle = wootters_lambdas_oracle(&rho);
        for (x, y) in ours.iter().zip(&oracle) {
            prop_assert!((x - y).abs() < 1e-6, "{x} vs {y}");
        }
        prop_assert!((concurrence(&rho).unwrap() - concurrence_oracle(&rho)).abs() < 1e-6);
    }

    #[test]
    fn pure_and_mixed_concurrence_agree(seed in any::<u64>()) {
        let psi = random_pure(2, seed, 9);
        let from_rho = concurrence(&psi.density().unwrap()).unwrap();
        let fast = concurrence_pure(&psi).unwrap();
        prop_assert!((from_rho - fast).abs() < 1e-10);
    }

    #[test]
    fn pure_states_sit_on_the_line(seed in any::<u64>()) {
        let psi = random_pure(2, seed, 13);
        let (f, _) = singlet_fraction(&psi.density().unwrap()).unwrap();
        let c_val = concurrence_pure(&psi).unwrap();
        prop_assert!((f - (1.0 + c_val) / 2.0).abs() < 1e-9);
    }

    #[test]
    fn mixed_states_never_exceed_the_line(seed in any::<u64>()) {
        let rho = random_density(4, seed, 17);
        let (f, e_opt) = singlet_fraction(&rho).unwrap();
        let c_val = concurrence(&rho).unwrap();
        prop_assert!(f <= (1.0 + c_val) / 2.0 + 1e-9);
        // The maximizer attains the fraction and is maximally entangled.
        prop_assert!((rho.overlap(&e_opt).unwrap() - f).abs() < 1e-9);
        let half = ComplexMatrix::identity(2).unwrap().scale(c(0.5, 0.0));
        for q in 0..2 {
            prop_assert!(e_opt.reduced_density(&[q]).unwrap().matrix().max_abs_diff(&half) < 1e-9);
        }
    }

    #[test]
    fn measures_are_local_unitary_invariant(seed in any::<u64>()) {
        let rho = random_density(4, seed, 19);
        let u_local = local2(seed, 200).kron(&local2(seed, 201)).unwrap();
        let rotated = qchannel::qmat::DensityMatrix::new(
            u_local.mul(rho.matrix()).unwrap().mul(&u_local.adjoint()).unwrap().hermitized()
        ).unwrap();
        prop_assert!((concurrence(&rho).unwrap() - concurrence(&rotated).unwrap()).abs() < 1e-9);
        let (f_a, _) = singlet_fraction(&rho).unwrap();
        let (f_b, _) = singlet_fraction(&rotated).unwrap();
        prop_assert!((f_a - f_b).abs() < 1e-9);
    }

    #[test]
    fn singlet_fraction_dominates_sampled_overlaps(seed in any::<u64>()) {
        let rho = random_density(4, seed, 23);
        let (f, _) = singlet_fraction(&rho).unwrap();
        for stream in 0..50 {
            let e = max_entangled_from(&local2(seed, 300 + stream));
            prop_assert!(rho.overlap(&e).unwrap() <= f + 1e-9);
        }
    }

    #[test]
    fn kraus_sets_are_complete_and_reproduce_partial_traces(seed in any::<u64>()) {
        let u = haar4(seed, 0);
        let total = evolve(&u, &phi_plus()).unwrap();
        let p_plus = phi_plus().density().unwrap();
        let lambda = kraus_from_unitary(&u, MapKind::Lambda).unwrap();
        let gamma = kraus_from_unitary(&u, MapKind::Gamma).unwrap();
        let rho_ab = total.reduced_density(&[0, 1]).unwrap();
        let rho_eb = total.reduced_density(&[2, 1]).unwrap();
        prop_assert!(apply_kraus(&lambda, &p_plus).unwrap().matrix().max_abs_diff(rho_ab.matrix()) < 1e-10);
        prop_assert!(apply_kraus(&gamma, &p_plus).unwrap().matrix().max_abs_diff(rho_eb.matrix()) < 1e-10);
    }

    #[test]
    fn kraus_index_swap_is_exact(seed in any::<u64>()) {
        let u = haar4(seed, 1);
        let lambda = kraus_from_unitary(&u, MapKind::Lambda).unwrap();
        let gamma = kraus_from_unitary(&u, MapKind::Gamma).unwrap();
        for k in 0..2 {
            for i in 0..2 {
                for j in 0..2 {
                    let diff = (gamma.operators()[k].at(i, j) - lambda.operators()[i].at(k, j)).norm();
                    prop_assert!(diff <= 1e-14);
                }
            }
        }
    }

    #[test]
    fn stinespring_freedom_rotates_eb_state_locally(seed in any::<u64>()) {
        // U' = (I (x) V_E) U realizes the same channel on A with a rotated
        // dilation; the environment-Bob state rotates by V on E.
        let u = haar4(seed, 2);
        let v = local2(seed, 400);
        let id = ComplexMatrix::identity(2).unwrap();
        let lifted = id.kron(&v).unwrap();
        let u_prime = InteractionUnitary::new(lifted.mul(u.matrix()).unwrap()).unwrap();

        // Same induced map on Alice's side.
        let p_plus = phi_plus().density().unwrap();
        let l1 = apply_kraus(&kraus_from_unitary(&u, MapKind::Lambda).unwrap(), &p_plus).unwrap();
        let l2 = apply_kraus(&kraus_from_unitary(&u_prime, MapKind::Lambda).unwrap(), &p_plus).unwrap();
        prop_assert!(l1.matrix().max_abs_diff(l2.matrix()) < 1e-12);

        let eb = evolve(&u, &phi_plus()).unwrap().reduced_density(&[2, 1]).unwrap();
        let eb_prime = evolve(&u_prime, &phi_plus()).unwrap().reduced_density(&[2, 1]).unwrap();
        let v_on_e = v.kron(&id).unwrap();
        let rotated = v_on_e.mul(eb.matrix()).unwrap().mul(&v_on_e.adjoint()).unwrap();
        prop_assert!(rotated.max_abs_diff(eb_prime.matrix()) < 1e-12);

        // Local-unitary invariants agree: spectra, reductions, concurrence,
        // singlet fraction.
        let spec_a = eb.eigenvalues().unwrap();
        let spec_b = eb_prime.eigenvalues().unwrap();
        for (x, y) in spec_a.iter().zip(&spec_b) {
            prop_assert!((x - y).abs() < 1e-9);
        }
        prop_assert!((concurrence(&eb).unwrap() - concurrence(&eb_prime).unwrap()).abs() < 1e-9);
        let (f_a, _) = singlet_fraction(&eb).unwrap();
        let (f_b, _) = singlet_fraction(&eb_prime).unwrap();
        prop_assert!((f_a - f_b).abs() < 1e-9);
    }

    #[test]
    fn pq_completion_choice_is_unobservable(p in 0.0f64..=1.0, q in 0.0f64..=1.0, seed in any::<u64>()) {
        // Any valid completion differs by a unitary on the input span of
        // {|01>, |11>}, which the |e=0> initial environment never reaches.
        let params = PQParams::new(p, q).unwrap();
        let u = pq_unitary(&params).unwrap();
        let w = local2(seed, 500);
        // R fixes |00> and |10>, rotates |01>/|11> by w.
        let r = ComplexMatrix::from_fn(4, 4, |i, j| {
            let (qi, qj) = (i % 2, j % 2);
            if qi == 0 && qj == 0 {
                if i == j { c(1.0, 0.0) } else { c(0.0, 0.0) }
            } else if qi == 1 && qj == 1 {
                w.at(i / 2, j / 2)
            } else {
                c(0.0, 0.0)
            }
        }).unwrap();
        let u_alt = InteractionUnitary::new(u.matrix().mul(&r).unwrap()).unwrap();
        let a = evolve(&u, &phi_plus()).unwrap();
        let b = evolve(&u_alt, &phi_plus()).unwrap();
        let diff: f64 = a.amplitudes().iter().zip(b.amplitudes()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max);
        prop_assert!(diff < 1e-14);
    }

    #[test]
    fn main_relation_and_monogamy_hold_per_sample(seed in any::<u64>()) {
        let u = haar4(seed, 3);
        let total = evolve(&u, &phi_plus()).unwrap();
        let s = EntanglementSummary::from_state(&total).unwrap();
        let rhs = (1.0 + s.c_ab) * (1.0 + (1.0 - s.c_eb * s.c_eb).max(0.0).sqrt()) / 4.0;
        prop_assert!((s.f_ab - rhs).abs() < 1e-9);
        prop_assert!((s.c_ab * s.c_ab + s.c_eb * s.c_eb + s.tau_abe - 1.0).abs() < 1e-9);
        prop_assert!((s.c_b_ae - 1.0).abs() < 1e-9);
        prop_assert!(s.tau_abe >= -1e-9);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn outcome_decomposition_and_convexity(seed in any::<u64>(), sx in -1.0f64..=1.0, sy in -1.0f64..=1.0, sz in -1.0f64..=1.0) {
        let norm = (sx * sx + sy * sy + sz * sz).sqrt();
        prop_assume!(norm > 1e-3);
        let s = [sx / norm, sy / norm, sz / norm];
        let u = haar4(seed, 4);
        let total = evolve(&u, &phi_plus()).unwrap();
        let summary = EntanglementSummary::from_state(&total).unwrap();
        let outcomes = sts_run(&total, s, &CorrectionSet::standard_pauli()).unwrap();

        let prob_sum: f64 = outcomes.iter().map(|o| o.probability).sum();
        prop_assert!((prob_sum - 1.0).abs() < 1e-10);

        // sum_a P_a |psi_a><psi_a| = rho_EB for this fixed input.
        let rho_eb = total.reduced_density(&[2, 1]).unwrap();
        let mut acc = ComplexMatrix::zeros(4, 4).unwrap();
        let mut convex_sum = 0.0;
        for outcome in &outcomes {
            if let Some(detail) = &outcome.detail {
                acc = acc.add(&detail.eb_state.density().unwrap().matrix().scale(c(outcome.probability, 0.0))).unwrap();
                convex_sum += outcome.probability * detail.c_eb_alpha;
                prop_assert!((detail.q_alpha - (1.0 - detail.c_eb_alpha * detail.c_eb_alpha).max(0.0).sqrt()).abs() < 1e-9);
            }
        }
        prop_assert!(acc.max_abs_diff(rho_eb.matrix()) < 1e-10);
        prop_assert!(convex_sum >= summary.c_eb - 1e-9);
    }

    #[test]
    fn optimal_correction_attains_the_bound_and_dominates(seed in any::<u64>()) {
        let u = haar4(seed, 5);
        let total = evolve(&u, &phi_plus()).unwrap();
        let summary = EntanglementSummary::from_state(&total).unwrap();
        let rho_ab = total.reduced_density(&[0, 1]).unwrap();
        let best = average_fidelity(&total, &optimal_correction(&rho_ab).unwrap()).unwrap();
        prop_assert!((best - (2.0 * summary.f_ab + 1.0) / 3.0).abs() < 1e-9);

        // No tested correction set beats it.
        let plain = average_fidelity(&total, &CorrectionSet::standard_pauli()).unwrap();
        prop_assert!(plain <= best + 1e-9);
        let v = local2(seed, 600);
        let std = CorrectionSet::standard_pauli();
        let random_set = CorrectionSet::new([
            std.op(0).mul(&v).unwrap(),
            std.op(1).mul(&v).unwrap(),
            std.op(2).mul(&v).unwrap(),
            std.op(3).mul(&v).unwrap(),
        ]).unwrap();
        prop_assert!(average_fidelity(&total, &random_set).unwrap() <= best + 1e-9);
    }

    #[test]
    fn singlet_fraction_matches_hillclimb_oracle(seed in any::<u64>()) {
        let rho = random_density(4, seed, 29);
        let (f, _) = singlet_fraction(&rho).unwrap();
        let oracle = singlet_fraction_oracle(&rho, seed ^ 0x9e37_79b9);
        prop_assert!(f >= oracle - 1e-9, "implementation below a sampled overlap: {f} < {oracle}");
        prop_assert!((f - oracle).abs() < 1e-5, "{f} vs {oracle}");
    }
}

#[test]
fn bell_basis_matches_projection_outcomes() {
    // The four Bell states are exactly the outcome projectors used by the
    // scheme: teleporting through the ideal channel with input |0> gives
    // equal probability on phi+/phi- and zero on psi+/psi-.
    let u = InteractionUnitary::new(ComplexMatrix::identity(4).unwrap()).unwrap();
    let total = evolve(&u, &phi_plus()).unwrap();
    let outcomes = sts_run(&total, [0.0, 0.0, 1.0], &CorrectionSet::standard_pauli()).unwrap();
    assert!((outcomes[0].probability - 0.25).abs() < 1e-12);
    assert_eq!(bell_states().len(), 4);
    assert_eq!(AXIS_DIRECTIONS.len(), 6);
}
