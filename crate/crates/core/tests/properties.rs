use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use schurlab::collision::{
    montecarlo_collision, plan_collision_algorithm, swap_fidelity, CollisionCase, SwapTestInstance,
};
use schurlab::groups::{
    fourier_distribution, fourier_probability, make_group, subgroups, CharacterTable, GroupFamily,
};
use schurlab::linalg::{random_unitary, tensor_power, DensityMatrix};
use schurlab::perm::Permutation;
use schurlab::sampling::{permutation_matrix, prob_repeated_irrep, weak_schur_dist};
use schurlab::spectra::{l1_distance, planch, schur};
use schurlab::young::{
    dim_sym_irrep, dim_unitary_irrep, enumerate_partitions, factorial, Partition,
};

fn partition() -> impl Strategy<Value = Partition> {
    prop::collection::vec(1usize..6, 0..6).prop_map(|v| Partition::from_unsorted(v).unwrap())
}

fn family() -> impl Strategy<Value = GroupFamily> {
    prop_oneof![
        (1usize..=12).prop_map(GroupFamily::Cyclic),
        (1usize..=6).prop_map(GroupFamily::Dihedral),
        (1usize..=4).prop_map(GroupFamily::Sym),
        (1usize..=2).prop_map(GroupFamily::WreathS2),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn transpose_is_an_involution(lam in partition()) {
        prop_assert_eq!(lam.transpose().transpose(), lam.clone());
        prop_assert_eq!(lam.transpose().content_sum(), -lam.content_sum());
        prop_assert_eq!(dim_sym_irrep(&lam.transpose()), dim_sym_irrep(&lam));
    }

    #[test]
    fn display_round_trips(lam in partition()) {
        prop_assert_eq!(lam.to_string().parse::<Partition>().unwrap(), lam);
    }

    #[test]
    fn schur_weyl_dimension_counts(k in 1usize..=9, d in 1usize..=9) {
        let mut sq = BigInt::zero();
        let mut words = BigInt::zero();
        for lam in enumerate_partitions(k, None) {
            let p = dim_sym_irrep(&lam);
            words += &p * dim_unitary_irrep(&lam, d);
            sq += &p * &p;
        }
        prop_assert_eq!(sq, factorial(k));
        prop_assert_eq!(words, BigInt::from(d).pow(k as u32));
    }

    #[test]
    fn distributions_are_normalized(k in 1usize..=10, d in 1usize..=20) {
        prop_assert!(planch::<BigRational>(k).unwrap().total().is_one());
        let s = schur::<BigRational>(k, d).unwrap();
        prop_assert!(s.total().is_one());
        // no mass on diagrams with more than d rows
        for (lam, p) in s.iter() {
            if lam.len() > d {
                prop_assert!(p.is_zero());
            }
        }
    }

    #[test]
    fn l1_is_a_metric(k in 1usize..=8, d1 in 1usize..=10, d2 in 1usize..=10, d3 in 1usize..=10) {
        let a = schur::<BigRational>(k, d1).unwrap();
        let b = schur::<BigRational>(k, d2).unwrap();
        let c = schur::<BigRational>(k, d3).unwrap();
        let ab = l1_distance(&a, &b).unwrap();
        prop_assert_eq!(ab.clone(), l1_distance(&b, &a).unwrap());
        prop_assert!(ab <= l1_distance(&a, &c).unwrap() + l1_distance(&c, &b).unwrap());
        prop_assert!(ab <= BigRational::from_integer(2.into()));
    }

    #[test]
    fn permutation_matrices_are_a_homomorphism(seed in any::<u64>(), d in 1usize..=3) {
        use rand::seq::SliceRandom;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut a: Vec<usize> = (0..3).collect();
        let mut b = a.clone();
        a.shuffle(&mut rng);
        b.shuffle(&mut rng);
        let (a, b) = (Permutation::from_images(a).unwrap(), Permutation::from_images(b).unwrap());
        let lhs = permutation_matrix::<f64>(3, d, &a).unwrap() * permutation_matrix::<f64>(3, d, &b).unwrap();
        prop_assert_eq!(lhs, permutation_matrix::<f64>(3, d, &a.compose(&b)).unwrap());
    }

    #[test]
    fn fourier_distributions_sum_to_one(fam in family(), pick in any::<prop::sample::Index>()) {
        let g = make_group(fam).unwrap();
        let t = CharacterTable::of(&g).unwrap();
        let hs = subgroups(&g).unwrap();
        let h = &hs[pick.index(hs.len())];
        let p = fourier_distribution(&g, &t, h).unwrap();
        prop_assert!(p.iter().fold(BigRational::zero(), |a, b| a + b).is_one());
        for (s, q) in p.iter().enumerate() {
            prop_assert!(*q >= BigRational::zero());
            let f = fourier_probability(&g, &t, h, s);
            prop_assert!((f - schurlab::scalar::ratio_to_f64(q)).abs() < 1e-12);
        }
        prop_assert_eq!(g.order() % h.order(), 0);
    }

    #[test]
    fn repeated_irrep_within_bound(fam in family(), pick in any::<prop::sample::Index>(), k in 1usize..=4) {
        let g = make_group(fam).unwrap();
        let t = CharacterTable::of(&g).unwrap();
        let hs = subgroups(&g).unwrap();
        let h = &hs[pick.index(hs.len())];
        let r = prob_repeated_irrep(&g, &t, h, k).unwrap();
        prop_assert!(r.exact >= BigRational::zero() && r.exact <= BigRational::one());
        if r.bound <= BigRational::one() {
            prop_assert!(r.exact <= r.bound);
        }
    }

    #[test]
    fn swap_fidelity_formula_and_bound(seed in any::<u64>(), m in 1usize..=4, branches in 1usize..=4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let inst = SwapTestInstance::<f64>::random(m, 2, branches, &mut rng).unwrap();
        let f = swap_fidelity(&inst).unwrap();
        prop_assert!((f.fidelity - f.exact_formula).abs() < 1e-9);
        prop_assert!(f.fidelity >= f.bound - 1e-12);
    }

    #[test]
    fn plans_follow_the_accounting(q in 2u64..5000, r in 1u64..8) {
        let p = plan_collision_algorithm(q * r, r).unwrap();
        prop_assert_eq!(p.total_queries, p.m as u64 * p.table_size + 2 * p.m as u64 * p.grover_iters);
        let cbrt = (q as f64).cbrt();
        prop_assert!((p.table_size as f64 - cbrt).abs() <= 0.5 + 1e-9);
        prop_assert!(p.grover_iters as f64 >= cbrt - 1e-9 && (p.grover_iters as f64) < cbrt + 1.0);
        prop_assert!(p.amplification_iters <= p.grover_iters);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn weak_schur_is_unitarily_invariant(seed in any::<u64>(), k in 1usize..=3, d in 2usize..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = d.pow(k as u32);
        let v = schurlab::linalg::random_unit_vector::<f64, _>(n, &mut rng);
        let gamma = DensityMatrix::pure(&v).unwrap();
        let u = random_unitary::<f64, _>(d, &mut rng);
        let rotated = gamma.conjugate_by(&tensor_power(&u, k));
        let a = weak_schur_dist(&gamma, k, d).unwrap().distribution;
        let b = weak_schur_dist(&rotated, k, d).unwrap().distribution;
        for ((_, x), (_, y)) in a.iter().zip(b.iter()) {
            prop_assert!((x - y).abs() < 1e-8);
        }
    }

    #[test]
    fn weak_schur_is_permutation_invariant(seed in any::<u64>(), d in 2usize..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let k = 3;
        let v = schurlab::linalg::random_unit_vector::<f64, _>(d.pow(3), &mut rng);
        let gamma = DensityMatrix::pure(&v).unwrap();
        let a = weak_schur_dist(&gamma, k, d).unwrap().distribution;
        for pi in Permutation::all(k) {
            let p = permutation_matrix::<f64>(k, d, &pi).unwrap();
            let b = weak_schur_dist(&gamma.conjugate_by(&p), k, d).unwrap().distribution;
            for ((_, x), (_, y)) in a.iter().zip(b.iter()) {
                prop_assert!((x - y).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn montecarlo_depends_only_on_seed(seed in any::<u64>()) {
        let a = montecarlo_collision(64, 4, 200, seed, CollisionCase::RToOne).unwrap();
        let b = montecarlo_collision(64, 4, 200, seed, CollisionCase::RToOne).unwrap();
        prop_assert_eq!(a.success_rate.to_bits(), b.success_rate.to_bits());
        prop_assert!((0.0..=1.0).contains(&a.success_rate));
        let z = montecarlo_collision(64, 4, 50, seed, CollisionCase::OneToOne).unwrap();
        prop_assert_eq!(z.success_rate, 0.0);
    }
}
