use num_bigint::BigUint;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use wreathhom::{build_group, AbelianGroup, FiniteGroup, GroupSpec, Sampler, WreathModel};

/// Small permutation groups from one or two random generators on up to five points.
fn small_group() -> impl Strategy<Value = FiniteGroup> {
    (2usize..=5)
        .prop_flat_map(|m| {
            let perm = Just((0..m).collect::<Vec<usize>>()).prop_shuffle();
            prop::collection::vec(perm, 1..=2)
        })
        .prop_map(|generators| {
            build_group(&GroupSpec::Permutations {
                name: "random".into(),
                generators,
            })
            .expect("permutations generate a group")
        })
}

fn small_target() -> impl Strategy<Value = AbelianGroup> {
    prop::collection::vec(2usize..=4, 0..=2)
        .prop_map(|orders| AbelianGroup::from_cyclic_orders(&orders).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn fibers_sum_to_orbit_weights(g in small_group(), a in small_target()) {
        let model = WreathModel::new(&g, &a);
        for orbit in model.orbit_types() {
            prop_assert_eq!(orbit.data.fibers.iter().sum::<BigUint>(), orbit.data.w.clone());
            for (x, y) in g.elements().flat_map(|x| g.elements().map(move |y| (x, y))) {
                let t = &orbit.transfer;
                prop_assert_eq!(
                    t.at(g.mul(x, y)),
                    orbit.abelianization.group().add(t.at(x), t.at(y))
                );
            }
        }
    }

    #[test]
    fn recurrence_matches_direct_enumeration(g in small_group(), a in small_target()) {
        let model = WreathModel::new(&g, &a);
        let table = model.count_table(7).unwrap();
        let fibers = model.fiber_table(7).unwrap();
        for (n, row) in fibers.iter().enumerate() {
            prop_assert_eq!(&model.hom_count_direct(n).unwrap(), table.count(n));
            prop_assert_eq!(&row.iter().sum::<BigUint>(), table.count(n));
        }
    }

    #[test]
    fn distance_from_uniform_is_bounded(g in small_group(), a in small_target()) {
        let model = WreathModel::new(&g, &a);
        let p = model.fixed_point_free_table(25).unwrap();
        for (n, bound) in p.iter().enumerate() {
            let dist = model.delta_distribution(n).unwrap();
            prop_assert!(&dist.sup_distance_from_uniform() <= bound);
        }
    }

    #[test]
    fn samples_are_homomorphisms(g in small_group(), a in small_target(), n in 1usize..=9, seed in any::<u64>()) {
        let model = WreathModel::new(&g, &a);
        let sampler = Sampler::new(&model, n).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..5 {
            let hom = sampler.sample_hom(&mut rng);
            prop_assert_eq!(hom.degree(), n);
            prop_assert!(hom.is_homomorphism(&g, &a));
        }
    }

    #[test]
    fn cyclic_products_normalize(orders in prop::collection::vec(1usize..=12, 0..=4)) {
        let a = AbelianGroup::from_cyclic_orders(&orders).unwrap();
        prop_assert_eq!(a.order(), orders.iter().product::<usize>());
        for pair in a.factors().windows(2) {
            prop_assert_eq!(pair[1] % pair[0], 0);
        }
        prop_assert!(a.factors().iter().all(|&f| f > 1));
    }

    #[test]
    fn encode_inverts_decode(factors in prop::collection::vec(2usize..=6, 1..=3), seed in any::<usize>()) {
        let mut chain = Vec::new();
        let mut acc = 1;
        for f in factors {
            acc *= f;
            chain.push(acc);
        }
        let a = AbelianGroup::new(chain).unwrap();
        let x = seed % a.order();
        prop_assert_eq!(a.encode(&a.decode(x)), x);
        prop_assert_eq!(a.add(x, a.neg(x)), 0);
    }
}
