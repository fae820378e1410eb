use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use chore_division::algorithms::{
    add_and_fix_observed, ef1_and_efficient_observed, lorenz_dominating, minimax_shares, social_cost_min,
};
use chore_division::costs::CostOracle;
use chore_division::fairness::{
    is_beta_efkx, is_ef1, is_efx, lorenz_compare, social_cost, Beta, LorenzOrder, SortedCostProfile,
};
use chore_division::generate::{
    random_certified_instance, random_identical_instance, random_partition_complement, random_supermodular_spec,
};
use chore_division::io::{parse_allocation, parse_instance, serialize_instance, AllocationDocument};
use chore_division::matroid::{kfold_union_rank, matroid_partition, MatroidView};
use chore_division::oracles::{enumerate_allocations, BruteForce};
use chore_division::{Allocation, ChoreSet, Cost, Instance};

fn certified(seed: u64, n: usize, m: usize) -> Instance {
    random_certified_instance(&mut ChaCha8Rng::seed_from_u64(seed), n, m).unwrap()
}

fn identical(seed: u64, n: usize, m: usize) -> Instance {
    random_identical_instance(&mut ChaCha8Rng::seed_from_u64(seed), n, m).unwrap()
}

fn assignment(n: usize, m: usize) -> impl Strategy<Value = Allocation> {
    proptest::collection::vec(0..n, m).prop_map(move |a| Allocation::from_assignment(n, &a))
}

fn instance_and_allocation() -> impl Strategy<Value = (Instance, Allocation)> {
    (any::<u64>(), 2usize..=3, 0usize..=8)
        .prop_flat_map(|(seed, n, m)| (Just(identical_or_certified(seed, n, m)), assignment(n, m)))
}

fn identical_or_certified(seed: u64, n: usize, m: usize) -> Instance {
    if seed.is_multiple_of(2) {
        identical(seed, n, m)
    } else {
        certified(seed, n, m)
    }
}

fn rank(oracle: &CostOracle, set: ChoreSet) -> usize {
    set.len() - oracle.cost(set) as usize
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn solvers_agree_with_brute_force(seed in any::<u64>(), n in 2usize..=3, m in 0usize..=8) {
        let inst = certified(seed, n, m);
        let brute = BruteForce::default();
        let (c_star, _) = brute.min_social_cost(&inst).unwrap();
        prop_assert_eq!(social_cost(&inst, &social_cost_min(&inst).unwrap()).unwrap(), c_star);
        prop_assert_eq!(minimax_shares(&inst).unwrap(), brute.minimax_shares(&inst).unwrap());
        let ours = SortedCostProfile::of(&inst, &lorenz_dominating(&inst).unwrap()).prefix_sums();
        prop_assert_eq!(ours, brute.lorenz_floor(&inst).unwrap());
    }

    #[test]
    fn partition_is_a_maximum_independent_union(seed in any::<u64>(), n in 1usize..=3, m in 0usize..=7) {
        let inst = certified(seed, n, m);
        let views: Vec<MatroidView> = inst.oracles().iter().map(MatroidView::new).collect();
        let part = matroid_partition(&views, inst.ground());

        let mut seen = ChoreSet::EMPTY;
        for (view, bundle) in views.iter().zip(&part.bundles) {
            prop_assert!(view.is_independent(*bundle));
            for c in bundle.iter() {
                prop_assert!(view.is_independent(bundle.without(c)));
            }
            prop_assert!(seen.is_disjoint(*bundle));
            seen = seen.union(*bundle);
        }
        prop_assert_eq!(seen.union(part.unassigned), inst.ground());
        prop_assert!(seen.is_disjoint(part.unassigned));

        // Min over T of |S \ T| + Σ rank_i(T).
        let ground = inst.ground();
        let formula = ground
            .subsets()
            .map(|t| ground.difference(t).len() + inst.oracles().iter().map(|o| rank(o, t)).sum::<usize>())
            .min()
            .unwrap();
        prop_assert_eq!(part.basis_size(), formula);

        let best = enumerate_allocations(n, m, 1 << 20)
            .unwrap()
            .map(|a| (0..n).map(|i| rank(inst.oracle(i), a.bundle(i))).sum::<usize>())
            .max()
            .unwrap();
        prop_assert_eq!(part.basis_size(), best);
    }

    #[test]
    fn kfold_rank_matches_formula(seed in any::<u64>(), k in 1usize..=3, m in 0usize..=10) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let oracle = CostOracle::new(random_partition_complement(&mut rng, m), m).unwrap();
        let ground = oracle.ground();
        let formula = ground.subsets().map(|t| ground.difference(t).len() + k * rank(&oracle, t)).min().unwrap();
        prop_assert_eq!(kfold_union_rank(MatroidView::new(&oracle), k, ground), formula);
    }

    #[test]
    fn cost_rank_is_submodular_with_unit_steps(seed in any::<u64>(), m in 0usize..=9) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let oracle = CostOracle::new(random_supermodular_spec(&mut rng, m), m).unwrap();
        for s in oracle.ground().subsets() {
            prop_assert!(oracle.cost(s) as usize <= s.len());
            for a in oracle.ground().difference(s).iter() {
                let step = rank(&oracle, s.with(a)) - rank(&oracle, s);
                prop_assert!(step <= 1);
                for b in oracle.ground().difference(s.with(a)).iter() {
                    prop_assert!(
                        rank(&oracle, s.with(a)) + rank(&oracle, s.with(b))
                            >= rank(&oracle, s.with(a).with(b)) + rank(&oracle, s)
                    );
                }
            }
        }
    }

    #[test]
    fn instance_files_round_trip(seed in any::<u64>(), n in 1usize..=4, m in 0usize..=10) {
        let inst = identical_or_certified(seed, n, m);
        let back = parse_instance(&serialize_instance(&inst)).unwrap();
        for s in inst.ground().subsets() {
            for i in 0..n {
                prop_assert_eq!(inst.cost(i, s), back.cost(i, s));
            }
        }
        prop_assert_eq!(serialize_instance(&back), serialize_instance(&inst));
    }

    #[test]
    fn allocation_documents_round_trip((inst, alloc) in instance_and_allocation()) {
        let doc = AllocationDocument::new(&inst, &alloc);
        prop_assert_eq!(parse_allocation(&doc.to_json(), &inst).unwrap(), alloc);
    }

    #[test]
    fn efx_implies_ef1((inst, alloc) in instance_and_allocation()) {
        if is_efx(&inst, &alloc).unwrap().verdict {
            prop_assert!(is_ef1(&inst, &alloc).unwrap().verdict);
        }
    }

    #[test]
    fn scaled_envy_is_monotone((inst, alloc) in instance_and_allocation(), num in 1u64..=6, k in 1usize..=3) {
        let beta = Beta::new(num, 6).unwrap();
        let holds = is_beta_efkx(&inst, &alloc, beta, k).unwrap().verdict;
        if !holds && num < 6 {
            prop_assert!(!is_beta_efkx(&inst, &alloc, Beta::new(num + 1, 6).unwrap(), k).unwrap().verdict);
        }
        if holds {
            prop_assert!(is_beta_efkx(&inst, &alloc, beta, k + 1).unwrap().verdict);
        }
    }

    #[test]
    fn witnesses_revalidate((inst, alloc) in instance_and_allocation(), k in 1usize..=2) {
        let beta = Beta::new(1, 2).unwrap();
        for w in [is_ef1(&inst, &alloc).unwrap(), is_beta_efkx(&inst, &alloc, beta, k).unwrap()] {
            prop_assert_eq!(w.verdict, w.violation.is_none());
            if let Some(v) = w.violation {
                prop_assert!(v.holds(&inst, &alloc), "{}", v);
            }
        }
    }

    #[test]
    fn lorenz_order_is_a_partial_order(
        p in proptest::collection::vec(0 as Cost..6, 3),
        q in proptest::collection::vec(0 as Cost..6, 3),
        r in proptest::collection::vec(0 as Cost..6, 3),
    ) {
        let (p, q, r) = (SortedCostProfile::new(p), SortedCostProfile::new(q), SortedCostProfile::new(r));
        let weakly = |a: &SortedCostProfile, b: &SortedCostProfile| {
            matches!(lorenz_compare(a, b).unwrap(), LorenzOrder::Dominates | LorenzOrder::Equal)
        };
        prop_assert_eq!(lorenz_compare(&p, &p).unwrap(), LorenzOrder::Equal);
        if weakly(&p, &q) && weakly(&q, &p) {
            prop_assert_eq!(&p, &q);
        }
        if weakly(&p, &q) && weakly(&q, &r) {
            prop_assert!(weakly(&p, &r));
        }
        let flipped = match lorenz_compare(&q, &p).unwrap() {
            LorenzOrder::Dominates => LorenzOrder::DominatedBy,
            LorenzOrder::DominatedBy => LorenzOrder::Dominates,
            other => other,
        };
        prop_assert_eq!(lorenz_compare(&p, &q).unwrap(), flipped);
    }

    #[test]
    fn ef1_holds_after_every_assignment(seed in any::<u64>(), n in 2usize..=3, m in 0usize..=9) {
        let inst = certified(seed, n, m);
        let mut snapshots = Vec::new();
        let out = ef1_and_efficient_observed(&inst, |a| snapshots.push(a.clone())).unwrap();
        prop_assert!(!snapshots.is_empty());
        for partial in snapshots.iter().chain([&out]) {
            prop_assert!(is_ef1(&inst, partial).unwrap().verdict);
        }
        let (c_star, _) = BruteForce::default().min_social_cost(&inst).unwrap();
        prop_assert_eq!(social_cost(&inst, &out).unwrap(), c_star);
    }

    #[test]
    fn add_and_fix_progresses_while_staying_efx(seed in any::<u64>(), n in 2usize..=4, m in 0usize..=10) {
        let inst = identical(seed, n, m);
        let mut states: Vec<(u64, usize)> = Vec::new();
        let out = add_and_fix_observed(&inst, |a| {
            assert!(is_efx(&inst, a).unwrap().verdict, "partial allocation {a:?} is not EFX");
            states.push((social_cost(&inst, a).unwrap(), m - a.assigned().len()));
        })
        .unwrap();
        for w in states.windows(2) {
            let ((cost0, left0), (cost1, left1)) = (w[0], w[1]);
            prop_assert!(cost1 > cost0 || left1 < left0, "no progress: {:?}", w);
        }
        prop_assert!(out.is_complete(m));
        prop_assert!(is_efx(&inst, &out).unwrap().verdict);
        prop_assert!(states.len() <= m * m.max(1));
    }
}
