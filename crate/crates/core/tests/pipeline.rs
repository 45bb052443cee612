//! Cross-validation of the three independent routes to an unfriendly
//! partition on the same instances: direct local search, the brute-force
//! oracle, and the gadget round trip. Any disagreement between routes is
//! a bug in at least one of them.

use unfriendly::{
    ConditionedGraph, Fin, Infinite, InitialAssignment, SolverConfig, build_gadget,
    check_threshold_unfriendly, check_unfriendly, decorate_conditions, gnp, recover_partition,
    solve_brute_force, solve_local_search,
};

#[test]
fn all_routes_agree_on_small_finite_instances() {
    for k in 0..40u64 {
        let n = 1 + (k % 8) as usize;
        let g = gnp(n, 0.4, 200_000 + k).unwrap();
        let cg = decorate_conditions(g, 2, 2, 0.0, 201_000 + k).unwrap();
        let cfg = SolverConfig::new(2)
            .unwrap()
            .with_seed(k)
            .with_initial(InitialAssignment::Seeded);

        let (direct, _) = solve_local_search(&cg, cfg).unwrap();
        assert!(
            check_unfriendly(&cg, &direct).unwrap().passes(),
            "seed {k}: direct route"
        );
        // an exact partition stays acceptable under any relaxation
        assert!(
            check_threshold_unfriendly(&cg, &direct, Fin(2))
                .unwrap()
                .passes(),
            "seed {k}: relaxation is monotone"
        );

        let oracle = solve_brute_force(&cg, Infinite).unwrap();
        assert!(
            oracle.solutions >= 1,
            "seed {k}: the oracle found no partition"
        );
        let witness = oracle
            .partition
            .expect("a counted solution comes with a witness");
        assert!(
            check_unfriendly(&cg, &witness).unwrap().passes(),
            "seed {k}: oracle witness"
        );

        let gg = build_gadget(&cg).unwrap();
        let plain = ConditionedGraph::plain(gg.graph().clone());
        let (ph, _) = solve_local_search(&plain, cfg).unwrap();
        let r = recover_partition(&gg, &ph).unwrap();
        assert!(
            check_unfriendly(&cg, &r.partition).unwrap().passes(),
            "seed {k}: gadget route"
        );
    }
}

#[test]
fn every_instance_with_infinite_conditions_still_has_a_partition() {
    // an infinite weight forces one side but never blocks existence: the
    // oracle must count at least one exact partition
    for k in 0..40u64 {
        let n = 1 + (k % 6) as usize;
        let g = gnp(n, 0.4, 210_000 + k).unwrap();
        let cg = decorate_conditions(g, 1, 1, 0.3, 211_000 + k).unwrap();
        let oracle = solve_brute_force(&cg, Infinite).unwrap();
        assert!(oracle.solutions >= 1, "seed {k}: no exact partition exists");
        let witness = oracle.partition.unwrap();
        assert!(
            check_unfriendly(&cg, &witness).unwrap().passes(),
            "seed {k}"
        );
    }
}
