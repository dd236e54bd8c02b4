//! Solver properties on seeded random bubble models, checked against brute force.

use pimc_core::bubble::{random_model, realize_graph, BubbleModel, RandomModelParams};
use pimc_core::dp::{count_bound, recurrence, solve_max_cut};
use pimc_core::graph::cut_size;
use pimc_core::oracle::brute_force_max_cut;
use proptest::prelude::*;

fn arb_model(max_n: usize) -> impl Strategy<Value = BubbleModel> {
    (1..=max_n, any::<u64>(), 0usize..3).prop_map(|(n, seed, rate)| {
        let params = RandomModelParams {
            empty_rate: [0.0, 0.2, 0.5][rate],
            ..Default::default()
        };
        random_model(n, seed, &params)
    })
}

/// Swaps the first two members of the first bubble holding at least two.
fn swap_twins(m: &BubbleModel) -> Option<BubbleModel> {
    let bubble = m.columns().iter().flatten().find(|b| b.len() >= 2)?;
    let mut perm: Vec<usize> = (0..m.n()).collect();
    perm.swap(bubble[0], bubble[1]);
    Some(m.relabel(&perm).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn exact_solver_matches_brute_force(m in arb_model(12)) {
        let g = realize_graph(&m);
        let oracle = brute_force_max_cut(&g).unwrap();
        let r = solve_max_cut(&m, true).unwrap();
        prop_assert_eq!(r.max_cut_size, oracle);
        prop_assert_eq!(cut_size(&g, r.cut.as_ref().unwrap()).unwrap(), oracle);
    }

    #[test]
    fn recurrence_is_an_upper_bound(m in arb_model(12)) {
        let oracle = brute_force_max_cut(&realize_graph(&m)).unwrap();
        let sol = recurrence::solve(&m, true);
        prop_assert!(sol.value >= oracle);
        let tb = sol.traceback.unwrap();
        if tb.consistent() {
            prop_assert_eq!(sol.value, oracle);
            prop_assert_eq!(cut_size(&realize_graph(&m), &tb.cut).unwrap(), oracle);
        }
    }

    #[test]
    fn recurrence_tables_are_self_dual(m in arb_model(20)) {
        let sol = recurrence::solve(&m, false);
        for table in &sol.tables {
            for row in &table.rows {
                for x in 0..=row.x_max {
                    for xn in 0..=row.x_next_max {
                        prop_assert_eq!(row.value(x, xn), row.value(row.x_max - x, row.x_next_max - xn));
                    }
                }
            }
        }
    }

    #[test]
    fn twin_exchange_changes_nothing(m in arb_model(14)) {
        if let Some(swapped) = swap_twins(&m) {
            let a = solve_max_cut(&m, false).unwrap();
            let b = solve_max_cut(&swapped, false).unwrap();
            prop_assert_eq!(a, b);
            let ra = recurrence::solve(&m, false);
            let rb = recurrence::solve(&swapped, false);
            prop_assert_eq!((ra.value, ra.op_count), (rb.value, rb.op_count));
        }
    }

    #[test]
    fn op_count_within_bound_beyond_one_vertex(m in arb_model(30)) {
        prop_assume!(m.n() >= 2);
        let sol = recurrence::solve(&m, false);
        let n4 = (m.n() as u64).pow(4);
        prop_assert!(sol.op_count <= count_bound(&m).max(n4));
    }
}

#[test]
fn single_vertex_table_has_two_entries() {
    // x ranges over {0, 1}, so two evaluations are unavoidable while n⁴ = 1.
    let sol = recurrence::solve(&BubbleModel::single_bubble(1), false);
    assert_eq!(sol.op_count, 2);
    assert_eq!(count_bound(&BubbleModel::single_bubble(1)), 0);
}

#[test]
fn generated_example_matches_oracle() {
    let m = random_model(12, 7, &RandomModelParams::default());
    let oracle = brute_force_max_cut(&realize_graph(&m)).unwrap();
    assert_eq!(solve_max_cut(&m, false).unwrap().max_cut_size, oracle);
}

#[test]
fn larger_exact_instances_stay_feasible() {
    for seed in 0..20 {
        let m = random_model(48, seed, &RandomModelParams::default());
        let r = solve_max_cut(&m, true).unwrap();
        let g = realize_graph(&m);
        assert_eq!(cut_size(&g, r.cut.as_ref().unwrap()).unwrap(), r.max_cut_size);
        assert!(recurrence::solve(&m, false).value >= r.max_cut_size);
    }
}
