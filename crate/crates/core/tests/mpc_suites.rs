use packcover_core::generate::gen_random_system;
use packcover_core::mpc::{
    mpc_2imp, mpc_2imp_traced, mpc_exact, mpc_exact_small_a, mpc_greedy, mpc_profit, mpc_via_setpacking,
    TwoImpParams,
};
use packcover_core::ratio::int;
use packcover_core::verify::{verify, Instance, Solution};
use packcover_core::{Budget, Graph, MpcSolution, Ratio, WeightedSetSystem};
use proptest::prelude::*;

/// Union profit minus costs, summed directly.
fn profit(inst: &WeightedSetSystem, sel: &[usize]) -> Ratio {
    let mut seen = vec![false; inst.universe_size()];
    let mut total = int(0);
    for &i in sel {
        total -= inst.set_costs()[i];
        for &e in &inst.sets()[i] {
            if !seen[e] {
                seen[e] = true;
                total += inst.element_weights()[e];
            }
        }
    }
    total
}

fn oracle(inst: &WeightedSetSystem) -> Ratio {
    let m = inst.set_count();
    (0u32..1 << m)
        .map(|mask| profit(inst, &(0..m).filter(|&i| mask >> i & 1 == 1).collect::<Vec<_>>()))
        .max()
        .unwrap()
}

fn checked(inst: &WeightedSetSystem, sol: &MpcSolution) -> Ratio {
    let r = verify(Instance::Mpc(inst), Solution::Mpc(sol)).unwrap();
    assert!(r.valid, "{:?}", r.violations);
    sol.profit
}

/// Edge universe, one set per node holding its incident edges, cost d − 1.
fn incidence_system(g: &Graph, cost: i64) -> WeightedSetSystem {
    let sets = (0..g.node_count())
        .map(|v| (0..g.edge_count()).filter(|&e| g.edges()[e].0 == v || g.edges()[e].1 == v).collect())
        .collect();
    WeightedSetSystem::unit(g.edge_count(), sets, vec![int(cost); g.node_count()]).unwrap()
}

fn complete(n: usize) -> Graph {
    Graph::new(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).unwrap()
}

fn petersen() -> Graph {
    let mut e = Vec::new();
    for i in 0..5 {
        e.push((i, (i + 1) % 5));
        e.push((i, i + 5));
        e.push((i + 5, (i + 2) % 5 + 5));
    }
    Graph::new(10, e).unwrap()
}

fn greedy_trap() -> WeightedSetSystem {
    let mut weights = vec![int(2); 3];
    weights.extend(vec![int(1); 6]);
    let sets = vec![vec![0, 1, 2], vec![0, 3, 4], vec![1, 5, 6], vec![2, 7, 8]];
    WeightedSetSystem::new(weights, sets, vec![int(4), int(2), int(2), int(2)]).unwrap()
}

#[test]
fn profit_examples() {
    let k4 = incidence_system(&complete(4), 2);
    assert_eq!(mpc_profit(&k4, &[]), int(0));
    assert_eq!(mpc_profit(&k4, &[2]), int(1));
    let dup = WeightedSetSystem::unit(2, vec![vec![0, 1], vec![0, 1]], vec![int(0), int(0)]).unwrap();
    assert_eq!(mpc_profit(&dup, &[0, 1]), int(2));
}

#[test]
fn small_a_examples() {
    let chain = WeightedSetSystem::unit(3, vec![vec![0, 1], vec![1, 2]], vec![int(1), int(1)]).unwrap();
    assert_eq!(checked(&chain, &mpc_exact_small_a(&chain).unwrap()), int(1));
    let apart = WeightedSetSystem::unit(4, vec![vec![0, 1], vec![2, 3]], vec![int(0), int(0)]).unwrap();
    assert_eq!(checked(&apart, &mpc_exact_small_a(&apart).unwrap()), int(4));
    let dear = WeightedSetSystem::unit(2, vec![vec![0, 1]], vec![int(3)]).unwrap();
    let s = mpc_exact_small_a(&dear).unwrap();
    assert!(s.selected.is_empty() && s.profit == int(0));
    assert!(mpc_exact_small_a(&incidence_system(&complete(4), 2)).is_err());
}

#[test]
fn independent_set_instances() {
    let b = Budget::default();
    let eps = Ratio::new(1, 10);
    let k4 = incidence_system(&complete(4), 2);
    let pet = incidence_system(&petersen(), 2);
    assert_eq!(checked(&k4, &mpc_exact(&k4, &b).unwrap()), int(1));
    assert_eq!(checked(&k4, &mpc_via_setpacking(&k4, 3, eps, &b).unwrap()), int(1));
    assert_eq!(checked(&k4, &mpc_greedy(&k4)), int(1));
    assert_eq!(checked(&pet, &mpc_exact(&pet, &b).unwrap()), int(4));
    assert_eq!(checked(&pet, &mpc_via_setpacking(&pet, 3, eps, &b).unwrap()), int(4));
}

#[test]
fn trivial_exact_cases() {
    let b = Budget::default();
    let empty = WeightedSetSystem::unit(0, vec![], vec![]).unwrap();
    assert_eq!(mpc_exact(&empty, &b).unwrap().profit, int(0));
    let one = WeightedSetSystem::new(vec![int(2), int(3)], vec![vec![0, 1]], vec![int(0)]).unwrap();
    assert_eq!(mpc_exact(&one, &b).unwrap().profit, int(5));
    assert_eq!(checked(&one, &mpc_greedy(&one)), int(5));
    let free = WeightedSetSystem::unit(5, vec![vec![0, 1, 2], vec![2, 3]], vec![int(0), int(0)]).unwrap();
    assert_eq!(checked(&free, &mpc_via_setpacking(&free, 3, Ratio::new(1, 10), &b).unwrap()), int(4));
}

#[test]
fn greedy_trap_improved_by_two_imp() {
    let inst = greedy_trap();
    let g = checked(&inst, &mpc_greedy(&inst));
    let t = checked(&inst, &mpc_2imp(&inst, &TwoImpParams::default()).unwrap());
    let opt = oracle(&inst);
    assert!(t > g);
    assert_eq!(t, opt);
    // Greedy stays within a factor a = 3.
    assert!(g * 3 >= opt);
}

#[test]
fn small_a_suite() {
    for seed in 0..40u64 {
        let inst = gen_random_system(8, 10, 2, seed).unwrap();
        let s = mpc_exact_small_a(&inst).unwrap();
        assert_eq!(checked(&inst, &s), oracle(&inst), "seed {seed}");
    }
}

#[test]
fn setpacking_and_greedy_suite() {
    let b = Budget::default();
    let eps = Ratio::new(1, 10);
    for seed in 0..30u64 {
        let a = 3;
        let inst = gen_random_system(10, 12, a, 500 + seed).unwrap();
        let opt = oracle(&inst);
        assert_eq!(mpc_exact(&inst, &b).unwrap().profit, opt, "seed {seed}");
        let sp = checked(&inst, &mpc_via_setpacking(&inst, a, eps, &b).unwrap());
        assert!(sp * (Ratio::new(a as i64 + 1, 2) + eps) >= opt, "seed {seed}: {sp} vs {opt}");
        let g = checked(&inst, &mpc_greedy(&inst));
        assert!(g * a as i64 >= opt, "seed {seed}");
    }
}

#[test]
fn two_imp_ratio_suite() {
    for seed in 0..30u64 {
        let a = 3 + seed as usize % 3;
        let inst = gen_random_system(12, 12, a, 900 + seed).unwrap();
        let opt = oracle(&inst);
        let got = checked(&inst, &mpc_2imp(&inst, &TwoImpParams::default()).unwrap());
        let factor = Ratio::new(6454, 10000) * a as i64 + Ratio::new(1, 10);
        assert!(got * factor >= opt, "seed {seed}: {got} vs {opt}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn two_imp_moves_keep_intersections_whole(seed in any::<u64>(), a in 3usize..6) {
        let inst = gen_random_system(12, 10, a, seed).unwrap();
        let params = TwoImpParams::default();
        let (sol, trace) = mpc_2imp_traced(&inst, &params).unwrap();
        prop_assert_eq!(sol.profit, profit(&inst, &sol.selected));
        for mv in &trace.moves {
            prop_assert!(mv.potential_after >= mv.potential_before + params.delta as i128);
            for (set, body) in &mv.inserted {
                for (_, before, removed) in &mv.overlapping {
                    let shared: Vec<usize> = inst.set(*set).iter().copied().filter(|e| before.contains(e)).collect();
                    let taken: Vec<usize> = body.iter().copied().filter(|e| before.contains(e)).collect();
                    if !removed {
                        prop_assert!(taken.is_empty() || taken == shared, "split intersection");
                    }
                }
            }
        }
    }

    #[test]
    fn whole_allocation_beats_any_split(
        x in 0i64..40, y1 in 0i64..40, base in 0i64..40, alpha in 2u32..5, frac in 0.0f64..1.0,
    ) {
        // A set with profit y1 and another with profit base compete for x
        // shared units; giving y2 of them to the first is convex in y2.
        let y2 = (x as f64 * frac) as i64;
        let split = (y1 + y2).pow(alpha) + (base + x - y2).pow(alpha);
        let whole = ((y1 + x).pow(alpha) + base.pow(alpha)).max(y1.pow(alpha) + (base + x).pow(alpha));
        prop_assert!(split <= whole);
    }
}

#[test]
fn all_disjoint_takes_profitable_sets() {
    let inst = WeightedSetSystem::unit(
        7,
        vec![vec![0, 1], vec![2, 3, 4], vec![5], vec![6]],
        vec![int(1), int(4), int(0), int(2)],
    )
    .unwrap();
    let s = mpc_2imp(&inst, &TwoImpParams::default()).unwrap();
    assert_eq!(checked(&inst, &s), oracle(&inst));
}
