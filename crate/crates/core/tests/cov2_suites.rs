use packcover_core::cov2::{
    coverage, cov2_combined, cov2_exact, cov2_pairwise, cov2_to_weighted_ds, cov2_two_phase, ds_to_cov2,
    maxcov_greedy,
};
use packcover_core::generate::{gen_random_graph, gen_random_system};
use packcover_core::ratio::int;
use packcover_core::verify::{verify, Instance, Solution};
use packcover_core::{Budget, Cov2Solution, Graph, WeightedSetSystem};

fn combos(m: usize, k: usize) -> Vec<Vec<usize>> {
    (0u32..1 << m)
        .filter(|mask| mask.count_ones() as usize == k.min(m))
        .map(|mask| (0..m).filter(|&i| mask >> i & 1 == 1).collect())
        .collect()
}

/// Most edges inside any k nodes.
fn densest(g: &Graph, k: usize) -> usize {
    combos(g.node_count(), k)
        .into_iter()
        .map(|nodes| g.edges().iter().filter(|(u, v)| nodes.contains(u) && nodes.contains(v)).count())
        .max()
        .unwrap_or(0)
}

fn twice_oracle(s: &WeightedSetSystem, k: usize) -> usize {
    combos(s.set_count(), k)
        .into_iter()
        .map(|sel| {
            (0..s.universe_size())
                .filter(|e| sel.iter().filter(|&&i| s.set(i).contains(e)).count() >= 2)
                .count()
        })
        .max()
        .unwrap_or(0)
}

fn checked(s: &WeightedSetSystem, k: usize, sol: &Cov2Solution) -> usize {
    let r = verify(Instance::Cov2 { system: s, k }, Solution::Cov2(sol)).unwrap();
    assert!(r.valid, "{:?}", r.violations);
    sol.objective()
}

fn four_cycle() -> WeightedSetSystem {
    WeightedSetSystem::unit(4, vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 0]], vec![int(0); 4]).unwrap()
}

#[test]
fn densest_subgraph_agreement_small_graphs() {
    let b = Budget::default();
    for n in 2..=5usize {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        for mask in 0u32..1 << pairs.len() {
            let g = Graph::new(n, pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &p)| p)).unwrap();
            let inst = ds_to_cov2(&g, 2);
            assert!(inst.system.max_frequency() <= 2);
            for k in 2..=n {
                assert_eq!(cov2_exact(&inst.system, k, &b).unwrap().objective(), densest(&g, k));
            }
        }
    }
}

#[test]
fn densest_subgraph_agreement_random_graphs() {
    let b = Budget::default();
    for seed in 0..60u64 {
        let n = 6 + seed as usize % 3;
        let g = gen_random_graph(n, 0.5, seed).unwrap();
        let inst = ds_to_cov2(&g, 3);
        for k in 2..=n {
            assert_eq!(cov2_exact(&inst.system, k, &b).unwrap().objective(), densest(&g, k), "seed {seed} k {k}");
        }
    }
}

#[test]
fn ds_examples() {
    let b = Budget::default();
    let k3 = Graph::new(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
    let k4 = Graph::new(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
    let star = Graph::new(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
    for (g, k, opt) in [(k3, 2, 1), (k4, 3, 3), (star, 2, 1)] {
        let inst = ds_to_cov2(&g, k);
        assert_eq!(cov2_exact(&inst.system, inst.k, &b).unwrap().objective(), opt);
    }
}

#[test]
fn route_examples() {
    let b = Budget::default();
    let dup = WeightedSetSystem::unit(2, vec![vec![0, 1], vec![0, 1]], vec![int(0); 2]).unwrap();
    for k in 2..5 {
        assert_eq!(checked(&dup, k, &cov2_pairwise(&dup, k).unwrap()), 2);
        assert_eq!(checked(&dup, k, &cov2_two_phase(&dup, k).unwrap()), 2);
    }
    let c4 = four_cycle();
    assert_eq!(checked(&c4, 2, &cov2_pairwise(&c4, 2).unwrap()), 1);
    assert_eq!(checked(&c4, 2, &cov2_two_phase(&c4, 2).unwrap()), 1);
    assert_eq!(cov2_exact(&c4, 2, &b).unwrap().objective(), 1);
    assert_eq!(cov2_exact(&c4, 4, &b).unwrap().objective(), 4);
    let apart = WeightedSetSystem::unit(5, vec![vec![0, 1], vec![2, 3], vec![4]], vec![int(0); 3]).unwrap();
    assert_eq!(checked(&apart, 3, &cov2_combined(&apart, 3).unwrap()), 0);
    assert_eq!(cov2_exact(&apart, 3, &b).unwrap().objective(), 0);
}

#[test]
fn maxcov_examples() {
    let apart = WeightedSetSystem::unit(6, vec![vec![0], vec![1, 2, 3], vec![4, 5]], vec![int(0); 3]).unwrap();
    assert_eq!(maxcov_greedy(&apart, 2), vec![1, 2]);
    assert_eq!(coverage(&apart, &maxcov_greedy(&apart, 3)), 6);
    // Greedy takes the middle set first and then covers only 2 more, the
    // optimum is the two halves.
    let trap = WeightedSetSystem::unit(
        6,
        vec![vec![0, 1, 2], vec![3, 4, 5], vec![1, 2, 3, 4]],
        vec![int(0); 3],
    )
    .unwrap();
    let got = coverage(&trap, &maxcov_greedy(&trap, 2));
    assert_eq!(got, 5);
    assert!(got as f64 >= (1.0 - (-1f64).exp()) * 6.0);
}

#[test]
fn weighted_ds_examples() {
    let apart = WeightedSetSystem::unit(3, vec![vec![0], vec![1], vec![2]], vec![int(0); 3]).unwrap();
    assert_eq!(cov2_to_weighted_ds(&apart).edge_count(), 0);
    let g = cov2_to_weighted_ds(&four_cycle());
    assert_eq!(g.edges(), &[(0, 1), (0, 3), (1, 2), (2, 3)]);
}

#[test]
fn random_route_suite() {
    let b = Budget::default();
    let mut worst = f64::INFINITY;
    for seed in 0..60u64 {
        let m = 4 + seed as usize % 7;
        let s = gen_random_system(12, m, 5, 300 + seed).unwrap();
        for k in 2..=4 {
            let opt = cov2_exact(&s, k, &b).unwrap().objective();
            assert_eq!(opt, twice_oracle(&s, k), "seed {seed} k {k}");
            let p = checked(&s, k, &cov2_pairwise(&s, k).unwrap());
            let t = checked(&s, k, &cov2_two_phase(&s, k).unwrap());
            let c = checked(&s, k, &cov2_combined(&s, k).unwrap());
            assert!(p <= opt && t <= opt);
            assert_eq!(c, p.max(t));
            let ones = coverage(&s, &maxcov_greedy(&s, k));
            let best_ones = combos(m, k).iter().map(|sel| coverage(&s, sel)).max().unwrap();
            let k_f = k as f64;
            assert!(ones as f64 >= (1.0 - (1.0 - 1.0 / k_f).powf(k_f)) * best_ones as f64 - 1e-9);
            if opt > 0 {
                worst = worst.min(c as f64 * (m as f64).sqrt() / opt as f64);
            }
        }
    }
    // Constant c with combined ≥ OPT/(c·√m) over this suite.
    println!("smallest combined·√m/OPT observed: {worst:.3}");
    assert!(worst > 0.0);
}
