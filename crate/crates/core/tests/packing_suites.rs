use packcover_core::generate::gen_random_graph;
use packcover_core::packing::{
    enumerate_triangles, exact_packing, greedy_packing, local_search_packing, pack_triangles, squareimp_packing,
    SetCollection, SquareImpParams, TpAlgorithm,
};
use packcover_core::ratio::int;
use packcover_core::verify::{verify, Instance, Solution};
use packcover_core::{Budget, Graph, Ratio};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

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

/// Maximum number of node-disjoint triangles: the lowest free node is either
/// left out or closed into a triangle with two higher free nodes.
fn tp_oracle(g: &Graph) -> usize {
    fn go(g: &Graph, used: &mut Vec<bool>, from: usize) -> usize {
        let Some(u) = (from..g.node_count()).find(|&u| !used[u]) else {
            return 0;
        };
        used[u] = true;
        let mut best = go(g, used, u + 1);
        let nb: Vec<usize> = g.neighbors(u).iter().copied().filter(|&v| v > u && !used[v]).collect();
        for (i, &v) in nb.iter().enumerate() {
            for &w in &nb[i + 1..] {
                if g.has_edge(v, w) {
                    used[v] = true;
                    used[w] = true;
                    best = best.max(1 + go(g, used, u + 1));
                    used[v] = false;
                    used[w] = false;
                }
            }
        }
        used[u] = false;
        best
    }
    go(g, &mut vec![false; g.node_count()], 0)
}

/// Heaviest disjoint selection by trying every subset of sets.
fn weighted_oracle(c: &SetCollection) -> Ratio {
    let m = c.len();
    (0u32..1 << m)
        .map(|mask| (0..m).filter(|&i| mask >> i & 1 == 1).collect::<Vec<_>>())
        .filter(|sel| c.is_packing(sel))
        .map(|sel| c.total_weight(&sel))
        .max()
        .unwrap()
}

fn check_tp(g: &Graph, algo: TpAlgorithm) -> usize {
    let p = pack_triangles(g, algo, &Budget::default()).unwrap();
    let r = verify(Instance::Triangles(g), Solution::Triangles(&p)).unwrap();
    assert!(r.valid, "{:?}", r.violations);
    p.len()
}

#[test]
fn triangle_counts() {
    assert_eq!(enumerate_triangles(&complete(4)).len(), 4);
    assert_eq!(enumerate_triangles(&petersen()).len(), 0);
    assert_eq!(enumerate_triangles(&complete(6)).len(), 20);
}

#[test]
fn front_end_examples() {
    for algo in [TpAlgorithm::Greedy, TpAlgorithm::Local(2), TpAlgorithm::Exact] {
        assert_eq!(check_tp(&complete(4), algo), 1);
        assert_eq!(check_tp(&complete(6), algo), 2);
        assert_eq!(check_tp(&petersen(), algo), 0);
    }
    let two_k3 = Graph::new(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).unwrap();
    assert_eq!(check_tp(&two_k3, TpAlgorithm::Local(2)), 2);
}

#[test]
fn greedy_examples() {
    let empty = SetCollection::new(4, vec![]).unwrap();
    assert!(greedy_packing(&empty).selected.is_empty());
    let w = SetCollection::weighted(4, vec![vec![0, 1], vec![2, 3]], vec![int(5), int(1)]).unwrap();
    assert_eq!(greedy_packing(&w).objective, int(6));
}

#[test]
fn squared_cycle_packs_three() {
    let mut e = Vec::new();
    for i in 0..9 {
        e.push((i, (i + 1) % 9));
        e.push((i, (i + 2) % 9));
    }
    let g = Graph::new(9, e).unwrap();
    let c = enumerate_triangles(&g);
    assert_eq!(exact_packing(&c, &Budget::default()).unwrap().objective, int(3));
    assert_eq!(tp_oracle(&g), 3);
}

#[test]
fn random_graph_ratio_suite() {
    let mut worst = f64::INFINITY;
    for seed in 0..50u64 {
        let n = 6 + (seed as usize % 7);
        let g = gen_random_graph(n, 0.45, 1000 + seed).unwrap();
        let opt = tp_oracle(&g);
        let c = enumerate_triangles(&g);
        let exact = exact_packing(&c, &Budget::default()).unwrap();
        assert_eq!(exact.objective, int(opt as i64), "seed {seed}");
        let greedy = greedy_packing(&c);
        assert!(c.is_packing(&greedy.selected) && c.is_maximal(&greedy.selected));
        let local = local_search_packing(&c, 2).unwrap();
        assert!(c.is_packing(&local.selected) && c.is_maximal(&local.selected));
        let size = local.selected.len();
        assert!(2 * opt <= 3 * size, "seed {seed}: local {size} vs opt {opt}");
        if opt > 0 {
            worst = worst.min(size as f64 / opt as f64);
        }
    }
    assert!(worst >= 1.0 / 1.5);
}

#[test]
fn weighted_ratio_suite() {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    for case in 0..30 {
        let n = rng.gen_range(5..10);
        let m = rng.gen_range(1..=12);
        let sets: Vec<Vec<usize>> = (0..m)
            .map(|_| {
                let mut s: Vec<usize> = (0..3).map(|_| rng.gen_range(0..n)).collect();
                s.sort_unstable();
                s.dedup();
                s
            })
            .collect();
        let weights = (0..m).map(|_| Ratio::new(rng.gen_range(0..50), rng.gen_range(1..4))).collect();
        let c = SetCollection::weighted(n, sets, weights).unwrap();
        let opt = weighted_oracle(&c);
        let eps = Ratio::new(1, 10);
        let sol = squareimp_packing(&c, &SquareImpParams::new(3, eps)).unwrap();
        let r = verify(Instance::Packing(&c), Solution::Packing(&sol)).unwrap();
        assert!(r.valid, "{:?}", r.violations);
        assert!(sol.objective * Ratio::new(21, 10) >= opt, "case {case}: {} vs {opt}", sol.objective);
        assert_eq!(exact_packing(&c, &Budget::default()).unwrap().objective, opt);
    }
}

#[test]
fn squareimp_single_set_and_unit_weights() {
    let one = SetCollection::weighted(3, vec![vec![0, 1, 2]], vec![int(7)]).unwrap();
    let sol = squareimp_packing(&one, &SquareImpParams::new(3, Ratio::new(1, 10))).unwrap();
    assert_eq!(sol.objective, int(7));

    let g = complete(6);
    let tri = enumerate_triangles(&g);
    let unit = SetCollection::weighted(6, tri.sets().to_vec(), vec![int(1); tri.len()]).unwrap();
    let sol = squareimp_packing(&unit, &SquareImpParams::new(3, Ratio::new(1, 10))).unwrap();
    assert_eq!(sol.objective, int(2));
}

#[test]
fn exact_respects_budget() {
    let c = SetCollection::new(4, vec![vec![1, 2], vec![0, 1], vec![2, 3]]).unwrap();
    assert!(exact_packing(&c, &Budget::nodes(1)).is_err());
}
