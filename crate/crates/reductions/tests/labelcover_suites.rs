use packcover_core::generate::gen_random_graph;
use packcover_core::packing::{pack_triangles, TpAlgorithm};
use packcover_core::sibcheck::is_feasible;
use packcover_core::sibcover::solve_exact_cover;
use packcover_core::verify::{verify, Instance, Solution};
use packcover_core::{AlleleCondition, Budget, Graph};
use packcover_reductions::labelcover::{cover_to_packing, labelcover_to_allele, packing_to_cover, tp_to_labelcover};

/// Most node-disjoint triangles, by branching on the lowest free node.
fn tp_oracle(g: &Graph) -> usize {
    fn go(g: &Graph, used: &mut [bool]) -> usize {
        let Some(u) = used.iter().position(|&x| !x) else {
            return 0;
        };
        used[u] = true;
        let mut best = go(g, used);
        for v in u + 1..g.node_count() {
            for w in v + 1..g.node_count() {
                if !used[v] && !used[w] && g.has_edge(u, v) && g.has_edge(u, w) && g.has_edge(v, w) {
                    used[v] = true;
                    used[w] = true;
                    best = best.max(1 + go(g, used));
                    used[v] = false;
                    used[w] = false;
                }
            }
        }
        used[u] = false;
        best
    }
    go(g, &mut vec![false; g.node_count()])
}

fn all_graphs(n: usize) -> impl Iterator<Item = Graph> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    (0u32..1 << pairs.len()).map(move |mask| {
        Graph::new(n, pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e)).unwrap()
    })
}

fn suite() -> Vec<Graph> {
    let mut out: Vec<Graph> = (1..=5).flat_map(all_graphs).collect();
    for i in 0..50u64 {
        let n = 6 + (i % 3) as usize;
        out.push(gen_random_graph(n, 0.3 + 0.1 * (i % 5) as f64, 500 + i).unwrap());
    }
    out
}

fn is_triangle(g: &Graph, a: usize, b: usize, c: usize) -> bool {
    g.has_edge(a, b) && g.has_edge(b, c) && g.has_edge(a, c)
}

#[test]
fn triples_are_feasible_exactly_on_triangles() {
    for g in suite() {
        let n = g.node_count();
        let (lc, cert) = tp_to_labelcover(&g);
        assert!(cert.loci.len() <= n * (g.edge_count() + 1));
        let lifts = [AlleleCondition::Two, AlleleCondition::Four].map(|c| (c, labelcover_to_allele(&lc, c)));
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    let tri = is_triangle(&g, a, b, c);
                    assert_eq!(lc.is_feasible(&[a, b, c]), tri, "{:?} {a} {b} {c}", g.edges());
                    for (cond, inst) in &lifts {
                        assert_eq!(is_feasible(inst, &[a, b, c], *cond), tri);
                    }
                }
            }
        }
    }
}

#[test]
fn cover_optimum_follows_packing_optimum() {
    let budget = Budget::nodes(20_000_000);
    for g in suite() {
        let n = g.node_count();
        let t = tp_oracle(&g);
        let expected = t + (n - 3 * t).div_ceil(2);
        let (lc, _) = tp_to_labelcover(&g);
        for cond in [AlleleCondition::Two, AlleleCondition::Four] {
            let inst = labelcover_to_allele(&lc, cond);
            let opt = solve_exact_cover(&inst, cond, Some(3), &budget).unwrap();
            assert_eq!(opt.len(), expected, "{:?} {cond:?}", g.edges());
            let inst_ref = Instance::Cover { inst: &inst, cond, max_group: Some(3) };
            assert!(verify(inst_ref, Solution::Cover(&opt)).unwrap().valid);
            // Backward: groups may overlap, so only the cover size is kept.
            let back = cover_to_packing(&g, &opt);
            let p = back.len();
            assert!(p + (n - 3 * p).div_ceil(2) <= opt.len());
            assert!(verify(Instance::Triangles(&g), Solution::Triangles(&back)).unwrap().valid);
            // Forward: an optimal packing gives a cover of the predicted size.
            let best = pack_triangles(&g, TpAlgorithm::Exact, &budget).unwrap();
            assert_eq!(best.len(), t);
            let fwd = packing_to_cover(n, &best);
            assert_eq!(fwd.len(), expected);
            assert!(verify(inst_ref, Solution::Cover(&fwd)).unwrap().valid);
        }
    }
}

#[test]
fn unbounded_groups_can_beat_the_formula() {
    // Four mutually adjacent individuals share two labels on every locus.
    let k4 = Graph::new(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
    let (lc, _) = tp_to_labelcover(&k4);
    assert!(lc.is_feasible(&[0, 1, 2, 3]));
    let inst = labelcover_to_allele(&lc, AlleleCondition::Two);
    let opt = solve_exact_cover(&inst, AlleleCondition::Two, None, &Budget::default()).unwrap();
    assert_eq!(opt.len(), 1);
}

#[test]
fn deterministic() {
    let g = gen_random_graph(7, 0.5, 3).unwrap();
    assert_eq!(tp_to_labelcover(&g), tp_to_labelcover(&g));
}
