use packcover_core::generate::gen_random_graph;
use packcover_core::sibcheck::is_feasible;
use packcover_core::sibcover::solve_exact_cover;
use packcover_core::verify::{verify, Instance, Solution};
use packcover_core::{AlleleCondition, Budget, CoverSolution, Graph};
use packcover_reductions::coloring::{coloring_to_allele, coloring_to_cover, cover_to_coloring, is_proper_coloring};

fn graphs() -> Vec<Graph> {
    let mut out = vec![
        Graph::new(3, [(0, 1), (1, 2), (0, 2)]).unwrap(),
        Graph::empty(5),
        Graph::new(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap(),
    ];
    for seed in 0..40u64 {
        let n = 3 + (seed % 5) as usize;
        out.push(gen_random_graph(n, 0.2 + 0.15 * (seed % 4) as f64, 900 + seed).unwrap());
    }
    out
}

fn is_independent(g: &Graph, vs: &[usize]) -> bool {
    vs.iter().all(|&u| vs.iter().all(|&v| !g.has_edge(u, v)))
}

/// Fewest colors, by trying every assignment with `c` colors for growing `c`.
fn chromatic_number(g: &Graph) -> usize {
    fn fits(g: &Graph, c: usize, col: &mut Vec<usize>) -> bool {
        let v = col.len();
        if v == g.node_count() {
            return true;
        }
        for x in 0..c {
            if g.neighbors(v).iter().all(|&w| w >= v || col[w] != x) {
                col.push(x);
                if fits(g, c, col) {
                    return true;
                }
                col.pop();
            }
        }
        false
    }
    (1..=g.node_count().max(1)).find(|&c| fits(g, c, &mut Vec::new())).unwrap()
}

fn greedy_coloring(g: &Graph) -> Vec<usize> {
    let mut col: Vec<usize> = Vec::new();
    for v in 0..g.node_count() {
        let c = (0..).find(|&c| g.neighbors(v).iter().all(|&w| w >= v || col[w] != c)).unwrap();
        col.push(c);
    }
    col
}

#[test]
fn large_sets_are_feasible_exactly_when_independent() {
    for g in graphs() {
        let n = g.node_count();
        for cond in [AlleleCondition::Two, AlleleCondition::Four] {
            let (inst, _) = coloring_to_allele(&g, cond);
            let rows = inst.individuals();
            for u in 0..n {
                for v in u + 1..n {
                    assert_ne!(rows[u], rows[v], "identical individuals");
                    assert!(is_feasible(&inst, &[u, v], cond));
                }
            }
            for mask in 0u32..1 << n {
                let vs: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
                if vs.len() >= 3 {
                    assert_eq!(is_feasible(&inst, &vs, cond), is_independent(&g, &vs), "{:?} {vs:?}", g.edges());
                }
            }
        }
    }
}

#[test]
fn coloring_gives_cover_and_cover_gives_coloring() {
    let budget = Budget::nodes(20_000_000);
    for g in graphs() {
        let chi = chromatic_number(&g);
        for cond in [AlleleCondition::Two, AlleleCondition::Four] {
            let (inst, cert) = coloring_to_allele(&g, cond);
            let inst_ref = Instance::Cover { inst: &inst, cond, max_group: None };

            let col = greedy_coloring(&g);
            let k = col.iter().max().map_or(0, |c| c + 1);
            let cover = coloring_to_cover(&col, &cert).unwrap();
            assert_eq!(cover.len(), k);
            assert!(verify(inst_ref, Solution::Cover(&cover)).unwrap().valid);

            let opt = solve_exact_cover(&inst, cond, None, &budget).unwrap();
            assert!(opt.len() <= chi);
            let back = cover_to_coloring(&opt, &cert).unwrap();
            assert!(is_proper_coloring(&g, &back));
            let colors = back.iter().max().map_or(0, |c| c + 1);
            assert!(colors <= 2 * opt.len(), "{} colors from {} groups", colors, opt.len());
            assert!(colors >= chi);
        }
    }
}

#[test]
fn triangle_needs_two_groups() {
    let k3 = Graph::new(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
    let (inst, cert) = coloring_to_allele(&k3, AlleleCondition::Two);
    let opt = solve_exact_cover(&inst, AlleleCondition::Two, None, &Budget::default()).unwrap();
    assert_eq!(opt.len(), 2);
    let col = cover_to_coloring(&opt, &cert).unwrap();
    assert!(is_proper_coloring(&k3, &col));
    assert_eq!(col.iter().max().unwrap() + 1, 3);
}

#[test]
fn edgeless_graph_is_one_group() {
    let g = Graph::empty(5);
    let (inst, cert) = coloring_to_allele(&g, AlleleCondition::Two);
    let opt = solve_exact_cover(&inst, AlleleCondition::Two, None, &Budget::default()).unwrap();
    assert_eq!(opt.len(), 1);
    assert_eq!(cover_to_coloring(&opt, &cert).unwrap(), vec![0; 5]);
}

#[test]
fn rejects_covers_with_dense_groups() {
    let k3 = Graph::new(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
    let (_, cert) = coloring_to_allele(&k3, AlleleCondition::Two);
    assert!(cover_to_coloring(&CoverSolution::new(vec![vec![0, 1, 2]]), &cert).is_err());
    assert!(cover_to_coloring(&CoverSolution::new(vec![vec![0, 1]]), &cert).is_err());
}
