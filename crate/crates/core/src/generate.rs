//! Seeded instance generators. Every function is a pure function of its
//! arguments; the RNG is ChaCha8 seeded from `seed`.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::ratio::{self, Ratio};
use crate::setsystem::WeightedSetSystem;
use crate::sib::SibInstance;

const REGULAR_RETRIES: usize = 10_000;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Erdős–Rényi graph: each pair independently with probability `p`.
pub fn gen_random_graph(n: usize, p: f64, seed: u64) -> Result<Graph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::Infeasible(format!("edge probability {p} outside [0,1]")));
    }
    let mut r = rng(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if r.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, edges)
}

/// Random spanning tree (each node attaches to a uniformly chosen earlier
/// node) plus independent extra edges with probability `p`.
pub fn gen_connected_graph(n: usize, p: f64, seed: u64) -> Result<Graph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::Infeasible(format!("edge probability {p} outside [0,1]")));
    }
    let mut r = rng(seed);
    let mut edges = Vec::new();
    for v in 1..n {
        edges.push((r.gen_range(0..v), v));
    }
    for u in 0..n {
        for v in u + 1..n {
            if r.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, edges)
}

pub fn gen_random_cubic(n: usize, seed: u64) -> Result<Graph> {
    gen_random_regular(n, 3, seed)
}

/// Simple `d`-regular graph from the pairing model with rejection.
pub fn gen_random_regular(n: usize, d: usize, seed: u64) -> Result<Graph> {
    if d >= n || (n * d) % 2 == 1 || (d == 3 && n < 4) {
        return Err(Error::Infeasible(format!("no simple {d}-regular graph on {n} nodes")));
    }
    let mut r = rng(seed);
    let mut points: Vec<usize> = (0..n).flat_map(|u| std::iter::repeat_n(u, d)).collect();
    'attempt: for _ in 0..REGULAR_RETRIES {
        points.shuffle(&mut r);
        let mut edges = Vec::with_capacity(n * d / 2);
        for pair in points.chunks(2) {
            let (u, v) = (pair[0].min(pair[1]), pair[0].max(pair[1]));
            if u == v || edges.contains(&(u, v)) {
                continue 'attempt;
            }
            edges.push((u, v));
        }
        return Graph::new(n, edges);
    }
    Err(Error::Infeasible(format!(
        "no simple {d}-regular graph on {n} nodes after {REGULAR_RETRIES} attempts"
    )))
}

/// Alleles drawn uniformly from `1..=allele_pool`.
pub fn gen_random_sib(n: usize, loci: usize, allele_pool: i64, seed: u64) -> Result<SibInstance> {
    if allele_pool < 1 {
        return Err(Error::Infeasible("allele pool must be positive".into()));
    }
    let mut r = rng(seed);
    let rows = (0..n)
        .map(|_| {
            (0..loci)
                .map(|_| (r.gen_range(1..=allele_pool), r.gen_range(1..=allele_pool)))
                .collect()
        })
        .collect();
    SibInstance::new(loci, rows)
}

/// Individuals drawn from `families` random parent pairs: each child takes
/// one allele of the father and one of the mother per locus, and the pair is
/// written in random order. Returns the instance and the family of each child.
pub fn gen_sibling_families(
    families: usize,
    children_per_family: usize,
    loci: usize,
    allele_pool: i64,
    seed: u64,
) -> Result<(SibInstance, Vec<usize>)> {
    if allele_pool < 1 {
        return Err(Error::Infeasible("allele pool must be positive".into()));
    }
    let mut r = rng(seed);
    let mut rows = Vec::new();
    let mut family_of = Vec::new();
    for f in 0..families {
        let mut parent = || -> Vec<(i64, i64)> {
            (0..loci)
                .map(|_| (r.gen_range(1..=allele_pool), r.gen_range(1..=allele_pool)))
                .collect()
        };
        let (father, mother) = (parent(), parent());
        for _ in 0..children_per_family {
            let child = (0..loci)
                .map(|j| {
                    let a = if r.gen_bool(0.5) { father[j].0 } else { father[j].1 };
                    let b = if r.gen_bool(0.5) { mother[j].0 } else { mother[j].1 };
                    if r.gen_bool(0.5) {
                        (a, b)
                    } else {
                        (b, a)
                    }
                })
                .collect();
            rows.push(child);
            family_of.push(f);
        }
    }
    Ok((SibInstance::new(loci, rows)?, family_of))
}

/// `m` sets over `n` elements. Set sizes are uniform in `1..=a`, except set 0
/// which has exactly `a` elements, so the maximum set size equals `a`.
/// Element weights are integers in `1..=3`; a set's cost is an integer in
/// `0..=2·|S|`.
pub fn gen_random_system(n: usize, m: usize, a: usize, seed: u64) -> Result<WeightedSetSystem> {
    if a == 0 || a > n {
        return Err(Error::Infeasible(format!("set size bound {a} must be in 1..={n}")));
    }
    let mut r = rng(seed);
    let weights: Vec<Ratio> = (0..n).map(|_| ratio::int(r.gen_range(1..=3))).collect();
    let universe: Vec<usize> = (0..n).collect();
    let mut sets = Vec::with_capacity(m);
    let mut costs = Vec::with_capacity(m);
    for i in 0..m {
        let size = if i == 0 { a } else { r.gen_range(1..=a) };
        let set: Vec<usize> = universe.choose_multiple(&mut r, size).copied().collect();
        costs.push(ratio::int(r.gen_range(0..=2 * size as i64)));
        sets.push(set);
    }
    WeightedSetSystem::new(weights, sets, costs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cubic_on_four_nodes_is_k4() {
        let g = gen_random_cubic(4, 9).unwrap();
        assert_eq!(g.edge_count(), 6);
        assert_eq!(g.regular_degree(), Some(3));
    }

    #[test]
    fn cubic_rejects_odd() {
        assert!(gen_random_cubic(5, 1).is_err());
        assert!(gen_random_cubic(2, 1).is_err());
    }

    #[test]
    fn zero_probability_is_edgeless() {
        assert_eq!(gen_random_graph(5, 0.0, 3).unwrap().edge_count(), 0);
    }

    #[test]
    fn deterministic() {
        assert_eq!(gen_random_sib(3, 2, 4, 11).unwrap(), gen_random_sib(3, 2, 4, 11).unwrap());
        assert_eq!(gen_random_system(8, 5, 3, 2).unwrap(), gen_random_system(8, 5, 3, 2).unwrap());
    }

    #[test]
    fn system_has_requested_max_size() {
        for seed in 0..20 {
            let s = gen_random_system(10, 6, 4, seed).unwrap();
            assert_eq!(s.max_set_size(), 4);
        }
    }

    #[test]
    fn connected_generator_connects() {
        for seed in 0..20 {
            assert!(gen_connected_graph(7, 0.1, seed).unwrap().is_connected());
        }
    }
}
