//! 2-coverage: choose at most `k` sets maximizing the number of elements
//! covered at least twice.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::packing::local::next_combination;
use crate::ratio;
use crate::setsystem::WeightedSetSystem;
use crate::solution::Cov2Solution;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cov2Instance {
    pub system: WeightedSetSystem,
    pub k: usize,
}

/// Elements occurring in at least two selected sets.
pub fn twice_covered(system: &WeightedSetSystem, selection: &[usize]) -> Vec<usize> {
    let mut sel = selection.to_vec();
    sel.sort_unstable();
    sel.dedup();
    let mut count = vec![0u32; system.universe_size()];
    for &i in &sel {
        for &e in system.set(i) {
            count[e] += 1;
        }
    }
    (0..count.len()).filter(|&e| count[e] >= 2).collect()
}

fn solution(system: &WeightedSetSystem, mut selected: Vec<usize>) -> Cov2Solution {
    selected.sort_unstable();
    selected.dedup();
    let twice = twice_covered(system, &selected);
    Cov2Solution {
        selected,
        twice_covered: twice,
    }
}

/// Greedy maximum coverage over `sets`, restricted to elements flagged in
/// `counts`; picks `min(k, sets.len())` indices, ties to the smaller index.
fn greedy_cover(sets: &[&[usize]], counts: &[bool], k: usize) -> Vec<usize> {
    let mut covered: Vec<bool> = counts.iter().map(|&c| !c).collect();
    let mut chosen = vec![false; sets.len()];
    let mut out = Vec::new();
    for _ in 0..k.min(sets.len()) {
        let mut best: Option<(usize, usize)> = None;
        for (i, s) in sets.iter().enumerate() {
            if chosen[i] {
                continue;
            }
            let gain = s.iter().filter(|&&e| !covered[e]).count();
            if best.is_none_or(|(g, _)| gain > g) {
                best = Some((gain, i));
            }
        }
        let (_, i) = best.unwrap();
        chosen[i] = true;
        for &e in sets[i] {
            covered[e] = true;
        }
        out.push(i);
    }
    out
}

/// Classic greedy maximum coverage: `min(k, m)` sets by largest marginal
/// coverage, ties to the smallest index.
pub fn maxcov_greedy(system: &WeightedSetSystem, k: usize) -> Vec<usize> {
    let sets: Vec<&[usize]> = system.sets().iter().map(Vec::as_slice).collect();
    greedy_cover(&sets, &vec![true; system.universe_size()], k)
}

/// Number of elements covered at least once.
pub fn coverage(system: &WeightedSetSystem, selection: &[usize]) -> usize {
    let mut covered = vec![false; system.universe_size()];
    for &i in selection {
        for &e in system.set(i) {
            covered[e] = true;
        }
    }
    covered.into_iter().filter(|&c| c).count()
}

fn check_k(k: usize) -> Result<()> {
    if k < 2 {
        return Err(Error::invalid("2-coverage needs k ≥ 2"));
    }
    Ok(())
}

/// Pairwise intersections `T_ij = S_i ∩ S_j` (duplicates merged, keeping the
/// first pair), greedy coverage with `⌊k/2⌋` of them, and output of both
/// parents of every chosen intersection.
pub fn cov2_pairwise(system: &WeightedSetSystem, k: usize) -> Result<Cov2Solution> {
    check_k(k)?;
    let m = system.set_count();
    let mut pairs: BTreeMap<Vec<usize>, (usize, usize)> = BTreeMap::new();
    let mut order = Vec::new();
    for i in 0..m {
        for j in i + 1..m {
            let t: Vec<usize> = system.set(i).iter().copied().filter(|e| system.set(j).binary_search(e).is_ok()).collect();
            if !pairs.contains_key(&t) {
                pairs.insert(t.clone(), (i, j));
                order.push(t);
            }
        }
    }
    let sets: Vec<&[usize]> = order.iter().map(Vec::as_slice).collect();
    let picked = greedy_cover(&sets, &vec![true; system.universe_size()], k / 2);
    let selected = picked
        .into_iter()
        .flat_map(|t| {
            let (i, j) = pairs[&order[t]];
            [i, j]
        })
        .collect();
    Ok(solution(system, selected))
}

/// Phase 1 takes `⌊k/2⌋` sets by greedy coverage; phase 2 takes the other
/// `k − ⌊k/2⌋` sets among the rest by greedy coverage of the elements that
/// phase 1 covered exactly once.
pub fn cov2_two_phase(system: &WeightedSetSystem, k: usize) -> Result<Cov2Solution> {
    check_k(k)?;
    let first = maxcov_greedy(system, k / 2);
    let mut count = vec![0u32; system.universe_size()];
    for &i in &first {
        for &e in system.set(i) {
            count[e] += 1;
        }
    }
    let target: Vec<bool> = count.iter().map(|&c| c == 1).collect();
    let rest: Vec<usize> = (0..system.set_count()).filter(|i| !first.contains(i)).collect();
    let sets: Vec<&[usize]> = rest.iter().map(|&i| system.set(i)).collect();
    let second = greedy_cover(&sets, &target, k - k / 2);
    let mut selected = first;
    selected.extend(second.into_iter().map(|x| rest[x]));
    Ok(solution(system, selected))
}

/// Better of the two routes; ties go to the pairwise route.
pub fn cov2_combined(system: &WeightedSetSystem, k: usize) -> Result<Cov2Solution> {
    let a = cov2_pairwise(system, k)?;
    let b = cov2_two_phase(system, k)?;
    Ok(if b.objective() > a.objective() { b } else { a })
}

/// Exhaustive search over all selections of `min(k, m)` sets (adding sets
/// never hurts).
pub fn cov2_exact(system: &WeightedSetSystem, k: usize, budget: &Budget) -> Result<Cov2Solution> {
    let m = system.set_count();
    let size = k.min(m);
    let mut meter = budget.meter("exact 2-coverage");
    let mut combo: Vec<usize> = (0..size).collect();
    let mut best = solution(system, combo.clone());
    loop {
        meter.tick()?;
        let twice = twice_covered(system, &combo);
        if twice.len() > best.twice_covered.len() {
            best = Cov2Solution {
                selected: combo.clone(),
                twice_covered: twice,
            };
        }
        if !next_combination(&mut combo, m) {
            break;
        }
    }
    Ok(best)
}

/// Elements are the edges of `g`; node `v` becomes the set of its incident
/// edges. Every element lies in exactly two sets, and `k` sets cover an
/// element twice exactly when both endpoints are chosen.
pub fn ds_to_cov2(g: &Graph, k: usize) -> Cov2Instance {
    let sets = (0..g.node_count())
        .map(|v| {
            g.edges()
                .iter()
                .enumerate()
                .filter(|(_, &(a, b))| a == v || b == v)
                .map(|(e, _)| e)
                .collect()
        })
        .collect();
    let system = WeightedSetSystem::unit(g.edge_count(), sets, vec![ratio::int(0); g.node_count()])
        .expect("incidence sets lie in the edge universe");
    Cov2Instance { system, k }
}

/// One node per set; sets sharing elements are joined by an edge whose
/// weight is the number of shared elements.
pub fn cov2_to_weighted_ds(system: &WeightedSetSystem) -> Graph {
    let m = system.set_count();
    let mut edges = Vec::new();
    for i in 0..m {
        for j in i + 1..m {
            let common = system.set(i).iter().filter(|e| system.set(j).binary_search(e).is_ok()).count();
            if common > 0 {
                edges.push((i, j, ratio::int(common as i64)));
            }
        }
    }
    Graph::weighted(m, edges).expect("set indices are valid nodes")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio::int;

    fn sys(n: usize, sets: Vec<Vec<usize>>) -> WeightedSetSystem {
        let m = sets.len();
        WeightedSetSystem::unit(n, sets, vec![int(0); m]).unwrap()
    }

    fn four_cycle() -> WeightedSetSystem {
        sys(4, vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 0]])
    }

    #[test]
    fn duplicated_pair() {
        let s = sys(2, vec![vec![0, 1], vec![0, 1]]);
        assert_eq!(cov2_pairwise(&s, 2).unwrap().objective(), 2);
        assert_eq!(cov2_two_phase(&s, 2).unwrap().objective(), 2);
    }

    #[test]
    fn four_cycle_routes() {
        let s = four_cycle();
        let b = Budget::default();
        assert_eq!(cov2_pairwise(&s, 2).unwrap().objective(), 1);
        assert_eq!(cov2_two_phase(&s, 2).unwrap().objective(), 1);
        assert_eq!(cov2_exact(&s, 2, &b).unwrap().objective(), 1);
        assert_eq!(cov2_exact(&s, 4, &b).unwrap().objective(), 4);
    }

    #[test]
    fn disjoint_sets() {
        let s = sys(4, vec![vec![0, 1], vec![2], vec![3]]);
        assert_eq!(cov2_combined(&s, 2).unwrap().objective(), 0);
        assert_eq!(maxcov_greedy(&s, 2), vec![0, 1]);
        let empty = sys(0, vec![]);
        assert_eq!(cov2_exact(&empty, 2, &Budget::default()).unwrap().objective(), 0);
    }

    #[test]
    fn weighted_ds_graph() {
        let g = cov2_to_weighted_ds(&four_cycle());
        assert_eq!(g.edge_count(), 4);
        assert!(g.weights().unwrap().iter().all(|w| *w == int(1)));
        let g = cov2_to_weighted_ds(&sys(3, vec![vec![0, 1, 2], vec![0, 1, 2]]));
        assert_eq!(g.weights().unwrap(), &[int(3)]);
    }

    #[test]
    fn rejects_small_k() {
        assert!(cov2_pairwise(&four_cycle(), 1).is_err());
    }
}
