//! Minimum full-sibling cover. All solvers return partitions of the
//! individuals into feasible groups.

use std::collections::HashSet;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::packing::{local_search_packing, SetCollection};
use crate::ratio::{self, Ratio};
use crate::sib::{AlleleCondition, SibInstance};
use crate::sibcheck::{enumerate_groups, is_feasible};
use crate::solution::CoverSolution;

/// Local-search improvement size for a slack `eps`: `⌈1/ε⌉`, at most 3.
pub fn improvement_size(eps: Ratio) -> usize {
    if eps <= ratio::int(0) {
        return 3;
    }
    ratio::ceil_to_i64(&(ratio::int(1) / eps)).clamp(1, 3) as usize
}

/// Feasible groups of size at most `c`, largest first, ties lexicographic.
fn ranked_groups(inst: &SibInstance, cond: AlleleCondition, c: usize, budget: &Budget) -> Result<Vec<Vec<usize>>> {
    let mut groups = enumerate_groups(inst, cond, c, budget)?;
    groups.retain(|g| !g.is_empty());
    groups.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
    Ok(groups)
}

/// Repeatedly takes a largest feasible group of size at most `c` among the
/// individuals not yet covered.
pub fn solve_threshold_greedy(
    inst: &SibInstance,
    cond: AlleleCondition,
    c: usize,
    budget: &Budget,
) -> Result<CoverSolution> {
    if c == 0 {
        return Err(Error::invalid("threshold c must be at least 1"));
    }
    let groups = ranked_groups(inst, cond, c, budget)?;
    let mut covered = vec![false; inst.len()];
    let mut left = inst.len();
    let mut out = Vec::new();
    while left > 0 {
        // Subsets of feasible groups are feasible, so the first listed group
        // inside the uncovered set is a largest one there.
        let g = groups
            .iter()
            .find(|g| g.iter().all(|&p| !covered[p]))
            .expect("singletons are always feasible");
        for &p in g {
            covered[p] = true;
        }
        left -= g.len();
        out.push(g.clone());
    }
    Ok(CoverSolution::new(out))
}

/// Covers `rest` (sorted) by consecutive pairs, a single leftover alone.
fn pair_up(rest: &[usize], out: &mut Vec<Vec<usize>>) {
    for chunk in rest.chunks(2) {
        out.push(chunk.to_vec());
    }
}

/// Packs feasible groups of exactly `size` among `allowed` individuals with
/// local search of improvement size `s`, returning the chosen groups.
fn pack_groups(
    inst: &SibInstance,
    cond: AlleleCondition,
    allowed: &[usize],
    size: usize,
    s: usize,
    budget: &Budget,
) -> Result<Vec<Vec<usize>>> {
    let sub = inst.subinstance(allowed);
    let groups: Vec<Vec<usize>> = enumerate_groups(&sub, cond, size, budget)?
        .into_iter()
        .filter(|g| g.len() == size)
        .collect();
    let coll = SetCollection::new(allowed.len(), groups)?;
    let sol = local_search_packing(&coll, s)?;
    Ok(sol
        .selected
        .iter()
        .map(|&i| coll.set(i).iter().map(|&p| allowed[p]).collect())
        .collect())
}

fn uncovered(n: usize, groups: &[Vec<usize>]) -> Vec<usize> {
    let mut covered = vec![false; n];
    for g in groups {
        for &p in g {
            covered[p] = true;
        }
    }
    (0..n).filter(|&p| !covered[p]).collect()
}

/// Groups of size at most 3: local search over feasible triples, then pairs.
pub fn solve_a3(inst: &SibInstance, cond: AlleleCondition, eps: Ratio, budget: &Budget) -> Result<CoverSolution> {
    let all: Vec<usize> = (0..inst.len()).collect();
    let mut out = pack_groups(inst, cond, &all, 3, improvement_size(eps), budget)?;
    let rest = uncovered(inst.len(), &out);
    pair_up(&rest, &mut out);
    Ok(CoverSolution::new(out))
}

/// Groups of size at most 4: a greedy maximal packing of feasible 4-groups,
/// local search over feasible triples on the rest, then pairs.
pub fn solve_a4(inst: &SibInstance, cond: AlleleCondition, eps: Ratio, budget: &Budget) -> Result<CoverSolution> {
    let quads: Vec<Vec<usize>> = enumerate_groups(inst, cond, 4, budget)?
        .into_iter()
        .filter(|g| g.len() == 4)
        .collect();
    let mut covered = vec![false; inst.len()];
    let mut out = Vec::new();
    for q in quads {
        if q.iter().all(|&p| !covered[p]) {
            for &p in &q {
                covered[p] = true;
            }
            out.push(q);
        }
    }
    let rest = uncovered(inst.len(), &out);
    out.extend(pack_groups(inst, cond, &rest, 3, improvement_size(eps), budget)?);
    let rest = uncovered(inst.len(), &out);
    pair_up(&rest, &mut out);
    Ok(CoverSolution::new(out))
}

/// Classic greedy set cover over feasible groups of size at most `a`. Each
/// chosen group is trimmed to its newly covered members.
pub fn solve_setcover_greedy(
    inst: &SibInstance,
    cond: AlleleCondition,
    a: usize,
    budget: &Budget,
) -> Result<CoverSolution> {
    if a == 0 {
        return Err(Error::invalid("group size bound must be at least 1"));
    }
    let groups = enumerate_groups(inst, cond, a, budget)?;
    let mut covered = vec![false; inst.len()];
    let mut left = inst.len();
    let mut out = Vec::new();
    while left > 0 {
        let mut best: Option<(usize, &Vec<usize>)> = None;
        for g in &groups {
            let gain = g.iter().filter(|&&p| !covered[p]).count();
            if best.is_none_or(|(b, _)| gain > b) {
                best = Some((gain, g));
            }
        }
        let (_, g) = best.expect("nonempty instance has singleton groups");
        let fresh: Vec<usize> = g.iter().copied().filter(|&p| !covered[p]).collect();
        for &p in &fresh {
            covered[p] = true;
        }
        left -= fresh.len();
        out.push(fresh);
    }
    Ok(CoverSolution::new(out))
}

/// Minimum cover by groups of size at most `a` (unbounded when `None`).
///
/// Branch and bound: the lowest uncovered individual must be in some group;
/// branches are the feasible groups containing it that are maximal within
/// the uncovered individuals, largest first. The bound is the number of
/// groups so far plus `⌈uncovered / largest group size⌉`.
pub fn solve_exact_cover(
    inst: &SibInstance,
    cond: AlleleCondition,
    a: Option<usize>,
    budget: &Budget,
) -> Result<CoverSolution> {
    let n = inst.len();
    let cap = a.unwrap_or(n).min(n).max(1);
    if n == 0 {
        return Ok(CoverSolution::new(Vec::new()));
    }
    let groups = enumerate_groups(inst, cond, cap, budget)?;
    let largest = groups.iter().map(Vec::len).max().unwrap_or(1).max(1);
    let known: HashSet<Vec<usize>> = groups.iter().cloned().collect();
    let mut containing = vec![Vec::new(); n];
    for (gi, g) in groups.iter().enumerate() {
        for &p in g {
            containing[p].push(gi);
        }
    }
    let initial = solve_setcover_greedy(inst, cond, cap, budget)?;
    let mut search = CoverSearch {
        inst,
        cond,
        cap,
        groups: &groups,
        known: &known,
        containing: &containing,
        largest,
        covered: vec![false; n],
        current: Vec::new(),
        best: initial.groups,
        meter: budget.meter("exact cover"),
    };
    search.run(n)?;
    Ok(CoverSolution::new(search.best))
}

struct CoverSearch<'a> {
    inst: &'a SibInstance,
    cond: AlleleCondition,
    cap: usize,
    groups: &'a [Vec<usize>],
    known: &'a HashSet<Vec<usize>>,
    containing: &'a [Vec<usize>],
    largest: usize,
    covered: Vec<bool>,
    current: Vec<Vec<usize>>,
    best: Vec<Vec<usize>>,
    meter: crate::budget::Meter,
}

impl CoverSearch<'_> {
    fn is_maximal_within_uncovered(&self, g: &[usize]) -> bool {
        if g.len() >= self.cap {
            return true;
        }
        (0..self.covered.len()).filter(|&p| !self.covered[p] && !g.contains(&p)).all(|p| {
            let mut h = g.to_vec();
            h.push(p);
            h.sort_unstable();
            !self.known.contains(&h)
        })
    }

    fn run(&mut self, left: usize) -> Result<()> {
        self.meter.tick()?;
        if left == 0 {
            if self.current.len() < self.best.len() {
                self.best = self.current.clone();
            }
            return Ok(());
        }
        if self.current.len() + left.div_ceil(self.largest) >= self.best.len() {
            return Ok(());
        }
        let first = (0..self.covered.len()).find(|&p| !self.covered[p]).unwrap();
        let mut options: Vec<&Vec<usize>> = self.containing[first]
            .iter()
            .map(|&gi| &self.groups[gi])
            .filter(|g| g.iter().all(|&p| !self.covered[p]))
            .filter(|g| self.is_maximal_within_uncovered(g))
            .collect();
        options.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
        debug_assert!(options.iter().all(|g| is_feasible(self.inst, g, self.cond)));
        for g in options {
            for &p in g {
                self.covered[p] = true;
            }
            self.current.push(g.clone());
            self.run(left - g.len())?;
            self.current.pop();
            for &p in g {
                self.covered[p] = false;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pqrs() -> SibInstance {
        SibInstance::new(
            2,
            vec![
                vec![(1, 2), (5, 5)],
                vec![(3, 4), (5, 5)],
                vec![(1, 1), (5, 5)],
                vec![(5, 5), (5, 5)],
            ],
        )
        .unwrap()
    }

    fn b() -> Budget {
        Budget::default()
    }

    #[test]
    fn example_optima() {
        let inst = pqrs();
        assert_eq!(solve_exact_cover(&inst, AlleleCondition::Two, None, &b()).unwrap().len(), 2);
        assert_eq!(solve_exact_cover(&inst, AlleleCondition::Four, None, &b()).unwrap().len(), 2);
        let single = inst.subinstance(&[0]);
        assert_eq!(solve_exact_cover(&single, AlleleCondition::Two, None, &b()).unwrap().len(), 1);
    }

    #[test]
    fn example_greedies() {
        let inst = pqrs();
        assert_eq!(solve_threshold_greedy(&inst, AlleleCondition::Two, 3, &b()).unwrap().len(), 2);
        let sc = solve_setcover_greedy(&inst, AlleleCondition::Four, 3, &b()).unwrap();
        assert_eq!(sc.groups, vec![vec![0, 1, 2], vec![3]]);
    }

    #[test]
    fn all_identical_pairs_up() {
        let inst = SibInstance::new(1, vec![vec![(1, 2)]; 5]).unwrap();
        let sol = solve_threshold_greedy(&inst, AlleleCondition::Two, 2, &b()).unwrap();
        assert_eq!(sol.len(), 3);
        let whole = solve_setcover_greedy(&inst, AlleleCondition::Two, 5, &b()).unwrap();
        assert_eq!(whole.len(), 1);
    }

    #[test]
    fn eps_mapping() {
        assert_eq!(improvement_size(Ratio::new(1, 2)), 2);
        assert_eq!(improvement_size(Ratio::new(1, 100)), 3);
        assert_eq!(improvement_size(ratio::int(2)), 1);
    }
}
