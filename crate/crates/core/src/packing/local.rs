use super::{greedy_packing, SetCollection};
use crate::error::{Error, Result};
use crate::solution::PackingSolution;

const FREE: usize = usize::MAX;

/// Unweighted local search: starting from the greedy packing, repeatedly
/// remove `t ≤ s` selected sets and insert `t + 1` pairwise-disjoint sets
/// into the freed space. Moves are searched by increasing `t`, then removal
/// sets in lexicographic order; the first improving move is applied.
pub fn local_search_packing(c: &SetCollection, s: usize) -> Result<PackingSolution> {
    if s == 0 {
        return Err(Error::invalid("improvement size s must be at least 1"));
    }
    if c.is_weighted() {
        return Err(Error::invalid("local search expects an unweighted collection"));
    }
    let inc = c.incidence();
    let mut state = State::new(c, &greedy_packing(c).selected);
    while state.improve(c, &inc, s) {}
    Ok(c.solution(state.selected()))
}

struct State {
    owner: Vec<usize>,
    chosen: Vec<bool>,
}

impl State {
    fn new(c: &SetCollection, selected: &[usize]) -> Self {
        let mut st = State {
            owner: vec![FREE; c.universe_size()],
            chosen: vec![false; c.len()],
        };
        for &i in selected {
            st.add(c, i);
        }
        st
    }

    fn add(&mut self, c: &SetCollection, i: usize) {
        self.chosen[i] = true;
        for &e in c.set(i) {
            self.owner[e] = i;
        }
    }

    fn remove(&mut self, c: &SetCollection, i: usize) {
        self.chosen[i] = false;
        for &e in c.set(i) {
            self.owner[e] = FREE;
        }
    }

    fn selected(&self) -> Vec<usize> {
        (0..self.chosen.len()).filter(|&i| self.chosen[i]).collect()
    }

    fn improve(&mut self, c: &SetCollection, inc: &[Vec<usize>], s: usize) -> bool {
        let selected = self.selected();
        for t in 0..=s.min(selected.len()) {
            let mut combo: Vec<usize> = (0..t).collect();
            loop {
                let removal: Vec<usize> = combo.iter().map(|&k| selected[k]).collect();
                if let Some(insert) = self.find_insertion(c, inc, &removal) {
                    for &r in &removal {
                        self.remove(c, r);
                    }
                    for &i in &insert {
                        self.add(c, i);
                    }
                    return true;
                }
                if !next_combination(&mut combo, selected.len()) {
                    break;
                }
            }
        }
        false
    }

    /// `removal.len() + 1` pairwise-disjoint unselected sets that fit into the
    /// free elements plus the elements of `removal`.
    fn find_insertion(&self, c: &SetCollection, inc: &[Vec<usize>], removal: &[usize]) -> Option<Vec<usize>> {
        let fits = |i: usize| !self.chosen[i] && c.set(i).iter().all(|&e| self.owner[e] == FREE || removal.contains(&self.owner[e]));
        let mut candidates: Vec<usize> = if removal.is_empty() {
            (0..c.len()).filter(|&i| fits(i)).collect()
        } else {
            // The packing is maximal at this point, so every useful candidate
            // meets one of the removed sets.
            let mut v: Vec<usize> = removal
                .iter()
                .flat_map(|&r| c.set(r).iter().flat_map(|&e| inc[e].iter().copied()))
                .filter(|&i| fits(i))
                .collect();
            v.sort_unstable();
            v.dedup();
            v
        };
        candidates.retain(|&i| !removal.contains(&i));
        let need = removal.len() + 1;
        if candidates.len() < need {
            return None;
        }
        let mut used = vec![false; c.universe_size()];
        let mut pick = Vec::with_capacity(need);
        disjoint_pick(c, &candidates, 0, need, &mut used, &mut pick).then_some(pick)
    }
}

fn disjoint_pick(
    c: &SetCollection,
    candidates: &[usize],
    from: usize,
    need: usize,
    used: &mut [bool],
    pick: &mut Vec<usize>,
) -> bool {
    if pick.len() == need {
        return true;
    }
    for idx in from..candidates.len() {
        if candidates.len() - idx < need - pick.len() {
            return false;
        }
        let i = candidates[idx];
        if c.set(i).iter().any(|&e| used[e]) {
            continue;
        }
        for &e in c.set(i) {
            used[e] = true;
        }
        pick.push(i);
        if disjoint_pick(c, candidates, idx + 1, need, used, pick) {
            return true;
        }
        pick.pop();
        for &e in c.set(i) {
            used[e] = false;
        }
    }
    false
}

/// Advances `combo` (strictly increasing indices below `n`) to the next
/// combination in lexicographic order.
pub(crate) fn next_combination(combo: &mut [usize], n: usize) -> bool {
    let k = combo.len();
    for i in (0..k).rev() {
        if combo[i] < n - k + i {
            combo[i] += 1;
            for j in i + 1..k {
                combo[j] = combo[j - 1] + 1;
            }
            return true;
        }
    }
    false
}
