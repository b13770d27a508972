use super::{greedy_packing, SetCollection};
use crate::error::{Error, Result};
use crate::ratio::{self, Ratio};
use crate::solution::PackingSolution;

const FREE: usize = usize::MAX;

#[derive(Debug, Clone, Copy)]
pub struct SquareImpParams {
    /// Maximum number of talons per claw; the set-size bound `a`.
    pub claw_size: usize,
    /// Rescaling slack: weights are mapped to integers in `[0, N]` with
    /// `N = ⌈10·m/ε⌉`.
    pub eps: Ratio,
}

impl SquareImpParams {
    pub fn new(claw_size: usize, eps: Ratio) -> Self {
        SquareImpParams { claw_size, eps }
    }
}

/// Weighted local search on squared, rescaled weights.
///
/// Weights are scaled to `w' = ⌊w·N/W_max⌋`. A move inserts a set of
/// pairwise-disjoint unselected sets (a single set, or up to `claw_size`
/// talons that all meet one selected center) and drops every selected set
/// they meet. It is accepted when `Σ w'²` rises by at least 1. Centers are
/// scanned in index order, talon sets lexicographically; the first accepted
/// move is applied. Finally the packing is made maximal with any remaining
/// disjoint sets.
pub fn squareimp_packing(c: &SetCollection, params: &SquareImpParams) -> Result<PackingSolution> {
    if params.eps <= ratio::int(0) {
        return Err(Error::invalid("eps must be positive"));
    }
    if params.claw_size == 0 {
        return Err(Error::invalid("claw size must be at least 1"));
    }
    let start = greedy_packing(c);
    let w_max = (0..c.len()).map(|i| c.weight(i)).max().unwrap_or_else(|| ratio::int(0));
    if w_max == ratio::int(0) {
        return Ok(start);
    }
    let scale = (ratio::int(10 * c.len() as i64) / params.eps).ceil();
    let scaled: Vec<i128> = (0..c.len())
        .map(|i| ratio::floor_to_i64(&(c.weight(i) * scale / w_max)) as i128)
        .collect();
    let sq: Vec<i128> = scaled.iter().map(|w| w * w).collect();

    let inc = c.incidence();
    let mut owner = vec![FREE; c.universe_size()];
    let mut chosen = vec![false; c.len()];
    for &i in &start.selected {
        chosen[i] = true;
        for &e in c.set(i) {
            owner[e] = i;
        }
    }

    loop {
        let Some((insert, remove)) = find_move(c, &inc, &owner, &chosen, &sq, params.claw_size) else {
            break;
        };
        for r in remove {
            chosen[r] = false;
            for &e in c.set(r) {
                owner[e] = FREE;
            }
        }
        for i in insert {
            chosen[i] = true;
            for &e in c.set(i) {
                owner[e] = i;
            }
        }
    }

    for i in 0..c.len() {
        if !chosen[i] && c.set(i).iter().all(|&e| owner[e] == FREE) {
            chosen[i] = true;
            for &e in c.set(i) {
                owner[e] = i;
            }
        }
    }
    Ok(c.solution((0..c.len()).filter(|&i| chosen[i]).collect()))
}

fn conflicts(c: &SetCollection, owner: &[usize], talons: &[usize]) -> Vec<usize> {
    let mut out: Vec<usize> = talons
        .iter()
        .flat_map(|&t| c.set(t).iter().map(|&e| owner[e]))
        .filter(|&o| o != FREE)
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

fn gain(c: &SetCollection, owner: &[usize], sq: &[i128], talons: &[usize]) -> (i128, Vec<usize>) {
    let removed = conflicts(c, owner, talons);
    let g = talons.iter().map(|&t| sq[t]).sum::<i128>() - removed.iter().map(|&r| sq[r]).sum::<i128>();
    (g, removed)
}

fn find_move(
    c: &SetCollection,
    inc: &[Vec<usize>],
    owner: &[usize],
    chosen: &[bool],
    sq: &[i128],
    claw_size: usize,
) -> Option<(Vec<usize>, Vec<usize>)> {
    for t in 0..c.len() {
        if chosen[t] {
            continue;
        }
        let (g, removed) = gain(c, owner, sq, &[t]);
        if g >= 1 {
            return Some((vec![t], removed));
        }
    }
    if claw_size < 2 {
        return None;
    }
    for center in 0..c.len() {
        if !chosen[center] {
            continue;
        }
        let mut talons: Vec<usize> = c
            .set(center)
            .iter()
            .flat_map(|&e| inc[e].iter().copied())
            .filter(|&i| !chosen[i])
            .collect();
        talons.sort_unstable();
        talons.dedup();
        let mut used = vec![false; c.universe_size()];
        let mut pick = Vec::new();
        if let Some(found) = claw_search(c, owner, sq, &talons, 0, claw_size, &mut used, &mut pick) {
            return Some(found);
        }
    }
    None
}

#[allow(clippy::too_many_arguments)]
fn claw_search(
    c: &SetCollection,
    owner: &[usize],
    sq: &[i128],
    talons: &[usize],
    from: usize,
    claw_size: usize,
    used: &mut [bool],
    pick: &mut Vec<usize>,
) -> Option<(Vec<usize>, Vec<usize>)> {
    if pick.len() >= 2 {
        let (g, removed) = gain(c, owner, sq, pick);
        if g >= 1 {
            return Some((pick.clone(), removed));
        }
    }
    if pick.len() == claw_size {
        return None;
    }
    for idx in from..talons.len() {
        let t = talons[idx];
        if c.set(t).iter().any(|&e| used[e]) {
            continue;
        }
        for &e in c.set(t) {
            used[e] = true;
        }
        pick.push(t);
        let found = claw_search(c, owner, sq, talons, idx + 1, claw_size, used, pick);
        pick.pop();
        for &e in c.set(t) {
            used[e] = false;
        }
        if found.is_some() {
            return found;
        }
    }
    None
}
