//! Maximum profit coverage: choose sets maximizing the weight of the
//! covered elements minus the summed set costs.

mod twoimp;

pub use twoimp::{mpc_2imp, mpc_2imp_traced, TwoImpMove, TwoImpParams, TwoImpTrace};

use num_integer::Integer;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::matching::max_weight_matching;
use crate::packing::{squareimp_packing, SetCollection, SquareImpParams};
use crate::ratio::{self, Ratio};
use crate::setsystem::WeightedSetSystem;
use crate::solution::MpcSolution;

/// `w(∪ selected) − Σ q`, each index counted once.
pub fn mpc_profit(inst: &WeightedSetSystem, selection: &[usize]) -> Ratio {
    let mut sel = selection.to_vec();
    sel.sort_unstable();
    sel.dedup();
    let mut covered = vec![false; inst.universe_size()];
    let mut profit = ratio::int(0);
    for &i in &sel {
        profit -= inst.cost(i);
        for &e in inst.set(i) {
            if !std::mem::replace(&mut covered[e], true) {
                profit += inst.weight(e);
            }
        }
    }
    profit
}

pub(crate) fn solution(inst: &WeightedSetSystem, mut selected: Vec<usize>) -> MpcSolution {
    selected.sort_unstable();
    selected.dedup();
    let profit = mpc_profit(inst, &selected);
    MpcSolution { selected, profit }
}

/// Common denominator of all weights and costs.
fn scale_factor(inst: &WeightedSetSystem) -> i64 {
    inst.element_weights()
        .iter()
        .chain(inst.set_costs())
        .fold(1i64, |acc, r| acc.lcm(r.denom()))
}

/// Exact optimum when every set has at most two elements.
///
/// Each set may be used to cover any nonempty part of itself. Every element
/// first takes its best single-element option `s_u ≥ 0`; a pair `{u, v}`
/// covered by one set then gains `W_uv − s_u − s_v`, so the optimum is
/// `Σ s_u` plus a maximum-weight matching on those gains.
pub fn mpc_exact_small_a(inst: &WeightedSetSystem) -> Result<MpcSolution> {
    if inst.max_set_size() > 2 {
        return Err(Error::invalid(format!(
            "matching solver needs sets of size ≤ 2, found {}",
            inst.max_set_size()
        )));
    }
    let scale = scale_factor(inst);
    let to_int = |r: Ratio| (r * ratio::int(scale)).to_integer();
    let n = inst.universe_size();
    let mut single: Vec<(i64, Option<usize>)> = vec![(0, None); n];
    let mut pair: std::collections::BTreeMap<(usize, usize), (i64, usize)> = Default::default();
    for (i, s) in inst.sets().iter().enumerate() {
        let q = to_int(inst.cost(i));
        for &u in s {
            let v = to_int(inst.weight(u)) - q;
            if v > single[u].0 {
                single[u] = (v, Some(i));
            }
        }
        if let [u, v] = s[..] {
            let val = to_int(inst.weight(u)) + to_int(inst.weight(v)) - q;
            let e = pair.entry((u, v)).or_insert((i64::MIN, i));
            if val > e.0 {
                *e = (val, i);
            }
        }
    }
    let edges: Vec<(usize, usize, i64)> = pair
        .iter()
        .map(|(&(u, v), &(w, _))| (u, v, w - single[u].0 - single[v].0))
        .filter(|e| e.2 > 0)
        .collect();
    let mate = max_weight_matching(n, &edges);
    let mut selected = Vec::new();
    for u in 0..n {
        match mate[u] {
            Some(v) if u < v => selected.push(pair[&(u, v)].1),
            Some(_) => {}
            None => selected.extend(single[u].1),
        }
    }
    Ok(solution(inst, selected))
}

/// Subset expansion to weighted set packing, solved by SquareImp.
///
/// Every nonempty subset `P` of a set `S` becomes a packing candidate of
/// weight `w(P) − q_S`; negative candidates are dropped. The chosen subsets
/// are mapped back to their parent sets.
pub fn mpc_via_setpacking(inst: &WeightedSetSystem, a: usize, eps: Ratio, budget: &Budget) -> Result<MpcSolution> {
    let biggest = inst.max_set_size();
    if biggest > a {
        return Err(Error::invalid(format!("set of size {biggest} exceeds a = {a}")));
    }
    let total: u64 = inst.sets().iter().map(|s| 1u64 << s.len().min(62)).sum();
    if total > budget.max_nodes {
        return Err(Error::BudgetExceeded {
            what: "subset expansion".into(),
            limit: budget.max_nodes,
        });
    }
    let mut subsets = Vec::new();
    let mut weights = Vec::new();
    let mut parent = Vec::new();
    for (i, s) in inst.sets().iter().enumerate() {
        for mask in 1u64..(1u64 << s.len()) {
            let p: Vec<usize> = (0..s.len()).filter(|b| mask >> b & 1 == 1).map(|b| s[b]).collect();
            let w = inst.weight_of(&p) - inst.cost(i);
            if w >= ratio::int(0) {
                subsets.push(p);
                weights.push(w);
                parent.push(i);
            }
        }
    }
    let coll = SetCollection::weighted(inst.universe_size(), subsets, weights)?;
    let packed = squareimp_packing(&coll, &SquareImpParams::new(a.max(1), eps))?;
    // Zero-weight subsets carry no profit; leave their parents out.
    let selected = packed
        .selected
        .iter()
        .filter(|&&k| coll.weight(k) > ratio::int(0))
        .map(|&k| parent[k])
        .collect();
    Ok(solution(inst, selected))
}

/// Greedy bodies: repeatedly the set with the largest marginal profit
/// `w(S \ covered) − q_S` while that is positive, ties to the lower index.
/// Returns `(set, newly covered elements)` in selection order.
pub(crate) fn greedy_bodies(inst: &WeightedSetSystem) -> Vec<(usize, Vec<usize>)> {
    let mut covered = vec![false; inst.universe_size()];
    let mut chosen = vec![false; inst.set_count()];
    let mut out = Vec::new();
    loop {
        let mut best: Option<(Ratio, usize)> = None;
        for i in 0..inst.set_count() {
            if chosen[i] {
                continue;
            }
            let gain: Ratio = inst.set(i).iter().filter(|&&e| !covered[e]).map(|&e| inst.weight(e)).sum::<Ratio>() - inst.cost(i);
            if best.is_none_or(|(b, _)| gain > b) {
                best = Some((gain, i));
            }
        }
        match best {
            Some((gain, i)) if gain > ratio::int(0) => {
                chosen[i] = true;
                let body: Vec<usize> = inst.set(i).iter().copied().filter(|&e| !covered[e]).collect();
                for &e in &body {
                    covered[e] = true;
                }
                out.push((i, body));
            }
            _ => return out,
        }
    }
}

/// Marginal-profit greedy; each chosen set keeps only the elements it newly
/// covers, so the kept parts are disjoint.
pub fn mpc_greedy(inst: &WeightedSetSystem) -> MpcSolution {
    solution(inst, greedy_bodies(inst).into_iter().map(|(i, _)| i).collect())
}

/// Exact optimum by include/exclude search over the sets. The bound adds the
/// weight of every uncovered element that a later set could still cover.
pub fn mpc_exact(inst: &WeightedSetSystem, budget: &Budget) -> Result<MpcSolution> {
    let n = inst.universe_size();
    let mut last_set = vec![None; n];
    for (i, s) in inst.sets().iter().enumerate() {
        for &e in s {
            last_set[e] = Some(i);
        }
    }
    let greedy = mpc_greedy(inst);
    let mut search = ExactMpc {
        inst,
        last_set,
        count: vec![0; n],
        chosen: Vec::new(),
        best: greedy.profit,
        best_sel: greedy.selected,
        meter: budget.meter("exact profit coverage"),
    };
    search.run(0, ratio::int(0))?;
    Ok(solution(inst, search.best_sel))
}

struct ExactMpc<'a> {
    inst: &'a WeightedSetSystem,
    last_set: Vec<Option<usize>>,
    count: Vec<u32>,
    chosen: Vec<usize>,
    best: Ratio,
    best_sel: Vec<usize>,
    meter: crate::budget::Meter,
}

impl ExactMpc<'_> {
    fn run(&mut self, i: usize, profit: Ratio) -> Result<()> {
        self.meter.tick()?;
        if profit > self.best {
            self.best = profit;
            self.best_sel = self.chosen.clone();
        }
        if i == self.inst.set_count() {
            return Ok(());
        }
        let reachable: Ratio = (0..self.count.len())
            .filter(|&e| self.count[e] == 0 && self.last_set[e].is_some_and(|l| l >= i))
            .map(|e| self.inst.weight(e))
            .sum();
        if profit + reachable <= self.best {
            return Ok(());
        }
        let gain: Ratio = self.inst.set(i).iter().filter(|&&e| self.count[e] == 0).map(|&e| self.inst.weight(e)).sum::<Ratio>()
            - self.inst.cost(i);
        // A set whose marginal gain is not positive can be dropped from any
        // selection without loss, so only positive-gain inclusions are tried.
        if gain > ratio::int(0) {
            for &e in self.inst.set(i) {
                self.count[e] += 1;
            }
            self.chosen.push(i);
            self.run(i + 1, profit + gain)?;
            self.chosen.pop();
            for &e in self.inst.set(i) {
                self.count[e] -= 1;
            }
        }
        self.run(i + 1, profit)
    }
}
