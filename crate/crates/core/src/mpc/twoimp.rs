//! Two-set insertion local search with per-set claimed parts ("bodies").
//!
//! Every selected set `A` keeps a body `S(A) ⊆ N(A)`; bodies are disjoint and
//! `p(A) = w(S(A)) − q_A`. Profits are quantized to `⌊p/step⌋` and the
//! search maximizes `Φ = Σ p^α`. A move inserts one or two unselected sets
//! and decides, for each selected set whose body meets them, whether that set
//! keeps its whole overlap (the new set is trimmed) or is removed (the new
//! set takes the overlap). Elements in both inserted sets go wholly to one of
//! them. Overlaps are never split.
//!
//! The keep/remove decision needs the final profits of the inserted sets,
//! which in turn depend on the decisions. For an assumed profit `P` of an
//! inserted set and an overlap worth `w`, removing `A` is preferred exactly
//! when `P^α − (P − w)^α > p(A)^α`. The left side grows with `P`, so each
//! decision is a threshold in `P`, and every assumed grid value falls into
//! one interval between consecutive thresholds. Each interval fixes the
//! decisions; the assumption is kept only if the resulting profit lands
//! back in that interval. With two inserted sets the first profit is
//! enumerated over its grid and the second is handled by intervals.

use serde::{Deserialize, Serialize};

use super::{greedy_bodies, solution};
use crate::error::{Error, Result};
use crate::ratio::{self, Ratio};
use crate::setsystem::WeightedSetSystem;
use crate::solution::MpcSolution;

const FREE: usize = usize::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TwoImpParams {
    /// Potential exponent, at least 2.
    pub alpha: u32,
    /// Minimum potential gain of an accepted move, at least 1.
    pub delta: u64,
    /// Quantization slack: the default step is `ε·W_max/m`, where `W_max`
    /// is the largest single-set profit `w(N) − q`.
    pub eps: Ratio,
    /// Explicit quantization step overriding the `eps` rule.
    pub step: Option<Ratio>,
}

impl Default for TwoImpParams {
    fn default() -> Self {
        TwoImpParams {
            alpha: 2,
            delta: 1,
            eps: Ratio::new(1, 10),
            step: None,
        }
    }
}

/// One accepted move.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwoImpMove {
    /// Inserted set and the body it received.
    pub inserted: Vec<(usize, Vec<usize>)>,
    /// Selected sets whose body met an inserted set: body before the move
    /// and whether the set was removed.
    pub overlapping: Vec<(usize, Vec<usize>, bool)>,
    pub potential_before: i128,
    pub potential_after: i128,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwoImpTrace {
    #[serde(with = "crate::ratio::serde_ratio")]
    pub step: Ratio,
    pub moves: Vec<TwoImpMove>,
    /// Final selected sets with their bodies.
    pub bodies: Vec<(usize, Vec<usize>)>,
}

pub fn mpc_2imp(inst: &WeightedSetSystem, params: &TwoImpParams) -> Result<MpcSolution> {
    Ok(mpc_2imp_traced(inst, params)?.0)
}

pub fn mpc_2imp_traced(inst: &WeightedSetSystem, params: &TwoImpParams) -> Result<(MpcSolution, TwoImpTrace)> {
    if params.alpha < 2 {
        return Err(Error::invalid("alpha must be an integer ≥ 2"));
    }
    if params.delta == 0 {
        return Err(Error::invalid("delta must be positive"));
    }
    let name_profit: Vec<Ratio> = (0..inst.set_count())
        .map(|i| inst.weight_of(inst.set(i)) - inst.cost(i))
        .collect();
    let w_max = name_profit.iter().copied().max().unwrap_or_else(|| ratio::int(0));
    if w_max <= ratio::int(0) {
        // No set pays for itself, so no selection has positive profit.
        let trace = TwoImpTrace {
            step: ratio::int(1),
            moves: Vec::new(),
            bodies: Vec::new(),
        };
        return Ok((solution(inst, Vec::new()), trace));
    }
    let step = match params.step {
        Some(s) if s > ratio::int(0) => s,
        Some(_) => return Err(Error::invalid("quantization step must be positive")),
        None => {
            if params.eps <= ratio::int(0) {
                return Err(Error::invalid("eps must be positive"));
            }
            params.eps * w_max / ratio::int(inst.set_count() as i64)
        }
    };

    let mut engine = Engine::new(inst, step, params.alpha, params.delta as i128);
    let mut order: Vec<usize> = (0..inst.set_count()).collect();
    order.sort_by(|&a, &b| name_profit[b].cmp(&name_profit[a]).then(a.cmp(&b)));
    let mut moves = Vec::new();
    while let Some(plan) = engine.search(&order) {
        moves.push(engine.apply(plan));
    }
    let bodies: Vec<(usize, Vec<usize>)> = (0..inst.set_count())
        .filter_map(|i| engine.bodies[i].clone().map(|b| (i, b)))
        .collect();
    let sol = solution(inst, bodies.iter().map(|b| b.0).collect());
    Ok((sol, TwoImpTrace { step, moves, bodies }))
}

struct Plan {
    inserted: Vec<(usize, Vec<usize>)>,
    removed: Vec<usize>,
    overlapping: Vec<usize>,
    gain: i128,
}

struct Engine<'a> {
    inst: &'a WeightedSetSystem,
    step: Ratio,
    alpha: u32,
    delta: i128,
    owner: Vec<usize>,
    bodies: Vec<Option<Vec<usize>>>,
    quantized: Vec<i64>,
}

/// Per overlapping set: its quantized profit and the quantized weight of
/// its body that would pass to each inserted set if it were removed.
struct Overlap {
    set: usize,
    power: i128,
    to_first: i64,
    to_second: i64,
}

impl<'a> Engine<'a> {
    fn new(inst: &'a WeightedSetSystem, step: Ratio, alpha: u32, delta: i128) -> Self {
        let mut e = Engine {
            inst,
            step,
            alpha,
            delta,
            owner: vec![FREE; inst.universe_size()],
            bodies: vec![None; inst.set_count()],
            quantized: vec![0; inst.set_count()],
        };
        for (i, body) in greedy_bodies(inst) {
            for &x in &body {
                e.owner[x] = i;
            }
            e.quantized[i] = e.profit_units(i, &body);
            e.bodies[i] = Some(body);
        }
        e
    }

    fn units(&self, r: Ratio) -> i64 {
        if r <= ratio::int(0) {
            0
        } else {
            ratio::floor_to_i64(&(r / self.step))
        }
    }

    fn profit_units(&self, set: usize, body: &[usize]) -> i64 {
        self.units(self.inst.weight_of(body) - self.inst.cost(set))
    }

    fn pow(&self, x: i64) -> i128 {
        (x.max(0) as i128).pow(self.alpha)
    }

    /// Loss of an inserted set with assumed profit `p` if it gives up `w`.
    fn loss(&self, p: i64, w: i64) -> i128 {
        self.pow(p) - self.pow(p - w)
    }

    fn potential(&self) -> i128 {
        (0..self.bodies.len())
            .filter(|&i| self.bodies[i].is_some())
            .map(|i| self.pow(self.quantized[i]))
            .sum()
    }

    fn search(&self, order: &[usize]) -> Option<Plan> {
        let free: Vec<usize> = order.iter().copied().filter(|&i| self.bodies[i].is_none()).collect();
        for &b in &free {
            if let Some(plan) = self.evaluate(&[b]) {
                return Some(plan);
            }
        }
        for (x, &b) in free.iter().enumerate() {
            for &c in &free[x + 1..] {
                if let Some(plan) = self.evaluate(&[b, c]) {
                    return Some(plan);
                }
            }
        }
        None
    }

    /// Which inserted set (0 or 1) would receive element `e`.
    fn target(&self, ins: &[usize], first_takes_shared: bool, e: usize) -> Option<usize> {
        let in_first = self.inst.set(ins[0]).binary_search(&e).is_ok();
        let in_second = ins.len() == 2 && self.inst.set(ins[1]).binary_search(&e).is_ok();
        match (in_first, in_second) {
            (true, true) => Some(if first_takes_shared { 0 } else { 1 }),
            (true, false) => Some(0),
            (false, true) => Some(1),
            (false, false) => None,
        }
    }

    /// Bodies of the inserted sets when the sets flagged in `removed` give
    /// up their overlap and the others keep it.
    fn outcome(&self, ins: &[usize], shared_first: bool, removed: &[usize]) -> [Vec<usize>; 2] {
        let mut out = [Vec::new(), Vec::new()];
        for (slot, &s) in ins.iter().enumerate() {
            for &e in self.inst.set(s) {
                let o = self.owner[e];
                if (o == FREE || removed.contains(&o)) && self.target(ins, shared_first, e) == Some(slot) {
                    out[slot].push(e);
                }
            }
        }
        out
    }

    fn evaluate(&self, ins: &[usize]) -> Option<Plan> {
        let mut touched: Vec<usize> = ins
            .iter()
            .flat_map(|&s| self.inst.set(s).iter().map(|&e| self.owner[e]))
            .filter(|&o| o != FREE)
            .collect();
        touched.sort_unstable();
        touched.dedup();

        let mut best: Option<Plan> = None;
        let flags: &[bool] = if ins.len() == 2 { &[true, false] } else { &[true] };
        for &shared_first in flags {
            let overlaps: Vec<Overlap> = touched
                .iter()
                .map(|&a| {
                    let body = self.bodies[a].as_ref().unwrap();
                    let mut parts = [Vec::new(), Vec::new()];
                    for &e in body {
                        if let Some(slot) = self.target(ins, shared_first, e) {
                            parts[slot].push(e);
                        }
                    }
                    Overlap {
                        set: a,
                        power: self.pow(self.quantized[a]),
                        to_first: self.units(self.inst.weight_of(&parts[0])),
                        to_second: self.units(self.inst.weight_of(&parts[1])),
                    }
                })
                .collect();
            let everything: Vec<usize> = touched.clone();
            let full = self.outcome(ins, shared_first, &everything);
            let top: Vec<i64> = ins.iter().enumerate().map(|(k, &s)| self.profit_units(s, &full[k])).collect();
            if top.iter().any(|&t| t < 1) {
                continue;
            }
            let candidate = if ins.len() == 1 {
                self.single(ins, &overlaps, top[0])
            } else {
                self.pair(ins, shared_first, &overlaps, top[0], top[1])
            };
            if let Some(p) = candidate {
                if best.as_ref().is_none_or(|b| p.gain > b.gain) {
                    best = Some(p);
                }
            }
        }
        best.filter(|p| p.gain >= self.delta).map(|mut p| {
            p.overlapping = touched;
            p
        })
    }

    /// Smallest `p` in `0..=hi` with `f(p)` true, `hi + 1` if none;
    /// `f` must be monotone.
    fn threshold(hi: i64, f: impl Fn(i64) -> bool) -> i64 {
        let (mut lo, mut hi) = (0, hi + 1);
        while lo < hi {
            let mid = lo + (hi - lo) / 2;
            if f(mid) {
                hi = mid;
            } else {
                lo = mid + 1;
            }
        }
        lo
    }

    /// Consecutive `[lo, hi]` ranges of `1..=top` on which no threshold changes.
    fn intervals(thresholds: &[i64], top: i64) -> Vec<(i64, i64)> {
        let mut cuts: Vec<i64> = thresholds.iter().copied().filter(|&t| t > 1 && t <= top).collect();
        cuts.sort_unstable();
        cuts.dedup();
        let mut out = Vec::with_capacity(cuts.len() + 1);
        let mut start = 1;
        for c in cuts {
            out.push((start, c - 1));
            start = c;
        }
        out.push((start, top));
        out
    }

    fn single(&self, ins: &[usize], overlaps: &[Overlap], top: i64) -> Option<Plan> {
        let thresholds: Vec<i64> = overlaps
            .iter()
            .map(|o| Self::threshold(top, |p| self.loss(p, o.to_first) > o.power))
            .collect();
        let mut best: Option<Plan> = None;
        for (lo, hi) in Self::intervals(&thresholds, top) {
            let removed: Vec<usize> = overlaps.iter().zip(&thresholds).filter(|(_, &t)| t <= lo).map(|(o, _)| o.set).collect();
            let [body, _] = self.outcome(ins, true, &removed);
            let p = self.profit_units(ins[0], &body);
            if p < lo || p > hi {
                continue;
            }
            let lost: i128 = overlaps.iter().filter(|o| removed.contains(&o.set)).map(|o| o.power).sum();
            let gain = self.pow(p) - lost;
            if best.as_ref().is_none_or(|b| gain > b.gain) {
                best = Some(Plan {
                    inserted: vec![(ins[0], body)],
                    removed,
                    overlapping: Vec::new(),
                    gain,
                });
            }
        }
        best
    }

    fn pair(&self, ins: &[usize], shared_first: bool, overlaps: &[Overlap], top_b: i64, top_c: i64) -> Option<Plan> {
        let mut best: Option<Plan> = None;
        for pb in 1..=top_b {
            let thresholds: Vec<i64> = overlaps
                .iter()
                .map(|o| {
                    let base = self.loss(pb, o.to_first);
                    Self::threshold(top_c, |pc| base + self.loss(pc, o.to_second) > o.power)
                })
                .collect();
            for (lo, hi) in Self::intervals(&thresholds, top_c) {
                let removed: Vec<usize> =
                    overlaps.iter().zip(&thresholds).filter(|(_, &t)| t <= lo).map(|(o, _)| o.set).collect();
                let [body_b, body_c] = self.outcome(ins, shared_first, &removed);
                if self.profit_units(ins[0], &body_b) != pb {
                    continue;
                }
                let pc = self.profit_units(ins[1], &body_c);
                if pc < lo || pc > hi {
                    continue;
                }
                let lost: i128 = overlaps.iter().filter(|o| removed.contains(&o.set)).map(|o| o.power).sum();
                let gain = self.pow(pb) + self.pow(pc) - lost;
                if best.as_ref().is_none_or(|b| gain > b.gain) {
                    best = Some(Plan {
                        inserted: vec![(ins[0], body_b), (ins[1], body_c)],
                        removed,
                        overlapping: Vec::new(),
                        gain,
                    });
                }
            }
        }
        best
    }

    fn apply(&mut self, plan: Plan) -> TwoImpMove {
        let before = self.potential();
        let overlapping = plan
            .overlapping
            .iter()
            .map(|&a| (a, self.bodies[a].clone().unwrap(), plan.removed.contains(&a)))
            .collect();
        for &a in &plan.removed {
            for e in self.bodies[a].take().unwrap() {
                self.owner[e] = FREE;
            }
            self.quantized[a] = 0;
        }
        for (s, body) in &plan.inserted {
            for &e in body {
                debug_assert_eq!(self.owner[e], FREE);
                self.owner[e] = *s;
            }
            self.quantized[*s] = self.profit_units(*s, body);
            self.bodies[*s] = Some(body.clone());
        }
        let after = self.potential();
        debug_assert_eq!(after - before, plan.gain);
        TwoImpMove {
            inserted: plan.inserted,
            overlapping,
            potential_before: before,
            potential_after: after,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mpc::{mpc_greedy, mpc_profit};
    use crate::ratio::int;

    /// A cheap-looking set over three shared elements blocks three sets that
    /// each also own two private elements.
    pub(crate) fn greedy_trap() -> WeightedSetSystem {
        let mut weights = vec![int(2); 3];
        weights.extend(vec![int(1); 6]);
        let sets = vec![vec![0, 1, 2], vec![0, 3, 4], vec![1, 5, 6], vec![2, 7, 8]];
        WeightedSetSystem::new(weights, sets, vec![int(4), int(2), int(2), int(2)]).unwrap()
    }

    #[test]
    fn improves_on_greedy() {
        let inst = greedy_trap();
        let g = mpc_greedy(&inst);
        let (sol, trace) = mpc_2imp_traced(&inst, &TwoImpParams::default()).unwrap();
        assert_eq!(g.profit, int(2));
        assert_eq!(sol.profit, int(6));
        assert!(!trace.moves.is_empty());
        assert_eq!(mpc_profit(&inst, &sol.selected), sol.profit);
    }

    #[test]
    fn disjoint_sets_all_profitable_ones_chosen() {
        let inst = WeightedSetSystem::unit(6, vec![vec![0, 1], vec![2, 3], vec![4, 5]], vec![int(1), int(3), int(0)]).unwrap();
        let sol = mpc_2imp(&inst, &TwoImpParams::default()).unwrap();
        assert_eq!(sol.selected, vec![0, 2]);
        assert_eq!(sol.profit, int(3));
    }

    #[test]
    fn intervals_cover_range() {
        assert_eq!(Engine::intervals(&[3, 3, 9, 1], 5), vec![(1, 2), (3, 5)]);
        assert_eq!(Engine::intervals(&[], 4), vec![(1, 4)]);
    }

    #[test]
    fn bad_params() {
        let inst = greedy_trap();
        let p = TwoImpParams { alpha: 1, ..TwoImpParams::default() };
        assert!(mpc_2imp(&inst, &p).is_err());
        let p = TwoImpParams { delta: 0, ..TwoImpParams::default() };
        assert!(mpc_2imp(&inst, &p).is_err());
    }
}
