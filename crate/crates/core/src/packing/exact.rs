use super::{greedy_packing, SetCollection};
use crate::budget::{Budget, Meter};
use crate::error::Result;
use crate::ratio::{self, Ratio};
use crate::solution::PackingSolution;

const FREE: u8 = 0;
const COVERED: u8 = 1;
const BLOCKED: u8 = 2;

/// Maximum-weight packing by branch and bound.
///
/// Elements are decided in increasing order: the lowest undecided element
/// is either covered by one of the still-placeable sets containing it, or
/// marked as left uncovered. The bound charges every undecided element the
/// best weight-per-element ratio among placeable sets containing it. Empty
/// sets are always taken. Exceeding the node budget is an error.
pub fn exact_packing(c: &SetCollection, budget: &Budget) -> Result<PackingSolution> {
    let greedy = greedy_packing(c);
    let mut search = Search {
        c,
        inc: c.incidence(),
        status: vec![FREE; c.universe_size()],
        chosen: Vec::new(),
        best: greedy.objective,
        best_sel: greedy.selected.clone(),
        meter: budget.meter("exact packing"),
        all_integral: (0..c.len()).all(|i| c.weight(i).is_integer()),
    };
    let base: Ratio = (0..c.len()).filter(|&i| c.set(i).is_empty()).map(|i| c.weight(i)).sum();
    search.chosen.extend((0..c.len()).filter(|&i| c.set(i).is_empty()));
    search.run(0, base)?;
    Ok(c.solution(search.best_sel))
}

struct Search<'a> {
    c: &'a SetCollection,
    inc: Vec<Vec<usize>>,
    status: Vec<u8>,
    chosen: Vec<usize>,
    best: Ratio,
    best_sel: Vec<usize>,
    meter: Meter,
    all_integral: bool,
}

impl Search<'_> {
    fn placeable(&self, i: usize) -> bool {
        self.c.set(i).iter().all(|&e| self.status[e] == FREE)
    }

    fn bound(&self, from: usize, current: Ratio) -> Ratio {
        let mut b = current;
        for e in from..self.status.len() {
            if self.status[e] != FREE {
                continue;
            }
            let best = self.inc[e]
                .iter()
                .filter(|&&i| self.placeable(i))
                .map(|&i| self.c.weight(i) / ratio::int(self.c.set(i).len() as i64))
                .max();
            if let Some(r) = best {
                b += r;
            }
        }
        if self.all_integral {
            b.floor()
        } else {
            b
        }
    }

    fn run(&mut self, from: usize, current: Ratio) -> Result<()> {
        self.meter.tick()?;
        let next = (from..self.status.len())
            .find(|&e| self.status[e] == FREE && self.inc[e].iter().any(|&i| self.placeable(i)));
        let Some(e) = next else {
            if current > self.best {
                self.best = current;
                self.best_sel = self.chosen.clone();
            }
            return Ok(());
        };
        if self.bound(e, current) <= self.best {
            return Ok(());
        }
        let mut options: Vec<usize> = self.inc[e].iter().copied().filter(|&i| self.placeable(i)).collect();
        options.sort_by(|&a, &b| self.c.weight(b).cmp(&self.c.weight(a)).then(a.cmp(&b)));
        for i in options {
            for &x in self.c.set(i) {
                self.status[x] = COVERED;
            }
            self.chosen.push(i);
            self.run(e + 1, current + self.c.weight(i))?;
            self.chosen.pop();
            for &x in self.c.set(i) {
                self.status[x] = FREE;
            }
        }
        self.status[e] = BLOCKED;
        self.run(e + 1, current)?;
        self.status[e] = FREE;
        Ok(())
    }
}
