use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ratio::{self, serde_ratio, Ratio};

/// Universe `0..n` with element weights and a list of sets with costs.
/// Sets are stored sorted and duplicate-free.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "SystemRepr", into = "SystemRepr")]
pub struct WeightedSetSystem {
    element_weights: Vec<Ratio>,
    sets: Vec<Vec<usize>>,
    set_costs: Vec<Ratio>,
}

impl WeightedSetSystem {
    pub fn new(element_weights: Vec<Ratio>, sets: Vec<Vec<usize>>, set_costs: Vec<Ratio>) -> Result<Self> {
        let n = element_weights.len();
        if sets.len() != set_costs.len() {
            return Err(Error::invalid("one cost per set required"));
        }
        if let Some(i) = element_weights.iter().position(|w| !ratio::is_nonnegative(w)) {
            return Err(Error::invalid(format!("element {i} has negative weight")));
        }
        if let Some(i) = set_costs.iter().position(|c| !ratio::is_nonnegative(c)) {
            return Err(Error::invalid(format!("set {i} has negative cost")));
        }
        let mut clean = Vec::with_capacity(sets.len());
        for (i, mut s) in sets.into_iter().enumerate() {
            if let Some(&e) = s.iter().find(|&&e| e >= n) {
                return Err(Error::invalid(format!("set {i} references element {e} outside universe of {n}")));
            }
            s.sort_unstable();
            s.dedup();
            clean.push(s);
        }
        Ok(WeightedSetSystem {
            element_weights,
            sets: clean,
            set_costs,
        })
    }

    /// All element weights 1.
    pub fn unit(universe_size: usize, sets: Vec<Vec<usize>>, set_costs: Vec<Ratio>) -> Result<Self> {
        Self::new(vec![ratio::int(1); universe_size], sets, set_costs)
    }

    pub fn universe_size(&self) -> usize {
        self.element_weights.len()
    }

    pub fn set_count(&self) -> usize {
        self.sets.len()
    }

    pub fn element_weights(&self) -> &[Ratio] {
        &self.element_weights
    }

    pub fn sets(&self) -> &[Vec<usize>] {
        &self.sets
    }

    pub fn set(&self, i: usize) -> &[usize] {
        &self.sets[i]
    }

    pub fn set_costs(&self) -> &[Ratio] {
        &self.set_costs
    }

    pub fn cost(&self, i: usize) -> Ratio {
        self.set_costs[i]
    }

    pub fn weight(&self, e: usize) -> Ratio {
        self.element_weights[e]
    }

    pub fn weight_of(&self, elements: &[usize]) -> Ratio {
        elements.iter().map(|&e| self.element_weights[e]).sum()
    }

    /// Largest set size.
    pub fn max_set_size(&self) -> usize {
        self.sets.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Largest number of sets any element belongs to.
    pub fn max_frequency(&self) -> usize {
        let mut freq = vec![0usize; self.universe_size()];
        for s in &self.sets {
            for &e in s {
                freq[e] += 1;
            }
        }
        freq.into_iter().max().unwrap_or(0)
    }

    /// For each element, the indices of the sets containing it.
    pub fn incidence(&self) -> Vec<Vec<usize>> {
        let mut inc = vec![Vec::new(); self.universe_size()];
        for (i, s) in self.sets.iter().enumerate() {
            for &e in s {
                inc[e].push(i);
            }
        }
        inc
    }
}

#[derive(Serialize, Deserialize)]
struct SystemRepr {
    #[serde(with = "serde_ratio::vec")]
    element_weights: Vec<Ratio>,
    sets: Vec<Vec<usize>>,
    #[serde(with = "serde_ratio::vec")]
    set_costs: Vec<Ratio>,
}

impl TryFrom<SystemRepr> for WeightedSetSystem {
    type Error = Error;
    fn try_from(r: SystemRepr) -> Result<Self> {
        WeightedSetSystem::new(r.element_weights, r.sets, r.set_costs)
    }
}

impl From<WeightedSetSystem> for SystemRepr {
    fn from(s: WeightedSetSystem) -> Self {
        SystemRepr {
            element_weights: s.element_weights,
            sets: s.sets,
            set_costs: s.set_costs,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio::int;

    #[test]
    fn derived_parameters() {
        let s = WeightedSetSystem::unit(3, vec![vec![0, 1], vec![1, 2]], vec![int(0), int(0)]).unwrap();
        assert_eq!(s.max_set_size(), 2);
        assert_eq!(s.max_frequency(), 2);
    }

    #[test]
    fn rejects_out_of_range() {
        assert!(WeightedSetSystem::unit(3, vec![vec![8]], vec![int(0)]).is_err());
        assert!(WeightedSetSystem::unit(3, vec![vec![0]], vec![int(-1)]).is_err());
    }
}
