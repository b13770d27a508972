//! Packing over explicit set collections and the triangle-packing front end.

mod exact;
pub(crate) mod local;
mod squareimp;

pub use exact::exact_packing;
pub use local::local_search_packing;
pub use squareimp::{squareimp_packing, SquareImpParams};

use serde::{Deserialize, Serialize};

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::ratio::{self, Ratio};
use crate::solution::{PackingSolution, TrianglePacking};

/// Sets over `0..universe_size`, optionally weighted (weight 1 otherwise).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SetCollection {
    universe_size: usize,
    sets: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none", with = "crate::ratio::serde_ratio::option_vec")]
    weights: Option<Vec<Ratio>>,
}

impl SetCollection {
    pub fn new(universe_size: usize, sets: Vec<Vec<usize>>) -> Result<Self> {
        Self::build(universe_size, sets, None)
    }

    pub fn weighted(universe_size: usize, sets: Vec<Vec<usize>>, weights: Vec<Ratio>) -> Result<Self> {
        if weights.len() != sets.len() {
            return Err(Error::invalid("one weight per set required"));
        }
        if weights.iter().any(|w| !ratio::is_nonnegative(w)) {
            return Err(Error::invalid("set weights must be nonnegative"));
        }
        Self::build(universe_size, sets, Some(weights))
    }

    fn build(universe_size: usize, sets: Vec<Vec<usize>>, weights: Option<Vec<Ratio>>) -> Result<Self> {
        let mut clean = Vec::with_capacity(sets.len());
        for (i, mut s) in sets.into_iter().enumerate() {
            if s.iter().any(|&e| e >= universe_size) {
                return Err(Error::invalid(format!("set {i} leaves the universe 0..{universe_size}")));
            }
            s.sort_unstable();
            s.dedup();
            clean.push(s);
        }
        Ok(SetCollection {
            universe_size,
            sets: clean,
            weights,
        })
    }

    pub fn universe_size(&self) -> usize {
        self.universe_size
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn sets(&self) -> &[Vec<usize>] {
        &self.sets
    }

    pub fn set(&self, i: usize) -> &[usize] {
        &self.sets[i]
    }

    pub fn is_weighted(&self) -> bool {
        self.weights.is_some()
    }

    pub fn weight(&self, i: usize) -> Ratio {
        self.weights.as_ref().map_or_else(|| ratio::int(1), |w| w[i])
    }

    pub fn total_weight(&self, selection: &[usize]) -> Ratio {
        selection.iter().map(|&i| self.weight(i)).sum()
    }

    pub fn max_set_size(&self) -> usize {
        self.sets.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Sets containing each element.
    pub fn incidence(&self) -> Vec<Vec<usize>> {
        let mut inc = vec![Vec::new(); self.universe_size];
        for (i, s) in self.sets.iter().enumerate() {
            for &e in s {
                inc[e].push(i);
            }
        }
        inc
    }

    /// True when the selection is pairwise disjoint.
    pub fn is_packing(&self, selection: &[usize]) -> bool {
        let mut used = vec![false; self.universe_size];
        for &i in selection {
            for &e in &self.sets[i] {
                if std::mem::replace(&mut used[e], true) {
                    return false;
                }
            }
        }
        true
    }

    /// True when no unselected set is disjoint from the selection.
    pub fn is_maximal(&self, selection: &[usize]) -> bool {
        let mut used = vec![false; self.universe_size];
        let mut chosen = vec![false; self.sets.len()];
        for &i in selection {
            chosen[i] = true;
            for &e in &self.sets[i] {
                used[e] = true;
            }
        }
        self.sets
            .iter()
            .enumerate()
            .all(|(i, s)| chosen[i] || s.iter().any(|&e| used[e]))
    }

    pub(crate) fn solution(&self, mut selected: Vec<usize>) -> PackingSolution {
        selected.sort_unstable();
        let objective = self.total_weight(&selected);
        PackingSolution { selected, objective }
    }
}

/// One 3-element set per triangle, in lexicographic order of node triples.
pub fn enumerate_triangles(g: &Graph) -> SetCollection {
    let mut sets = Vec::new();
    for u in 0..g.node_count() {
        let nu = g.neighbors(u);
        for (i, &v) in nu.iter().enumerate() {
            if v <= u {
                continue;
            }
            for &w in &nu[i + 1..] {
                if g.has_edge(v, w) {
                    sets.push(vec![u, v, w]);
                }
            }
        }
    }
    SetCollection {
        universe_size: g.node_count(),
        sets,
        weights: None,
    }
}

/// Maximal packing. Unweighted collections are scanned in index order,
/// weighted ones by decreasing weight (ties by index).
pub fn greedy_packing(c: &SetCollection) -> PackingSolution {
    let mut order: Vec<usize> = (0..c.len()).collect();
    if c.is_weighted() {
        order.sort_by(|&a, &b| c.weight(b).cmp(&c.weight(a)).then(a.cmp(&b)));
    }
    let mut used = vec![false; c.universe_size()];
    let mut selected = Vec::new();
    for i in order {
        if c.set(i).iter().all(|&e| !used[e]) {
            for &e in c.set(i) {
                used[e] = true;
            }
            selected.push(i);
        }
    }
    c.solution(selected)
}

/// Engine choice for [`pack_triangles`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TpAlgorithm {
    Greedy,
    /// Local search with improvements of size `s`.
    Local(usize),
    Exact,
}

pub fn pack_triangles(g: &Graph, algo: TpAlgorithm, budget: &Budget) -> Result<TrianglePacking> {
    let c = enumerate_triangles(g);
    let sol = match algo {
        TpAlgorithm::Greedy => greedy_packing(&c),
        TpAlgorithm::Local(s) => local_search_packing(&c, s)?,
        TpAlgorithm::Exact => exact_packing(&c, budget)?,
    };
    Ok(TrianglePacking::new(
        sol.selected.iter().map(|&i| [c.set(i)[0], c.set(i)[1], c.set(i)[2]]).collect(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn complete(n: usize) -> Graph {
        Graph::new(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).unwrap()
    }

    pub(crate) fn petersen() -> Graph {
        let mut e = Vec::new();
        for i in 0..5 {
            e.push((i, (i + 1) % 5));
            e.push((i, i + 5));
            e.push((5 + i, 5 + (i + 2) % 5));
        }
        Graph::new(10, e).unwrap()
    }

    #[test]
    fn triangle_counts() {
        assert_eq!(enumerate_triangles(&complete(4)).len(), 4);
        assert_eq!(enumerate_triangles(&complete(6)).len(), 20);
        assert_eq!(enumerate_triangles(&petersen()).len(), 0);
    }

    #[test]
    fn greedy_basics() {
        let empty = SetCollection::new(3, vec![]).unwrap();
        assert!(greedy_packing(&empty).selected.is_empty());
        let k6 = enumerate_triangles(&complete(6));
        let sol = greedy_packing(&k6);
        assert_eq!(sol.objective, ratio::int(2));
        assert!(k6.is_maximal(&sol.selected));
        let w = SetCollection::weighted(4, vec![vec![0, 1], vec![2, 3]], vec![ratio::int(5), ratio::int(1)]).unwrap();
        assert_eq!(greedy_packing(&w).objective, ratio::int(6));
    }

    #[test]
    fn front_end() {
        let b = Budget::default();
        assert_eq!(pack_triangles(&complete(4), TpAlgorithm::Exact, &b).unwrap().len(), 1);
        assert_eq!(pack_triangles(&complete(6), TpAlgorithm::Local(2), &b).unwrap().len(), 2);
        assert_eq!(pack_triangles(&petersen(), TpAlgorithm::Greedy, &b).unwrap().len(), 0);
    }
}
