use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ratio::{self, Ratio};

/// Simple undirected graph. Edges are stored as `(u, v)` with `u < v`,
/// sorted and duplicate-free; adjacency lists are sorted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "GraphRepr", into = "GraphRepr")]
pub struct Graph {
    node_count: usize,
    edges: Vec<(usize, usize)>,
    weights: Option<Vec<Ratio>>,
    adjacency: Vec<Vec<usize>>,
}

impl Graph {
    /// Builds a graph, collapsing duplicate edges. Self-loops and
    /// out-of-range endpoints are rejected.
    pub fn new(node_count: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        Ok(Self::with_report(node_count, edges)?.0)
    }

    /// Like [`Graph::new`] but also returns how many duplicate edges were dropped.
    pub fn with_report(
        node_count: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<(Self, usize)> {
        let mut list = Vec::new();
        for (u, v) in edges {
            check_edge(node_count, u, v)?;
            list.push((u.min(v), u.max(v)));
        }
        let before = list.len();
        list.sort_unstable();
        list.dedup();
        let dropped = before - list.len();
        Ok((Self::from_sorted(node_count, list, None), dropped))
    }

    /// Weighted graph. Duplicate edges have their weights summed.
    pub fn weighted(
        node_count: usize,
        edges: impl IntoIterator<Item = (usize, usize, Ratio)>,
    ) -> Result<Self> {
        let mut list: Vec<((usize, usize), Ratio)> = Vec::new();
        for (u, v, w) in edges {
            check_edge(node_count, u, v)?;
            if !ratio::is_nonnegative(&w) {
                return Err(Error::invalid(format!("negative weight on edge ({u},{v})")));
            }
            list.push(((u.min(v), u.max(v)), w));
        }
        list.sort_by_key(|a| a.0);
        let mut merged: Vec<((usize, usize), Ratio)> = Vec::new();
        for (e, w) in list {
            match merged.last_mut() {
                Some((last, acc)) if *last == e => *acc += w,
                _ => merged.push((e, w)),
            }
        }
        let (edges, weights): (Vec<_>, Vec<_>) = merged.into_iter().unzip();
        Ok(Self::from_sorted(node_count, edges, Some(weights)))
    }

    fn from_sorted(node_count: usize, edges: Vec<(usize, usize)>, weights: Option<Vec<Ratio>>) -> Self {
        let mut adjacency = vec![Vec::new(); node_count];
        for &(u, v) in &edges {
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Graph {
            node_count,
            edges,
            weights,
            adjacency,
        }
    }

    pub fn empty(node_count: usize) -> Self {
        Self::from_sorted(node_count, Vec::new(), None)
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn weights(&self) -> Option<&[Ratio]> {
        self.weights.as_deref()
    }

    pub fn neighbors(&self, u: usize) -> &[usize] {
        &self.adjacency[u]
    }

    pub fn degree(&self, u: usize) -> usize {
        self.adjacency[u].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.node_count && self.adjacency[u].binary_search(&v).is_ok()
    }

    /// Index of edge `{u, v}` in [`Graph::edges`].
    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        self.edges.binary_search(&(u.min(v), u.max(v))).ok()
    }

    /// `Some(d)` when every node has degree `d`.
    pub fn regular_degree(&self) -> Option<usize> {
        let d = self.adjacency.first().map_or(0, Vec::len);
        self.adjacency.iter().all(|a| a.len() == d).then_some(d)
    }

    /// Component id per node, numbered in order of first appearance.
    pub fn components(&self) -> Vec<usize> {
        let mut comp = vec![usize::MAX; self.node_count];
        let mut next = 0;
        for s in 0..self.node_count {
            if comp[s] != usize::MAX {
                continue;
            }
            comp[s] = next;
            let mut stack = vec![s];
            while let Some(u) = stack.pop() {
                for &v in &self.adjacency[u] {
                    if comp[v] == usize::MAX {
                        comp[v] = next;
                        stack.push(v);
                    }
                }
            }
            next += 1;
        }
        comp
    }

    pub fn is_connected(&self) -> bool {
        self.components().iter().all(|&c| c == 0)
    }
}

fn check_edge(n: usize, u: usize, v: usize) -> Result<()> {
    if u >= n || v >= n {
        return Err(Error::invalid(format!("edge ({u},{v}) outside node range 0..{n}")));
    }
    if u == v {
        return Err(Error::invalid(format!("self-loop at node {u}")));
    }
    Ok(())
}

#[derive(Serialize, Deserialize)]
struct GraphRepr {
    node_count: usize,
    edges: Vec<(usize, usize)>,
    #[serde(default, skip_serializing_if = "Option::is_none", with = "crate::ratio::serde_ratio::option_vec")]
    weights: Option<Vec<Ratio>>,
}

impl TryFrom<GraphRepr> for Graph {
    type Error = Error;

    fn try_from(r: GraphRepr) -> Result<Self> {
        match r.weights {
            None => Graph::new(r.node_count, r.edges),
            Some(w) => {
                if w.len() != r.edges.len() {
                    return Err(Error::invalid("weight count differs from edge count"));
                }
                Graph::weighted(
                    r.node_count,
                    r.edges.into_iter().zip(w).map(|((u, v), w)| (u, v, w)),
                )
            }
        }
    }
}

impl From<Graph> for GraphRepr {
    fn from(g: Graph) -> Self {
        GraphRepr {
            node_count: g.node_count,
            edges: g.edges,
            weights: g.weights,
        }
    }
}
