//! Independent set in a regular graph to maximum profit coverage.
//!
//! Elements are the edges, vertex `v` owns the set of its incident edges,
//! every element weighs 1 and every set costs `a − 1`. A selection of
//! pairwise non-adjacent vertices earns exactly one per vertex.

use std::collections::VecDeque;

use packcover_core::ratio::int;
use packcover_core::{Error, Graph, Ratio, Result, WeightedSetSystem};
use serde::{Deserialize, Serialize};

pub fn is_to_mpc(g: &Graph) -> Result<WeightedSetSystem> {
    let a = match g.regular_degree() {
        Some(a) if a >= 2 => a,
        _ => return Err(Error::InvalidInput("independent set reduction needs a regular graph of degree at least 2".into())),
    };
    let sets = (0..g.node_count())
        .map(|v| g.neighbors(v).iter().map(|&w| g.edge_index(v, w).unwrap()).collect())
        .collect();
    WeightedSetSystem::unit(g.edge_count(), sets, vec![int(a as i64 - 1); g.node_count()])
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Point {
    Vertex(usize),
    /// Midpoint of an edge, at distance `alpha` from both ends.
    Edge(usize),
}

/// The same instance read as balls in a metric: the graph is subdivided,
/// every half-edge has length `alpha`, elements are the edge midpoints and
/// set `v` is the ball of radius `alpha` around vertex `v`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MetricPresentation {
    pub graph: Graph,
    #[serde(with = "packcover_core::ratio::serde_ratio")]
    pub alpha: Ratio,
    #[serde(with = "packcover_core::ratio::serde_ratio")]
    pub radius: Ratio,
}

impl MetricPresentation {
    pub fn new(g: &Graph, alpha: Ratio) -> Result<Self> {
        if alpha <= int(0) {
            return Err(Error::InvalidInput("edge length must be positive".into()));
        }
        Ok(MetricPresentation {
            graph: g.clone(),
            alpha,
            radius: alpha,
        })
    }

    fn point_id(&self, p: Point) -> usize {
        match p {
            Point::Vertex(v) => v,
            Point::Edge(e) => self.graph.node_count() + e,
        }
    }

    /// Shortest-path distances from `from` to every point, in half-edges.
    fn hops(&self, from: Point) -> Vec<Option<usize>> {
        let n = self.graph.node_count();
        let total = n + self.graph.edge_count();
        let mut adj = vec![Vec::new(); total];
        for (e, &(u, v)) in self.graph.edges().iter().enumerate() {
            for w in [u, v] {
                adj[w].push(n + e);
                adj[n + e].push(w);
            }
        }
        let mut dist = vec![None; total];
        let s = self.point_id(from);
        dist[s] = Some(0);
        let mut queue = VecDeque::from([s]);
        while let Some(x) = queue.pop_front() {
            for &y in &adj[x] {
                if dist[y].is_none() {
                    dist[y] = Some(dist[x].unwrap() + 1);
                    queue.push_back(y);
                }
            }
        }
        dist
    }

    pub fn distance(&self, p: Point, q: Point) -> Option<Ratio> {
        self.hops(p)[self.point_id(q)].map(|h| self.alpha * int(h as i64))
    }

    /// Edge midpoints within `radius` of `center`.
    pub fn ball(&self, center: usize) -> Vec<usize> {
        let n = self.graph.node_count();
        let hops = self.hops(Point::Vertex(center));
        (0..self.graph.edge_count())
            .filter(|&e| hops[n + e].is_some_and(|h| self.alpha * int(h as i64) <= self.radius))
            .collect()
    }

    pub fn to_set_system(&self) -> Result<WeightedSetSystem> {
        let a = self
            .graph
            .regular_degree()
            .ok_or_else(|| Error::InvalidInput("graph is not regular".into()))?;
        let sets = (0..self.graph.node_count()).map(|v| self.ball(v)).collect();
        WeightedSetSystem::unit(self.graph.edge_count(), sets, vec![int(a as i64 - 1); self.graph.node_count()])
    }
}

/// Drops selected vertices with a selected neighbour until the selection is
/// independent. Each drop loses at most `a − 1` exclusively covered edges
/// and saves `a − 1` in cost, so the profit never goes down.
pub fn selection_to_independent_set(g: &Graph, selected: &[usize]) -> Vec<usize> {
    let mut chosen = vec![false; g.node_count()];
    for &v in selected {
        chosen[v] = true;
    }
    for v in 0..g.node_count() {
        if chosen[v] && g.neighbors(v).iter().any(|&w| chosen[w]) {
            chosen[v] = false;
        }
    }
    (0..g.node_count()).filter(|&v| chosen[v]).collect()
}
