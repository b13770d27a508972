//! Triangle packing to 2-label cover to allele instances.
//!
//! Individuals are the nodes of the graph. There is one locus per origin
//! node `a` and optional edge `e`: the label of `v` is its distance from `a`
//! when every edge has length 1 except `e`, which has length 0. Three
//! individuals show at most two labels on every locus exactly when they form
//! a triangle.

use std::collections::VecDeque;

use packcover_core::solution::TrianglePacking;
use packcover_core::{AlleleCondition, CoverSolution, Graph, LabelCoverInstance, SibInstance};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TpLabelCertificate {
    pub node_count: usize,
    /// (origin, zero-length edge index) per locus.
    pub loci: Vec<(usize, Option<usize>)>,
    /// Label given to nodes unreachable from the origin, per component of
    /// the unreachable node.
    pub unreachable_labels: Vec<i64>,
}

/// Distances from `origin` with edge `zero` contracted, by 0-1 BFS.
fn distances(g: &Graph, origin: usize, zero: Option<(usize, usize)>) -> Vec<Option<usize>> {
    let mut dist = vec![None; g.node_count()];
    let mut queue = VecDeque::new();
    dist[origin] = Some(0);
    queue.push_back(origin);
    while let Some(u) = queue.pop_front() {
        let du = dist[u].unwrap();
        for &v in g.neighbors(u) {
            let w = usize::from(zero != Some((u.min(v), u.max(v))));
            if dist[v].is_none_or(|dv| du + w < dv) {
                dist[v] = Some(du + w);
                if w == 0 {
                    queue.push_front(v);
                } else {
                    queue.push_back(v);
                }
            }
        }
    }
    dist
}

pub fn tp_to_labelcover(g: &Graph) -> (LabelCoverInstance, TpLabelCertificate) {
    let n = g.node_count();
    let comp = g.components();
    let components = comp.iter().copied().max().map_or(0, |c| c + 1);
    let unreachable_labels: Vec<i64> = (0..components).map(|c| (n + c) as i64).collect();
    let mut loci = Vec::new();
    let mut columns: Vec<Vec<i64>> = Vec::new();
    for origin in 0..n {
        for zero in std::iter::once(None).chain((0..g.edge_count()).map(Some)) {
            let d = distances(g, origin, zero.map(|e| g.edges()[e]));
            columns.push(
                (0..n)
                    .map(|v| d[v].map_or(unreachable_labels[comp[v]], |x| x as i64))
                    .collect(),
            );
            loci.push((origin, zero));
        }
    }
    let labels = (0..n).map(|v| columns.iter().map(|c| c[v]).collect()).collect();
    let lc = LabelCoverInstance::new(loci.len(), labels).expect("rows have one label per locus");
    (
        lc,
        TpLabelCertificate {
            node_count: n,
            loci,
            unreachable_labels,
        },
    )
}

/// Label `v` becomes the pair `(v, v + offset)` under four alleles, with the
/// offset above every label, and the homozygous pair `(v, v)` under two.
pub fn labelcover_to_allele(lc: &LabelCoverInstance, cond: AlleleCondition) -> SibInstance {
    let offset = lc.labels().iter().flatten().map(|l| l.abs()).max().unwrap_or(0) + 1;
    let rows = lc
        .labels()
        .iter()
        .map(|row| {
            row.iter()
                .map(|&v| match cond {
                    AlleleCondition::Four => (v, v + offset),
                    AlleleCondition::Two => (v, v),
                })
                .collect()
        })
        .collect();
    SibInstance::new(lc.locus_count(), rows).expect("rows have one genotype per locus")
}

/// Triangles become groups; the remaining individuals are paired in index
/// order, with one singleton when their number is odd.
pub fn packing_to_cover(node_count: usize, packing: &TrianglePacking) -> CoverSolution {
    let mut used = vec![false; node_count];
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for t in &packing.triangles {
        for &v in t {
            used[v] = true;
        }
        groups.push(t.to_vec());
    }
    let rest: Vec<usize> = (0..node_count).filter(|&v| !used[v]).collect();
    groups.extend(rest.chunks(2).map(<[usize]>::to_vec));
    CoverSolution::new(groups)
}

/// Disjoint triangles found inside the groups of a cover.
pub fn cover_to_packing(g: &Graph, cover: &CoverSolution) -> TrianglePacking {
    let mut used = vec![false; g.node_count()];
    let mut out = Vec::new();
    for group in &cover.groups {
        let free: Vec<usize> = group.iter().copied().filter(|&v| !used[v]).collect();
        for (i, &a) in free.iter().enumerate() {
            for (j, &b) in free.iter().enumerate().skip(i + 1) {
                for &c in &free[j + 1..] {
                    if !used[a] && !used[b] && !used[c] && g.has_edge(a, b) && g.has_edge(b, c) && g.has_edge(a, c) {
                        used[a] = true;
                        used[b] = true;
                        used[c] = true;
                        out.push([a, b, c]);
                    }
                }
            }
        }
    }
    TrianglePacking::new(out)
}
