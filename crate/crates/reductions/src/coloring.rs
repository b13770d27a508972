//! Graph coloring to sibling cover.
//!
//! Vertices become individuals. Each edge `{i, j}` gets its own locus where
//! `i` reads 0, `j` reads 1 and every other vertex reads 2, so any three
//! vertices containing both ends of an edge show three labels there. Pairs
//! are always feasible, which is why a cover only yields a coloring with at
//! most twice as many colors.

use packcover_core::{AlleleCondition, CoverSolution, Error, Graph, LabelCoverInstance, Result, SibInstance};
use serde::{Deserialize, Serialize};

use crate::labelcover::labelcover_to_allele;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColoringCertificate {
    pub node_count: usize,
    /// Edges of the source graph, one locus each, in locus order.
    pub edges: Vec<(usize, usize)>,
    /// Vertices given a private locus after the edge loci so that no two
    /// individuals are identical.
    pub distinct: Vec<usize>,
}

pub fn coloring_to_labelcover(g: &Graph) -> (LabelCoverInstance, ColoringCertificate) {
    let n = g.node_count();
    let mut columns: Vec<Vec<i64>> = g
        .edges()
        .iter()
        .map(|&(i, j)| {
            (0..n)
                .map(|v| match v {
                    _ if v == i => 0,
                    _ if v == j => 1,
                    _ => 2,
                })
                .collect()
        })
        .collect();
    // Only isolated vertices can share a row.
    let isolated: Vec<usize> = (0..n).filter(|&v| g.degree(v) == 0).collect();
    let distinct = if isolated.len() > 1 { isolated } else { Vec::new() };
    for &v in &distinct {
        columns.push((0..n).map(|u| i64::from(u == v)).collect());
    }
    let labels = (0..n).map(|v| columns.iter().map(|c| c[v]).collect()).collect();
    let lc = LabelCoverInstance::new(columns.len(), labels).expect("rows have one label per locus");
    (
        lc,
        ColoringCertificate {
            node_count: n,
            edges: g.edges().to_vec(),
            distinct,
        },
    )
}

pub fn coloring_to_allele(g: &Graph, cond: AlleleCondition) -> (SibInstance, ColoringCertificate) {
    let (lc, cert) = coloring_to_labelcover(g);
    (labelcover_to_allele(&lc, cond), cert)
}

/// One group per color class.
pub fn coloring_to_cover(coloring: &[usize], cert: &ColoringCertificate) -> Result<CoverSolution> {
    if coloring.len() != cert.node_count {
        return Err(Error::InvalidInput(format!(
            "coloring has {} entries, graph has {} nodes",
            coloring.len(),
            cert.node_count
        )));
    }
    let colors = coloring.iter().copied().max().map_or(0, |c| c + 1);
    let mut groups = vec![Vec::new(); colors];
    for (v, &c) in coloring.iter().enumerate() {
        groups[c].push(v);
    }
    groups.retain(|g| !g.is_empty());
    Ok(CoverSolution::new(groups))
}

/// Colors each vertex by its first group. Edges inside a group can only
/// come from groups of two, so they form a matching; splitting every group
/// along that matching gives a proper coloring with at most twice as many
/// colors. Colors are renumbered from 0 in order of first use.
pub fn cover_to_coloring(cover: &CoverSolution, cert: &ColoringCertificate) -> Result<Vec<usize>> {
    let n = cert.node_count;
    let mut group = vec![None; n];
    for (gi, grp) in cover.groups.iter().enumerate() {
        for &v in grp {
            if v >= n {
                return Err(Error::InvalidInput(format!("individual {} out of range", v + 1)));
            }
            group[v].get_or_insert(gi);
        }
    }
    if let Some(v) = group.iter().position(Option::is_none) {
        return Err(Error::InvalidInput(format!("individual {} is not covered", v + 1)));
    }
    let group: Vec<usize> = group.into_iter().map(Option::unwrap).collect();
    let mut side = vec![0usize; n];
    let mut mono_degree = vec![0usize; n];
    for &(u, v) in &cert.edges {
        if group[u] == group[v] {
            mono_degree[u] += 1;
            mono_degree[v] += 1;
            if mono_degree[u] > 1 || mono_degree[v] > 1 {
                return Err(Error::InvalidInput(format!(
                    "group {} holds more than a matching of edges",
                    group[u] + 1
                )));
            }
            side[u.max(v)] = 1;
        }
    }
    let mut ids = std::collections::HashMap::new();
    Ok((0..n)
        .map(|v| {
            let next = ids.len();
            *ids.entry((group[v], side[v])).or_insert(next)
        })
        .collect())
}

pub fn is_proper_coloring(g: &Graph, coloring: &[usize]) -> bool {
    coloring.len() == g.node_count() && g.edges().iter().all(|&(u, v)| coloring[u] != coloring[v])
}
