//! Per-equation gadgets. Local nodes 0, 1, 2 are the literal nodes; the
//! self-sufficient nodes follow, then the other nodes.

use packcover_core::{Error, Graph, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GadgetKind {
    /// Right-hand side 0: satisfied by an even number of true literals.
    Zero,
    /// Right-hand side 1: satisfied by an odd number of true literals.
    One,
}

impl GadgetKind {
    pub fn from_rhs(rhs: bool) -> Self {
        if rhs {
            GadgetKind::One
        } else {
            GadgetKind::Zero
        }
    }

    pub fn node_count(self) -> usize {
        match self {
            GadgetKind::Zero => 9,
            GadgetKind::One => 7,
        }
    }

    pub fn self_sufficient(self) -> Vec<usize> {
        match self {
            GadgetKind::Zero => vec![3, 4],
            GadgetKind::One => vec![3],
        }
    }

    pub fn is_satisfied(self, true_literals: u8) -> bool {
        let odd = true_literals.count_ones() % 2 == 1;
        odd == (self == GadgetKind::One)
    }
}

/// Best cover of a gadget when the literals in `true_mask` (bit `p` for
/// literal node `p`) are already covered from outside.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GadgetRow {
    pub true_mask: u8,
    pub satisfied: bool,
    /// Fewest non-self-sufficient nodes left uncovered.
    pub min_uncovered: usize,
    /// First packing in enumeration order reaching `min_uncovered`.
    pub cover: Vec<[usize; 3]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquationGadget {
    pub kind: GadgetKind,
    pub edges: Vec<(usize, usize)>,
    /// One row per `true_mask` in 0..8.
    pub table: Vec<GadgetRow>,
}

const ONE_EDGES: [(usize, usize); 14] = [
    (0, 1),
    (0, 2),
    (0, 3),
    (0, 5),
    (1, 3),
    (1, 6),
    (2, 3),
    (2, 4),
    (2, 5),
    (2, 6),
    (3, 6),
    (4, 5),
    (4, 6),
    (5, 6),
];

const ZERO_EDGES: [(usize, usize); 16] = [
    (0, 3),
    (0, 6),
    (1, 5),
    (1, 6),
    (1, 7),
    (1, 8),
    (2, 4),
    (2, 5),
    (3, 6),
    (3, 7),
    (4, 5),
    (5, 7),
    (5, 8),
    (6, 7),
    (6, 8),
    (7, 8),
];

impl EquationGadget {
    pub fn node_count(&self) -> usize {
        self.kind.node_count()
    }

    pub fn self_sufficient(&self) -> Vec<usize> {
        self.kind.self_sufficient()
    }

    pub fn row(&self, true_mask: u8) -> &GadgetRow {
        &self.table[true_mask as usize]
    }

    /// Rebuilds the table from the edge list and checks it against the
    /// required behaviour.
    pub fn validate(&self) -> Result<()> {
        let fresh = coverage_table(self.kind, &self.edges)?;
        if fresh != self.table {
            return Err(Error::Infeasible(format!("{:?} gadget table does not match its edges", self.kind)));
        }
        if let Some(bad) = first_bad_row(&fresh) {
            return Err(Error::Infeasible(format!(
                "{:?} gadget: true literals {:03b} leave {} nodes uncovered",
                self.kind, bad.true_mask, bad.min_uncovered
            )));
        }
        Ok(())
    }
}

fn first_bad_row(table: &[GadgetRow]) -> Option<&GadgetRow> {
    table.iter().find(|r| r.min_uncovered != usize::from(!r.satisfied))
}

fn triangles(kind: GadgetKind, edges: &[(usize, usize)]) -> Result<Vec<[usize; 3]>> {
    let g = Graph::new(kind.node_count(), edges.iter().copied())?;
    let n = g.node_count();
    let mut out = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                if g.has_edge(a, b) && g.has_edge(b, c) && g.has_edge(a, c) {
                    out.push([a, b, c]);
                }
            }
        }
    }
    Ok(out)
}

/// Exhaustive table: every packing of gadget triangles avoiding the true
/// literals is tried for each of the eight literal patterns.
pub fn coverage_table(kind: GadgetKind, edges: &[(usize, usize)]) -> Result<Vec<GadgetRow>> {
    let tris = triangles(kind, edges)?;
    let n = kind.node_count();
    let ss = kind.self_sufficient();
    let mut rows = Vec::with_capacity(8);
    for mask in 0u8..8 {
        let mut blocked = vec![false; n];
        for (p, b) in blocked.iter_mut().enumerate().take(3) {
            *b = mask >> p & 1 == 1;
        }
        let mut best: Option<(usize, Vec<[usize; 3]>)> = None;
        let mut chosen = Vec::new();
        search(&tris, 0, &mut blocked.clone(), &mut chosen, &mut |used: &[bool], cover: &[[usize; 3]]| {
            let uncovered = (0..n).filter(|&v| !used[v] && !ss.contains(&v)).count();
            if best.as_ref().is_none_or(|(b, _)| uncovered < *b) {
                best = Some((uncovered, cover.to_vec()));
            }
        });
        let (min_uncovered, cover) = best.expect("the empty packing is always available");
        rows.push(GadgetRow {
            true_mask: mask,
            satisfied: kind.is_satisfied(mask),
            min_uncovered,
            cover,
        });
    }
    Ok(rows)
}

fn search(
    tris: &[[usize; 3]],
    from: usize,
    used: &mut Vec<bool>,
    chosen: &mut Vec<[usize; 3]>,
    visit: &mut impl FnMut(&[bool], &[[usize; 3]]),
) {
    visit(used, chosen);
    for i in from..tris.len() {
        let t = tris[i];
        if t.iter().any(|&v| used[v]) {
            continue;
        }
        for &v in &t {
            used[v] = true;
        }
        chosen.push(t);
        search(tris, i + 1, used, chosen, visit);
        chosen.pop();
        for &v in &t {
            used[v] = false;
        }
    }
}

/// The frozen gadget of the given kind, re-validated on every call. Fails
/// when the stored edge set does not reproduce the required table.
pub fn synth_equation_gadget(kind: GadgetKind) -> Result<EquationGadget> {
    let edges: Vec<(usize, usize)> = match kind {
        GadgetKind::Zero => ZERO_EDGES.to_vec(),
        GadgetKind::One => ONE_EDGES.to_vec(),
    };
    let gadget = EquationGadget {
        kind,
        table: coverage_table(kind, &edges)?,
        edges,
    };
    gadget.validate()?;
    Ok(gadget)
}

/// Random search for a gadget: edge sets are sampled with edge probability
/// 1/2 (no edges between literal nodes) until one passes validation.
pub fn search_gadget(kind: GadgetKind, seed: u64, max_tries: usize) -> Result<EquationGadget> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = kind.node_count();
    for _ in 0..max_tries {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if v >= 3 && rng.gen_bool(0.5) {
                    edges.push((u, v));
                }
            }
        }
        let table = coverage_table(kind, &edges)?;
        if first_bad_row(&table).is_none() {
            return Ok(EquationGadget { kind, edges, table });
        }
    }
    Err(Error::Infeasible(format!("no {kind:?} gadget found in {max_tries} tries")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_validate() {
        for kind in [GadgetKind::Zero, GadgetKind::One] {
            let g = synth_equation_gadget(kind).unwrap();
            assert_eq!(g.table.len(), 8);
        }
    }

    #[test]
    fn tampered_gadget_fails_closed() {
        let mut g = synth_equation_gadget(GadgetKind::One).unwrap();
        g.edges.pop();
        assert!(g.validate().is_err());
        g.table = coverage_table(GadgetKind::One, &g.edges).unwrap();
        assert!(g.validate().is_err());
    }

    #[test]
    fn worked_rows() {
        let one = synth_equation_gadget(GadgetKind::One).unwrap();
        // All literals true: one triangle away from s plus s itself.
        let all = one.row(0b111);
        assert_eq!(all.min_uncovered, 0);
        assert_eq!(all.cover.len(), 1);
        assert!(!all.cover[0].contains(&3));
        let zero = synth_equation_gadget(GadgetKind::Zero).unwrap();
        assert_eq!(zero.row(0).cover.len(), 3);
        assert_eq!(zero.row(0b001).min_uncovered, 1);
    }

    #[test]
    fn search_finds_gadgets() {
        for kind in [GadgetKind::Zero, GadgetKind::One] {
            let g = search_gadget(kind, 1, 200_000).unwrap();
            g.validate().unwrap();
        }
    }
}
