//! Cubic max-cut to 2-allele instances with two loci.
//!
//! Each source node `u` becomes a 3×12 grid of structure nodes whose rows
//! are closed into rings and whose columns 0, 4 and 8 are closed by a
//! wrap-around edge. Individuals are the edges of the assembled structure:
//! the first locus holds the two endpoint ids and the second a label.
//! The degree-3 runs of the top and bottom rows (columns 1–3, 5–7, 9–11)
//! are joined to runs of neighbouring gadgets by three rungs each.

use packcover_core::ratio::int;
use packcover_core::{CoverSolution, Error, Graph, Ratio, Result, SibInstance};
use serde::{Deserialize, Serialize};

pub const BETA: i64 = 1;
pub const GAMMA: i64 = 2;
pub const MU: i64 = 3;
pub const LAMBDA: i64 = 4;
pub const KAPPA: i64 = 5;

pub fn alpha(u: usize) -> i64 {
    10 + 2 * u as i64
}

pub fn delta(u: usize) -> i64 {
    11 + 2 * u as i64
}

const PER_NODE: usize = 63;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Role {
    /// Row edge from column `col` to `col + 1` (mod 12).
    Horizontal { row: usize, col: usize },
    /// Column edge between rows `band` and `band + 1`.
    Vertical { band: usize, col: usize },
    /// Edge closing column `col` from the bottom row to the top row.
    Wrap { col: usize },
    /// Rung `offset` of connection grid `grid` of source edge `edge`.
    Rung { edge: usize, grid: usize, offset: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CutIndividual {
    /// Owning gadget; `None` for rungs.
    pub gadget: Option<usize>,
    pub role: Role,
    pub ends: (usize, usize),
    pub label: (i64, i64),
    #[serde(with = "packcover_core::ratio::serde_ratio")]
    pub potential: Ratio,
}

/// Run slots used by a source edge: `u` uses its top and bottom runs with
/// index `u_slot`, `v` those with index `v_slot`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Connection {
    pub u: usize,
    pub v: usize,
    pub u_slot: usize,
    pub v_slot: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CutCertificate {
    pub node_count: usize,
    pub connections: Vec<Connection>,
    pub individuals: Vec<CutIndividual>,
}

impl CutCertificate {
    pub fn total_potential(&self) -> Ratio {
        self.individuals.iter().map(|i| i.potential).sum()
    }

    /// No cover can use fewer groups than the summed potential, rounded up.
    pub fn lower_bound(&self) -> i64 {
        packcover_core::ratio::ceil_to_i64(&self.total_potential())
    }

    pub fn horizontal(u: usize, row: usize, col: usize) -> usize {
        u * PER_NODE + row * 12 + col
    }

    pub fn vertical(u: usize, band: usize, col: usize) -> usize {
        u * PER_NODE + 36 + band * 12 + col
    }

    pub fn wrap(u: usize, col: usize) -> usize {
        u * PER_NODE + 60 + col / 4
    }

    pub fn rung(&self, edge: usize, grid: usize, offset: usize) -> usize {
        self.node_count * PER_NODE + edge * 6 + grid * 3 + offset
    }
}

fn point(u: usize, row: usize, col: usize) -> usize {
    u * 36 + row * 12 + col % 12
}

fn horizontal_label(u: usize, col: usize) -> i64 {
    match col % 4 {
        0 => alpha(u),
        1 => BETA,
        2 => GAMMA,
        _ => delta(u),
    }
}

pub fn cut_to_allele(g: &Graph) -> Result<(SibInstance, CutCertificate)> {
    if g.regular_degree() != Some(3) {
        return Err(Error::InvalidInput("cut reduction needs a 3-regular graph".into()));
    }
    let n = g.node_count();
    let quarter = Ratio::new(1, 4);
    let half = Ratio::new(1, 2);
    let mut individuals = Vec::with_capacity(n * PER_NODE + 6 * g.edge_count());
    for u in 0..n {
        for row in 0..3 {
            for col in 0..12 {
                let l = horizontal_label(u, col);
                individuals.push(CutIndividual {
                    gadget: Some(u),
                    role: Role::Horizontal { row, col },
                    ends: (point(u, row, col), point(u, row, col + 1)),
                    label: (l, l),
                    potential: quarter,
                });
            }
        }
        for band in 0..2 {
            let l = if band == 0 { LAMBDA } else { KAPPA };
            for col in 0..12 {
                individuals.push(CutIndividual {
                    gadget: Some(u),
                    role: Role::Vertical { band, col },
                    ends: (point(u, band, col), point(u, band + 1, col)),
                    label: (l, l),
                    potential: quarter,
                });
            }
        }
        for col in [0, 4, 8] {
            individuals.push(CutIndividual {
                gadget: Some(u),
                role: Role::Wrap { col },
                ends: (point(u, 2, col), point(u, 0, col)),
                label: (alpha(u), delta(u)),
                potential: half,
            });
        }
    }
    let mut used = vec![0usize; n];
    let mut connections = Vec::with_capacity(g.edge_count());
    for (edge, &(u, v)) in g.edges().iter().enumerate() {
        let c = Connection {
            u,
            v,
            u_slot: used[u],
            v_slot: used[v],
        };
        used[u] += 1;
        used[v] += 1;
        // Grid 0 joins the top run of u to the bottom run of v, grid 1 the
        // bottom run of u to the top run of v.
        for (grid, (ru, rv)) in [(0, 2), (2, 0)].into_iter().enumerate() {
            for offset in 0..3 {
                individuals.push(CutIndividual {
                    gadget: None,
                    role: Role::Rung { edge, grid, offset },
                    ends: (point(u, ru, 4 * c.u_slot + 1 + offset), point(v, rv, 4 * c.v_slot + 1 + offset)),
                    label: (MU, MU),
                    potential: if offset == 1 { int(0) } else { half },
                });
            }
        }
        connections.push(c);
    }
    let rows = individuals
        .iter()
        .map(|i| vec![(i.ends.0 as i64, i.ends.1 as i64), i.label])
        .collect();
    let inst = SibInstance::new(2, rows)?;
    Ok((
        inst,
        CutCertificate {
            node_count: n,
            connections,
            individuals,
        },
    ))
}

/// Cover of size `15·n + 3·(cut edges) + 4·(uncut edges)` for the
/// bipartition `side` (`false` and `true` are the two sides).
///
/// Gadgets on side `false` use the squares with even `col + band`, the
/// others the odd ones; every gadget then adds three triples through its
/// wrap-around edges. What is left of a connection grid is either two
/// parallel run edges, covered by a square with two rungs, or a path of
/// five edges, covered by a path of three and a pair.
pub fn cut_solution_to_cover(side: &[bool], cert: &CutCertificate) -> Result<CoverSolution> {
    let n = cert.node_count;
    if side.len() != n {
        return Err(Error::InvalidInput(format!("bipartition has {} entries, graph has {n} nodes", side.len())));
    }
    type C = CutCertificate;
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for u in 0..n {
        let parity = usize::from(side[u]);
        for band in 0..2 {
            for col in (0..12).filter(|c| (c + band) % 2 == parity) {
                groups.push(vec![
                    C::horizontal(u, band, col),
                    C::horizontal(u, band + 1, col),
                    C::vertical(u, band, col),
                    C::vertical(u, band, (col + 1) % 12),
                ]);
            }
        }
        for col in [0, 4, 8] {
            let before = (col + 11) % 12;
            let (top, bottom) = if side[u] { (col, before) } else { (before, col) };
            groups.push(vec![C::horizontal(u, 0, top), C::wrap(u, col), C::horizontal(u, 2, bottom)]);
        }
    }
    // A run edge at offset o (0: columns 1–2, 1: columns 2–3) is left free by
    // its gadget's squares exactly when (o + 1 + row/2) has the gadget's parity.
    let free_offset = |u: usize, row: usize| -> usize {
        let parity = usize::from(side[u]);
        (0..2).find(|o| (o + 1 + row / 2) % 2 != parity).unwrap()
    };
    for (edge, c) in cert.connections.iter().enumerate() {
        let mut leftovers = Vec::new();
        for (grid, (ru, rv)) in [(0, 2), (2, 0)].into_iter().enumerate() {
            let ou = free_offset(c.u, ru);
            let ov = free_offset(c.v, rv);
            let hu = C::horizontal(c.u, ru, 4 * c.u_slot + 1 + ou);
            let hv = C::horizontal(c.v, rv, 4 * c.v_slot + 1 + ov);
            let rung = |o: usize| cert.rung(edge, grid, o);
            if ou == ov {
                groups.push(vec![hu, hv, rung(ou), rung(ou + 1)]);
                leftovers.push(rung(2 - 2 * ou));
            } else {
                let (h0, h1) = if ou == 0 { (hu, hv) } else { (hv, hu) };
                groups.push(vec![rung(0), h0, rung(1)]);
                groups.push(vec![h1, rung(2)]);
            }
        }
        if !leftovers.is_empty() {
            groups.push(leftovers);
        }
    }
    Ok(CoverSolution::new(groups))
}

/// Edges of `g` with both ends on the same side.
pub fn uncut_edges(g: &Graph, side: &[bool]) -> usize {
    g.edges().iter().filter(|&&(u, v)| side[u] == side[v]).count()
}
