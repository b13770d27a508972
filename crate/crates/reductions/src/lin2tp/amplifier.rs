//! Bipartite amplifiers and their triangle-packing translation.
//!
//! Node `i` of an amplifier with parameter `k` is white when `i` is even and
//! black when odd. Contacts are the nodes whose index is divisible by 7, so
//! contact `t` is node `7t` and is white exactly when `t` is even.

use packcover_core::{Error, Graph, Result};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// Below this many occurrences per sign the amplifier property is not
/// expected to hold reliably.
pub const K_FLOOR: usize = 8;

const MATCHING_RETRIES: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Amplifier {
    pub k: usize,
    /// (white, black) pairs over non-contact nodes.
    pub matching: Vec<(usize, usize)>,
}

impl Amplifier {
    pub fn node_count(&self) -> usize {
        14 * self.k
    }

    pub fn edge_count(&self) -> usize {
        20 * self.k
    }

    pub fn contact_count(&self) -> usize {
        2 * self.k
    }

    pub fn is_contact(node: usize) -> bool {
        node.is_multiple_of(7)
    }

    pub fn is_white(node: usize) -> bool {
        node.is_multiple_of(2)
    }

    /// Ring edges `(i, i+1)` first, in order of `i`, then the matching.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let n = self.node_count();
        let mut out: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        out.extend(self.matching.iter().copied());
        out
    }

    pub fn graph(&self) -> Graph {
        Graph::new(self.node_count(), self.edges()).expect("amplifier edges are valid")
    }

    /// Matching partner of each non-contact node.
    fn partner(&self) -> Vec<Option<usize>> {
        let mut p = vec![None; self.node_count()];
        for &(w, b) in &self.matching {
            p[w] = Some(b);
            p[b] = Some(w);
        }
        p
    }
}

/// Ring on `14k` nodes plus a uniformly random perfect matching between the
/// white and the black non-contacts. Samples that would double a ring edge
/// are redrawn.
pub fn build_amplifier(k: usize, seed: u64) -> Result<Amplifier> {
    if k == 0 {
        return Err(Error::InvalidInput("amplifier parameter k must be at least 1".into()));
    }
    let n = 14 * k;
    let white: Vec<usize> = (0..n).filter(|&i| Amplifier::is_white(i) && !Amplifier::is_contact(i)).collect();
    let mut black: Vec<usize> = (0..n).filter(|&i| !Amplifier::is_white(i) && !Amplifier::is_contact(i)).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..MATCHING_RETRIES {
        black.shuffle(&mut rng);
        if white.iter().zip(&black).all(|(&w, &b)| w.abs_diff(b) != 1) {
            let mut matching: Vec<(usize, usize)> = white.iter().copied().zip(black.iter().copied()).collect();
            matching.sort_unstable();
            return Ok(Amplifier { k, matching });
        }
    }
    Err(Error::Infeasible(format!("no amplifier matching for k = {k}")))
}

/// Line-graph translation of an amplifier. Local ids: ring edge `i` is
/// node `i`, matching edge `j` is node `14k + j`, and contact `t` gets a
/// literal node `20k + t`. Every amplifier node becomes the triangle of its
/// three incident edges, a contact using its literal node as the third.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TpFragment {
    pub node_count: usize,
    pub edges: Vec<(usize, usize)>,
    /// Triangle of amplifier node `u`, sorted.
    pub triangles: Vec<[usize; 3]>,
    /// Literal node of contact `t`.
    pub literal_nodes: Vec<usize>,
}

pub fn amplifier_to_tp_fragment(a: &Amplifier) -> TpFragment {
    let n = a.node_count();
    let m = a.edge_count();
    let mut matching_edge = vec![usize::MAX; n];
    for (j, &(w, b)) in a.matching.iter().enumerate() {
        matching_edge[w] = n + j;
        matching_edge[b] = n + j;
    }
    let mut triangles = Vec::with_capacity(n);
    let mut edges = Vec::with_capacity(3 * n);
    for u in 0..n {
        let third = if Amplifier::is_contact(u) {
            m + u / 7
        } else {
            matching_edge[u]
        };
        let mut t = [(u + n - 1) % n, u, third];
        t.sort_unstable();
        edges.extend([(t[0], t[1]), (t[1], t[2]), (t[0], t[2])]);
        triangles.push(t);
    }
    TpFragment {
        node_count: m + a.contact_count(),
        edges,
        triangles,
        literal_nodes: (0..a.contact_count()).map(|t| m + t).collect(),
    }
}

/// Contacts whose membership changes when every contact is moved to the
/// cheaper of "all white" and "all black". `inside[t]` tells whether
/// contact `t` is selected.
pub fn minority_changes(inside: &[bool]) -> usize {
    let mut to_white = 0;
    let mut to_black = 0;
    for (t, &sel) in inside.iter().enumerate() {
        let white = t % 2 == 0;
        if sel != white {
            to_white += 1;
        }
        if sel == white {
            to_black += 1;
        }
    }
    to_white.min(to_black)
}

/// Fewest edge nodes of the fragment left uncovered by a packing of
/// amplifier triangles that selects exactly the contacts in `inside`.
///
/// Such packings are independent sets of the amplifier. With the contacts
/// fixed, the free nodes are the non-contacts with no selected neighbour; they
/// induce a bipartite graph whose largest independent set is its size minus
/// a maximum matching.
pub fn uncovered_given_contacts(a: &Amplifier, inside: &[bool]) -> usize {
    let n = a.node_count();
    let partner = a.partner();
    let mut free = vec![true; n];
    let mut chosen = 0;
    for (t, &sel) in inside.iter().enumerate() {
        let c = 7 * t;
        free[c] = false;
        if sel {
            chosen += 1;
            free[(c + 1) % n] = false;
            free[(c + n - 1) % n] = false;
        }
    }
    let free_count = free.iter().filter(|&&f| f).count();
    let matched = bipartite_matching(n, &free, |u| {
        let mut nb = vec![(u + 1) % n, (u + n - 1) % n];
        if let Some(p) = partner[u] {
            nb.push(p);
        }
        nb
    });
    let independent = free_count - matched;
    a.edge_count() - 3 * independent - 2 * chosen
}

/// Augmenting-path matching between free even and free odd nodes.
fn bipartite_matching(n: usize, free: &[bool], neighbours: impl Fn(usize) -> Vec<usize>) -> usize {
    fn augment(
        u: usize,
        free: &[bool],
        neighbours: &impl Fn(usize) -> Vec<usize>,
        seen: &mut [bool],
        owner: &mut [Option<usize>],
    ) -> bool {
        for v in neighbours(u) {
            if !free[v] || seen[v] {
                continue;
            }
            seen[v] = true;
            if owner[v].is_none_or(|w| augment(w, free, neighbours, seen, owner)) {
                owner[v] = Some(u);
                return true;
            }
        }
        false
    }
    let mut owner = vec![None; n];
    let mut size = 0;
    for u in (0..n).filter(|&u| free[u] && u % 2 == 0) {
        let mut seen = vec![false; n];
        if augment(u, free, &neighbours, &mut seen, &mut owner) {
            size += 1;
        }
    }
    size
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AmplifierCheck {
    pub k: usize,
    pub subsets: usize,
    /// Contact selections whose best packing leaves fewer uncovered edge
    /// nodes than the number of minority contacts.
    pub failures: usize,
}

/// Checks the amplifier property over all `2^(2k)` contact selections.
pub fn check_amplifier(a: &Amplifier) -> Result<AmplifierCheck> {
    if a.k > 8 {
        return Err(Error::InvalidInput(format!("exhaustive amplifier check needs k ≤ 8, got {}", a.k)));
    }
    let c = a.contact_count();
    let mut failures = 0;
    for mask in 0u32..1 << c {
        let inside: Vec<bool> = (0..c).map(|t| mask >> t & 1 == 1).collect();
        if uncovered_given_contacts(a, &inside) < minority_changes(&inside) {
            failures += 1;
        }
    }
    Ok(AmplifierCheck {
        k: a.k,
        subsets: 1 << c,
        failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shape() {
        let a = build_amplifier(1, 5).unwrap();
        assert_eq!(a.node_count(), 14);
        let contacts: Vec<usize> = (0..14).filter(|&i| Amplifier::is_contact(i)).collect();
        assert_eq!(contacts, vec![0, 7]);
        let g = a.graph();
        assert_eq!(g.edge_count(), 20);
        for u in 0..14 {
            assert_eq!(g.degree(u), if Amplifier::is_contact(u) { 2 } else { 3 });
        }
        for &(u, v) in g.edges() {
            assert_ne!(u % 2, v % 2);
        }
    }

    #[test]
    fn deterministic() {
        assert_eq!(build_amplifier(3, 9).unwrap(), build_amplifier(3, 9).unwrap());
    }

    #[test]
    fn fragment_colors() {
        let a = build_amplifier(2, 1).unwrap();
        let f = amplifier_to_tp_fragment(&a);
        assert_eq!(f.node_count, 44);
        let white: Vec<bool> = (0..4).map(|t| t % 2 == 0).collect();
        assert_eq!(uncovered_given_contacts(&a, &white), 0);
        let black: Vec<bool> = white.iter().map(|w| !w).collect();
        assert_eq!(uncovered_given_contacts(&a, &black), 0);
        // White triangles cover every edge node plus the white literal nodes.
        let mut covered = vec![false; f.node_count];
        for u in (0..28).filter(|u| u % 2 == 0) {
            for v in f.triangles[u] {
                assert!(!covered[v]);
                covered[v] = true;
            }
        }
        assert!(covered[..40].iter().all(|&c| c));
        assert_eq!(&covered[40..], &[true, false, true, false]);
    }
}
