//! 3-LIN-2 to triangle packing.
//!
//! Every equation is replicated `m` times, each replica in its original form
//! and with all literals and the right-hand side negated, and each form in
//! three copies joined by triangles on their self-sufficient nodes. Every
//! literal occurrence is a node shared between its equation gadget and the
//! consistency fragment of its variable: positive occurrences sit on white
//! contacts, negative ones on black contacts.

pub mod amplifier;
pub mod gadget;

use std::collections::HashSet;

use packcover_core::lin2::Equation;
use packcover_core::solution::TrianglePacking;
use packcover_core::{Error, Graph, Lin2System, Result};
use serde::{Deserialize, Serialize};

use amplifier::{amplifier_to_tp_fragment, build_amplifier, Amplifier, K_FLOOR};
use gadget::{synth_equation_gadget, EquationGadget, GadgetKind};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpandedEquation {
    pub source: usize,
    pub replica: usize,
    pub negated_form: bool,
    pub equation: Equation,
    pub kind: GadgetKind,
    /// Global node ids of each copy, indexed by local gadget node.
    pub copies: [Vec<usize>; 3],
}

/// Where the literal node of contact `t` lives.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContactLink {
    pub equation: usize,
    pub copy: usize,
    pub position: usize,
    pub node: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VariableFragment {
    /// `None` when the variable does not occur.
    pub amplifier: Option<Amplifier>,
    pub edge_nodes: Vec<usize>,
    /// Triangle of each amplifier node, in global ids.
    pub triangles: Vec<[usize; 3]>,
    pub contacts: Vec<ContactLink>,
}

impl VariableFragment {
    pub fn k(&self) -> usize {
        self.amplifier.as_ref().map_or(0, |a| a.k)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Lin2TpCertificate {
    pub seed: u64,
    pub replication: usize,
    /// Copies of each source equation pair, `2·replication`.
    pub m_s: usize,
    pub source_equations: usize,
    pub variable_count: usize,
    pub node_count: usize,
    pub gadgets: Vec<EquationGadget>,
    pub equations: Vec<ExpandedEquation>,
    pub variables: Vec<VariableFragment>,
    pub warnings: Vec<String>,
}

impl Lin2TpCertificate {
    fn gadget(&self, kind: GadgetKind) -> &EquationGadget {
        self.gadgets.iter().find(|g| g.kind == kind).expect("both gadget kinds are stored")
    }
}

fn negated(eq: &Equation) -> Equation {
    Equation {
        literals: eq.literals.map(|l| l.flipped()),
        rhs: !eq.rhs,
    }
}

fn variable_seed(seed: u64, x: usize) -> u64 {
    seed ^ (x as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

pub fn lin2_to_tp(sys: &Lin2System, m: usize, seed: u64) -> Result<(Graph, Lin2TpCertificate)> {
    if m == 0 {
        return Err(Error::InvalidInput("replication m must be at least 1".into()));
    }
    let gadgets = vec![synth_equation_gadget(GadgetKind::Zero)?, synth_equation_gadget(GadgetKind::One)?];
    let template = |kind: GadgetKind| gadgets.iter().find(|g| g.kind == kind).unwrap();

    let mut next = 0usize;
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut equations = Vec::new();
    for replica in 0..m {
        for (source, eq) in sys.equations().iter().enumerate() {
            for negated_form in [false, true] {
                let equation = if negated_form { negated(eq) } else { *eq };
                let kind = GadgetKind::from_rhs(equation.rhs);
                let t = template(kind);
                let copies: [Vec<usize>; 3] = std::array::from_fn(|_| {
                    let ids: Vec<usize> = (next..next + t.node_count()).collect();
                    next += t.node_count();
                    ids
                });
                for ids in &copies {
                    edges.extend(t.edges.iter().map(|&(u, v)| (ids[u], ids[v])));
                }
                for s in t.self_sufficient() {
                    let [a, b, c] = [copies[0][s], copies[1][s], copies[2][s]];
                    edges.extend([(a, b), (b, c), (a, c)]);
                }
                equations.push(ExpandedEquation {
                    source,
                    replica,
                    negated_form,
                    equation,
                    kind,
                    copies,
                });
            }
        }
    }

    let mut positives = vec![Vec::new(); sys.variable_count()];
    let mut negatives = vec![Vec::new(); sys.variable_count()];
    for (e, ex) in equations.iter().enumerate() {
        for copy in 0..3 {
            for (position, lit) in ex.equation.literals.iter().enumerate() {
                let link = ContactLink {
                    equation: e,
                    copy,
                    position,
                    node: ex.copies[copy][position],
                };
                if lit.negated {
                    negatives[lit.variable].push(link);
                } else {
                    positives[lit.variable].push(link);
                }
            }
        }
    }

    let mut warnings = Vec::new();
    let mut variables = Vec::with_capacity(sys.variable_count());
    for x in 0..sys.variable_count() {
        let k = positives[x].len();
        debug_assert_eq!(k, negatives[x].len());
        if k == 0 {
            variables.push(VariableFragment {
                amplifier: None,
                edge_nodes: Vec::new(),
                triangles: Vec::new(),
                contacts: Vec::new(),
            });
            continue;
        }
        if k < K_FLOOR {
            warnings.push(format!(
                "variable {} has amplifier parameter k = {k}, below {K_FLOOR}; consistency is not reliable",
                x + 1
            ));
        }
        let amp = build_amplifier(k, variable_seed(seed, x))?;
        let frag = amplifier_to_tp_fragment(&amp);
        let edge_nodes: Vec<usize> = (next..next + amp.edge_count()).collect();
        next += amp.edge_count();
        let contacts: Vec<ContactLink> = (0..amp.contact_count())
            .map(|t| if t % 2 == 0 { positives[x][t / 2] } else { negatives[x][t / 2] })
            .collect();
        let global = |local: usize| {
            if local < edge_nodes.len() {
                edge_nodes[local]
            } else {
                contacts[local - edge_nodes.len()].node
            }
        };
        edges.extend(frag.edges.iter().map(|&(u, v)| (global(u), global(v))));
        let triangles = frag
            .triangles
            .iter()
            .map(|t| {
                let mut g = t.map(global);
                g.sort_unstable();
                g
            })
            .collect();
        variables.push(VariableFragment {
            amplifier: Some(amp),
            edge_nodes,
            triangles,
            contacts,
        });
    }

    let graph = Graph::new(next, edges)?;
    let cert = Lin2TpCertificate {
        seed,
        replication: m,
        m_s: 2 * m,
        source_equations: sys.equations().len(),
        variable_count: sys.variable_count(),
        node_count: next,
        gadgets,
        equations,
        variables,
        warnings,
    };
    Ok((graph, cert))
}

/// The packing that encodes `assignment`: white triangles for true
/// variables, black for false, the stored best cover of every gadget copy
/// for its pattern of true literals, and a triangle across the three copies
/// for every self-sufficient node the gadget cover leaves free.
pub fn lin2_solution_to_packing(assignment: &[bool], cert: &Lin2TpCertificate) -> Result<TrianglePacking> {
    if assignment.len() != cert.variable_count {
        return Err(Error::InvalidInput(format!(
            "assignment has {} values, system has {} variables",
            assignment.len(),
            cert.variable_count
        )));
    }
    let mut out = Vec::new();
    for (x, frag) in cert.variables.iter().enumerate() {
        let parity = if assignment[x] { 0 } else { 1 };
        out.extend(frag.triangles.iter().enumerate().filter(|(u, _)| u % 2 == parity).map(|(_, &t)| t));
    }
    for ex in &cert.equations {
        let g = cert.gadget(ex.kind);
        let mask = ex
            .equation
            .literals
            .iter()
            .enumerate()
            .filter(|(_, l)| l.value(assignment))
            .fold(0u8, |m, (p, _)| m | 1 << p);
        let row = g.row(mask);
        for ids in &ex.copies {
            out.extend(row.cover.iter().map(|t| t.map(|v| ids[v])));
        }
        for s in g.self_sufficient() {
            if !row.cover.iter().any(|t| t.contains(&s)) {
                out.push([ex.copies[0][s], ex.copies[1][s], ex.copies[2][s]]);
            }
        }
    }
    Ok(TrianglePacking::new(out))
}

/// Per-variable majority over contact triangles: a variable is true when
/// moving its contacts to "all white" needs no more changes than moving
/// them to "all black". Variables without occurrences are false.
pub fn packing_to_assignment(packing: &TrianglePacking, cert: &Lin2TpCertificate) -> Vec<bool> {
    let chosen: HashSet<[usize; 3]> = packing
        .triangles
        .iter()
        .map(|t| {
            let mut t = *t;
            t.sort_unstable();
            t
        })
        .collect();
    cert.variables
        .iter()
        .map(|frag| {
            if frag.k() == 0 {
                return false;
            }
            let inside: Vec<bool> = (0..frag.contacts.len())
                .map(|t| chosen.contains(&frag.triangles[7 * t]))
                .collect();
            let to_white = inside.iter().enumerate().filter(|(t, &sel)| sel != (t % 2 == 0)).count();
            to_white <= inside.len() - to_white
        })
        .collect()
}

/// Replaces a packing by the encoding of its majority assignment.
pub fn normalize_packing(packing: &TrianglePacking, cert: &Lin2TpCertificate) -> Result<TrianglePacking> {
    lin2_solution_to_packing(&packing_to_assignment(packing, cert), cert)
}

#[cfg(test)]
mod tests {
    use super::*;
    use packcover_core::Literal;

    fn two_equations() -> Lin2System {
        Lin2System::new(
            3,
            vec![
                Equation {
                    literals: [Literal::pos(0), Literal::pos(1), Literal::pos(2)],
                    rhs: false,
                },
                Equation {
                    literals: [Literal::pos(0), Literal::neg(1), Literal::pos(2)],
                    rhs: true,
                },
            ],
        )
        .unwrap()
    }

    #[test]
    fn sizes() {
        let (g, cert) = lin2_to_tp(&two_equations(), 1, 3).unwrap();
        assert_eq!(g.node_count(), 456);
        assert_eq!(cert.m_s, 2);
        assert_eq!(cert.variables[0].k(), 6);
        assert!(!cert.warnings.is_empty());
    }

    #[test]
    fn encoding_counts() {
        let sys = two_equations();
        let (_, cert) = lin2_to_tp(&sys, 1, 3).unwrap();
        for bits in 0..8u32 {
            let s: Vec<bool> = (0..3).map(|i| bits >> i & 1 == 1).collect();
            let p = lin2_solution_to_packing(&s, &cert).unwrap();
            assert_eq!(p.len(), 152 - 2 * sys.violated(&s), "{s:?}");
            assert_eq!(packing_to_assignment(&p, &cert), s);
        }
    }
}
