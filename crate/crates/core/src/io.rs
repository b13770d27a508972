//! Text formats (1-based ids) and content digests.
//!
//! * Graph: `p <nodes> <edges>`, then `e <u> <v> [weight]`; `c` starts a comment.
//! * Set system: `u <n>`, then `w <element> <weight>` (default weight 1) and
//!   `s <cost> <e1> <e2> ...` per set.
//! * Genotypes: tab-separated, header `id l1a l1b l2a l2b ...`, one row per
//!   individual with integer alleles.
//! * 3-LIN-2: `v <variables>`, then `q <lit> <lit> <lit> <rhs>` where a literal
//!   is a 1-based variable id, negative when negated, and rhs is 0 or 1.

use std::fmt::Write as _;

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::lin2::{Equation, Lin2System, Literal};
use crate::ratio::{self, format_ratio, parse_ratio, Ratio};
use crate::setsystem::WeightedSetSystem;
use crate::sib::SibInstance;

/// Parsed value plus non-fatal findings (e.g. collapsed duplicate edges).
#[derive(Debug, Clone)]
pub struct Parsed<T> {
    pub value: T,
    pub warnings: Vec<String>,
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let fields: Vec<&str> = line.split_whitespace().collect();
        match fields.first() {
            None => None,
            Some(&"c") => None,
            Some(_) => Some((i + 1, fields)),
        }
    })
}

fn parse_num<T: std::str::FromStr>(line: usize, field: &str, what: &str) -> Result<T> {
    field
        .parse()
        .map_err(|_| Error::parse(line, format!("expected {what}, found `{field}`")))
}

fn one_based(line: usize, field: &str, limit: usize, what: &str) -> Result<usize> {
    let v: usize = parse_num(line, field, what)?;
    if v == 0 || v > limit {
        return Err(Error::parse(line, format!("{what} {v} outside 1..={limit}")));
    }
    Ok(v - 1)
}

pub fn parse_graph(text: &str) -> Result<Parsed<Graph>> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges: Vec<(usize, usize, Option<Ratio>)> = Vec::new();
    let mut warnings = Vec::new();
    for (line, f) in content_lines(text) {
        match f[0] {
            "p" => {
                if header.is_some() {
                    return Err(Error::parse(line, "second `p` header"));
                }
                // Accept both `p <n> <m>` and the DIMACS `p edge <n> <m>`.
                let nums: Vec<&str> = f[1..].iter().copied().filter(|s| s.parse::<usize>().is_ok()).collect();
                if nums.len() != 2 {
                    return Err(Error::parse(line, "header must be `p <nodes> <edges>`"));
                }
                header = Some((parse_num(line, nums[0], "node count")?, parse_num(line, nums[1], "edge count")?));
            }
            "e" => {
                let (n, _) = header.ok_or_else(|| Error::parse(line, "edge before `p` header"))?;
                if f.len() != 3 && f.len() != 4 {
                    return Err(Error::parse(line, "edge line must be `e <u> <v> [weight]`"));
                }
                let u = one_based(line, f[1], n, "node")?;
                let v = one_based(line, f[2], n, "node")?;
                if u == v {
                    return Err(Error::parse(line, format!("self-loop at node {}", u + 1)));
                }
                let w = match f.get(3) {
                    Some(w) => Some(parse_ratio(w).map_err(|e| Error::parse(line, e.to_string()))?),
                    None => None,
                };
                edges.push((u, v, w));
            }
            other => return Err(Error::parse(line, format!("unknown line type `{other}`"))),
        }
    }
    let (n, m) = header.ok_or_else(|| Error::parse(0, "missing `p` header"))?;
    if edges.len() != m {
        warnings.push(format!("header declares {m} edges, file has {}", edges.len()));
    }
    let weighted = edges.iter().any(|e| e.2.is_some());
    let graph = if weighted {
        let (g, dups) = {
            let mut keys: Vec<(usize, usize)> = edges.iter().map(|e| (e.0.min(e.1), e.0.max(e.1))).collect();
            let before = keys.len();
            keys.sort_unstable();
            keys.dedup();
            let g = Graph::weighted(n, edges.iter().map(|e| (e.0, e.1, e.2.unwrap_or_else(|| ratio::int(1)))))?;
            (g, before - keys.len())
        };
        if dups > 0 {
            warnings.push(format!("{dups} duplicate edge(s) merged, weights summed"));
        }
        g
    } else {
        let (g, dups) = Graph::with_report(n, edges.iter().map(|e| (e.0, e.1)))?;
        if dups > 0 {
            warnings.push(format!("{dups} duplicate edge(s) collapsed"));
        }
        g
    };
    Ok(Parsed { value: graph, warnings })
}

pub fn graph_to_text(g: &Graph) -> String {
    let mut out = format!("p {} {}\n", g.node_count(), g.edge_count());
    for (i, &(u, v)) in g.edges().iter().enumerate() {
        match g.weights() {
            Some(w) => writeln!(out, "e {} {} {}", u + 1, v + 1, format_ratio(&w[i])).unwrap(),
            None => writeln!(out, "e {} {}", u + 1, v + 1).unwrap(),
        }
    }
    out
}

pub fn parse_set_system(text: &str) -> Result<WeightedSetSystem> {
    let mut weights: Option<Vec<Ratio>> = None;
    let mut sets = Vec::new();
    let mut costs = Vec::new();
    for (line, f) in content_lines(text) {
        match f[0] {
            "u" => {
                if weights.is_some() {
                    return Err(Error::parse(line, "second `u` header"));
                }
                if f.len() != 2 {
                    return Err(Error::parse(line, "header must be `u <n>`"));
                }
                let n: usize = parse_num(line, f[1], "universe size")?;
                weights = Some(vec![ratio::int(1); n]);
            }
            "w" => {
                let w = weights.as_mut().ok_or_else(|| Error::parse(line, "weight before `u` header"))?;
                if f.len() != 3 {
                    return Err(Error::parse(line, "weight line must be `w <element> <weight>`"));
                }
                let e = one_based(line, f[1], w.len(), "element")?;
                let value = parse_ratio(f[2]).map_err(|e| Error::parse(line, e.to_string()))?;
                if !ratio::is_nonnegative(&value) {
                    return Err(Error::parse(line, "negative element weight"));
                }
                w[e] = value;
            }
            "s" => {
                let n = weights.as_ref().ok_or_else(|| Error::parse(line, "set before `u` header"))?.len();
                if f.len() < 2 {
                    return Err(Error::parse(line, "set line must be `s <cost> <elements...>`"));
                }
                let cost = parse_ratio(f[1]).map_err(|e| Error::parse(line, e.to_string()))?;
                if !ratio::is_nonnegative(&cost) {
                    return Err(Error::parse(line, "negative set cost"));
                }
                let members = f[2..]
                    .iter()
                    .map(|x| one_based(line, x, n, "element"))
                    .collect::<Result<Vec<_>>>()?;
                sets.push(members);
                costs.push(cost);
            }
            other => return Err(Error::parse(line, format!("unknown line type `{other}`"))),
        }
    }
    let weights = weights.ok_or_else(|| Error::parse(0, "missing `u` header"))?;
    WeightedSetSystem::new(weights, sets, costs)
}

pub fn set_system_to_text(s: &WeightedSetSystem) -> String {
    let mut out = format!("u {}\n", s.universe_size());
    for (e, w) in s.element_weights().iter().enumerate() {
        if *w != ratio::int(1) {
            writeln!(out, "w {} {}", e + 1, format_ratio(w)).unwrap();
        }
    }
    for (i, set) in s.sets().iter().enumerate() {
        write!(out, "s {}", format_ratio(&s.cost(i))).unwrap();
        for &e in set {
            write!(out, " {}", e + 1).unwrap();
        }
        out.push('\n');
    }
    out
}

pub fn parse_sib_instance(text: &str) -> Result<SibInstance> {
    let mut rows = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split_whitespace().collect::<Vec<_>>()))
        .filter(|(_, f)| !f.is_empty());
    let (hline, header) = rows.next().ok_or_else(|| Error::parse(0, "missing header row"))?;
    if header.len() % 2 == 0 {
        return Err(Error::parse(hline, "header must be `id` followed by two columns per locus"));
    }
    let loci = (header.len() - 1) / 2;
    let mut individuals = Vec::new();
    for (line, f) in rows {
        if f.len() != header.len() {
            return Err(Error::parse(
                line,
                format!("row has {} columns, header has {}", f.len(), header.len()),
            ));
        }
        let mut genotype = Vec::with_capacity(loci);
        for j in 0..loci {
            let a: i64 = parse_num(line, f[1 + 2 * j], "integer allele")?;
            let b: i64 = parse_num(line, f[2 + 2 * j], "integer allele")?;
            genotype.push((a, b));
        }
        individuals.push(genotype);
    }
    SibInstance::new(loci, individuals)
}

pub fn sib_instance_to_text(inst: &SibInstance) -> String {
    let mut out = String::from("id");
    for j in 1..=inst.locus_count() {
        write!(out, "\tl{j}a\tl{j}b").unwrap();
    }
    out.push('\n');
    for (i, row) in inst.individuals().iter().enumerate() {
        write!(out, "{}", i + 1).unwrap();
        for &(a, b) in row {
            write!(out, "\t{a}\t{b}").unwrap();
        }
        out.push('\n');
    }
    out
}

pub fn parse_lin2(text: &str) -> Result<Lin2System> {
    let mut vars: Option<usize> = None;
    let mut equations = Vec::new();
    for (line, f) in content_lines(text) {
        match f[0] {
            "v" => {
                if f.len() != 2 {
                    return Err(Error::parse(line, "header must be `v <variables>`"));
                }
                vars = Some(parse_num(line, f[1], "variable count")?);
            }
            "q" => {
                let n = vars.ok_or_else(|| Error::parse(line, "equation before `v` header"))?;
                if f.len() != 5 {
                    return Err(Error::parse(line, "equation must be `q <lit> <lit> <lit> <rhs>`"));
                }
                let mut lits = [Literal::pos(0); 3];
                for (slot, field) in lits.iter_mut().zip(&f[1..4]) {
                    let v: i64 = parse_num(line, field, "literal")?;
                    let var = v.unsigned_abs() as usize;
                    if v == 0 || var > n {
                        return Err(Error::parse(line, format!("literal {v} outside ±1..={n}")));
                    }
                    *slot = Literal {
                        variable: var - 1,
                        negated: v < 0,
                    };
                }
                let rhs = match f[4] {
                    "0" => false,
                    "1" => true,
                    other => return Err(Error::parse(line, format!("rhs must be 0 or 1, found `{other}`"))),
                };
                equations.push(Equation { literals: lits, rhs });
            }
            other => return Err(Error::parse(line, format!("unknown line type `{other}`"))),
        }
    }
    let n = vars.ok_or_else(|| Error::parse(0, "missing `v` header"))?;
    Lin2System::new(n, equations)
}

pub fn lin2_to_text(sys: &Lin2System) -> String {
    let mut out = format!("v {}\n", sys.variable_count());
    for eq in sys.equations() {
        out.push('q');
        for l in eq.literals {
            let id = l.variable as i64 + 1;
            write!(out, " {}", if l.negated { -id } else { id }).unwrap();
        }
        writeln!(out, " {}", u8::from(eq.rhs)).unwrap();
    }
    out
}

/// Hex SHA-256 of arbitrary bytes.
pub fn digest_bytes(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

pub fn graph_digest(g: &Graph) -> String {
    digest_bytes(graph_to_text(g).as_bytes())
}

pub fn set_system_digest(s: &WeightedSetSystem) -> String {
    digest_bytes(set_system_to_text(s).as_bytes())
}

pub fn sib_digest(inst: &SibInstance) -> String {
    digest_bytes(sib_instance_to_text(inst).as_bytes())
}

pub fn lin2_digest(sys: &Lin2System) -> String {
    digest_bytes(lin2_to_text(sys).as_bytes())
}
