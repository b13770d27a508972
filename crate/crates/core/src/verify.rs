//! Independent solution checking. Objectives are recomputed from the
//! instance; a claimed objective that disagrees is reported as a violation.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::packing::SetCollection;
use crate::ratio::{self, Ratio};
use crate::setsystem::WeightedSetSystem;
use crate::sib::{AlleleCondition, SibInstance};
use crate::sibcheck;
use crate::solution::{Cov2Solution, CoverSolution, MpcSolution, PackingSolution, TrianglePacking, VerificationReport};

#[derive(Debug, Clone, Copy)]
pub enum Instance<'a> {
    Triangles(&'a Graph),
    Packing(&'a SetCollection),
    /// `max_group` bounds the group size when set.
    Cover {
        inst: &'a SibInstance,
        cond: AlleleCondition,
        max_group: Option<usize>,
    },
    Mpc(&'a WeightedSetSystem),
    Cov2 {
        system: &'a WeightedSetSystem,
        k: usize,
    },
}

#[derive(Debug, Clone, Copy)]
pub enum Solution<'a> {
    Triangles(&'a TrianglePacking),
    Packing(&'a PackingSolution),
    Cover(&'a CoverSolution),
    Mpc(&'a MpcSolution),
    Cov2(&'a Cov2Solution),
}

impl Instance<'_> {
    fn kind(&self) -> &'static str {
        match self {
            Instance::Triangles(_) => "triangle packing",
            Instance::Packing(_) => "set packing",
            Instance::Cover { .. } => "sibling cover",
            Instance::Mpc(_) => "maximum profit coverage",
            Instance::Cov2 { .. } => "2-coverage",
        }
    }
}

impl Solution<'_> {
    fn kind(&self) -> &'static str {
        match self {
            Solution::Triangles(_) => "triangle packing",
            Solution::Packing(_) => "set packing",
            Solution::Cover(_) => "sibling cover",
            Solution::Mpc(_) => "maximum profit coverage",
            Solution::Cov2(_) => "2-coverage",
        }
    }
}

pub fn verify(instance: Instance<'_>, solution: Solution<'_>) -> Result<VerificationReport> {
    match (instance, solution) {
        (Instance::Triangles(g), Solution::Triangles(s)) => Ok(triangles(g, s)),
        (Instance::Packing(c), Solution::Packing(s)) => Ok(packing(c, s)),
        (Instance::Cover { inst, cond, max_group }, Solution::Cover(s)) => Ok(cover(inst, cond, max_group, s)),
        (Instance::Mpc(sys), Solution::Mpc(s)) => Ok(mpc(sys, s)),
        (Instance::Cov2 { system, k }, Solution::Cov2(s)) => Ok(cov2(system, k, s)),
        (i, s) => Err(Error::KindMismatch {
            instance: i.kind().to_string(),
            solution: s.kind().to_string(),
        }),
    }
}

/// Indices out of range or repeated; returns the in-range distinct ones.
fn check_indices(selected: &[usize], bound: usize, what: &str, out: &mut Vec<String>) -> Vec<usize> {
    let mut seen = BTreeSet::new();
    for &i in selected {
        if i >= bound {
            out.push(format!("{what} {} out of range (have {bound})", i + 1));
        } else if !seen.insert(i) {
            out.push(format!("{what} {} selected twice", i + 1));
        }
    }
    seen.into_iter().collect()
}

fn disjointness(sets: &[(usize, &[usize])], universe: usize, what: &str, out: &mut Vec<String>) {
    let mut owner: Vec<Option<usize>> = vec![None; universe];
    for &(i, s) in sets {
        for &e in s {
            match owner[e] {
                Some(j) => out.push(format!("{what} {} and {} share element {}", j + 1, i + 1, e + 1)),
                None => owner[e] = Some(i),
            }
        }
    }
}

fn triangles(g: &Graph, s: &TrianglePacking) -> VerificationReport {
    let mut v = Vec::new();
    let mut owner: Vec<Option<usize>> = vec![None; g.node_count()];
    for (t, tri) in s.triangles.iter().enumerate() {
        if tri.iter().any(|&x| x >= g.node_count()) {
            v.push(format!("triangle {} has a node out of range", t + 1));
            continue;
        }
        let [a, b, c] = *tri;
        if a == b || b == c || a == c {
            v.push(format!("triangle {} repeats a node", t + 1));
            continue;
        }
        for (x, y) in [(a, b), (b, c), (a, c)] {
            if !g.has_edge(x, y) {
                v.push(format!("triangle {} lacks edge {}-{}", t + 1, x + 1, y + 1));
            }
        }
        for x in [a, b, c] {
            match owner[x] {
                Some(o) => v.push(format!("triangles {} and {} share node {}", o + 1, t + 1, x + 1)),
                None => owner[x] = Some(t),
            }
        }
    }
    VerificationReport::from_findings(ratio::int(s.triangles.len() as i64), v)
}

fn packing(c: &SetCollection, s: &PackingSolution) -> VerificationReport {
    let mut v = Vec::new();
    let sel = check_indices(&s.selected, c.len(), "set", &mut v);
    let sets: Vec<(usize, &[usize])> = sel.iter().map(|&i| (i, c.set(i))).collect();
    disjointness(&sets, c.universe_size(), "sets", &mut v);
    let weights: Vec<Ratio> = sel.iter().map(|&i| c.weight(i)).collect();
    let objective = ratio::sum(&weights);
    if objective != s.objective {
        v.push(claim_mismatch(s.objective, objective));
    }
    VerificationReport::from_findings(objective, v)
}

fn cover(inst: &SibInstance, cond: AlleleCondition, max_group: Option<usize>, s: &CoverSolution) -> VerificationReport {
    let n = inst.len();
    let mut v = Vec::new();
    let mut covered = vec![false; n];
    for (gi, group) in s.groups.iter().enumerate() {
        let members = check_indices(group, n, "individual", &mut v);
        if members.len() != group.len() {
            v.push(format!("group {} is malformed", gi + 1));
            continue;
        }
        if let Some(a) = max_group {
            if members.len() > a {
                v.push(format!("group {} has {} members, more than {a}", gi + 1, members.len()));
            }
        }
        if !sibcheck::is_feasible(inst, &members, cond) {
            v.push(format!("group {} violates the {}-allele condition", gi + 1, cond.k()));
        }
        for &i in &members {
            covered[i] = true;
        }
    }
    let missing: Vec<String> = (0..n).filter(|&i| !covered[i]).map(|i| (i + 1).to_string()).collect();
    if !missing.is_empty() {
        v.push(format!("individuals not covered: {}", missing.join(" ")));
    }
    VerificationReport::from_findings(ratio::int(s.groups.len() as i64), v)
}

fn mpc(sys: &WeightedSetSystem, s: &MpcSolution) -> VerificationReport {
    let mut v = Vec::new();
    let sel = check_indices(&s.selected, sys.set_count(), "set", &mut v);
    let mut covered = vec![false; sys.universe_size()];
    let mut profit = Ratio::from_integer(0);
    for &i in &sel {
        profit -= sys.cost(i);
        for &e in sys.set(i) {
            if !covered[e] {
                covered[e] = true;
                profit += sys.weight(e);
            }
        }
    }
    if profit != s.profit {
        v.push(claim_mismatch(s.profit, profit));
    }
    VerificationReport::from_findings(profit, v)
}

fn cov2(sys: &WeightedSetSystem, k: usize, s: &Cov2Solution) -> VerificationReport {
    let mut v = Vec::new();
    let sel = check_indices(&s.selected, sys.set_count(), "set", &mut v);
    if sel.len() > k {
        v.push(format!("{} sets selected, more than k = {k}", sel.len()));
    }
    let mut count = vec![0usize; sys.universe_size()];
    for &i in &sel {
        for &e in sys.set(i) {
            count[e] += 1;
        }
    }
    let twice: Vec<usize> = (0..count.len()).filter(|&e| count[e] >= 2).collect();
    let mut claimed = s.twice_covered.clone();
    claimed.sort_unstable();
    claimed.dedup();
    if claimed != twice {
        v.push(format!(
            "claimed twice-covered set has {} elements, recomputed {}",
            claimed.len(),
            twice.len()
        ));
    }
    VerificationReport::from_findings(ratio::int(twice.len() as i64), v)
}

fn claim_mismatch(claimed: Ratio, actual: Ratio) -> String {
    format!(
        "claimed objective {} but recomputed {}",
        ratio::format_ratio(&claimed),
        ratio::format_ratio(&actual)
    )
}
