//! Acceptance criteria, grouped into named suites. Every criterion compares
//! the library against a brute-force oracle written here or against an exact
//! counting identity, and reports what it measured.

use std::collections::BTreeSet;
use std::fs;
use std::path::PathBuf;
use std::time::Instant;

use clap::Parser;
use packcover_core::cov2::{cov2_combined, cov2_exact, cov2_pairwise, cov2_two_phase, coverage, ds_to_cov2, maxcov_greedy};
use packcover_core::generate::{
    gen_connected_graph, gen_random_cubic, gen_random_graph, gen_random_sib, gen_random_system, gen_sibling_families,
};
use packcover_core::io::{graph_to_text, lin2_to_text, set_system_to_text, sib_instance_to_text};
use packcover_core::lin2::Equation;
use packcover_core::mpc::{mpc_2imp, mpc_exact, mpc_exact_small_a, mpc_via_setpacking, TwoImpParams};
use packcover_core::packing::{enumerate_triangles, pack_triangles, TpAlgorithm};
use packcover_core::ratio::int;
use packcover_core::sibcheck::{check_2allele, check_4allele, check_group, enumerate_groups, is_feasible};
use packcover_core::sibcover::{solve_a3, solve_a4, solve_exact_cover, solve_threshold_greedy};
use packcover_core::solution::TrianglePacking;
use packcover_core::verify::{verify, Instance, Solution};
use packcover_core::{AlleleCondition, CoverSolution, Graph, Lin2System, Literal, Ratio, SibInstance, WeightedSetSystem};
use packcover_reductions::cut::{cut_solution_to_cover, cut_to_allele, uncut_edges, Role};
use packcover_reductions::is_mpc::is_to_mpc;
use packcover_reductions::labelcover::{labelcover_to_allele, tp_to_labelcover};
use packcover_reductions::lin2tp::amplifier::{build_amplifier, check_amplifier};
use packcover_reductions::lin2tp::gadget::{synth_equation_gadget, GadgetKind};
use packcover_reductions::lin2tp::{lin2_solution_to_packing, lin2_to_tp, normalize_packing};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;

use crate::args::Cli;
use crate::report::Outcome;
use crate::run::{dispatch, RunConfig};

type CheckResult = Result<Check, Box<dyn std::error::Error>>;

pub struct Check {
    pub passed: bool,
    pub detail: String,
}

pub struct Criterion {
    pub id: u8,
    pub name: &'static str,
    /// Wall-clock limit that is part of the criterion.
    pub limit_ms: Option<u64>,
    run: fn(&RunConfig) -> CheckResult,
}

#[derive(Debug, Clone, Serialize)]
pub struct CriterionResult {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub wall_ms: u64,
}

impl CriterionResult {
    pub fn line(&self) -> String {
        format!(
            "[{}] {:>2} {:<34} {:>7} ms  {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.wall_ms,
            self.detail
        )
    }
}

pub const SUITES: &[(&str, &[u8], &str)] = &[
    ("acceptance", &[1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11], "every criterion"),
    ("oracles", &[1, 2], "group feasibility against orientation search"),
    ("ratios", &[3, 4, 9, 10], "approximation ratios against exact optima"),
    ("reductions", &[5, 6, 7, 8], "reduction identities and correspondences"),
    ("gadgets", &[6], "equation gadget tables, encodings and normalization"),
    ("determinism", &[11], "repeated commands give identical digests"),
];

pub fn criteria() -> Vec<Criterion> {
    vec![
        Criterion { id: 1, name: "feasibility oracles", limit_ms: Some(10_000), run: c1_feasibility },
        Criterion { id: 2, name: "p,q,r,s worked example", limit_ms: None, run: c2_worked_example },
        Criterion { id: 3, name: "triangle packing local search", limit_ms: Some(60_000), run: c3_tp_ratio },
        Criterion { id: 4, name: "sibling cover ratios", limit_ms: None, run: c4_cover_ratios },
        Criterion { id: 5, name: "triangles to 2-label cover", limit_ms: None, run: c5_label_cover },
        Criterion { id: 6, name: "equation gadgets and normalization", limit_ms: None, run: c6_gadgets },
        Criterion { id: 7, name: "cut gadgets on K4", limit_ms: Some(120_000), run: c7_cut },
        Criterion { id: 8, name: "independent set to profit cover", limit_ms: None, run: c8_is_mpc },
        Criterion { id: 9, name: "profit cover ratios", limit_ms: None, run: c9_mpc_ratios },
        Criterion { id: 10, name: "densest subgraph and 2-coverage", limit_ms: None, run: c10_cov2 },
        Criterion { id: 11, name: "determinism", limit_ms: None, run: c11_determinism },
    ]
}

pub fn run_criterion(c: &Criterion, cfg: &RunConfig) -> CriterionResult {
    let t = Instant::now();
    let outcome = std::panic::catch_unwind(|| (c.run)(cfg));
    let wall_ms = t.elapsed().as_millis() as u64;
    let (mut passed, mut detail) = match outcome {
        Ok(Ok(check)) => (check.passed, check.detail),
        Ok(Err(e)) => (false, format!("error: {e}")),
        Err(_) => (false, "panicked".to_string()),
    };
    if let Some(limit) = c.limit_ms {
        detail = format!("{detail}; limit {limit} ms");
        if wall_ms >= limit {
            passed = false;
        }
    }
    CriterionResult { id: c.id, name: c.name, passed, detail, wall_ms }
}

/// Runs a registered suite, or returns `None` for an unknown name.
pub fn run_suite(name: &str, cfg: &RunConfig) -> Option<Vec<CriterionResult>> {
    let (_, ids, _) = SUITES.iter().find(|(n, _, _)| *n == name)?;
    Some(
        criteria()
            .iter()
            .filter(|c| ids.contains(&c.id))
            .map(|c| run_criterion(c, cfg))
            .collect(),
    )
}

pub fn run_named(name: Option<&str>, cfg: &RunConfig) -> Outcome {
    let Some(name) = name.filter(|n| !n.is_empty()) else {
        let stdout = SUITES
            .iter()
            .map(|(n, ids, about)| format!("{n:<12} {ids:?}  {about}"))
            .collect();
        let json = json!(SUITES.iter().map(|(n, ids, about)| json!({"name": n, "criteria": ids, "about": about})).collect::<Vec<_>>());
        return Outcome { stdout, json: Some(json), ..Outcome::default() };
    };
    let Some(results) = run_suite(name, cfg) else {
        let known: Vec<&str> = SUITES.iter().map(|s| s.0).collect();
        return Outcome {
            notes: vec![format!("usage: unknown suite `{name}`; known suites: {}", known.join(", "))],
            exit: 2,
            ..Outcome::default()
        };
    };
    let passed = results.iter().all(|r| r.passed);
    let mut stdout: Vec<String> = results.iter().map(CriterionResult::line).collect();
    stdout.push(format!(
        "{}: {}/{} criteria passed",
        name,
        results.iter().filter(|r| r.passed).count(),
        results.len()
    ));
    Outcome {
        stdout,
        json: Some(json!({ "suite": name, "seed": cfg.seed, "passed": passed, "criteria": results })),
        notes: Vec::new(),
        exit: if passed { 0 } else { 1 },
        digests: Vec::new(),
    }
}

// ---- bookkeeping ----

#[derive(Default)]
struct Tally {
    cases: usize,
    failures: usize,
    first: Vec<String>,
}

impl Tally {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures += 1;
            if self.first.len() < 3 {
                self.first.push(what());
            }
        }
    }

    fn finish(self, summary: String) -> CheckResult {
        let mut detail = format!("{summary}; {} checks, {} violations", self.cases, self.failures);
        if !self.first.is_empty() {
            detail = format!("{detail} (first: {})", self.first.join("; "));
        }
        Ok(Check { passed: self.failures == 0, detail })
    }
}

fn criterion_rng(cfg: &RunConfig, id: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(cfg.seed ^ (id << 48))
}

fn as_f64(r: Ratio) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

fn subsets(n: usize) -> impl Iterator<Item = Vec<usize>> {
    (0u32..1 << n).map(move |mask| (0..n).filter(|&i| mask >> i & 1 == 1).collect())
}

fn complete(n: usize) -> Graph {
    Graph::new(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).expect("complete graph")
}

fn cycle(n: usize) -> Graph {
    Graph::new(n, (0..n).map(|i| (i, (i + 1) % n))).expect("cycle")
}

fn petersen() -> Graph {
    let mut e = Vec::new();
    for i in 0..5 {
        e.push((i, (i + 1) % 5));
        e.push((i, i + 5));
        e.push((i + 5, (i + 2) % 5 + 5));
    }
    Graph::new(10, e).expect("petersen graph")
}

fn pqrs() -> SibInstance {
    SibInstance::new(
        2,
        vec![
            vec![(1, 2), (5, 5)],
            vec![(3, 4), (5, 5)],
            vec![(1, 1), (5, 5)],
            vec![(5, 5), (5, 5)],
        ],
    )
    .expect("worked example")
}

// ---- oracles ----

fn orientation_oracle(inst: &SibInstance, group: &[usize]) -> bool {
    (0..inst.locus_count()).all(|j| {
        (0u32..1 << group.len()).any(|mask| {
            let mut first = BTreeSet::new();
            let mut second = BTreeSet::new();
            for (b, &p) in group.iter().enumerate() {
                let (x, y) = inst.genotype(p, j);
                let (x, y) = if mask >> b & 1 == 1 { (y, x) } else { (x, y) };
                first.insert(x);
                second.insert(y);
            }
            first.len() <= 2 && second.len() <= 2
        })
    })
}

fn union_oracle(inst: &SibInstance, group: &[usize]) -> bool {
    (0..inst.locus_count()).all(|j| {
        let all: BTreeSet<i64> = group
            .iter()
            .flat_map(|&p| {
                let (x, y) = inst.genotype(p, j);
                [x, y]
            })
            .collect();
        all.len() <= 4
    })
}

fn feasible_oracle(inst: &SibInstance, group: &[usize], cond: AlleleCondition) -> bool {
    match cond {
        AlleleCondition::Two => orientation_oracle(inst, group),
        AlleleCondition::Four => union_oracle(inst, group),
    }
}

/// Fewest feasible groups of size ≤ `a` partitioning everyone, by dynamic
/// programming over subsets.
fn cover_oracle(inst: &SibInstance, cond: AlleleCondition, a: usize) -> usize {
    let n = inst.len();
    let full = (1usize << n) - 1;
    let ok: Vec<bool> = (0..=full)
        .map(|mask| {
            let g: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
            g.len() <= a && feasible_oracle(inst, &g, cond)
        })
        .collect();
    let mut best = vec![usize::MAX; full + 1];
    best[0] = 0;
    for mask in 1..=full {
        let low = mask & mask.wrapping_neg();
        let rest = mask ^ low;
        let mut sub = rest;
        loop {
            let g = sub | low;
            if ok[g] && best[mask ^ g] != usize::MAX {
                best[mask] = best[mask].min(best[mask ^ g] + 1);
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & rest;
        }
    }
    best[full]
}

fn largest_group(inst: &SibInstance, cond: AlleleCondition) -> usize {
    subsets(inst.len()).filter(|g| feasible_oracle(inst, g, cond)).map(|g| g.len()).max().unwrap_or(0)
}

/// Most node-disjoint triangles: the lowest free node is left out or closed
/// into a triangle with two higher free nodes.
fn tp_oracle(g: &Graph) -> usize {
    fn go(g: &Graph, used: &mut [bool], from: usize) -> usize {
        let Some(u) = (from..g.node_count()).find(|&u| !used[u]) else {
            return 0;
        };
        used[u] = true;
        let mut best = go(g, used, u + 1);
        let nb: Vec<usize> = g.neighbors(u).iter().copied().filter(|&v| v > u && !used[v]).collect();
        for (i, &v) in nb.iter().enumerate() {
            for &w in &nb[i + 1..] {
                if g.has_edge(v, w) {
                    used[v] = true;
                    used[w] = true;
                    best = best.max(1 + go(g, used, u + 1));
                    used[v] = false;
                    used[w] = false;
                }
            }
        }
        used[u] = false;
        best
    }
    go(g, &mut vec![false; g.node_count()], 0)
}

fn max_independent_set(g: &Graph) -> usize {
    (0u32..1 << g.node_count())
        .filter(|&m| g.edges().iter().all(|&(u, v)| m >> u & 1 == 0 || m >> v & 1 == 0))
        .map(|m| m.count_ones() as usize)
        .max()
        .unwrap_or(0)
}

fn profit_oracle(inst: &WeightedSetSystem) -> Ratio {
    let m = inst.set_count();
    (0u32..1 << m)
        .map(|mask| {
            let mut seen = vec![false; inst.universe_size()];
            let mut total = int(0);
            for i in (0..m).filter(|&i| mask >> i & 1 == 1) {
                total -= inst.cost(i);
                for &e in inst.set(i) {
                    if !seen[e] {
                        seen[e] = true;
                        total += inst.element_weights()[e];
                    }
                }
            }
            total
        })
        .max()
        .unwrap_or_else(|| int(0))
}

fn combos(m: usize, k: usize) -> Vec<Vec<usize>> {
    (0u32..1 << m)
        .filter(|mask| mask.count_ones() as usize == k.min(m))
        .map(|mask| (0..m).filter(|&i| mask >> i & 1 == 1).collect())
        .collect()
}

fn densest(g: &Graph, k: usize) -> usize {
    combos(g.node_count(), k)
        .into_iter()
        .map(|nodes| g.edges().iter().filter(|(u, v)| nodes.contains(u) && nodes.contains(v)).count())
        .max()
        .unwrap_or(0)
}

fn twice_oracle(s: &WeightedSetSystem, k: usize) -> usize {
    combos(s.set_count(), k)
        .into_iter()
        .map(|sel| {
            (0..s.universe_size())
                .filter(|e| sel.iter().filter(|&&i| s.set(i).contains(e)).count() >= 2)
                .count()
        })
        .max()
        .unwrap_or(0)
}

fn cover_is_valid(inst: &SibInstance, cond: AlleleCondition, a: Option<usize>, c: &CoverSolution) -> packcover_core::Result<bool> {
    Ok(verify(Instance::Cover { inst, cond, max_group: a }, Solution::Cover(c))?.valid)
}

// ---- criteria ----

fn c1_feasibility(cfg: &RunConfig) -> CheckResult {
    let mut rng = criterion_rng(cfg, 1);
    let mut tally = Tally::default();
    let mut groups = 0usize;
    let mut feasible2 = 0usize;
    for i in 0..200 {
        let n = rng.gen_range(3..=8);
        let loci = rng.gen_range(1..=4);
        let pool = rng.gen_range(2..=6);
        let inst = gen_random_sib(n, loci, pool, rng.gen())?;
        for g in subsets(n).filter(|g| g.len() <= 6) {
            let two = check_2allele(&inst, &g)?;
            let four = check_4allele(&inst, &g)?;
            groups += 1;
            feasible2 += usize::from(two);
            tally.check(two == orientation_oracle(&inst, &g), || format!("instance {i} group {g:?}: 2-allele {two}"));
            tally.check(four == union_oracle(&inst, &g), || format!("instance {i} group {g:?}: 4-allele {four}"));
            tally.check(!two || four, || format!("instance {i} group {g:?}: 2-allele without 4-allele"));
        }
    }
    tally.finish(format!("{groups} groups over 200 instances, {feasible2} 2-allele feasible"))
}

fn c2_worked_example(_: &RunConfig) -> CheckResult {
    let inst = pqrs();
    let pqr = [0, 1, 2];
    let all = [0, 1, 2, 3];
    let got = [
        check_group(&inst, &pqr, 4)?,
        check_group(&inst, &pqr, 2)?,
        check_group(&inst, &all, 4)?,
    ];
    let mut tally = Tally::default();
    tally.check(got == [true, false, false], || format!("got {got:?}"));
    tally.check(
        [union_oracle(&inst, &pqr), orientation_oracle(&inst, &pqr), union_oracle(&inst, &all)] == got,
        || "oracles disagree".into(),
    );
    tally.finish(format!(
        "{{p,q,r}} 4-allele {}, 2-allele {}; {{p,q,r,s}} 4-allele {}",
        got[0], got[1], got[2]
    ))
}

fn c3_tp_ratio(cfg: &RunConfig) -> CheckResult {
    let mut rng = criterion_rng(cfg, 3);
    let mut tally = Tally::default();
    let mut worst: Option<f64> = None;
    for i in 0..100 {
        let n = 4 + i % 9;
        let p = rng.gen_range(0.3..0.8);
        let g = gen_random_graph(n, p, rng.gen())?;
        let opt = tp_oracle(&g);
        let exact = pack_triangles(&g, TpAlgorithm::Exact, &cfg.budget)?;
        tally.check(exact.len() == opt, || format!("graph {i}: exact {} vs oracle {opt}", exact.len()));
        let local = pack_triangles(&g, TpAlgorithm::Local(2), &cfg.budget)?;
        let valid = verify(Instance::Triangles(&g), Solution::Triangles(&local))?.valid;
        tally.check(valid, || format!("graph {i}: invalid packing"));
        // local ≥ ⌈OPT/1.5⌉ is the same as 3·local ≥ 2·OPT for integers.
        tally.check(3 * local.len() >= 2 * opt, || format!("graph {i}: local {} vs OPT {opt}", local.len()));
        if opt > 0 {
            let r = local.len() as f64 / opt as f64;
            worst = Some(worst.map_or(r, |w| w.min(r)));
        }
    }
    tally.finish(format!("100 graphs n<=12, worst local/OPT {:.3} (need >= 0.667)", worst.unwrap_or(1.0)))
}

fn sib_suite(seed: u64, families: usize, per: usize) -> packcover_core::Result<SibInstance> {
    if seed.is_multiple_of(3) {
        gen_random_sib(families * per, 2, 4, seed)
    } else {
        Ok(gen_sibling_families(families, per, 2, 6, seed)?.0)
    }
}

fn c4_cover_ratios(cfg: &RunConfig) -> CheckResult {
    let mut rng = criterion_rng(cfg, 4);
    let eps = Ratio::new(1, 100);
    let mut tally = Tally::default();
    let mut worst = [0f64; 3];
    let conds = [AlleleCondition::Two, AlleleCondition::Four];
    let a3_bound = Ratio::new(7, 6) + Ratio::new(1, 100);
    let a4_bound = Ratio::new(3, 2) + Ratio::new(1, 100);
    for i in 0..30 {
        let inst = sib_suite(rng.gen(), 3, 3)?;
        for cond in conds {
            let opt = cover_oracle(&inst, cond, 3);
            let sol = solve_a3(&inst, cond, eps, &cfg.budget)?;
            tally.check(cover_is_valid(&inst, cond, Some(3), &sol)?, || format!("a3 {i}: invalid cover"));
            tally.check(int(sol.len() as i64) <= a3_bound * opt as i64, || format!("a3 {i}: {} vs {opt}", sol.len()));
            worst[0] = worst[0].max(sol.len() as f64 / opt as f64);
        }
    }
    for i in 0..30 {
        let inst = sib_suite(rng.gen(), 2, 4)?;
        for cond in conds {
            let opt = cover_oracle(&inst, cond, 4);
            let sol = solve_a4(&inst, cond, eps, &cfg.budget)?;
            tally.check(cover_is_valid(&inst, cond, Some(4), &sol)?, || format!("a4 {i}: invalid cover"));
            tally.check(int(sol.len() as i64) <= a4_bound * opt as i64, || format!("a4 {i}: {} vs {opt}", sol.len()));
            worst[1] = worst[1].max(sol.len() as f64 / opt as f64);
        }
    }
    for i in 0..30 {
        let inst = sib_suite(rng.gen(), 2 + i % 2, 3 + i % 3)?;
        let inst = inst.subinstance(&(0..inst.len().min(10)).collect::<Vec<_>>());
        for cond in conds {
            let a = largest_group(&inst, cond);
            let opt = cover_oracle(&inst, cond, a);
            let sol = solve_threshold_greedy(&inst, cond, 3, &cfg.budget)?;
            tally.check(cover_is_valid(&inst, cond, None, &sol)?, || format!("threshold {i}: invalid cover"));
            let bound = Ratio::new(a as i64, 3) - 1 + Ratio::new(11, 6);
            tally.check(int(sol.len() as i64) <= bound * opt as i64, || {
                format!("threshold {i}: {} vs {opt} with a={a}", sol.len())
            });
            worst[2] = worst[2].max(sol.len() as f64 / (as_f64(bound) * opt as f64));
        }
    }
    tally.finish(format!(
        "worst a3/OPT3 {:.3} (<= 1.177), a4/OPT4 {:.3} (<= 1.51), threshold/(bound*OPT) {:.3} (<= 1)",
        worst[0], worst[1], worst[2]
    ))
}

fn c5_label_cover(cfg: &RunConfig) -> CheckResult {
    let mut rng = criterion_rng(cfg, 5);
    let mut tally = Tally::default();
    let mut triples = 0usize;
    for i in 0..50 {
        let n = 3 + i % 6;
        let g = gen_connected_graph(n, rng.gen_range(0.3..0.9), rng.gen())?;
        let (lc, _) = tp_to_labelcover(&g);
        let lifts = [AlleleCondition::Two, AlleleCondition::Four].map(|c| (c, labelcover_to_allele(&lc, c)));
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    let tri = g.has_edge(a, b) && g.has_edge(b, c) && g.has_edge(a, c);
                    triples += 1;
                    tally.check(lc.is_feasible(&[a, b, c]) == tri, || format!("graph {i}: label triple {a},{b},{c}"));
                    for (cond, inst) in &lifts {
                        tally.check(is_feasible(inst, &[a, b, c], *cond) == tri, || {
                            format!("graph {i}: {cond:?} triple {a},{b},{c}")
                        });
                    }
                }
            }
        }
        let t = tp_oracle(&g);
        let exact_tp = pack_triangles(&g, TpAlgorithm::Exact, &cfg.budget)?.len();
        tally.check(exact_tp == t, || format!("graph {i}: exact packing {exact_tp} vs oracle {t}"));
        let expected = t + (n - 3 * t).div_ceil(2);
        for (cond, inst) in &lifts {
            let opt = solve_exact_cover(inst, *cond, Some(3), &cfg.budget)?;
            tally.check(cover_is_valid(inst, *cond, Some(3), &opt)?, || format!("graph {i}: invalid cover"));
            tally.check(opt.len() == expected, || format!("graph {i} {cond:?}: cover {} vs {expected}", opt.len()));
        }
    }
    tally.finish(format!("50 connected graphs n<=8, {triples} triples, both lifts"))
}

/// Fewest non-self-sufficient nodes left uncovered by any packing of the
/// gadget's triangles that avoids the literal nodes in `mask`.
fn gadget_uncovered(n: usize, edges: &[(usize, usize)], ss: &[usize], mask: u8) -> packcover_core::Result<usize> {
    let g = Graph::new(n, edges.iter().copied())?;
    let tris: Vec<Vec<usize>> = enumerate_triangles(&g).sets().to_vec();
    let blocked: Vec<bool> = (0..n).map(|v| v < 3 && mask >> v & 1 == 1).collect();
    let mut best = usize::MAX;
    for pick in 0u32..1 << tris.len() {
        let mut used = blocked.clone();
        let ok = (0..tris.len()).filter(|&t| pick >> t & 1 == 1).all(|t| {
            tris[t].iter().all(|&v| {
                let free = !used[v];
                used[v] = true;
                free
            })
        });
        if ok {
            let left = (0..n).filter(|v| !used[*v] && !ss.contains(v)).count();
            best = best.min(left);
        }
    }
    Ok(best)
}

fn fill(g: &Graph, order: &[Vec<usize>]) -> TrianglePacking {
    let mut used = vec![false; g.node_count()];
    let mut out = Vec::new();
    for t in order {
        if t.iter().all(|&v| !used[v]) {
            for &v in t {
                used[v] = true;
            }
            out.push([t[0], t[1], t[2]]);
        }
    }
    TrianglePacking::new(out)
}

fn c6_gadgets(cfg: &RunConfig) -> CheckResult {
    let mut tally = Tally::default();
    for kind in [GadgetKind::Zero, GadgetKind::One] {
        let gadget = synth_equation_gadget(kind)?;
        tally.check(gadget.node_count() == kind.node_count(), || format!("{kind:?}: node count"));
        for mask in 0u8..8 {
            let want = usize::from(!kind.is_satisfied(mask));
            let brute = gadget_uncovered(kind.node_count(), &gadget.edges, &kind.self_sufficient(), mask)?;
            let row = gadget.row(mask);
            tally.check(brute == want && row.min_uncovered == want, || {
                format!("{kind:?} row {mask:03b}: brute {brute}, table {}, want {want}", row.min_uncovered)
            });
        }
    }

    // Two independent equations, so every ℓ in {0, 1, 2} occurs.
    let eq = |xs: [usize; 3]| Equation { literals: xs.map(Literal::pos), rhs: false };
    let sys = Lin2System::new(6, vec![eq([0, 1, 2]), eq([3, 4, 5])])?;
    let (g, cert) = lin2_to_tp(&sys, 1, cfg.seed)?;
    let mut seen = BTreeSet::new();
    for bits in 0u32..64 {
        let s: Vec<bool> = (0..6).map(|i| bits >> i & 1 == 1).collect();
        let l = sys.violated(&s);
        seen.insert(l);
        let p = lin2_solution_to_packing(&s, &cert)?;
        let valid = verify(Instance::Triangles(&g), Solution::Triangles(&p))?.valid;
        tally.check(valid && p.len() == (76 - l) * cert.m_s, || format!("assignment {bits:06b}: {} triangles, l={l}", p.len()));
        let again = normalize_packing(&p, &cert)?;
        tally.check(again == p, || format!("assignment {bits:06b}: normalization moved an encoding"));
    }
    tally.check(seen == BTreeSet::from([0, 1, 2]), || format!("violation counts seen {seen:?}"));

    let mut order = enumerate_triangles(&g).sets().to_vec();
    let mut rng = criterion_rng(cfg, 6);
    let mut kept = 0;
    let mut idempotent = 0;
    for _ in 0..100 {
        order.shuffle(&mut rng);
        let p = fill(&g, &order);
        let q = normalize_packing(&p, &cert)?;
        tally.check(verify(Instance::Triangles(&g), Solution::Triangles(&q))?.valid, || "invalid normalized packing".into());
        kept += usize::from(q.len() >= p.len());
        idempotent += usize::from(normalize_packing(&q, &cert)? == q);
    }
    tally.check(kept >= 95, || format!("normalization kept or improved only {kept}/100"));
    tally.check(idempotent == 100, || format!("normalization idempotent on {idempotent}/100"));

    let mut amp_failures = 0;
    for s in 0..20 {
        amp_failures += usize::from(check_amplifier(&build_amplifier(4, rng.gen::<u64>() ^ s)?)?.failures > 0);
    }
    tally.finish(format!(
        "both gadgets match 8/8 rows; {} nodes, m_S {}, l in {seen:?}; normalization kept {kept}/100; \
         amplifier k=4 failing seeds {amp_failures}/20 (reported only)",
        g.node_count(),
        cert.m_s
    ))
}

fn c7_cut(cfg: &RunConfig) -> CheckResult {
    let g = complete(4);
    let (inst, cert) = cut_to_allele(&g)?;
    let mut tally = Tally::default();
    let base = 13 * g.edge_count();
    let mut sizes = Vec::new();
    for mask in 0u32..16 {
        let side: Vec<bool> = (0..4).map(|u| mask >> u & 1 == 1).collect();
        let cover = cut_solution_to_cover(&side, &cert)?;
        let c = uncut_edges(&g, &side);
        tally.check(cover_is_valid(&inst, AlleleCondition::Two, None, &cover)?, || format!("side {mask:04b}: invalid cover"));
        tally.check(cover.len() == base + c, || format!("side {mask:04b}: {} vs {}", cover.len(), base + c));
        sizes.push(cover.len());
    }
    for u in 0..4 {
        let own: Ratio = cert.individuals.iter().filter(|i| i.gadget == Some(u)).map(|i| i.potential).sum();
        let rungs: Ratio = cert
            .individuals
            .iter()
            .filter(|i| match i.role {
                Role::Rung { edge, .. } => cert.connections[edge].u == u || cert.connections[edge].v == u,
                _ => false,
            })
            .map(|i| i.potential / int(2))
            .sum();
        tally.check(own + rungs == Ratio::new(39, 2), || format!("gadget {u}: potential {}", own + rungs));
    }
    let groups = enumerate_groups(&inst, AlleleCondition::Two, 6, &cfg.budget)?;
    let mut max_potential = int(0);
    for grp in &groups {
        let p: Ratio = grp.iter().map(|&i| cert.individuals[i].potential).sum();
        max_potential = max_potential.max(p);
        tally.check(p <= int(1), || format!("group {grp:?} has potential {p}"));
    }
    tally.finish(format!(
        "{} individuals, covers {}..{} = 13|E| + uncut, {} feasible groups, max potential {}",
        inst.len(),
        sizes.iter().min().unwrap_or(&0),
        sizes.iter().max().unwrap_or(&0),
        groups.len(),
        max_potential
    ))
}

fn c8_is_mpc(cfg: &RunConfig) -> CheckResult {
    let mut rng = criterion_rng(cfg, 8);
    let mut graphs = vec![("K4".to_string(), complete(4)), ("C6".into(), cycle(6)), ("Petersen".into(), petersen())];
    for i in 0..20 {
        graphs.push((format!("cubic {i}"), gen_random_cubic([4, 6, 8, 10][i % 4], rng.gen())?));
    }
    let mut tally = Tally::default();
    let mut named = Vec::new();
    for (name, g) in &graphs {
        let sys = is_to_mpc(g)?;
        let got = mpc_exact(&sys, &cfg.budget)?.profit;
        let want = max_independent_set(g);
        if named.len() < 3 {
            named.push(format!("{name} {got}"));
        }
        tally.check(got == int(want as i64), || format!("{name}: profit {got} vs independence {want}"));
    }
    tally.finish(format!("{} graphs; {}", graphs.len(), named.join(", ")))
}

fn c9_mpc_ratios(cfg: &RunConfig) -> CheckResult {
    let mut rng = criterion_rng(cfg, 9);
    let mut tally = Tally::default();
    let mut worst = [f64::INFINITY; 2];
    for i in 0..30 {
        let m = 6 + i % 7;
        let inst = gen_random_system(10, m, 3, rng.gen())?;
        let opt = profit_oracle(&inst);
        let exact = mpc_exact(&inst, &cfg.budget)?.profit;
        tally.check(exact == opt, || format!("setpacking {i}: exact {exact} vs oracle {opt}"));
        let sol = mpc_via_setpacking(&inst, 3, cfg.eps, &cfg.budget)?;
        tally.check(verify(Instance::Mpc(&inst), Solution::Mpc(&sol))?.valid, || format!("setpacking {i}: invalid"));
        tally.check(sol.profit * Ratio::new(21, 10) >= opt, || format!("setpacking {i}: {} vs {opt}", sol.profit));
        if opt > int(0) {
            worst[0] = worst[0].min(as_f64(sol.profit / opt));
        }
    }
    for i in 0..30 {
        let a = 3 + i % 3;
        let inst = gen_random_system(12, 12, a, rng.gen())?;
        let opt = profit_oracle(&inst);
        let sol = mpc_2imp(&inst, &TwoImpParams::default())?;
        tally.check(verify(Instance::Mpc(&inst), Solution::Mpc(&sol))?.valid, || format!("2imp {i}: invalid"));
        let factor = Ratio::new(6454, 10000) * a as i64 + Ratio::new(1, 10);
        tally.check(sol.profit * factor >= opt, || format!("2imp {i}: {} vs {opt} at a={a}", sol.profit));
        if opt > int(0) {
            worst[1] = worst[1].min(as_f64(sol.profit * factor / opt));
        }
    }
    let mut small = 0;
    for i in 0..30 {
        let a = 1 + i % 2;
        let inst = gen_random_system(12, 10 + i % 11, a, rng.gen())?;
        let got = mpc_exact_small_a(&inst)?.profit;
        let opt = mpc_exact(&inst, &cfg.budget)?.profit;
        tally.check(got == opt, || format!("small a {i}: {got} vs {opt}"));
        small += 1;
    }
    tally.finish(format!(
        "worst setpacking/OPT {:.3} (>= 0.476), worst 2imp*factor/OPT {:.3} (>= 1), {small} small-a instances",
        worst[0], worst[1]
    ))
}

fn all_graphs(n: usize) -> impl Iterator<Item = Graph> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    (0u32..1 << pairs.len()).map(move |mask| {
        Graph::new(n, pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e))
            .expect("subgraph of a complete graph")
    })
}

fn c10_cov2(cfg: &RunConfig) -> CheckResult {
    let mut rng = criterion_rng(cfg, 10);
    let mut tally = Tally::default();
    let mut graphs: Vec<Graph> = (1..=5).flat_map(all_graphs).collect();
    for i in 0..30 {
        graphs.push(gen_random_graph(6 + i % 3, rng.gen_range(0.3..0.8), rng.gen())?);
    }
    let mut systems: Vec<WeightedSetSystem> = Vec::new();
    for g in &graphs {
        for k in 1..=4.min(g.node_count()) {
            let inst = ds_to_cov2(g, k);
            let got = cov2_exact(&inst.system, k, &cfg.budget)?.objective();
            let want = densest(g, k);
            tally.check(got == want, || format!("{:?} k={k}: 2-coverage {got} vs densest {want}", g.edges()));
        }
        if g.node_count() >= 6 {
            systems.push(ds_to_cov2(g, 2).system);
        }
    }
    for i in 0..40 {
        systems.push(gen_random_system(12, 4 + i % 7, 5, rng.gen())?);
    }
    let mut route_cases = 0;
    for (i, s) in systems.iter().enumerate() {
        for k in 2..=4.min(s.set_count()) {
            let opt = cov2_exact(s, k, &cfg.budget)?.objective();
            tally.check(opt == twice_oracle(s, k), || format!("system {i} k={k}: exact {opt}"));
            let p = cov2_pairwise(s, k)?.objective();
            let t = cov2_two_phase(s, k)?.objective();
            let c = cov2_combined(s, k)?;
            tally.check(verify(Instance::Cov2 { system: s, k }, Solution::Cov2(&c))?.valid, || format!("system {i}: invalid"));
            let c = c.objective();
            tally.check(c >= p.max(t) && c <= opt, || format!("system {i} k={k}: combined {c}, routes {p}/{t}, opt {opt}"));
            let ones = coverage(s, &maxcov_greedy(s, k));
            let best = combos(s.set_count(), k).iter().map(|sel| coverage(s, sel)).max().unwrap_or(0);
            let kf = k as f64;
            tally.check(ones as f64 >= (1.0 - (1.0 - 1.0 / kf).powf(kf)) * best as f64 - 1e-9, || {
                format!("system {i} k={k}: greedy coverage {ones} vs {best}")
            });
            route_cases += 1;
        }
    }
    tally.finish(format!("{} graphs for densest-k, {route_cases} route cases", graphs.len()))
}

// ---- determinism ----

struct Scratch(PathBuf);

impl Scratch {
    fn new(seed: u64) -> std::io::Result<Self> {
        let dir = std::env::temp_dir().join(format!("packcover-determinism-{}-{seed}", std::process::id()));
        fs::create_dir_all(&dir)?;
        Ok(Scratch(dir))
    }

    fn put(&self, name: &str, text: &str) -> std::io::Result<String> {
        let p = self.0.join(name);
        fs::write(&p, text)?;
        Ok(p.display().to_string())
    }

    fn path(&self, name: &str) -> String {
        self.0.join(name).display().to_string()
    }
}

impl Drop for Scratch {
    fn drop(&mut self) {
        let _ = fs::remove_dir_all(&self.0);
    }
}

/// Digests, exit code and `--json` document of one in-process run.
type RunOutput = (Vec<String>, i32, Option<serde_json::Value>);

fn run_args(args: &[String], cfg: &RunConfig) -> Result<RunOutput, Box<dyn std::error::Error>> {
    let mut full = vec!["packcover".to_string(), "--seed".into(), cfg.seed.to_string()];
    full.extend(args.iter().cloned());
    let cli = Cli::try_parse_from(&full)?;
    let out = dispatch(&cli)?;
    Ok((out.digests, out.exit, out.json))
}

fn files_digest(paths: &[String]) -> String {
    let bytes: Vec<u8> = paths.iter().flat_map(|p| fs::read(p).unwrap_or_default()).collect();
    packcover_core::io::digest_bytes(&bytes)
}

fn c11_determinism(cfg: &RunConfig) -> CheckResult {
    let dir = Scratch::new(cfg.seed)?;
    let mut rng = criterion_rng(cfg, 11);
    let k6 = dir.put("k6.graph", &graph_to_text(&complete(6)))?;
    let rand_graph = dir.put("g.graph", &graph_to_text(&gen_random_graph(10, 0.5, rng.gen())?))?;
    let cubic = dir.put("cubic.graph", &graph_to_text(&gen_random_cubic(6, rng.gen())?))?;
    let pqrs = dir.put("pqrs.tsv", &sib_instance_to_text(&pqrs()))?;
    let fam = dir.put("fam.tsv", &sib_instance_to_text(&gen_sibling_families(3, 3, 2, 6, rng.gen())?.0))?;
    let sys = dir.put("s.sys", &set_system_to_text(&gen_random_system(10, 10, 3, rng.gen())?))?;
    let sys2 = dir.put("s2.sys", &set_system_to_text(&gen_random_system(10, 10, 2, rng.gen())?))?;
    let eq = |xs: [usize; 3], rhs| Equation { literals: xs.map(Literal::pos), rhs };
    let lin2 = dir.put("toy.lin2", &lin2_to_text(&Lin2System::new(4, vec![eq([0, 1, 2], false), eq([1, 2, 3], true)])?))?;
    let assignment = dir.put("assign.json", &json!({ "assignment": [true, false, true, true] }).to_string())?;
    let side = dir.put("side.json", &json!({ "side": [1, 0, 1, 0, 1, 0] }).to_string())?;

    let a = |xs: &[&str]| xs.iter().map(|s| s.to_string()).collect::<Vec<String>>();
    let tp_out = dir.path("k6.tp.json");
    let lin2_graph = dir.path("toy.graph");
    let lin2_cert = dir.path("toy.cert.json");
    let tpa_cert = dir.path("k6.tsv.cert.json");
    let cut_cert = dir.path("cubic.tsv.cert.json");
    let packing = dir.path("toy.packing.json");
    let commands: Vec<(Vec<String>, Vec<String>)> = vec![
        (a(&["tp", "--algo", "exact", &k6]), vec![]),
        (a(&["tp", "--algo", "local:2", &rand_graph, &k6]), vec![]),
        (a(&["tp", "--algo", "greedy", &rand_graph]), vec![]),
        (a(&["sibcheck", "--k", "4", "--group", "1,2,3", &pqrs]), vec![]),
        (a(&["sibcheck", "--k", "2", "--group", "1,3", &pqrs]), vec![]),
        (a(&["sibcover", "--algo", "a3", &fam, &pqrs]), vec![]),
        (a(&["sibcover", "--k", "4", "--algo", "a4", &fam]), vec![]),
        (a(&["sibcover", "--algo", "threshold:3", &fam]), vec![]),
        (a(&["sibcover", "--algo", "greedy:3", &fam]), vec![]),
        (a(&["sibcover", "--algo", "exact", &pqrs]), vec![]),
        (a(&["mpc", "--algo", "2imp", &sys]), vec![]),
        (a(&["mpc", "--algo", "pack:3", &sys]), vec![]),
        (a(&["mpc", "--algo", "greedy", &sys]), vec![]),
        (a(&["mpc", "--algo", "exact", &sys]), vec![]),
        (a(&["mpc", "--algo", "exact2", &sys2]), vec![]),
        (a(&["cov2", "--k", "3", "--algo", "combined", &sys]), vec![]),
        (a(&["cov2", "--k", "3", "--algo", "pairwise", &sys]), vec![]),
        (a(&["cov2", "--k", "3", "--algo", "twophase", &sys]), vec![]),
        (a(&["cov2", "--k", "3", "--algo", "exact", &sys]), vec![]),
        (a(&["reduce", "lin2-to-tp", &lin2, "--out", &lin2_graph, "--cert", &lin2_cert]), vec![lin2_graph.clone(), lin2_cert.clone()]),
        (a(&["reduce", "tp-to-allele", &k6, "--k", "2", "--out", &dir.path("k6.tsv")]), vec![dir.path("k6.tsv"), tpa_cert.clone()]),
        (a(&["reduce", "cut-to-allele", &cubic, "--out", &dir.path("cubic.tsv")]), vec![dir.path("cubic.tsv"), cut_cert.clone()]),
        (a(&["reduce", "color-to-allele", &rand_graph, "--out", &dir.path("g.color.tsv")]), vec![dir.path("g.color.tsv")]),
        (a(&["reduce", "is-to-mpc", &cubic, "--metric", "--out", &dir.path("cubic.sys")]), vec![dir.path("cubic.sys")]),
        (a(&["reduce", "ds-to-cov2", &rand_graph, "--k", "4", "--out", &dir.path("g.sys")]), vec![dir.path("g.sys")]),
        (a(&["transport", "--cert", &lin2_cert, "--solution", &assignment, "--target", &lin2_graph]), vec![]),
        (a(&["transport", "--cert", &cut_cert, "--solution", &side, "--target", &dir.path("cubic.tsv")]), vec![]),
        (a(&["transport", "--cert", &tpa_cert, "--solution", &tp_out, "--target", &dir.path("k6.tsv")]), vec![]),
        (a(&["normalize", "--cert", &lin2_cert, &packing]), vec![]),
        (a(&["verify", "--problem", "tp", &k6, &tp_out]), vec![]),
        (a(&["suite"]), vec![]),
    ];
    let mut tally = Tally::default();
    let mut digests = 0;
    for (args, files) in &commands {
        let (d1, e1, doc) = run_args(args, cfg)?;
        let f1 = files_digest(files);
        // Later commands read the outputs of earlier ones.
        if args[0] == "tp" && args.contains(&k6) && args.len() == 4 {
            fs::write(&tp_out, doc.as_ref().map(|d| d.to_string()).unwrap_or_default())?;
        }
        if args[0] == "transport" && args[2] == lin2_cert {
            fs::write(&packing, doc.as_ref().map(|d| d.to_string()).unwrap_or_default())?;
        }
        let (d2, e2, _) = run_args(args, cfg)?;
        let f2 = files_digest(files);
        digests += d1.len() + files.len();
        tally.check(d1 == d2 && f1 == f2, || format!("`{}` changed between runs", args.join(" ")));
        tally.check(e1 == 0 && e2 == 0, || format!("`{}` exited {e1}/{e2}", args.join(" ")));
    }
    tally.finish(format!("{} commands run twice, {digests} digests compared", commands.len()))
}
