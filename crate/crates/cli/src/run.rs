use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use packcover_core::cov2::{cov2_combined, cov2_exact, cov2_pairwise, cov2_two_phase, ds_to_cov2, twice_covered};
use packcover_core::io::{
    graph_digest, graph_to_text, lin2_digest, parse_graph, parse_lin2, parse_set_system, parse_sib_instance,
    set_system_digest, set_system_to_text, sib_digest, sib_instance_to_text,
};
use packcover_core::mpc::{mpc_2imp, mpc_exact, mpc_exact_small_a, mpc_greedy, mpc_profit, mpc_via_setpacking, TwoImpParams};
use packcover_core::packing::{pack_triangles, TpAlgorithm};
use packcover_core::ratio::{format_ratio, parse_ratio};
use packcover_core::sibcheck::{check_group, witness_2allele};
use packcover_core::sibcover::{solve_a3, solve_a4, solve_exact_cover, solve_setcover_greedy, solve_threshold_greedy};
use packcover_core::verify::{verify, Instance, Solution};
use packcover_core::{
    AlleleCondition, Budget, Cov2Solution, CoverSolution, Graph, MpcSolution, Ratio, SibInstance, WeightedSetSystem,
};
use packcover_reductions::coloring::{coloring_to_allele, coloring_to_cover, cover_to_coloring, is_proper_coloring};
use packcover_reductions::cut::{cut_solution_to_cover, cut_to_allele};
use packcover_reductions::is_mpc::{is_to_mpc, selection_to_independent_set, MetricPresentation};
use packcover_reductions::labelcover::{cover_to_packing, labelcover_to_allele, packing_to_cover, tp_to_labelcover};
use packcover_reductions::lin2tp::{lin2_solution_to_packing, lin2_to_tp, normalize_packing, packing_to_assignment};
use packcover_reductions::ReductionCertificate;
use serde_json::{json, Value};

use crate::args::{Cli, Command, Problem, ReduceKind};
use crate::error::{failed, usage, CliError, CliResult};
use crate::report::{Outcome, Report};
use crate::solution_json as sj;
use crate::suite;

/// Settings shared by every command.
#[derive(Debug, Clone, Copy)]
pub struct RunConfig {
    pub seed: u64,
    pub budget: Budget,
    pub eps: Ratio,
}

impl RunConfig {
    pub fn from_cli(cli: &Cli) -> CliResult<Self> {
        let eps = parse_ratio(&cli.eps).map_err(|e| usage(e.to_string()))?;
        if eps <= Ratio::from_integer(0) {
            return Err(usage("--eps must be positive"));
        }
        Ok(RunConfig {
            seed: cli.seed,
            budget: Budget {
                max_nodes: cli.budget_nodes,
                max_millis: cli.budget_ms,
            },
            eps,
        })
    }
}

pub fn dispatch(cli: &Cli) -> CliResult<Outcome> {
    let cfg = RunConfig::from_cli(cli)?;
    match &cli.command {
        Command::Tp { algo, inputs } => {
            let algo = parse_tp_algo(algo)?;
            batch(inputs, |p| run_tp(p, algo, &cfg))
        }
        Command::Sibcheck { k, group, input } => run_sibcheck(input, *k, group),
        Command::Sibcover { k, algo, inputs } => {
            let cond = AlleleCondition::from_k(*k)?;
            let algo = parse_cover_algo(algo)?;
            batch(inputs, |p| run_sibcover(p, cond, algo, &cfg))
        }
        Command::Mpc { algo, alpha, delta, inputs } => {
            let algo = parse_mpc_algo(algo)?;
            if *alpha < 2 {
                return Err(usage("--alpha must be at least 2"));
            }
            let params = TwoImpParams {
                alpha: *alpha,
                delta: *delta,
                eps: cfg.eps,
                step: None,
            };
            batch(inputs, |p| run_mpc(p, algo, &params, &cfg))
        }
        Command::Cov2 { k, algo, inputs } => {
            let algo = parse_cov2_algo(algo)?;
            batch(inputs, |p| run_cov2(p, *k, algo, &cfg))
        }
        Command::Reduce {
            kind,
            input,
            m,
            k,
            metric,
            radius,
            out,
            cert,
        } => run_reduce(*kind, input, *m, *k, *metric, radius, out.as_deref(), cert.as_deref(), &cfg),
        Command::Transport { cert, solution, target } => run_transport(cert, solution, target.as_deref(), &cfg),
        Command::Normalize { cert, packing } => run_normalize(cert, packing, &cfg),
        Command::Verify {
            problem,
            k,
            max_group,
            instance,
            solution,
        } => run_verify(*problem, *k, *max_group, instance, solution),
        Command::Suite { name } => Ok(suite::run_named(name.as_deref(), &cfg)),
    }
}

/// Runs `f` on every input, concurrently when there are several, and keeps
/// the input order.
fn batch<F>(inputs: &[PathBuf], f: F) -> CliResult<Outcome>
where
    F: Fn(&Path) -> CliResult<(Report, Vec<String>)> + Sync,
{
    let results: Vec<CliResult<(Report, Vec<String>)>> = if inputs.len() == 1 {
        vec![f(&inputs[0])]
    } else {
        std::thread::scope(|s| {
            let handles: Vec<_> = inputs.iter().map(|p| s.spawn(|| f(p))).collect();
            handles.into_iter().map(|h| h.join().expect("solver thread panicked")).collect()
        })
    };
    Ok(Outcome::from_reports(results.into_iter().collect::<CliResult<Vec<_>>>()?))
}

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| failed(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> CliResult<()> {
    fs::write(path, text).map_err(|e| failed(format!("{}: {e}", path.display())))
}

fn read_json(path: &Path) -> CliResult<Value> {
    serde_json::from_str(&read(path)?).map_err(|e| failed(format!("{}: {e}", path.display())))
}

fn read_graph(path: &Path) -> CliResult<(Graph, Vec<String>)> {
    let p = parse_graph(&read(path)?).map_err(|e| failed(format!("{}: {e}", path.display())))?;
    Ok((p.value, p.warnings))
}

fn read_sib(path: &Path) -> CliResult<SibInstance> {
    parse_sib_instance(&read(path)?).map_err(|e| failed(format!("{}: {e}", path.display())))
}

fn read_system(path: &Path) -> CliResult<WeightedSetSystem> {
    parse_set_system(&read(path)?).map_err(|e| failed(format!("{}: {e}", path.display())))
}

fn millis(t: Instant) -> u64 {
    t.elapsed().as_millis() as u64
}

fn checked(report: packcover_core::VerificationReport) -> Vec<String> {
    report.violations
}

// ---- algorithm names ----

fn split_param(s: &str) -> (&str, Option<&str>) {
    match s.split_once(':') {
        Some((a, b)) => (a, Some(b)),
        None => (s, None),
    }
}

fn param(name: &str, p: Option<&str>) -> CliResult<usize> {
    let p = p.ok_or_else(|| usage(format!("algorithm `{name}` needs a parameter, as in `{name}:3`")))?;
    p.parse().ok().filter(|&v: &usize| v >= 1).ok_or_else(|| usage(format!("bad parameter `{p}` for `{name}`")))
}

fn optional_param(name: &str, p: Option<&str>) -> CliResult<Option<usize>> {
    p.map(|_| param(name, p)).transpose()
}

pub fn parse_tp_algo(s: &str) -> CliResult<TpAlgorithm> {
    match split_param(s) {
        ("greedy", None) => Ok(TpAlgorithm::Greedy),
        ("local", p) => Ok(TpAlgorithm::Local(param("local", p)?)),
        ("exact", None) => Ok(TpAlgorithm::Exact),
        _ => Err(usage(format!("unknown tp algorithm `{s}`; expected greedy, local:S or exact"))),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoverAlgo {
    Threshold(usize),
    A3,
    A4,
    Greedy(Option<usize>),
    Exact(Option<usize>),
}

pub fn parse_cover_algo(s: &str) -> CliResult<CoverAlgo> {
    match split_param(s) {
        ("threshold", p) => Ok(CoverAlgo::Threshold(param("threshold", p)?)),
        ("a3", None) => Ok(CoverAlgo::A3),
        ("a4", None) => Ok(CoverAlgo::A4),
        ("greedy", p) => Ok(CoverAlgo::Greedy(optional_param("greedy", p)?)),
        ("exact", p) => Ok(CoverAlgo::Exact(optional_param("exact", p)?)),
        _ => Err(usage(format!(
            "unknown sibcover algorithm `{s}`; expected threshold:C, a3, a4, greedy[:A] or exact[:A]"
        ))),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MpcAlgo {
    Exact2,
    Pack(usize),
    Greedy,
    TwoImp,
    Exact,
}

pub fn parse_mpc_algo(s: &str) -> CliResult<MpcAlgo> {
    match split_param(s) {
        ("exact2", None) => Ok(MpcAlgo::Exact2),
        ("pack", p) => Ok(MpcAlgo::Pack(param("pack", p)?)),
        ("greedy", None) => Ok(MpcAlgo::Greedy),
        ("2imp", None) => Ok(MpcAlgo::TwoImp),
        ("exact", None) => Ok(MpcAlgo::Exact),
        _ => Err(usage(format!("unknown mpc algorithm `{s}`; expected exact2, pack:A, greedy, 2imp or exact"))),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Cov2Algo {
    Pairwise,
    TwoPhase,
    Combined,
    Exact,
}

pub fn parse_cov2_algo(s: &str) -> CliResult<Cov2Algo> {
    match s {
        "pairwise" => Ok(Cov2Algo::Pairwise),
        "twophase" => Ok(Cov2Algo::TwoPhase),
        "combined" => Ok(Cov2Algo::Combined),
        "exact" => Ok(Cov2Algo::Exact),
        _ => Err(usage(format!("unknown cov2 algorithm `{s}`; expected pairwise, twophase, combined or exact"))),
    }
}

fn allele_k(k: Option<usize>) -> CliResult<AlleleCondition> {
    AlleleCondition::from_k(k.unwrap_or(2) as u32).map_err(|e| usage(e.to_string()))
}

// ---- solvers ----

fn run_tp(path: &Path, algo: TpAlgorithm, cfg: &RunConfig) -> CliResult<(Report, Vec<String>)> {
    let (g, _) = read_graph(path)?;
    let t = Instant::now();
    let p = pack_triangles(&g, algo, &cfg.budget)?;
    let wall = millis(t);
    let v = verify(Instance::Triangles(&g), Solution::Triangles(&p))?;
    let name = match algo {
        TpAlgorithm::Greedy => "tp:greedy".to_string(),
        TpAlgorithm::Local(s) => format!("tp:local:{s}"),
        TpAlgorithm::Exact => "tp:exact".to_string(),
    };
    Ok((
        Report {
            instance_digest: graph_digest(&g),
            algorithm: name,
            seed: cfg.seed,
            objective: Some(p.len().to_string()),
            solution: sj::packing(&p),
            wall_time_ms: wall,
        },
        checked(v),
    ))
}

fn run_sibcheck(path: &Path, k: u32, group: &str) -> CliResult<Outcome> {
    let inst = read_sib(path)?;
    let ids: Vec<usize> = group
        .split(',')
        .map(|s| s.trim().parse::<usize>().ok().filter(|&i| i >= 1).map(|i| i - 1))
        .collect::<Option<_>>()
        .ok_or_else(|| usage(format!("--group must list 1-based ids separated by commas, got `{group}`")))?;
    let feasible = check_group(&inst, &ids, k)?;
    let witness = if k == 2 && feasible {
        witness_2allele(&inst, &ids)?.map(|mut w| {
            w.group = w.group.iter().map(|i| i + 1).collect();
            serde_json::to_value(w).expect("witness serializes")
        })
    } else {
        None
    };
    let mut doc = json!({
        "instance_digest": sib_digest(&inst),
        "k": k,
        "group": sj::ids(&ids),
        "feasible": feasible,
    });
    if let Some(w) = witness {
        doc["witness"] = w;
    }
    Ok(Outcome::document(doc))
}

fn run_sibcover(path: &Path, cond: AlleleCondition, algo: CoverAlgo, cfg: &RunConfig) -> CliResult<(Report, Vec<String>)> {
    let inst = read_sib(path)?;
    let n = inst.len();
    let t = Instant::now();
    let (cover, max_group, name) = match algo {
        CoverAlgo::Threshold(c) => (solve_threshold_greedy(&inst, cond, c, &cfg.budget)?, Some(c), format!("threshold:{c}")),
        CoverAlgo::A3 => (solve_a3(&inst, cond, cfg.eps, &cfg.budget)?, Some(3), "a3".into()),
        CoverAlgo::A4 => (solve_a4(&inst, cond, cfg.eps, &cfg.budget)?, Some(4), "a4".into()),
        CoverAlgo::Greedy(a) => (
            solve_setcover_greedy(&inst, cond, a.unwrap_or(n.max(1)), &cfg.budget)?,
            a,
            a.map_or("greedy".into(), |a| format!("greedy:{a}")),
        ),
        CoverAlgo::Exact(a) => (
            solve_exact_cover(&inst, cond, a, &cfg.budget)?,
            a,
            a.map_or("exact".into(), |a| format!("exact:{a}")),
        ),
    };
    let wall = millis(t);
    let v = verify(Instance::Cover { inst: &inst, cond, max_group }, Solution::Cover(&cover))?;
    Ok((
        Report {
            instance_digest: sib_digest(&inst),
            algorithm: format!("sibcover:k{}:{name}", cond.k()),
            seed: cfg.seed,
            objective: Some(cover.len().to_string()),
            solution: sj::cover(&cover),
            wall_time_ms: wall,
        },
        checked(v),
    ))
}

fn run_mpc(path: &Path, algo: MpcAlgo, params: &TwoImpParams, cfg: &RunConfig) -> CliResult<(Report, Vec<String>)> {
    let inst = read_system(path)?;
    let t = Instant::now();
    let (sol, name) = match algo {
        MpcAlgo::Exact2 => (mpc_exact_small_a(&inst)?, "exact2".to_string()),
        MpcAlgo::Pack(a) => (mpc_via_setpacking(&inst, a, cfg.eps, &cfg.budget)?, format!("pack:{a}")),
        MpcAlgo::Greedy => (mpc_greedy(&inst), "greedy".into()),
        MpcAlgo::TwoImp => (mpc_2imp(&inst, params)?, format!("2imp:alpha{}:delta{}", params.alpha, params.delta)),
        MpcAlgo::Exact => (mpc_exact(&inst, &cfg.budget)?, "exact".into()),
    };
    let wall = millis(t);
    let v = verify(Instance::Mpc(&inst), Solution::Mpc(&sol))?;
    Ok((
        Report {
            instance_digest: set_system_digest(&inst),
            algorithm: format!("mpc:{name}"),
            seed: cfg.seed,
            objective: Some(format_ratio(&sol.profit)),
            solution: sj::mpc(&sol),
            wall_time_ms: wall,
        },
        checked(v),
    ))
}

fn run_cov2(path: &Path, k: usize, algo: Cov2Algo, cfg: &RunConfig) -> CliResult<(Report, Vec<String>)> {
    let system = read_system(path)?;
    let t = Instant::now();
    let (sol, name) = match algo {
        Cov2Algo::Pairwise => (cov2_pairwise(&system, k)?, "pairwise"),
        Cov2Algo::TwoPhase => (cov2_two_phase(&system, k)?, "twophase"),
        Cov2Algo::Combined => (cov2_combined(&system, k)?, "combined"),
        Cov2Algo::Exact => (cov2_exact(&system, k, &cfg.budget)?, "exact"),
    };
    let wall = millis(t);
    let v = verify(Instance::Cov2 { system: &system, k }, Solution::Cov2(&sol))?;
    Ok((
        Report {
            instance_digest: set_system_digest(&system),
            algorithm: format!("cov2:k{k}:{name}"),
            seed: cfg.seed,
            objective: Some(sol.objective().to_string()),
            solution: sj::cov2(&sol),
            wall_time_ms: wall,
        },
        checked(v),
    ))
}

// ---- reductions ----

fn default_out(input: &Path, kind: ReduceKind, ext: &str) -> PathBuf {
    let stem = input.file_stem().map_or("instance".into(), |s| s.to_string_lossy().into_owned());
    input.with_file_name(format!("{stem}.{}.{ext}", kind.name()))
}

#[allow(clippy::too_many_arguments)]
fn run_reduce(
    kind: ReduceKind,
    input: &Path,
    m: usize,
    k: Option<usize>,
    metric: bool,
    radius: &str,
    out: Option<&Path>,
    cert_path: Option<&Path>,
    cfg: &RunConfig,
) -> CliResult<Outcome> {
    let t = Instant::now();
    let mut summary = serde_json::Map::new();
    let (source_digest, text, target_digest, ext, cert) = match kind {
        ReduceKind::Lin2ToTp => {
            let sys = parse_lin2(&read(input)?).map_err(|e| failed(format!("{}: {e}", input.display())))?;
            let (g, c) = lin2_to_tp(&sys, m, cfg.seed)?;
            summary.insert("nodes".into(), json!(g.node_count()));
            summary.insert("m_s".into(), json!(c.m_s));
            summary.insert("warnings".into(), json!(c.warnings));
            (lin2_digest(&sys), graph_to_text(&g), graph_digest(&g), "graph", ReductionCertificate::Lin2ToTp(c))
        }
        ReduceKind::TpToAllele => {
            let (g, _) = read_graph(input)?;
            let cond = allele_k(k)?;
            let (lc, c) = tp_to_labelcover(&g);
            let inst = labelcover_to_allele(&lc, cond);
            summary.insert("individuals".into(), json!(inst.len()));
            summary.insert("loci".into(), json!(inst.locus_count()));
            let cert = ReductionCertificate::TpToAllele {
                k: cond.k(),
                graph: g.clone(),
                cert: c,
            };
            (graph_digest(&g), sib_instance_to_text(&inst), sib_digest(&inst), "tsv", cert)
        }
        ReduceKind::CutToAllele => {
            let (g, _) = read_graph(input)?;
            let (inst, c) = cut_to_allele(&g)?;
            summary.insert("individuals".into(), json!(inst.len()));
            summary.insert("lower_bound".into(), json!(c.lower_bound()));
            (graph_digest(&g), sib_instance_to_text(&inst), sib_digest(&inst), "tsv", ReductionCertificate::CutToAllele(c))
        }
        ReduceKind::ColorToAllele => {
            let (g, _) = read_graph(input)?;
            let (inst, c) = coloring_to_allele(&g, allele_k(k)?);
            summary.insert("individuals".into(), json!(inst.len()));
            summary.insert("loci".into(), json!(inst.locus_count()));
            (graph_digest(&g), sib_instance_to_text(&inst), sib_digest(&inst), "tsv", ReductionCertificate::ColorToAllele(c))
        }
        ReduceKind::IsToMpc => {
            let (g, _) = read_graph(input)?;
            let sys = is_to_mpc(&g)?;
            let presentation = if metric {
                let r = parse_ratio(radius).map_err(|e| usage(e.to_string()))?;
                let p = MetricPresentation::new(&g, r)?;
                if p.to_set_system()? != sys {
                    return Err(failed("metric balls disagree with the incidence sets"));
                }
                Some(p)
            } else {
                None
            };
            summary.insert("sets".into(), json!(sys.set_count()));
            let cert = ReductionCertificate::IsToMpc {
                graph: g.clone(),
                metric: presentation,
            };
            (graph_digest(&g), set_system_to_text(&sys), set_system_digest(&sys), "sys", cert)
        }
        ReduceKind::DsToCov2 => {
            let (g, _) = read_graph(input)?;
            let k = k.ok_or_else(|| usage("ds-to-cov2 needs --k"))?;
            let c = ds_to_cov2(&g, k);
            summary.insert("k".into(), json!(k));
            let cert = ReductionCertificate::DsToCov2 { k, graph: g.clone() };
            (graph_digest(&g), set_system_to_text(&c.system), set_system_digest(&c.system), "sys", cert)
        }
    };
    let out_path = out.map_or_else(|| default_out(input, kind, ext), Path::to_path_buf);
    let cert_file = cert_path.map_or_else(
        || PathBuf::from(format!("{}.cert.json", out_path.display())),
        Path::to_path_buf,
    );
    write(&out_path, &text)?;
    write(&cert_file, &serde_json::to_string_pretty(&cert)?)?;
    summary.insert("target".into(), json!(out_path.display().to_string()));
    summary.insert("target_digest".into(), json!(target_digest));
    summary.insert("certificate".into(), json!(cert_file.display().to_string()));
    let report = Report {
        instance_digest: source_digest,
        algorithm: format!("reduce:{}", kind.name()),
        seed: cfg.seed,
        objective: None,
        solution: Value::Object(summary),
        wall_time_ms: millis(t),
    };
    Ok(Outcome::from_reports(vec![(report, Vec::new())]))
}

fn read_cert(path: &Path) -> CliResult<ReductionCertificate> {
    serde_json::from_value(read_json(path)?).map_err(|e| failed(format!("{}: {e}", path.display())))
}

fn verify_cover_target(target: Option<&Path>, cond: AlleleCondition, max_group: Option<usize>, cover: &CoverSolution) -> CliResult<Vec<String>> {
    let Some(p) = target else { return Ok(Vec::new()) };
    let inst = read_sib(p)?;
    Ok(checked(verify(Instance::Cover { inst: &inst, cond, max_group }, Solution::Cover(cover))?))
}

fn run_transport(cert_path: &Path, sol_path: &Path, target: Option<&Path>, cfg: &RunConfig) -> CliResult<Outcome> {
    let cert = read_cert(cert_path)?;
    let input = sj::unwrap_report(read_json(sol_path)?);
    let t = Instant::now();
    let mut violations = Vec::new();
    let (direction, objective, solution) = match &cert {
        ReductionCertificate::Lin2ToTp(c) => {
            let s = sj::get_bools(&input, "assignment")?;
            let p = lin2_solution_to_packing(&s, c)?;
            if let Some(tp) = target {
                let (g, _) = read_graph(tp)?;
                violations = checked(verify(Instance::Triangles(&g), Solution::Triangles(&p))?);
            }
            ("assignment-to-packing", p.len().to_string(), sj::packing(&p))
        }
        ReductionCertificate::TpToAllele { k, graph, cert } => {
            let cond = AlleleCondition::from_k(*k)?;
            if sj::has(&input, "triangles") {
                let p = sj::get_triangles(&input)?;
                violations = checked(verify(Instance::Triangles(graph), Solution::Triangles(&p))?);
                let cover = packing_to_cover(cert.node_count, &p);
                violations.extend(verify_cover_target(target, cond, Some(3), &cover)?);
                ("packing-to-cover", cover.len().to_string(), sj::cover(&cover))
            } else {
                let cover = CoverSolution::new(sj::get_groups(&input, "groups")?);
                let p = cover_to_packing(graph, &cover);
                ("cover-to-packing", p.len().to_string(), sj::packing(&p))
            }
        }
        ReductionCertificate::CutToAllele(c) => {
            let side = sj::get_bools(&input, "side")?;
            let cover = cut_solution_to_cover(&side, c)?;
            violations = verify_cover_target(target, AlleleCondition::Two, None, &cover)?;
            ("cut-to-cover", cover.len().to_string(), sj::cover(&cover))
        }
        ReductionCertificate::ColorToAllele(c) => {
            let g = Graph::new(c.node_count, c.edges.iter().copied())?;
            if sj::has(&input, "coloring") {
                let coloring = sj::get_ids(&input, "coloring")?;
                if !is_proper_coloring(&g, &coloring) {
                    violations.push("coloring is not proper".into());
                }
                let cover = coloring_to_cover(&coloring, c)?;
                violations.extend(verify_cover_target(target, AlleleCondition::Two, None, &cover)?);
                ("coloring-to-cover", cover.len().to_string(), sj::cover(&cover))
            } else {
                let cover = CoverSolution::new(sj::get_groups(&input, "groups")?);
                let coloring = cover_to_coloring(&cover, c)?;
                let colors = coloring.iter().max().map_or(0, |x| x + 1);
                ("cover-to-coloring", colors.to_string(), json!({ "coloring": sj::ids(&coloring) }))
            }
        }
        ReductionCertificate::IsToMpc { graph, .. } => {
            let sys = is_to_mpc(graph)?;
            if sj::has(&input, "selected") {
                let sel = sj::get_ids(&input, "selected")?;
                let is = selection_to_independent_set(graph, &sel);
                ("selection-to-independent-set", is.len().to_string(), json!({ "independent_set": sj::ids(&is) }))
            } else {
                let is = sj::get_ids(&input, "independent_set")?;
                let sol = MpcSolution {
                    profit: mpc_profit(&sys, &is),
                    selected: is,
                };
                violations = checked(verify(Instance::Mpc(&sys), Solution::Mpc(&sol))?);
                ("independent-set-to-selection", format_ratio(&sol.profit), sj::mpc(&sol))
            }
        }
        ReductionCertificate::DsToCov2 { k, graph } => {
            let sel = sj::get_ids(&input, "selected")?;
            if sel.len() > *k {
                violations.push(format!("{} sets selected, budget is {k}", sel.len()));
            }
            let inst = ds_to_cov2(graph, *k);
            let edges = twice_covered(&inst.system, &sel).len();
            ("selection-to-subgraph", edges.to_string(), json!({ "nodes": sj::ids(&sel), "edges": edges }))
        }
    };
    let report = Report {
        instance_digest: packcover_core::io::digest_bytes(read(cert_path)?.as_bytes()),
        algorithm: format!("transport:{}:{direction}", cert.kind()),
        seed: cfg.seed,
        objective: Some(objective),
        solution,
        wall_time_ms: millis(t),
    };
    Ok(Outcome::from_reports(vec![(report, violations)]))
}

fn run_normalize(cert_path: &Path, packing_path: &Path, cfg: &RunConfig) -> CliResult<Outcome> {
    let ReductionCertificate::Lin2ToTp(cert) = read_cert(cert_path)? else {
        return Err(usage("normalize needs a lin2-to-tp certificate"));
    };
    let input = sj::unwrap_report(read_json(packing_path)?);
    let p = sj::get_triangles(&input)?;
    let t = Instant::now();
    let q = normalize_packing(&p, &cert)?;
    let assignment = packing_to_assignment(&p, &cert);
    let mut solution = sj::packing(&q);
    solution["assignment"] = json!(assignment);
    solution["input_triangles"] = json!(p.len());
    let report = Report {
        instance_digest: packcover_core::io::digest_bytes(read(cert_path)?.as_bytes()),
        algorithm: "normalize:lin2-to-tp".into(),
        seed: cfg.seed,
        objective: Some(q.len().to_string()),
        solution,
        wall_time_ms: millis(t),
    };
    Ok(Outcome::from_reports(vec![(report, Vec::new())]))
}

fn run_verify(problem: Problem, k: Option<usize>, max_group: Option<usize>, instance: &Path, sol_path: &Path) -> CliResult<Outcome> {
    let doc = read_json(sol_path)?;
    let claimed = doc.get("objective").and_then(Value::as_str).map(str::to_string);
    let input = sj::unwrap_report(doc);
    let report = match problem {
        Problem::Tp => {
            let (g, _) = read_graph(instance)?;
            let p = sj::get_triangles(&input)?;
            verify(Instance::Triangles(&g), Solution::Triangles(&p))?
        }
        Problem::Sibcover => {
            let inst = read_sib(instance)?;
            let cover = CoverSolution::new(sj::get_groups(&input, "groups")?);
            verify(Instance::Cover { inst: &inst, cond: allele_k(k)?, max_group }, Solution::Cover(&cover))?
        }
        Problem::Mpc => {
            let sys = read_system(instance)?;
            let selected = sj::get_ids(&input, "selected")?;
            let profit = match input.get("profit").and_then(Value::as_str).or(claimed.as_deref()) {
                Some(p) => parse_ratio(p).map_err(CliError::from)?,
                None => mpc_profit(&sys, &selected),
            };
            verify(Instance::Mpc(&sys), Solution::Mpc(&MpcSolution { selected, profit }))?
        }
        Problem::Cov2 => {
            let system = read_system(instance)?;
            let k = k.ok_or_else(|| usage("verify --problem cov2 needs --k"))?;
            let selected = sj::get_ids(&input, "selected")?;
            let twice = if sj::has(&input, "twice_covered") {
                sj::get_ids(&input, "twice_covered")?
            } else {
                twice_covered(&system, &selected)
            };
            verify(
                Instance::Cov2 { system: &system, k },
                Solution::Cov2(&Cov2Solution {
                    selected,
                    twice_covered: twice,
                }),
            )?
        }
    };
    let mut out = Outcome::document(json!({
        "valid": report.valid,
        "objective": format_ratio(&report.objective),
        "violations": report.violations,
    }));
    if !report.valid {
        out.exit = 1;
        out.notes = report.violations;
    }
    Ok(out)
}
