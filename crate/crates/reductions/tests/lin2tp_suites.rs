use std::collections::HashSet;

use packcover_core::lin2::Equation;
use packcover_core::packing::enumerate_triangles;
use packcover_core::solution::TrianglePacking;
use packcover_core::verify::{verify, Instance, Solution};
use packcover_core::{Graph, Lin2System, Literal};
use packcover_reductions::lin2tp::amplifier::{
    amplifier_to_tp_fragment, build_amplifier, check_amplifier, uncovered_given_contacts, Amplifier,
};
use packcover_reductions::lin2tp::{
    lin2_solution_to_packing, lin2_to_tp, normalize_packing, packing_to_assignment, Lin2TpCertificate,
};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_system(vars: usize, equations: usize, seed: u64) -> Lin2System {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let eqs = (0..equations)
        .map(|_| {
            let mut xs: Vec<usize> = (0..vars).collect();
            xs.shuffle(&mut rng);
            let lit = |x: usize, rng: &mut ChaCha8Rng| if rng.gen_bool(0.5) { Literal::pos(x) } else { Literal::neg(x) };
            Equation {
                literals: [lit(xs[0], &mut rng), lit(xs[1], &mut rng), lit(xs[2], &mut rng)],
                rhs: rng.gen_bool(0.5),
            }
        })
        .collect();
    Lin2System::new(vars, eqs).unwrap()
}

fn assignments(vars: usize) -> impl Iterator<Item = Vec<bool>> {
    (0u32..1 << vars).map(move |b| (0..vars).map(|i| b >> i & 1 == 1).collect())
}

fn check_packing(g: &Graph, p: &TrianglePacking) {
    let r = verify(Instance::Triangles(g), Solution::Triangles(p)).unwrap();
    assert!(r.valid, "{:?}", r.violations);
}

#[test]
fn encoding_size_tracks_violated_equations() {
    for seed in 0..6u64 {
        let vars = 3 + seed as usize % 3;
        let eqs = 2 + 2 * (seed as usize % 2);
        let sys = random_system(vars, eqs, seed);
        for m in [1, 2] {
            let (g, cert) = lin2_to_tp(&sys, m, seed).unwrap();
            let n = eqs / 2;
            assert_eq!(g.node_count(), 228 * n * cert.m_s);
            assert_eq!(cert.node_count, g.node_count());
            for s in assignments(vars) {
                let l = sys.violated(&s);
                let p = lin2_solution_to_packing(&s, &cert).unwrap();
                check_packing(&g, &p);
                assert_eq!(p.len(), (76 * n - l) * cert.m_s);
                assert_eq!(g.node_count() - 3 * p.len(), 3 * cert.m_s * l);
                let back = packing_to_assignment(&p, &cert);
                for x in 0..vars {
                    // Variables without occurrences have no amplifier and read false.
                    let want = cert.variables[x].k() > 0 && s[x];
                    assert_eq!(back[x], want);
                }
            }
        }
    }
}

#[test]
fn flipping_a_variable_moves_by_m_s_per_equation() {
    let sys = random_system(4, 2, 11);
    let (_, cert) = lin2_to_tp(&sys, 2, 11).unwrap();
    for s in assignments(4) {
        for x in 0..4 {
            let mut t = s.clone();
            t[x] = !t[x];
            let a = lin2_solution_to_packing(&s, &cert).unwrap().len() as i64;
            let b = lin2_solution_to_packing(&t, &cert).unwrap().len() as i64;
            let dl = sys.violated(&t) as i64 - sys.violated(&s) as i64;
            assert_eq!(a - b, dl * cert.m_s as i64);
        }
    }
}

#[test]
fn deterministic_and_warns_below_floor() {
    let sys = random_system(3, 2, 1);
    let (g1, c1) = lin2_to_tp(&sys, 1, 5).unwrap();
    let (g2, c2) = lin2_to_tp(&sys, 1, 5).unwrap();
    assert_eq!(g1, g2);
    assert_eq!(c1, c2);
    assert!(!c1.warnings.is_empty());
    assert!(lin2_to_tp(&sys, 0, 5).is_err());
}

#[test]
fn normalization_is_idempotent_on_encodings() {
    let sys = random_system(4, 2, 3);
    let (_, cert) = lin2_to_tp(&sys, 1, 3).unwrap();
    for s in assignments(4) {
        let p = lin2_solution_to_packing(&s, &cert).unwrap();
        assert_eq!(normalize_packing(&p, &cert).unwrap(), p);
    }
}

/// Adds triangles of `g` in `order` while they stay disjoint from `p`.
fn fill(g: &Graph, p: &mut Vec<[usize; 3]>, order: &[[usize; 3]]) {
    let mut used = vec![false; g.node_count()];
    for t in p.iter() {
        for &v in t {
            used[v] = true;
        }
    }
    for t in order {
        if t.iter().all(|&v| !used[v]) {
            for &v in t {
                used[v] = true;
            }
            p.push(*t);
        }
    }
}

fn all_triangles(g: &Graph) -> Vec<[usize; 3]> {
    enumerate_triangles(g).sets().iter().map(|s| [s[0], s[1], s[2]]).collect()
}

/// Drops every triangle touching `nodes`, then refills greedily.
fn perturb(g: &Graph, p: &TrianglePacking, nodes: &HashSet<usize>, order: &[[usize; 3]]) -> TrianglePacking {
    let mut kept: Vec<[usize; 3]> = p.triangles.iter().copied().filter(|t| !t.iter().any(|v| nodes.contains(v))).collect();
    fill(g, &mut kept, order);
    TrianglePacking::new(kept)
}

fn gadget_nodes(cert: &Lin2TpCertificate, eq: usize, copy: usize) -> HashSet<usize> {
    cert.equations[eq].copies[copy].iter().copied().collect()
}

fn amplifier_nodes(cert: &Lin2TpCertificate, x: usize) -> HashSet<usize> {
    cert.variables[x].triangles.iter().flatten().copied().collect()
}

#[test]
fn normalization_repairs_perturbed_encodings() {
    let sys = random_system(4, 2, 8);
    let (g, cert) = lin2_to_tp(&sys, 1, 8).unwrap();
    let mut order = all_triangles(&g);
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut worse = 0;
    let mut trials = 0;
    for s in assignments(4) {
        let p = lin2_solution_to_packing(&s, &cert).unwrap();
        for target in 0..cert.equations.len() + cert.variable_count {
            order.shuffle(&mut rng);
            let nodes = if target < cert.equations.len() {
                gadget_nodes(&cert, target, rng.gen_range(0..3))
            } else {
                amplifier_nodes(&cert, target - cert.equations.len())
            };
            let bent = perturb(&g, &p, &nodes, &order);
            check_packing(&g, &bent);
            let fixed = normalize_packing(&bent, &cert).unwrap();
            check_packing(&g, &fixed);
            trials += 1;
            if fixed.len() < bent.len() {
                worse += 1;
            }
        }
    }
    println!("perturbed encodings: normalization lost triangles in {worse} of {trials}");
    assert_eq!(worse, 0);
}

#[test]
fn normalization_beats_random_maximal_packings() {
    let sys = random_system(3, 2, 21);
    let (g, cert) = lin2_to_tp(&sys, 1, 21).unwrap();
    let mut order = all_triangles(&g);
    let mut wins = 0;
    for seed in 0..100 {
        order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        let mut p = Vec::new();
        fill(&g, &mut p, &order);
        let p = TrianglePacking::new(p);
        let q = normalize_packing(&p, &cert).unwrap();
        check_packing(&g, &q);
        if q.len() >= p.len() {
            wins += 1;
        }
    }
    println!("random maximal packings: normalization kept or improved {wins} of 100");
    assert!(wins >= 95);
}

#[test]
fn amplifier_property_at_k4() {
    let mut failing = 0;
    let mut failures = 0;
    for seed in 0..100 {
        let c = check_amplifier(&build_amplifier(4, seed).unwrap()).unwrap();
        assert_eq!(c.subsets, 256);
        failures += c.failures;
        failing += usize::from(c.failures > 0);
    }
    println!("amplifier k=4: {failing} of 100 seeds fail, {failures} failing contact selections");
    assert!(failing <= 5);
}

/// Fewest uncovered edge nodes per contact selection, by enumerating every
/// set of pairwise disjoint fragment triangles.
fn fragment_oracle(a: &Amplifier) -> Vec<usize> {
    let f = amplifier_to_tp_fragment(a);
    let edge_nodes = a.edge_count();
    let contacts = a.contact_count();
    let n = a.node_count();
    let mut best = vec![usize::MAX; 1 << contacts];
    fn go(
        u: usize,
        tris: &[[usize; 3]],
        used: &mut Vec<bool>,
        covered: usize,
        mask: usize,
        edge_nodes: usize,
        best: &mut [usize],
    ) {
        if u == tris.len() {
            best[mask] = best[mask].min(edge_nodes - covered);
            return;
        }
        go(u + 1, tris, used, covered, mask, edge_nodes, best);
        let t = tris[u];
        if t.iter().all(|&v| !used[v]) {
            for &v in &t {
                used[v] = true;
            }
            let gained = t.iter().filter(|&&v| v < edge_nodes).count();
            let mask = if Amplifier::is_contact(u) { mask | 1 << (u / 7) } else { mask };
            go(u + 1, tris, used, covered + gained, mask, edge_nodes, best);
            for &v in &t {
                used[v] = false;
            }
        }
    }
    assert_eq!(f.triangles.len(), n);
    go(0, &f.triangles, &mut vec![false; f.node_count], 0, 0, edge_nodes, &mut best);
    best
}

#[test]
fn matching_bound_agrees_with_brute_force() {
    for k in 1..=2 {
        for seed in 0..4 {
            let a = build_amplifier(k, seed).unwrap();
            let oracle = fragment_oracle(&a);
            for (mask, &want) in oracle.iter().enumerate() {
                let inside: Vec<bool> = (0..a.contact_count()).map(|t| mask >> t & 1 == 1).collect();
                assert_eq!(uncovered_given_contacts(&a, &inside), want, "k={k} seed={seed} mask={mask:b}");
            }
            let c = check_amplifier(&a).unwrap();
            println!("amplifier k={k} seed={seed}: {} failing contact selections", c.failures);
        }
    }
}

#[test]
fn fragment_triangles_are_the_amplifier_nodes() {
    let a = build_amplifier(2, 3).unwrap();
    let f = amplifier_to_tp_fragment(&a);
    let mut edges = Vec::new();
    for t in &f.triangles {
        edges.extend([(t[0], t[1]), (t[1], t[2]), (t[0], t[2])]);
    }
    edges.sort_unstable();
    edges.dedup();
    let g = Graph::new(f.node_count, edges).unwrap();
    let mut found = all_triangles(&g);
    found.sort_unstable();
    let mut want: Vec<[usize; 3]> = f
        .triangles
        .iter()
        .map(|t| {
            let mut t = *t;
            t.sort_unstable();
            t
        })
        .collect();
    want.sort_unstable();
    assert_eq!(found, want);
}
