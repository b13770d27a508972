use std::collections::BTreeMap;

use packcover_core::generate::gen_random_cubic;
use packcover_core::ratio::int;
use packcover_core::sibcheck::enumerate_groups;
use packcover_core::verify::{verify, Instance, Solution};
use packcover_core::{AlleleCondition, Budget, Graph, Ratio};
use packcover_reductions::cut::{cut_solution_to_cover, cut_to_allele, uncut_edges, CutCertificate, Role};

fn k4() -> Graph {
    Graph::new(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap()
}

fn sides(n: usize, mask: u32) -> Vec<bool> {
    (0..n).map(|u| mask >> u & 1 == 1).collect()
}

#[test]
fn k4_every_bipartition() {
    let g = k4();
    let (inst, cert) = cut_to_allele(&g).unwrap();
    assert_eq!(inst.len(), 288);
    assert_eq!(inst.locus_count(), 2);
    assert_eq!(cert.lower_bound(), 78);
    let mut sizes = BTreeMap::new();
    for mask in 0..16 {
        let side = sides(4, mask);
        let cover = cut_solution_to_cover(&side, &cert).unwrap();
        let r = verify(
            Instance::Cover { inst: &inst, cond: AlleleCondition::Two, max_group: None },
            Solution::Cover(&cover),
        )
        .unwrap();
        assert!(r.valid, "{:?}", r.violations);
        let c = uncut_edges(&g, &side);
        assert_eq!(cover.len(), 78 + c);
        sizes.insert(mask, cover.len());
    }
    // Best bipartition of K4 cuts 4 of 6 edges.
    assert_eq!(sizes.values().min(), Some(&80));
    assert_eq!(sizes[&0], 84);
    assert_eq!(sizes[&15], 84);
}

#[test]
fn random_cubic_forward_formula() {
    for seed in 0..10 {
        let n = [6, 8, 10][seed as usize % 3];
        let g = gen_random_cubic(n, seed).unwrap();
        let (inst, cert) = cut_to_allele(&g).unwrap();
        assert_eq!(cert.total_potential(), Ratio::new(39 * n as i64, 2));
        let cond = AlleleCondition::Two;
        let mut prev: Option<(usize, usize)> = None;
        for mask in [0u32, 0b1010_1010, 0b0110_0101, 0b1111_0000] {
            let side = sides(n, mask);
            let cover = cut_solution_to_cover(&side, &cert).unwrap();
            let r = verify(Instance::Cover { inst: &inst, cond, max_group: None }, Solution::Cover(&cover)).unwrap();
            assert!(r.valid, "{:?}", r.violations);
            let c = uncut_edges(&g, &side);
            assert_eq!(cover.len() as i64, 39 * n as i64 / 2 + c as i64);
            if let Some((len, uc)) = prev {
                assert_eq!(cover.len() as i64 - len as i64, c as i64 - uc as i64);
            }
            prev = Some((cover.len(), c));
        }
    }
}

#[test]
fn potential_per_source_node() {
    let (_, cert) = cut_to_allele(&k4()).unwrap();
    for u in 0..4 {
        let own: Ratio = cert.individuals.iter().filter(|i| i.gadget == Some(u)).map(|i| i.potential).sum();
        // Each rung's potential is split between the two gadgets it joins.
        let rungs: Ratio = cert
            .individuals
            .iter()
            .filter(|i| matches!(i.role, Role::Rung { edge, .. } if { let c = cert.connections[edge]; c.u == u || c.v == u }))
            .map(|i| i.potential / int(2))
            .sum();
        assert_eq!(own + rungs, Ratio::new(39, 2));
    }
}

fn structure_edges(cert: &CutCertificate, group: &[usize]) -> Vec<(usize, usize)> {
    group.iter().map(|&i| cert.individuals[i].ends).collect()
}

/// Shape of a set of first-locus edges: path of three, four-cycle, or other.
fn shape(edges: &[(usize, usize)]) -> &'static str {
    let mut deg = BTreeMap::new();
    for &(a, b) in edges {
        *deg.entry(a).or_insert(0) += 1;
        *deg.entry(b).or_insert(0) += 1;
    }
    let mut d: Vec<i32> = deg.values().copied().collect();
    d.sort_unstable();
    match (edges.len(), d.as_slice()) {
        (3, [1, 1, 2, 2]) => "path",
        (4, [2, 2, 2, 2]) => "cycle",
        _ => "other",
    }
}

#[test]
fn feasible_group_catalogue() {
    let (inst, cert) = cut_to_allele(&k4()).unwrap();
    let groups = enumerate_groups(&inst, AlleleCondition::Two, 6, &Budget::nodes(50_000_000)).unwrap();
    let mut counts = BTreeMap::new();
    for g in &groups {
        let p: Ratio = g.iter().map(|&i| cert.individuals[i].potential).sum();
        assert!(p <= int(1), "group {g:?} has potential {p}");
        if g.len() < 3 {
            continue;
        }
        let s = shape(&structure_edges(&cert, g));
        assert_ne!(s, "other", "group {g:?}");
        let wraps = g.iter().filter(|&&i| matches!(cert.individuals[i].role, Role::Wrap { .. })).count();
        if wraps > 0 {
            assert_eq!((g.len(), wraps), (3, 1), "wrap inside {g:?}");
            let gadget = cert.individuals[g[0]].gadget.unwrap();
            let mut alleles: Vec<i64> = g.iter().flat_map(|&i| [cert.individuals[i].label.0, cert.individuals[i].label.1]).collect();
            alleles.sort_unstable();
            alleles.dedup();
            assert!(alleles.iter().all(|&a| a == 10 + 2 * gadget as i64 || a == 11 + 2 * gadget as i64));
        }
        *counts.entry((g.len(), s, wraps)).or_insert(0usize) += 1;
    }
    println!("feasible groups of size >= 3 by (size, shape, wraps): {counts:?}");
    assert!(counts.keys().all(|&(len, _, _)| len <= 4));
}

#[test]
fn rejects_non_cubic_and_is_deterministic() {
    assert!(cut_to_allele(&Graph::new(4, [(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap()).is_err());
    assert_eq!(cut_to_allele(&k4()).unwrap(), cut_to_allele(&k4()).unwrap());
}
