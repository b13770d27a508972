//! Feasibility of full-sibling groups under the 4-allele and 2-allele
//! conditions.

use serde::{Deserialize, Serialize};

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::sib::{Allele, AlleleCondition, SibInstance};

/// Parent allele sets for one locus and the orientation of every group
/// member's pair (`swapped[i]` refers to the i-th id of the group).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocusWitness {
    pub father: Vec<Allele>,
    pub mother: Vec<Allele>,
    pub swapped: Vec<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrientationWitness {
    pub group: Vec<usize>,
    pub loci: Vec<LocusWitness>,
}

impl OrientationWitness {
    /// Replays the witness: every oriented first allele must lie in the
    /// father set, every second allele in the mother set, and both sets hold
    /// at most two alleles.
    pub fn is_consistent_with(&self, inst: &SibInstance) -> bool {
        if self.loci.len() != inst.locus_count() {
            return false;
        }
        self.loci.iter().enumerate().all(|(j, w)| {
            w.father.len() <= 2
                && w.mother.len() <= 2
                && w.swapped.len() == self.group.len()
                && self.group.iter().zip(&w.swapped).all(|(&p, &sw)| {
                    let (x, y) = inst.genotype(p, j);
                    let (first, second) = if sw { (y, x) } else { (x, y) };
                    w.father.contains(&first) && w.mother.contains(&second)
                })
        })
    }
}

fn check_range(inst: &SibInstance, group: &[usize]) -> Result<()> {
    match group.iter().find(|&&i| i >= inst.len()) {
        Some(i) => Err(Error::invalid(format!("individual {i} out of range 0..{}", inst.len()))),
        None => Ok(()),
    }
}

/// Distinct alleles at locus `j` within the group, or `None` once there are
/// more than four.
fn locus_alleles(inst: &SibInstance, group: &[usize], j: usize) -> Option<Vec<Allele>> {
    let mut seen: Vec<Allele> = Vec::with_capacity(4);
    for &p in group {
        let (x, y) = inst.genotype(p, j);
        for a in [x, y] {
            if !seen.contains(&a) {
                if seen.len() == 4 {
                    return None;
                }
                seen.push(a);
            }
        }
    }
    seen.sort_unstable();
    Some(seen)
}

fn four_allele(inst: &SibInstance, group: &[usize]) -> bool {
    (0..inst.locus_count()).all(|j| locus_alleles(inst, group, j).is_some())
}

/// Nonempty subsets of size ≤ 2 of a sorted allele list, in lexicographic order.
fn small_subsets(alleles: &[Allele]) -> Vec<Vec<Allele>> {
    let mut out = Vec::new();
    for (i, &a) in alleles.iter().enumerate() {
        out.push(vec![a]);
        for &b in &alleles[i + 1..] {
            out.push(vec![a, b]);
        }
    }
    out.sort();
    out
}

fn splits(inst: &SibInstance, group: &[usize], j: usize, father: &[Allele], mother: &[Allele]) -> bool {
    group.iter().all(|&p| {
        let (x, y) = inst.genotype(p, j);
        (father.contains(&x) && mother.contains(&y)) || (father.contains(&y) && mother.contains(&x))
    })
}

fn locus_witness(inst: &SibInstance, group: &[usize], j: usize) -> Option<LocusWitness> {
    let alleles = locus_alleles(inst, group, j)?;
    if group.is_empty() {
        return Some(LocusWitness {
            father: Vec::new(),
            mother: Vec::new(),
            swapped: Vec::new(),
        });
    }
    let choices = small_subsets(&alleles);
    for father in &choices {
        for mother in &choices {
            if splits(inst, group, j, father, mother) {
                let swapped = group
                    .iter()
                    .map(|&p| {
                        let (x, y) = inst.genotype(p, j);
                        !(father.contains(&x) && mother.contains(&y))
                    })
                    .collect();
                return Some(LocusWitness {
                    father: father.clone(),
                    mother: mother.clone(),
                    swapped,
                });
            }
        }
    }
    None
}

fn two_allele(inst: &SibInstance, group: &[usize]) -> bool {
    // Cheap necessary condition first.
    four_allele(inst, group) && (0..inst.locus_count()).all(|j| locus_witness(inst, group, j).is_some())
}

/// Unchecked feasibility test; ids must be in range.
pub fn is_feasible(inst: &SibInstance, group: &[usize], cond: AlleleCondition) -> bool {
    if group.len() <= 2 {
        return true;
    }
    match cond {
        AlleleCondition::Four => four_allele(inst, group),
        AlleleCondition::Two => two_allele(inst, group),
    }
}

pub fn check_4allele(inst: &SibInstance, group: &[usize]) -> Result<bool> {
    check_range(inst, group)?;
    Ok(four_allele(inst, group))
}

pub fn check_2allele(inst: &SibInstance, group: &[usize]) -> Result<bool> {
    check_range(inst, group)?;
    Ok(two_allele(inst, group))
}

/// Lexicographically smallest `(father, mother)` choice per locus, if any.
pub fn witness_2allele(inst: &SibInstance, group: &[usize]) -> Result<Option<OrientationWitness>> {
    check_range(inst, group)?;
    let mut loci = Vec::with_capacity(inst.locus_count());
    for j in 0..inst.locus_count() {
        match locus_witness(inst, group, j) {
            Some(w) => loci.push(w),
            None => return Ok(None),
        }
    }
    Ok(Some(OrientationWitness {
        group: group.to_vec(),
        loci,
    }))
}

pub fn check_group(inst: &SibInstance, group: &[usize], k: u32) -> Result<bool> {
    let cond = AlleleCondition::from_k(k)?;
    check_range(inst, group)?;
    Ok(is_feasible(inst, group, cond))
}

/// All feasible groups of size at most `max_size`, including the empty group,
/// in lexicographic order of their sorted id lists.
///
/// The search extends groups by larger ids only. Once some locus of the
/// current group shows four alleles, a new member may only carry alleles
/// already present there, so only carriers of those alleles are tried.
/// Every feasibility test counts against `budget.max_nodes`.
pub fn enumerate_groups(
    inst: &SibInstance,
    cond: AlleleCondition,
    max_size: usize,
    budget: &Budget,
) -> Result<Vec<Vec<usize>>> {
    if max_size == 0 {
        return Err(Error::invalid("group size bound must be at least 1"));
    }
    let index = AlleleIndex::new(inst);
    let mut meter = budget.meter("group enumeration");
    let mut out = vec![Vec::new()];
    let mut group = Vec::with_capacity(max_size);
    extend(inst, cond, max_size, &index, &mut group, &mut out, &mut meter)?;
    Ok(out)
}

struct AlleleIndex {
    /// Per locus: sorted (allele, individual) pairs, one entry per distinct
    /// allele an individual carries.
    by_locus: Vec<Vec<(Allele, usize)>>,
}

impl AlleleIndex {
    fn new(inst: &SibInstance) -> Self {
        let by_locus = (0..inst.locus_count())
            .map(|j| {
                let mut v: Vec<(Allele, usize)> = Vec::new();
                for p in 0..inst.len() {
                    let (x, y) = inst.genotype(p, j);
                    v.push((x, p));
                    if y != x {
                        v.push((y, p));
                    }
                }
                v.sort_unstable();
                v
            })
            .collect();
        AlleleIndex { by_locus }
    }

    fn carriers(&self, j: usize, allele: Allele) -> impl Iterator<Item = usize> + '_ {
        let v = &self.by_locus[j];
        let start = v.partition_point(|&(a, _)| a < allele);
        v[start..].iter().take_while(move |&&(a, _)| a == allele).map(|&(_, p)| p)
    }
}

fn candidates(inst: &SibInstance, index: &AlleleIndex, group: &[usize]) -> Option<Vec<usize>> {
    let last = *group.last()?;
    let mut best: Option<(usize, Vec<Allele>)> = None;
    for j in 0..inst.locus_count() {
        let alleles = locus_alleles(inst, group, j)?;
        if alleles.len() == 4 && best.as_ref().is_none_or(|b| alleles.len() > b.1.len()) {
            best = Some((j, alleles));
        }
    }
    let (j, alleles) = best?;
    let mut c: Vec<usize> = alleles
        .iter()
        .flat_map(|&a| index.carriers(j, a))
        .filter(|&p| p > last)
        .collect();
    c.sort_unstable();
    c.dedup();
    Some(c)
}

fn extend(
    inst: &SibInstance,
    cond: AlleleCondition,
    max_size: usize,
    index: &AlleleIndex,
    group: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
    meter: &mut crate::budget::Meter,
) -> Result<()> {
    let next: Vec<usize> = match candidates(inst, index, group) {
        Some(c) => c,
        None => {
            let from = group.last().map_or(0, |&l| l + 1);
            (from..inst.len()).collect()
        }
    };
    for p in next {
        meter.tick()?;
        group.push(p);
        if is_feasible(inst, group, cond) {
            out.push(group.clone());
            if group.len() < max_size {
                extend(inst, cond, max_size, index, group, out, meter)?;
            }
        }
        group.pop();
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    /// p=({1,2},{5,5}), q=({3,4},{5,5}), r=({1,1},{5,5}), s=({5,5},{5,5}).
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
        .unwrap()
    }

    #[test]
    fn worked_example() {
        let inst = pqrs();
        assert!(!check_4allele(&inst, &[0, 1, 2, 3]).unwrap());
        assert!(check_4allele(&inst, &[0, 1, 2]).unwrap());
        assert!(!check_2allele(&inst, &[0, 1, 2]).unwrap());
        assert!(check_group(&inst, &[0, 1, 2], 4).unwrap());
        assert!(!check_group(&inst, &[0, 1, 2], 2).unwrap());
    }

    #[test]
    fn pair_witness_is_lexicographically_first() {
        let inst = pqrs();
        let w = witness_2allele(&inst, &[0, 3]).unwrap().unwrap();
        assert_eq!(w.loci[0].father, vec![1, 5]);
        assert_eq!(w.loci[0].mother, vec![2, 5]);
        assert_eq!(w.loci[0].swapped, vec![false, false]);
        assert!(w.is_consistent_with(&inst));
    }

    #[test]
    fn trivial_groups() {
        let inst = pqrs();
        assert!(check_group(&inst, &[], 2).unwrap());
        assert!(check_group(&inst, &[1], 2).unwrap());
        assert!(check_group(&inst, &[0, 1], 2).unwrap());
        assert!(check_group(&inst, &[0], 3).is_err());
        assert!(check_4allele(&inst, &[9]).is_err());
    }

    #[test]
    fn enumeration_on_example() {
        let inst = pqrs();
        let four = enumerate_groups(&inst, AlleleCondition::Four, 3, &Budget::default()).unwrap();
        assert!(four.contains(&vec![0, 1, 2]));
        assert_eq!(four.iter().filter(|g| g.len() == 2).count(), 6);
        let two = enumerate_groups(&inst, AlleleCondition::Two, 3, &Budget::default()).unwrap();
        assert!(!two.contains(&vec![0, 1, 2]));
        let pairs = enumerate_groups(&inst, AlleleCondition::Two, 2, &Budget::default()).unwrap();
        assert_eq!(pairs.len(), 6 + 4 + 1);
    }

    #[test]
    fn enumeration_budget_refuses() {
        let inst = pqrs();
        let err = enumerate_groups(&inst, AlleleCondition::Four, 4, &Budget::nodes(3)).unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded { .. }));
    }
}
