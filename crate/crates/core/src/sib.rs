use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Allele = i64;

/// Genotypes of `n` individuals over `locus_count` loci. Each locus holds an
/// unordered allele pair, stored in the order it was read.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "SibRepr")]
pub struct SibInstance {
    locus_count: usize,
    individuals: Vec<Vec<(Allele, Allele)>>,
}

#[derive(Deserialize)]
struct SibRepr {
    locus_count: usize,
    individuals: Vec<Vec<(Allele, Allele)>>,
}

impl TryFrom<SibRepr> for SibInstance {
    type Error = Error;
    fn try_from(r: SibRepr) -> Result<Self> {
        SibInstance::new(r.locus_count, r.individuals)
    }
}

impl SibInstance {
    pub fn new(locus_count: usize, individuals: Vec<Vec<(Allele, Allele)>>) -> Result<Self> {
        if let Some(i) = individuals.iter().position(|row| row.len() != locus_count) {
            return Err(Error::invalid(format!(
                "individual {i} has {} loci, expected {locus_count}",
                individuals[i].len()
            )));
        }
        Ok(SibInstance {
            locus_count,
            individuals,
        })
    }

    pub fn len(&self) -> usize {
        self.individuals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.individuals.is_empty()
    }

    pub fn locus_count(&self) -> usize {
        self.locus_count
    }

    pub fn individuals(&self) -> &[Vec<(Allele, Allele)>] {
        &self.individuals
    }

    pub fn genotype(&self, individual: usize, locus: usize) -> (Allele, Allele) {
        self.individuals[individual][locus]
    }

    /// Restriction to a subset of individuals, in the given order.
    pub fn subinstance(&self, ids: &[usize]) -> SibInstance {
        SibInstance {
            locus_count: self.locus_count,
            individuals: ids.iter().map(|&i| self.individuals[i].clone()).collect(),
        }
    }
}

/// Which sibling condition a group must satisfy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum AlleleCondition {
    /// At most four distinct alleles per locus.
    Four,
    /// Per locus, pairs can be oriented so that first and second
    /// coordinates each show at most two alleles.
    Two,
}

impl AlleleCondition {
    pub fn from_k(k: u32) -> Result<Self> {
        match k {
            2 => Ok(AlleleCondition::Two),
            4 => Ok(AlleleCondition::Four),
            other => Err(Error::UnsupportedCondition(other)),
        }
    }

    pub fn k(self) -> u32 {
        match self {
            AlleleCondition::Two => 2,
            AlleleCondition::Four => 4,
        }
    }
}

/// One label per individual per locus. A group is feasible when every locus
/// shows at most two labels within it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabelCoverInstance {
    locus_count: usize,
    labels: Vec<Vec<i64>>,
}

impl LabelCoverInstance {
    pub fn new(locus_count: usize, labels: Vec<Vec<i64>>) -> Result<Self> {
        if labels.iter().any(|row| row.len() != locus_count) {
            return Err(Error::invalid("label rows must all have locus_count entries"));
        }
        Ok(LabelCoverInstance {
            locus_count,
            labels,
        })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn locus_count(&self) -> usize {
        self.locus_count
    }

    pub fn labels(&self) -> &[Vec<i64>] {
        &self.labels
    }

    pub fn is_feasible(&self, group: &[usize]) -> bool {
        (0..self.locus_count).all(|j| {
            let mut seen: Vec<i64> = Vec::with_capacity(3);
            for &i in group {
                let l = self.labels[i][j];
                if !seen.contains(&l) {
                    seen.push(l);
                    if seen.len() > 2 {
                        return false;
                    }
                }
            }
            true
        })
    }
}
