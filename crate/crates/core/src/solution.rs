use serde::{Deserialize, Serialize};

use crate::ratio::{serde_ratio, Ratio};

/// Pairwise-disjoint selection of set indices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PackingSolution {
    pub selected: Vec<usize>,
    #[serde(with = "serde_ratio")]
    pub objective: Ratio,
}

/// Node-disjoint triangles, each stored with sorted node ids.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrianglePacking {
    pub triangles: Vec<[usize; 3]>,
}

impl TrianglePacking {
    pub fn new(mut triangles: Vec<[usize; 3]>) -> Self {
        for t in &mut triangles {
            t.sort_unstable();
        }
        TrianglePacking { triangles }
    }

    pub fn len(&self) -> usize {
        self.triangles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triangles.is_empty()
    }
}

/// Groups of individuals covering everyone.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverSolution {
    pub groups: Vec<Vec<usize>>,
}

impl CoverSolution {
    pub fn new(mut groups: Vec<Vec<usize>>) -> Self {
        for g in &mut groups {
            g.sort_unstable();
        }
        CoverSolution { groups }
    }

    pub fn len(&self) -> usize {
        self.groups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.groups.is_empty()
    }
}

/// Selected set indices and their union profit.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MpcSolution {
    pub selected: Vec<usize>,
    #[serde(with = "serde_ratio")]
    pub profit: Ratio,
}

/// At most `k` sets and the elements they cover at least twice.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cov2Solution {
    pub selected: Vec<usize>,
    pub twice_covered: Vec<usize>,
}

impl Cov2Solution {
    pub fn objective(&self) -> usize {
        self.twice_covered.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub valid: bool,
    #[serde(with = "serde_ratio")]
    pub objective: Ratio,
    pub violations: Vec<String>,
}

impl VerificationReport {
    pub(crate) fn from_findings(objective: Ratio, violations: Vec<String>) -> Self {
        VerificationReport {
            valid: violations.is_empty(),
            objective,
            violations,
        }
    }
}
