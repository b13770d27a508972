//! Executable reductions into triangle packing, sibling cover and profit
//! coverage, with certificates for moving solutions back and forth.

pub mod coloring;
pub mod cut;
pub mod is_mpc;
pub mod labelcover;
pub mod lin2tp;

use packcover_core::Graph;
use serde::{Deserialize, Serialize};

/// Bookkeeping emitted with a reduction, tagged by kind.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ReductionCertificate {
    Lin2ToTp(lin2tp::Lin2TpCertificate),
    TpToAllele {
        k: u32,
        graph: Graph,
        #[serde(flatten)]
        cert: labelcover::TpLabelCertificate,
    },
    CutToAllele(cut::CutCertificate),
    ColorToAllele(coloring::ColoringCertificate),
    IsToMpc {
        graph: Graph,
        metric: Option<is_mpc::MetricPresentation>,
    },
    DsToCov2 {
        k: usize,
        graph: Graph,
    },
}

impl ReductionCertificate {
    pub fn kind(&self) -> &'static str {
        match self {
            ReductionCertificate::Lin2ToTp(_) => "lin2-to-tp",
            ReductionCertificate::TpToAllele { .. } => "tp-to-allele",
            ReductionCertificate::CutToAllele(_) => "cut-to-allele",
            ReductionCertificate::ColorToAllele(_) => "color-to-allele",
            ReductionCertificate::IsToMpc { .. } => "is-to-mpc",
            ReductionCertificate::DsToCov2 { .. } => "ds-to-cov2",
        }
    }
}
