use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

pub const DEFAULT_SEED: u64 = 20_240_601;

#[derive(Parser, Debug, Clone)]
#[command(name = "packcover", version, about = "Triangle packing, sibling cover, profit coverage and 2-coverage")]
pub struct Cli {
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Search-node budget for exact oracles and enumerations.
    #[arg(long, global = true, default_value_t = 50_000_000, value_parser = clap::value_parser!(u64).range(1..))]
    pub budget_nodes: u64,
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    pub budget_ms: Option<u64>,
    /// Slack for the local-search schemes, as `p/q` or a decimal.
    #[arg(long, global = true, default_value = "1/10")]
    pub eps: String,
    /// Also write the report(s) to this file.
    #[arg(long, global = true)]
    pub json: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Node-disjoint triangle packing.
    Tp {
        /// greedy | local:S | exact
        #[arg(long, default_value = "local:2")]
        algo: String,
        #[arg(required = true)]
        inputs: Vec<PathBuf>,
    },
    /// Feasibility of one group of individuals.
    Sibcheck {
        #[arg(long, default_value_t = 2)]
        k: u32,
        /// Comma-separated 1-based individual ids.
        #[arg(long)]
        group: String,
        input: PathBuf,
    },
    /// Full-sibling cover.
    Sibcover {
        #[arg(long, default_value_t = 2)]
        k: u32,
        /// threshold:C | a3 | a4 | greedy[:A] | exact[:A]
        #[arg(long, default_value = "a3")]
        algo: String,
        #[arg(required = true)]
        inputs: Vec<PathBuf>,
    },
    /// Maximum profit coverage.
    Mpc {
        /// exact2 | pack:A | greedy | 2imp | exact
        #[arg(long, default_value = "2imp")]
        algo: String,
        #[arg(long, default_value_t = 2)]
        alpha: u32,
        #[arg(long, default_value_t = 1)]
        delta: u64,
        #[arg(required = true)]
        inputs: Vec<PathBuf>,
    },
    /// Choose at most K sets covering as many elements twice as possible.
    Cov2 {
        #[arg(long)]
        k: usize,
        /// pairwise | twophase | combined | exact
        #[arg(long, default_value = "combined")]
        algo: String,
        #[arg(required = true)]
        inputs: Vec<PathBuf>,
    },
    /// Build a target instance and its certificate from a source instance.
    Reduce {
        #[arg(value_enum)]
        kind: ReduceKind,
        input: PathBuf,
        /// Replication per equation pair (lin2-to-tp).
        #[arg(long, default_value_t = 1)]
        m: usize,
        /// Allele condition (2 or 4) for the allele targets, set budget for ds-to-cov2.
        #[arg(long)]
        k: Option<usize>,
        /// Also emit the metric-ball presentation (is-to-mpc).
        #[arg(long)]
        metric: bool,
        /// Half-edge length of the metric presentation.
        #[arg(long, default_value = "1")]
        radius: String,
        /// Target instance file; defaults next to the input.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Certificate file; defaults to the target file plus `.cert.json`.
        #[arg(long)]
        cert: Option<PathBuf>,
    },
    /// Carry a solution across a reduction.
    Transport {
        #[arg(long)]
        cert: PathBuf,
        #[arg(long)]
        solution: PathBuf,
        /// Instance to verify the transported solution against.
        #[arg(long)]
        target: Option<PathBuf>,
    },
    /// Replace a packing of a lin2-to-tp graph by the encoding of its majority assignment.
    Normalize {
        #[arg(long)]
        cert: PathBuf,
        packing: PathBuf,
    },
    /// Check a solution file (a bare solution or a report) against an instance.
    Verify {
        #[arg(long, value_enum)]
        problem: Problem,
        /// Allele condition for sibcover, set budget for cov2.
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        max_group: Option<usize>,
        instance: PathBuf,
        solution: PathBuf,
    },
    /// Run a registered acceptance suite; without a name, list the suites.
    Suite { name: Option<String> },
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReduceKind {
    Lin2ToTp,
    TpToAllele,
    CutToAllele,
    ColorToAllele,
    IsToMpc,
    DsToCov2,
}

impl ReduceKind {
    pub fn name(self) -> &'static str {
        match self {
            ReduceKind::Lin2ToTp => "lin2-to-tp",
            ReduceKind::TpToAllele => "tp-to-allele",
            ReduceKind::CutToAllele => "cut-to-allele",
            ReduceKind::ColorToAllele => "color-to-allele",
            ReduceKind::IsToMpc => "is-to-mpc",
            ReduceKind::DsToCov2 => "ds-to-cov2",
        }
    }
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Problem {
    Tp,
    Sibcover,
    Mpc,
    Cov2,
}
