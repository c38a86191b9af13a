use std::path::PathBuf;

use clap::{Parser, Subcommand};
use relpsi::subgroup_lattice::DEFAULT_LATTICE_CAP;

/// Sums of element orders relative to subgroups of finite groups.
///
/// GROUP arguments are either a Cayley-table file or a construction such as
/// `frobenius(2,3)`, `dihedral(4)`, `abelian(2,2)` or `symmetric(3) x cyclic(5)`.
#[derive(Debug, Parser)]
#[command(name = "relpsi", version)]
pub struct Cli {
    /// Seed for randomized associativity spot checks.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Maximum number of worker threads.
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    /// Write the JSON report to PATH ("-" for standard output).
    #[arg(long, global = true, value_name = "PATH")]
    pub json: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// ψ of the cyclic group of order N.
    PsiCyclic {
        n: u64,
        /// Also sum element orders of C_N directly and compare.
        #[arg(long)]
        brute_force: bool,
    },
    /// The affine group over GF(2^r), optionally times C_q, with its complement.
    Frobenius {
        #[arg(long)]
        r: u32,
        #[arg(long)]
        q: Option<u64>,
        /// Also sum relative orders over the constructed group.
        #[arg(long)]
        brute_force: bool,
    },
    /// Compare every subgroup of every catalog group against the cyclic reference.
    Scan {
        #[arg(long)]
        max_order: usize,
        /// Add the affine groups over GF(q) to the catalog.
        #[arg(long)]
        include_frobenius: bool,
        /// Skip the bijection decision for each pair.
        #[arg(long)]
        no_bijections: bool,
    },
    /// Evaluate every closed-form bound on every subgroup of GROUP.
    CheckBounds { group: String },
    /// Decide whether an order-divisibility bijection onto the cyclic group exists.
    Bijection {
        group: String,
        /// Comma-separated generator encodings; empty for the trivial subgroup.
        #[arg(long, allow_hyphen_values = true)]
        subgroup: String,
    },
    /// ψ_H(G) and its ratio to the cyclic reference for every subgroup of GROUP.
    Ratios { group: String },
    /// Ratios of the Frobenius family for r = 3..=R_MAX.
    Monotonicity {
        #[arg(long, default_value_t = 20)]
        r_max: u32,
    },
    /// f(q) = (q^2 - q + 1)/ψ(C_q) at q = 3·2^a for a = 1..=A_MAX.
    FRatio {
        #[arg(long, default_value_t = 15)]
        a_max: u32,
    },
    /// Print the Cayley table of GROUP in the ingestion format.
    Table { group: String },
}

/// Largest `--max-order` accepted by `scan`.
pub const MAX_SCAN_ORDER: usize = DEFAULT_LATTICE_CAP;
