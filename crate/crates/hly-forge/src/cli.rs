//! Command-line arguments.

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use hly_core::Field;

use crate::presentation::parse_field_flag;

#[derive(Debug, Parser)]
#[command(
    name = "hly-forge",
    version,
    about = "Exact checks and constructions for Hom-Lie-Yamaguti presentations"
)]
pub struct Cli {
    /// Evaluate over GF(p) instead of the file's field (`gf:p`).
    #[arg(long, global = true, value_parser = parse_field_flag)]
    pub field: Option<Field>,
    /// Use the literal formula variants and reject unknown keys.
    #[arg(long, global = true)]
    pub strict: bool,
    /// Witnesses kept per report.
    #[arg(long, global = true, value_name = "K")]
    pub max_failures: Option<usize>,
    /// Choose a block by name when a kind occurs more than once.
    #[arg(long = "pick", global = true, value_name = "NAME")]
    pub pick: Vec<String>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the identities of one kind of object.
    Verify { what: VerifyKind, file: PathBuf },
    /// Build a new presentation and print it.
    Construct { what: ConstructKind, file: PathBuf },
    /// Cochain, cocycle, coboundary and cohomology dimensions.
    Cohomology {
        file: PathBuf,
        /// Highest level to report.
        #[arg(long, default_value_t = 1)]
        level: usize,
        /// Use the complex of the operator's V-structure.
        #[arg(long)]
        twisted: bool,
    },
    /// Enumerate twisted O-operators over GF(p), one JSON line each.
    Search {
        file: PathBuf,
        /// Most candidates to enumerate (default 2^20).
        #[arg(long, value_name = "B")]
        budget: Option<u64>,
    },
    /// Check a truncated deformation of an operator.
    Deform {
        file: PathBuf,
        /// Truncation order; coefficients are padded with zeros or cut.
        #[arg(long, value_name = "N", default_value_t = 2)]
        order: usize,
        /// Second deformation block to compare infinitesimals with.
        #[arg(long, value_name = "NAME")]
        against: Option<String>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum VerifyKind {
    #[value(name = "hom-lie")]
    HomLie,
    #[value(name = "hly")]
    Hly,
    #[value(name = "rep")]
    Rep,
    #[value(name = "cocycle2")]
    Cocycle2,
    #[value(name = "cocycle23")]
    Cocycle23,
    #[value(name = "rota-baxter")]
    RotaBaxter,
    #[value(name = "reynolds")]
    Reynolds,
    #[value(name = "twisted-op")]
    TwistedOp,
    #[value(name = "ns-lie")]
    NsLie,
    #[value(name = "ns-hly")]
    NsHly,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ConstructKind {
    #[value(name = "induced-hly")]
    InducedHly,
    #[value(name = "yau-twist")]
    YauTwist,
    #[value(name = "semidirect")]
    Semidirect,
    #[value(name = "twisted-semidirect")]
    TwistedSemidirect,
    #[value(name = "descendent")]
    Descendent,
    #[value(name = "v-structure")]
    VStructure,
    #[value(name = "induced-rep")]
    InducedRep,
    #[value(name = "ns-from-top")]
    NsFromTop,
    #[value(name = "ns-from-reynolds")]
    NsFromReynolds,
    #[value(name = "subadjacent")]
    Subadjacent,
    #[value(name = "adjacent")]
    Adjacent,
    #[value(name = "ns-from-ns-lie")]
    NsFromNsLie,
    #[value(name = "g-from-f")]
    GFromF,
}

impl VerifyKind {
    pub fn name(self) -> String {
        self.to_possible_value()
            .map(|v| v.get_name().to_string())
            .unwrap_or_default()
    }
}

impl ConstructKind {
    pub fn name(self) -> String {
        self.to_possible_value()
            .map(|v| v.get_name().to_string())
            .unwrap_or_default()
    }
}
