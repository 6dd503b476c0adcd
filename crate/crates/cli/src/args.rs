use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "sigmacover",
    version,
    about = "σ-class predicates and covering-system verification on permutation groups"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// σ(G), class memberships, Hall σ-set existence and residual order
    Classify {
        #[command(flatten)]
        target: Target,
        #[command(flatten)]
        common: Common,
        /// Partition: "sigma1" or blocks like "[2,3][5]"
        #[arg(long, default_value = "sigma1")]
        sigma: String,
    },
    /// The σ-nilpotent residual
    Residual {
        #[command(flatten)]
        target: Target,
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value = "sigma1")]
        sigma: String,
    },
    /// Whether the subgroup generated by --gen is σ-permutable
    Permutable {
        #[command(flatten)]
        target: Target,
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value = "sigma1")]
        sigma: String,
        /// Generator of the subgroup in cycle notation (repeatable)
        #[arg(long = "gen", value_name = "CYCLES")]
        gens: Vec<String>,
    },
    /// Run one statement verifier
    Verify {
        #[command(flatten)]
        target: Target,
        #[command(flatten)]
        common: Common,
        /// Statement id, e.g. ThmA.ii or Lem2.5.fwd
        #[arg(long)]
        statement: String,
        /// Partition, or "all" for every partition of π(G)
        #[arg(long, default_value = "sigma1")]
        sigma: String,
        /// For Lem2.2: the prime set π, comma separated (defaults to the blocks of σ)
        #[arg(long, value_delimiter = ',')]
        pi: Option<Vec<u64>>,
        /// For Lem2.5.conv: generators of D (repeatable; default is an exhaustive search)
        #[arg(long = "d-gen", value_name = "CYCLES")]
        d_gens: Vec<String>,
        /// For Lem2.5.conv: generators of M (repeatable)
        #[arg(long = "m-gen", value_name = "CYCLES")]
        m_gens: Vec<String>,
    },
    /// Run every applicable verifier over a corpus
    Campaign {
        #[command(flatten)]
        common: Common,
        /// Partition, or "all" for every partition of each π(G)
        #[arg(long, default_value = "all")]
        sigma: String,
        /// Only these statements (comma separated or repeated)
        #[arg(long, value_delimiter = ',')]
        only: Vec<String>,
        /// Write the machine-readable report here
        #[arg(long)]
        out: Option<PathBuf>,
        /// Worker threads (default: available parallelism)
        #[arg(long)]
        jobs: Option<usize>,
        /// Leave out wall-clock fields so reports are byte-identical across runs
        #[arg(long)]
        no_timestamps: bool,
    },
    /// List the groups of a corpus
    CorpusList {
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Args, Debug)]
pub struct Target {
    /// Corpus group name
    #[arg(value_name = "GROUP", required_unless_present = "group")]
    pub name: Option<String>,
    #[arg(long, conflicts_with = "name")]
    pub group: Option<String>,
}

impl Target {
    pub fn name(&self) -> &str {
        self.group
            .as_deref()
            .or(self.name.as_deref())
            .expect("clap enforces one of the two")
    }
}

#[derive(Args, Debug)]
pub struct Common {
    /// "builtin" or a path to a corpus file
    #[arg(long, visible_alias = "corpus-file", default_value = "builtin")]
    pub corpus: String,
    #[arg(long, value_enum, default_value_t = Format::Human)]
    pub format: Format,
    #[arg(long)]
    pub element_cache: Option<u64>,
    #[arg(long)]
    pub subgroup_bound: Option<u64>,
    #[arg(long)]
    pub hall_set_cap: Option<u64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Human,
    Machine,
}
