use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "scatlin",
    version,
    about = "Scattered linear sets of PG(1, q^6)"
)]
pub struct Cli {
    /// Worker threads for parallel scans (default: available parallelism).
    #[arg(long, global = true)]
    pub workers: Option<usize>,
    /// Emit JSON (the default).
    #[arg(long, global = true, conflicts_with = "table")]
    pub json: bool,
    /// Emit an aligned `path value` table instead of JSON.
    #[arg(long, global = true)]
    pub table: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Decide scatteredness of one q-polynomial.
    Check(CheckArgs),
    /// List every h with h^{q^3+1} = -1 (odd q) or = 1 (even q).
    EnumerateH(EnumerateHArgs),
    /// Weight spectrum and heavy points of the linear set.
    Linset(PolyArgs),
    /// Intersection number of the subspace attached to h.
    Intn(IntnArgs),
    /// ΓL-equivalence of two subspaces U_f and U_g.
    Equiv(EquivArgs),
    /// Rank distribution and MRD check of the code C_f.
    Mrd(MrdArgs),
    /// The auxiliary root classifications for given h.
    Lemmas(LemmasArgs),
    /// Run a named batch of checks; exits 1 on any mismatch.
    Reproduce(ReproduceArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Check(_) => "check",
            Command::EnumerateH(_) => "enumerate-h",
            Command::Linset(_) => "linset",
            Command::Intn(_) => "intn",
            Command::Equiv(_) => "equiv",
            Command::Mrd(_) => "mrd",
            Command::Lemmas(_) => "lemmas",
            Command::Reproduce(_) => "reproduce",
        }
    }
}

/// A q-polynomial given either directly or as a family member.
#[derive(Args, Debug, Clone)]
pub struct PolyArgs {
    /// Field as p^s, e.g. 5^1 or 2^2.
    #[arg(long)]
    pub field: String,
    /// JSON coefficient list or a family spec such as `new_fh:g^17`.
    #[arg(long, conflicts_with = "family")]
    pub poly: Option<String>,
    /// Family tag (new_fh, case1, pseudoregulus, lp, csajbok_mp,
    /// csajbok_mz, trinomial).
    #[arg(long)]
    pub family: Option<String>,
    /// Parameter h for new_fh and trinomial.
    #[arg(long, conflicts_with = "delta")]
    pub h: Option<String>,
    /// Parameter δ for lp, csajbok_mp and csajbok_mz.
    #[arg(long)]
    pub delta: Option<String>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckMethod {
    Oracle,
    Dickson,
    Both,
}

#[derive(Args, Debug)]
pub struct CheckArgs {
    #[command(flatten)]
    pub poly: PolyArgs,
    #[arg(long, value_enum, default_value = "both")]
    pub method: CheckMethod,
    /// Report every violating slope instead of stopping at the first.
    #[arg(long)]
    pub exhaustive: bool,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Odd,
    Even,
}

#[derive(Args, Debug)]
pub struct EnumerateHArgs {
    #[arg(long)]
    pub field: String,
    /// Defaults to the parity of q.
    #[arg(long, value_enum)]
    pub variant: Option<Parity>,
}

#[derive(Args, Debug)]
pub struct IntnArgs {
    #[arg(long)]
    pub field: String,
    /// An element literal or `all`.
    #[arg(long, default_value = "all")]
    pub h: String,
    /// Use σ̂^power; 1 or 5.
    #[arg(long, default_value_t = 1)]
    pub power: usize,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum EquivMethod {
    Auto,
    Exhaustive,
    Linearized,
}

#[derive(Args, Debug)]
pub struct EquivArgs {
    #[arg(long)]
    pub field: String,
    /// JSON coefficient list or family spec.
    #[arg(long)]
    pub left: String,
    /// JSON coefficient list or family spec; omit with --trinomial-search.
    #[arg(long, required_unless_present = "trinomial_search")]
    pub right: Option<String>,
    #[arg(long, value_enum, default_value = "auto")]
    pub method: EquivMethod,
    /// Stop after this many candidates and emit a checkpoint.
    #[arg(long)]
    pub budget: Option<u64>,
    /// Continue from a checkpoint file.
    #[arg(long)]
    pub resume: Option<PathBuf>,
    /// Where to write the checkpoint when the budget runs out.
    #[arg(long)]
    pub checkpoint: Option<PathBuf>,
    /// Decide PΓL-equivalence of the linear sets (adds the adjoint branch
    /// where the right-hand family allows it).
    #[arg(long)]
    pub pgl: bool,
    /// Compare the left side with every trinomial-form target instead of
    /// --right. Exploratory: the outcome is reported, not asserted.
    #[arg(long, conflicts_with_all = ["right", "resume"])]
    pub trinomial_search: bool,
}

#[derive(Args, Debug)]
pub struct MrdArgs {
    #[command(flatten)]
    pub poly: PolyArgs,
    /// Also enumerate all q^12 codewords and compare with the orbit count.
    #[arg(long)]
    pub full_distribution: bool,
    /// Codeword limit for --full-distribution.
    #[arg(long, default_value_t = 1 << 26)]
    pub budget: u64,
    /// Also check the left idealiser with this many sample codewords.
    #[arg(long)]
    pub idealiser: Option<usize>,
}

#[derive(Args, Debug)]
pub struct LemmasArgs {
    #[arg(long)]
    pub field: String,
    /// An element literal or `all`.
    #[arg(long, default_value = "all")]
    pub h: String,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Tag {
    #[value(name = "case1-q5")]
    Case1Q5,
    #[value(name = "case1-q7-negative")]
    Case1Q7Negative,
    #[value(name = "case2-q3")]
    Case2Q3,
    #[value(name = "even-q4-negative")]
    EvenQ4Negative,
    #[value(name = "intn-q3")]
    IntnQ3,
    #[value(name = "trinomial-q3")]
    TrinomialQ3,
    #[value(name = "l4-q5-power5")]
    L4Q5Power5,
    #[value(name = "mrd-q3")]
    MrdQ3,
}

#[derive(Args, Debug)]
pub struct ReproduceArgs {
    #[arg(value_enum)]
    pub tag: Tag,
}
