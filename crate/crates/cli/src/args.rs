use clap::{Args, Parser, Subcommand, ValueEnum};

/// Counts binomial coefficients exactly divisible by prime powers and
/// synthesizes the block-count polynomials P_j.
#[derive(Parser, Debug)]
#[command(name = "ppk", version)]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,

    /// Worker threads for the parallel scans.
    #[arg(long, env = "PPK_JOBS", global = true)]
    pub jobs: Option<usize>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print P_j (or P'_j with --cumulative).
    Poly {
        #[arg(long, default_value_t = 2)]
        p: u32,
        #[arg(long)]
        j: usize,
        /// Print P'_j = P_0 + ... + P_{j-1} instead.
        #[arg(long)]
        cumulative: bool,
        /// Allow j above the default limit.
        #[arg(long)]
        force: bool,
    },
    /// Print the row polynomial T_n(x) = Σ θ_p(j, n) x^j.
    Theta {
        #[arg(long, default_value_t = 2)]
        p: u32,
        #[arg(long)]
        n: u64,
    },
    /// Print the rational function r_w.
    Rw {
        #[arg(long, default_value_t = 2)]
        p: u32,
        #[arg(long)]
        word: String,
        /// Also print the power series to this order.
        #[arg(long)]
        order: Option<usize>,
    },
    /// Print the coefficient series of a monomial, e.g. "X[10]^2*X[110]".
    Coeffs {
        #[arg(long, default_value_t = 2)]
        p: u32,
        #[arg(long)]
        monomial: String,
        /// Highest coefficient index.
        #[arg(long, default_value_t = 10)]
        j: usize,
        /// Overrides --j as the series order.
        #[arg(long)]
        order: Option<usize>,
    },
    /// Check the polynomials, row counts and valuations against brute force.
    Verify {
        #[arg(long, default_value_t = 2)]
        p: u32,
        #[arg(long, default_value_t = 512)]
        nmax: u64,
        #[arg(long, value_enum, default_value_t = Check::All)]
        check: Check,
    },
    /// Print the term counts N_j and bounds B_j as two lines.
    Terms {
        #[arg(long, default_value_t = 2)]
        p: u32,
        #[arg(long, default_value_t = 11)]
        jmax: usize,
        /// Allow jmax above the default limit.
        #[arg(long)]
        force: bool,
    },
    /// Classify the coefficient behaviour of log r_w.
    Classify {
        #[arg(long, default_value_t = 2)]
        p: u32,
        /// A single word to classify.
        #[arg(long, conflicts_with_all = ["max_len", "family"])]
        word: Option<String>,
        /// Scan all base-2 words up to this length.
        #[arg(long, conflicts_with = "family")]
        max_len: Option<usize>,
        /// Print a family closed form instead.
        #[arg(long, value_enum, requires = "s")]
        family: Option<FamilyArg>,
        #[arg(long)]
        s: Option<usize>,
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
    },
    /// Print the θ̃ table.
    Tildetheta {
        #[arg(long, default_value_t = 2)]
        p: u32,
        #[arg(long, default_value_t = 9)]
        kmax: usize,
        #[arg(long, default_value_t = 17)]
        nmax: usize,
    },
    /// Compare sampled column densities with the P_j prediction (p = 2).
    Columns {
        /// A single column; otherwise all t <= --tmax.
        #[arg(long, conflicts_with = "tmax")]
        t: Option<u64>,
        #[arg(long, default_value_t = 64)]
        tmax: u64,
        #[arg(long, default_value_t = 4)]
        jmax: usize,
        #[arg(long, default_value_t = 1 << 20)]
        mmax: u64,
    },
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Check {
    All,
    Valuations,
    Rows,
    Polynomials,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilyArg {
    OnesZero,
    OnesZeroZero,
}
