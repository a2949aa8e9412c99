//! lacunae: exact trigonometric-polynomial norms, independence checkers for
//! integer spectra, and Sidon/unconditionality constant estimation.

mod input;
mod output;
mod run;

use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(name = "lacunae", version, about, max_term_width = 100)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format.
    #[arg(long, global = true, default_value = "json", value_parser = ["json", "csv", "human"])]
    pub format: String,

    /// Random seed for the optimizers (fixed seed => byte-identical JSON).
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Quadrature / grid resolution override (also LACUNAE_PRECISION).
    #[arg(long, global = true)]
    pub resolution: Option<usize>,

    /// Worker threads for the parallel sections (default: all cores).
    #[arg(long, global = true)]
    pub parallel: Option<usize>,

    /// Write the output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<std::path::PathBuf>,
}

/// Flags that select or build an integer window.
#[derive(Args, Debug, Clone)]
pub struct WindowArgs {
    /// Explicit comma-separated elements, e.g. "1,25,49".
    #[arg(long, value_name = "INTS")]
    pub elements: Option<String>,

    /// Geometric base j ({j^k}, |j| >= 2).
    #[arg(long, value_name = "J")]
    pub geometric: Option<i64>,

    /// Integer parts of powers of σ (> 1), e.g. "1.5".
    #[arg(long, value_name = "SIGMA")]
    pub power: Option<String>,

    /// Polynomial sequence coefficients c0,c1,... for P(k) = Σ c_i k^i, k >= 1.
    #[arg(long, value_name = "COEFFS")]
    pub poly_seq: Option<String>,

    /// Number of generated elements.
    #[arg(long, default_value_t = 16)]
    pub len: usize,

    /// Use E ∪ -E.
    #[arg(long)]
    pub symmetrize: bool,

    /// Adjoin one element (e.g. 0).
    #[arg(long, value_name = "H")]
    pub adjoin: Option<i64>,

    /// Translate every element by s.
    #[arg(long, value_name = "S")]
    pub translate: Option<i64>,

    /// Scale every element by c (nonzero).
    #[arg(long, value_name = "C")]
    pub scale: Option<i64>,
}

#[derive(Subcommand)]
pub enum Command {
    /// Arithmetical relations and independence checks.
    Relations {
        #[command(subcommand)]
        cmd: RelationsCmd,
    },
    /// Norms of trigonometric polynomials.
    Norm {
        #[command(subcommand)]
        cmd: NormCmd,
    },
    /// Multinomial expansion classes of ∫|1 + Σ z_i e_{q_i}|^p.
    Expand {
        /// Distinct frequencies q, comma-separated.
        #[arg(long, value_name = "INTS")]
        q: String,
        /// Exponent p (integer, decimal or rational).
        #[arg(long)]
        p: String,
        /// Maximal multi-index weight.
        #[arg(long)]
        truncation: u32,
        /// Evaluate at these |z| values (comma-separated complex "re" or "re+imi").
        #[arg(long)]
        z: Option<String>,
    },
    /// Oscillation of ‖εf + g‖ over signs ε.
    Oscillation {
        /// f as '[freqs]' (all-ones) or full JSON {"terms":[...]}.
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: String,
        /// L^p exponent (omit for sup norm).
        #[arg(long)]
        p: Option<f64>,
        /// Use the sup norm.
        #[arg(long)]
        sup: bool,
        #[arg(long, default_value = "complex", value_parser = ["complex", "real"])]
        sign_mode: String,
        #[arg(long, default_value_t = 64)]
        sign_samples: usize,
    },
    /// Unconditionality-constant lower bound.
    Uncond {
        /// Frequencies, comma-separated.
        #[arg(long, value_name = "INTS")]
        freqs: String,
        /// L^p exponent (omit for sup norm).
        #[arg(long)]
        p: Option<f64>,
        /// Use the sup norm.
        #[arg(long)]
        sup: bool,
        #[arg(long, default_value = "real", value_parser = ["complex", "real"])]
        sign_mode: String,
        #[arg(long, default_value_t = 32)]
        starts: usize,
        #[arg(long, default_value_t = 400)]
        iters: usize,
    },
    /// Sidon constants, Hadamard bounds, the lacunary inequality, deviations.
    Sidon {
        #[command(subcommand)]
        cmd: SidonCmd,
    },
    /// Sequence generation, classification and diagnostics.
    Seq {
        #[command(subcommand)]
        cmd: SeqCmd,
    },
}

#[derive(Subcommand)]
pub enum RelationsCmd {
    /// Enumerate canonical relations (or multi-indices) for given m, n.
    Enumerate {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: u32,
        /// Enumerate multi-indices of weight n instead of relations.
        #[arg(long)]
        multiindices: bool,
    },
    /// Decide n-independence of a finite set.
    Independent {
        #[command(flatten)]
        window: WindowArgs,
        #[arg(long)]
        n: u32,
    },
    /// Minimal |Σζ_i p_i| over distinct tail points.
    Pairing {
        #[command(flatten)]
        window: WindowArgs,
        /// Coefficients ζ, comma-separated, all nonzero.
        #[arg(long, value_name = "INTS")]
        zeta: String,
        #[arg(long, default_value_t = 0)]
        tail_start: usize,
    },
    /// Window check of almost independence I(n).
    CheckI {
        #[command(flatten)]
        window: WindowArgs,
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 3)]
        budget: usize,
    },
    /// Window check of block independence J(n).
    CheckJ {
        #[command(flatten)]
        window: WindowArgs,
        /// Break elements, comma-separated (defaults to the two smallest).
        #[arg(long = "break", value_name = "INTS")]
        break_set: Option<String>,
        #[arg(long)]
        tail_start: Option<usize>,
        #[arg(long)]
        n: u32,
        #[arg(long, default_value = "complex", value_parser = ["complex", "real"])]
        sign_mode: String,
    },
    /// Window check of the symmetric block property (real J of E ∪ -E).
    CheckJsym {
        #[command(flatten)]
        window: WindowArgs,
        #[arg(long = "break", value_name = "INTS")]
        break_set: Option<String>,
        #[arg(long)]
        tail_start: Option<usize>,
        #[arg(long)]
        n: u32,
    },
}

#[derive(Subcommand)]
pub enum NormCmd {
    /// Exact ‖f‖_p^p for even integer p.
    Exact {
        #[arg(long)]
        poly: String,
        #[arg(long)]
        p: u32,
    },
    /// Quadrature (∫|f|^p)^{1/p} for real p >= 1.
    Quad {
        #[arg(long)]
        poly: String,
        #[arg(long)]
        p: f64,
    },
    /// Certified sup norm.
    Sup {
        #[arg(long)]
        poly: String,
    },
}

#[derive(Subcommand)]
pub enum SidonCmd {
    /// Lower-bound Sidon constant estimate.
    Estimate {
        /// Frequencies, comma-separated.
        #[arg(long, value_name = "INTS")]
        set: String,
        #[arg(long, default_value_t = 32)]
        starts: usize,
        #[arg(long, default_value_t = 400)]
        iters: usize,
    },
    /// The bound 1 + π²/(2q²−2−π²).
    HadamardBound {
        #[arg(long)]
        q: f64,
    },
    /// Verify the lacunary lower inequality with certified sup norms.
    LacunaryCheck {
        #[arg(long)]
        poly: String,
        /// Break index (1-based).
        #[arg(long)]
        k: usize,
        /// Verified minimal frequency ratio.
        #[arg(long)]
        q: f64,
    },
    /// Joint-distribution deviation from independence.
    Deviation {
        #[arg(long, value_name = "INTS")]
        freqs: String,
        /// Arcs "start:length,start:length,…" in radians.
        #[arg(long)]
        arcs: String,
    },
    /// Reproduce the paper-constant table: √2 and 1/cos(π/2q) lower bounds,
    /// Hadamard-window compliance.
    PaperConstants {
        #[arg(long, default_value_t = 32)]
        starts: usize,
    },
}

#[derive(Subcommand)]
pub enum SeqCmd {
    /// Generate a window from a sequence spec.
    Generate {
        #[command(flatten)]
        window: WindowArgs,
        #[arg(long)]
        count: Option<usize>,
    },
    /// Classify a geometric sequence against its known levels.
    Classify {
        /// Base j, |j| >= 2.
        #[arg(long = "geometric", visible_alias = "j")]
        j: i64,
        #[arg(long)]
        nmax: u32,
        #[arg(long, default_value_t = 16)]
        len: usize,
        /// All four table rows (G, G∪{0}, G∪−G, G∪−G∪{0}).
        #[arg(long)]
        table: bool,
    },
    /// Exhaustive solutions of Σζ_i j^{k_i} = 0.
    Dioph {
        #[arg(long)]
        j: i64,
        #[arg(long)]
        bound: u32,
        /// Weight bound 2n (defaults to n = |j|).
        #[arg(long)]
        n: Option<u32>,
    },
    /// Verify the counterexample identities exactly.
    Identities {
        #[arg(long, default_value_t = 50)]
        nmax: u64,
    },
    /// Sliding-window maximal density.
    Density {
        #[command(flatten)]
        window: WindowArgs,
        #[arg(long)]
        h: u64,
    },
    /// Growth admissibility: ratio >= p+1 and the weight-2p witness search.
    Growth {
        #[command(flatten)]
        window: WindowArgs,
        #[arg(long)]
        p: u32,
    },
}

fn main() {
    let cli = Cli::parse();
    if let Some(n) = cli.parallel {
        // ignore failure if a pool already exists (repeat invocation in tests)
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    match run::dispatch(&cli) {
        Ok(value) => {
            if let Err(e) = output::emit(&cli, &value) {
                eprintln!("error: {e}");
                std::process::exit(1);
            }
        }
        Err(run::CliError::Input(msg)) => {
            eprintln!("error: {msg}");
            std::process::exit(2);
        }
        Err(run::CliError::Internal(msg)) => {
            eprintln!("internal error: {msg}");
            std::process::exit(1);
        }
    }
}
