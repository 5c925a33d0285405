use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use gauge_coho::verify::DEFAULT_SEED;

/// Exact cohomology computations for gauge-group classifying spaces over S².
#[derive(Debug, Parser)]
#[command(name = "gauge-coho", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,

    /// Directory for the persistent component cache.
    #[arg(long, global = true, env = "GAUGE_COHO_CACHE")]
    pub cache_dir: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the relations h_n..h_D (or s_n..s_D for --bott).
    Present(SpecArgs),
    /// Per-weight basis monomials, dimensions and elementary divisors.
    Basis(SpecArgs),
    /// Normal form of an expression.
    Reduce {
        #[command(flatten)]
        spec: SpecArgs,
        /// Polynomial, e.g. "x2 - c1^2".
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Normal form of a product of two expressions.
    Multiply {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(allow_hyphen_values = true)]
        left: String,
        #[arg(allow_hyphen_values = true)]
        right: String,
    },
    /// Poincaré series in weights (t = degree 2).
    Poincare(SpecArgs),
    /// Apply the free double suspension to a polynomial in the c_i.
    Suspend(SuspendArgs),
    /// Run every invariant check over a parameter grid.
    Verify(VerifyArgs),
    /// Inspect or clear the component cache.
    Cache {
        #[command(subcommand)]
        action: CacheAction,
    },
}

#[derive(Debug, Args)]
pub struct SpecArgs {
    /// Rank of the bundle (n ≥ 1).
    #[arg(long)]
    pub n: u32,

    /// Degree of the bundle; ignored with --bott.
    #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
    pub k: i64,

    /// Use the loop-space presentation Z[y_1, ...]/(s_n, s_{n+1}, ...) instead.
    #[arg(long)]
    pub bott: bool,

    /// Largest weight (half the cohomological degree) to compute.
    #[arg(long, default_value_t = 10)]
    pub max_weight: u32,

    /// 0 for Z/Q, or a prime p for F_p.
    #[arg(long, default_value_t = 0)]
    pub modulus: u64,
}

#[derive(Debug, Args)]
pub struct SuspendArgs {
    /// Degree of the bundle.
    #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
    pub k: i64,

    /// Truncate the image to c_1..c_n.
    #[arg(long)]
    pub n: Option<u32>,

    /// Largest generator index accepted in the input.
    #[arg(long, default_value_t = 10)]
    pub max_weight: u32,

    /// Also restrict the image to the fibre (every c_i goes to 0).
    #[arg(long = "loop")]
    pub loop_restrict: bool,

    /// Polynomial in c_1, c_2, ...
    #[arg(allow_hyphen_values = true)]
    pub expr: String,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Values of n: a list "2,3" or an inclusive range "1..3".
    #[arg(long, default_value = "2,3", allow_hyphen_values = true)]
    pub n: String,

    /// Values of k: a list "0,1" or an inclusive range "-2..3".
    #[arg(long, default_value = "0,1", allow_hyphen_values = true)]
    pub k: String,

    #[arg(long, default_value_t = 10)]
    pub max_weight: u32,

    /// Coefficient fields as a list; 0 means Z/Q.
    #[arg(long, default_value = "0,2,3")]
    pub modulus: String,

    /// Seed for the randomized checks.
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
}

#[derive(Debug, Subcommand)]
pub enum CacheAction {
    /// List cached components.
    Inspect,
    /// Delete every cached component.
    Clear,
}

/// Parses "a,b,c", "a..b" (inclusive) or a single integer.
pub fn parse_range<T>(text: &str) -> Result<Vec<T>, String>
where
    T: std::str::FromStr + Copy + PartialOrd + std::ops::Add<Output = T> + From<u8>,
{
    let text = text.trim();
    if text.is_empty() {
        return Err("empty range".into());
    }
    let num = |s: &str| -> Result<T, String> {
        s.trim()
            .parse::<T>()
            .map_err(|_| format!("not an integer: {s:?}"))
    };
    // Split "a..b" on the first ".." so that "-2..3" keeps its sign.
    if let Some((lo, hi)) = text.split_once("..") {
        let (lo, hi) = (num(lo)?, num(hi)?);
        if lo > hi {
            return Err(format!("empty range {text:?}"));
        }
        let mut out = vec![lo];
        let mut cur = lo;
        while cur < hi {
            cur = cur + T::from(1);
            out.push(cur);
        }
        return Ok(out);
    }
    text.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(num)
        .collect::<Result<Vec<T>, String>>()
        .and_then(|v| {
            if v.is_empty() {
                Err("empty list".into())
            } else {
                Ok(v)
            }
        })
}
