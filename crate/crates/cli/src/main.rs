//! `linset`: sweeps, constructions and polynomial dumps for F_q-linear sets.

/// `println!` that exits quietly when stdout is closed, as under `| head`.
macro_rules! outln {
    ($($arg:tt)*) => {{
        use std::io::Write as _;
        if let Err(e) = writeln!(std::io::stdout().lock(), $($arg)*) {
            if e.kind() == std::io::ErrorKind::BrokenPipe {
                std::process::exit(0);
            }
            panic!("writing to stdout: {e}");
        }
    }};
}

mod commands;
mod grid;
mod output;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(
    name = "linset",
    version,
    about = "Size bounds for F_q-linear sets over small finite fields"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Audit graph sets {<(x, f(x))>} on PG(1, q^n) over a grid of (q, n, k)
    VerifyLine(Common),
    /// Audit linear sets in PG(2, q^n) (or PG(3, q^n) with --r 4)
    VerifyPlane(PlaneArgs),
    /// Dump the Redei polynomial, the division of X^{q^n} - X by it, and H
    Redei(RedeiArgs),
    /// Build one of the explicit constructions and audit it
    Construct(ConstructArgs),
    /// Bounded searches for sets the size bounds say nothing about
    Explore(ExploreArgs),
    /// Field parameters: modulus, F_q-basis, subfield
    FieldsInfo(Common),
}

#[derive(Args, Clone, Debug)]
pub struct Common {
    /// Subfield orders, comma separated
    #[arg(long, value_delimiter = ',', default_value = "2")]
    pub q: Vec<u64>,
    /// Extension degrees, comma separated
    #[arg(long, value_delimiter = ',')]
    pub n: Vec<usize>,
    /// Ranks, comma separated (default: every admissible rank)
    #[arg(long, value_delimiter = ',')]
    pub k: Vec<usize>,
    /// Vector space dimension of the ambient projective space
    #[arg(long)]
    pub r: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Draw this many random instances per cell (needs --seed)
    #[arg(long, value_name = "N")]
    pub random: Option<u64>,
    /// Enumerate every instance (default when within the cap)
    #[arg(long, conflicts_with = "random")]
    pub exhaustive: bool,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Modulus of F_{p^{hn}} over F_p, constant term first
    #[arg(long, value_delimiter = ',', value_name = "COEFFS")]
    pub modulus: Option<Vec<u32>>,
    /// Skip the Ore cross-check, multiplicity profiles and spread scans
    #[arg(long)]
    pub fast: bool,
    /// Soft per-instance time budget; slower instances are flagged
    #[arg(long, default_value_t = 60.0, value_name = "SECS")]
    pub budget: f64,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Tsv,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Construction {
    /// Rank k on PG(1, q^n) with q^{k-1} + 1 points
    LineTight,
    /// Rank k in PG(2, q^n) with q^{k-1} + q^{k-2} + 1 points
    PlaneTight,
    /// The same pattern in PG(r-1, q^n), r from --r
    SpreadExample,
    /// A subplane PG(2, q^2) of PG(2, q^4) from a rank-5 subspace
    Subplane,
    /// Rank 6 in PG(2, 2^9) with q^5 + q^3 + 1 points
    Rank6,
}

#[derive(Args, Clone, Debug)]
pub struct PlaneArgs {
    #[command(flatten)]
    pub common: Common,
    /// Audit a construction instead of a sweep
    #[arg(long, value_enum)]
    pub construct: Option<Construction>,
}

#[derive(Args, Clone, Debug)]
pub struct RedeiArgs {
    #[command(flatten)]
    pub common: Common,
    /// Use f = Tr on V = {x : Tr(a_i x) = 0}, a rank-k tight example
    #[arg(long, conflicts_with = "map")]
    pub trace: bool,
    /// Coefficients c_0,c_1,... of f = sum c_i X^{q^i}, as element integers
    #[arg(long, value_delimiter = ',')]
    pub map: Option<Vec<u64>>,
    /// F_q-basis of V as element integers (default: the first k basis elements)
    #[arg(long, value_delimiter = ',')]
    pub basis: Option<Vec<u64>>,
}

#[derive(Args, Clone, Debug)]
pub struct ConstructArgs {
    #[arg(value_enum)]
    pub kind: Construction,
    #[command(flatten)]
    pub common: Common,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Search {
    /// Sets on PG(1, q^n) with every point of weight at least 2
    HeavyWeights,
    /// Plane sets with all secants 1 mod q but no (q+1)-secant
    Secants,
}

#[derive(Args, Clone, Debug)]
pub struct ExploreArgs {
    #[arg(value_enum)]
    pub search: Search,
    #[command(flatten)]
    pub common: Common,
}

/// How a command ended, mapped onto the process exit code.
pub enum Failure {
    /// Bad arguments or parameters the library rejects.
    Usage(String),
}

impl From<linset_core::Error> for Failure {
    fn from(e: linset_core::Error) -> Failure {
        Failure::Usage(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::VerifyLine(c) => commands::verify_line(&c),
        Command::VerifyPlane(a) => commands::verify_plane(&a),
        Command::Redei(a) => commands::redei(&a),
        Command::Construct(a) => commands::construct(&a),
        Command::Explore(a) => commands::explore(&a),
        Command::FieldsInfo(c) => commands::fields_info(&c),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
