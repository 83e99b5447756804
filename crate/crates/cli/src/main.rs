//! `invorder`: invariant orders on magmas, quandles and groups from the command line.
//!
//! Exit status: 0 success, 1 property refuted, 2 inconclusive at the budget
//! searched, 3 usage or parse error.

use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand};
use invorder::order::Side;
use invorder::Error;

mod cone;
mod finite;
mod groups;
mod input;

#[derive(Parser, Debug)]
#[command(name = "invorder", version, about = "Invariant orders on magmas, quandles and groups")]
struct Cli {
    /// Worker threads for parallel searches (default: all cores).
    #[arg(long, global = true, value_name = "N")]
    threads: Option<usize>,
    /// Seed for the ChaCha8 generator used by sampled checks.
    #[arg(long, global = true, default_value_t = 0, value_name = "SEED")]
    prng_seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check quandle, rack or group axioms of a table.
    Check(CheckArgs),
    /// Enumerate invariant total orders as chi lines, or count them.
    Orders(OrdersArgs),
    /// Finite intersection query over families of required pairs.
    Query(QueryArgs),
    /// Look for an obstruction to right orders on a quandle or on Conj(G).
    Obstruct(ObstructArgs),
    /// Positive cone closures, extension search and non-extension certificates.
    Conrad(ConradArgs),
    /// Right invariance of the conjugation order induced by a bi-order.
    Induce(InduceArgs),
    /// Lexicographic order on a product of magmas.
    Lex(LexArgs),
    /// Encode orders given as rankings into a chi file.
    Encode(EncodeArgs),
    /// Decode a chi file against a magma, accepting or rejecting each vector.
    Decode(DecodeArgs),
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("axioms").args(["quandle", "rack", "group"])))]
struct CheckArgs {
    /// Magma table.
    file: PathBuf,
    /// Quandle axioms (the default).
    #[arg(long)]
    quandle: bool,
    /// Rack axioms: quandle axioms without idempotence.
    #[arg(long)]
    rack: bool,
    /// Group axioms; identity and inverses are read from the file or derived.
    #[arg(long)]
    group: bool,
}

#[derive(Args, Debug)]
struct OrdersArgs {
    /// Magma table.
    file: PathBuf,
    /// Invariance side: left, right or bi.
    #[arg(long)]
    side: Side,
    /// Print only the number of orders.
    #[arg(long)]
    count: bool,
    /// Stop after N orders.
    #[arg(long, value_name = "N")]
    limit: Option<usize>,
    /// File of required pairs `a b`, one per line.
    #[arg(long, value_name = "PAIRS")]
    constrain: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct QueryArgs {
    /// Magma table.
    file: PathBuf,
    /// Invariance side: left, right or bi.
    #[arg(long)]
    side: Side,
    /// One family of pairs per line, pairs separated by `;`.
    #[arg(long, value_name = "FAMILIES")]
    fip: PathBuf,
    /// Give up when the magma has more orders than this.
    #[arg(long, default_value_t = 1_000_000)]
    max_orders: usize,
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("target").args(["file", "group"]).required(true)))]
struct ObstructArgs {
    /// Magma or quandle table.
    file: Option<PathBuf>,
    /// Group spec: Z^k, heisenberg, klein, free:k, torus:n:m, cyclic:n.
    #[arg(long, requires = "radius")]
    group: Option<String>,
    /// Ball radius for the group search.
    #[arg(long)]
    radius: Option<usize>,
    /// Largest exponent tried.
    #[arg(long, default_value_t = 6)]
    n_max: u32,
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("mode").args(["witness_max", "extend", "verify_cone", "test", "adjudicate"])))]
pub struct ConradArgs {
    /// Group spec; may come from --spec instead.
    #[arg(long)]
    group: Option<String>,
    /// Seed words of the cone (none: the empty seed).
    #[arg(long, num_args = 1.., value_name = "WORD")]
    seed: Vec<String>,
    /// Ball radius, or an inclusive sweep `lo..hi`.
    #[arg(long, value_name = "R")]
    radius: Option<String>,
    /// Cone spec file with `group`, `seed`, `witness-max` and `radius` lines.
    #[arg(long, value_name = "FILE")]
    spec: Option<PathBuf>,
    /// Search for a certificate with at most K witnesses.
    #[arg(long, value_name = "K")]
    witness_max: Option<usize>,
    /// Search the ball for a total cone containing the seed.
    #[arg(long)]
    extend: bool,
    /// Check a cone predicate file for closure, purity and totality.
    #[arg(long, value_name = "PREDICATE")]
    verify_cone: Option<PathBuf>,
    /// Run the sign-vector test on these words.
    #[arg(long, num_args = 1.., value_name = "WORD")]
    test: Vec<String>,
    /// Certificate search, extension search and the lexicographic candidate cones over every radius.
    #[arg(long)]
    adjudicate: bool,
    /// Maximum closure size before the closure is reported partial
    #[arg(long, value_name = "N", default_value_t = invorder::cone::DEFAULT_CLOSURE_BUDGET)]
    closure_budget: usize,
    /// Maximum search nodes for the extension search
    #[arg(long, value_name = "N", default_value_t = invorder::cone::DEFAULT_NODE_BUDGET)]
    node_budget: usize,
    /// Maximum ball size
    #[arg(long, value_name = "N", default_value_t = invorder::groups::DEFAULT_BALL_BUDGET)]
    ball_budget: usize,
}

#[derive(Args, Debug)]
pub struct InduceArgs {
    /// Group spec: Z^k or heisenberg.
    #[arg(long)]
    group: String,
    /// Bi-order on the group; only `lex` is available.
    #[arg(long, default_value = "lex")]
    biorder: String,
    /// Sampled triples.
    #[arg(long, default_value_t = 10_000)]
    samples: usize,
    /// Radius of the sampled ball.
    #[arg(long)]
    radius: usize,
    /// Radius of the exhaustively checked ball.
    #[arg(long, default_value_t = 2)]
    exhaustive_radius: usize,
    /// Radius of the commuting-powers scan.
    #[arg(long, default_value_t = 3)]
    neumann_radius: usize,
    /// Largest exponent in the commuting-powers scan.
    #[arg(long, default_value_t = 5)]
    n_max: u32,
}

#[derive(Args, Debug)]
struct LexArgs {
    /// Comma-separated factor tables, each optionally `file@basepoint`.
    product: String,
    /// One chi file per factor, each holding one order.
    #[arg(required = true)]
    orders: Vec<PathBuf>,
    /// Side to verify (default: the side named in the factor files).
    #[arg(long)]
    side: Option<Side>,
}

#[derive(Args, Debug)]
struct EncodeArgs {
    /// Rankings, one order per line listing elements from smallest to largest.
    file: PathBuf,
    /// Side written to the chi header.
    #[arg(long, default_value = "right")]
    side: Side,
    /// Verify every order against this magma before encoding.
    #[arg(long, value_name = "FILE")]
    magma: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct DecodeArgs {
    /// Chi file.
    chi: PathBuf,
    /// Magma table the vectors are checked against.
    magma: PathBuf,
    /// Overrides the side named in the chi header.
    #[arg(long)]
    side: Option<Side>,
}

/// What a command established, mapped onto the exit status.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Success,
    Refuted,
    Inconclusive,
}

impl Status {
    fn code(self) -> u8 {
        match self {
            Status::Success => 0,
            Status::Refuted => 1,
            Status::Inconclusive => 2,
        }
    }
}

/// Failure to run a command at all.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Library(Error),
    Io(io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Library(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Library(
                Error::BudgetExceeded(_)
                | Error::BoundExceeded { .. }
                | Error::SizeOverflow { .. }
                | Error::CountOverflow
                | Error::Internal(_),
            ) => 2,
            Failure::Io(e) if e.kind() == io::ErrorKind::BrokenPipe => 0,
            _ => 3,
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Usage(m) => m.clone(),
            Failure::Library(e) => e.to_string(),
            Failure::Io(e) => e.to_string(),
        }
    }
}

pub type Outcome = Result<Status, Failure>;

fn run(cli: Cli, out: &mut dyn Write) -> Outcome {
    let seed = cli.prng_seed;
    match cli.command {
        Command::Check(a) => finite::check(out, &a.file, a.rack, a.group),
        Command::Orders(a) => finite::orders(out, &a.file, a.side, a.count, a.limit, a.constrain.as_deref()),
        Command::Query(a) => finite::query(out, &a.file, a.side, &a.fip, a.max_orders),
        Command::Obstruct(a) => match (a.file, a.group) {
            (Some(file), None) => finite::obstruct(out, &file),
            (None, Some(spec)) => groups::obstruct(out, &spec, a.radius.expect("required by clap"), a.n_max),
            _ => Err(Failure::Usage("give either a magma file or --group".into())),
        },
        Command::Conrad(a) => cone::conrad(out, &a),
        Command::Induce(a) => groups::induce(out, &a, seed),
        Command::Lex(a) => finite::lex(out, &a.product, &a.orders, a.side),
        Command::Encode(a) => finite::encode(out, &a.file, a.side, a.magma.as_deref()),
        Command::Decode(a) => finite::decode(out, &a.chi, &a.magma, a.side),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 3 } else { 0 });
        }
    };
    if let Some(n) = cli.threads {
        if n == 0 {
            eprintln!("error: --threads must be at least 1");
            return ExitCode::from(3);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(3);
        }
    }
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    let result = run(cli, &mut out);
    let flushed = out.flush();
    match (result, flushed) {
        (Ok(status), Ok(())) => ExitCode::from(status.code()),
        (Ok(_), Err(e)) => finish_err(Failure::Io(e)),
        (Err(f), _) => finish_err(f),
    }
}

fn finish_err(f: Failure) -> ExitCode {
    let code = f.code();
    if code != 0 {
        eprintln!("error: {}", f.message());
    }
    ExitCode::from(code)
}
