//! Batch front end: JSON files in, deterministic text or JSON out.
//!
//! Exit codes: 0 success, 1 validation error (module error name plus
//! witness on stderr), 2 parse error.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;

use markedord::coloring::{
    chi_polynomial, constrained_acyclic_count, count_proper_extensions, eval_chi, reciprocity_pairs,
};
use markedord::json::{
    self, coloring_from_str, graph_from_str, marking_from_str, poly_to_json, JsonError,
};
use markedord::marked::symbolic_polynomial;
use markedord::poly::MultiPoly;
use markedord::poset::Poset;
use markedord::triangles::{alpha_polynomial, alpha_via_moebius, count_mt_direct, signed_dmt_sum};

#[derive(Parser)]
#[command(
    name = "markedord",
    version,
    about = "Exact counting for marked posets, monotone triangles, and partial graph colorings"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Marked order polytope operations on a marking file
    Mop {
        #[command(subcommand)]
        op: MopOp,
    },
    /// Monotone triangle operations
    Mt {
        #[command(subcommand)]
        op: MtOp,
    },
    /// Partial graph coloring operations
    Chrom {
        #[command(subcommand)]
        op: ChromOp,
    },
    /// Write a seeded random corpus of marking files
    Corpus {
        /// RNG seed; affects only which instances are generated
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 20)]
        count: usize,
        /// Largest poset size in the corpus
        #[arg(long, default_value_t = 7)]
        max_size: usize,
        /// Output directory
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(clap::Args)]
struct MarkingInput {
    /// Marking JSON file
    #[arg(short, long)]
    input: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Subcommand)]
enum MopOp {
    /// Number of integer order-preserving extensions
    Count(MarkingInput),
    /// Number of strict extensions
    Strict(MarkingInput),
    /// The counting polynomial on the marking's cell
    Poly(MarkingInput),
    /// Dimension of the marked order polytope
    Dim(MarkingInput),
    /// Signed evaluation of the cell polynomial at the negated marking
    Recip(MarkingInput),
    /// Lattice points of the marked chain polytope
    ChainCount(MarkingInput),
    /// The cell of the marking; --all lists every cell of the marked subposet
    Cells {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        all: bool,
    },
}

#[derive(clap::Args)]
struct BottomRow {
    #[arg(long)]
    n: usize,
    /// Comma-separated bottom row, e.g. 1,2,3
    #[arg(long, allow_hyphen_values = true)]
    bottom: String,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Subcommand)]
enum MtOp {
    /// Count monotone triangles by direct enumeration
    Count(BottomRow),
    /// Count via the alternating sum over essential diamond sets
    Alpha(BottomRow),
    /// The counting polynomial in k1..kn
    AlphaPoly {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Signed enumeration of decreasing monotone triangles
    DmtSigned(BottomRow),
}

#[derive(clap::Args)]
struct GraphColoringInput {
    /// Graph JSON file
    #[arg(short, long)]
    graph: PathBuf,
    /// Coloring JSON file
    #[arg(short, long)]
    coloring: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Subcommand)]
enum ChromOp {
    /// The extension-counting polynomial in m (0 when none exists)
    Poly(GraphColoringInput),
    /// Evaluate the extension polynomial at an integer
    Eval {
        #[command(flatten)]
        io: GraphColoringInput,
        #[arg(long, allow_hyphen_values = true)]
        m: i64,
    },
    /// Extension-orientation pairs matching the negated evaluation
    Pairs {
        #[command(flatten)]
        io: GraphColoringInput,
        #[arg(long, allow_hyphen_values = true)]
        m: i64,
    },
    /// Acyclic orientations constrained by the marked colors
    Acyclic(GraphColoringInput),
}

enum CliError {
    /// Bad file, bad JSON, bad schema: exit 2
    Parse(String),
    /// A module rejected the input: exit 1
    Validation(String),
}

impl From<JsonError> for CliError {
    fn from(e: JsonError) -> Self {
        match e {
            JsonError::Parse(_) | JsonError::MarkedMismatch(_) => CliError::Parse(e.to_string()),
            other => CliError::Validation(other.to_string()),
        }
    }
}

macro_rules! validation_from {
    ($($ty:ty),*) => {
        $(impl From<$ty> for CliError {
            fn from(e: $ty) -> Self {
                CliError::Validation(e.to_string())
            }
        })*
    };
}

validation_from!(
    markedord::marked::MarkingError,
    markedord::poset::PosetError,
    markedord::coloring::ColoringError,
    markedord::triangles::TriangleError,
    markedord::poly::PolyError
);

fn read_file(path: &PathBuf) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
}

fn load_marking(path: &PathBuf) -> Result<markedord::marked::Marking, CliError> {
    let (marking, removed) = marking_from_str(&read_file(path)?)?;
    for (a, b) in removed {
        eprintln!("note: removed redundant cover ({a},{b})");
    }
    Ok(marking)
}

fn print_count(value: &markedord::poly::Int, format: Format) {
    match format {
        Format::Text => println!("{value}"),
        Format::Json => println!("{}", serde_json::json!({ "result": value.to_string() })),
    }
}

fn print_poly(poly: &MultiPoly, format: Format) {
    match format {
        Format::Text => println!("{poly}"),
        Format::Json => println!(
            "{}",
            serde_json::to_string(&poly_to_json(poly)).expect("polynomial serializes")
        ),
    }
}

fn parse_bottom(spec: &str) -> Result<Vec<i64>, CliError> {
    spec.split(',')
        .map(|part| {
            part.trim()
                .parse::<i64>()
                .map_err(|e| CliError::Parse(format!("bad bottom row entry {part:?}: {e}")))
        })
        .collect()
}

fn run_mop(op: MopOp) -> Result<(), CliError> {
    match op {
        MopOp::Count(io) => {
            let m = load_marking(&io.input)?;
            print_count(&m.count_extensions()?, io.format);
        }
        MopOp::Strict(io) => {
            let m = load_marking(&io.input)?;
            print_count(&m.count_strict_extensions()?, io.format);
        }
        MopOp::Poly(io) => {
            let m = load_marking(&io.input)?;
            let poly = symbolic_polynomial(m.poset(), &m.marked_labels(), &m.cell_of()?)?;
            print_poly(&poly, io.format);
        }
        MopOp::Dim(io) => {
            let m = load_marking(&io.input)?;
            let dim = markedord::poly::Int::from(m.dimension()? as i64);
            print_count(&dim, io.format);
        }
        MopOp::Recip(io) => {
            let m = load_marking(&io.input)?;
            print_count(&m.reciprocity_count()?, io.format);
        }
        MopOp::ChainCount(io) => {
            let m = load_marking(&io.input)?;
            print_count(&m.count_chain_polytope_points()?, io.format);
        }
        MopOp::Cells { input, format, all } => {
            let m = load_marking(&input)?;
            if all {
                for cell in marked_subposet_cells(&m)? {
                    match format {
                        Format::Text => println!("{cell}"),
                        Format::Json => {
                            println!("{}", serde_json::json!({ "cell": cell.blocks().to_vec() }))
                        }
                    }
                }
            } else {
                let cell = m.cell_of()?;
                match format {
                    Format::Text => println!("{cell}"),
                    Format::Json => {
                        println!("{}", serde_json::json!({ "cell": cell.blocks().to_vec() }))
                    }
                }
            }
        }
    }
    Ok(())
}

/// Every cell of the subdivision of the marked subposet's order cone: the
/// ideal chains of the induced subposet on the marked set.
fn marked_subposet_cells(
    m: &markedord::marked::Marking,
) -> Result<Vec<markedord::marked::CellSignature>, CliError> {
    let poset = m.poset();
    let marked = m.marked_labels();
    let mut relations = Vec::new();
    for a in &marked {
        for b in &marked {
            if a != b && poset.leq(a, b)? {
                relations.push((a.clone(), b.clone()));
            }
        }
    }
    let induced = Poset::build(&marked, &relations)?.poset;
    Ok(induced
        .ideal_chains(None)
        .map(|chain| markedord::marked::CellSignature::new(chain.blocks()))
        .collect())
}

fn run_mt(op: MtOp) -> Result<(), CliError> {
    match op {
        MtOp::Count(args) => {
            let k = parse_bottom(&args.bottom)?;
            print_count(&count_mt_direct(args.n, &k)?, args.format);
        }
        MtOp::Alpha(args) => {
            let k = parse_bottom(&args.bottom)?;
            print_count(&alpha_via_moebius(args.n, &k)?, args.format);
        }
        MtOp::AlphaPoly { n, format } => {
            print_poly(&alpha_polynomial(n)?, format);
        }
        MtOp::DmtSigned(args) => {
            let k = parse_bottom(&args.bottom)?;
            print_count(&signed_dmt_sum(args.n, &k)?, args.format);
        }
    }
    Ok(())
}

fn run_chrom(op: ChromOp) -> Result<(), CliError> {
    let load = |io: &GraphColoringInput| -> Result<_, CliError> {
        let g = graph_from_str(&read_file(&io.graph)?)?;
        let c = coloring_from_str(&read_file(&io.coloring)?)?;
        Ok((g, c))
    };
    match op {
        ChromOp::Poly(io) => {
            let (g, c) = load(&io)?;
            match chi_polynomial(&g, &c)? {
                Some(p) => print_poly(&p, io.format),
                None => match io.format {
                    Format::Text => println!("0"),
                    Format::Json => {
                        println!("{}", serde_json::json!({ "vars": ["m"], "terms": [] }))
                    }
                },
            }
        }
        ChromOp::Eval { io, m } => {
            let (g, c) = load(&io)?;
            // the polynomial agrees with the extension count for every
            // m >= k, so evaluation covers the whole integer line
            print_count(&eval_chi(&chi_polynomial(&g, &c)?, m), io.format);
        }
        ChromOp::Pairs { io, m } => {
            let (g, c) = load(&io)?;
            print_count(&reciprocity_pairs(&g, &c, m)?, io.format);
        }
        ChromOp::Acyclic(io) => {
            let (g, c) = load(&io)?;
            print_count(&constrained_acyclic_count(&g, &c)?, io.format);
        }
    }
    Ok(())
}

fn run_corpus(seed: u64, count: usize, max_size: usize, out: PathBuf) -> Result<(), CliError> {
    fs::create_dir_all(&out).map_err(|e| CliError::Parse(format!("{}: {e}", out.display())))?;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    for i in 0..count {
        let poset = markedord::corpus::random_poset(&mut rng, max_size);
        let marking = markedord::corpus::random_marking(&mut rng, &poset, -3, 5);
        let path = out.join(format!("marking_{i:03}.json"));
        let body = serde_json::to_string_pretty(&json::marking_to_json(&marking))
            .expect("marking serializes");
        fs::write(&path, body).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
        println!("{}", path.display());
    }
    Ok(())
}

fn configure_threads() {
    if let Ok(spec) = std::env::var("MARKEDORD_THREADS") {
        if let Ok(n) = spec.trim().parse::<usize>() {
            if n >= 1 {
                let _ = rayon::ThreadPoolBuilder::new()
                    .num_threads(n)
                    .build_global();
            }
        }
    }
}

fn main() -> ExitCode {
    configure_threads();
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Mop { op } => run_mop(op),
        Command::Mt { op } => run_mt(op),
        Command::Chrom { op } => run_chrom(op),
        Command::Corpus {
            seed,
            count,
            max_size,
            out,
        } => run_corpus(seed, count, max_size, out),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Validation(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(1)
        }
        Err(CliError::Parse(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(2)
        }
    }
}
