//! `ladder`: enumerate intervals, compress and approximate persistence modules
//! over commutative grids, verify invariants, generate inputs and benchmark.
//!
//! Exit status: 0 on success, 1 on usage errors, 2 when an input fails to
//! parse or validate, 3 when verification finds a mismatch.

use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use ladder_approx::approximation::interval_approximation;
use ladder_approx::bench::{bench_cell, BenchCell};
use ladder_approx::compression::compressed_multiplicity_function;
use ladder_approx::generators::{
    disguise, example_negative_approximation, jordan_block_module, random_interval_decomposable, random_module,
};
use ladder_approx::grid::{Grid, PersistenceModule};
use ladder_approx::linalg::PrimeField;
use ladder_approx::pmod::{parse_pmod, print_pmod};
use ladder_approx::poset::{count_intervals_two_rows, IntervalPoset};

#[derive(Parser, Debug)]
#[command(
    name = "ladder",
    version,
    about = "Signed interval approximations of grid persistence modules"
)]
struct Cli {
    /// Worker threads; 0 uses all available cores.
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Prime field for generated modules.
    #[arg(long, global = true, default_value_t = 2)]
    field: u32,
    /// Write the result here instead of standard output.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List the intervals of an m × n grid in canonical order.
    Intervals {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        /// Print only the number of intervals.
        #[arg(long)]
        count_only: bool,
    },
    /// Compressed multiplicity of every interval, nonzero values only.
    Compress(ModuleInput),
    /// The signed interval approximation.
    Approx(ModuleInput),
    /// Check that the approximation keeps the rank invariant and dimension vector.
    Verify {
        /// PMOD file, or `-` for standard input.
        input: PathBuf,
    },
    /// Write a module in PMOD format.
    Gen(GenArgs),
    /// Time compression and inversion on random 2 × n modules; CSV output.
    Bench {
        #[arg(long, value_delimiter = ',', default_value = "4,8,16")]
        n: Vec<usize>,
        #[arg(long, value_delimiter = ',', default_value = "100")]
        d: Vec<usize>,
        /// Minimum repetitions per cell.
        #[arg(long, default_value_t = 5)]
        reps: usize,
    },
}

#[derive(Args, Debug, Clone, Copy)]
struct GenArgs {
    #[arg(value_enum)]
    kind: GenKind,
    /// Rows of the grid (decomposable modules only).
    #[arg(long, default_value_t = 2)]
    m: usize,
    /// Columns of the grid.
    #[arg(long, default_value_t = 4)]
    n: usize,
    /// Dimension at every vertex (random modules).
    #[arg(long, default_value_t = 2)]
    d: usize,
    /// Number of interval summands (decomposable modules).
    #[arg(long, default_value_t = 4)]
    k: usize,
    /// Block size (Jordan block modules).
    #[arg(long, default_value_t = 1)]
    l: usize,
    /// Conjugate by random base changes.
    #[arg(long)]
    disguise: bool,
}

#[derive(Args, Debug)]
struct ModuleInput {
    /// PMOD file, or `-` for standard input.
    input: PathBuf,
    #[arg(long, value_enum, default_value_t = Method::Ss)]
    method: Method,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Method {
    /// Sources and sinks.
    Ss,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum GenKind {
    /// Every space of dimension d on a 2 × n grid.
    Random,
    /// A direct sum of k random intervals on an m × n grid.
    Decomposable,
    /// Indecomposable 2 × 5 module with block size l.
    Jordan,
    /// The 2 × 3 module whose approximation has a negative term.
    Fixture,
}

/// A failure carrying its exit status.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl ToString) -> Self {
        Self {
            code: 1,
            message: message.to_string(),
        }
    }

    fn invalid(message: impl ToString) -> Self {
        Self {
            code: 2,
            message: message.to_string(),
        }
    }

    fn mismatch(message: impl ToString) -> Self {
        Self {
            code: 3,
            message: message.to_string(),
        }
    }
}

fn read_input(path: &PathBuf) -> Result<String, Failure> {
    if path.as_os_str() == "-" {
        let mut text = String::new();
        io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| Failure::invalid(format!("stdin: {e}")))?;
        return Ok(text);
    }
    fs::read_to_string(path).map_err(|e| Failure::invalid(format!("{}: {e}", path.display())))
}

fn read_module(path: &PathBuf) -> Result<PersistenceModule, Failure> {
    let text = read_input(path)?;
    parse_pmod(&text).map_err(|e| Failure::invalid(format!("{}: {e}", path.display())))
}

fn poset_for(module: &PersistenceModule) -> Result<Arc<IntervalPoset>, Failure> {
    if module.grid().m() > 2 {
        return Err(Failure::invalid(format!(
            "compression needs at most two rows, the input has {}",
            module.grid().m()
        )));
    }
    Ok(Arc::new(IntervalPoset::new(module.grid())))
}

fn intervals(m: usize, n: usize, count_only: bool) -> Result<String, Failure> {
    let grid = Grid::new(m, n).map_err(Failure::usage)?;
    if count_only && m == 2 {
        return Ok(format!("{}\n", count_intervals_two_rows(n as u64)));
    }
    let poset = IntervalPoset::new(grid);
    if count_only {
        return Ok(format!("{}\n", poset.len()));
    }
    Ok(poset.intervals().iter().map(|i| format!("{i}\n")).collect())
}

fn verify(module: &PersistenceModule) -> Result<String, Failure> {
    let poset = poset_for(module)?;
    let sum = interval_approximation(module, &poset).map_err(Failure::invalid)?;
    let mut report = String::new();
    let mut mismatches = Vec::new();
    let invariant = module.rank_invariant();
    for ((s, t), want) in invariant.iter() {
        let got = sum.rank(s, t).map_err(Failure::invalid)?;
        if got != want as i64 {
            mismatches.push(format!("rank {s} -> {t}: approximation {got}, module {want}"));
        }
    }
    report.push_str(&format!(
        "rank invariant: {} comparable pairs checked\n",
        invariant.len()
    ));
    let dims = sum.dimvec();
    let module_dims = module.dimension_vector().map(|&d| d as i64);
    if dims != module_dims {
        mismatches.push(format!("dimension vector: approximation {dims}, module {module_dims}"));
    }
    report.push_str(&format!("dimension vector: {module_dims}\n"));
    if mismatches.is_empty() {
        report.push_str("verify: ok\n");
        Ok(report)
    } else {
        Err(Failure::mismatch(format!("{report}{}", mismatches.join("\n"))))
    }
}

fn generate(cli: &Cli, args: &GenArgs) -> Result<String, Failure> {
    let GenArgs {
        kind,
        m,
        n,
        d,
        k,
        l,
        disguise: hide,
    } = *args;
    let field = PrimeField::new(cli.field).map_err(Failure::usage)?;
    let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
    let module = match kind {
        GenKind::Random => random_module(n, d, field, &mut rng).map_err(Failure::usage)?,
        GenKind::Decomposable => {
            let poset = Arc::new(IntervalPoset::new(Grid::new(m, n).map_err(Failure::usage)?));
            random_interval_decomposable(&poset, k, field, &mut rng, false)
                .map_err(Failure::usage)?
                .0
        }
        GenKind::Jordan => jordan_block_module(l, field).map_err(Failure::usage)?,
        GenKind::Fixture => example_negative_approximation(field),
    };
    let module = if hide {
        disguise(&module, &mut rng).map_err(Failure::usage)?
    } else {
        module
    };
    Ok(print_pmod(&module))
}

fn bench(cli: &Cli, ns: &[usize], ds: &[usize], reps: usize) -> Result<String, Failure> {
    let field = PrimeField::new(cli.field).map_err(Failure::usage)?;
    let mut out = format!("{}\n", BenchCell::CSV_HEADER);
    for &d in ds {
        for &n in ns {
            let cell = bench_cell(n, d, field, cli.seed, reps).map_err(Failure::usage)?;
            out.push_str(&cell.csv_row());
            out.push('\n');
        }
    }
    Ok(out)
}

fn run(cli: &Cli) -> Result<String, Failure> {
    match &cli.command {
        Command::Intervals { m, n, count_only } => intervals(*m, *n, *count_only),
        Command::Compress(input) => {
            let module = read_module(&input.input)?;
            let f = compressed_multiplicity_function(&module, &poset_for(&module)?).map_err(Failure::invalid)?;
            Ok(f.to_string())
        }
        Command::Approx(input) => {
            let module = read_module(&input.input)?;
            let sum = interval_approximation(&module, &poset_for(&module)?).map_err(Failure::invalid)?;
            Ok(sum.to_string())
        }
        Command::Verify { input } => verify(&read_module(input)?),
        Command::Gen(args) => generate(cli, args),
        Command::Bench { n, d, reps } => bench(cli, n, d, *reps),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    if cli.threads > 0 {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(cli.threads).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    let result = run(&cli).and_then(|text| match &cli.output {
        Some(path) => fs::write(path, &text).map_err(|e| Failure::usage(format!("{}: {e}", path.display()))),
        None => io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| Failure::usage(format!("stdout: {e}"))),
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
