use std::fmt::Display;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use buchi_core::bench::{run_suite, Algo, Suite, SuiteConfig, CSV_HEADER};
use buchi_core::generate::chain_of_traps_sized;
use buchi_core::{
    gen_random, mec_decomposition, naive_mec, parse_game, parse_trace, render_game, replay_trace,
    solve_classical, solve_fast, verify_buchi_strategy, winning_strategy, GameGraph,
    IncrementalSolver, Mode, Owner, VertexSet,
};
use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "buchi",
    version,
    about = "Büchi game and end-component solvers"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print player 1's winning region, one vertex id per line
    Solve {
        #[arg(long, value_enum, default_value_t = SolveAlgo::Fast)]
        algo: SolveAlgo,
        file: PathBuf,
        /// Also print `v -> w` for each player-1 vertex in the region
        #[arg(long)]
        strategy: bool,
        /// Verify the strategy certificate before printing
        #[arg(long)]
        check: bool,
    },
    /// Print each maximal end-component on one line, then the rest
    Mec {
        #[arg(long, value_enum, default_value_t = MecAlgo::Fast)]
        algo: MecAlgo,
        file: PathBuf,
    },
    /// Replay an update trace, printing the winning region at each `query`
    Dynamic {
        #[arg(long, value_enum)]
        mode: DynamicMode,
        file: PathBuf,
        trace: PathBuf,
    },
    /// Generate a random game (or a chain of traps with --traps)
    Gen {
        #[arg(short = 'n', long)]
        vertices: usize,
        /// Total number of edges, at least `vertices`
        #[arg(short = 'm', long)]
        edges: Option<usize>,
        #[arg(long, default_value_t = 0.5)]
        p2_fraction: f64,
        #[arg(long, default_value_t = 0.1)]
        buchi_fraction: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Emit the chain-of-traps family instead of a random graph
        #[arg(long, conflicts_with = "edges")]
        traps: bool,
        /// Write to this file instead of stdout
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Run a benchmark suite and write CSV rows
    Bench {
        #[arg(long, value_enum)]
        suite: BenchSuite,
        #[arg(long)]
        out: PathBuf,
        /// Comma-separated sizes (default depends on the suite)
        #[arg(long, value_delimiter = ',')]
        sizes: Vec<usize>,
        #[arg(long, value_delimiter = ',', default_value = "1")]
        seeds: Vec<u64>,
        #[arg(long, value_delimiter = ',', default_value = "classical,fast,mec")]
        algos: Vec<String>,
    },
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum SolveAlgo {
    Classical,
    Fast,
    Pm,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum MecAlgo {
    Fast,
    Naive,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum DynamicMode {
    Decremental,
    Incremental,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum BenchSuite {
    Dense,
    Sparse,
    Traps,
}

enum Failure {
    /// Bad input: unreadable files, malformed games or traces, bad flags.
    Input(String),
    /// A result failed its own consistency check.
    Invariant(String),
}

fn input(e: impl Display) -> Failure {
    Failure::Input(e.to_string())
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load_game(path: &Path) -> Result<GameGraph, Failure> {
    parse_game(&read(path)?).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn ids(set: &VertexSet) -> String {
    set.iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn solve(
    algo: SolveAlgo,
    file: &Path,
    show_strategy: bool,
    check: bool,
) -> Result<String, Failure> {
    let g = load_game(file)?;
    let (w1, strategy) = match algo {
        SolveAlgo::Classical => {
            let p = solve_classical(&g);
            (p.w1, p.strategy1)
        }
        SolveAlgo::Fast => {
            let p = solve_fast(&g);
            (p.w1, p.strategy1)
        }
        SolveAlgo::Pm => {
            let w1 = IncrementalSolver::new(g.clone()).winning_set();
            let strategy = winning_strategy(&g, &w1);
            (w1, strategy)
        }
    };
    if check {
        match verify_buchi_strategy(&g, &w1, &strategy) {
            Ok(true) => eprintln!("strategy verified on {} vertices", w1.len()),
            Ok(false) => return Err(Failure::Invariant("strategy certificate rejected".into())),
            Err(e) => return Err(Failure::Invariant(e.to_string())),
        }
    }
    let mut out = String::new();
    for v in &w1 {
        out.push_str(&format!("{v}\n"));
    }
    if show_strategy {
        for v in w1.iter().filter(|&v| g.owner(v) == Owner::Player1) {
            let w = strategy
                .get(v)
                .ok_or_else(|| Failure::Invariant(format!("no strategy choice at {v}")))?;
            out.push_str(&format!("{v} -> {w}\n"));
        }
    }
    Ok(out)
}

fn mec(algo: MecAlgo, file: &Path) -> Result<String, Failure> {
    let g = load_game(file)?;
    let d = match algo {
        MecAlgo::Fast => mec_decomposition(&g),
        MecAlgo::Naive => naive_mec(&g),
    };
    let mut out = String::new();
    for c in &d.mecs {
        out.push_str(&ids(c));
        out.push('\n');
    }
    out.push_str(&format!("non-mec: {}\n", ids(&d.non_mec)).replace(": \n", ":\n"));
    Ok(out)
}

fn dynamic(mode: DynamicMode, file: &Path, trace: &Path) -> Result<String, Failure> {
    let g = load_game(file)?;
    let events = parse_trace(&read(trace)?)
        .map_err(|e| Failure::Input(format!("{}: {e}", trace.display())))?;
    let mode = match mode {
        DynamicMode::Decremental => Mode::Decremental,
        DynamicMode::Incremental => Mode::Incremental,
    };
    let answers = replay_trace(&g, &events, mode).map_err(input)?;
    Ok(answers.iter().map(|w| format!("{}\n", ids(w))).collect())
}

fn write_or_print(out: Option<&Path>, text: &str) -> Result<String, Failure> {
    match out {
        Some(path) => {
            fs::write(path, text)
                .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
            Ok(String::new())
        }
        None => Ok(text.to_string()),
    }
}

fn bench(
    suite: BenchSuite,
    out: &Path,
    sizes: Vec<usize>,
    seeds: Vec<u64>,
    algos: &[String],
) -> Result<String, Failure> {
    let suite = match suite {
        BenchSuite::Dense => Suite::Dense,
        BenchSuite::Sparse => Suite::Sparse,
        BenchSuite::Traps => Suite::Traps,
    };
    let mut config = SuiteConfig::new(suite);
    if !sizes.is_empty() {
        config.sizes = sizes;
    }
    config.seeds = seeds;
    config.algos = algos
        .iter()
        .map(|a| a.parse::<Algo>())
        .collect::<Result<_, _>>()
        .map_err(Failure::Input)?;

    let mut file =
        fs::File::create(out).map_err(|e| Failure::Input(format!("{}: {e}", out.display())))?;
    let io = |e: std::io::Error| Failure::Input(format!("{}: {e}", out.display()));
    writeln!(file, "{CSV_HEADER}").map_err(io)?;
    println!("{CSV_HEADER}");
    let mut failed = None;
    run_suite(&config, |row| {
        println!("{row}");
        if let Err(e) = writeln!(file, "{row}") {
            failed.get_or_insert(e);
        }
    });
    match failed {
        Some(e) => Err(io(e)),
        None => Ok(String::new()),
    }
}

fn run(command: Command) -> Result<String, Failure> {
    match command {
        Command::Solve {
            algo,
            file,
            strategy,
            check,
        } => solve(algo, &file, strategy, check),
        Command::Mec { algo, file } => mec(algo, &file),
        Command::Dynamic { mode, file, trace } => dynamic(mode, &file, &trace),
        Command::Gen {
            vertices,
            edges,
            p2_fraction,
            buchi_fraction,
            seed,
            traps,
            out,
        } => {
            let g = if traps {
                chain_of_traps_sized(vertices)
            } else {
                let m = edges.unwrap_or(2 * vertices);
                gen_random(vertices, m, p2_fraction, buchi_fraction, seed).map_err(input)?
            };
            let mut text = String::new();
            if !traps {
                text.push_str(&format!(
                    "# gen_random n={vertices} p2={p2_fraction} buchi={buchi_fraction} seed={seed} (ChaCha8)\n"
                ));
            }
            text.push_str(&render_game(&g));
            write_or_print(out.as_deref(), &text)
        }
        Command::Bench {
            suite,
            out,
            sizes,
            seeds,
            algos,
        } => bench(suite, &out, sizes, seeds, &algos),
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
    // Solver assertions are invariant violations, not input errors.
    let outcome = std::panic::catch_unwind(|| run(cli.command));
    match outcome {
        Ok(Ok(text)) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Ok(Err(Failure::Input(msg))) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Ok(Err(Failure::Invariant(msg))) => {
            eprintln!("invariant violation: {msg}");
            ExitCode::from(2)
        }
        Err(_) => {
            eprintln!("invariant violation: internal assertion failed");
            ExitCode::from(2)
        }
    }
}
