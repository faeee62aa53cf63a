//! `bms` — verify, generate, transform, search, and execute bilinear
//! matrix-multiplication schemes stored as `bms v1` files.
//!
//! Exit codes: 0 success / valid; 2 invalid scheme or failed equivalence
//! check; 1 structural error in an input file; 64 usage error; 66 I/O error.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};

use bms_cli::format::{parse, serialize, ParseOutcome};
use bms_cli::search::{default_threads, parallel_search_threaded};
use bms_core::algebra::{self, SplitAxis};
use bms_core::exec::{compile, naive_multiply, I64Ring, MatrixRing, PrimeFieldRing};
use bms_core::known::known_ranks;
use bms_core::walk::{SplitMix64, WalkConfig};
use bms_core::{RingSpec, Scheme};

const EX_OK: u8 = 0;
const EX_STRUCTURAL: u8 = 1;
const EX_INVALID: u8 = 2;
const EX_USAGE: u8 = 64;
const EX_IO: u8 = 66;

#[derive(Parser)]
#[command(
    name = "bms",
    version,
    about = "Exact toolkit for bilinear matrix-multiplication schemes",
    disable_help_subcommand = true
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check a scheme file against the Brent equations.
    Verify { file: PathBuf },
    /// Generate a reference scheme on stdout.
    Gen {
        #[command(subcommand)]
        what: GenCmd,
    },
    /// Compose two scheme files.
    Compose {
        #[command(flatten)]
        op: ComposeOp,
        a: PathBuf,
        b: PathBuf,
    },
    /// Cyclically rotate a scheme: (n,m,p) becomes (m,p,n).
    Rotate { file: PathBuf },
    /// Reduce an integer-coefficient scheme mod a prime.
    Modreduce {
        file: PathBuf,
        #[arg(short = 'p', long = "prime")]
        prime: u64,
    },
    /// Random flip-graph walk; writes the best scheme found to stdout.
    Walk {
        file: PathBuf,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        steps: u64,
        #[arg(long, default_value_t = 1)]
        walkers: usize,
        /// Stop a walker once it reaches this rank.
        #[arg(long)]
        target: Option<usize>,
        /// Restart a walker from the input after this many steps without
        /// improvement.
        #[arg(long)]
        restart_after: Option<u64>,
        /// Write the walk log (`step rank seed` per improvement) to a file
        /// instead of stderr.
        #[arg(long)]
        log: Option<PathBuf>,
        /// OS threads for multi-walker searches (default: all cores).
        #[arg(long)]
        threads: Option<usize>,
    },
    /// Emit a scheme's straight-line program as pseudocode.
    Codegen { file: PathBuf },
    /// Check a compiled scheme against naive multiplication on random inputs.
    Evalcheck {
        file: PathBuf,
        #[arg(long, default_value_t = 100)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Draw entries from a noncommutative ring (2x2 integer matrices).
        #[arg(long)]
        noncommutative: bool,
    },
    /// Print format, ring, rank, and the known-rank table row if any.
    Info { file: PathBuf },
}

#[derive(Subcommand)]
enum GenCmd {
    /// The classical nmp-term algorithm.
    Standard {
        n: usize,
        m: usize,
        p: usize,
        #[arg(long, default_value = "Z")]
        ring: String,
    },
    /// Strassen's rank-7 scheme for (2,2,2).
    Strassen {
        #[arg(long, default_value = "Z")]
        ring: String,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct ComposeOp {
    /// Kronecker product: formats and ranks multiply.
    #[arg(long)]
    kron: bool,
    /// Direct sum splitting the output rows.
    #[arg(long)]
    sum_rows: bool,
    /// Direct sum splitting the middle dimension.
    #[arg(long)]
    sum_mid: bool,
    /// Direct sum splitting the output columns.
    #[arg(long)]
    sum_cols: bool,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EX_OK,
                _ => EX_USAGE,
            };
            // clap renders help to stdout and errors to stderr by itself.
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    ExitCode::from(run(cli))
}

fn run(cli: Cli) -> u8 {
    match cli.cmd {
        Cmd::Verify { file } => cmd_verify(&file),
        Cmd::Gen { what } => cmd_gen(what),
        Cmd::Compose { op, a, b } => cmd_compose(op, &a, &b),
        Cmd::Rotate { file } => cmd_rotate(&file),
        Cmd::Modreduce { file, prime } => cmd_modreduce(&file, prime),
        Cmd::Walk {
            file,
            seed,
            steps,
            walkers,
            target,
            restart_after,
            log,
            threads,
        } => cmd_walk(&file, seed, steps, walkers, target, restart_after, log, threads),
        Cmd::Codegen { file } => cmd_codegen(&file),
        Cmd::Evalcheck {
            file,
            trials,
            seed,
            noncommutative,
        } => cmd_evalcheck(&file, trials, seed, noncommutative),
        Cmd::Info { file } => cmd_info(&file),
    }
}

/// Reads and parses a scheme file, printing diagnostics to stderr.
/// Zero-term warnings are reported, never silent.
fn load(file: &Path) -> Result<Scheme, u8> {
    let text = match fs::read_to_string(file) {
        Ok(text) => text,
        Err(err) => {
            eprintln!("bms: {}: {err}", file.display());
            return Err(EX_IO);
        }
    };
    match parse(&text) {
        Ok(ParseOutcome { scheme, warnings }) => {
            for warning in &warnings {
                eprintln!("bms: {}: warning: {warning}", file.display());
            }
            Ok(scheme)
        }
        Err(err) => {
            eprintln!("bms: {}: {} ({err})", file.display(), err.code());
            Err(EX_STRUCTURAL)
        }
    }
}

fn parse_ring(spec: &str) -> Result<RingSpec, u8> {
    if spec == "Z" {
        return Ok(RingSpec::integers());
    }
    if let Some(q) = spec.strip_prefix("Zp:") {
        let q: u64 = q.parse().map_err(|_| {
            eprintln!("bms: bad ring `{spec}`: modulus must be a decimal integer");
            EX_USAGE
        })?;
        return RingSpec::prime_field(q).map_err(|err| {
            eprintln!("bms: bad ring `{spec}`: {err}");
            EX_USAGE
        });
    }
    eprintln!("bms: bad ring `{spec}`: expected `Z` or `Zp:<prime>`");
    Err(EX_USAGE)
}

fn emit(s: &Scheme) -> u8 {
    print!("{}", serialize(s));
    EX_OK
}

fn cmd_verify(file: &Path) -> u8 {
    let scheme = match load(file) {
        Ok(s) => s,
        Err(code) => return code,
    };
    match scheme.verify() {
        Ok(report) if report.valid => {
            println!("valid rank={}", scheme.rank());
            EX_OK
        }
        Ok(report) => {
            println!("invalid rank={} violated={}", scheme.rank(), report.violated);
            EX_INVALID
        }
        Err(err) => {
            eprintln!("bms: {}: {err}", file.display());
            EX_STRUCTURAL
        }
    }
}

fn cmd_gen(what: GenCmd) -> u8 {
    let scheme = match what {
        GenCmd::Standard { n, m, p, ring } => {
            if n == 0 || m == 0 || p == 0 {
                eprintln!("bms: format dimensions must be positive");
                return EX_USAGE;
            }
            match parse_ring(&ring) {
                Ok(ring) => Scheme::standard(n, m, p, ring),
                Err(code) => return code,
            }
        }
        GenCmd::Strassen { ring } => match parse_ring(&ring) {
            Ok(ring) => Scheme::strassen(ring),
            Err(code) => return code,
        },
    };
    emit(&scheme)
}

fn cmd_compose(op: ComposeOp, a: &Path, b: &Path) -> u8 {
    let (sa, sb) = match (load(a), load(b)) {
        (Ok(sa), Ok(sb)) => (sa, sb),
        (Err(code), _) | (_, Err(code)) => return code,
    };
    let result = if op.kron {
        algebra::kronecker(&sa, &sb)
    } else if op.sum_rows {
        algebra::direct_sum(&sa, &sb, SplitAxis::Rows)
    } else if op.sum_mid {
        algebra::direct_sum(&sa, &sb, SplitAxis::Middle)
    } else {
        algebra::direct_sum(&sa, &sb, SplitAxis::Cols)
    };
    match result {
        Ok(s) => emit(&s),
        Err(err) => {
            eprintln!("bms: compose: {err}");
            EX_STRUCTURAL
        }
    }
}

fn cmd_rotate(file: &Path) -> u8 {
    match load(file) {
        Ok(s) => emit(&algebra::rotate(&s)),
        Err(code) => code,
    }
}

fn cmd_modreduce(file: &Path, prime: u64) -> u8 {
    if RingSpec::prime_field(prime).is_err() {
        eprintln!("bms: -p {prime}: not a usable prime");
        return EX_USAGE;
    }
    let scheme = match load(file) {
        Ok(s) => s,
        Err(code) => return code,
    };
    match algebra::mod_reduce(&scheme, prime) {
        Ok(s) => emit(&s),
        Err(err) => {
            eprintln!("bms: modreduce: {err}");
            EX_STRUCTURAL
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_walk(
    file: &Path,
    seed: u64,
    steps: u64,
    walkers: usize,
    target: Option<usize>,
    restart_after: Option<u64>,
    log: Option<PathBuf>,
    threads: Option<usize>,
) -> u8 {
    let scheme = match load(file) {
        Ok(s) => s,
        Err(code) => return code,
    };
    if !scheme.ring().is_prime_field() {
        eprintln!("bms: walk: walks require a prime field; reduce the scheme mod p first (see `bms modreduce`)");
        return EX_USAGE;
    }
    if walkers == 0 {
        eprintln!("bms: walk: --walkers must be at least 1");
        return EX_USAGE;
    }
    match scheme.verify_quick() {
        Ok(true) => {}
        Ok(false) => {
            eprintln!("bms: walk: input scheme fails Brent verification");
            return EX_INVALID;
        }
        Err(err) => {
            eprintln!("bms: walk: {err}");
            return EX_STRUCTURAL;
        }
    }

    let cfg = WalkConfig {
        target_rank: target,
        restart_after,
        ..WalkConfig::new(seed, steps)
    };
    let threads = threads.unwrap_or_else(default_threads);
    let report = match parallel_search_threaded(&scheme, &cfg, walkers, threads) {
        Ok(report) => report,
        Err(err) => {
            eprintln!("bms: walk: {err}");
            return EX_STRUCTURAL;
        }
    };

    // Walk log: one line per rank decrease, fields `step rank seed`.
    let mut log_text = String::new();
    for &(step, rank) in &report.rank_trajectory {
        let _ = writeln!(log_text, "{step} {rank} {}", report.seed);
    }
    match log {
        Some(path) => {
            if let Err(err) = fs::write(&path, &log_text) {
                eprintln!("bms: {}: {err}", path.display());
                return EX_IO;
            }
        }
        None => eprint!("{log_text}"),
    }
    eprintln!(
        "bms: walk: start_rank={} best_rank={} steps_taken={} seed={}",
        report.start_rank, report.best_rank, report.steps_taken, report.seed
    );
    emit(&report.best_scheme)
}

fn cmd_codegen(file: &Path) -> u8 {
    match load(file) {
        Ok(s) => {
            print!("{}", compile(&s).pseudocode());
            EX_OK
        }
        Err(code) => code,
    }
}

fn cmd_evalcheck(file: &Path, trials: u64, seed: u64, noncommutative: bool) -> u8 {
    let scheme = match load(file) {
        Ok(s) => s,
        Err(code) => return code,
    };
    let prog = compile(&scheme);
    let (n, m, p) = scheme.format();
    let mut rng = SplitMix64::new(seed);

    // Entries are drawn to match the scheme's ring: small signed integers
    // over Z, canonical residues over Z_p (where the algebra has matching
    // characteristic).
    let modulus = scheme.ring().modulus();
    let scalar = |rng: &mut SplitMix64| -> i64 {
        match modulus {
            None => rng.below(19) as i64 - 9,
            Some(q) => rng.below(q) as i64,
        }
    };

    let failed: Option<u64> = if noncommutative {
        let ring = match modulus {
            None => MatrixRing::new(2),
            Some(q) => MatrixRing::mod_p(2, q),
        };
        let rand_mat = |count: usize, rng: &mut SplitMix64| -> Vec<Vec<i64>> {
            (0..count)
                .map(|_| (0..4).map(|_| scalar(rng)).collect())
                .collect()
        };
        (1..=trials).find(|_| {
            let x = rand_mat(n * m, &mut rng);
            let y = rand_mat(m * p, &mut rng);
            let fast = prog.evaluate(&x, &y, &ring).unwrap();
            let slow = naive_multiply(&x, &y, n, m, p, &ring).unwrap();
            fast != slow
        })
    } else {
        let mut run = |fast: &mut dyn FnMut(&[i64], &[i64]) -> (Vec<i64>, Vec<i64>)| {
            (1..=trials).find(|_| {
                let x: Vec<i64> = (0..n * m).map(|_| scalar(&mut rng)).collect();
                let y: Vec<i64> = (0..m * p).map(|_| scalar(&mut rng)).collect();
                let (a, b) = fast(&x, &y);
                a != b
            })
        };
        match modulus {
            None => {
                let ring = I64Ring;
                run(&mut |x, y| {
                    (
                        prog.evaluate(x, y, &ring).unwrap(),
                        naive_multiply(x, y, n, m, p, &ring).unwrap(),
                    )
                })
            }
            Some(q) => {
                let ring = PrimeFieldRing::new(q);
                run(&mut |x, y| {
                    (
                        prog.evaluate(x, y, &ring).unwrap(),
                        naive_multiply(x, y, n, m, p, &ring).unwrap(),
                    )
                })
            }
        }
    };

    match failed {
        None => {
            println!(
                "ok trials={trials} format=({n},{m},{p}) multiplications={}",
                prog.multiplication_count()
            );
            EX_OK
        }
        Some(trial) => {
            println!("mismatch trial={trial}");
            EX_INVALID
        }
    }
}

fn cmd_info(file: &Path) -> u8 {
    let scheme = match load(file) {
        Ok(s) => s,
        Err(code) => return code,
    };
    let (n, m, p) = scheme.format();
    println!("format=({n},{m},{p}) ring={} rank={}", scheme.ring(), scheme.rank());
    if let Some(entry) = known_ranks(scheme.format()) {
        let star = if entry.best_is_char_restricted { "*" } else { "" };
        println!("naive={} best={}{} ours={}", entry.naive, entry.best, star, entry.ours);
    }
    EX_OK
}
