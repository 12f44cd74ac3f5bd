//! Command-line front end. The binary is a thin wrapper around [`run`], which
//! takes its streams as arguments so it can be driven from tests.
//!
//! Exit codes: 0 on success, 1 on verification failure, malformed input or
//! I/O error, 2 on usage error.

use std::ffi::OsString;
use std::fs::File;
use std::hint::black_box;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dense::DenseMatrix;
use crate::factor::{build_dct2, build_dct2_bar, CountRow};
use crate::flowgraph::{emit_dot, emit_listing, lower};
use crate::formula::FormulaNode;
use crate::oracle::{ref_matrix, RefKind};

#[derive(Debug, Parser)]
#[command(
    name = "dctfactor",
    version,
    about = "Recursive low-multiplication DCT-2: evaluate, verify, count and draw"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Apply the transform to each line of a vector file.
    Transform {
        /// Transform size, a power of two.
        #[arg(long, value_parser = parse_pow2)]
        n: usize,
        /// Unscaled polynomial transform (no output scaling).
        #[arg(long)]
        bar: bool,
        /// Input file; stdin if omitted.
        #[arg(long)]
        input: Option<PathBuf>,
        /// Output file; stdout if omitted.
        #[arg(long)]
        output: Option<PathBuf>,
        /// Use the dense definition matrix instead of the factorization.
        #[arg(long)]
        naive: bool,
    },
    /// Compare the factorization against the dense definition on random inputs.
    Verify {
        #[arg(long, value_parser = clap::value_parser!(u32).range(0..=12))]
        max_log2: u32,
        #[arg(long)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1e-10)]
        tolerance: f64,
    },
    /// Print operation counts for n = 2 .. 2^K.
    Count {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..=24))]
        max_log2: u32,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Write the flow graph as DOT, or as a listing.
    Graph {
        #[arg(long, value_parser = parse_pow2)]
        n: usize,
        #[arg(long)]
        bar: bool,
        #[arg(long)]
        out: PathBuf,
        /// Write the instruction listing instead of DOT.
        #[arg(long)]
        listing: bool,
    },
    /// Time the factorization against a dense matrix-vector product.
    Bench {
        #[arg(long, value_parser = parse_pow2)]
        n: usize,
        #[arg(long)]
        iters: u64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Csv,
}

fn parse_pow2(s: &str) -> Result<usize, String> {
    let n: usize = s.parse().map_err(|e| format!("{e}"))?;
    if n.is_power_of_two() && n <= 1 << 16 {
        Ok(n)
    } else {
        Err(format!("{n} is not a power of two in 1..=65536"))
    }
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Failed(String),
}

impl From<crate::Error> for Failure {
    fn from(e: crate::Error) -> Self {
        Failure::Failed(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Failed(format!("i/o error: {e}"))
    }
}

/// Parses `args` (including the program name) and runs one subcommand.
pub fn run<I, T>(
    args: I,
    stdin: &mut dyn BufRead,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let _ = if code == 0 {
                write!(stdout, "{}", e.render())
            } else {
                write!(stderr, "{}", e.render())
            };
            return code;
        }
    };
    let result = match cli.command {
        Command::Transform {
            n,
            bar,
            input,
            output,
            naive,
        } => transform(n, bar, naive, input, output, stdin, stdout),
        Command::Verify {
            max_log2,
            trials,
            seed,
            tolerance,
        } => verify(max_log2, trials, seed, tolerance, stdout),
        Command::Count { max_log2, format } => count(max_log2, format, stdout),
        Command::Graph {
            n,
            bar,
            out,
            listing,
        } => graph(n, bar, out, listing),
        Command::Bench { n, iters } => bench(n, iters, stdout),
    };
    match result.and_then(|()| stdout.flush().map_err(Failure::from)) {
        Ok(()) => 0,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            2
        }
        Err(Failure::Failed(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            1
        }
    }
}

fn build(n: usize, bar: bool) -> Result<FormulaNode, Failure> {
    Ok(if bar {
        build_dct2_bar(n)?
    } else {
        build_dct2(n)?
    })
}

fn reference(n: usize, bar: bool) -> Result<DenseMatrix, Failure> {
    let kind = if bar { RefKind::Dct2Bar } else { RefKind::Dct2 };
    Ok(ref_matrix(kind, n, None)?)
}

/// Parses one vector per nonblank line.
fn read_vectors(reader: &mut dyn BufRead, n: usize) -> Result<Vec<Vec<f64>>, Failure> {
    let mut vectors = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        let lineno = idx + 1;
        if line.trim().is_empty() {
            continue;
        }
        let values = line
            .split_whitespace()
            .map(|tok| match tok.parse::<f64>() {
                Ok(v) if v.is_finite() => Ok(v),
                _ => Err(Failure::Failed(format!(
                    "line {lineno}: invalid number {tok:?}"
                ))),
            })
            .collect::<Result<Vec<f64>, Failure>>()?;
        if values.len() != n {
            return Err(Failure::Failed(format!(
                "line {lineno}: expected {n} values, got {}",
                values.len()
            )));
        }
        vectors.push(values);
    }
    Ok(vectors)
}

fn format_vector(v: &[f64]) -> String {
    v.iter().map(f64::to_string).collect::<Vec<_>>().join(" ")
}

type VectorMap = dyn Fn(&[f64]) -> Vec<f64>;

fn transform(
    n: usize,
    bar: bool,
    naive: bool,
    input: Option<PathBuf>,
    output: Option<PathBuf>,
    stdin: &mut dyn BufRead,
    stdout: &mut dyn Write,
) -> Result<(), Failure> {
    let vectors = match &input {
        Some(path) => {
            let file = File::open(path)
                .map_err(|e| Failure::Failed(format!("{}: {e}", path.display())))?;
            read_vectors(&mut BufReader::new(file), n)?
        }
        None => read_vectors(stdin, n)?,
    };

    let apply: Box<VectorMap> = if naive {
        let m = reference(n, bar)?;
        Box::new(move |x| m.mul_vec(x).expect("validated length"))
    } else {
        let node = build(n, bar)?;
        Box::new(move |x| node.apply(x).expect("validated length"))
    };

    let mut file_out;
    let out: &mut dyn Write = match &output {
        Some(path) => {
            file_out = BufWriter::new(
                File::create(path)
                    .map_err(|e| Failure::Failed(format!("{}: {e}", path.display())))?,
            );
            &mut file_out
        }
        None => stdout,
    };
    for x in &vectors {
        writeln!(out, "{}", format_vector(&apply(x)))?;
    }
    out.flush()?;
    Ok(())
}

/// Worst-case errors of one transform over all trials.
#[derive(Debug, Clone, Copy, Default)]
struct TrialErrors {
    abs: f64,
    rel: f64,
}

fn measure(node: &FormulaNode, dense: &DenseMatrix, inputs: &[Vec<f64>]) -> TrialErrors {
    inputs.iter().fold(TrialErrors::default(), |acc, x| {
        let fast = node.apply(x).expect("validated length");
        let slow = dense.mul_vec(x).expect("validated length");
        let abs = fast
            .iter()
            .zip(&slow)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        let scale = slow.iter().map(|v| v.abs()).fold(0.0, f64::max);
        let rel = if scale > 0.0 { abs / scale } else { abs };
        TrialErrors {
            abs: acc.abs.max(abs),
            rel: acc.rel.max(rel),
        }
    })
}

fn verify(
    max_log2: u32,
    trials: usize,
    seed: u64,
    tolerance: f64,
    out: &mut dyn Write,
) -> Result<(), Failure> {
    if trials == 0 {
        return Err(Failure::Usage("--trials must be positive".into()));
    }
    if tolerance.is_nan() || tolerance <= 0.0 {
        return Err(Failure::Usage("--tolerance must be positive".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    writeln!(
        out,
        "# seed={seed} trials={trials} inputs uniform in [-1, 1] (ChaCha8)"
    )?;
    let mut worst = 0.0f64;
    for k in 0..=max_log2 {
        let n = 1usize << k;
        let inputs: Vec<Vec<f64>> = (0..trials)
            .map(|_| (0..n).map(|_| rng.random_range(-1.0..=1.0)).collect())
            .collect();
        for bar in [false, true] {
            let errs = measure(&build(n, bar)?, &reference(n, bar)?, &inputs);
            worst = worst.max(errs.rel);
            writeln!(
                out,
                "n={n} transform={} max_abs_err={:e} max_rel_err={:e}",
                if bar { "dct2bar" } else { "dct2" },
                errs.abs,
                errs.rel
            )?;
        }
    }
    let pass = worst <= tolerance;
    writeln!(
        out,
        "max_rel_err={worst:e} tolerance={tolerance:e} {}",
        if pass { "PASS" } else { "FAIL" }
    )?;
    if pass {
        Ok(())
    } else {
        Err(Failure::Failed(format!(
            "max relative error {worst:e} exceeds tolerance {tolerance:e}"
        )))
    }
}

fn count(max_log2: u32, format: Format, out: &mut dyn Write) -> Result<(), Failure> {
    let header = ["n", "core_mults", "scaling_mults", "total_mults", "adds"];
    match format {
        Format::Table => writeln!(
            out,
            "{:>8} {:>11} {:>14} {:>12} {:>10}",
            header[0], header[1], header[2], header[3], header[4]
        )?,
        Format::Csv => writeln!(out, "{}", header.join(","))?,
    }
    for k in 1..=max_log2 {
        let row = CountRow::measure(1 << k)?;
        match format {
            Format::Table => writeln!(
                out,
                "{:>8} {:>11} {:>14} {:>12} {:>10}",
                row.n, row.core_mults, row.scaling_mults, row.total_mults, row.adds
            )?,
            Format::Csv => writeln!(
                out,
                "{},{},{},{},{}",
                row.n, row.core_mults, row.scaling_mults, row.total_mults, row.adds
            )?,
        }
    }
    Ok(())
}

fn graph(n: usize, bar: bool, out: PathBuf, listing: bool) -> Result<(), Failure> {
    let prog = lower(&build(n, bar)?)?;
    let text = if listing {
        emit_listing(&prog)
    } else {
        emit_dot(&prog)
    };
    std::fs::write(&out, text).map_err(|e| Failure::Failed(format!("{}: {e}", out.display())))
}

fn bench(n: usize, iters: u64, out: &mut dyn Write) -> Result<(), Failure> {
    if iters == 0 {
        return Err(Failure::Usage("--iters must be positive".into()));
    }
    let node = build_dct2(n)?;
    let prog = lower(&node)?;
    let dense = reference(n, false)?;
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let x: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..=1.0)).collect();

    let time = |f: &dyn Fn() -> Vec<f64>| {
        let start = Instant::now();
        for _ in 0..iters {
            black_box(f());
        }
        start.elapsed().as_secs_f64() * 1e9 / iters as f64
    };
    let factored = time(&|| node.apply(black_box(&x)).expect("length"));
    let program = time(&|| prog.execute(black_box(&x)));
    let naive = time(&|| dense.mul_vec(black_box(&x)).expect("length"));

    writeln!(out, "n={n} iters={iters}")?;
    writeln!(out, "factored_apply_ns={factored:.1}")?;
    writeln!(out, "straight_line_ns={program:.1}")?;
    writeln!(out, "dense_matvec_ns={naive:.1}")?;
    writeln!(out, "speedup_vs_dense={:.2}", naive / program)?;
    Ok(())
}
