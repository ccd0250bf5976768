use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Parser, ValueEnum};
use mdt_cli::bench::{bench_dir, summary, write_csv};
use mdt_cli::instance::{parse_path, parse_reader};
use mdt_cli::{certificate_text, certify_ngon, exit_code, run, Instance, EXIT_REJECTED};
use mdt_core::par::with_threads;
use mdt_core::solver::{Algorithm, SolverConfig};

#[derive(Clone, Copy, Debug, ValueEnum)]
enum AlgorithmArg {
    Inc,
    Bin,
}

/// Exact minimum dilation triangulation.
#[derive(Debug, Parser)]
#[command(name = "mdt", version)]
struct Args {
    /// Instance file (plain `x y` lines or TSPLIB); `-` or nothing reads stdin.
    input: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "bin")]
    algorithm: AlgorithmArg,
    /// Bisection stops once the gap is below this.
    #[arg(long, default_value_t = 0.005)]
    sigma: f64,
    /// Start from the plain Delaunay triangulation.
    #[arg(long)]
    no_improve: bool,
    /// Worker threads; 1 runs sequentially.
    #[arg(long, env = "MDT_THREADS")]
    threads: Option<usize>,
    /// Solve the regular n-gon on the unit circle.
    #[arg(long, value_name = "N")]
    ngon: Option<usize>,
    /// Solve N random points in a 10^6 x 10^6 grid.
    #[arg(long, value_name = "N")]
    random: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Wall-clock limit in seconds.
    #[arg(long, value_name = "SECS")]
    time_limit: Option<f64>,
    /// Write the result here instead of stdout.
    #[arg(long, short)]
    output: Option<PathBuf>,
    /// Solve every instance in DIR and emit a CSV table.
    #[arg(long, value_name = "DIR")]
    bench: Option<PathBuf>,
    /// With --ngon, certify bounds for the exact polygon.
    #[arg(long, requires = "ngon")]
    certify_ngon: bool,
}

fn config(args: &Args) -> SolverConfig {
    SolverConfig {
        algorithm: match args.algorithm {
            AlgorithmArg::Inc => Algorithm::Inc,
            AlgorithmArg::Bin => Algorithm::Bin,
        },
        sigma: args.sigma,
        improve_initial: !args.no_improve,
        time_limit: args.time_limit.map(Duration::from_secs_f64),
        ..SolverConfig::default()
    }
}

fn emit(args: &Args, text: &str) -> io::Result<()> {
    match &args.output {
        Some(p) => fs::write(p, text),
        None => io::stdout().write_all(text.as_bytes()),
    }
}

fn load(args: &Args) -> Result<Instance, mdt_cli::InstanceError> {
    if let Some(n) = args.ngon {
        return Instance::ngon(n);
    }
    if let Some(n) = args.random {
        return Instance::random(n, args.seed);
    }
    match &args.input {
        Some(p) if p.as_os_str() != "-" => parse_path(p),
        _ => parse_reader("stdin", io::stdin().lock()),
    }
}

fn main_inner(args: &Args) -> Result<i32, Box<dyn std::error::Error>> {
    let cfg = config(args);
    if let Some(dir) = &args.bench {
        let rows = bench_dir(dir, &cfg)?;
        let mut buf = Vec::new();
        write_csv(&rows, &mut buf)?;
        emit(args, &String::from_utf8(buf)?)?;
        eprint!("{}", summary(&rows));
        return Ok(0);
    }
    if args.certify_ngon {
        let n = args.ngon.expect("clap enforces --ngon");
        let (_, cert) = certify_ngon(n, &cfg)?;
        emit(args, &certificate_text(&cert))?;
        return Ok(0);
    }
    let inst = load(args)?;
    let rec = run(&inst, &cfg)?;
    emit(args, &(rec.to_json() + "\n"))?;
    Ok(exit_code(rec.status))
}

fn main() -> ExitCode {
    let args = Args::parse();
    let code = with_threads(args.threads, || match main_inner(&args) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_REJECTED
        }
    });
    ExitCode::from(code as u8)
}
