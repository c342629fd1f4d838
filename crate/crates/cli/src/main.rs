use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, ensure, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use nodal_cli::config::{check_single, default_primes, Format, RunConfig, Span, SWEEP_DEGREES};
use nodal_cli::consensus::{analyze_over, consensus, to_json};
use nodal_cli::sweep::sweep;
use nodal_cli::tables::{hilbert_report, load_ideal, pullback, rows_csv};
use nodal_cli::verify::{self, Fault};

const EXIT_DIVERGENCE: u8 = 2;

#[derive(Parser)]
#[command(
    name = "nodal",
    version,
    about = "Node ideals, defects and deformations of nodal surfaces in P^3"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build and analyze one surface over every prime.
    Analyze(AnalyzeArgs),
    /// Analyze every legal (d, a) pair in a range; CSV by default.
    Sweep(SweepArgs),
    /// Run the verification suites.
    Verify(VerifyArgs),
    /// Hilbert function, alternating Betti numbers and defects of an ideal file.
    Hilbert(HilbertArgs),
    /// Betti scaling laws for the pullback along seeded random forms.
    PullbackCheck(PullbackArgs),
}

#[derive(Args)]
struct Output {
    /// Write to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct Primes {
    /// Comma-separated primes below 2^31.
    #[arg(long, value_delimiter = ',', default_values_t = default_primes())]
    primes: Vec<u32>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum AnalyzeFault {
    /// Perturbs the defect reported for the last prime.
    Divergence,
}

#[derive(Args)]
struct AnalyzeArgs {
    #[arg(long)]
    d: u32,
    #[arg(long)]
    a: u32,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Degree up to which length is certified; defaults to ceil(3d/2) - 3.
    #[arg(long)]
    kmax: Option<u32>,
    #[command(flatten)]
    primes: Primes,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(flatten)]
    output: Output,
    #[arg(long, value_enum, hide = true)]
    inject_fault: Option<AnalyzeFault>,
}

#[derive(Args)]
struct SweepArgs {
    /// Degrees, e.g. `8..10` (inclusive).
    #[arg(long, default_value = "8..10")]
    d: Span<u32>,
    /// Restricts a; every 4 <= a <= d/2 by default.
    #[arg(long)]
    a: Option<Span<u32>>,
    #[arg(long, default_value = "1")]
    seed: Span<u64>,
    #[arg(long)]
    kmax: Option<u32>,
    #[command(flatten)]
    primes: Primes,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct VerifyArgs {
    /// Comma-separated suite names.
    #[arg(long, value_delimiter = ',')]
    only: Vec<String>,
    #[arg(long, default_value_t = 7)]
    seed: u64,
    #[command(flatten)]
    primes: Primes,
    /// JSON summary instead of text.
    #[arg(long, value_enum)]
    format: Option<Format>,
    #[command(flatten)]
    output: Output,
    #[arg(long, value_enum, hide = true)]
    inject_fault: Option<Fault>,
}

#[derive(Args)]
struct HilbertArgs {
    /// Ideal file: `ring n=<n> p=<p>` then one generator per line.
    ideal: PathBuf,
    #[arg(long, default_value_t = 12)]
    kmax: u32,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct PullbackArgs {
    ideal: PathBuf,
    /// Degree of the substituted forms.
    #[arg(long, default_value_t = 2)]
    t: u32,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Betti numbers of the base ideal are compared up to this degree.
    #[arg(long, default_value_t = 6)]
    jmax: u32,
    /// Also evaluate the defect bound at this k.
    #[arg(long)]
    bound_k: Option<u32>,
    #[command(flatten)]
    output: Output,
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(path) => {
            std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            Ok(stdout.flush()?)
        }
    }
}

fn analyze_cmd(args: AnalyzeArgs) -> Result<u8> {
    let config = RunConfig {
        d: Span::single(args.d),
        a: Some(Span::single(args.a)),
        primes: args.primes.primes,
        seed: Span::single(args.seed),
        kmax: args.kmax,
        out: args.output.out,
        format: args.format,
    };
    config.validate()?;
    let (d, a) = check_single(&config)?;
    let mut reports = config
        .primes
        .iter()
        .map(|&p| analyze_over(d, a, p, args.seed, config.kmax_for(d)))
        .collect::<Result<Vec<_>>>()?;
    if args.inject_fault == Some(AnalyzeFault::Divergence) {
        if let Some(last) = reports.last_mut() {
            last.defect_d += 1;
        }
    }
    let report = consensus(d, a, args.seed, reports);
    let text = match config.format {
        Format::Json => to_json(&report)?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["field", "value"])?;
            for r in &report.reports {
                let v = serde_json::to_value(r)?;
                for (k, val) in v.as_object().into_iter().flatten() {
                    w.write_record([format!("{}.{k}", r.prime), val.to_string()])?;
                }
            }
            String::from_utf8(w.into_inner()?)?
        }
    };
    emit(&config.out, &text)?;
    if !report.consensus {
        eprintln!(
            "divergence in {:?}; minority prime {:?}",
            report.divergent_fields, report.minority_prime
        );
        return Ok(EXIT_DIVERGENCE);
    }
    Ok(0)
}

fn sweep_cmd(args: SweepArgs) -> Result<u8> {
    let config = RunConfig {
        d: args.d,
        a: args.a,
        primes: args.primes.primes,
        seed: args.seed,
        kmax: args.kmax,
        out: args.output.out,
        format: args.format,
    };
    config.validate()?;
    ensure!(
        config.d.lo >= SWEEP_DEGREES.0 && config.d.hi <= SWEEP_DEGREES.1,
        "--d {}: sweeps cover {}..{}",
        config.d,
        SWEEP_DEGREES.0,
        SWEEP_DEGREES.1
    );
    ensure!(!config.pairs().is_empty(), "no legal (d, a) pair in range");
    let result = sweep(&config);
    let text = match config.format {
        Format::Csv => result.to_csv()?,
        Format::Json => to_json(&result.groups)?,
    };
    emit(&config.out, &text)?;
    if result.failures() > 0 {
        eprintln!("{} rows failed", result.failures());
        return Ok(1);
    }
    if result.divergent() > 0 {
        eprintln!("{} groups diverge across primes", result.divergent());
        return Ok(EXIT_DIVERGENCE);
    }
    Ok(0)
}

fn verify_cmd(args: VerifyArgs) -> Result<u8> {
    let unknown = verify::unknown_suites(&args.only);
    if !unknown.is_empty() {
        let names: Vec<_> = verify::SUITES.iter().map(|s| s.name).collect();
        bail!("unknown suite {:?}; known: {}", unknown, names.join(", "));
    }
    ensure!(
        !args.primes.primes.is_empty(),
        "at least one prime is required"
    );
    let ctx = verify::Context {
        primes: args.primes.primes,
        seed: args.seed,
        fault: args.inject_fault,
    };
    let start = Instant::now();
    let outcomes = verify::run(&ctx, &args.only);
    eprintln!("verify finished in {:.1?}", start.elapsed());
    let text = match args.format {
        Some(Format::Json) => to_json(&outcomes)?,
        Some(Format::Csv) => {
            let mut w = csv::Writer::from_writer(Vec::new());
            for o in &outcomes {
                w.serialize(o)?;
            }
            String::from_utf8(w.into_inner()?)?
        }
        None => {
            let mut s = String::from("checks:\n");
            for o in &outcomes {
                s += &format!("  {:<18} {}\n", o.suite, o.claim);
            }
            for o in &outcomes {
                let tag = if o.passed { "[PASS]" } else { "[FAIL]" };
                s += &format!("{tag} {}: {}\n", o.suite, o.detail);
            }
            let failed = outcomes.iter().filter(|o| !o.passed).count();
            s += &format!("{} passed, {failed} failed\n", outcomes.len() - failed);
            s
        }
    };
    emit(&args.output.out, &text)?;
    if let Some(first) = outcomes.iter().find(|o| !o.passed) {
        eprintln!(
            "first failure: {} ({}): {}",
            first.suite, first.claim, first.detail
        );
        return Ok(1);
    }
    Ok(0)
}

fn hilbert_cmd(args: HilbertArgs) -> Result<u8> {
    let ideal = load_ideal(&args.ideal)?;
    let report = hilbert_report(&ideal, args.kmax)?;
    let text = match args.format {
        Format::Json => to_json(&report)?,
        Format::Csv => rows_csv(&report.rows)?,
    };
    emit(&args.output.out, &text)?;
    Ok(0)
}

fn pullback_cmd(args: PullbackArgs) -> Result<u8> {
    let ideal = load_ideal(&args.ideal)?;
    let out = pullback(&ideal, args.t, args.seed, args.jmax, args.bound_k)?;
    emit(&args.output.out, &to_json(&out)?)?;
    Ok(if out.laws_hold { 0 } else { 1 })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = if err.use_stderr() { 1 } else { 0 };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.command {
        Command::Analyze(a) => analyze_cmd(a),
        Command::Sweep(a) => sweep_cmd(a),
        Command::Verify(a) => verify_cmd(a),
        Command::Hilbert(a) => hilbert_cmd(a),
        Command::PullbackCheck(a) => pullback_cmd(a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(1)
        }
    }
}
