use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use stardisc::io::{format_points, read_function, read_points, write_points};
use stardisc::records::{
    json_line, write_csv, BoundRecord, DiscrepancyRecord, FamilyBoundRecord, GapRow, OptimumRecord, PropertyRecord,
    TrajectoryRow,
};
use stardisc::fmt9;
use stardisc_core::admissibility::{
    build_f, check_bend_condition, check_properties, check_strict_admissibility, eligible_bend_indices, make_scale,
    GammaSets, PropertyReport,
};
use stardisc_core::bounds::{bound_report, constant_at, optimize_constant, Family};
use stardisc_core::points::star_discrepancy;
use stardisc_core::sequence::{kronecker, trajectory, van_der_corput, Stride, GOLDEN};
use stardisc_core::variational::qp_gap_report;
use stardisc_core::PointSet;

const OUT_DIR_ENV: &str = "STARDISC_OUT_DIR";

#[derive(Parser)]
#[command(name = "stardisc", version, about = "Star discrepancy lower-bound toolkit")]
struct Cli {
    /// human: aligned text; records: JSON lines, or CSV for tables
    #[arg(long, value_enum, default_value_t = Format::Human, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Records,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the integral bounds at `a`, or maximise the constant over an interval
    Bound(BoundArgs),
    /// Exact star discrepancy of a point file
    Discrepancy(DiscrepancyArgs),
    /// Admissibility checks on the comparison function of a point file
    Check(CheckArgs),
    /// Profile quadratic program against the closed-form bound
    Qp(QpArgs),
    /// Discrepancy trajectory of a generated sequence
    Sequence(SequenceArgs),
    /// Write a point file
    Generate(GenerateArgs),
}

#[derive(Args)]
struct BoundArgs {
    #[arg(long, allow_negative_numbers = true)]
    a: Option<f64>,
    #[arg(long, value_enum)]
    family: Option<FamilyArg>,
    #[arg(long)]
    optimize: bool,
    #[arg(long, allow_negative_numbers = true)]
    a_lo: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    a_hi: Option<f64>,
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Strong,
    Strict,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Self {
        match f {
            FamilyArg::Strong => Family::Strong,
            FamilyArg::Strict => Family::Strict,
        }
    }
}

#[derive(Args)]
struct DiscrepancyArgs {
    path: PathBuf,
    /// Prefix length (default: all points)
    #[arg(long)]
    n: Option<usize>,
}

#[derive(Args)]
struct CheckArgs {
    #[arg(long)]
    points: PathBuf,
    #[arg(long)]
    a: f64,
    #[arg(long)]
    t: u32,
    /// Check this function instead of the one built from the points
    #[arg(long)]
    function: Option<PathBuf>,
    /// Also check strict admissibility with Γ taken from the points
    #[arg(long)]
    strict: bool,
}

#[derive(Args)]
struct QpArgs {
    #[arg(long)]
    a: f64,
    /// A single value or a range `lo..hi` (inclusive)
    #[arg(long, value_parser = parse_t_range)]
    t: RangeInclusive<u32>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Generator {
    Vdc,
    Kronecker,
    Random,
}

#[derive(Args)]
struct GeneratorArgs {
    #[arg(value_enum)]
    kind: Generator,
    #[arg(long)]
    count: usize,
    #[arg(long, default_value_t = 2, allow_negative_numbers = true)]
    base: i64,
    #[arg(long, default_value_t = GOLDEN, allow_negative_numbers = true)]
    alpha: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct SequenceArgs {
    #[command(flatten)]
    generator: GeneratorArgs,
    /// all, dyadic, or a comma-separated list of prefix lengths
    #[arg(long, default_value = "dyadic", value_parser = parse_stride)]
    stride: Stride,
    /// Trajectory CSV path (default: `$STARDISC_OUT_DIR/<kind>-<count>.csv` when set)
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct GenerateArgs {
    #[command(flatten)]
    generator: GeneratorArgs,
    #[arg(long)]
    output: Option<PathBuf>,
}

fn parse_t_range(s: &str) -> Result<RangeInclusive<u32>, String> {
    let parse = |v: &str| v.trim().parse::<u32>().map_err(|e| format!("'{v}': {e}"));
    let range = match s.split_once("..") {
        Some((lo, hi)) => parse(lo)?..=parse(hi.trim_start_matches('='))?,
        None => {
            let t = parse(s)?;
            t..=t
        }
    };
    if range.is_empty() {
        return Err(format!("empty range '{s}'"));
    }
    Ok(range)
}

fn parse_stride(s: &str) -> Result<Stride, String> {
    match s {
        "all" => Ok(Stride::All),
        "dyadic" => Ok(Stride::Dyadic),
        list => list
            .split(',')
            .map(|v| v.trim().parse::<usize>().map_err(|e| format!("'{v}': {e}")))
            .collect::<Result<_, _>>()
            .map(Stride::Custom),
    }
}

/// Outcome of a command: success, checks that ran and failed, or an error
/// that prevented running.
enum Failure {
    Checks,
    Usage(String),
}

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Usage(e.to_string())
    }
}

type CmdResult = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Bound(args) => cmd_bound(args, cli.format),
        Command::Discrepancy(args) => cmd_discrepancy(args, cli.format),
        Command::Check(args) => cmd_check(args, cli.format),
        Command::Qp(args) => cmd_qp(args, cli.format),
        Command::Sequence(args) => cmd_sequence(args, cli.format),
        Command::Generate(args) => cmd_generate(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Checks) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("stardisc: {msg}");
            ExitCode::from(2)
        }
    }
}

fn cmd_bound(args: BoundArgs, format: Format) -> CmdResult {
    if args.optimize {
        let family: Family = args.family.unwrap_or(FamilyArg::Strict).into();
        let (lo, hi) = family.domain();
        let opt = optimize_constant(family, args.a_lo.unwrap_or(lo), args.a_hi.unwrap_or(hi), args.tol)?;
        match format {
            Format::Human => println!("{} a_star={} c_star={}", family.name(), fmt9(opt.a_star), fmt9(opt.c_star)),
            Format::Records => println!("{}", json_line(&OptimumRecord::new(family, &opt))),
        }
        return Ok(());
    }
    let a = args.a.ok_or_else(|| Failure::Usage("either --a or --optimize is required".into()))?;
    match args.family {
        None => {
            let r = bound_report(a)?;
            match format {
                Format::Human => {
                    println!("a            {}", fmt9(r.a));
                    println!("strong_bound {}", fmt9(r.strong_bound));
                    println!("strict_bound {}", fmt9(r.strict_bound));
                    println!("c_strong     {}", fmt9(r.c_strong));
                    println!("c_strict     {}", fmt9(r.c_strict));
                }
                Format::Records => println!("{}", json_line(&BoundRecord::from(&r))),
            }
        }
        Some(f) => {
            let family: Family = f.into();
            let record =
                FamilyBoundRecord { family: family.name(), a, bound: family.bound(a)?, c: constant_at(family, a)? };
            match format {
                Format::Human => println!("{} a={} bound={} c={}", record.family, fmt9(a), fmt9(record.bound), fmt9(record.c)),
                Format::Records => println!("{}", json_line(&record)),
            }
        }
    }
    Ok(())
}

fn cmd_discrepancy(args: DiscrepancyArgs, format: Format) -> CmdResult {
    let ps = read_points(&args.path)?;
    let n = args.n.unwrap_or(ps.len());
    let dstar = star_discrepancy(&ps, n)?;
    match format {
        Format::Human => println!("{}", fmt9(dstar)),
        Format::Records => println!("{}", json_line(&DiscrepancyRecord { n, dstar })),
    }
    Ok(())
}

fn cmd_check(args: CheckArgs, format: Format) -> CmdResult {
    let ps = read_points(&args.points)?;
    let sc = make_scale(args.a, args.t)?;
    let f = match &args.function {
        Some(path) => {
            sc.require_size(&ps)?;
            read_function(path)?
        }
        None => build_f(&ps, &sc)?,
    };
    let mut report = check_properties(&f, &sc, &ps)?;
    if sc.integer_exact {
        for j in eligible_bend_indices(&f, &sc, &ps) {
            report.extend(check_bend_condition(&f, &sc, &ps, j)?);
        }
    } else {
        eprintln!("stardisc: a^t is not an integer; bend conditions skipped");
    }
    if args.strict {
        let gamma = GammaSets::from_point_set(&ps, &sc)?;
        let strict = check_strict_admissibility(&f, &sc, &gamma)?;
        // (i)-(v) are already in the report
        let fresh: Vec<_> = strict.outcomes.into_iter().filter(|o| report.get(o.id).is_none()).collect();
        report.outcomes.extend(fresh);
    }
    render_report(&report, format);
    if report.all_passed() {
        Ok(())
    } else {
        Err(Failure::Checks)
    }
}

fn render_report(report: &PropertyReport, format: Format) {
    for o in &report.outcomes {
        match format {
            Format::Records => println!("{}", json_line(&PropertyRecord::from(o))),
            Format::Human => {
                let verdict = if o.passed { "pass" } else { "FAIL" };
                match o.witness {
                    Some(w) => println!(
                        "{:<14} {verdict}  x={} measured={} threshold={}",
                        o.id.to_string(),
                        fmt9(w.x),
                        fmt9(w.measured),
                        fmt9(w.threshold)
                    ),
                    None => println!("{:<14} {verdict}", o.id.to_string()),
                }
            }
        }
    }
    if format == Format::Human {
        let failed = report.outcomes.iter().filter(|o| !o.passed).count();
        println!("{} checks, {failed} failed", report.outcomes.len());
    }
}

fn cmd_qp(args: QpArgs, format: Format) -> CmdResult {
    let gaps = qp_gap_report(args.a, args.t)?;
    match format {
        Format::Records => write_csv(io::stdout().lock(), gaps.iter().map(GapRow::from))?,
        Format::Human => {
            println!("{:>3} {:>14} {:>14} {:>14}", "t", "oracle", "closed_form", "gap");
            for g in &gaps {
                println!("{:>3} {:>14} {:>14} {:>14}", g.t, fmt9(g.oracle_objective), fmt9(g.closed_form), fmt9(g.gap));
            }
        }
    }
    Ok(())
}

fn generate(g: &GeneratorArgs) -> Result<PointSet, Failure> {
    Ok(match g.kind {
        Generator::Vdc => {
            let base = u64::try_from(g.base).map_err(|_| Failure::Usage(format!("base must be at least 2, got {}", g.base)))?;
            van_der_corput(base, g.count)?
        }
        Generator::Kronecker => kronecker(g.alpha, g.count)?,
        Generator::Random => {
            let mut rng = ChaCha8Rng::seed_from_u64(g.seed);
            PointSet::new((0..g.count).map(|_| rng.random::<f64>()).collect())?
        }
    })
}

fn generator_name(kind: Generator) -> &'static str {
    match kind {
        Generator::Vdc => "vdc",
        Generator::Kronecker => "kronecker",
        Generator::Random => "random",
    }
}

fn cmd_sequence(args: SequenceArgs, format: Format) -> CmdResult {
    let ps = generate(&args.generator)?;
    let records = trajectory(&ps, &args.stride)?;
    let output = args.output.or_else(|| {
        std::env::var_os(OUT_DIR_ENV).map(|dir| {
            Path::new(&dir).join(format!("{}-{}.csv", generator_name(args.generator.kind), args.generator.count))
        })
    });
    let rows = records.iter().map(TrajectoryRow::from);
    match (&output, format) {
        (Some(path), _) => {
            let file = File::create(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
            write_csv(BufWriter::new(file), rows)?;
        }
        (None, Format::Records) => write_csv(io::stdout().lock(), rows)?,
        (None, Format::Human) => {
            let mut out = io::stdout().lock();
            writeln!(out, "{:>10} {:>14} {:>14} {:>14}", "N", "dstar", "scaled", "normalized")?;
            for r in &records {
                let norm = r.normalized.map(fmt9).unwrap_or_else(|| "-".into());
                writeln!(out, "{:>10} {:>14} {:>14} {:>14}", r.n, fmt9(r.dstar), fmt9(r.scaled), norm)?;
            }
        }
    }
    if output.is_some() || format == Format::Human {
        let max = records.last().and_then(|r| r.running_max);
        println!("running_max {}", max.map(fmt9).unwrap_or_else(|| "-".into()));
    }
    Ok(())
}

fn cmd_generate(args: GenerateArgs) -> CmdResult {
    let ps = generate(&args.generator)?;
    match args.output {
        Some(path) => write_points(&path, &ps)?,
        None => io::stdout().lock().write_all(format_points(&ps).as_bytes())?,
    }
    Ok(())
}
