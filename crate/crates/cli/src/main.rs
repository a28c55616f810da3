//! `nsg` — numerical semigroup analysis from the command line.
//!
//! Exit codes: 0 success, 1 invalid input, 2 fixture failure, 3 internal
//! invariant violation.

mod fixtures;
mod output;

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use nsg::invariants::abc_table;
use nsg::report::{analyze, hilbert_display};
use nsg::{build_injection, NumericalSemigroup, Predicate, SearchConstraints};

#[derive(Parser)]
#[command(name = "nsg", version, about = "Numerical semigroups: Apéry sets, Hilbert functions, level-set invariants, monotonicity certificates, exhaustive search")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Full JSON report: generators, Apéry set, Hilbert function, level
    /// sets, invariant table, verdict, necessary conditions
    Analyze {
        #[arg(required = true)]
        gens: Vec<i64>,
    },
    /// The Hilbert function, e.g. "1,5,11,…,24, →"
    Hilbert {
        #[arg(required = true)]
        gens: Vec<i64>,
    },
    /// The Apéry set and the per-residue invariants a_i, b_i, c_i
    Apery {
        #[arg(required = true)]
        gens: Vec<i64>,
    },
    /// Build the injection D_h → C_h at the given level
    Injection {
        #[arg(required = true)]
        gens: Vec<i64>,
        /// Level h ≥ 2
        #[arg(long)]
        level: u32,
        /// Print every redefinition step
        #[arg(long)]
        trace: bool,
    },
    /// Certify every semigroup in a bounded family across a worker pool
    Search {
        #[arg(long = "max-mult")]
        max_mult: i64,
        #[arg(long = "ed-min")]
        ed_min: u32,
        #[arg(long = "ed-max")]
        ed_max: u32,
        /// Largest generator; at least one of --max-gen/--max-frob is needed
        #[arg(long = "max-gen")]
        max_gen: Option<i64>,
        /// Largest Frobenius number
        #[arg(long = "max-frob")]
        max_frob: Option<i64>,
        /// Keep only symmetric semigroups
        #[arg(long)]
        symmetric: bool,
        /// Which candidates become records
        #[arg(long, value_enum)]
        predicate: PredicateArg,
        /// Worker threads; defaults to the available parallelism
        #[arg(long)]
        workers: Option<usize>,
        /// Write records here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = FormatArg::Jsonl)]
        format: FormatArg,
        /// Resume key: skip partitions up to and including this index
        #[arg(long = "resume-after")]
        resume_after: Option<usize>,
    },
    /// Replay the golden fixtures of the worked examples
    VerifyPaper {
        /// Fixture file to use instead of the built-in set
        #[arg(long)]
        fixtures: Option<PathBuf>,
        /// Restrict to one semigroup, as a comma-joined generator list
        #[arg(long)]
        only: Option<String>,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum PredicateArg {
    Decreasing,
    DhBoundFails,
    CertificateIsDirect,
    All,
}

impl From<PredicateArg> for Predicate {
    fn from(p: PredicateArg) -> Predicate {
        match p {
            PredicateArg::Decreasing => Predicate::Decreasing,
            PredicateArg::DhBoundFails => Predicate::DhBoundFails,
            PredicateArg::CertificateIsDirect => Predicate::CertificateIsDirect,
            PredicateArg::All => Predicate::All,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Jsonl,
    Csv,
}

fn main() {
    let code = std::panic::catch_unwind(run).unwrap_or(3);
    std::process::exit(code);
}

fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return code;
        }
    };
    match execute(cli.command) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            match err {
                nsg::Error::Internal(_) => 3,
                _ => 1,
            }
        }
    }
}

fn execute(command: Command) -> nsg::Result<i32> {
    match command {
        Command::Analyze { gens } => {
            let s = NumericalSemigroup::new(&gens)?;
            let report = analyze(&s)?;
            println!("{}", serde_json::to_string_pretty(&report).expect("serializable"));
            Ok(0)
        }
        Command::Hilbert { gens } => {
            let s = NumericalSemigroup::new(&gens)?;
            println!("{}", hilbert_display(&s));
            Ok(0)
        }
        Command::Apery { gens } => {
            let s = NumericalSemigroup::new(&gens)?;
            let table = abc_table(&s)?;
            print!("{}", output::apery_report(&s, &table));
            Ok(0)
        }
        Command::Injection { gens, level, trace } => {
            let s = NumericalSemigroup::new(&gens)?;
            let result = build_injection(&s, level)?;
            print!("{}", output::injection_report(&s, &result, trace));
            Ok(0)
        }
        Command::Search {
            max_mult,
            ed_min,
            ed_max,
            max_gen,
            max_frob,
            symmetric,
            predicate,
            workers,
            out,
            format,
            resume_after,
        } => {
            let constraints = SearchConstraints {
                max_multiplicity: max_mult,
                ed_min,
                ed_max,
                max_generator: max_gen,
                max_frobenius: max_frob,
                symmetric_only: symmetric,
                predicate: predicate.into(),
            };
            let workers = workers.unwrap_or_else(|| {
                std::thread::available_parallelism().map_or(1, |n| n.get())
            });

            let io_err = |e: std::io::Error| {
                nsg::Error::InvalidConstraints(format!("cannot write records: {e}"))
            };
            let mut sink: Box<dyn Write> = match &out {
                Some(path) => Box::new(std::io::BufWriter::new(
                    fs::File::create(path).map_err(io_err)?,
                )),
                None => Box::new(std::io::stdout().lock()),
            };
            if format == FormatArg::Csv {
                writeln!(sink, "{}", nsg::SearchRecord::CSV_HEADER).map_err(io_err)?;
            }

            // Records stream out in partition order and are flushed per
            // partition, so an interrupted run leaves a valid prefix; the
            // progress lines carry the resume key.
            let mut last_progress = std::time::Instant::now();
            let summary =
                nsg::search::hunt_with(&constraints, workers, resume_after, |idx, records| {
                    for record in &records {
                        match format {
                            FormatArg::Jsonl => {
                                let line =
                                    serde_json::to_string(record).expect("serializable");
                                writeln!(sink, "{line}").map_err(io_err)?;
                            }
                            FormatArg::Csv => {
                                writeln!(sink, "{}", record.csv_line()).map_err(io_err)?;
                            }
                        }
                    }
                    if !records.is_empty() {
                        sink.flush().map_err(io_err)?;
                    }
                    if last_progress.elapsed().as_secs() >= 2 {
                        eprintln!(
                            "progress: partition {idx} done; resume with --resume-after {idx}"
                        );
                        last_progress = std::time::Instant::now();
                    }
                    Ok(())
                })?;
            sink.flush().map_err(io_err)?;
            drop(sink);

            let mut err = std::io::stderr().lock();
            writeln!(
                err,
                "search complete: {} candidates, {} matched, {} decreasing",
                summary.total, summary.matched, summary.decreasing
            )
            .ok();
            writeln!(
                err,
                "certificates: cm={} apery_bound={} dh_bound={} direct={}",
                summary.by_certificate.cm_tangent_cone,
                summary.by_certificate.apery_bound,
                summary.by_certificate.dh_bound,
                summary.by_certificate.direct
            )
            .ok();
            writeln!(
                err,
                "partitions: {}/{} processed, resume key {}",
                summary.partitions_processed,
                summary.partitions_total,
                summary.last_partition_index.map_or("-".into(), |i| i.to_string())
            )
            .ok();
            writeln!(
                err,
                "workers: {}, elapsed: {:.2}s, throughput: {:.0} candidates/s/worker",
                summary.workers, summary.elapsed_secs, summary.throughput_per_worker
            )
            .ok();
            Ok(0)
        }
        Command::VerifyPaper { fixtures: path, only } => {
            let text = match path {
                Some(p) => fs::read_to_string(&p).map_err(|e| {
                    nsg::Error::InvalidConstraints(format!("cannot read {}: {e}", p.display()))
                })?,
                None => fixtures::DEFAULT_FIXTURES.to_string(),
            };
            let set = fixtures::load(&text).map_err(nsg::Error::InvalidConstraints)?;
            let mut stdout = std::io::stdout().lock();
            let failures = fixtures::run_all(&set, only.as_deref(), &mut stdout);
            Ok(if failures == 0 { 0 } else { 2 })
        }
    }
}
