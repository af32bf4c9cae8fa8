use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use dynamis_core::replay::{run, Algorithm, RunOptions, RunReport};
use dynamis_core::scaling::{cmd_scaling, ScalingFamily};
use dynamis_core::{parse_stream, serialize_stream, Family, GenSpec};

const EXIT_VERIFY: u8 = 1;
const EXIT_USAGE: u8 = 2;

#[derive(Parser)]
#[command(
    name = "dynamis",
    version,
    about = "Replay dynamic graph update streams with work metering"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Replay a stream file through one algorithm.
    Run {
        algorithm: Algorithm,
        stream: PathBuf,
        /// Audit the structure and consult the oracle after every event.
        #[arg(long)]
        verify: bool,
        /// Write the JSON report here; stdout then carries only query answers.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Generate a stream file.
    Gen(GenArgs),
    /// Fit the log-log slope of total work over several sizes.
    Scaling {
        algorithm: Algorithm,
        family: ScalingFamily,
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<usize>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum GenFamily {
    ArbitraryRemoval,
    DegreeBiased,
    RandomEdges,
    RandomFlow,
    RandomMatching,
}

impl From<GenFamily> for Family {
    fn from(f: GenFamily) -> Self {
        match f {
            GenFamily::ArbitraryRemoval => Family::ArbitraryRemoval,
            GenFamily::DegreeBiased => Family::DegreeBiased,
            GenFamily::RandomEdges => Family::RandomEdges,
            GenFamily::RandomFlow => Family::RandomFlow,
            GenFamily::RandomMatching => Family::RandomMatching,
        }
    }
}

#[derive(Args)]
struct GenArgs {
    #[arg(long, value_enum)]
    family: GenFamily,
    /// Edge budget for the adversarial families.
    #[arg(long, default_value_t = 0)]
    m: usize,
    /// Degree cap for arbitrary-removal.
    #[arg(long, default_value_t = 0)]
    delta: usize,
    /// Initial vertex count for the random families.
    #[arg(long, default_value_t = 16)]
    n: usize,
    #[arg(long, default_value_t = 100)]
    events: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 2.0 / 3.0)]
    p_insert: f64,
    #[arg(long, default_value_t = 0.0)]
    p_vertex: f64,
    #[arg(long, default_value_t = 0.0)]
    p_query: f64,
    /// Output file; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

impl GenArgs {
    fn spec(&self) -> GenSpec {
        GenSpec {
            family: self.family.into(),
            m: self.m,
            delta: self.delta,
            n: self.n,
            seed: self.seed,
            events: self.events,
            p_insert: self.p_insert,
            p_vertex: self.p_vertex,
            p_query: self.p_query,
        }
    }
}

fn usage(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("dynamis: {msg}");
    ExitCode::from(EXIT_USAGE)
}

fn emit_report(report: &RunReport) -> io::Result<()> {
    let mut out = io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, report)?;
    writeln!(out)
}

fn cmd_run(
    algorithm: Algorithm,
    path: PathBuf,
    verify: bool,
    report_path: Option<PathBuf>,
) -> ExitCode {
    let text = match fs::read_to_string(&path) {
        Ok(t) => t,
        Err(e) => return usage(format_args!("{}: {e}", path.display())),
    };
    let stream = match parse_stream(&text) {
        Ok(s) => s,
        Err(e) => return usage(format_args!("{}: {e}", path.display())),
    };
    let report = match run(
        algorithm,
        &stream,
        RunOptions {
            verify,
            record: false,
        },
    ) {
        Ok(r) => r.report,
        Err(e) => return usage(e),
    };
    let written = match &report_path {
        Some(p) => serde_json::to_string_pretty(&report)
            .map_err(io::Error::from)
            .and_then(|json| fs::write(p, json + "\n"))
            .and_then(|()| {
                let mut out = io::stdout().lock();
                for q in &report.query_answers {
                    writeln!(out, "{} {}", q.vertex, u8::from(q.answer))?;
                }
                Ok(())
            }),
        None => emit_report(&report),
    };
    if let Err(e) = written {
        return usage(e);
    }
    match &report.verification {
        Some(v) if !v.ok => {
            eprintln!(
                "dynamis: verification failed at event {}: {}",
                v.failed_at.unwrap_or_default(),
                v.detail.as_deref().unwrap_or("")
            );
            ExitCode::from(EXIT_VERIFY)
        }
        _ => ExitCode::SUCCESS,
    }
}

fn cmd_gen(args: GenArgs) -> ExitCode {
    let stream = match args.spec().generate() {
        Ok(s) => s,
        Err(e) => return usage(e),
    };
    let text = serialize_stream(&stream);
    let written = match &args.out {
        Some(p) => fs::write(p, text),
        None => io::stdout().lock().write_all(text.as_bytes()),
    };
    match written {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => usage(e),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match cli.command {
        Command::Run {
            algorithm,
            stream,
            verify,
            report,
        } => cmd_run(algorithm, stream, verify, report),
        Command::Gen(args) => cmd_gen(args),
        Command::Scaling {
            algorithm,
            family,
            sizes,
        } => match cmd_scaling(algorithm, family, &sizes) {
            Ok(r) => match emit_report(&r) {
                Ok(()) => ExitCode::SUCCESS,
                Err(e) => usage(e),
            },
            Err(e) => usage(e),
        },
    }
}
