use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Result;
use clap::{Args, Parser, Subcommand};
use serde_json::json;
use subcodes::{Field, Report};

mod codes;
mod deza;
mod designs;
mod family;
mod manifest;
mod partition;
mod scheme;

/// Verify subspace-code constructions built from matrix families.
#[derive(Parser)]
#[command(name = "subcodes", version)]
struct Cli {
    /// Emit the report as JSON instead of CHECK lines.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for sampled checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build or verify the Deza graph family over GF(q).
    #[command(subcommand)]
    Deza(DezaCmd),
    /// Build subspace codes from a matrix family and check them.
    #[command(subcommand)]
    Codes(CodesCmd),
    /// Verify design families.
    #[command(subcommand)]
    Designs(DesignsCmd),
    /// Association scheme checks and codes.
    #[command(subcommand)]
    Scheme(SchemeCmd),
    /// Equitable partitions, quotients and orbits.
    #[command(subcommand)]
    Partition(PartitionCmd),
}

#[derive(Subcommand)]
enum DezaCmd {
    /// Write every member, the block partition and a manifest.
    Build {
        #[arg(long)]
        field: String,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run the identity suite; with --in, also compare stored files.
    Verify {
        #[arg(long)]
        field: String,
        #[arg(long = "in")]
        input: Option<PathBuf>,
    },
}

#[derive(Args)]
struct BuildOpts {
    /// Directory with a family manifest.
    #[arg(long)]
    family: PathBuf,
    /// Field descriptor; defaults to the manifest's.
    #[arg(long)]
    field: Option<String>,
    /// Build from quotients under this partition file.
    #[arg(long)]
    partition: Option<PathBuf>,
    /// Output code file; defaults to a file in the family directory.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Sample this many span elements instead of enumerating all.
    #[arg(long)]
    samples: Option<usize>,
}

#[derive(Subcommand)]
enum CodesCmd {
    /// Self-orthogonal code from the span of the family.
    BuildSo(BuildOpts),
    /// LCD code from the span of the family.
    BuildLcd(BuildOpts),
    /// Exact minimum distance and a pair attaining it.
    Mindist {
        #[arg(long)]
        code: PathBuf,
    },
    /// Self-orthogonality and LCD verdicts for a code file.
    Check {
        #[arg(long)]
        code: PathBuf,
        #[arg(long, value_enum, default_value = "both")]
        expect: codes::Expect,
    },
}

#[derive(Subcommand)]
enum DesignsCmd {
    Verify {
        #[arg(long, value_enum)]
        kind: designs::DesignKind,
        #[arg(long)]
        family: PathBuf,
    },
}

#[derive(Subcommand)]
enum SchemeCmd {
    /// Check the axioms and report valencies.
    Verify {
        #[arg(long)]
        scheme: PathBuf,
    },
    /// Divisibility gate for an index set and prime.
    Gate {
        #[arg(long)]
        scheme: PathBuf,
        /// Comma-separated class indices; defaults to the manifest's.
        #[arg(long)]
        set: Option<String>,
        #[arg(long)]
        prime: Option<u32>,
    },
    /// Self-orthogonal code from the chosen classes.
    Code {
        #[arg(long)]
        scheme: PathBuf,
        #[arg(long)]
        set: Option<String>,
        #[arg(long)]
        prime: Option<u32>,
        #[arg(long)]
        field: Option<String>,
        #[arg(long)]
        partition: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum PartitionCmd {
    /// Write the quotient matrix.
    Quotient {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long)]
        partition: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Check that the partition is equitable for the matrix.
    Verify {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long)]
        partition: PathBuf,
    },
    /// Orbit partition of a permutation group.
    Orbits {
        #[arg(long)]
        perms: PathBuf,
        #[arg(long)]
        points: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also check equitability for this matrix.
        #[arg(long)]
        matrix: Option<PathBuf>,
    },
}

fn field(desc: &str) -> Result<Field> {
    Ok(Field::parse(desc)?)
}

fn opt_field(desc: &Option<String>) -> Result<Option<Field>> {
    desc.as_deref().map(field).transpose()
}

fn run(cli: &Cli) -> Result<Report> {
    match &cli.command {
        Command::Deza(DezaCmd::Build { field: f, out }) => deza::build(&field(f)?, out),
        Command::Deza(DezaCmd::Verify { field: f, input }) => deza::verify(&field(f)?, input.as_deref()),
        Command::Codes(cmd) => match cmd {
            CodesCmd::BuildSo(o) | CodesCmd::BuildLcd(o) => {
                let kind = match cmd {
                    CodesCmd::BuildSo(_) => codes::Kind::So,
                    _ => codes::Kind::Lcd,
                };
                codes::build(
                    kind,
                    &codes::BuildArgs {
                        family: &o.family,
                        field: opt_field(&o.field)?,
                        partition: o.partition.as_deref(),
                        out: o.out.as_deref(),
                        samples: o.samples,
                        seed: cli.seed,
                    },
                )
            }
            CodesCmd::Mindist { code } => codes::mindist(code),
            CodesCmd::Check { code, expect } => codes::check(code, *expect, cli.seed),
        },
        Command::Designs(DesignsCmd::Verify { kind, family }) => designs::verify(*kind, family),
        Command::Scheme(cmd) => match cmd {
            SchemeCmd::Verify { scheme: dir } => scheme::verify(dir),
            SchemeCmd::Gate { scheme: dir, set, prime } => scheme::run_gate(dir, set.as_deref(), *prime),
            SchemeCmd::Code {
                scheme: dir,
                set,
                prime,
                field: f,
                partition,
                out,
            } => scheme::code(&scheme::CodeArgs {
                dir,
                set: set.as_deref(),
                prime: *prime,
                field: opt_field(f)?,
                partition: partition.as_deref(),
                out: out.as_deref(),
            }),
        },
        Command::Partition(cmd) => match cmd {
            PartitionCmd::Quotient { matrix, partition: p, out } => partition::run_quotient(matrix, p, out),
            PartitionCmd::Verify { matrix, partition: p } => partition::verify(matrix, p),
            PartitionCmd::Orbits {
                perms,
                points,
                out,
                matrix,
            } => partition::orbits(perms, *points, out.as_deref(), matrix.as_deref()),
        },
    }
}

fn to_json(report: &Report) -> serde_json::Value {
    let checks: Vec<_> = report
        .checks()
        .into_iter()
        .map(|c| json!({"name": c.name, "status": c.status(), "detail": c.detail}))
        .collect();
    json!({
        "checks": checks,
        "passed": report.len() - report.failures(),
        "failed": report.failures(),
    })
}

fn main() -> ExitCode {
    env_logger::init();
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&to_json(&report)).expect("serialisable"));
            } else {
                print!("{report}");
            }
            if report.all_passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
