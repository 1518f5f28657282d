use std::path::{Path, PathBuf};

use anyhow::{anyhow, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use subcodes::codes::{
    build_lcd_code_with, build_so_code_with, is_self_orthogonal, lcd_violation, min_distance, CodeBuild,
    SpanMode, SubspaceCode,
};
use subcodes::partitions::{build_lcd_code_quotient, build_so_code_quotient, EquitablePartition};
use subcodes::{Error, Field, IntMatrix, Report};

use crate::family::load_family;
use crate::manifest::{read_text, write_text};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Kind {
    So,
    Lcd,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Expect {
    So,
    Lcd,
    Both,
}

pub struct BuildArgs<'a> {
    pub family: &'a Path,
    pub field: Option<Field>,
    pub partition: Option<&'a Path>,
    pub out: Option<&'a Path>,
    pub samples: Option<usize>,
    pub seed: u64,
}

pub fn read_code(path: &Path) -> Result<SubspaceCode> {
    SubspaceCode::parse(&read_text(path)?).map_err(|e| anyhow!("{}: {e}", path.display()))
}

fn run_build(
    kind: Kind,
    family: &[IntMatrix],
    field: &Field,
    part: Option<&EquitablePartition>,
    mode: SpanMode,
) -> subcodes::Result<CodeBuild> {
    match (kind, part) {
        (Kind::So, None) => build_so_code_with(family, field, mode),
        (Kind::Lcd, None) => build_lcd_code_with(family, field, mode),
        (Kind::So, Some(p)) => build_so_code_quotient(family, p, field),
        (Kind::Lcd, Some(p)) => build_lcd_code_quotient(family, p, field),
    }
}

pub fn build(kind: Kind, args: &BuildArgs) -> Result<Report> {
    let loaded = load_family(args.family)?;
    let field = args
        .field
        .clone()
        .or(loaded.field)
        .ok_or_else(|| anyhow!("no field given and the manifest names none"))?;
    let part = match args.partition {
        Some(p) => Some(EquitablePartition::parse(&read_text(p)?).map_err(|e| anyhow!("{}: {e}", p.display()))?),
        None => None,
    };
    let mode = match args.samples {
        Some(samples) => SpanMode::Sampled {
            samples,
            seed: args.seed,
        },
        None => SpanMode::Exhaustive,
    };
    let mut report = Report::new();
    let p = field.characteristic();
    let built = match run_build(kind, &loaded.matrices, &field, part.as_ref(), mode) {
        Err(e @ Error::PrecheckFailed { .. }) => {
            report.check(format!("codes.precheck.p{p}"), false, e.to_string());
            return Ok(report);
        }
        other => other?,
    };
    report.check(format!("codes.precheck.p{p}"), true, "all products divisible");
    let default_name = match kind {
        Kind::So => "so-code.txt",
        Kind::Lcd => "lcd-code.txt",
    };
    let out: PathBuf = args
        .out
        .map(Path::to_path_buf)
        .unwrap_or_else(|| args.family.join(default_name));
    write_text(&out, &built.code.to_text())?;
    report.check(
        "codes.build",
        true,
        format!(
            "members={} ambient={} field={} representatives={} zero_combinations={} written={}",
            built.code.len(),
            built.code.ambient_dim(),
            field.descriptor(),
            built.representatives,
            built.skipped_zero,
            out.display()
        ),
    );
    match kind {
        Kind::So => so_check(&mut report, &built.code),
        Kind::Lcd => lcd_check(&mut report, &built.code),
    }
    Ok(report)
}

fn so_check(report: &mut Report, code: &SubspaceCode) {
    let ok = is_self_orthogonal(code);
    report.check("codes.self_orthogonal", ok, format!("self-orthogonal={ok}"));
}

fn lcd_check(report: &mut Report, code: &SubspaceCode) {
    match lcd_violation(code) {
        None => report.check("codes.lcd", true, "LCD=true"),
        Some((i, j)) => report.check("codes.lcd", false, format!("LCD=false C_{i} meets dual of C_{j}")),
    }
}

pub fn mindist(code_path: &Path) -> Result<Report> {
    let code = read_code(code_path)?;
    let md = min_distance(&code)?;
    let mut report = Report::new();
    report.check(
        "codes.mindist",
        true,
        format!(
            "d={} pair=({},{}) members={}",
            md.distance,
            md.pair.0,
            md.pair.1,
            code.len()
        ),
    );
    Ok(report)
}

/// Pairs checked by definition in the seeded LCD spot check.
const SAMPLED_PAIRS: usize = 64;

pub fn check(code_path: &Path, expect: Expect, seed: u64) -> Result<Report> {
    let code = read_code(code_path)?;
    let mut report = Report::new();
    if matches!(expect, Expect::So | Expect::Both) {
        so_check(&mut report, &code);
    }
    if matches!(expect, Expect::Lcd | Expect::Both) {
        lcd_check(&mut report, &code);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let k = code.len();
        let mut bad = None;
        for _ in 0..SAMPLED_PAIRS {
            let (i, j) = (rng.gen_range(0..k), rng.gen_range(0..k));
            if !code.members()[i].meets_dual_trivially(&code.members()[j])? {
                bad = Some((i, j));
                break;
            }
        }
        let detail = match bad {
            None => format!("{SAMPLED_PAIRS} seeded pairs meet duals trivially (seed {seed})"),
            Some((i, j)) => format!("C_{i} meets dual of C_{j} (seed {seed})"),
        };
        report.check("codes.lcd.sampled", bad.is_none(), detail);
    }
    Ok(report)
}
