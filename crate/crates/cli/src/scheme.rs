use std::path::{Path, PathBuf};

use anyhow::{anyhow, Result};
use subcodes::codes::is_self_orthogonal;
use subcodes::partitions::EquitablePartition;
use subcodes::schemes::{bose_mesner_code, corollary_gate, verify_scheme, AssociationScheme};
use subcodes::{Error, Field, IntMatrix, Report, Verdict};

use crate::manifest::{parse_list, read_matrix, read_text, write_text, Manifest};

pub struct SchemeInput {
    pub manifest: Manifest,
    pub adjacencies: Vec<IntMatrix>,
}

/// Reads `A_0.mat .. A_d.mat`, with `d` taken from the `classes` key.
pub fn load(dir: &Path) -> Result<SchemeInput> {
    let manifest = Manifest::load(dir)?;
    manifest.expect_kind(&["scheme"])?;
    let d: usize = manifest.parse("classes")?;
    let adjacencies = (0..=d)
        .map(|i| read_matrix(&dir.join(format!("A_{i}.mat"))))
        .collect::<Result<Vec<_>>>()?;
    Ok(SchemeInput { manifest, adjacencies })
}

fn axioms(report: &mut Report, input: &SchemeInput) -> Result<Option<AssociationScheme>> {
    match verify_scheme(&input.adjacencies) {
        Ok(s) => {
            report.check(
                "scheme.axioms",
                true,
                format!(
                    "points={} classes={} commutative={} symmetric={}",
                    s.points(),
                    s.classes(),
                    s.is_commutative(),
                    s.is_symmetric()
                ),
            );
            Ok(Some(s))
        }
        Err(e @ Error::SchemeAxiom { .. }) => {
            report.check("scheme.axioms", false, e.to_string());
            Ok(None)
        }
        Err(e) => Err(e.into()),
    }
}

pub fn verify(dir: &Path) -> Result<Report> {
    let input = load(dir)?;
    let mut report = Report::new();
    let Some(s) = axioms(&mut report, &input)? else {
        return Ok(report);
    };
    if let Some(points) = input.manifest.parse_opt::<usize>("points")? {
        report.check(
            "scheme.points",
            points == s.points(),
            format!("claimed {points}, found {}", s.points()),
        );
    }
    let valencies: Vec<String> = (0..=s.classes()).map(|i| s.valency(i).to_string()).collect();
    report.check("scheme.valencies", true, valencies.join(" "));
    Ok(report)
}

fn resolve_set(input: &SchemeInput, set: Option<&str>) -> Result<Vec<usize>> {
    let text = match set {
        Some(s) => s,
        None => input.manifest.get("set")?,
    };
    parse_list(text)
}

fn resolve_prime(input: &SchemeInput, prime: Option<u32>) -> Result<u32> {
    match prime {
        Some(p) => Ok(p),
        None => input.manifest.parse("prime"),
    }
}

fn set_label(set: &[usize]) -> String {
    let items: Vec<String> = set.iter().map(usize::to_string).collect();
    format!("I={{{}}}", items.join(","))
}

fn gate(report: &mut Report, s: &AssociationScheme, set: &[usize], p: u32) -> Result<bool> {
    let name = format!("scheme.gate.p{p}");
    match corollary_gate(s, set, p)? {
        Verdict::Pass => {
            report.check(name, true, set_label(set));
            Ok(true)
        }
        Verdict::Fail(w) => {
            report.check(
                name,
                false,
                format!(
                    "{}: p_{{{},{}'}}^{} = {} not divisible by {p}",
                    set_label(set),
                    w.x,
                    w.y,
                    w.k,
                    w.value
                ),
            );
            Ok(false)
        }
    }
}

pub fn run_gate(dir: &Path, set: Option<&str>, prime: Option<u32>) -> Result<Report> {
    let input = load(dir)?;
    let set = resolve_set(&input, set)?;
    let p = resolve_prime(&input, prime)?;
    let mut report = Report::new();
    if let Some(s) = axioms(&mut report, &input)? {
        gate(&mut report, &s, &set, p)?;
    }
    Ok(report)
}

pub struct CodeArgs<'a> {
    pub dir: &'a Path,
    pub set: Option<&'a str>,
    pub prime: Option<u32>,
    pub field: Option<Field>,
    pub partition: Option<&'a Path>,
    pub out: Option<&'a Path>,
}

pub fn code(args: &CodeArgs) -> Result<Report> {
    let input = load(args.dir)?;
    let set = resolve_set(&input, args.set)?;
    let field = match (&args.field, args.prime) {
        (Some(f), _) => f.clone(),
        (None, p) => Field::prime(resolve_prime(&input, p)?)?,
    };
    let mut report = Report::new();
    let Some(s) = axioms(&mut report, &input)? else {
        return Ok(report);
    };
    if !gate(&mut report, &s, &set, field.characteristic())? {
        return Ok(report);
    }
    let part = match args.partition {
        Some(p) => Some(EquitablePartition::parse(&read_text(p)?).map_err(|e| anyhow!("{}: {e}", p.display()))?),
        None => None,
    };
    let built = bose_mesner_code(&s, &set, &field, part.as_ref())?;
    let out: PathBuf = args
        .out
        .map(Path::to_path_buf)
        .unwrap_or_else(|| args.dir.join("so-code.txt"));
    write_text(&out, &built.code.to_text())?;
    report.check(
        "scheme.code",
        true,
        format!(
            "members={} ambient={} field={} written={}",
            built.code.len(),
            built.code.ambient_dim(),
            field.descriptor(),
            out.display()
        ),
    );
    let ok = is_self_orthogonal(&built.code);
    report.check("codes.self_orthogonal", ok, format!("self-orthogonal={ok}"));
    Ok(report)
}
