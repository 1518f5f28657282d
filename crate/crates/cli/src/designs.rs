use std::path::Path;

use anyhow::{bail, Result};
use subcodes::designs::{
    divisibility_precheck, is_sgdd, is_symmetric_design, is_weighing, verify_linked_system, verify_mquwm,
    verify_orthogonal_design, LinkedWitness, QuasiUnbiasedWitness, SgddParams, SymbolicODMatrix, WeighingParams,
};
use subcodes::{IntMatrix, Report, Verdict};

use crate::family::load_linked;
use crate::manifest::{parse_list, Manifest};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum DesignKind {
    Weighing,
    QuasiUnbiased,
    Symmetric,
    Sgdd,
    Orthogonal,
    Linked,
}

pub fn verify(kind: DesignKind, dir: &Path) -> Result<Report> {
    let m = Manifest::load(dir)?;
    let mut report = Report::new();
    let family = match kind {
        DesignKind::Linked => linked(&m, &mut report)?,
        _ => {
            m.expect_kind(&["matrix-family"])?;
            let names: Vec<String> = m.get("members")?.split_whitespace().map(stem).collect();
            let mats = m.matrices("members")?;
            per_kind(kind, &m, &names, &mats, &mut report)?;
            mats
        }
    };
    if let Some(p) = m.parse_opt::<u32>("p")? {
        if kind != DesignKind::Orthogonal {
            precheck(&mut report, &family, p);
        }
    }
    Ok(report)
}

fn stem(file: &str) -> String {
    Path::new(file)
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| file.to_string())
}

fn per_kind(kind: DesignKind, m: &Manifest, names: &[String], mats: &[IntMatrix], report: &mut Report) -> Result<()> {
    match kind {
        DesignKind::Weighing => {
            let k: i64 = m.parse("k")?;
            for (name, w) in names.iter().zip(mats) {
                let ok = is_weighing(w, k)?;
                report.check(format!("designs.weighing.{name}"), ok, format!("order={} k={k}", w.rows()));
            }
        }
        DesignKind::QuasiUnbiased => {
            let params = WeighingParams::new(m.parse("n")?, m.parse("k")?, m.parse("l")?, m.parse("a")?)?;
            let label = format!("({},{},{},{})", params.n, params.k, params.l, params.a);
            match verify_mquwm(mats, &params)? {
                Verdict::Pass => report.check(
                    "designs.quasi_unbiased",
                    true,
                    format!("{} matrices mutually quasi-unbiased {label}", mats.len()),
                ),
                Verdict::Fail((i, j, w)) => {
                    let why = match w {
                        QuasiUnbiasedWitness::NotDivisible { row, col, value } => {
                            format!("entry ({row},{col}) = {value} not divisible by sqrt(a)")
                        }
                        QuasiUnbiasedWitness::QuotientNotWeighing => "quotient is not a weighing matrix".to_string(),
                    };
                    report.check(
                        "designs.quasi_unbiased",
                        false,
                        format!("{} vs {} {label}: {why}", names[i], names[j]),
                    );
                }
            }
        }
        DesignKind::Symmetric => {
            let (v, k, lambda): (usize, i64, i64) = (m.parse("v")?, m.parse("k")?, m.parse("lambda")?);
            for (name, a) in names.iter().zip(mats) {
                let ok = is_symmetric_design(a, v, k, lambda)?;
                report.check(format!("designs.symmetric.{name}"), ok, format!("({v},{k},{lambda})"));
            }
        }
        DesignKind::Sgdd => {
            let p = SgddParams::new(
                m.parse("v")?,
                m.parse("k")?,
                m.parse("m")?,
                m.parse("n")?,
                m.parse("lambda1")?,
                m.parse("lambda2")?,
            )?;
            for (name, a) in names.iter().zip(mats) {
                let ok = is_sgdd(a, &p)?;
                report.check(
                    format!("designs.sgdd.{name}"),
                    ok,
                    format!("({},{},{},{},{},{})", p.v, p.k, p.m, p.n, p.lambda1, p.lambda2),
                );
            }
        }
        DesignKind::Orthogonal => {
            let design_type: Vec<u32> = parse_list(m.get("type")?)?;
            for (name, a) in names.iter().zip(mats) {
                if !a.is_square() {
                    bail!("{name}: orthogonal design matrix must be square");
                }
                let entries = a
                    .data()
                    .iter()
                    .map(|&x| i32::try_from(x))
                    .collect::<std::result::Result<Vec<_>, _>>()?;
                let od = SymbolicODMatrix::new(a.rows(), entries, design_type.clone())?;
                let (ok, detail) = match verify_orthogonal_design(&od) {
                    Verdict::Pass => (true, format!("OD({}; {:?})", a.rows(), design_type)),
                    Verdict::Fail(w) => (
                        false,
                        format!(
                            "row {} col {}: coefficient of x{}x{} is {}, expected {}",
                            w.row, w.col, w.term.0, w.term.1, w.coefficient, w.expected
                        ),
                    ),
                };
                report.check(format!("designs.orthogonal.{name}"), ok, detail);
            }
        }
        DesignKind::Linked => unreachable!(),
    }
    Ok(())
}

fn linked(m: &Manifest, report: &mut Report) -> Result<Vec<IntMatrix>> {
    let ls = load_linked(m)?;
    let label = match ls.rho {
        Some(rho) => format!("f={} sigma={} tau={} rho={rho}", ls.f, ls.sigma, ls.tau),
        None => format!("f={} sigma={} tau={}", ls.f, ls.sigma, ls.tau),
    };
    match verify_linked_system(&ls)? {
        Verdict::Pass => report.check("designs.linked", true, label),
        Verdict::Fail(w) => {
            let why = match w {
                LinkedWitness::Transpose { i, j } => format!("A_{i}_{j}^T != A_{j}_{i}"),
                LinkedWitness::Pair { i, j } => format!("A_{i}_{j} A_{j}_{i} is not the design Gram matrix"),
                LinkedWitness::Triple { i, j, s } => format!("A_{i}_{j} A_{j}_{s} does not match sigma/tau"),
            };
            report.check("designs.linked", false, format!("{label}: {why}"));
        }
    }
    Ok(ls.first_row_family()?)
}

fn precheck(report: &mut Report, family: &[IntMatrix], p: u32) {
    match divisibility_precheck(family, p) {
        Verdict::Pass => report.check(format!("designs.precheck.p{p}"), true, "all products divisible"),
        Verdict::Fail(w) => report.check(
            format!("designs.precheck.p{p}"),
            false,
            format!("M{} M{}^T has {} at ({},{})", w.i, w.j, w.value, w.row, w.col),
        ),
    }
}
