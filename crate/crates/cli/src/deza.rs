use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use subcodes::deza::{build_family, verify_deza, verify_suite, DezaParams};
use subcodes::partitions::EquitablePartition;
use subcodes::{Field, Report};

use crate::manifest::{read_matrix, write_text, Manifest};

pub const PARTITION_FILE: &str = "blocks.part";

fn member_file(alpha: usize) -> String {
    format!("N_{alpha}.mat")
}

pub fn build(field: &Field, out: &Path) -> Result<Report> {
    let family = build_family(field)?;
    fs::create_dir_all(out).with_context(|| format!("creating {}", out.display()))?;
    let q = family.q();
    let expected = DezaParams::expected(q);
    let mut report = Report::new();
    let mut names = Vec::new();
    for (alpha, m) in family.members().iter().enumerate() {
        let name = member_file(alpha);
        write_text(&out.join(&name), &m.to_text())?;
        let got = verify_deza(m)?;
        report.check(format!("build.params.N_{alpha}"), got == expected, got.to_string());
        names.push(name);
    }
    let q = q as usize;
    let blocks = EquitablePartition::blocks(2 * q + 3, q * q)?;
    write_text(&out.join(PARTITION_FILE), &blocks.to_text())?;
    let mut manifest = Manifest::new(out, "deza-family");
    manifest.set("field", field.descriptor());
    manifest.set("q", q);
    manifest.set("params", expected);
    manifest.set("members", names.join(" "));
    manifest.set("partition", PARTITION_FILE);
    manifest.save()?;
    report.check(
        "build.files",
        true,
        format!("wrote {} members, {PARTITION_FILE} and manifest", names.len()),
    );
    Ok(report)
}

pub fn verify(field: &Field, input: Option<&Path>) -> Result<Report> {
    let mut report = verify_suite(field)?;
    let Some(dir) = input else {
        return Ok(report);
    };
    let manifest = Manifest::load(dir)?;
    manifest.expect_kind(&["deza-family"])?;
    let stored = manifest.field()?;
    if !stored.same_field(field) {
        bail!(
            "{} holds a family over {}, not {}",
            dir.display(),
            stored.descriptor(),
            field.descriptor()
        );
    }
    let family = build_family(field)?;
    let files = manifest.files("members")?;
    report.check(
        "input.member_count",
        files.len() == family.members().len(),
        format!("{} files for {} members", files.len(), family.members().len()),
    );
    for (alpha, (path, built)) in files.iter().zip(family.members()).enumerate() {
        let m = read_matrix(path)?;
        let detail = match verify_deza(&m) {
            Ok(p) => format!("params {p}"),
            Err(e) => e.to_string(),
        };
        report.check(format!("input.N_{alpha}"), m == *built, detail);
    }
    Ok(report)
}
