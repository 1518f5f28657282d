use std::path::Path;

use anyhow::{anyhow, Result};
use subcodes::partitions::{orbit_partition, parse_permutations, quotient, verify_equitable, EquitablePartition};
use subcodes::{IntMatrix, Report, Verdict};

use crate::manifest::{read_matrix, read_text, write_text};

pub fn read_partition(path: &Path) -> Result<EquitablePartition> {
    EquitablePartition::parse(&read_text(path)?).map_err(|e| anyhow!("{}: {e}", path.display()))
}

fn equitable(report: &mut Report, m: &IntMatrix, part: &EquitablePartition) -> Result<bool> {
    let ok = match verify_equitable(m, part)? {
        Verdict::Pass => {
            report.check(
                "partition.equitable",
                true,
                format!("{} cells over {} points", part.num_cells(), part.n()),
            );
            true
        }
        Verdict::Fail(w) => {
            report.check(
                "partition.equitable",
                false,
                format!(
                    "block ({},{}) has non-constant row sums at row {}",
                    w.cell_row, w.cell_col, w.row
                ),
            );
            false
        }
    };
    Ok(ok)
}

pub fn verify(matrix: &Path, partition: &Path) -> Result<Report> {
    let m = read_matrix(matrix)?;
    let part = read_partition(partition)?;
    let mut report = Report::new();
    equitable(&mut report, &m, &part)?;
    Ok(report)
}

pub fn run_quotient(matrix: &Path, partition: &Path, out: &Path) -> Result<Report> {
    let m = read_matrix(matrix)?;
    let part = read_partition(partition)?;
    let mut report = Report::new();
    if !equitable(&mut report, &m, &part)? {
        return Ok(report);
    }
    let b = quotient(&m, &part)?.matrix;
    write_text(out, &b.to_text())?;
    report.check(
        "partition.quotient",
        true,
        format!("{}x{} written={}", b.rows(), b.cols(), out.display()),
    );
    Ok(report)
}

pub fn orbits(perms: &Path, points: usize, out: Option<&Path>, matrix: Option<&Path>) -> Result<Report> {
    let gens = parse_permutations(&read_text(perms)?).map_err(|e| anyhow!("{}: {e}", perms.display()))?;
    let part = orbit_partition(points, &gens)?;
    let mut report = Report::new();
    let sizes: Vec<String> = part.cell_sizes().iter().map(usize::to_string).collect();
    let mut detail = format!("{} orbits, sizes {}", part.num_cells(), sizes.join(" "));
    if let Some(out) = out {
        write_text(out, &part.to_text())?;
        detail.push_str(&format!(" written={}", out.display()));
    }
    report.check("partition.orbits", true, detail);
    if let Some(path) = matrix {
        equitable(&mut report, &read_matrix(path)?, &part)?;
    }
    Ok(report)
}
