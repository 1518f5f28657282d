//! Loading matrix families from manifest directories.

use std::path::Path;

use anyhow::{anyhow, bail, Result};
use std::collections::BTreeMap;
use subcodes::designs::{LinkedParams, LinkedSystem, SgddParams};
use subcodes::{Field, IntMatrix};

use crate::manifest::{read_matrix, Manifest};

pub struct LoadedFamily {
    pub matrices: Vec<IntMatrix>,
    pub field: Option<Field>,
}

/// Members of a deza-family or matrix-family, or the first-row family of a
/// linked system.
pub fn load_family(dir: &Path) -> Result<LoadedFamily> {
    let m = Manifest::load(dir)?;
    let matrices = match m.kind() {
        "deza-family" | "matrix-family" => m.matrices("members")?,
        "linked-system" => load_linked(&m)?.first_row_family()?,
        other => bail!("{}: kind {other:?} is not a matrix family", dir.display()),
    };
    let field = match (m.opt("field"), m.parse_opt::<u32>("p")?) {
        (Some(_), _) => Some(m.field()?),
        (None, Some(p)) => Some(Field::prime(p)?),
        (None, None) => None,
    };
    Ok(LoadedFamily { matrices, field })
}

pub fn linked_params(m: &Manifest) -> Result<LinkedParams> {
    let v = m.parse("v")?;
    let k = m.parse("k")?;
    match m.opt("design").unwrap_or("symmetric") {
        "symmetric" => Ok(LinkedParams::Symmetric {
            v,
            k,
            lambda: m.parse("lambda")?,
        }),
        "sgdd" => Ok(LinkedParams::GroupDivisible(SgddParams::new(
            v,
            k,
            m.parse("m")?,
            m.parse("n")?,
            m.parse("lambda1")?,
            m.parse("lambda2")?,
        )?)),
        other => Err(anyhow!("unknown design {other:?} (expected symmetric or sgdd)")),
    }
}

/// Reads `A_i_j.mat` for every ordered pair of distinct indices in `1..=f`.
pub fn load_linked(m: &Manifest) -> Result<LinkedSystem> {
    m.expect_kind(&["linked-system"])?;
    let f: usize = m.parse("f")?;
    if f < 2 {
        bail!("a linked system needs f >= 2");
    }
    let mut matrices = BTreeMap::new();
    for i in 1..=f {
        for j in (1..=f).filter(|&j| j != i) {
            matrices.insert((i, j), read_matrix(&m.dir().join(format!("A_{i}_{j}.mat")))?);
        }
    }
    Ok(LinkedSystem {
        f,
        matrices,
        params: linked_params(m)?,
        sigma: m.parse("sigma")?,
        tau: m.parse("tau")?,
        rho: m.parse_opt("rho")?,
    })
}
