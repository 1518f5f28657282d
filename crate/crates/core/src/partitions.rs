//! Equitable partitions, quotient matrices, orbit partitions and the code
//! constructions that run on quotients.

use crate::codes::{build_lcd_code, build_so_code, CodeBuild};
use crate::designs::{divisibility_precheck, is_sgdd, SgddParams};
use crate::error::{Error, Result};
use crate::exactmat::IntMatrix;
use crate::gf::Field;
use crate::par;
use crate::verdict::Verdict;

/// A partition of `0..n` into nonempty cells. Cells keep their given order;
/// indices inside a cell are sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquitablePartition {
    n: usize,
    cells: Vec<Vec<usize>>,
    cell_of: Vec<usize>,
}

impl EquitablePartition {
    pub fn new(n: usize, cells: Vec<Vec<usize>>) -> Result<Self> {
        let mut cell_of = vec![usize::MAX; n];
        let mut sorted = Vec::with_capacity(cells.len());
        for (c, mut cell) in cells.into_iter().enumerate() {
            if cell.is_empty() {
                return Err(Error::BadPartition(format!("cell {c} is empty")));
            }
            cell.sort_unstable();
            for &i in &cell {
                if i >= n {
                    return Err(Error::BadPartition(format!("index {i} outside 0..{n}")));
                }
                if cell_of[i] != usize::MAX {
                    return Err(Error::BadPartition(format!("index {i} appears twice")));
                }
                cell_of[i] = c;
            }
            sorted.push(cell);
        }
        if let Some(i) = cell_of.iter().position(|&c| c == usize::MAX) {
            return Err(Error::BadPartition(format!("index {i} is not covered")));
        }
        Ok(Self {
            n,
            cells: sorted,
            cell_of,
        })
    }

    pub fn singletons(n: usize) -> Self {
        Self::new(n, (0..n).map(|i| vec![i]).collect()).expect("valid")
    }

    pub fn one_cell(n: usize) -> Result<Self> {
        Self::new(n, vec![(0..n).collect()])
    }

    /// `t` consecutive cells of `size` indices each.
    pub fn blocks(t: usize, size: usize) -> Result<Self> {
        Self::new(t * size, (0..t).map(|c| (c * size..(c + 1) * size).collect()).collect())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn num_cells(&self) -> usize {
        self.cells.len()
    }

    pub fn cells(&self) -> &[Vec<usize>] {
        &self.cells
    }

    pub fn cell_of(&self, i: usize) -> usize {
        self.cell_of[i]
    }

    pub fn cell_sizes(&self) -> Vec<usize> {
        self.cells.iter().map(Vec::len).collect()
    }

    /// The common cell size, if all cells have the same size.
    pub fn uniform_size(&self) -> Option<usize> {
        let s = self.cells[0].len();
        self.cells.iter().all(|c| c.len() == s).then_some(s)
    }

    /// `n x t` characteristic matrix.
    pub fn char_matrix(&self) -> IntMatrix {
        IntMatrix::from_fn(self.n, self.cells.len(), |i, j| (self.cell_of[i] == j) as i64)
    }

    /// One line per cell, space-separated indices.
    pub fn to_text(&self) -> String {
        self.cells
            .iter()
            .map(|c| c.iter().map(usize::to_string).collect::<Vec<_>>().join(" ") + "\n")
            .collect()
    }

    /// Reads the cell-per-line format; blank lines and `#` comments are
    /// ignored, and the ground set is `0..(number of indices)`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut cells = Vec::new();
        for (ln, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let cell = line
                .split_whitespace()
                .map(|t| {
                    t.parse::<usize>().map_err(|_| Error::Parse {
                        line: ln + 1,
                        msg: format!("bad index {t:?}"),
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            cells.push(cell);
        }
        let n = cells.iter().map(Vec::len).sum();
        Self::new(n, cells)
    }
}

/// A block whose row sums are not constant: `row` lies in `cell_row`, and
/// its sum over `cell_col` differs from that of the first row of the cell.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EquitableWitness {
    pub cell_row: usize,
    pub cell_col: usize,
    pub row: usize,
}

fn check_size(m: &IntMatrix, part: &EquitablePartition) -> Result<()> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    if m.rows() != part.n {
        return Err(Error::Shape(format!(
            "matrix order {} but partition of {} points",
            m.rows(),
            part.n
        )));
    }
    Ok(())
}

/// Row `i` summed over each cell.
fn block_row_sums(m: &IntMatrix, part: &EquitablePartition, i: usize) -> Result<Vec<i64>> {
    let mut sums = vec![0i64; part.num_cells()];
    for (j, &v) in m.row(i).iter().enumerate() {
        let s = &mut sums[part.cell_of[j]];
        *s = s.checked_add(v).ok_or(Error::Overflow("block row sum"))?;
    }
    Ok(sums)
}

/// Checks that every block has constant row sums.
pub fn verify_equitable(m: &IntMatrix, part: &EquitablePartition) -> Result<Verdict<EquitableWitness>> {
    check_size(m, part)?;
    let sums = par::try_map_range(part.n, |i| block_row_sums(m, part, i))?;
    for (c, cell) in part.cells.iter().enumerate() {
        let first = &sums[cell[0]];
        for &i in &cell[1..] {
            if let Some(cc) = (0..part.num_cells()).find(|&cc| sums[i][cc] != first[cc]) {
                return Ok(Verdict::Fail(EquitableWitness {
                    cell_row: c,
                    cell_col: cc,
                    row: i,
                }));
            }
        }
    }
    Ok(Verdict::Pass)
}

/// Block row sums of a matrix under an equitable partition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientMatrix {
    pub matrix: IntMatrix,
    pub cell_sizes: Vec<usize>,
}

/// The quotient matrix, cross-checked against `(C^T C)^{-1} C^T M C`.
pub fn quotient(m: &IntMatrix, part: &EquitablePartition) -> Result<QuotientMatrix> {
    if let Verdict::Fail(w) = verify_equitable(m, part)? {
        return Err(Error::NotEquitable {
            cell_row: w.cell_row,
            cell_col: w.cell_col,
            row: w.row,
        });
    }
    let t = part.num_cells();
    let rows = part
        .cells
        .iter()
        .map(|cell| block_row_sums(m, part, cell[0]))
        .collect::<Result<Vec<_>>>()?;
    let q = IntMatrix::from_fn(t, t, |i, j| rows[i][j]);
    // C^T C is diagonal with the cell sizes
    let c = part.char_matrix();
    let ctmc = c.transpose().matmul(m)?.matmul(&c)?;
    for i in 0..t {
        let size = part.cells[i].len() as i64;
        for j in 0..t {
            let v = ctmc.get(i, j);
            if v % size != 0 || v / size != q.get(i, j) {
                return Err(Error::Hypothesis(format!(
                    "quotient formula disagrees with block sums at ({i},{j})"
                )));
            }
        }
    }
    Ok(QuotientMatrix {
        matrix: q,
        cell_sizes: part.cell_sizes(),
    })
}

/// `C C^T M^T = M^T C C^T`. Holds for orbit partitions of automorphism
/// groups; the quotient product identity relies on it.
pub fn commutes_with_cells(m: &IntMatrix, part: &EquitablePartition) -> Result<bool> {
    check_size(m, part)?;
    let n = part.n;
    let cct = IntMatrix::from_fn(n, n, |i, j| (part.cell_of[i] == part.cell_of[j]) as i64);
    let mt = m.transpose();
    Ok(cct.matmul(&mt)? == mt.matmul(&cct)?)
}

fn hypothesis(what: &str, m: &IntMatrix, part: &EquitablePartition) -> Result<()> {
    match verify_equitable(m, part)? {
        Verdict::Pass => Ok(()),
        Verdict::Fail(w) => Err(Error::Hypothesis(format!(
            "partition is not equitable for {what}: row {} in cell {} against cell {}",
            w.row, w.cell_row, w.cell_col
        ))),
    }
}

/// `M'_1 (M'_2)^T` equals the quotient of `M_1 M_2^T`.
///
/// The partition must be equitable for `M_1`, `M_2` and `M_1 M_2^T`; a
/// violation is an [`Error::Hypothesis`], while a false identity is
/// `Ok(false)`.
pub fn quotient_product_identity(m1: &IntMatrix, m2: &IntMatrix, part: &EquitablePartition) -> Result<bool> {
    hypothesis("M_1", m1, part)?;
    hypothesis("M_2", m2, part)?;
    let prod = m1.mul_transpose(m2)?;
    hypothesis("M_1 M_2^T", &prod, part)?;
    let q1 = quotient(m1, part)?.matrix;
    let q2 = quotient(m2, part)?.matrix;
    Ok(q1.mul_transpose(&q2)? == quotient(&prod, part)?.matrix)
}

/// Parses permutations in image notation, one per line.
pub fn parse_permutations(text: &str) -> Result<Vec<Vec<usize>>> {
    let mut out = Vec::new();
    for (ln, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let perm = line
            .split_whitespace()
            .map(|t| {
                t.parse::<usize>().map_err(|_| Error::Parse {
                    line: ln + 1,
                    msg: format!("bad image {t:?}"),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        out.push(perm);
    }
    Ok(out)
}

fn check_permutation(n: usize, perm: &[usize]) -> Result<()> {
    if perm.len() != n {
        return Err(Error::BadPermutation(format!(
            "{} images for {n} points",
            perm.len()
        )));
    }
    let mut seen = vec![false; n];
    for &x in perm {
        if x >= n || std::mem::replace(&mut seen[x], true) {
            return Err(Error::BadPermutation(format!("image {x} out of range or repeated")));
        }
    }
    Ok(())
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Orbits of the group generated by `generators`, ordered by least element.
pub fn orbit_partition(n: usize, generators: &[Vec<usize>]) -> Result<EquitablePartition> {
    for g in generators {
        check_permutation(n, g)?;
    }
    let mut parent: Vec<usize> = (0..n).collect();
    for g in generators {
        for (x, &y) in g.iter().enumerate() {
            let (a, b) = (find(&mut parent, x), find(&mut parent, y));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut cells: Vec<Vec<usize>> = Vec::new();
    let mut slot = vec![usize::MAX; n];
    for x in 0..n {
        let r = find(&mut parent, x);
        if slot[r] == usize::MAX {
            slot[r] = cells.len();
            cells.push(Vec::new());
        }
        cells[slot[r]].push(x);
    }
    EquitablePartition::new(n, cells)
}

/// Orbit-matrix conditions for a symmetric `(v, k, λ)` design under a group
/// whose orbits all have length `ω`: every row sums to `k`, and
/// `Σ_i γ_ij γ_is = λω + δ_js (k - λ)`.
pub fn check_orbit_matrix_conditions(om: &IntMatrix, v: usize, k: i64, lambda: i64, omega: usize) -> Result<bool> {
    if omega == 0 || v % omega != 0 {
        return Err(Error::Shape(format!("orbit length {omega} does not divide {v}")));
    }
    let t = v / omega;
    if om.shape() != (t, t) {
        return Err(Error::Shape(format!(
            "orbit matrix is {}x{}, expected {t}x{t}",
            om.rows(),
            om.cols()
        )));
    }
    if om.row_sums()?.iter().any(|&s| s != k) {
        return Ok(false);
    }
    let gram = om.transpose().matmul(om)?;
    let base = lambda * omega as i64;
    Ok((0..t).all(|j| (0..t).all(|s| gram.get(j, s) == base + if j == s { k - lambda } else { 0 })))
}

/// Quotient of an SGDD incidence matrix under its canonical partition into
/// consecutive groups of `n`.
pub fn sgdd_canonical_quotient(a: &IntMatrix, params: &SgddParams) -> Result<IntMatrix> {
    if !is_sgdd(a, params)? {
        return Err(Error::Design("not a symmetric group divisible design".into()));
    }
    Ok(quotient(a, &EquitablePartition::blocks(params.m, params.n)?)?.matrix)
}

/// `R R^T = (k^2 - λ2 v) I_m + λ2 n J_m` for the canonical quotient `R`.
pub fn sgdd_quotient_identity(a: &IntMatrix, params: &SgddParams) -> Result<bool> {
    let r = sgdd_canonical_quotient(a, params)?;
    let m = params.m;
    let diag = params.k * params.k - params.lambda2 * params.v as i64;
    let off = params.lambda2 * params.n as i64;
    let rhs = IntMatrix::from_fn(m, m, |i, j| off + if i == j { diag } else { 0 });
    Ok(r.mul_transpose(&r)? == rhs)
}

/// Checks the quotient-construction hypotheses and returns the quotients.
pub fn quotient_family(family: &[IntMatrix], part: &EquitablePartition, p: u32) -> Result<Vec<IntMatrix>> {
    if family.is_empty() {
        return Err(Error::EmptyFamily);
    }
    if part.uniform_size().is_none() {
        return Err(Error::Hypothesis(format!(
            "cells must have equal size, got {:?}",
            part.cell_sizes()
        )));
    }
    if let Verdict::Fail(w) = divisibility_precheck(family, p) {
        return Err(Error::PrecheckFailed {
            i: w.i,
            j: w.j,
            row: w.row,
            col: w.col,
            value: w.value,
            p,
        });
    }
    family
        .iter()
        .enumerate()
        .map(|(i, m)| {
            if !commutes_with_cells(m, part)? {
                return Err(Error::Hypothesis(format!(
                    "C C^T does not commute with M_{i}^T"
                )));
            }
            hypothesis(&format!("M_{i}"), m, part)?;
            Ok(quotient(m, part)?.matrix)
        })
        .collect()
}

/// Self-orthogonal code from the span of the quotient matrices.
pub fn build_so_code_quotient(family: &[IntMatrix], part: &EquitablePartition, field: &Field) -> Result<CodeBuild> {
    build_so_code(&quotient_family(family, part, field.characteristic())?, field)
}

/// LCD code from the span of the quotient matrices.
pub fn build_lcd_code_quotient(family: &[IntMatrix], part: &EquitablePartition, field: &Field) -> Result<CodeBuild> {
    build_lcd_code(&quotient_family(family, part, field.characteristic())?, field)
}
