//! Subspace codes over GF(q): distances, duals, and the self-orthogonal and
//! LCD constructions from integer matrix families whose pairwise products
//! `M_i M_j^T` vanish mod p.

use std::collections::HashSet;
use std::fmt;

use log::warn;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::designs::divisibility_precheck;
use crate::error::{Error, Result};
use crate::exactmat::{FqMatrix, IntMatrix};
use crate::gf::Field;
use crate::packed::{PackedMatrix, PlaneField};
use crate::par;

/// A subspace of `F_q^n`, stored as its canonical basis (the nonzero rows of
/// the reduced row echelon form). Equal subspaces compare equal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    basis: FqMatrix,
}

impl Subspace {
    /// Wraps a matrix that is already in reduced row echelon form with no zero
    /// rows.
    pub(crate) fn from_canonical(basis: FqMatrix) -> Self {
        Self { basis }
    }

    /// Row space of an arbitrary generator matrix.
    pub fn span_of(generator: &FqMatrix) -> Self {
        generator.row_space()
    }

    pub fn zero(field: &Field, n: usize) -> Self {
        Self {
            basis: FqMatrix::zeros(field, 0, n),
        }
    }

    pub fn full(field: &Field, n: usize) -> Self {
        Self {
            basis: FqMatrix::identity(field, n),
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn field(&self) -> &Field {
        self.basis.field()
    }

    pub fn basis(&self) -> &FqMatrix {
        &self.basis
    }

    fn check_ambient(&self, other: &Self) -> Result<()> {
        if !self.field().same_field(other.field()) {
            return Err(Error::FieldMismatch);
        }
        if self.ambient_dim() != other.ambient_dim() {
            return Err(Error::AmbientMismatch(self.ambient_dim(), other.ambient_dim()));
        }
        Ok(())
    }

    /// dim(U + W).
    pub fn sum_dim(&self, other: &Self) -> Result<usize> {
        self.check_ambient(other)?;
        Ok(self.basis.vstack(&other.basis)?.rank())
    }

    /// dim(U ∩ W) = dim U + dim W - dim(U + W).
    pub fn intersection_dim(&self, other: &Self) -> Result<usize> {
        Ok(self.dim() + other.dim() - self.sum_dim(other)?)
    }

    pub fn sum(&self, other: &Self) -> Result<Self> {
        self.check_ambient(other)?;
        Ok(self.basis.vstack(&other.basis)?.row_space())
    }

    /// Orthogonal complement under the standard bilinear form `Σ x_i y_i`.
    pub fn dual(&self) -> Self {
        let n = self.ambient_dim();
        let field = self.field();
        let k = self.dim();
        let pivots: Vec<usize> = (0..k)
            .map(|i| {
                (0..n)
                    .find(|&j| self.basis.get(i, j) != 0)
                    .expect("canonical basis has no zero rows")
            })
            .collect();
        let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
        let mut data = vec![0u32; free.len() * n];
        for (r, &f) in free.iter().enumerate() {
            data[r * n + f] = 1;
            for (i, &pc) in pivots.iter().enumerate() {
                data[r * n + pc] = field.neg_idx(self.basis.get(i, f));
            }
        }
        let kernel = FqMatrix::new(field, free.len(), n, data).expect("shape is consistent");
        kernel.row_space()
    }

    /// Whether `self ∩ other^⊥ = {0}`, tested as
    /// `rank([G_self; H_other]) = dim self + (n - dim other)` with `H_other`
    /// a basis of the dual of `other`.
    pub fn meets_dual_trivially(&self, other: &Self) -> Result<bool> {
        self.check_ambient(other)?;
        let dual = other.dual();
        let stacked = self.basis.vstack(dual.basis())?;
        Ok(stacked.rank() == self.dim() + dual.dim())
    }

    /// Whether every vector of `self` is orthogonal to every vector of
    /// `other`: `G_self G_other^T = 0`.
    pub fn is_orthogonal_to(&self, other: &Self) -> Result<bool> {
        self.check_ambient(other)?;
        Ok(self.basis.mul_transpose(&other.basis)?.is_zero())
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Subspace(dim {} in F_{}^{})",
            self.dim(),
            self.field().order(),
            self.ambient_dim()
        )
    }
}

/// Subspace distance `dim(U+W) - dim(U∩W)`.
pub fn subspace_distance(u: &Subspace, w: &Subspace) -> Result<usize> {
    let s = u.sum_dim(w)?;
    let i = u.dim() + w.dim() - s;
    Ok(s - i)
}

/// Injection distance `max(dim U, dim W) - dim(U∩W)`.
pub fn injection_distance(u: &Subspace, w: &Subspace) -> Result<usize> {
    let i = u.intersection_dim(w)?;
    Ok(u.dim().max(w.dim()) - i)
}

/// A nonempty set of subspaces of a common ambient space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubspaceCode {
    field: Field,
    ambient_dim: usize,
    members: Vec<Subspace>,
}

impl SubspaceCode {
    /// Builds a code from members; duplicates are dropped, first occurrence
    /// order is kept.
    pub fn new(members: Vec<Subspace>) -> Result<Self> {
        let first = members.first().ok_or(Error::TooFewMembers(0))?;
        let field = first.field().clone();
        let n = first.ambient_dim();
        let mut seen = HashSet::new();
        let mut kept = Vec::with_capacity(members.len());
        for m in members {
            if !m.field().same_field(&field) {
                return Err(Error::FieldMismatch);
            }
            if m.ambient_dim() != n {
                return Err(Error::AmbientMismatch(n, m.ambient_dim()));
            }
            if seen.insert(m.clone()) {
                kept.push(m);
            }
        }
        Ok(Self {
            field,
            ambient_dim: n,
            members: kept,
        })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn members(&self) -> &[Subspace] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Sorted set of member dimensions.
    pub fn dimensions(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.members.iter().map(Subspace::dim).collect();
        d.sort_unstable();
        d.dedup();
        d
    }

    /// Serialises the code: a header line `ambient n, field p^m, members k`,
    /// then each member's canonical basis as a matrix block separated by
    /// blank lines.
    pub fn to_text(&self) -> String {
        let mut s = format!(
            "ambient {}, field {}, members {}\n",
            self.ambient_dim,
            self.field.descriptor(),
            self.members.len()
        );
        for m in &self.members {
            s.push('\n');
            s.push_str(&m.basis().to_text());
        }
        s
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate();
        let (_, header) = lines
            .by_ref()
            .find(|(_, l)| !l.trim().is_empty())
            .ok_or(Error::Parse {
                line: 1,
                msg: "empty code file".into(),
            })?;
        let bad_header = || Error::Parse {
            line: 1,
            msg: "header must be \"ambient n, field p^m, members k\"".into(),
        };
        let mut ambient = None;
        let mut field = None;
        let mut count = None;
        for part in header.split(',') {
            let mut kv = part.split_whitespace();
            match (kv.next(), kv.next()) {
                (Some("ambient"), Some(v)) => ambient = v.parse::<usize>().ok(),
                (Some("field"), Some(v)) => field = Some(Field::parse(v)?),
                (Some("members"), Some(v)) => count = v.parse::<usize>().ok(),
                _ => return Err(bad_header()),
            }
        }
        let (Some(n), Some(field), Some(count)) = (ambient, field, count) else {
            return Err(bad_header());
        };
        let rest: Vec<(usize, &str)> = lines.collect();
        let mut blocks: Vec<String> = Vec::new();
        let mut current = String::new();
        for (_, l) in rest {
            if l.trim().is_empty() {
                if !current.is_empty() {
                    blocks.push(std::mem::take(&mut current));
                }
            } else {
                current.push_str(l);
                current.push('\n');
            }
        }
        if !current.is_empty() {
            blocks.push(current);
        }
        if blocks.len() != count {
            return Err(Error::Parse {
                line: 1,
                msg: format!("header announces {count} members, found {}", blocks.len()),
            });
        }
        let members = blocks
            .iter()
            .map(|b| {
                let m = FqMatrix::parse(&field, b)?;
                if m.cols() != n {
                    return Err(Error::AmbientMismatch(n, m.cols()));
                }
                Ok(m.row_space())
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(members)
    }
}

/// Minimum distance together with a pair of member indices attaining it.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MinDistance {
    pub distance: usize,
    pub pair: (usize, usize),
}

/// Exact minimum subspace distance over all unordered pairs of members.
pub fn min_distance(code: &SubspaceCode) -> Result<MinDistance> {
    let k = code.len();
    if k < 2 {
        return Err(Error::TooFewMembers(k));
    }
    let pairs: Vec<(usize, usize)> = (0..k).flat_map(|i| (i + 1..k).map(move |j| (i, j))).collect();
    let dists = par::try_map_range(pairs.len(), |t| {
        let (i, j) = pairs[t];
        subspace_distance(&code.members[i], &code.members[j])
    })?;
    let (t, &distance) = dists
        .iter()
        .enumerate()
        .min_by_key(|&(t, d)| (*d, t))
        .expect("at least one pair");
    Ok(MinDistance {
        distance,
        pair: pairs[t],
    })
}

/// Self-orthogonality: `G_i G_j^T = 0` for every ordered pair of members,
/// including `i = j`. By bilinearity this holds exactly when the sum of all
/// members is a self-orthogonal space, which is what gets checked.
pub fn is_self_orthogonal(code: &SubspaceCode) -> bool {
    let mut stacked = FqMatrix::zeros(code.field(), 0, code.ambient_dim());
    for m in code.members() {
        stacked = stacked.vstack(m.basis()).expect("members share field and ambient");
    }
    let span = stacked.row_space();
    span.basis()
        .mul_transpose(span.basis())
        .expect("same field")
        .is_zero()
}

/// Pairwise form of [`is_self_orthogonal`], evaluating every `G_i G_j^T`.
pub fn is_self_orthogonal_pairwise(code: &SubspaceCode) -> bool {
    let k = code.len();
    par::find_first(k, |i| {
        (i..k)
            .any(|j| !code.members[i].is_orthogonal_to(&code.members[j]).expect("same ambient"))
            .then_some(())
    })
    .is_none()
}

/// LCD check: `C_i ∩ C_j^⊥ = {0}` for every ordered pair of members.
///
/// Both orders of a pair hold only if the two members have equal dimension
/// `k`; then the condition is that the `k x k` matrix `G_i G_j^T` is
/// nonsingular, which covers `(i, j)` and `(j, i)` at once.
pub fn is_lcd(code: &SubspaceCode) -> bool {
    lcd_violation(code).is_none()
}

/// First ordered pair `(i, j)` with `C_i ∩ C_j^⊥ ≠ {0}`, if any.
pub fn lcd_violation(code: &SubspaceCode) -> Option<(usize, usize)> {
    if let Some(pf) = PlaneField::new(code.field()) {
        return lcd_violation_packed(code, &pf);
    }
    let k = code.len();
    par::find_first(k, |i| {
        let gi = code.members[i].basis();
        (i..k).find_map(|j| {
            let gj = code.members[j].basis();
            if gi.rows() != gj.rows() {
                // the larger one meets the dual of the smaller one
                return Some(if gi.rows() > gj.rows() { (i, j) } else { (j, i) });
            }
            let gram = gi.mul_transpose(gj).expect("same field");
            (gram.rank() != gi.rows()).then_some((i, j))
        })
    })
}

fn lcd_violation_packed(code: &SubspaceCode, pf: &PlaneField) -> Option<(usize, usize)> {
    let k = code.len();
    let packed: Vec<PackedMatrix> = par::map_range(k, |i| PackedMatrix::from_fq(pf, code.members[i].basis()));
    // pairs are visited as (i, j) with i <= j, grouped by j so that one
    // table of G_j^T serves the whole column
    par::find_first(k, |j| {
        let dj = code.members[j].dim();
        let table = PackedMatrix::transpose_table(pf, code.members[j].basis());
        (0..=j).find_map(|i| {
            let di = code.members[i].dim();
            if di != dj {
                return Some(if di > dj { (i, j) } else { (j, i) });
            }
            (packed[i].mul_table(pf, &table).rank(pf) != di).then_some((i, j))
        })
    })
}

/// How the span of a family is enumerated.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpanMode {
    /// Every projective representative (first nonzero coefficient 1).
    Exhaustive,
    /// Uniformly random nonzero coefficient vectors; not a complete check.
    Sampled { samples: usize, seed: u64 },
}

/// Cap on the number of projective representatives enumerated exhaustively.
pub const EXHAUSTIVE_CAP: u128 = 1_000_000;

/// Outcome of a span-based code construction.
#[derive(Clone, Debug)]
pub struct CodeBuild {
    pub code: SubspaceCode,
    /// Coefficient vectors examined.
    pub representatives: usize,
    /// Nonzero coefficient vectors whose combination vanished mod p.
    pub skipped_zero: usize,
}

/// Number of projective points of `F_q^m`: `(q^m - 1)/(q - 1)`.
pub fn projective_count(q: u32, m: usize) -> u128 {
    let q = q as u128;
    let mut total: u128 = 0;
    let mut pow: u128 = 1;
    for _ in 0..m {
        total = total.saturating_add(pow);
        pow = pow.saturating_mul(q);
    }
    total
}

/// Coefficient vectors whose first nonzero entry is 1, in a fixed order:
/// by position of the leading 1, then lexicographically on the tail.
fn projective_reps(q: u32, m: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for lead in 0..m {
        let tail = m - lead - 1;
        let count = (q as u64).pow(tail as u32);
        for t in 0..count {
            let mut v = vec![0u32; m];
            v[lead] = 1;
            let mut x = t;
            for slot in v.iter_mut().skip(lead + 1) {
                *slot = (x % q as u64) as u32;
                x /= q as u64;
            }
            out.push(v);
        }
    }
    out
}

fn sampled_reps(field: &Field, m: usize, samples: usize, seed: u64) -> Vec<Vec<u32>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let q = field.order();
    let mut out = Vec::with_capacity(samples);
    while out.len() < samples {
        let mut v: Vec<u32> = (0..m).map(|_| rng.gen_range(0..q)).collect();
        let Some(lead) = v.iter().position(|&c| c != 0) else {
            continue;
        };
        let inv = field.inv_idx(v[lead]);
        for c in &mut v {
            *c = field.mul_idx(*c, inv);
        }
        out.push(v);
    }
    out
}

fn check_family(family: &[IntMatrix]) -> Result<usize> {
    let first = family.first().ok_or(Error::EmptyFamily)?;
    let n = first.rows();
    for m in family {
        if !m.is_square() {
            return Err(Error::NotSquare {
                rows: m.rows(),
                cols: m.cols(),
            });
        }
        if m.rows() != n {
            return Err(Error::Shape(format!(
                "family orders differ ({n} vs {})",
                m.rows()
            )));
        }
    }
    Ok(n)
}

/// Nonzero elements of the F_q-span of the family reduced mod p, one per
/// projective representative (scalar multiples share a row space).
fn span_elements(
    family: &[IntMatrix],
    field: &Field,
    mode: SpanMode,
) -> Result<(Vec<FqMatrix>, usize, usize)> {
    let n = check_family(family)?;
    let p = field.characteristic();
    if let Err(w) = divisibility_precheck(family, p).into_result() {
        return Err(Error::PrecheckFailed {
            i: w.i,
            j: w.j,
            row: w.row,
            col: w.col,
            value: w.value,
            p,
        });
    }
    let reduced: Vec<FqMatrix> = family.iter().map(|m| m.reduce_mod(field)).collect();
    let reps = match mode {
        SpanMode::Exhaustive => {
            let count = projective_count(field.order(), family.len());
            if count > EXHAUSTIVE_CAP {
                return Err(Error::SpanTooLarge {
                    count,
                    cap: EXHAUSTIVE_CAP,
                });
            }
            projective_reps(field.order(), family.len())
        }
        SpanMode::Sampled { samples, seed } => sampled_reps(field, family.len(), samples, seed),
    };
    let elems = par::map_range(reps.len(), |t| {
        let mut x = FqMatrix::zeros(field, n, n);
        for (c, m) in reps[t].iter().zip(&reduced) {
            x.add_scaled_assign(*c, m).expect("same shape and field");
        }
        (!x.is_zero()).then_some(x)
    });
    let total = elems.len();
    let nonzero: Vec<FqMatrix> = elems.into_iter().flatten().collect();
    let skipped = total - nonzero.len();
    if skipped > 0 {
        warn!("{skipped} span element(s) vanish mod {p} and were skipped");
    }
    if nonzero.is_empty() {
        return Err(Error::DegenerateSpan);
    }
    Ok((nonzero, total, skipped))
}

/// Self-orthogonal code: row spaces of the nonzero span elements.
pub fn build_so_code(family: &[IntMatrix], field: &Field) -> Result<CodeBuild> {
    build_so_code_with(family, field, SpanMode::Exhaustive)
}

pub fn build_so_code_with(family: &[IntMatrix], field: &Field, mode: SpanMode) -> Result<CodeBuild> {
    let (elems, representatives, skipped_zero) = span_elements(family, field, mode)?;
    let members = par::map_range(elems.len(), |t| elems[t].row_space());
    Ok(CodeBuild {
        code: SubspaceCode::new(members)?,
        representatives,
        skipped_zero,
    })
}

/// LCD code: row spaces of `[X | αI]` for every nonzero span element `X` and
/// every nonzero `α`.
pub fn build_lcd_code(family: &[IntMatrix], field: &Field) -> Result<CodeBuild> {
    build_lcd_code_with(family, field, SpanMode::Exhaustive)
}

pub fn build_lcd_code_with(
    family: &[IntMatrix],
    field: &Field,
    mode: SpanMode,
) -> Result<CodeBuild> {
    let (elems, representatives, skipped_zero) = span_elements(family, field, mode)?;
    let n = elems[0].rows();
    let alphas: Vec<u32> = (1..field.order()).collect();
    let members = par::map_range(elems.len() * alphas.len(), |t| {
        let x = &elems[t / alphas.len()];
        let a = FqMatrix::scalar_identity(field, n, alphas[t % alphas.len()]);
        x.hstack(&a).expect("same rows").row_space()
    });
    Ok(CodeBuild {
        code: SubspaceCode::new(members)?,
        representatives,
        skipped_zero,
    })
}
