//! Association schemes from adjacency matrices, their intersection numbers,
//! and the Bose-Mesner span codes.

use crate::codes::{build_so_code, CodeBuild};
use crate::error::{Error, Result};
use crate::exactmat::IntMatrix;
use crate::gf::Field;
use crate::par;
use crate::partitions::{build_so_code_quotient, EquitablePartition};
use crate::verdict::Verdict;

/// A verified association scheme with `d` classes on `n` points.
#[derive(Clone, Debug)]
pub struct AssociationScheme {
    n: usize,
    adjacencies: Vec<IntMatrix>,
    /// `p[(i*(d+1) + j)*(d+1) + k] = p_{ij}^k`.
    p: Vec<i64>,
    transpose: Vec<usize>,
    commutative: bool,
    symmetric: bool,
}

fn axiom(axiom: u8, detail: impl Into<String>) -> Error {
    Error::SchemeAxiom {
        axiom,
        detail: detail.into(),
    }
}

/// Verifies the axioms and computes the intersection numbers:
/// 1. `A_0 = I`; 2. the `A_i` are nonzero (0,1)-matrices summing to `J`;
/// 3. each `A_i^T` is some `A_{i'}`; 4. every `A_i A_j` is constant on the
/// support of each `A_k`. Commutativity is recorded, not required.
pub fn verify_scheme(adjacencies: &[IntMatrix]) -> Result<AssociationScheme> {
    let first = adjacencies.first().ok_or(Error::EmptyFamily)?;
    let n = first.rows();
    for (i, a) in adjacencies.iter().enumerate() {
        if a.shape() != (n, n) {
            return Err(Error::Shape(format!("A_{i} is {}x{}, expected {n}x{n}", a.rows(), a.cols())));
        }
        if !a.is_binary() {
            return Err(axiom(2, format!("A_{i} is not a (0,1)-matrix")));
        }
        if a.is_zero() {
            return Err(axiom(2, format!("A_{i} is zero")));
        }
    }
    if *first != IntMatrix::identity(n) {
        return Err(axiom(1, "A_0 is not the identity"));
    }
    let mut relation = vec![usize::MAX; n * n];
    for (i, a) in adjacencies.iter().enumerate() {
        for (slot, &v) in relation.iter_mut().zip(a.data()) {
            if v == 1 {
                if *slot != usize::MAX {
                    return Err(axiom(2, format!("A_{} and A_{i} overlap", *slot)));
                }
                *slot = i;
            }
        }
    }
    if let Some(e) = relation.iter().position(|&r| r == usize::MAX) {
        return Err(axiom(2, format!("pair ({},{}) is in no relation", e / n, e % n)));
    }
    let transpose = adjacencies
        .iter()
        .enumerate()
        .map(|(i, a)| {
            let t = a.transpose();
            adjacencies
                .iter()
                .position(|b| *b == t)
                .ok_or_else(|| axiom(3, format!("A_{i}^T is not a relation")))
        })
        .collect::<Result<Vec<_>>>()?;

    let r = adjacencies.len();
    let p = par::try_map_range(r * r, |ij| {
        let (i, j) = (ij / r, ij % r);
        let prod = adjacencies[i].matmul(&adjacencies[j])?;
        let mut row: Vec<Option<i64>> = vec![None; r];
        for (e, &v) in prod.data().iter().enumerate() {
            let k = relation[e];
            match row[k] {
                None => row[k] = Some(v),
                Some(w) if w != v => {
                    return Err(axiom(
                        4,
                        format!("A_{i} A_{j} is not constant on A_{k}: {w} and {v}"),
                    ))
                }
                _ => {}
            }
        }
        Ok(row.into_iter().map(|v| v.expect("relations are nonzero")).collect::<Vec<_>>())
    })?
    .concat();

    let commutative = (0..r).all(|i| (0..r).all(|j| (0..r).all(|k| p[(i * r + j) * r + k] == p[(j * r + i) * r + k])));
    let symmetric = transpose.iter().enumerate().all(|(i, &t)| i == t);
    Ok(AssociationScheme {
        n,
        adjacencies: adjacencies.to_vec(),
        p,
        transpose,
        commutative,
        symmetric,
    })
}

impl AssociationScheme {
    pub fn points(&self) -> usize {
        self.n
    }

    pub fn classes(&self) -> usize {
        self.adjacencies.len() - 1
    }

    pub fn adjacencies(&self) -> &[IntMatrix] {
        &self.adjacencies
    }

    /// `p_{ij}^k`.
    pub fn intersection(&self, i: usize, j: usize, k: usize) -> i64 {
        let r = self.adjacencies.len();
        self.p[(i * r + j) * r + k]
    }

    /// `i'` with `A_i^T = A_{i'}`.
    pub fn transpose_index(&self, i: usize) -> usize {
        self.transpose[i]
    }

    pub fn valency(&self, i: usize) -> i64 {
        self.intersection(i, self.transpose[i], 0)
    }

    pub fn is_commutative(&self) -> bool {
        self.commutative
    }

    pub fn is_symmetric(&self) -> bool {
        self.symmetric
    }

    fn check_index_set(&self, set: &[usize]) -> Result<()> {
        match set.iter().find(|&&i| i > self.classes()) {
            Some(i) => Err(Error::BadIndexSet(format!("class {i} exceeds d = {}", self.classes()))),
            None => Ok(()),
        }
    }
}

/// `p_{x,y'}^k` not divisible by the prime.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GateWitness {
    pub x: usize,
    pub y: usize,
    pub k: usize,
    pub value: i64,
}

/// Whether `p` divides `p_{x,y'}^k` for all `x, y` in the index set and all
/// `k`: the condition for the span of `{A_i : i ∈ I}` to give a
/// self-orthogonal code over characteristic `p`.
pub fn corollary_gate(scheme: &AssociationScheme, set: &[usize], p: u32) -> Result<Verdict<GateWitness>> {
    scheme.check_index_set(set)?;
    for &x in set {
        for &y in set {
            let yt = scheme.transpose_index(y);
            for k in 0..=scheme.classes() {
                let value = scheme.intersection(x, yt, k);
                if value % p as i64 != 0 {
                    return Ok(Verdict::Fail(GateWitness { x, y, k, value }));
                }
            }
        }
    }
    Ok(Verdict::Pass)
}

/// Self-orthogonal code from the span of `{A_i : i ∈ I}`, or of their
/// quotients when a partition is given.
pub fn bose_mesner_code(
    scheme: &AssociationScheme,
    set: &[usize],
    field: &Field,
    partition: Option<&EquitablePartition>,
) -> Result<CodeBuild> {
    if set.is_empty() {
        return Err(Error::EmptyFamily);
    }
    let p = field.characteristic();
    if let Verdict::Fail(w) = corollary_gate(scheme, set, p)? {
        return Err(Error::Hypothesis(format!(
            "gate fails: p_{{{},{}'}}^{} = {} is not divisible by {p}",
            w.x, w.y, w.k, w.value
        )));
    }
    let family: Vec<IntMatrix> = set.iter().map(|&i| scheme.adjacencies[i].clone()).collect();
    match partition {
        None => build_so_code(&family, field),
        Some(part) => build_so_code_quotient(&family, part, field),
    }
}
