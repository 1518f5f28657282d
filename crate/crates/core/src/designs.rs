//! Verifiers for the matrix families that feed the span constructions:
//! weighing matrices and their quasi-unbiased sets, orthogonal designs,
//! symmetric designs, symmetric group divisible designs, linked systems,
//! and the divisibility precheck on `M_i M_j^T`.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::exactmat::IntMatrix;
use crate::par;
use crate::verdict::Verdict;

/// Entry of some `M_i M_j^T` not divisible by the prime.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrecheckWitness {
    pub i: usize,
    pub j: usize,
    pub row: usize,
    pub col: usize,
    pub value: i64,
}

/// Checks that `p` divides every entry of `M_i M_j^T` for all ordered pairs,
/// `i = j` included. Pairs are scanned with `i <= j` since
/// `M_j M_i^T = (M_i M_j^T)^T`; the first failure in that order is returned.
pub fn divisibility_precheck(family: &[IntMatrix], p: u32) -> Verdict<PrecheckWitness> {
    let m = family.len();
    let pairs: Vec<(usize, usize)> = (0..m).flat_map(|i| (i..m).map(move |j| (i, j))).collect();
    par::find_first(pairs.len(), |t| {
        let (i, j) = pairs[t];
        let prod = match family[i].mul_transpose(&family[j]) {
            Ok(prod) => prod,
            // shape mismatch or overflow: report the pair with a zero entry
            Err(_) => {
                return Some(PrecheckWitness {
                    i,
                    j,
                    row: 0,
                    col: 0,
                    value: 0,
                })
            }
        };
        prod.first_not_divisible(p as i64)
            .map(|(row, col, value)| PrecheckWitness { i, j, row, col, value })
    })
    .into()
}

fn check_square(w: &IntMatrix) -> Result<usize> {
    if !w.is_square() {
        return Err(Error::NotSquare {
            rows: w.rows(),
            cols: w.cols(),
        });
    }
    Ok(w.rows())
}

fn scaled_identity_plus_j(n: usize, diag: i64, off: i64) -> IntMatrix {
    IntMatrix::from_fn(n, n, |i, j| if i == j { diag + off } else { off })
}

/// `W W^T = kI` for a (0, ±1)-matrix `W`.
pub fn is_weighing(w: &IntMatrix, k: i64) -> Result<bool> {
    let n = check_square(w)?;
    if let Some(v) = w.data().iter().find(|v| !(-1..=1).contains(*v)) {
        return Err(Error::Design(format!("weighing matrix entry {v} outside {{-1,0,1}}")));
    }
    Ok(w.mul_transpose(w)? == scaled_identity_plus_j(n, k, 0))
}

/// Parameters `(n, k, l, a)` of quasi-unbiased weighing matrices.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WeighingParams {
    pub n: usize,
    pub k: i64,
    pub l: i64,
    pub a: i64,
}

impl WeighingParams {
    /// Validates `l = k^2 / a` exactly and that `a` is a perfect square.
    pub fn new(n: usize, k: i64, l: i64, a: i64) -> Result<Self> {
        if a <= 0 || l <= 0 || k <= 0 {
            return Err(Error::Design("k, l and a must be positive".into()));
        }
        if k * k != l * a {
            return Err(Error::Design(format!("l = {l} is not k^2/a = {k}^2/{a}")));
        }
        let params = Self { n, k, l, a };
        params.sqrt_a()?;
        Ok(params)
    }

    pub fn sqrt_a(&self) -> Result<i64> {
        integer_sqrt(self.a)
            .filter(|r| r * r == self.a)
            .ok_or_else(|| Error::Design(format!("sqrt(a) is not an integer for a = {}", self.a)))
    }
}

pub fn integer_sqrt(v: i64) -> Option<i64> {
    if v < 0 {
        return None;
    }
    let mut r = (v as f64).sqrt() as i64;
    while r * r > v {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= v {
        r += 1;
    }
    Some(r)
}

/// Why a pair of weighing matrices is not quasi-unbiased.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QuasiUnbiasedWitness {
    /// Entry of `W1 W2^T` not divisible by `sqrt(a)`.
    NotDivisible { row: usize, col: usize, value: i64 },
    /// `W1 W2^T / sqrt(a)` is not a weighing matrix of weight `l`.
    QuotientNotWeighing,
}

/// Checks `W1 W2^T = sqrt(a) W` with `W` a weighing matrix of weight `l`.
pub fn are_quasi_unbiased(
    w1: &IntMatrix,
    w2: &IntMatrix,
    params: &WeighingParams,
) -> Result<Verdict<QuasiUnbiasedWitness>> {
    let root = params.sqrt_a()?;
    for w in [w1, w2] {
        if check_square(w)? != params.n || !is_weighing(w, params.k)? {
            return Err(Error::Design(format!(
                "input is not a weighing matrix of order {} and weight {}",
                params.n, params.k
            )));
        }
    }
    let prod = w1.mul_transpose(w2)?;
    if let Some((row, col, value)) = prod.first_not_divisible(root) {
        return Ok(Verdict::Fail(QuasiUnbiasedWitness::NotDivisible { row, col, value }));
    }
    let quotient = IntMatrix::new(
        prod.rows(),
        prod.cols(),
        prod.data().iter().map(|v| v / root).collect(),
    )?;
    let ok = quotient.data().iter().all(|v| (-1..=1).contains(v)) && is_weighing(&quotient, params.l)?;
    Ok(if ok {
        Verdict::Pass
    } else {
        Verdict::Fail(QuasiUnbiasedWitness::QuotientNotWeighing)
    })
}

/// Every unordered pair of the set is quasi-unbiased.
pub fn verify_mquwm(
    set: &[IntMatrix],
    params: &WeighingParams,
) -> Result<Verdict<(usize, usize, QuasiUnbiasedWitness)>> {
    if set.len() < 2 {
        return Err(Error::TooFewMembers(set.len()));
    }
    for i in 0..set.len() {
        for j in i + 1..set.len() {
            if let Verdict::Fail(w) = are_quasi_unbiased(&set[i], &set[j], params)? {
                return Ok(Verdict::Fail((i, j, w)));
            }
        }
    }
    Ok(Verdict::Pass)
}

/// Sylvester Hadamard matrix of order `2^k`.
pub fn sylvester_hadamard(k: u32) -> IntMatrix {
    let h2 = IntMatrix::from_rows(&[vec![1, 1], vec![1, -1]]).expect("2x2");
    (0..k).fold(IntMatrix::identity(1), |acc, _| {
        acc.kron(&h2).expect("entries are +-1")
    })
}

/// All 768 Hadamard matrices of order 4, by exhaustive search over the
/// 2^16 sign matrices.
pub fn hadamard_matrices_order4() -> Vec<IntMatrix> {
    (0u32..1 << 16)
        .filter_map(|bits| {
            let m = IntMatrix::new(
                4,
                4,
                (0..16).map(|b| if bits >> b & 1 == 1 { -1 } else { 1 }).collect(),
            )
            .expect("4x4");
            is_weighing(&m, 4).unwrap_or(false).then_some(m)
        })
        .collect()
}

/// First pair (in enumeration order) of order-4 Hadamard matrices that is
/// unbiased: quasi-unbiased for parameters `(4, 4, 4, 4)`.
pub fn unbiased_hadamard_pair_order4() -> Option<(IntMatrix, IntMatrix)> {
    let all = hadamard_matrices_order4();
    let params = WeighingParams::new(4, 4, 4, 4).expect("valid parameters");
    for (i, a) in all.iter().enumerate() {
        for b in &all[i + 1..] {
            if are_quasi_unbiased(a, b, &params).ok()?.is_pass() {
                return Some((a.clone(), b.clone()));
            }
        }
    }
    None
}

/// Lexicographically smallest non-increasing `(n1, n2, n3, n4)` with
/// `n1^2 + ... + n4^2 = p`, preferring all-positive representations.
pub fn four_squares(p: u64) -> [u64; 4] {
    let root = integer_sqrt(p as i64).unwrap_or(0) as u64;
    let search = |min: u64| {
        for a in min..=root {
            for b in min..=a {
                for c in min..=b {
                    for d in min..=c {
                        if a * a + b * b + c * c + d * d == p {
                            return Some([a, b, c, d]);
                        }
                    }
                }
            }
        }
        None
    };
    search(1)
        .or_else(|| search(0))
        .expect("Lagrange: every non-negative integer is a sum of four squares")
}

/// A square matrix over `0, ±x_1, ..., ±x_u`, with a claimed type
/// `(s_1, ..., s_u)`. Entry `±t` stands for `±x_t`, `0` for zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolicODMatrix {
    order: usize,
    entries: Vec<i32>,
    design_type: Vec<u32>,
}

impl SymbolicODMatrix {
    pub fn new(order: usize, entries: Vec<i32>, design_type: Vec<u32>) -> Result<Self> {
        if entries.len() != order * order {
            return Err(Error::Shape(format!(
                "{} entries for order {order}",
                entries.len()
            )));
        }
        let u = design_type.len() as i32;
        if let Some(e) = entries.iter().find(|e| e.abs() > u) {
            return Err(Error::Design(format!("entry {e} refers to an undeclared indeterminate")));
        }
        Ok(Self {
            order,
            entries,
            design_type,
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn design_type(&self) -> &[u32] {
        &self.design_type
    }

    fn get(&self, i: usize, j: usize) -> i32 {
        self.entries[i * self.order + j]
    }
}

/// A coefficient of `D D^T` that differs from the claimed type.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OdWitness {
    pub row: usize,
    pub col: usize,
    /// Indeterminate indices `(u, w)`, 1-based with `u <= w`, of the monomial
    /// `x_u x_w` whose coefficient is wrong.
    pub term: (u32, u32),
    pub coefficient: i64,
    pub expected: i64,
}

/// Expands `D D^T` symbolically and checks it equals `(Σ s_u x_u^2) I`.
pub fn verify_orthogonal_design(d: &SymbolicODMatrix) -> Verdict<OdWitness> {
    let n = d.order;
    for r in 0..n {
        for s in 0..n {
            let mut terms: BTreeMap<(u32, u32), i64> = BTreeMap::new();
            for c in 0..n {
                let (a, b) = (d.get(r, c), d.get(s, c));
                if a == 0 || b == 0 {
                    continue;
                }
                let (u, w) = (a.unsigned_abs(), b.unsigned_abs());
                let key = (u.min(w), u.max(w));
                *terms.entry(key).or_default() += (a.signum() * b.signum()) as i64;
            }
            if r == s {
                for t in 1..=d.design_type.len() as u32 {
                    terms.entry((t, t)).or_default();
                }
            }
            for (&(u, w), &coefficient) in &terms {
                let expected = if r == s && u == w {
                    d.design_type[u as usize - 1] as i64
                } else {
                    0
                };
                if coefficient != expected {
                    return Verdict::Fail(OdWitness {
                        row: r,
                        col: s,
                        term: (u, w),
                        coefficient,
                        expected,
                    });
                }
            }
        }
    }
    Verdict::Pass
}

/// Replaces each `±x_u` with `±values[u-1]`.
pub fn substitute(d: &SymbolicODMatrix, values: &[i64]) -> Result<IntMatrix> {
    if values.len() != d.design_type.len() {
        return Err(Error::Design(format!(
            "{} values for {} indeterminates",
            values.len(),
            d.design_type.len()
        )));
    }
    IntMatrix::new(
        d.order,
        d.order,
        d.entries
            .iter()
            .map(|&e| match e {
                0 => 0,
                e => e.signum() as i64 * values[e.unsigned_abs() as usize - 1],
            })
            .collect(),
    )
}

/// The quaternion orthogonal design OD(4; 1, 1, 1, 1).
pub fn quaternion_od() -> SymbolicODMatrix {
    SymbolicODMatrix::new(
        4,
        vec![1, 2, 3, 4, -2, 1, -4, 3, -3, 4, 1, -2, -4, -3, 2, 1],
        vec![1, 1, 1, 1],
    )
    .expect("well-formed")
}

/// Incidence matrix of the development of a difference set in `Z_v`:
/// row `i` is the block `D + i`, entry `(i, j)` is 1 iff `j - i ∈ D`.
pub fn difference_set_incidence(v: usize, set: &[usize]) -> IntMatrix {
    IntMatrix::from_fn(v, v, |i, j| set.contains(&((j + v - i) % v)) as i64)
}

/// The Fano plane from the difference set {1, 2, 4} mod 7.
pub fn fano_incidence() -> IntMatrix {
    difference_set_incidence(7, &[1, 2, 4])
}

fn check_design_matrix(a: &IntMatrix, v: usize) -> Result<()> {
    if check_square(a)? != v {
        return Err(Error::Design(format!("expected order {v}, got {}", a.rows())));
    }
    if !a.is_binary() {
        return Err(Error::Design("incidence matrix must be a (0,1)-matrix".into()));
    }
    Ok(())
}

/// `A A^T = (k - λ) I + λ J` for a (0,1)-matrix of order `v`.
pub fn is_symmetric_design(a: &IntMatrix, v: usize, k: i64, lambda: i64) -> Result<bool> {
    check_design_matrix(a, v)?;
    Ok(a.mul_transpose(a)? == scaled_identity_plus_j(v, k - lambda, lambda))
}

/// Parameters `(v, k, m, n, λ1, λ2)` of a symmetric group divisible design.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SgddParams {
    pub v: usize,
    pub k: i64,
    pub m: usize,
    pub n: usize,
    pub lambda1: i64,
    pub lambda2: i64,
}

impl SgddParams {
    pub fn new(v: usize, k: i64, m: usize, n: usize, lambda1: i64, lambda2: i64) -> Result<Self> {
        if v != m * n {
            return Err(Error::Design(format!("v = {v} is not m*n = {m}*{n}")));
        }
        Ok(Self {
            v,
            k,
            m,
            n,
            lambda1,
            lambda2,
        })
    }

    /// `I_m ⊗ J_n`: group indicator, groups as consecutive index blocks.
    pub fn group_matrix(&self) -> IntMatrix {
        let n = self.n;
        IntMatrix::from_fn(self.v, self.v, |i, j| (i / n == j / n) as i64)
    }

    /// `k I + λ1 (I_m ⊗ J_n - I) + λ2 (J - I_m ⊗ J_n)`.
    pub fn gram(&self) -> IntMatrix {
        let n = self.n;
        IntMatrix::from_fn(self.v, self.v, |i, j| {
            if i == j {
                self.k
            } else if i / n == j / n {
                self.lambda1
            } else {
                self.lambda2
            }
        })
    }
}

/// `A A^T` matches the group divisible design identity, groups laid out as
/// consecutive blocks of `n`.
pub fn is_sgdd(a: &IntMatrix, params: &SgddParams) -> Result<bool> {
    check_design_matrix(a, params.v)?;
    Ok(a.mul_transpose(a)? == params.gram())
}

/// Design parameters of the members of a linked system.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LinkedParams {
    Symmetric { v: usize, k: i64, lambda: i64 },
    GroupDivisible(SgddParams),
}

impl LinkedParams {
    pub fn order(&self) -> usize {
        match self {
            LinkedParams::Symmetric { v, .. } => *v,
            LinkedParams::GroupDivisible(p) => p.v,
        }
    }

    fn pair_gram(&self) -> IntMatrix {
        match *self {
            LinkedParams::Symmetric { v, k, lambda } => scaled_identity_plus_j(v, k - lambda, lambda),
            LinkedParams::GroupDivisible(p) => p.gram(),
        }
    }
}

/// A linked system `{A_{i,j} : 1 <= i, j <= f, i != j}`. Indices are
/// 1-based. `rho` is set for group divisible systems of type II.
#[derive(Clone, Debug)]
pub struct LinkedSystem {
    pub f: usize,
    pub matrices: BTreeMap<(usize, usize), IntMatrix>,
    pub params: LinkedParams,
    pub sigma: i64,
    pub tau: i64,
    pub rho: Option<i64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LinkedWitness {
    /// `A_{i,j}^T != A_{j,i}`.
    Transpose { i: usize, j: usize },
    /// `A_{i,j} A_{j,i}` differs from the design identity.
    Pair { i: usize, j: usize },
    /// `A_{i,j} A_{j,s}` differs from the σ/τ(/ρ) combination.
    Triple { i: usize, j: usize, s: usize },
}

impl LinkedSystem {
    fn get(&self, i: usize, j: usize) -> Result<&IntMatrix> {
        self.matrices
            .get(&(i, j))
            .ok_or_else(|| Error::Design(format!("missing A_{i}_{j}")))
    }

    /// `{A_{1,j} : j = 2..f}`, the family handed to the code constructions.
    pub fn first_row_family(&self) -> Result<Vec<IntMatrix>> {
        (2..=self.f).map(|j| self.get(1, j).cloned()).collect()
    }

    /// Right-hand side of the triple condition for a given `A_{i,s}`.
    fn triple_rhs(&self, a: &IntMatrix) -> Result<IntMatrix> {
        let v = a.rows();
        let j = IntMatrix::ones(v, v);
        let mut rhs = a
            .scalar_mul(self.sigma)?
            .add(&j.sub(a)?.scalar_mul(self.tau)?)?;
        if let (Some(rho), LinkedParams::GroupDivisible(p)) = (self.rho, self.params) {
            // type II: σA + τ(J - A - I_m⊗J_n) + ρ I_m⊗J_n
            let g = p.group_matrix();
            rhs = rhs.sub(&g.scalar_mul(self.tau)?)?.add(&g.scalar_mul(rho)?)?;
        }
        Ok(rhs)
    }
}

/// Verifies transpose pairing, the pair identity for every ordered pair and
/// the triple identity for every ordered triple of distinct indices.
pub fn verify_linked_system(ls: &LinkedSystem) -> Result<Verdict<LinkedWitness>> {
    let f = ls.f;
    let v = ls.params.order();
    for i in 1..=f {
        for j in (1..=f).filter(|&j| j != i) {
            check_design_matrix(ls.get(i, j)?, v)?;
        }
    }
    for i in 1..=f {
        for j in (1..=f).filter(|&j| j != i) {
            if ls.get(i, j)?.transpose() != *ls.get(j, i)? {
                return Ok(Verdict::Fail(LinkedWitness::Transpose { i, j }));
            }
        }
    }
    let gram = ls.params.pair_gram();
    for i in 1..=f {
        for j in (1..=f).filter(|&j| j != i) {
            if ls.get(i, j)?.matmul(ls.get(j, i)?)? != gram {
                return Ok(Verdict::Fail(LinkedWitness::Pair { i, j }));
            }
        }
    }
    for i in 1..=f {
        for j in (1..=f).filter(|&j| j != i) {
            for s in (1..=f).filter(|&s| s != i && s != j) {
                let lhs = ls.get(i, j)?.matmul(ls.get(j, s)?)?;
                if lhs != ls.triple_rhs(ls.get(i, s)?)? {
                    return Ok(Verdict::Fail(LinkedWitness::Triple { i, j, s }));
                }
            }
        }
    }
    Ok(Verdict::Pass)
}

/// Primes dividing every value (zero is divisible by everything).
pub fn common_prime_divisors(values: &[i64]) -> Vec<u32> {
    let g = values.iter().fold(0i64, |g, &v| gcd(g, v.abs()));
    if g == 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut rest = g;
    let mut d = 2;
    while d * d <= rest {
        if rest % d == 0 {
            out.push(d as u32);
            while rest % d == 0 {
                rest /= d;
            }
        }
        d += 1;
    }
    if rest > 1 {
        out.push(rest as u32);
    }
    out
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// A row of the quasi-unbiased weighing matrix parameter table.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MquwmRecord {
    pub n: u64,
    pub k: i64,
    pub l: i64,
    pub a: i64,
    pub primes: &'static [u32],
}

/// Known MQUWM parameter sets; the first family is listed for t = 1, 2, and
/// the weight-4 family for its small orders.
pub const MQUWM_TABLE: &[MquwmRecord] = &[
    MquwmRecord { n: 8, k: 8, l: 4, a: 16, primes: &[2] },
    MquwmRecord { n: 32, k: 32, l: 16, a: 64, primes: &[2] },
    MquwmRecord { n: 8, k: 4, l: 4, a: 4, primes: &[2] },
    MquwmRecord { n: 11, k: 4, l: 4, a: 4, primes: &[2] },
    MquwmRecord { n: 13, k: 4, l: 4, a: 4, primes: &[2] },
    MquwmRecord { n: 10, k: 4, l: 4, a: 4, primes: &[2] },
    MquwmRecord { n: 8, k: 8, l: 4, a: 16, primes: &[2] },
    MquwmRecord { n: 12, k: 12, l: 9, a: 16, primes: &[2] },
    MquwmRecord { n: 16, k: 16, l: 4, a: 64, primes: &[2] },
    MquwmRecord { n: 24, k: 24, l: 4, a: 144, primes: &[2, 3] },
    MquwmRecord { n: 24, k: 24, l: 9, a: 64, primes: &[2] },
    MquwmRecord { n: 32, k: 32, l: 4, a: 256, primes: &[2] },
    MquwmRecord { n: 48, k: 48, l: 4, a: 576, primes: &[2, 3] },
    MquwmRecord { n: 48, k: 48, l: 9, a: 256, primes: &[2] },
    MquwmRecord { n: 48, k: 48, l: 36, a: 64, primes: &[2] },
];

/// The `(2^(2t+1), 2^(2t+1), 2^(2t), 2^(2t+2))` MQUWM family.
pub fn mquwm_power_of_two(t: u32) -> MquwmRecord {
    MquwmRecord {
        n: 1 << (2 * t + 1),
        k: 1 << (2 * t + 1),
        l: 1 << (2 * t),
        a: 1 << (2 * t + 2),
        primes: &[2],
    }
}

impl MquwmRecord {
    pub fn params(&self) -> Result<WeighingParams> {
        WeighingParams::new(self.n as usize, self.k, self.l, self.a)
    }
}

/// Parameters of a linked system of symmetric designs or SGDDs, with the
/// listed primes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LinkedRecord {
    pub v: i64,
    pub k: i64,
    /// `(m, n)` for group divisible systems.
    pub groups: Option<(i64, i64)>,
    /// `λ` for symmetric designs, `(λ1, λ2)` for SGDDs.
    pub lambdas: (i64, Option<i64>),
    pub sigma: i64,
    pub tau: i64,
    pub rho: Option<i64>,
    pub primes: &'static [u32],
}

impl LinkedRecord {
    /// Values the listed primes must divide.
    pub fn divisible_values(&self) -> Vec<i64> {
        let mut v = vec![self.k, self.lambdas.0];
        v.extend(self.lambdas.1);
        v.extend([self.sigma, self.tau]);
        v.extend(self.rho);
        v
    }

    /// Row sums of both sides of the triple identity agree: `k^2` against
    /// the row sum of the σ/τ(/ρ) combination. This is necessary for any
    /// instance to exist.
    pub fn row_sums_consistent(&self) -> bool {
        let lhs = self.k * self.k;
        let rhs = match (self.rho, self.groups) {
            (Some(rho), Some((_, n))) => {
                // groups and blocks are disjoint in the type II layout
                self.sigma * self.k + self.tau * (self.v - self.k - n) + rho * n
            }
            _ => self.sigma * self.k + self.tau * (self.v - self.k),
        };
        lhs == rhs
    }
}

/// Linked systems of symmetric `(4n^2, 2n^2 - n, n^2 - n)` designs with the
/// (σ, τ) pair as tabulated.
pub fn linked_symmetric_record(n: i64) -> LinkedRecord {
    LinkedRecord {
        v: 4 * n * n,
        k: 2 * n * n - n,
        groups: None,
        lambdas: (n * n - n, None),
        sigma: n * n - n / 2,
        tau: n * n - 3 * n / 2,
        rho: None,
        primes: &[2],
    }
}

/// Linked systems of symmetric group divisible designs.
pub const LINKED_SGDD_TABLE: &[LinkedRecord] = &[
    LinkedRecord { v: 56, k: 28, groups: Some((7, 8)), lambdas: (12, Some(14)), sigma: 16, tau: 12, rho: None, primes: &[2] },
    LinkedRecord { v: 108, k: 36, groups: Some((36, 3)), lambdas: (0, Some(12)), sigma: 16, tau: 10, rho: None, primes: &[2] },
    LinkedRecord { v: 132, k: 66, groups: Some((11, 12)), lambdas: (30, Some(33)), sigma: 36, tau: 30, rho: None, primes: &[3] },
];

/// Linked systems of symmetric group divisible designs of type II.
pub const LINKED_SGDD_II_TABLE: &[LinkedRecord] = &[LinkedRecord {
    v: 378,
    k: 117,
    groups: Some((14, 27)),
    lambdas: (36, Some(36)),
    sigma: 42,
    tau: 33,
    rho: Some(39),
    primes: &[3],
}];

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weighing_examples() {
        assert!(is_weighing(&sylvester_hadamard(2), 4).unwrap());
        let h2 = IntMatrix::from_rows(&[vec![1, 1], vec![1, -1]]).unwrap();
        assert!(is_weighing(&h2, 2).unwrap());
        assert!(is_weighing(&IntMatrix::identity(5), 1).unwrap());
        assert!(!is_weighing(&IntMatrix::ones(2, 2), 2).unwrap());
        let bad = IntMatrix::from_rows(&[vec![2]]).unwrap();
        assert!(matches!(is_weighing(&bad, 4), Err(Error::Design(_))));
    }

    #[test]
    fn weighing_rows_have_weight_nonzeros() {
        for w in hadamard_matrices_order4().iter().take(50) {
            for i in 0..4 {
                assert_eq!(w.row(i).iter().filter(|&&x| x != 0).count(), 4);
            }
        }
        let w = IntMatrix::from_rows(&[
            vec![0, 1, 1, 1],
            vec![-1, 0, 1, -1],
            vec![-1, -1, 0, 1],
            vec![-1, 1, -1, 0],
        ])
        .unwrap();
        assert!(is_weighing(&w, 3).unwrap());
        for i in 0..4 {
            assert_eq!(w.row(i).iter().filter(|&&x| x != 0).count(), 3);
        }
    }

    #[test]
    fn weighing_params_validation() {
        assert!(WeighingParams::new(4, 4, 4, 4).is_ok());
        assert!(WeighingParams::new(4, 4, 3, 4).is_err());
        // l = k^2/a holds but sqrt(a) is not integral
        assert!(WeighingParams::new(6, 6, 18, 2).is_err());
    }

    #[test]
    fn self_pair_is_not_quasi_unbiased() {
        let h = sylvester_hadamard(2);
        let params = WeighingParams::new(4, 4, 4, 4).unwrap();
        assert_eq!(
            are_quasi_unbiased(&h, &h, &params).unwrap(),
            Verdict::Fail(QuasiUnbiasedWitness::QuotientNotWeighing)
        );
        assert!(!verify_mquwm(&[h.clone(), h.clone()], &params).unwrap().is_pass());
        assert_eq!(verify_mquwm(&[h], &params).unwrap_err(), Error::TooFewMembers(1));
    }

    #[test]
    fn divisibility_witness_for_quasi_unbiased() {
        // with sqrt(a) = 4, any product entry equal to +-2 is a witness
        let all = hadamard_matrices_order4();
        let params = WeighingParams::new(4, 4, 1, 16).unwrap();
        let h = &all[0];
        let other = all
            .iter()
            .find(|b| h.mul_transpose(b).unwrap().data().iter().any(|v| v % 4 != 0))
            .unwrap();
        assert!(matches!(
            are_quasi_unbiased(h, other, &params).unwrap(),
            Verdict::Fail(QuasiUnbiasedWitness::NotDivisible { .. })
        ));
    }

    #[test]
    fn four_square_examples() {
        assert_eq!(four_squares(7), [2, 1, 1, 1]);
        assert_eq!(four_squares(4), [1, 1, 1, 1]);
        assert_eq!(four_squares(2), [1, 1, 0, 0]);
        assert_eq!(four_squares(3), [1, 1, 1, 0]);
        assert_eq!(four_squares(1), [1, 0, 0, 0]);
        assert_eq!(four_squares(0), [0, 0, 0, 0]);
        for p in 0..300u64 {
            let s = four_squares(p);
            assert_eq!(s.iter().map(|x| x * x).sum::<u64>(), p);
            assert!(s.windows(2).all(|w| w[0] >= w[1]));
        }
    }

    #[test]
    fn orthogonal_designs() {
        let d2 = SymbolicODMatrix::new(2, vec![1, 2, 2, -1], vec![1, 1]).unwrap();
        assert!(verify_orthogonal_design(&d2).is_pass());
        let q = quaternion_od();
        assert!(verify_orthogonal_design(&q).is_pass());
        // sign error leaves a cross term x1 x2 at (0, 1)
        let bad = SymbolicODMatrix::new(2, vec![1, 2, 2, 1], vec![1, 1]).unwrap();
        assert_eq!(
            verify_orthogonal_design(&bad),
            Verdict::Fail(OdWitness {
                row: 0,
                col: 1,
                term: (1, 2),
                coefficient: 2,
                expected: 0
            })
        );
        // wrong type claim
        let wrong_type = SymbolicODMatrix::new(2, vec![1, 2, 2, -1], vec![2, 1]).unwrap();
        assert!(!verify_orthogonal_design(&wrong_type).is_pass());
        assert!(SymbolicODMatrix::new(2, vec![1, 3, 2, -1], vec![1, 1]).is_err());
    }

    #[test]
    fn substituted_od_products_divisible_by_p() {
        let q = quaternion_od();
        for p in [2u64, 3, 5, 7, 11, 13] {
            let vals: Vec<i64> = four_squares(p).iter().map(|&x| x as i64).collect();
            let w = substitute(&q, &vals).unwrap();
            let prod = w.mul_transpose(&w).unwrap();
            assert!(prod.first_not_divisible(p as i64).is_none());
            assert_eq!(prod, IntMatrix::identity(4).scalar_mul(p as i64).unwrap());
        }
        assert!(substitute(&q, &[1, 2]).is_err());
    }

    #[test]
    fn symmetric_designs_and_sgdds() {
        let fano = fano_incidence();
        assert!(is_symmetric_design(&fano, 7, 3, 1).unwrap());
        assert!(!is_symmetric_design(&IntMatrix::ones(7, 7), 7, 3, 1).unwrap());
        let params = SgddParams::new(6, 2, 3, 2, 2, 0).unwrap();
        let blocks = IntMatrix::identity(3).kron(&IntMatrix::ones(2, 2)).unwrap();
        assert!(is_sgdd(&blocks, &params).unwrap());
        let p2 = SgddParams::new(6, 3, 3, 2, 1, 1).unwrap();
        assert!(!is_sgdd(&IntMatrix::ones(6, 6), &p2).unwrap());
        assert!(SgddParams::new(7, 2, 3, 2, 2, 0).is_err());
    }

    fn uniform_system(f: usize, a: &IntMatrix, params: LinkedParams, sigma: i64, tau: i64) -> LinkedSystem {
        let mut matrices = BTreeMap::new();
        for i in 1..=f {
            for j in 1..=f {
                if i != j {
                    matrices.insert((i, j), a.clone());
                }
            }
        }
        LinkedSystem {
            f,
            matrices,
            params,
            sigma,
            tau,
            rho: None,
        }
    }

    #[test]
    fn linked_systems() {
        let fano = fano_incidence();
        let mut matrices = BTreeMap::new();
        matrices.insert((1, 2), fano.clone());
        matrices.insert((2, 1), fano.transpose());
        let params = LinkedParams::Symmetric { v: 7, k: 3, lambda: 1 };
        let ls = LinkedSystem {
            f: 2,
            matrices,
            params,
            sigma: 0,
            tau: 0,
            rho: None,
        };
        assert!(verify_linked_system(&ls).unwrap().is_pass());

        // J - I is a (v, v-1, v-2) design linked with σ = v-2, τ = v-1
        let v = 5;
        let jmi = IntMatrix::ones(v, v).sub(&IntMatrix::identity(v)).unwrap();
        let params = LinkedParams::Symmetric { v, k: 4, lambda: 3 };
        let good = uniform_system(3, &jmi, params, 3, 4);
        assert!(verify_linked_system(&good).unwrap().is_pass());
        let fabricated = uniform_system(3, &jmi, params, 2, 2);
        assert_eq!(
            verify_linked_system(&fabricated).unwrap(),
            Verdict::Fail(LinkedWitness::Triple { i: 1, j: 2, s: 3 })
        );

        let mut missing = good.clone();
        missing.matrices.remove(&(3, 1));
        assert!(matches!(verify_linked_system(&missing), Err(Error::Design(_))));

        let mut skew = uniform_system(2, &fano, LinkedParams::Symmetric { v: 7, k: 3, lambda: 1 }, 0, 0);
        skew.matrices.insert((2, 1), fano.clone());
        assert_eq!(
            verify_linked_system(&skew).unwrap(),
            Verdict::Fail(LinkedWitness::Transpose { i: 1, j: 2 })
        );
    }

    #[test]
    fn linked_system_family_passes_precheck() {
        // J_v with v even is a degenerate (v, v, v) design, linked with σ = v
        let v = 4;
        let j = IntMatrix::ones(v, v);
        let ls = uniform_system(3, &j, LinkedParams::Symmetric { v, k: 4, lambda: 4 }, 4, 4);
        assert!(verify_linked_system(&ls).unwrap().is_pass());
        let fam = ls.first_row_family().unwrap();
        for p in common_prime_divisors(&[4, 4, 4, 4]) {
            assert!(divisibility_precheck(&fam, p).is_pass());
        }
    }

    #[test]
    fn precheck_witness() {
        let fam = vec![IntMatrix::identity(3)];
        assert_eq!(
            divisibility_precheck(&fam, 2),
            Verdict::Fail(PrecheckWitness { i: 0, j: 0, row: 0, col: 0, value: 1 })
        );
        let fam = vec![IntMatrix::ones(2, 2), IntMatrix::identity(2).scalar_mul(2).unwrap()];
        assert!(divisibility_precheck(&fam, 2).is_pass());
    }

    #[test]
    fn mquwm_table_primes() {
        let mut rows: Vec<MquwmRecord> = MQUWM_TABLE.to_vec();
        rows.extend((0..4).map(mquwm_power_of_two));
        for r in rows {
            let params = r.params().unwrap();
            let root = params.sqrt_a().unwrap();
            for &p in r.primes {
                assert_eq!(r.k % p as i64, 0, "{r:?}");
                assert_eq!(root % p as i64, 0, "{r:?}");
            }
        }
    }

    #[test]
    fn linked_tables() {
        for r in LINKED_SGDD_TABLE.iter().chain(LINKED_SGDD_II_TABLE) {
            let common = common_prime_divisors(&r.divisible_values());
            for p in r.primes {
                assert!(common.contains(p), "{r:?}");
            }
            assert!(r.row_sums_consistent(), "{r:?}");
            let (m, n) = r.groups.unwrap();
            assert_eq!(m * n, r.v);
        }
        // the symmetric-design family: 2 divides everything only when 4 | n
        for n in [4, 8, 12] {
            let r = linked_symmetric_record(n);
            assert!(common_prime_divisors(&r.divisible_values()).contains(&2));
        }
        for n in [2, 6] {
            let r = linked_symmetric_record(n);
            assert!(!common_prime_divisors(&r.divisible_values()).contains(&2));
        }
    }

    #[test]
    fn linked_symmetric_sigma_tau_order() {
        // k^2 = σk + τ(v-k) forces the smaller constant onto the blocks
        for n in [2, 4, 6, 8] {
            let r = linked_symmetric_record(n);
            assert!(!r.row_sums_consistent());
            let swapped = LinkedRecord {
                sigma: r.tau,
                tau: r.sigma,
                ..r
            };
            assert!(swapped.row_sums_consistent());
        }
    }

    #[test]
    fn prime_divisors() {
        assert_eq!(common_prime_divisors(&[12, 18, 0]), vec![2, 3]);
        assert_eq!(common_prime_divisors(&[0, 0]), Vec::<u32>::new());
        assert_eq!(common_prime_divisors(&[7]), vec![7]);
    }
}
