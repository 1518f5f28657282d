//! Deza graphs from finite fields.
//!
//! For `q = p^m` the auxiliary blocks `C_{a,α}` and `D_{a,α}` of order `q^2`
//! are sums of Kronecker products of powers of the order-`p` shift `U`
//! (optionally followed by the back-identity `R`). Their exponents are the
//! coefficient vectors of the field element `a·c + α`. A circulant skeleton
//! of order `2q+3` pairs each symbol `a ∈ F_q ∪ {y}` with
//! `P_a = V^{φ(a)} + V^{-φ(a)}`, and
//! `N_α = Σ_a P_a ⊗ C_{a,α}` is the adjacency matrix of a Deza graph with
//! parameters `(q^2(2q+3), 2q(q+1), 3q, 2q)`.

use crate::error::{Error, Result};
use crate::exactmat::{back_identity, shift_power, IntMatrix};
use crate::gf::{Field, FieldElement};
use crate::par;
use crate::report::{Check, Report};

/// An entry of the skeleton's first row: `x`, `y`, or a field element.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Symbol {
    X,
    Y,
    Elem(FieldElement),
}

impl Symbol {
    fn check(self, field: &Field) -> Result<()> {
        match self {
            Symbol::Elem(e) if !field.contains(e) => Err(Error::FieldMismatch),
            _ => Ok(()),
        }
    }

    pub fn label(self) -> String {
        match self {
            Symbol::X => "x".into(),
            Symbol::Y => "y".into(),
            Symbol::Elem(e) => e.index().to_string(),
        }
    }
}

/// `⊗_i U^{v_i}` (or `⊗_i U^{v_i} R`), highest coordinate outermost so that
/// the row index of the product is the field index of the coordinate vector.
fn shift_tensor(p: u32, v: &[u32], with_r: bool) -> IntMatrix {
    let n = p as usize;
    let r = back_identity(n).expect("p >= 2");
    v.iter().rev().fold(IntMatrix::identity(1), |acc, &e| {
        let mut f = shift_power(n, e as i64).expect("p >= 2");
        if with_r {
            f = f.matmul(&r).expect("square");
        }
        acc.kron(&f).expect("0/1 entries")
    })
}

fn block(field: &Field, a: Symbol, alpha: FieldElement, with_r: bool) -> Result<IntMatrix> {
    a.check(field)?;
    if !field.contains(alpha) {
        return Err(Error::FieldMismatch);
    }
    let q = field.order() as usize;
    let p = field.characteristic();
    let alpha_vec = field.to_vector(alpha)?;
    match a {
        Symbol::X => Ok(IntMatrix::zeros(q * q, q * q)),
        Symbol::Y => shift_tensor(p, &alpha_vec, with_r).kron(&IntMatrix::ones(q, q)),
        Symbol::Elem(a) => {
            let mut acc = IntMatrix::zeros(q * q, q * q);
            for c in field.elements() {
                let exp = field.add(field.mul(a, c)?, alpha)?;
                let left = shift_tensor(p, &field.to_vector(c)?, with_r);
                let right = shift_tensor(p, &field.to_vector(exp)?, with_r);
                acc = acc.add(&left.kron(&right)?)?;
            }
            Ok(acc)
        }
    }
}

/// `C_{a,α}`: zero for `x`, `(⊗U^{α_i}R) ⊗ J_q` for `y`, otherwise
/// `Σ_c (⊗U^{c_i}R) ⊗ (⊗U^{(ac+α)_i}R)`.
pub fn build_c(field: &Field, a: Symbol, alpha: FieldElement) -> Result<IntMatrix> {
    block(field, a, alpha, true)
}

/// `D_{a,α}`: as [`build_c`] without the `R` factors.
pub fn build_d(field: &Field, a: Symbol, alpha: FieldElement) -> Result<IntMatrix> {
    block(field, a, alpha, false)
}

/// The circulant skeleton of order `2q+3`.
#[derive(Clone, Debug)]
pub struct Skeleton {
    order: usize,
    first_row: Vec<Symbol>,
    /// `(a, φ(a))` for `a = y` then the field elements in index order.
    phi: Vec<(Symbol, usize)>,
}

impl Skeleton {
    /// First row `x, y, e_1, ..., e_q, e_q, ..., e_1, y` with `e_k` the k-th
    /// field element in index order; `φ(y) = 1`, `φ(e_k) = k + 1`.
    pub fn new(field: &Field) -> Self {
        let q = field.order() as usize;
        let order = 2 * q + 3;
        let mut first_row = vec![Symbol::X; order];
        let mut phi = vec![(Symbol::Y, 1)];
        first_row[1] = Symbol::Y;
        first_row[order - 1] = Symbol::Y;
        for (k, e) in field.elements().enumerate() {
            let offset = k + 2;
            first_row[offset] = Symbol::Elem(e);
            first_row[order - offset] = Symbol::Elem(e);
            phi.push((Symbol::Elem(e), offset));
        }
        Self {
            order,
            first_row,
            phi,
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn first_row(&self) -> &[Symbol] {
        &self.first_row
    }

    /// The symbols `y, e_1, ..., e_q` carrying a `P_a`.
    pub fn symbols(&self) -> Vec<Symbol> {
        self.phi.iter().map(|&(s, _)| s).collect()
    }

    pub fn phi(&self, a: Symbol) -> Option<usize> {
        self.phi.iter().find(|&&(s, _)| s == a).map(|&(_, k)| k)
    }

    /// `V^k` with `V` the shift of order `2q+3`.
    pub fn v_power(&self, k: i64) -> IntMatrix {
        shift_power(self.order, k).expect("order > 0")
    }

    /// `P_a = V^{φ(a)} + V^{-φ(a)}`.
    pub fn p_matrix(&self, a: Symbol) -> Result<IntMatrix> {
        let k = self
            .phi(a)
            .ok_or_else(|| Error::LemmaMismatch(format!("no P_a for symbol {}", a.label())))?
            as i64;
        self.v_power(k).add(&self.v_power(-k))
    }

    /// Positions of `a` in the circulant: entry `(i, j)` is `a` iff
    /// `first_row[(j - i) mod (2q+3)] = a`.
    pub fn indicator(&self, a: Symbol) -> IntMatrix {
        let n = self.order;
        IntMatrix::from_fn(n, n, |i, j| (self.first_row[(j + n - i) % n] == a) as i64)
    }
}

/// Parameters `(n, k, b, a)` of a Deza graph, `a <= b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DezaParams {
    pub n: usize,
    pub k: i64,
    pub b: i64,
    pub a: i64,
}

impl DezaParams {
    /// `(q^2(2q+3), 2q(q+1), 3q, 2q)`.
    pub fn expected(q: u32) -> Self {
        let q = q as i64;
        Self {
            n: (q * q * (2 * q + 3)) as usize,
            k: 2 * q * (q + 1),
            b: 3 * q,
            a: 2 * q,
        }
    }
}

impl std::fmt::Display for DezaParams {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{},{},{})", self.n, self.k, self.b, self.a)
    }
}

/// Checks that `adj` is a symmetric (0,1)-matrix with zero diagonal whose
/// square has constant diagonal and at most two off-diagonal values.
pub fn verify_deza(adj: &IntMatrix) -> Result<DezaParams> {
    if !adj.is_square() {
        return Err(Error::NotSquare {
            rows: adj.rows(),
            cols: adj.cols(),
        });
    }
    let n = adj.rows();
    if !adj.is_binary() {
        return Err(Error::NotDeza("not a (0,1)-matrix".into()));
    }
    if !adj.is_symmetric() {
        return Err(Error::NotDeza("not symmetric".into()));
    }
    if let Some(i) = (0..n).find(|&i| adj.get(i, i) != 0) {
        return Err(Error::NotDeza(format!("nonzero diagonal at vertex {i}")));
    }
    if n < 2 {
        return Err(Error::NotDeza("fewer than two vertices".into()));
    }
    let sq = adj.matmul(adj)?;
    let k = sq.get(0, 0);
    if let Some(i) = (0..n).find(|&i| sq.get(i, i) != k) {
        return Err(Error::NotDeza(format!(
            "not regular: vertex {i} has degree {} but vertex 0 has {k}",
            sq.get(i, i)
        )));
    }
    let mut values: Vec<i64> = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let v = sq.get(i, j);
            if i != j && !values.contains(&v) {
                values.push(v);
                if values.len() > 2 {
                    values.sort_unstable();
                    return Err(Error::NotDeza(format!(
                        "common-neighbour counts take more than two values: {values:?}"
                    )));
                }
            }
        }
    }
    values.sort_unstable();
    Ok(DezaParams {
        n,
        k,
        a: values[0],
        b: *values.last().expect("n >= 2"),
    })
}

/// The construction for one field: skeleton, the `C_{a,α}` blocks and the
/// members `N_α`, indexed by `α` in field order.
#[derive(Clone, Debug)]
pub struct DezaFamily {
    field: Field,
    skeleton: Skeleton,
    /// `c_blocks[α][s]` for `s` indexing [`Skeleton::symbols`].
    c_blocks: Vec<Vec<IntMatrix>>,
    members: Vec<IntMatrix>,
}

pub fn build_family(field: &Field) -> Result<DezaFamily> {
    let skeleton = Skeleton::new(field);
    let symbols = skeleton.symbols();
    let alphas: Vec<FieldElement> = field.elements().collect();
    let p_mats = symbols
        .iter()
        .map(|&s| skeleton.p_matrix(s))
        .collect::<Result<Vec<_>>>()?;
    let built = par::try_map_range(alphas.len(), |t| {
        let blocks = symbols
            .iter()
            .map(|&s| build_c(field, s, alphas[t]))
            .collect::<Result<Vec<_>>>()?;
        let q2 = blocks[0].rows();
        let n = skeleton.order() * q2;
        let mut member = IntMatrix::zeros(n, n);
        for (p, c) in p_mats.iter().zip(&blocks) {
            member = member.add(&p.kron(c)?)?;
        }
        Ok::<_, Error>((blocks, member))
    })?;
    let (c_blocks, members) = built.into_iter().unzip();
    Ok(DezaFamily {
        field: field.clone(),
        skeleton,
        c_blocks,
        members,
    })
}

impl DezaFamily {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn q(&self) -> u32 {
        self.field.order()
    }

    /// Vertex count `q^2(2q+3)`.
    pub fn n(&self) -> usize {
        self.members.first().map_or(0, IntMatrix::rows)
    }

    pub fn skeleton(&self) -> &Skeleton {
        &self.skeleton
    }

    pub fn members(&self) -> &[IntMatrix] {
        &self.members
    }

    pub fn member(&self, alpha: FieldElement) -> Result<&IntMatrix> {
        if !self.field.contains(alpha) {
            return Err(Error::FieldMismatch);
        }
        Ok(&self.members[alpha.index() as usize])
    }

    /// Cached `C_{a,α}` for `a ∈ F_q ∪ {y}`.
    pub fn c_block(&self, a: Symbol, alpha: FieldElement) -> Result<&IntMatrix> {
        if !self.field.contains(alpha) {
            return Err(Error::FieldMismatch);
        }
        let s = self
            .skeleton
            .symbols()
            .iter()
            .position(|&s| s == a)
            .ok_or_else(|| Error::LemmaMismatch(format!("no cached block for {}", a.label())))?;
        Ok(&self.c_blocks[alpha.index() as usize][s])
    }

    /// `I_{2q+3} ⊗ J_{q^2}`: the cliques left uncovered by the members.
    pub fn clique_cover(&self) -> IntMatrix {
        let q2 = (self.q() * self.q()) as usize;
        IntMatrix::identity(self.skeleton.order())
            .kron(&IntMatrix::ones(q2, q2))
            .expect("0/1 entries")
    }

    /// `M = Σ_a (V^{2φ(a)} + V^{-2φ(a)}) ⊗ D_{a,0}`.
    pub fn m_matrix(&self) -> Result<IntMatrix> {
        let n = self.n();
        let mut m = IntMatrix::zeros(n, n);
        for a in self.skeleton.symbols() {
            let k = self.skeleton.phi(a).expect("listed symbol") as i64;
            let v = self.skeleton.v_power(2 * k).add(&self.skeleton.v_power(-2 * k))?;
            m = m.add(&v.kron(&build_d(&self.field, a, self.field.zero())?)?)?;
        }
        Ok(m)
    }
}

/// Whether all members commute pairwise.
pub fn check_commutativity(family: &DezaFamily) -> bool {
    first_noncommuting_pair(family).is_none()
}

/// First pair `(α, β)`, `α < β` by index, with `N_α N_β != N_β N_α`.
pub fn first_noncommuting_pair(family: &DezaFamily) -> Option<(usize, usize)> {
    let m = family.members.len();
    let pairs: Vec<(usize, usize)> = (0..m).flat_map(|i| (i + 1..m).map(move |j| (i, j))).collect();
    par::find_first(pairs.len(), |t| {
        let (i, j) = pairs[t];
        let (a, b) = (&family.members[i], &family.members[j]);
        let ab = a.matmul(b).expect("same order");
        let ba = b.matmul(a).expect("same order");
        (ab != ba).then_some((i, j))
    })
}

/// Which case of the product rule for `C_{a,α} C_{b,β}` applied.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CdCase {
    /// `a = b`: the product is `q D_{a,α-β}`.
    ScaledD,
    /// `a != b`: the product is `J_{q^2}`.
    AllOnes,
}

/// Computes `C_{a,α} C_{b,β}` and compares it with the predicted value.
pub fn lemma_cd_product(
    field: &Field,
    a: Symbol,
    alpha: FieldElement,
    b: Symbol,
    beta: FieldElement,
) -> Result<CdCase> {
    if a == Symbol::X || b == Symbol::X {
        return Err(Error::LemmaMismatch("the product rule excludes x".into()));
    }
    let prod = build_c(field, a, alpha)?.matmul(&build_c(field, b, beta)?)?;
    let q = field.order() as usize;
    let (case, expected) = if a == b {
        let d = build_d(field, a, field.sub(alpha, beta)?)?;
        (CdCase::ScaledD, d.scalar_mul(q as i64)?)
    } else {
        (CdCase::AllOnes, IntMatrix::ones(q * q, q * q))
    };
    if prod != expected {
        return Err(Error::LemmaMismatch(format!(
            "C_{{{},{}}} C_{{{},{}}} is not {case:?}",
            a.label(),
            alpha.index(),
            b.label(),
            beta.index()
        )));
    }
    Ok(case)
}

/// `q I_q ⊗ T + (J_q - I_q + T) ⊗ J_q` with `T = ⊗_i U^{α_i}`: the value of
/// `Σ_{a ∈ F_q ∪ {y}} D_{a,α}`.
pub fn d_sum_closed_form(field: &Field, alpha: FieldElement) -> Result<IntMatrix> {
    let q = field.order() as usize;
    let t = shift_tensor(field.characteristic(), &field.to_vector(alpha)?, false);
    let left = IntMatrix::identity(q).scalar_mul(q as i64)?.kron(&t)?;
    let inner = IntMatrix::ones(q, q).sub(&IntMatrix::identity(q))?.add(&t)?;
    left.add(&inner.kron(&IntMatrix::ones(q, q))?)
}

fn first_failure<T>(items: &[T], f: impl Fn(&T) -> Result<bool> + Sync + Send) -> Result<Option<usize>>
where
    T: Sync,
{
    let verdicts = par::try_map_range(items.len(), |t| f(&items[t]))?;
    Ok(verdicts.iter().position(|ok| !ok))
}

fn outcome(name: &str, failure: Option<String>, detail: String) -> Check {
    match failure {
        None => Check::new(name, true, detail),
        Some(w) => Check::new(name, false, w),
    }
}

/// Shift/back-identity identities for `F_p`: `R U^a R = U^{-a}` and
/// `U^a R` symmetric for every `a`.
pub fn shift_reflection_checks(p: u32) -> Result<Vec<Check>> {
    let n = p as usize;
    let r = back_identity(n)?;
    let mut reflect = None;
    let mut symmetric = None;
    for a in 0..p as i64 {
        let ua = shift_power(n, a)?;
        if r.matmul(&ua)?.matmul(&r)? != shift_power(n, -a)? {
            reflect.get_or_insert(format!("a={a}"));
        }
        if !ua.matmul(&r)?.is_symmetric() {
            symmetric.get_or_insert(format!("a={a}"));
        }
    }
    Ok(vec![
        outcome(&format!("shift.reflect.p{p}"), reflect, format!("RU^aR=U^-a for all a mod {p}")),
        outcome(&format!("shift.symmetric.p{p}"), symmetric, format!("U^aR symmetric for all a mod {p}")),
    ])
}

/// Every block identity, exhaustively over the symbols and field elements.
pub fn block_checks(field: &Field) -> Result<Vec<Check>> {
    let q = field.order() as usize;
    let skeleton = Skeleton::new(field);
    let symbols = skeleton.symbols();
    let elems: Vec<FieldElement> = field.elements().collect();
    let mut checks = Vec::new();

    let pairs: Vec<(Symbol, FieldElement)> = symbols
        .iter()
        .flat_map(|&a| elems.iter().map(move |&e| (a, e)))
        .collect();
    let bad = first_failure(&pairs, |&(a, alpha)| {
        let c = build_c(field, a, alpha)?;
        let d = build_d(field, a, alpha)?;
        Ok(c.is_symmetric() && d.transpose() == build_d(field, a, field.neg(alpha)?)?)
    })?;
    checks.push(outcome(
        "blocks.transpose",
        bad.map(|t| format!("a={} alpha={}", pairs[t].0.label(), pairs[t].1.index())),
        format!("{} (a,alpha) pairs", pairs.len()),
    ));

    let quads: Vec<(Symbol, FieldElement, Symbol, FieldElement)> = pairs
        .iter()
        .flat_map(|&(a, al)| pairs.iter().map(move |&(b, be)| (a, al, b, be)))
        .collect();
    let bad = first_failure(&quads, |&(a, al, b, be)| {
        Ok(lemma_cd_product(field, a, al, b, be).is_ok())
    })?;
    checks.push(outcome(
        "blocks.product",
        bad.map(|t| {
            let (a, al, b, be) = quads[t];
            format!("a={} alpha={} b={} beta={}", a.label(), al.index(), b.label(), be.index())
        }),
        format!("{} (a,alpha,b,beta) quadruples", quads.len()),
    ));

    let j = IntMatrix::ones(q * q, q * q);
    let bad = first_failure(&symbols, |&a| {
        let mut s = IntMatrix::zeros(q * q, q * q);
        for &alpha in &elems {
            s = s.add(&build_c(field, a, alpha)?)?;
        }
        Ok(s == j)
    })?;
    checks.push(outcome(
        "blocks.sum_over_alpha",
        bad.map(|t| format!("a={}", symbols[t].label())),
        "sum_alpha C_{a,alpha} = J".into(),
    ));

    let bad = first_failure(&elems, |&alpha| {
        let mut s = IntMatrix::zeros(q * q, q * q);
        for &a in &symbols {
            s = s.add(&build_d(field, a, alpha)?)?;
        }
        Ok(s == d_sum_closed_form(field, alpha)?)
    })?;
    checks.push(outcome(
        "blocks.sum_over_a",
        bad.map(|t| format!("alpha={}", elems[t].index())),
        "sum_a D_{a,alpha} matches the closed form".into(),
    ));

    let order = skeleton.order();
    let p_mats = symbols
        .iter()
        .map(|&a| skeleton.p_matrix(a))
        .collect::<Result<Vec<_>>>()?;
    let mut cross = IntMatrix::zeros(order, order);
    for (x, px) in p_mats.iter().enumerate() {
        for (y, py) in p_mats.iter().enumerate() {
            if x != y {
                cross = cross.add(&px.matmul(py)?)?;
            }
        }
    }
    let jmi = IntMatrix::ones(order, order).sub(&IntMatrix::identity(order))?;
    checks.push(Check::new(
        "skeleton.cross_products",
        cross == jmi.scalar_mul(2 * q as i64)?,
        "sum_{a!=b} P_a P_b = 2q(J-I)",
    ));
    Ok(checks)
}

/// Structural checks on a built family.
pub fn family_checks(family: &DezaFamily) -> Result<Vec<Check>> {
    let q = family.q();
    let n = family.n();
    let expected = DezaParams::expected(q);
    let mut checks = Vec::new();

    let skeleton = family.skeleton();
    let mut phis: Vec<usize> = skeleton
        .symbols()
        .iter()
        .map(|&a| skeleton.phi(a).expect("listed"))
        .collect();
    phis.sort_unstable();
    let mut p_sum = IntMatrix::zeros(skeleton.order(), skeleton.order());
    for a in skeleton.symbols() {
        p_sum = p_sum.add(&skeleton.p_matrix(a)?)?;
    }
    let jmi = IntMatrix::ones(skeleton.order(), skeleton.order())
        .sub(&IntMatrix::identity(skeleton.order()))?;
    checks.push(Check::new(
        "skeleton.phi",
        phis == (1..=q as usize + 1).collect::<Vec<_>>() && p_sum == jmi,
        "phi is a bijection onto 1..q+1 and sum_a P_a = J-I",
    ));

    let params = par::map_range(family.members.len(), |t| verify_deza(&family.members[t]));
    let bad = params
        .iter()
        .position(|r| r.as_ref().map_or(true, |p| *p != expected));
    checks.push(outcome(
        "members.deza_params",
        bad.map(|t| match &params[t] {
            Ok(p) => format!("alpha={t} params={p} expected={expected}"),
            Err(e) => format!("alpha={t} {e}"),
        }),
        format!("params={expected} for all {} members", family.members.len()),
    ));

    let m = family.m_matrix()?;
    let i = IntMatrix::identity(n);
    let jmat = IntMatrix::ones(n, n);
    let qq = q as i64;
    let rhs = i
        .scalar_mul(2 * qq * (qq + 1))?
        .add(&m.scalar_mul(3 * qq)?)?
        .add(&jmat.sub(&i)?.sub(&m)?.scalar_mul(2 * qq)?)?;
    let m_ok = m.is_binary() && m.is_symmetric() && (0..n).all(|v| m.get(v, v) == 0);
    let bad = first_failure(&family.members, |nm| Ok(nm.matmul(nm)? == rhs))?;
    checks.push(outcome(
        "members.square_identity",
        if m_ok {
            bad.map(|t| format!("alpha={t}"))
        } else {
            Some("M is not a symmetric zero-diagonal (0,1)-matrix".into())
        },
        "N^2 = 2q(q+1)I + 3qM + 2q(J-I-M)".into(),
    ));

    let mut total = family.clique_cover();
    for nm in &family.members {
        total = total.add(nm)?;
    }
    checks.push(Check::new(
        "family.decomposition",
        total == jmat,
        "sum_alpha N_alpha + I(x)J = J",
    ));

    let k = family.members.len();
    let pairs: Vec<(usize, usize)> = (0..k).flat_map(|i| (i + 1..k).map(move |j| (i, j))).collect();
    let bad = first_failure(&pairs, |&(i, j)| {
        Ok(family.members[i].hadamard(&family.members[j])?.is_zero())
    })?;
    checks.push(outcome(
        "family.disjoint",
        bad.map(|t| format!("alpha={} beta={}", pairs[t].0, pairs[t].1)),
        format!("{} pairs edge-disjoint", pairs.len()),
    ));

    let all_pairs: Vec<(usize, usize)> = (0..k).flat_map(|i| (i..k).map(move |j| (i, j))).collect();
    let bad = first_failure(&all_pairs, |&(i, j)| {
        let prod = family.members[i].mul_transpose(&family.members[j])?;
        Ok(prod.first_not_divisible(qq).is_none())
    })?;
    checks.push(outcome(
        "family.q_divides_products",
        bad.map(|t| format!("alpha={} beta={}", all_pairs[t].0, all_pairs[t].1)),
        format!("q={q} divides every N_alpha N_beta^T"),
    ));

    let commutes = first_noncommuting_pair(family);
    let even = family.field.characteristic() == 2;
    checks.push(Check::new(
        "family.commutativity",
        commutes.is_none() == even,
        match commutes {
            None => "commutative=true".to_string(),
            Some((a, b)) => format!("commutative=false witness=({a},{b})"),
        },
    ));
    Ok(checks)
}

/// Builds the family for `field` and runs every check.
pub fn verify_suite(field: &Field) -> Result<Report> {
    let family = build_family(field)?;
    let mut report = Report::new();
    report.extend(shift_reflection_checks(field.characteristic())?);
    report.extend(block_checks(field)?);
    report.extend(family_checks(&family)?);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(desc: &str) -> Field {
        Field::parse(desc).unwrap()
    }

    fn complete(n: usize) -> IntMatrix {
        IntMatrix::ones(n, n).sub(&IntMatrix::identity(n)).unwrap()
    }

    fn petersen() -> IntMatrix {
        // vertices are 2-subsets of {0..4}; adjacent iff disjoint
        let pairs: Vec<(usize, usize)> = (0..5).flat_map(|a| (a + 1..5).map(move |b| (a, b))).collect();
        IntMatrix::from_fn(10, 10, |i, j| {
            let (a, b) = pairs[i];
            let (c, d) = pairs[j];
            (a != c && a != d && b != c && b != d) as i64
        })
    }

    /// Common neighbours by direct counting.
    fn brute_params(adj: &IntMatrix) -> (usize, i64, i64, i64) {
        let n = adj.rows();
        let deg = adj.row(0).iter().sum::<i64>();
        let mut counts = Vec::new();
        for u in 0..n {
            for v in 0..n {
                if u != v {
                    counts.push((0..n).filter(|&w| adj.get(u, w) == 1 && adj.get(v, w) == 1).count() as i64);
                }
            }
        }
        (n, deg, *counts.iter().max().unwrap(), *counts.iter().min().unwrap())
    }

    #[test]
    fn verify_deza_small_graphs() {
        for g in [complete(4), petersen()] {
            let (n, k, b, a) = brute_params(&g);
            assert_eq!(verify_deza(&g).unwrap(), DezaParams { n, k, b, a });
        }
        assert_eq!(verify_deza(&complete(4)).unwrap(), DezaParams { n: 4, k: 3, b: 2, a: 2 });
        assert_eq!(verify_deza(&petersen()).unwrap(), DezaParams { n: 10, k: 3, b: 1, a: 0 });
    }

    #[test]
    fn verify_deza_rejections() {
        assert!(matches!(verify_deza(&IntMatrix::identity(3)), Err(Error::NotDeza(_))));
        let asym = IntMatrix::from_rows(&[vec![0, 1], vec![0, 0]]).unwrap();
        assert!(matches!(verify_deza(&asym), Err(Error::NotDeza(_))));
        let two = IntMatrix::from_rows(&[vec![0, 2], vec![2, 0]]).unwrap();
        assert!(matches!(verify_deza(&two), Err(Error::NotDeza(_))));
        // path on 3 vertices is not regular
        let path = IntMatrix::from_rows(&[vec![0, 1, 0], vec![1, 0, 1], vec![0, 1, 0]]).unwrap();
        assert!(matches!(verify_deza(&path), Err(Error::NotDeza(_))));
        // K4 beside the Petersen graph: 3-regular, counts 0, 1 and 2
        let (k4, pet) = (complete(4), petersen());
        let union = IntMatrix::from_fn(14, 14, |i, j| match (i < 4, j < 4) {
            (true, true) => k4.get(i, j),
            (false, false) => pet.get(i - 4, j - 4),
            _ => 0,
        });
        assert_eq!(brute_params(&union).1, 3);
        assert!(matches!(verify_deza(&union), Err(Error::NotDeza(_))));
    }

    #[test]
    fn c_examples() {
        let f = gf("2");
        assert_eq!(build_c(&f, Symbol::X, f.zero()).unwrap(), IntMatrix::zeros(4, 4));
        let f3 = gf("3");
        for a in f3.elements() {
            let c = build_c(&f3, Symbol::Elem(a), f3.zero()).unwrap();
            assert_eq!(c.constant_row_sum().unwrap(), Some(3));
            let mut s = IntMatrix::zeros(9, 9);
            for alpha in f3.elements() {
                s = s.add(&build_c(&f3, Symbol::Elem(a), alpha).unwrap()).unwrap();
            }
            assert_eq!(s, IntMatrix::ones(9, 9));
        }
    }

    #[test]
    fn d_y_case() {
        let f = gf("3");
        for alpha in f.elements() {
            let u = shift_power(3, alpha.index() as i64).unwrap();
            assert_eq!(
                build_d(&f, Symbol::Y, alpha).unwrap(),
                u.kron(&IntMatrix::ones(3, 3)).unwrap()
            );
        }
    }

    #[test]
    fn d_sum_at_zero() {
        // α = 0: T = I so the closed form is qI⊗I + J_q⊗J_q
        let f = gf("3");
        let mut s = IntMatrix::zeros(9, 9);
        for a in Skeleton::new(&f).symbols() {
            s = s.add(&build_d(&f, a, f.zero()).unwrap()).unwrap();
        }
        let expected = IntMatrix::identity(9).scalar_mul(3).unwrap().add(&IntMatrix::ones(9, 9)).unwrap();
        assert_eq!(s, expected);
        assert_eq!(d_sum_closed_form(&f, f.zero()).unwrap(), expected);
    }

    #[test]
    fn skeleton_layout() {
        for desc in ["2", "3", "2^2", "5"] {
            let f = gf(desc);
            let s = Skeleton::new(&f);
            let q = f.order() as usize;
            assert_eq!(s.order(), 2 * q + 3);
            let row = s.first_row();
            assert_eq!(row[0], Symbol::X);
            assert_eq!(row[1], Symbol::Y);
            for i in 1..=2 * q + 2 {
                assert_eq!(row[i], row[s.order() - i]);
            }
            // L = Σ a·P_a: each P_a is the indicator of a in the circulant
            for a in s.symbols() {
                let p = s.p_matrix(a).unwrap();
                assert_eq!(p, s.indicator(a));
                assert!(p.is_symmetric());
                assert_eq!(p.constant_row_sum().unwrap(), Some(2));
            }
            assert_eq!(s.indicator(Symbol::X), IntMatrix::identity(s.order()));
        }
    }

    #[test]
    fn skeleton_sums() {
        for desc in ["2", "3"] {
            let f = gf(desc);
            let s = Skeleton::new(&f);
            let n = s.order();
            let mut sum = IntMatrix::zeros(n, n);
            for a in s.symbols() {
                let p = s.p_matrix(a).unwrap();
                sum = sum.add(&p).unwrap();
                let k = s.phi(a).unwrap() as i64;
                let sq = IntMatrix::identity(n)
                    .scalar_mul(2)
                    .unwrap()
                    .add(&s.v_power(2 * k))
                    .unwrap()
                    .add(&s.v_power(-2 * k))
                    .unwrap();
                assert_eq!(p.matmul(&p).unwrap(), sq);
            }
            assert_eq!(sum, complete(n));
        }
    }

    #[test]
    fn product_rule_examples() {
        let f = gf("3");
        let (zero, one) = (f.zero(), f.one());
        assert_eq!(
            lemma_cd_product(&f, Symbol::Elem(zero), zero, Symbol::Elem(zero), zero).unwrap(),
            CdCase::ScaledD
        );
        assert_eq!(
            lemma_cd_product(&f, Symbol::Elem(zero), zero, Symbol::Elem(one), zero).unwrap(),
            CdCase::AllOnes
        );
        let f2 = gf("2");
        assert_eq!(
            lemma_cd_product(&f2, Symbol::Y, f2.zero(), Symbol::Y, f2.one()).unwrap(),
            CdCase::ScaledD
        );
        assert!(lemma_cd_product(&f2, Symbol::X, f2.zero(), Symbol::Y, f2.one()).is_err());
    }

    #[test]
    fn family_shapes() {
        let f = gf("2");
        let fam = build_family(&f).unwrap();
        assert_eq!(fam.members().len(), 2);
        for m in fam.members() {
            assert_eq!(m.shape(), (28, 28));
            assert!(m.is_symmetric() && m.is_binary());
            assert_eq!(m.constant_row_sum().unwrap(), Some(12));
        }
        let fam3 = build_family(&gf("3")).unwrap();
        assert_eq!(fam3.n(), 81);
        assert_eq!(fam3.members()[0].constant_row_sum().unwrap(), Some(24));
        assert_eq!(
            fam3.c_block(Symbol::Y, fam3.field().one()).unwrap(),
            &build_c(fam3.field(), Symbol::Y, fam3.field().one()).unwrap()
        );
    }

    #[test]
    fn suite_passes_small_fields() {
        for desc in ["2", "3", "2^2"] {
            let report = verify_suite(&gf(desc)).unwrap();
            assert!(report.all_passed(), "{desc}:\n{report}");
        }
    }

    #[test]
    fn mixed_field_inputs_rejected() {
        let f2 = gf("2");
        let f3 = gf("3");
        assert_eq!(build_c(&f2, Symbol::Y, f3.one()).unwrap_err(), Error::FieldMismatch);
        assert_eq!(
            build_c(&f2, Symbol::Elem(f3.one()), f2.one()).unwrap_err(),
            Error::FieldMismatch
        );
    }

    /// Reading the exponent as the componentwise product `a_i c_i + α_i`
    /// instead of the field product breaks the `a != b` product rule as soon
    /// as two distinct elements share a coordinate.
    #[test]
    fn componentwise_exponent_breaks_product_rule() {
        fn componentwise_c(field: &Field, a: FieldElement, alpha: FieldElement) -> IntMatrix {
            let p = field.characteristic();
            let q = field.order() as usize;
            let av = field.to_vector(a).unwrap();
            let alv = field.to_vector(alpha).unwrap();
            let mut acc = IntMatrix::zeros(q * q, q * q);
            for c in field.elements() {
                let cv = field.to_vector(c).unwrap();
                let exp: Vec<u32> = (0..cv.len()).map(|i| (av[i] * cv[i] + alv[i]) % p).collect();
                let term = shift_tensor(p, &cv, true).kron(&shift_tensor(p, &exp, true)).unwrap();
                acc = acc.add(&term).unwrap();
            }
            acc
        }
        let f = gf("2^2");
        let j = IntMatrix::ones(16, 16);
        let mut broken = 0;
        for a in f.elements() {
            for b in f.elements().filter(|&b| b != a) {
                let ca = componentwise_c(&f, a, f.zero());
                let cb = componentwise_c(&f, b, f.zero());
                if ca.matmul(&cb).unwrap() != j {
                    broken += 1;
                }
                assert_eq!(
                    lemma_cd_product(&f, Symbol::Elem(a), f.zero(), Symbol::Elem(b), f.zero()).unwrap(),
                    CdCase::AllOnes
                );
            }
        }
        assert!(broken > 0);
        // over a prime field the two readings coincide
        let f3 = gf("3");
        for a in f3.elements() {
            for alpha in f3.elements() {
                assert_eq!(componentwise_c(&f3, a, alpha), build_c(&f3, Symbol::Elem(a), alpha).unwrap());
            }
        }
    }
}
