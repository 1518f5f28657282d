//! Finite fields GF(p^m) with table-driven arithmetic.
//!
//! Elements are identified by their index `c0 + c1*p + ... + c_{m-1}*p^(m-1)`,
//! where `c0..c_{m-1}` are the little-endian coefficients of the element as a
//! polynomial in the adjoined root. Enumerating indices `0..q` therefore lists
//! the field in the lexicographic order of the little-endian coefficient
//! vectors, and that order is used wherever the crate indexes objects by
//! field elements.
//!
//! The coefficient vector doubles as the additive `F_p^m` view of an element:
//! addition is componentwise mod `p`, so [`Field::to_vector`] is a group
//! isomorphism onto `F_p^m`.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Largest field order for which full operation tables are built.
pub const MAX_TABLE_ORDER: u64 = 1024;

/// Built-in reduction polynomials (little-endian, monic), Conway polynomials
/// for every non-prime order up to 64.
const BUILTIN_POLYS: &[(u32, u32, &[u32])] = &[
    (2, 2, &[1, 1, 1]),
    (2, 3, &[1, 1, 0, 1]),
    (2, 4, &[1, 1, 0, 0, 1]),
    (2, 5, &[1, 0, 1, 0, 0, 1]),
    (2, 6, &[1, 1, 0, 1, 1, 0, 1]),
    (3, 2, &[2, 2, 1]),
    (3, 3, &[1, 2, 0, 1]),
    (5, 2, &[2, 4, 1]),
    (7, 2, &[3, 6, 1]),
];

/// Looks up the built-in reduction polynomial for `p^m`, if any.
pub fn builtin_poly(p: u32, m: u32) -> Option<&'static [u32]> {
    BUILTIN_POLYS
        .iter()
        .find(|(bp, bm, _)| *bp == p && *bm == m)
        .map(|(_, _, poly)| *poly)
}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// A finite field GF(p^m). Cheap to clone; all clones share the tables.
#[derive(Clone)]
pub struct Field {
    inner: Arc<FieldInner>,
}

struct FieldInner {
    p: u32,
    m: u32,
    q: u32,
    poly: Vec<u32>,
    tag: u64,
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    inv: Vec<u32>,
}

/// An element of some [`Field`], tagged with the identity of its field.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement {
    tag: u64,
    index: u32,
}

impl FieldElement {
    /// Index of the element in the field's canonical enumeration.
    pub fn index(self) -> u32 {
        self.index
    }

    pub fn is_zero(self) -> bool {
        self.index == 0
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldElement({})", self.index)
    }
}

/// Arithmetic operations accepted by [`Field::op`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ElemOp {
    Add,
    Sub,
    Mul,
    Neg,
}

impl Field {
    /// Builds GF(p^m). When `m > 1` and no polynomial is given, the built-in
    /// table is consulted.
    pub fn new(p: u32, m: u32, poly: Option<&[u32]>) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if m == 0 {
            return Err(Error::ZeroDegree);
        }
        let order = (p as u64)
            .checked_pow(m)
            .ok_or(Error::FieldTooLarge(u64::MAX))?;
        if order > MAX_TABLE_ORDER {
            return Err(Error::FieldTooLarge(order));
        }
        let poly: Vec<u32> = match poly {
            Some(c) => c.to_vec(),
            None if m == 1 => vec![0, 1],
            None => builtin_poly(p, m)
                .ok_or(Error::NoBuiltinPolynomial { p, m })?
                .to_vec(),
        };
        check_reduction_poly(p, m, &poly)?;

        let q = order as u32;
        let qu = q as usize;
        let vecs: Vec<Vec<u32>> = (0..q).map(|i| index_to_coeffs(p, m, i)).collect();
        let mut add = vec![0u32; qu * qu];
        let mut mul = vec![0u32; qu * qu];
        for a in 0..qu {
            for b in 0..qu {
                let sum: Vec<u32> = vecs[a]
                    .iter()
                    .zip(&vecs[b])
                    .map(|(x, y)| (x + y) % p)
                    .collect();
                add[a * qu + b] = coeffs_to_index(p, &sum);
                mul[a * qu + b] = coeffs_to_index(p, &poly_mulmod(p, &vecs[a], &vecs[b], &poly));
            }
        }
        let mut neg = vec![0u32; qu];
        let mut inv = vec![0u32; qu];
        for a in 0..qu {
            neg[a] = (0..q).find(|&b| add[a * qu + b as usize] == 0).unwrap_or(0);
            if a != 0 {
                inv[a] = (0..q)
                    .find(|&b| mul[a * qu + b as usize] == 1)
                    .ok_or_else(|| {
                        Error::BadPolynomial("element without inverse; polynomial reducible".into())
                    })?;
            }
        }
        let tag = field_tag(p, m, &poly);
        Ok(Field {
            inner: Arc::new(FieldInner {
                p,
                m,
                q,
                poly,
                tag,
                add,
                mul,
                neg,
                inv,
            }),
        })
    }

    /// Prime field GF(p).
    pub fn prime(p: u32) -> Result<Field> {
        Field::new(p, 1, None)
    }

    /// Parses a descriptor `"p^m"` or `"p^m/c0,c1,...,cm"`.
    pub fn parse(desc: &str) -> Result<Field> {
        let bad = || Error::BadFieldDescriptor(desc.to_string());
        let desc_trim = desc.trim();
        let (head, poly) = match desc_trim.split_once('/') {
            Some((h, c)) => {
                let coeffs = c
                    .split(',')
                    .map(|s| s.trim().parse::<u32>().map_err(|_| bad()))
                    .collect::<Result<Vec<u32>>>()?;
                (h, Some(coeffs))
            }
            None => (desc_trim, None),
        };
        let (p, m) = match head.split_once('^') {
            Some((p, m)) => (
                p.trim().parse::<u32>().map_err(|_| bad())?,
                m.trim().parse::<u32>().map_err(|_| bad())?,
            ),
            None => (head.trim().parse::<u32>().map_err(|_| bad())?, 1),
        };
        if let Some(c) = &poly {
            if c.len() != m as usize + 1 {
                return Err(bad());
            }
        }
        Field::new(p, m, poly.as_deref())
    }

    /// Canonical descriptor; the polynomial is spelled out only when it is
    /// not the default one.
    pub fn descriptor(&self) -> String {
        let i = &self.inner;
        let default = if i.m == 1 {
            Some(&[0u32, 1][..])
        } else {
            builtin_poly(i.p, i.m)
        };
        if default == Some(&i.poly[..]) {
            format!("{}^{}", i.p, i.m)
        } else {
            let c: Vec<String> = i.poly.iter().map(|c| c.to_string()).collect();
            format!("{}^{}/{}", i.p, i.m, c.join(","))
        }
    }

    pub fn characteristic(&self) -> u32 {
        self.inner.p
    }

    pub fn degree(&self) -> u32 {
        self.inner.m
    }

    pub fn order(&self) -> u32 {
        self.inner.q
    }

    /// Reduction polynomial, little-endian and monic.
    pub fn reduction_poly(&self) -> &[u32] {
        &self.inner.poly
    }

    pub fn same_field(&self, other: &Field) -> bool {
        self.inner.tag == other.inner.tag
    }

    pub fn zero(&self) -> FieldElement {
        self.wrap(0)
    }

    pub fn one(&self) -> FieldElement {
        self.wrap(1)
    }

    pub fn element(&self, index: u32) -> Result<FieldElement> {
        if index >= self.inner.q {
            return Err(Error::BadVector(format!(
                "index {index} outside field of order {}",
                self.inner.q
            )));
        }
        Ok(self.wrap(index))
    }

    /// All elements in canonical order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.inner.q).map(move |i| self.wrap(i))
    }

    /// Image of an integer under Z -> F_p, embedded in the prime subfield.
    pub fn from_int(&self, v: i64) -> FieldElement {
        self.wrap(self.reduce_int(v))
    }

    pub fn contains(&self, a: FieldElement) -> bool {
        a.tag == self.inner.tag
    }

    /// Generic binary/unary operation. `Neg` ignores `b`.
    pub fn op(&self, op: ElemOp, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        self.check(a)?;
        self.check(b)?;
        let (a, b) = (a.index, b.index);
        Ok(self.wrap(match op {
            ElemOp::Add => self.add_idx(a, b),
            ElemOp::Sub => self.sub_idx(a, b),
            ElemOp::Mul => self.mul_idx(a, b),
            ElemOp::Neg => self.neg_idx(a),
        }))
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        self.op(ElemOp::Add, a, b)
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        self.op(ElemOp::Sub, a, b)
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        self.op(ElemOp::Mul, a, b)
    }

    pub fn neg(&self, a: FieldElement) -> Result<FieldElement> {
        self.op(ElemOp::Neg, a, a)
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        self.check(a)?;
        if a.index == 0 {
            return Err(Error::ZeroInverse);
        }
        Ok(self.wrap(self.inner.inv[a.index as usize]))
    }

    pub fn pow(&self, a: FieldElement, e: u64) -> Result<FieldElement> {
        self.check(a)?;
        let mut base = a.index;
        let mut acc = 1u32;
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_idx(acc, base);
            }
            base = self.mul_idx(base, base);
            e >>= 1;
        }
        Ok(self.wrap(acc))
    }

    /// Coefficient vector (length m, little-endian) of `a`.
    pub fn to_vector(&self, a: FieldElement) -> Result<Vec<u32>> {
        self.check(a)?;
        Ok(index_to_coeffs(self.inner.p, self.inner.m, a.index))
    }

    pub fn from_vector(&self, v: &[u32]) -> Result<FieldElement> {
        if v.len() != self.inner.m as usize {
            return Err(Error::BadVector(format!(
                "expected {} components, got {}",
                self.inner.m,
                v.len()
            )));
        }
        if let Some(c) = v.iter().find(|&&c| c >= self.inner.p) {
            return Err(Error::BadVector(format!(
                "component {c} not below {}",
                self.inner.p
            )));
        }
        Ok(self.wrap(coeffs_to_index(self.inner.p, v)))
    }

    // Index-level arithmetic used by the matrix kernels. Callers guarantee
    // indices are below the field order.

    #[inline]
    pub fn add_idx(&self, a: u32, b: u32) -> u32 {
        self.inner.add[(a * self.inner.q + b) as usize]
    }

    #[inline]
    pub fn sub_idx(&self, a: u32, b: u32) -> u32 {
        self.add_idx(a, self.inner.neg[b as usize])
    }

    #[inline]
    pub fn mul_idx(&self, a: u32, b: u32) -> u32 {
        self.inner.mul[(a * self.inner.q + b) as usize]
    }

    #[inline]
    pub fn neg_idx(&self, a: u32) -> u32 {
        self.inner.neg[a as usize]
    }

    /// Inverse of a nonzero index. Returns 0 for 0.
    #[inline]
    pub fn inv_idx(&self, a: u32) -> u32 {
        self.inner.inv[a as usize]
    }

    /// Row of the multiplication table for a fixed left factor.
    #[inline]
    pub fn mul_row(&self, a: u32) -> &[u32] {
        let q = self.inner.q as usize;
        &self.inner.mul[a as usize * q..(a as usize + 1) * q]
    }

    #[inline]
    pub fn add_row(&self, a: u32) -> &[u32] {
        let q = self.inner.q as usize;
        &self.inner.add[a as usize * q..(a as usize + 1) * q]
    }

    /// Integer residue mod p as a prime-subfield index.
    #[inline]
    pub fn reduce_int(&self, v: i64) -> u32 {
        v.rem_euclid(self.inner.p as i64) as u32
    }

    fn wrap(&self, index: u32) -> FieldElement {
        FieldElement {
            tag: self.inner.tag,
            index,
        }
    }

    fn check(&self, a: FieldElement) -> Result<()> {
        if a.tag == self.inner.tag {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.descriptor())
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.descriptor())
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.same_field(other)
    }
}

impl Eq for Field {}

fn index_to_coeffs(p: u32, m: u32, mut index: u32) -> Vec<u32> {
    let mut v = Vec::with_capacity(m as usize);
    for _ in 0..m {
        v.push(index % p);
        index /= p;
    }
    v
}

fn coeffs_to_index(p: u32, c: &[u32]) -> u32 {
    c.iter().rev().fold(0, |acc, &x| acc * p + x)
}

fn field_tag(p: u32, m: u32, poly: &[u32]) -> u64 {
    // FNV-1a over the defining data
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for w in [p, m].iter().chain(poly) {
        for b in w.to_le_bytes() {
            h ^= b as u64;
            h = h.wrapping_mul(0x0000_0100_0000_01b3);
        }
    }
    h
}

/// Product of two reduced polynomials (length m each), reduced modulo the
/// monic `poly` of degree m.
fn poly_mulmod(p: u32, a: &[u32], b: &[u32], poly: &[u32]) -> Vec<u32> {
    let m = poly.len() - 1;
    let mut prod = vec![0u64; 2 * m.max(1)];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p as u64;
        }
    }
    for d in (m..prod.len()).rev() {
        let c = prod[d];
        if c == 0 {
            continue;
        }
        prod[d] = 0;
        for (k, &pc) in poly.iter().take(m).enumerate() {
            let idx = d - m + k;
            let sub = c * pc as u64 % p as u64;
            prod[idx] = (prod[idx] + p as u64 - sub) % p as u64;
        }
    }
    prod.truncate(m);
    prod.into_iter().map(|x| x as u32).collect()
}

fn check_reduction_poly(p: u32, m: u32, poly: &[u32]) -> Result<()> {
    if poly.len() != m as usize + 1 {
        return Err(Error::BadPolynomial(format!(
            "expected {} coefficients, got {}",
            m + 1,
            poly.len()
        )));
    }
    if let Some(c) = poly.iter().find(|&&c| c >= p) {
        return Err(Error::BadPolynomial(format!("coefficient {c} not below {p}")));
    }
    if poly[m as usize] != 1 {
        return Err(Error::BadPolynomial("not monic".into()));
    }
    if m == 1 {
        return Ok(());
    }
    if let Some(d) = find_monic_factor(p, poly) {
        return Err(Error::BadPolynomial(format!(
            "reducible, divisible by the degree-{d} polynomial"
        )));
    }
    Ok(())
}

/// Degree of some monic proper factor, by exhaustive trial division over
/// every monic polynomial of degree up to half the degree.
fn find_monic_factor(p: u32, poly: &[u32]) -> Option<usize> {
    let m = poly.len() - 1;
    for d in 1..=m / 2 {
        let count = (p as u64).pow(d as u32);
        for lower in 0..count {
            let mut cand: Vec<u32> = index_to_coeffs(p, d as u32, lower as u32);
            cand.push(1);
            if poly_rem_is_zero(p, poly, &cand) {
                return Some(d);
            }
        }
    }
    None
}

fn poly_rem_is_zero(p: u32, num: &[u32], den: &[u32]) -> bool {
    let mut r: Vec<u64> = num.iter().map(|&c| c as u64).collect();
    let dd = den.len() - 1;
    let p = p as u64;
    for top in (dd..r.len()).rev() {
        let c = r[top] % p;
        if c == 0 {
            continue;
        }
        for (k, &dc) in den.iter().enumerate() {
            let idx = top - dd + k;
            r[idx] = (r[idx] + p * p - c * dc as u64 % p) % p;
        }
    }
    r.iter().all(|&c| c % p == 0)
}
