//! Dense exact matrices over the integers and over finite fields.
//!
//! [`IntMatrix`] uses checked 64-bit arithmetic everywhere: any overflow is an
//! [`Error::Overflow`], never a wrapped value. [`FqMatrix`] stores element
//! indices of its owning [`Field`] and supports Gauss-Jordan reduction.

use std::fmt;
use std::ops::Index;

use crate::codes::Subspace;
use crate::error::{Error, Result};
use crate::gf::Field;
use crate::par;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<i64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Shape("ragged rows".into()));
        }
        Self::new(rows.len(), cols, rows.concat())
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> i64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| (i == j) as i64)
    }

    /// All-ones matrix J.
    pub fn ones(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![1; rows * cols],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn data(&self) -> &[i64] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i))
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    /// Every entry is 0 or 1.
    pub fn is_binary(&self) -> bool {
        self.data.iter().all(|&x| x == 0 || x == 1)
    }

    pub fn row_sums(&self) -> Result<Vec<i64>> {
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .try_fold(0i64, |acc, &x| acc.checked_add(x))
                    .ok_or(Error::Overflow("row sum"))
            })
            .collect()
    }

    /// Common value of all row sums, if there is one.
    pub fn constant_row_sum(&self) -> Result<Option<i64>> {
        let sums = self.row_sums()?;
        Ok(match sums.split_first() {
            Some((first, rest)) if rest.iter().all(|s| s == first) => Some(*first),
            Some(_) => None,
            None => None,
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, "add", i64::checked_add)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, "sub", i64::checked_sub)
    }

    /// Entrywise (Hadamard) product.
    pub fn hadamard(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, "hadamard", i64::checked_mul)
    }

    fn zip_with(
        &self,
        other: &Self,
        what: &'static str,
        f: fn(i64, i64) -> Option<i64>,
    ) -> Result<Self> {
        if self.shape() != other.shape() {
            return Err(Error::Shape(format!(
                "{what}: {:?} vs {:?}",
                self.shape(),
                other.shape()
            )));
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| f(a, b).ok_or(Error::Overflow(what)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn scalar_mul(&self, c: i64) -> Result<Self> {
        let data = self
            .data
            .iter()
            .map(|&a| a.checked_mul(c).ok_or(Error::Overflow("scalar_mul")))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    /// Matrix product. Rows are computed independently (in parallel with the
    /// `parallel` feature); zero entries of `self` are skipped.
    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "matmul: {:?} x {:?}",
                self.shape(),
                other.shape()
            )));
        }
        let n = other.cols;
        let rows = par::try_map_range(self.rows, |i| {
            let mut acc = vec![0i64; n];
            for (k, &a) in self.row(i).iter().enumerate() {
                if a == 0 {
                    continue;
                }
                for (dst, &b) in acc.iter_mut().zip(other.row(k)) {
                    *dst = a
                        .checked_mul(b)
                        .and_then(|t| dst.checked_add(t))
                        .ok_or(Error::Overflow("matmul"))?;
                }
            }
            Ok(acc)
        })?;
        Ok(Self {
            rows: self.rows,
            cols: n,
            data: rows.concat(),
        })
    }

    /// `self * other^T` without materialising the transpose.
    pub fn mul_transpose(&self, other: &Self) -> Result<Self> {
        self.matmul(&other.transpose())
    }

    pub fn pow(&self, e: u32) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let mut acc = Self::identity(self.rows);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.matmul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.matmul(&base)?;
            }
        }
        Ok(acc)
    }

    /// Kronecker product.
    pub fn kron(&self, other: &Self) -> Result<Self> {
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        let mut data = vec![0i64; rows * cols];
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a == 0 {
                    continue;
                }
                for k in 0..other.rows {
                    let base = (i * other.rows + k) * cols + j * other.cols;
                    for (l, &b) in other.row(k).iter().enumerate() {
                        data[base + l] = a.checked_mul(b).ok_or(Error::Overflow("kron"))?;
                    }
                }
            }
        }
        Ok(Self { rows, cols, data })
    }

    /// Entrywise image in the prime subfield of `field`.
    pub fn reduce_mod(&self, field: &Field) -> FqMatrix {
        FqMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&v| field.reduce_int(v)).collect(),
            field: field.clone(),
        }
    }

    /// First entry (row-major) not divisible by `p`.
    pub fn first_not_divisible(&self, p: i64) -> Option<(usize, usize, i64)> {
        self.data
            .iter()
            .position(|&v| v % p != 0)
            .map(|k| (k / self.cols, k % self.cols, self.data[k]))
    }

    /// Writes the matrix in the text format: `rows cols` followed by one line
    /// per row of space-separated integers.
    pub fn to_text(&self) -> String {
        let mut s = format!("{} {}\n", self.rows, self.cols);
        for i in 0..self.rows {
            let line: Vec<String> = self.row(i).iter().map(i64::to_string).collect();
            s.push_str(&line.join(" "));
            s.push('\n');
        }
        s
    }

    /// Parses the text format. Blank lines and `#` comments are ignored.
    pub fn parse(text: &str) -> Result<Self> {
        let (rows, cols, data) = parse_table(text, |tok, line| {
            tok.parse::<i64>().map_err(|_| Error::Parse {
                line,
                msg: format!("not an integer: {tok:?}"),
            })
        })?;
        Self::new(rows, cols, data)
    }
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = i64;

    fn index(&self, (i, j): (usize, usize)) -> &i64 {
        &self.data[i * self.cols + j]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows.min(8) {
            write!(f, "\n  {:?}", self.row(i))?;
        }
        if self.rows > 8 {
            write!(f, "\n  ...")?;
        }
        write!(f, "]")
    }
}

fn parse_table<T>(
    text: &str,
    parse: impl Fn(&str, usize) -> Result<T>,
) -> Result<(usize, usize, Vec<T>)> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let (hline, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        msg: "missing header".into(),
    })?;
    let dims: Vec<usize> = header
        .split_whitespace()
        .map(|t| t.parse::<usize>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| Error::Parse {
            line: hline,
            msg: "header must be \"rows cols\"".into(),
        })?;
    let [rows, cols] = dims[..] else {
        return Err(Error::Parse {
            line: hline,
            msg: "header must be \"rows cols\"".into(),
        });
    };
    let mut data = Vec::with_capacity(rows * cols);
    for _ in 0..rows {
        let (ln, l) = lines.next().ok_or(Error::Parse {
            line: hline,
            msg: format!("expected {rows} rows"),
        })?;
        let before = data.len();
        for tok in l.split_whitespace() {
            data.push(parse(tok, ln)?);
        }
        if data.len() - before != cols {
            return Err(Error::Parse {
                line: ln,
                msg: format!("expected {cols} entries, found {}", data.len() - before),
            });
        }
    }
    if let Some((ln, _)) = lines.next() {
        return Err(Error::Parse {
            line: ln,
            msg: "trailing data after matrix".into(),
        });
    }
    Ok((rows, cols, data))
}

/// Circulant matrix: row `i` is `first_row` cyclically shifted right by `i`.
pub fn circulant(first_row: &[i64]) -> Result<IntMatrix> {
    let n = first_row.len();
    if n == 0 {
        return Err(Error::EmptyDimension);
    }
    Ok(IntMatrix::from_fn(n, n, |i, j| first_row[(j + n - i) % n]))
}

/// Antidiagonal permutation matrix.
pub fn back_identity(n: usize) -> Result<IntMatrix> {
    if n == 0 {
        return Err(Error::EmptyDimension);
    }
    Ok(IntMatrix::from_fn(n, n, |i, j| (i + j == n - 1) as i64))
}

/// Cyclic shift: the circulant with first row `(0, 1, 0, ..., 0)`.
pub fn shift(n: usize) -> Result<IntMatrix> {
    shift_power(n, 1)
}

/// `shift(n)^k` for any integer `k`, taken mod `n`.
pub fn shift_power(n: usize, k: i64) -> Result<IntMatrix> {
    if n == 0 {
        return Err(Error::EmptyDimension);
    }
    let k = k.rem_euclid(n as i64) as usize;
    Ok(IntMatrix::from_fn(n, n, |i, j| ((i + k) % n == j) as i64))
}

/// Dense matrix over a finite field; entries are element indices.
#[derive(Clone, PartialEq, Eq)]
pub struct FqMatrix {
    rows: usize,
    cols: usize,
    data: Vec<u32>,
    field: Field,
}

impl std::hash::Hash for FqMatrix {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.rows.hash(state);
        self.cols.hash(state);
        self.data.hash(state);
    }
}

/// Reduced row echelon form with its pivot structure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RrefResult {
    pub rref: FqMatrix,
    pub rank: usize,
    pub pivot_cols: Vec<usize>,
}

impl FqMatrix {
    pub fn new(field: &Field, rows: usize, cols: usize, data: Vec<u32>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if let Some(v) = data.iter().find(|&&v| v >= field.order()) {
            return Err(Error::BadVector(format!("entry {v} outside {field}")));
        }
        Ok(Self {
            rows,
            cols,
            data,
            field: field.clone(),
        })
    }

    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![0; rows * cols],
            field: field.clone(),
        }
    }

    pub fn identity(field: &Field, n: usize) -> Self {
        Self::scalar_identity(field, n, 1)
    }

    /// `c * I_n` for an element index `c`.
    pub fn scalar_identity(field: &Field, n: usize, c: u32) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = c;
        }
        m
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn data(&self) -> &[u32] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    fn check_field(&self, other: &Self) -> Result<()> {
        if self.field.same_field(&other.field) {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j));
            }
        }
        Self {
            rows: self.cols,
            cols: self.rows,
            data,
            field: self.field.clone(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_field(other)?;
        if self.shape() != other.shape() {
            return Err(Error::Shape(format!(
                "add: {:?} vs {:?}",
                self.shape(),
                other.shape()
            )));
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| self.field.add_idx(a, b))
            .collect();
        Ok(Self {
            data,
            field: self.field.clone(),
            ..*self
        })
    }

    /// Multiplies every entry by the element with index `c`.
    pub fn scalar_mul(&self, c: u32) -> Self {
        let row = self.field.mul_row(c);
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&a| row[a as usize]).collect(),
            field: self.field.clone(),
        }
    }

    /// `self += c * other`, entrywise.
    pub fn add_scaled_assign(&mut self, c: u32, other: &Self) -> Result<()> {
        self.check_field(other)?;
        if self.shape() != other.shape() {
            return Err(Error::Shape("add_scaled_assign".into()));
        }
        axpy(&self.field, &mut self.data, c, &other.data);
        Ok(())
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        self.check_field(other)?;
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "matmul: {:?} x {:?}",
                self.shape(),
                other.shape()
            )));
        }
        let n = other.cols;
        let rows = par::map_range(self.rows, |i| {
            let mut acc = vec![0u32; n];
            for (k, &a) in self.row(i).iter().enumerate() {
                if a != 0 {
                    axpy(&self.field, &mut acc, a, other.row(k));
                }
            }
            acc
        });
        Ok(Self {
            rows: self.rows,
            cols: n,
            data: rows.concat(),
            field: self.field.clone(),
        })
    }

    /// `self * other^T`.
    pub fn mul_transpose(&self, other: &Self) -> Result<Self> {
        self.matmul(&other.transpose())
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &Self) -> Result<Self> {
        self.check_field(other)?;
        if self.rows != other.rows {
            return Err(Error::Shape("hstack: row counts differ".into()));
        }
        let mut data = Vec::with_capacity(self.data.len() + other.data.len());
        for i in 0..self.rows {
            data.extend_from_slice(self.row(i));
            data.extend_from_slice(other.row(i));
        }
        Ok(Self {
            rows: self.rows,
            cols: self.cols + other.cols,
            data,
            field: self.field.clone(),
        })
    }

    /// Vertical concatenation.
    pub fn vstack(&self, other: &Self) -> Result<Self> {
        self.check_field(other)?;
        if self.cols != other.cols {
            return Err(Error::Shape("vstack: column counts differ".into()));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Self {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
            field: self.field.clone(),
        })
    }

    /// The first `k` rows.
    pub fn take_rows(&self, k: usize) -> Self {
        let k = k.min(self.rows);
        Self {
            rows: k,
            cols: self.cols,
            data: self.data[..k * self.cols].to_vec(),
            field: self.field.clone(),
        }
    }

    /// Gauss-Jordan elimination. Pivots are taken column by column, using the
    /// first row at or below the current pivot row with a nonzero entry.
    pub fn rref(&self) -> RrefResult {
        let mut m = self.clone();
        let pivot_cols = m.rref_in_place();
        RrefResult {
            rank: pivot_cols.len(),
            pivot_cols,
            rref: m,
        }
    }

    fn rref_in_place(&mut self) -> Vec<usize> {
        let (rows, cols) = (self.rows, self.cols);
        let field = self.field.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(pr) = (r..rows).find(|&i| self.data[i * cols + c] != 0) else {
                continue;
            };
            if pr != r {
                for j in 0..cols {
                    self.data.swap(pr * cols + j, r * cols + j);
                }
            }
            let inv = field.inv_idx(self.data[r * cols + c]);
            if inv != 1 {
                let row = field.mul_row(inv);
                for x in &mut self.data[r * cols + c..(r + 1) * cols] {
                    *x = row[*x as usize];
                }
            }
            let (head, tail) = self.data.split_at_mut(r * cols);
            let (pivot_row, below) = tail.split_at_mut(cols);
            let pivot_row = &pivot_row[c..];
            for other in head.chunks_exact_mut(cols).chain(below.chunks_exact_mut(cols)) {
                let f = other[c];
                if f != 0 {
                    axpy(&field, &mut other[c..], field.neg_idx(f), pivot_row);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        // forward elimination only
        let mut m = self.clone();
        let (rows, cols) = (m.rows, m.cols);
        let field = self.field.clone();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(pr) = (r..rows).find(|&i| m.data[i * cols + c] != 0) else {
                continue;
            };
            if pr != r {
                for j in c..cols {
                    m.data.swap(pr * cols + j, r * cols + j);
                }
            }
            let inv = field.inv_idx(m.data[r * cols + c]);
            let (upper, below) = m.data.split_at_mut((r + 1) * cols);
            let pivot_row = &upper[r * cols + c..];
            for other in below.chunks_exact_mut(cols) {
                let f = other[c];
                if f != 0 {
                    let coef = field.neg_idx(field.mul_idx(f, inv));
                    axpy(&field, &mut other[c..], coef, pivot_row);
                }
            }
            r += 1;
        }
        r
    }

    pub fn is_nonsingular(&self) -> Result<bool> {
        if self.rows != self.cols {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        Ok(self.rank() == self.rows)
    }

    /// Canonical row space: the nonzero rows of the RREF.
    pub fn row_space(&self) -> Subspace {
        let r = self.rref();
        Subspace::from_canonical(r.rref.take_rows(r.rank))
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("{} {}\n", self.rows, self.cols);
        for i in 0..self.rows {
            let line: Vec<String> = self.row(i).iter().map(u32::to_string).collect();
            s.push_str(&line.join(" "));
            s.push('\n');
        }
        s
    }

    /// Parses the matrix text format with entries as element indices.
    pub fn parse(field: &Field, text: &str) -> Result<Self> {
        let (rows, cols, data) = parse_table(text, |tok, line| {
            tok.parse::<u32>().map_err(|_| Error::Parse {
                line,
                msg: format!("not an element index: {tok:?}"),
            })
        })?;
        Self::new(field, rows, cols, data)
    }
}

impl fmt::Debug for FqMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FqMatrix<{}> {}x{} [", self.field, self.rows, self.cols)?;
        for i in 0..self.rows.min(8) {
            write!(f, "\n  {:?}", self.row(i))?;
        }
        if self.rows > 8 {
            write!(f, "\n  ...")?;
        }
        write!(f, "]")
    }
}

/// `dst += c * src` over the field, on index slices of equal length.
#[inline]
pub(crate) fn axpy(field: &Field, dst: &mut [u32], c: u32, src: &[u32]) {
    if c == 0 {
        return;
    }
    let row = field.mul_row(c);
    if field.characteristic() == 2 {
        // indices are bit vectors of coefficients: addition is xor
        for (d, &s) in dst.iter_mut().zip(src) {
            *d ^= row[s as usize];
        }
    } else {
        for (d, &s) in dst.iter_mut().zip(src) {
            *d = field.add_idx(*d, row[s as usize]);
        }
    }
}
