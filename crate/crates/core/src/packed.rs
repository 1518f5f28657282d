//! Bit-sliced matrices over GF(2^m) for the pairwise LCD scan.
//!
//! A row is stored as `m` bit planes; plane `s` holds coefficient `s` of
//! every entry. Scaling by a field element is an `m x m` binary map on the
//! planes, and an inner product is `m^2` AND/popcount passes.

use crate::exactmat::FqMatrix;
use crate::gf::Field;

/// Multiplication data for GF(2^m) in plane form.
pub(crate) struct PlaneField {
    m: usize,
    /// `reduce[d]`: index of `x^d`, for `d < 2m - 1`.
    reduce: Vec<u32>,
    /// `scale[c][u]`: mask over source planes feeding output plane `u`
    /// when multiplying by `c`.
    scale: Vec<Vec<u32>>,
    inv: Vec<u32>,
}

impl PlaneField {
    pub(crate) fn new(field: &Field) -> Option<Self> {
        if field.characteristic() != 2 {
            return None;
        }
        let m = field.degree() as usize;
        let q = field.order();
        let x = if m == 1 { 1 } else { 2 };
        let mut reduce = vec![1u32];
        for d in 1..(2 * m - 1).max(1) {
            reduce.push(field.mul_idx(reduce[d - 1], x));
        }
        let scale = (0..q)
            .map(|c| {
                let mut rows = vec![0u32; m];
                for s in 0..m {
                    let img = field.mul_idx(c, reduce[s]);
                    for (u, row) in rows.iter_mut().enumerate() {
                        if img >> u & 1 == 1 {
                            *row |= 1 << s;
                        }
                    }
                }
                rows
            })
            .collect();
        let inv = (0..q).map(|c| if c == 0 { 0 } else { field.inv_idx(c) }).collect();
        Some(Self { m, reduce, scale, inv })
    }
}

pub(crate) struct GramTable {
    chunks: usize,
    entry: usize,
    words: usize,
    cols: usize,
    data: Vec<u64>,
}

#[derive(Clone)]
pub(crate) struct PackedMatrix {
    rows: usize,
    cols: usize,
    m: usize,
    words: usize,
    data: Vec<u64>,
}

impl PackedMatrix {
    fn zeros(rows: usize, cols: usize, m: usize) -> Self {
        let words = cols.div_ceil(64).max(1);
        Self {
            rows,
            cols,
            m,
            words,
            data: vec![0; rows * m * words],
        }
    }

    pub(crate) fn from_fq(pf: &PlaneField, a: &FqMatrix) -> Self {
        let mut out = Self::zeros(a.rows(), a.cols(), pf.m);
        for r in 0..a.rows() {
            for (c, &v) in a.row(r).iter().enumerate() {
                out.set(r, c, v);
            }
        }
        out
    }

    #[inline]
    fn plane(&self, r: usize, s: usize) -> &[u64] {
        let start = (r * self.m + s) * self.words;
        &self.data[start..start + self.words]
    }

    fn set(&mut self, r: usize, c: usize, v: u32) {
        for s in 0..self.m {
            let idx = (r * self.m + s) * self.words + c / 64;
            let bit = 1u64 << (c % 64);
            if v >> s & 1 == 1 {
                self.data[idx] |= bit;
            } else {
                self.data[idx] &= !bit;
            }
        }
    }

    #[inline]
    fn get(&self, r: usize, c: usize) -> u32 {
        (0..self.m).fold(0, |acc, s| {
            acc | ((self.data[(r * self.m + s) * self.words + c / 64] >> (c % 64) & 1) as u32) << s
        })
    }

    #[cfg(test)]
    fn inner(pf: &PlaneField, a: &Self, ra: usize, b: &Self, rb: usize) -> u32 {
        let m = pf.m;
        let mut out = 0u32;
        for s in 0..m {
            let pa = a.plane(ra, s);
            for t in 0..m {
                let pb = b.plane(rb, t);
                let ones: u32 = pa.iter().zip(pb).map(|(x, y)| (x & y).count_ones()).sum();
                if ones & 1 == 1 {
                    out ^= pf.reduce[s + t];
                }
            }
        }
        out
    }

    /// `A B^T`.
    #[cfg(test)]
    pub(crate) fn mul_transpose(pf: &PlaneField, a: &Self, b: &Self) -> Self {
        let mut out = Self::zeros(a.rows, b.rows, pf.m);
        for r in 0..a.rows {
            for s in 0..b.rows {
                let v = Self::inner(pf, a, r, b, s);
                if v != 0 {
                    out.set(r, s, v);
                }
            }
        }
        out
    }

    /// Rows of `self^T`, tabulated eight at a time: entry `e` of chunk `c`
    /// is the sum of rows `8c + b` for the set bits `b` of `e`.
    pub(crate) fn transpose_table(pf: &PlaneField, b: &FqMatrix) -> GramTable {
        let bt = Self::from_fq(pf, &b.transpose());
        let entry = bt.m * bt.words;
        let chunks = bt.rows.div_ceil(8);
        let mut data = vec![0u64; chunks * 256 * entry];
        for c in 0..chunks {
            let base = c * 256 * entry;
            for e in 1..256usize {
                let low = e.trailing_zeros() as usize;
                let row = 8 * c + low;
                let prev = e & (e - 1);
                for k in 0..entry {
                    let src = if row < bt.rows { bt.data[row * entry + k] } else { 0 };
                    data[base + e * entry + k] = data[base + prev * entry + k] ^ src;
                }
            }
        }
        GramTable {
            chunks,
            entry,
            words: bt.words,
            cols: bt.cols,
            data,
        }
    }

    /// `self B^T` using a table built from `B`.
    pub(crate) fn mul_table(&self, pf: &PlaneField, table: &GramTable) -> Self {
        let m = self.m;
        let mut out = Self::zeros(self.rows, table.cols, m);
        let mut acc = vec![0u64; m * table.entry];
        for r in 0..self.rows {
            acc.iter_mut().for_each(|w| *w = 0);
            for s in 0..m {
                let plane = self.plane(r, s);
                let dst = &mut acc[s * table.entry..(s + 1) * table.entry];
                for c in 0..table.chunks.min(self.words * 8) {
                    let e = (plane[c / 8] >> (8 * (c % 8)) & 0xff) as usize;
                    if e != 0 {
                        let src = &table.data[(c * 256 + e) * table.entry..][..table.entry];
                        dst.iter_mut().zip(src).for_each(|(d, x)| *d ^= x);
                    }
                }
            }
            // row = Σ_s x^s acc_s
            let w = table.words;
            let row0 = r * m * w;
            for s in 0..m {
                for (u, &mask) in pf.scale[pf.reduce[s] as usize].iter().enumerate() {
                    for v in 0..m {
                        if mask >> v & 1 == 1 {
                            let src = &acc[s * table.entry + v * w..][..w];
                            let dst = &mut out.data[row0 + u * w..][..w];
                            dst.iter_mut().zip(src).for_each(|(d, x)| *d ^= x);
                        }
                    }
                }
            }
        }
        out
    }

    /// `row[dst] += c * row[src]`, from word `from` onwards.
    fn axpy_rows(&mut self, pf: &PlaneField, dst: usize, c: u32, src: usize, from: usize) {
        let (m, w) = (self.m, self.words);
        for (u, &mask) in pf.scale[c as usize].iter().enumerate() {
            for s in 0..m {
                if mask >> s & 1 == 1 {
                    let d0 = (dst * m + u) * w;
                    let s0 = (src * m + s) * w;
                    for k in from..w {
                        self.data[d0 + k] ^= self.data[s0 + k];
                    }
                }
            }
        }
    }

    /// Rank by forward elimination; consumes the matrix.
    pub(crate) fn rank(mut self, pf: &PlaneField) -> usize {
        let mut rank = 0;
        for col in 0..self.cols {
            if rank == self.rows {
                break;
            }
            let Some(piv) = (rank..self.rows).find(|&r| self.get(r, col) != 0) else {
                continue;
            };
            if piv != rank {
                let len = self.m * self.words;
                let (a, b) = (rank * len, piv * len);
                for k in 0..len {
                    self.data.swap(a + k, b + k);
                }
            }
            // entries below `col` are zero in every remaining row
            let from = col / 64;
            let pinv = pf.inv[self.get(rank, col) as usize];
            for r in rank + 1..self.rows {
                let e = self.get(r, col);
                if e != 0 {
                    let c = pf_mul(pf, e, pinv);
                    self.axpy_rows(pf, r, c, rank, from);
                }
            }
            rank += 1;
        }
        rank
    }
}

/// Product in index form via the scale maps. Char 2 has `-c = c`, so the
/// elimination factor needs no negation.
fn pf_mul(pf: &PlaneField, a: u32, b: u32) -> u32 {
    let mut out = 0u32;
    for (u, &mask) in pf.scale[a as usize].iter().enumerate() {
        if (mask & b).count_ones() & 1 == 1 {
            out |= 1 << u;
        }
    }
    out
}
