//! Dense row echelon forms over GF(p), bit-packed in characteristic 2.

use crate::ring::Fp;

#[derive(Clone, Debug)]
enum Rows {
    Bits(Vec<Vec<u64>>),
    Words(Vec<Vec<u32>>),
}

/// Incrementally built echelon basis of a subspace of `GF(p)^ncols`.
/// The pivot of a row is its first nonzero column.
#[derive(Clone, Debug)]
pub struct Echelon {
    field: Fp,
    ncols: usize,
    rows: Rows,
    pivot_row: Vec<u32>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(field: Fp, ncols: usize) -> Self {
        let rows = if field.is_gf2() { Rows::Bits(Vec::new()) } else { Rows::Words(Vec::new()) };
        Echelon { field, ncols, rows, pivot_row: vec![u32::MAX; ncols], pivots: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    /// Pivot columns in insertion order.
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.pivot_row[col] != u32::MAX
    }

    /// Reduces the sparse vector and inserts it if independent. Returns the
    /// new pivot column.
    pub fn insert(&mut self, v: &[(usize, u32)]) -> Option<usize> {
        let words = self.ncols.div_ceil(64);
        match &mut self.rows {
            Rows::Bits(rows) => {
                let mut b = vec![0u64; words];
                for &(c, a) in v {
                    if a % 2 == 1 {
                        b[c / 64] ^= 1 << (c % 64);
                    }
                }
                for w in 0..words {
                    while b[w] != 0 {
                        let c = w * 64 + b[w].trailing_zeros() as usize;
                        let p = self.pivot_row[c];
                        if p == u32::MAX {
                            self.pivot_row[c] = rows.len() as u32;
                            self.pivots.push(c);
                            rows.push(b);
                            return Some(c);
                        }
                        let r = &rows[p as usize];
                        for k in w..words {
                            b[k] ^= r[k];
                        }
                    }
                }
                None
            }
            Rows::Words(rows) => {
                let f = self.field;
                let mut d = vec![0u32; self.ncols];
                for &(c, a) in v {
                    d[c] = f.add(d[c], a % f.characteristic());
                }
                for c in 0..self.ncols {
                    if d[c] == 0 {
                        continue;
                    }
                    let p = self.pivot_row[c];
                    if p == u32::MAX {
                        let inv = f.inv(d[c]);
                        for x in d[c..].iter_mut() {
                            *x = f.mul(*x, inv);
                        }
                        self.pivot_row[c] = rows.len() as u32;
                        self.pivots.push(c);
                        rows.push(d);
                        return Some(c);
                    }
                    let r = &rows[p as usize];
                    let s = f.neg(d[c]);
                    for k in c..self.ncols {
                        if r[k] != 0 {
                            d[k] = f.add(d[k], f.mul(s, r[k]));
                        }
                    }
                }
                None
            }
        }
    }

    /// Whether the vector lies in the span (does not modify the basis).
    pub fn contains(&self, v: &[(usize, u32)]) -> bool {
        let mut copy = self.clone();
        copy.insert(v).is_none()
    }

    /// Basis rows as sparse vectors (echelon, not reduced).
    pub fn rows(&self) -> Vec<Vec<(usize, u32)>> {
        match &self.rows {
            Rows::Bits(rows) => rows
                .iter()
                .map(|b| (0..self.ncols).filter(|&c| b[c / 64] >> (c % 64) & 1 == 1).map(|c| (c, 1)).collect())
                .collect(),
            Rows::Words(rows) => rows
                .iter()
                .map(|d| d.iter().enumerate().filter(|(_, a)| **a != 0).map(|(c, a)| (c, *a)).collect())
                .collect(),
        }
    }
}

/// Rank of a list of sparse rows.
pub fn rank(field: Fp, ncols: usize, rows: &[Vec<(usize, u32)>]) -> usize {
    let mut e = Echelon::new(field, ncols);
    for r in rows {
        e.insert(r);
    }
    e.rank()
}

/// Basis of `{ x : sum_i x_i * rows[i] = 0 }`.
pub fn left_kernel(field: Fp, ncols: usize, rows: &[Vec<(usize, u32)>]) -> Vec<Vec<u32>> {
    let n = rows.len();
    let mut e = Echelon::new(field, ncols + n);
    let mut out = Vec::new();
    for (i, r) in rows.iter().enumerate() {
        let mut v = r.clone();
        v.push((ncols + i, 1));
        if let Some(p) = e.insert(&v) {
            if p >= ncols {
                // image part vanished: the tracking part is a relation
                let row = e.rows().pop().unwrap();
                let mut x = vec![0u32; n];
                for (c, a) in row {
                    if c >= ncols {
                        x[c - ncols] = a;
                    }
                }
                out.push(x);
            }
        }
    }
    out
}
