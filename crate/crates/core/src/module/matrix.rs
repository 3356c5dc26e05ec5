use std::fmt;

use crate::error::{Error, Result};
use crate::gb::{FreeModule, ModuleOrder, OrderContext, Vector};
use crate::ring::{Poly, Ring, RingMap};

/// Matrix of homogeneous polynomials describing a degree-0 map
/// `⊕ R(-c_j) -> ⊕ R(-r_i)`: entry `(i, j)` has degree `c_j - r_i`.
/// Row and column degrees are the degrees of the basis elements.
#[derive(Clone, PartialEq, Eq)]
pub struct GradedMatrix {
    ring: Ring,
    row_degrees: Vec<i32>,
    col_degrees: Vec<i32>,
    /// `cols[j][i]` is entry `(i, j)`.
    cols: Vec<Vec<Poly>>,
}

impl GradedMatrix {
    pub fn from_columns(ring: &Ring, row_degrees: Vec<i32>, col_degrees: Vec<i32>, cols: Vec<Vec<Poly>>) -> Result<Self> {
        if cols.len() != col_degrees.len() {
            return Err(Error::Dimension(format!("{} columns but {} column degrees", cols.len(), col_degrees.len())));
        }
        let mut fixed = Vec::with_capacity(cols.len());
        for (j, col) in cols.into_iter().enumerate() {
            if col.len() != row_degrees.len() {
                return Err(Error::Dimension(format!("column {j} has {} entries, expected {}", col.len(), row_degrees.len())));
            }
            let mut c = Vec::with_capacity(col.len());
            for (i, p) in col.into_iter().enumerate() {
                let p = if p.ring() == ring {
                    p
                } else if p.ring() == &ring.ambient() {
                    p.change_ring(ring)
                } else {
                    return Err(Error::MixedRings);
                };
                if !p.is_zero() {
                    let expected = col_degrees[j] - row_degrees[i];
                    if !p.is_homogeneous() || p.degree() != Some(expected) {
                        return Err(Error::EntryDegree {
                            row: i,
                            col: j,
                            expected,
                            found: p.degree().unwrap_or(-1),
                        });
                    }
                }
                c.push(p);
            }
            fixed.push(c);
        }
        Ok(GradedMatrix { ring: ring.clone(), row_degrees, col_degrees, cols: fixed })
    }

    pub fn from_rows(ring: &Ring, row_degrees: Vec<i32>, col_degrees: Vec<i32>, rows: Vec<Vec<Poly>>) -> Result<Self> {
        let ncols = col_degrees.len();
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        let mut cols = vec![Vec::with_capacity(rows.len()); ncols];
        for r in rows {
            for (j, p) in r.into_iter().enumerate() {
                cols[j].push(p);
            }
        }
        Self::from_columns(ring, row_degrees, col_degrees, cols)
    }

    /// Column degrees inferred from the first nonzero entry of each column
    /// (zero columns get degree `default_col`).
    pub fn infer(ring: &Ring, row_degrees: Vec<i32>, rows: Vec<Vec<Poly>>, default_col: i32) -> Result<Self> {
        let ncols = rows.first().map_or(0, |r| r.len());
        let mut col_degrees = vec![default_col; ncols];
        for (j, cd) in col_degrees.iter_mut().enumerate() {
            for (i, r) in rows.iter().enumerate() {
                if let Some(p) = r.get(j) {
                    if let Some(d) = p.degree() {
                        *cd = d + row_degrees[i];
                        break;
                    }
                }
            }
        }
        Self::from_rows(ring, row_degrees, col_degrees, rows)
    }

    /// Parse rows of polynomial strings; column degrees inferred.
    pub fn parse(ring: &Ring, row_degrees: Vec<i32>, rows: &[Vec<&str>]) -> Result<Self> {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|s| ring.parse(s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Self::infer(ring, row_degrees, rows, 0)
    }

    pub fn zero(ring: &Ring, row_degrees: Vec<i32>, col_degrees: Vec<i32>) -> Self {
        let cols = vec![vec![ring.zero(); row_degrees.len()]; col_degrees.len()];
        GradedMatrix { ring: ring.clone(), row_degrees, col_degrees, cols }
    }

    pub fn identity(ring: &Ring, degrees: Vec<i32>) -> Self {
        let n = degrees.len();
        let cols = (0..n)
            .map(|j| (0..n).map(|i| if i == j { ring.one() } else { ring.zero() }).collect())
            .collect();
        GradedMatrix { ring: ring.clone(), row_degrees: degrees.clone(), col_degrees: degrees, cols }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }
    pub fn nrows(&self) -> usize {
        self.row_degrees.len()
    }
    pub fn ncols(&self) -> usize {
        self.col_degrees.len()
    }
    pub fn row_degrees(&self) -> &[i32] {
        &self.row_degrees
    }
    pub fn col_degrees(&self) -> &[i32] {
        &self.col_degrees
    }
    pub fn entry(&self, i: usize, j: usize) -> &Poly {
        &self.cols[j][i]
    }
    pub fn column(&self, j: usize) -> &[Poly] {
        &self.cols[j]
    }
    pub fn columns(&self) -> &[Vec<Poly>] {
        &self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(|c| c.iter().all(|p| p.is_zero()))
    }

    /// Order context of the target free module.
    pub fn target_context(&self) -> OrderContext {
        OrderContext::new(self.ring.weights(), FreeModule::new(self.row_degrees.clone()), ModuleOrder::standard())
    }

    pub fn column_vector(&self, ctx: &OrderContext, j: usize) -> Vector {
        let f = self.ring.field();
        let mut terms = Vec::new();
        for (i, p) in self.cols[j].iter().enumerate() {
            for &(m, c) in p.terms() {
                terms.push(((m, i as u32), c));
            }
        }
        Vector::from_terms(ctx, f, terms)
    }

    pub fn column_vectors(&self, ctx: &OrderContext) -> Vec<Vector> {
        (0..self.ncols()).map(|j| self.column_vector(ctx, j)).collect()
    }

    /// Build from vectors in the free module with the given row degrees.
    pub fn from_vectors(ring: &Ring, row_degrees: Vec<i32>, col_degrees: Vec<i32>, vs: &[Vector]) -> Result<Self> {
        let n = row_degrees.len();
        let cols = vs
            .iter()
            .map(|v| (0..n as u32).map(|i| v.component(ring, i)).collect())
            .collect();
        Self::from_columns(ring, row_degrees, col_degrees, cols)
    }

    pub fn transpose(&self) -> Self {
        let cols = (0..self.nrows()).map(|i| self.cols.iter().map(|c| c[i].clone()).collect()).collect();
        GradedMatrix {
            ring: self.ring.clone(),
            row_degrees: self.col_degrees.iter().map(|d| -d).collect(),
            col_degrees: self.row_degrees.iter().map(|d| -d).collect(),
            cols,
        }
    }

    /// `self * other`
    pub fn compose(&self, other: &GradedMatrix) -> Result<Self> {
        if self.ring != other.ring {
            return Err(Error::MixedRings);
        }
        if self.col_degrees != other.row_degrees {
            return Err(Error::Dimension("inner degrees do not match".into()));
        }
        let mut cols = Vec::with_capacity(other.ncols());
        for oc in &other.cols {
            let mut col = vec![self.ring.zero(); self.nrows()];
            for (k, b) in oc.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                for (i, slot) in col.iter_mut().enumerate() {
                    let a = &self.cols[k][i];
                    if !a.is_zero() {
                        *slot = slot.add(&a.mul(b));
                    }
                }
            }
            cols.push(col);
        }
        Ok(GradedMatrix {
            ring: self.ring.clone(),
            row_degrees: self.row_degrees.clone(),
            col_degrees: other.col_degrees.clone(),
            cols,
        })
    }

    /// Shift all degrees by `d` (the map between twisted free modules).
    pub fn shift(&self, d: i32) -> Self {
        GradedMatrix {
            ring: self.ring.clone(),
            row_degrees: self.row_degrees.iter().map(|x| x + d).collect(),
            col_degrees: self.col_degrees.iter().map(|x| x + d).collect(),
            cols: self.cols.clone(),
        }
    }

    pub fn select_columns(&self, idx: &[usize]) -> Self {
        GradedMatrix {
            ring: self.ring.clone(),
            row_degrees: self.row_degrees.clone(),
            col_degrees: idx.iter().map(|&j| self.col_degrees[j]).collect(),
            cols: idx.iter().map(|&j| self.cols[j].clone()).collect(),
        }
    }

    pub fn select_rows(&self, idx: &[usize]) -> Self {
        GradedMatrix {
            ring: self.ring.clone(),
            row_degrees: idx.iter().map(|&i| self.row_degrees[i]).collect(),
            col_degrees: self.col_degrees.clone(),
            cols: self.cols.iter().map(|c| idx.iter().map(|&i| c[i].clone()).collect()).collect(),
        }
    }

    /// `[self | other]`
    pub fn hstack(&self, other: &GradedMatrix) -> Result<Self> {
        if self.row_degrees != other.row_degrees || self.ring != other.ring {
            return Err(Error::Dimension("hstack needs equal row degrees".into()));
        }
        let mut m = self.clone();
        m.col_degrees.extend(other.col_degrees.iter().copied());
        m.cols.extend(other.cols.iter().cloned());
        Ok(m)
    }

    /// `[self ; other]`
    pub fn vstack(&self, other: &GradedMatrix) -> Result<Self> {
        if self.col_degrees != other.col_degrees || self.ring != other.ring {
            return Err(Error::Dimension("vstack needs equal column degrees".into()));
        }
        let mut m = self.clone();
        m.row_degrees.extend(other.row_degrees.iter().copied());
        for (c, o) in m.cols.iter_mut().zip(&other.cols) {
            c.extend(o.iter().cloned());
        }
        Ok(m)
    }

    /// Block diagonal sum.
    pub fn direct_sum(&self, other: &GradedMatrix) -> Result<Self> {
        if self.ring != other.ring {
            return Err(Error::MixedRings);
        }
        let top = self.hstack(&GradedMatrix::zero(&self.ring, self.row_degrees.clone(), other.col_degrees.clone()))?;
        let bottom = GradedMatrix::zero(&self.ring, other.row_degrees.clone(), self.col_degrees.clone()).hstack(other)?;
        top.vstack(&bottom)
    }

    /// Kronecker product; row `(i, k)` and column `(j, l)` at index `i * n + k`.
    pub fn kronecker(&self, other: &GradedMatrix) -> Result<Self> {
        if self.ring != other.ring {
            return Err(Error::MixedRings);
        }
        let mut row_degrees = Vec::new();
        for a in &self.row_degrees {
            for b in &other.row_degrees {
                row_degrees.push(a + b);
            }
        }
        let mut col_degrees = Vec::new();
        let mut cols = Vec::new();
        for (j, a) in self.col_degrees.iter().enumerate() {
            for (l, b) in other.col_degrees.iter().enumerate() {
                col_degrees.push(a + b);
                let mut col = Vec::with_capacity(row_degrees.len());
                for i in 0..self.nrows() {
                    for k in 0..other.nrows() {
                        let x = &self.cols[j][i];
                        let y = &other.cols[l][k];
                        col.push(if x.is_zero() || y.is_zero() { self.ring.zero() } else { x.mul(y) });
                    }
                }
                cols.push(col);
            }
        }
        Ok(GradedMatrix { ring: self.ring.clone(), row_degrees, col_degrees, cols })
    }

    /// Entrywise image under a ring map; degrees are multiplied by its scale.
    pub fn apply_map(&self, map: &RingMap) -> Result<Self> {
        let s = map.scale() as i32;
        let cols = self
            .cols
            .iter()
            .map(|c| c.iter().map(|p| map.apply(p)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        GradedMatrix::from_columns(
            map.target(),
            self.row_degrees.iter().map(|d| d * s).collect(),
            self.col_degrees.iter().map(|d| d * s).collect(),
            cols,
        )
    }

    /// Same entries over another ring with the same variables (e.g. the
    /// ambient polynomial ring, or a quotient).
    pub fn change_ring(&self, ring: &Ring) -> Self {
        GradedMatrix {
            ring: ring.clone(),
            row_degrees: self.row_degrees.clone(),
            col_degrees: self.col_degrees.clone(),
            cols: self.cols.iter().map(|c| c.iter().map(|p| p.change_ring(ring)).collect()).collect(),
        }
    }

    /// Drop zero columns.
    pub fn compress(&self) -> Self {
        let idx: Vec<usize> = (0..self.ncols()).filter(|&j| self.cols[j].iter().any(|p| !p.is_zero())).collect();
        self.select_columns(&idx)
    }
}

impl fmt::Debug for GradedMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "GradedMatrix rows {:?} cols {:?}", self.row_degrees, self.col_degrees)?;
        for i in 0..self.nrows() {
            let row: Vec<String> = self.cols.iter().map(|c| c[i].to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl fmt::Display for GradedMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}
