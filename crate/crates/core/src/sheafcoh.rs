//! Sheaf cohomology of coherent sheaves on projective space by graded local
//! duality, and cohomology tables.
//!
//! For `M` over `S = k[x_0..x_n]` with `N = n + 1` variables,
//! `H^i_m(M)_t` is dual to `Ext^{N-i}(M, S)_{-t-N}`. Each Ext piece is the
//! homology of the dualized minimal resolution, and its dimension is read off
//! Hilbert functions of the cokernels of the transposed differentials.

use std::collections::HashMap;
use std::fmt;
use std::sync::Mutex;

use crate::error::{Error, Result};
use crate::module::{free_resolution, GradedModule};
use crate::ring::Ring;

/// Cohomology engine for one sheaf. Modules over a hypersurface ring are
/// first viewed over the ambient polynomial ring.
pub struct SheafCohomology {
    module: GradedModule,
    /// Dimension of the space the sheaf lives on (the quadric for hypersurface modules).
    dim: usize,
    /// Dimension of the ambient projective space.
    ambient_dim: usize,
    ring: Ring,
    /// Degrees of the dual free modules `F_j^*`.
    dual_degrees: Vec<Vec<i32>>,
    /// `coker(d_j^T)` in `F_j^*`; entry 0 is `F_0^*` itself.
    cokernels: Vec<GradedModule>,
    cache: Mutex<HashMap<(usize, i32), u64>>,
}

impl SheafCohomology {
    pub fn new(m: &GradedModule) -> Result<Self> {
        let on_hypersurface = m.ring().relation().is_some();
        let module = m.restrict_to_ambient();
        let ring = module.ring().clone();
        if !ring.is_standard_graded() {
            return Err(Error::Diagnostic("sheaf cohomology needs a standard graded ring".into()));
        }
        let nv = ring.nvars();
        let res = free_resolution(&module, nv + 1)?;
        if res.truncated {
            return Err(Error::Diagnostic("resolution did not terminate".into()));
        }
        let dual_degrees: Vec<Vec<i32>> = res.degrees.iter().map(|d| d.iter().map(|a| -a).collect()).collect();
        let mut cokernels = vec![GradedModule::free(&ring, dual_degrees[0].clone())];
        for d in &res.maps {
            cokernels.push(GradedModule::coker(d.transpose()));
        }
        let ambient_dim = nv - 1;
        let dim = if on_hypersurface { ambient_dim - 1 } else { ambient_dim };
        Ok(SheafCohomology { module, dim, ambient_dim, ring, dual_degrees, cokernels, cache: Mutex::new(HashMap::new()) })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    fn free_dim(&self, j: usize, e: i32) -> u64 {
        self.dual_degrees.get(j).map_or(0, |ds| ds.iter().map(|&a| self.ring.ambient_dim(e - a)).sum())
    }

    fn coker_hf(&self, j: usize, e: i32) -> u64 {
        self.cokernels.get(j).map_or(0, |c| c.hilbert_function(e))
    }

    /// `dim_k Ext^j(M, S)_e`.
    pub fn ext_dim(&self, j: usize, e: i32) -> u64 {
        if let Some(&v) = self.cache.lock().unwrap().get(&(j, e)) {
            return v;
        }
        let v = self.coker_hf(j, e) + self.coker_hf(j + 1, e) - self.free_dim(j + 1, e);
        self.cache.lock().unwrap().insert((j, e), v);
        v
    }

    /// `h^i(F(t))`; zero outside `0..=ambient_dim`.
    pub fn h(&self, i: usize, t: i32) -> u64 {
        self.h_checked(i, t).0
    }

    /// `h^i(F(t))` together with a diagnostic when `i` is out of range.
    pub fn h_checked(&self, i: usize, t: i32) -> (u64, Option<String>) {
        let n = self.ambient_dim;
        if i > n {
            return (0, Some(format!("cohomological degree {i} exceeds dimension {n}")));
        }
        let e = -t - n as i32 - 1;
        if i == 0 {
            let hf = self.module.hilbert_function(t);
            (hf + self.ext_dim(n, e) - self.ext_dim(n + 1, e), None)
        } else {
            (self.ext_dim(n - i, e), None)
        }
    }

    /// Table over the column window `[lo, hi]`, holding every twist the
    /// rendered grid reads, i.e. `lo - dim ..= hi`.
    pub fn table(&self, lo: i32, hi: i32) -> Result<CohTable> {
        if lo > hi {
            return Err(Error::OutOfRange(format!("empty window [{lo}, {hi}]")));
        }
        let n = self.dim;
        let first = lo - n as i32;
        let mut grid = vec![vec![0u64; (hi - first + 1) as usize]; n + 1];
        for (i, row) in grid.iter_mut().enumerate() {
            for (k, v) in row.iter_mut().enumerate() {
                *v = self.h(i, first + k as i32);
            }
        }
        for i in n + 1..=self.ambient_dim {
            for t in first..=hi {
                if self.h(i, t) != 0 {
                    return Err(Error::Diagnostic(format!("h^{i} nonzero at twist {t} for a sheaf on the quadric")));
                }
            }
        }
        Ok(CohTable { n, lo, hi, first, grid })
    }
}

/// `h^i(F(t))` for one sheaf.
pub fn sheaf_cohomology(m: &GradedModule, i: usize, t: i32) -> Result<u64> {
    Ok(SheafCohomology::new(m)?.h(i, t))
}

pub fn cohomology_table(m: &GradedModule, lo: i32, hi: i32) -> Result<CohTable> {
    SheafCohomology::new(m)?.table(lo, hi)
}

/// `h^i(F(t))` for `0 <= i <= n` over the twists needed to render the
/// column window `[lo, hi]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohTable {
    pub n: usize,
    pub lo: i32,
    pub hi: i32,
    first: i32,
    grid: Vec<Vec<u64>>,
}

impl CohTable {
    pub fn get(&self, i: usize, t: i32) -> u64 {
        if i > self.n || t < self.first || t > self.hi {
            return 0;
        }
        self.grid[i][(t - self.first) as usize]
    }

    /// Twists available through [`CohTable::get`].
    pub fn twists(&self) -> std::ops::RangeInclusive<i32> {
        self.first..=self.hi
    }

    pub fn columns(&self) -> usize {
        (self.hi - self.lo + 1) as usize
    }

    /// Entry at row `i`, column `c`: `h^i(F(hi - i - c))`.
    pub fn cell(&self, i: usize, c: usize) -> u64 {
        self.get(i, self.hi - i as i32 - c as i32)
    }

    pub fn totals(&self) -> Vec<u64> {
        (0..self.columns()).map(|c| (0..=self.n).map(|i| self.cell(i, c)).sum()).collect()
    }

    /// `sum_i (-1)^i h^i(F(t))`.
    pub fn euler(&self, t: i32) -> i64 {
        (0..=self.n).map(|i| if i % 2 == 0 { self.get(i, t) as i64 } else { -(self.get(i, t) as i64) }).sum()
    }

    /// Nonzero entries as `(i, t, h)`.
    pub fn nonzero(&self) -> Vec<(usize, i32, u64)> {
        let mut out = Vec::new();
        for i in 0..=self.n {
            for t in self.twists() {
                let v = self.get(i, t);
                if v != 0 {
                    out.push((i, t, v));
                }
            }
        }
        out
    }
}

/// Grid in the style of Macaulay2: a `total:` row of column sums, then rows
/// labelled `i - n - 1` for `i = 0..=n`, zero entries shown as dots.
pub fn render_table(t: &CohTable) -> String {
    let cols = t.columns();
    let cell = |v: u64| if v == 0 { ".".to_string() } else { v.to_string() };
    let mut rows: Vec<(String, Vec<String>)> = Vec::new();
    rows.push(("total:".to_string(), t.totals().into_iter().map(|v| v.to_string()).collect()));
    for i in 0..=t.n {
        let label = format!("{}:", i as i64 - t.n as i64 - 1);
        rows.push((label, (0..cols).map(|c| cell(t.cell(i, c))).collect()));
    }
    let lw = rows.iter().map(|r| r.0.len()).max().unwrap_or(0);
    let widths: Vec<usize> = (0..cols).map(|c| rows.iter().map(|r| r.1[c].len()).max().unwrap_or(1)).collect();
    let mut out = String::new();
    for (label, cells) in &rows {
        out.push_str(&format!("{label:>lw$}"));
        for (c, s) in cells.iter().enumerate() {
            out.push_str(&format!(" {s:>w$}", w = widths[c]));
        }
        out.push('\n');
    }
    out
}

impl fmt::Display for CohTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_table(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::module::GradedMatrix;
    use crate::ring::standard;

    #[test]
    fn line_bundles_on_p5() {
        let s = standard::p5();
        let o = GradedModule::free(&s, vec![0]);
        let tab = cohomology_table(&o, -6, 0).unwrap();
        for t in -11..=0 {
            let h0 = if t >= 0 { crate::ring::binomial((t + 5) as u64, 5) } else { 0 };
            assert_eq!(tab.get(0, t), h0, "t={t}");
            for i in 1..5 {
                assert_eq!(tab.get(i, t), 0);
            }
            let h5 = if t <= -6 { crate::ring::binomial((-t - 1) as u64, 5) } else { 0 };
            assert_eq!(tab.get(5, t), h5, "t={t}");
        }
        assert_eq!(sheaf_cohomology(&o.twist(1), 0, 0).unwrap(), 6);
    }

    #[test]
    fn out_of_range_degree_is_zero() {
        let s = standard::p5();
        let c = SheafCohomology::new(&GradedModule::free(&s, vec![0])).unwrap();
        let (v, diag) = c.h_checked(9, 0);
        assert_eq!(v, 0);
        assert!(diag.is_some());
    }

    #[test]
    fn quadric_structure_sheaf() {
        let q = standard::q5();
        let o = GradedModule::free(&q, vec![0]);
        let c = SheafCohomology::new(&o).unwrap();
        assert_eq!(c.dim(), 5);
        assert_eq!(c.h(0, 0), 1);
        assert_eq!(c.h(0, 1), 7);
        assert_eq!(c.h(5, -5), 1);
        for i in 1..5 {
            for t in -6..3 {
                assert_eq!(c.h(i, t), 0);
            }
        }
    }

    #[test]
    fn skyscraper_has_only_h0() {
        // the point (1:0:0) in P^2
        let s = Ring::with_prefix(crate::ring::Fp::new(2), "x", 3);
        let m = GradedMatrix::parse(&s, vec![0], &[vec!["x1", "x2"]]).unwrap();
        let pt = GradedModule::coker(m);
        let tab = cohomology_table(&pt, -3, 3).unwrap();
        for t in tab.twists() {
            assert_eq!(tab.get(0, t), 1);
            assert_eq!(tab.get(1, t), 0);
            assert_eq!(tab.get(2, t), 0);
        }
    }

    #[test]
    fn canonical_bundle_of_p2() {
        let s = Ring::with_prefix(crate::ring::Fp::new(2), "x", 3);
        let c = SheafCohomology::new(&GradedModule::free(&s, vec![3])).unwrap();
        assert_eq!(c.h(2, 0), 1);
        assert_eq!(c.h(2, 1), 0);
        assert_eq!(c.h(0, 3), 1);
    }

    #[test]
    fn render_zero_module() {
        let s = standard::p5();
        let z = GradedModule::free(&s, Vec::new());
        let tab = cohomology_table(&z, -2, 1).unwrap();
        let text = render_table(&tab);
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 7);
        assert_eq!(lines[0].split_whitespace().collect::<Vec<_>>(), vec!["total:", "0", "0", "0", "0"]);
        assert!(lines[1].starts_with("   -6:"));
    }
}
