use std::collections::BTreeMap;
use std::fmt;

use super::graded::{histogram, syzygy_matrix, GradedModule};
use super::matrix::GradedMatrix;
use crate::error::{Error, Result};
use crate::gb::{self, Vector};
use crate::numeric::QPoly;
use crate::ring::Ring;

/// Graded Betti numbers `beta[i][d]`: the number of generators of degree `d`
/// in step `i` of a minimal free resolution.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct BettiTable {
    pub steps: Vec<BTreeMap<i32, usize>>,
}

impl BettiTable {
    pub fn from_degrees(degrees: &[Vec<i32>]) -> Self {
        BettiTable { steps: degrees.iter().map(|d| histogram(d).into_iter().collect()).collect() }
    }

    pub fn rank(&self, i: usize) -> usize {
        self.steps.get(i).map_or(0, |s| s.values().sum())
    }

    pub fn get(&self, i: usize, d: i32) -> usize {
        self.steps.get(i).and_then(|s| s.get(&d)).copied().unwrap_or(0)
    }

    /// Step `i` as `(twist, multiplicity)` pairs, twist `-d`, largest twist first.
    pub fn twists(&self, i: usize) -> Vec<(i32, usize)> {
        self.steps.get(i).map_or(Vec::new(), |s| s.iter().map(|(d, n)| (-d, *n)).collect())
    }

    /// Compact form such as `14@-2 7@-3 | 76@-4 | ...`.
    pub fn summary(&self) -> String {
        self.steps
            .iter()
            .enumerate()
            .map(|(i, _)| {
                self.twists(i).iter().map(|(t, n)| format!("{n}@{t}")).collect::<Vec<_>>().join(" ")
            })
            .collect::<Vec<_>>()
            .join(" | ")
    }
}

impl fmt::Display for BettiTable {
    /// Grid with one column per step and one row per `degree - step`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut lo = i32::MAX;
        let mut hi = i32::MIN;
        for (i, s) in self.steps.iter().enumerate() {
            for &d in s.keys() {
                lo = lo.min(d - i as i32);
                hi = hi.max(d - i as i32);
            }
        }
        let n = self.steps.len();
        let head: Vec<String> = (0..n).map(|i| i.to_string()).collect();
        let width = 4;
        write!(f, "{:>7}", "")?;
        for h in &head {
            write!(f, "{h:>width$}")?;
        }
        writeln!(f)?;
        write!(f, "{:>7}", "total:")?;
        for i in 0..n {
            write!(f, "{:>width$}", self.rank(i))?;
        }
        writeln!(f)?;
        if lo <= hi {
            for r in lo..=hi {
                write!(f, "{:>7}", format!("{r}:"))?;
                for i in 0..n {
                    let v = self.get(i, r + i as i32);
                    let s = if v == 0 { ".".to_string() } else { v.to_string() };
                    write!(f, "{s:>width$}")?;
                }
                writeln!(f)?;
            }
        }
        Ok(())
    }
}

/// Minimal graded free resolution `F_0 <- F_1 <- ...` (possibly truncated).
#[derive(Clone, Debug)]
pub struct Resolution {
    pub ring: Ring,
    /// `maps[i]` is `d_{i+1}: F_{i+1} -> F_i`.
    pub maps: Vec<GradedMatrix>,
    pub degrees: Vec<Vec<i32>>,
    /// True if the length cap stopped the computation before the kernel vanished.
    pub truncated: bool,
}

impl Resolution {
    pub fn betti(&self) -> BettiTable {
        BettiTable::from_degrees(&self.degrees)
    }

    pub fn length(&self) -> usize {
        self.maps.len()
    }

    /// `d_i d_{i+1} = 0` for every consecutive pair.
    pub fn is_complex(&self) -> bool {
        self.maps.windows(2).all(|w| w[0].compose(&w[1]).map(|c| c.is_zero()).unwrap_or(false))
    }

    /// No map has a nonzero constant entry.
    pub fn is_minimal(&self) -> bool {
        self.maps.iter().all(|m| {
            m.columns().iter().all(|c| c.iter().all(|p| p.is_zero() || p.as_constant().is_none()))
        })
    }
}

/// Minimal free resolution of `m`, with at most `length_cap` maps.
pub fn free_resolution(m: &GradedModule, length_cap: usize) -> Result<Resolution> {
    let pruned = m.prune()?;
    let ring = pruned.ring().clone();
    let f0: Vec<i32> = pruned.generator_degrees().to_vec();
    let mut maps: Vec<GradedMatrix> = Vec::new();
    let mut degrees = vec![f0];
    let mut candidates = pruned.presentation().clone();
    let mut truncated = false;
    while candidates.ncols() > 0 {
        if maps.len() == length_cap {
            truncated = true;
            break;
        }
        let ctx = candidates.target_context();
        let gens = candidates.column_vectors(&ctx);
        let res = gb::module_gb(&ring, &ctx, gens, true, None)?;
        let d = candidates.select_columns(&res.minimal);
        // syzygies only involve the minimal columns; renumber them
        let mut pos = vec![u32::MAX; candidates.ncols()];
        for (k, &j) in res.minimal.iter().enumerate() {
            pos[j] = k as u32;
        }
        let module = gb::FreeModule::new(d.col_degrees().to_vec());
        let vs: Vec<Vector> = res
            .syzygies
            .iter()
            .map(|v| Vector { terms: v.terms.iter().map(|&((mo, c), a)| ((mo, pos[c as usize]), a)).collect() })
            .collect();
        let sctx = gb::OrderContext::new(ring.weights(), module.clone(), gb::ModuleOrder::standard());
        let vs: Vec<Vector> = vs.iter().map(|v| v.resort(&sctx)).collect();
        degrees.push(d.col_degrees().to_vec());
        candidates = syzygy_matrix(&ring, d.col_degrees().to_vec(), &module, &vs)?;
        maps.push(d);
    }
    Ok(Resolution { ring, maps, degrees, truncated })
}

/// Hilbert polynomial of `m`, read off a free resolution over the ambient
/// polynomial ring.
pub fn hilbert_polynomial(m: &GradedModule) -> Result<QPoly> {
    if !m.ring().is_standard_graded() {
        return Err(Error::Diagnostic("hilbert polynomial needs a standard graded ring".into()));
    }
    let m = m.restrict_to_ambient();
    let n = m.ring().nvars();
    let res = free_resolution(&m, n + 1)?;
    let mut p = QPoly::zero();
    for (i, degs) in res.degrees.iter().enumerate() {
        for &a in degs {
            let term = QPoly::binomial(n as i64 - 1 - a as i64, n - 1);
            p = if i % 2 == 0 { p.add(&term) } else { p.sub(&term) };
        }
    }
    Ok(p)
}
