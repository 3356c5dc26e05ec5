use std::sync::{Arc, OnceLock};

use super::matrix::GradedMatrix;
use crate::error::{Error, Result};
use crate::gb::{self, count_standard_monomials, linalg, monomials_of_degree, Vector};
use crate::ring::{Monomial, Ring};

/// Finitely presented graded module `coker(P)`: generators are the rows of
/// the presentation matrix `P`, relations its columns.
#[derive(Clone)]
pub struct GradedModule {
    pres: GradedMatrix,
    leads: Arc<OnceLock<Vec<Vec<Monomial>>>>,
}

impl PartialEq for GradedModule {
    fn eq(&self, other: &Self) -> bool {
        self.pres == other.pres
    }
}

impl std::fmt::Debug for GradedModule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "coker {:?}", self.pres)
    }
}

impl GradedModule {
    pub fn coker(pres: GradedMatrix) -> Self {
        GradedModule { pres, leads: Arc::new(OnceLock::new()) }
    }

    /// Free module with generators in the given degrees.
    pub fn free(ring: &Ring, degrees: Vec<i32>) -> Self {
        Self::coker(GradedMatrix::zero(ring, degrees, Vec::new()))
    }

    pub fn ring(&self) -> &Ring {
        self.pres.ring()
    }

    pub fn presentation(&self) -> &GradedMatrix {
        &self.pres
    }

    pub fn generator_degrees(&self) -> &[i32] {
        self.pres.row_degrees()
    }

    pub fn num_generators(&self) -> usize {
        self.pres.nrows()
    }

    /// `M(d)`: generator degrees decrease by `d`.
    pub fn twist(&self, d: i32) -> Self {
        Self::coker(self.pres.shift(-d))
    }

    pub fn direct_sum(&self, other: &GradedModule) -> Result<Self> {
        Ok(Self::coker(self.pres.direct_sum(&other.pres)?))
    }

    /// The same module viewed over the ambient polynomial ring: the ring
    /// relation is added to the relations of every generator.
    pub fn restrict_to_ambient(&self) -> GradedModule {
        let ring = self.ring();
        let amb = ring.ambient();
        let p = self.pres.change_ring(&amb);
        match ring.relation() {
            None => GradedModule::coker(p),
            Some(q) => {
                let d = q.degree().unwrap();
                let n = p.nrows();
                let cols = (0..n)
                    .map(|j| (0..n).map(|i| if i == j { q.clone() } else { amb.zero() }).collect())
                    .collect();
                let degs: Vec<i32> = p.row_degrees().iter().map(|r| r + d).collect();
                let qm = GradedMatrix::from_columns(&amb, p.row_degrees().to_vec(), degs, cols).unwrap();
                GradedModule::coker(p.hstack(&qm).unwrap())
            }
        }
    }

    fn leads(&self) -> &Vec<Vec<Monomial>> {
        self.leads.get_or_init(|| {
            let ctx = self.pres.target_context();
            let gens = self.pres.column_vectors(&ctx);
            let res = gb::module_gb(self.ring(), &ctx, gens, false, None).expect("homogeneous presentation");
            gb::leads_by_component(self.num_generators(), &res.basis)
        })
    }

    /// `dim_k M_d`, by counting standard monomials of a Groebner basis of the relations.
    pub fn hilbert_function(&self, d: i32) -> u64 {
        let w = self.ring().weights();
        self.leads()
            .iter()
            .zip(self.generator_degrees())
            .map(|(ls, &r)| count_standard_monomials(w, ls, d - r))
            .sum()
    }

    /// `dim_k M_d`, by rank of the degree-`d` relation matrix (no Groebner basis).
    pub fn hilbert_function_linalg(&self, d: i32) -> u64 {
        let ring = self.ring();
        let w = ring.weights();
        let rows_deg = self.generator_degrees();
        let mut index = std::collections::HashMap::new();
        let mut ncols = 0usize;
        for (i, &r) in rows_deg.iter().enumerate() {
            for m in monomials_of_degree(w, d - r) {
                index.insert((m, i as u32), ncols);
                ncols += 1;
            }
        }
        let mut rows: Vec<Vec<(usize, u32)>> = Vec::new();
        let ctx = self.pres.target_context();
        let mut gens: Vec<Vector> = self.pres.column_vectors(&ctx);
        gens.extend(gb::relation_background(ring, &ctx));
        for g in &gens {
            let Some(gd) = g.degree(&ctx) else { continue };
            for m in monomials_of_degree(w, d - gd) {
                rows.push(g.terms.iter().map(|&((n, c), a)| (index[&(n.mul(m), c)], a)).collect());
            }
        }
        let rank = linalg::rank(ring.field(), ncols, &rows);
        (ncols - rank) as u64
    }

    /// Number of generators of each degree, sorted by degree.
    pub fn generator_histogram(&self) -> Vec<(i32, usize)> {
        histogram(self.generator_degrees())
    }

    /// Minimal presentation.
    pub fn prune(&self) -> Result<GradedModule> {
        prune(self)
    }
}

pub fn histogram(degrees: &[i32]) -> Vec<(i32, usize)> {
    let mut m = std::collections::BTreeMap::new();
    for &d in degrees {
        *m.entry(d).or_insert(0usize) += 1;
    }
    m.into_iter().collect()
}

/// Indices of a minimal subset of columns generating the same submodule
/// (modulo the ring relation).
pub fn minimal_columns(m: &GradedMatrix) -> Result<Vec<usize>> {
    let ctx = m.target_context();
    let gens = m.column_vectors(&ctx);
    let res = gb::module_gb(m.ring(), &ctx, gens, false, None)?;
    Ok(res.minimal)
}

/// Generators of the module of all relations among the columns of `m`
/// (its kernel), as a matrix with rows indexed by the columns of `m`.
pub fn syzygies(m: &GradedMatrix) -> Result<GradedMatrix> {
    let ring = m.ring();
    // zero columns carry no degree information into the tracked basis
    let nonzero: Vec<usize> = (0..m.ncols()).filter(|&j| m.column(j).iter().any(|p| !p.is_zero())).collect();
    if nonzero.len() < m.ncols() {
        let inner = syzygies(&m.select_columns(&nonzero))?;
        let degs = m.col_degrees().to_vec();
        let mut cols = Vec::new();
        let mut cdeg = Vec::new();
        for (k, col) in inner.columns().iter().enumerate() {
            let mut full = vec![ring.zero(); m.ncols()];
            for (p, &j) in col.iter().zip(&nonzero) {
                full[j] = p.clone();
            }
            cols.push(full);
            cdeg.push(inner.col_degrees()[k]);
        }
        for j in (0..m.ncols()).filter(|j| !nonzero.contains(j)) {
            let mut unit = vec![ring.zero(); m.ncols()];
            unit[j] = ring.one();
            cols.push(unit);
            cdeg.push(degs[j]);
        }
        return GradedMatrix::from_columns(ring, degs, cdeg, cols);
    }
    let ctx = m.target_context();
    let gens = m.column_vectors(&ctx);
    let res = gb::module_gb(ring, &ctx, gens, true, None)?;
    let mut vs: Vec<Vector> = res.syzygies.clone();
    vs.extend(res.dependencies.iter().map(|(_, v)| v.clone()));
    syzygy_matrix(ring, m.col_degrees().to_vec(), &res.syzygy_module, &vs)
}

/// Turns syzygy vectors over the ambient ring into a matrix over `ring`
/// (reducing modulo the relation and dropping zero columns).
pub(crate) fn syzygy_matrix(
    ring: &Ring,
    row_degrees: Vec<i32>,
    module: &gb::FreeModule,
    vs: &[Vector],
) -> Result<GradedMatrix> {
    let ctx = gb::OrderContext::new(ring.weights(), module.clone(), gb::ModuleOrder::standard());
    let mut cols = Vec::new();
    let mut degs = Vec::new();
    for v in vs {
        let d = v.degree(&ctx).unwrap();
        let col: Vec<_> = (0..row_degrees.len() as u32).map(|i| v.component(ring, i)).collect();
        if col.iter().all(|p| p.is_zero()) {
            continue;
        }
        cols.push(col);
        degs.push(d);
    }
    GradedMatrix::from_columns(ring, row_degrees, degs, cols)
}

/// Submodule of the target generated by the columns, as a finitely presented module.
pub fn image(m: &GradedMatrix) -> Result<GradedModule> {
    Ok(GradedModule::coker(syzygies(m)?))
}

/// Kernel of `m` as a module.
pub fn kernel(m: &GradedMatrix) -> Result<GradedModule> {
    image(&syzygies(m)?)
}

/// `(im K + im L) / im L`, presented on the columns of `K`.
pub fn subquotient(k: &GradedMatrix, l: &GradedMatrix) -> Result<GradedModule> {
    let kl = k.hstack(l)?;
    let s = syzygies(&kl)?;
    let idx: Vec<usize> = (0..k.ncols()).collect();
    Ok(GradedModule::coker(s.select_rows(&idx)))
}

fn prune(m: &GradedModule) -> Result<GradedModule> {
    let ring = m.ring().clone();
    let f = ring.field();
    let mut rows: Vec<i32> = m.generator_degrees().to_vec();
    let mut cols: Vec<Vec<crate::ring::Poly>> = m.presentation().columns().to_vec();
    let mut cdeg: Vec<i32> = m.presentation().col_degrees().to_vec();
    loop {
        let mut hit = None;
        'search: for (j, col) in cols.iter().enumerate() {
            for (i, p) in col.iter().enumerate() {
                if let Some(c) = p.as_constant() {
                    if c != 0 {
                        hit = Some((i, j, c));
                        break 'search;
                    }
                }
            }
        }
        let Some((i, j, u)) = hit else { break };
        let pivot = cols[j].clone();
        let uinv = f.inv(u);
        for (l, col) in cols.iter_mut().enumerate() {
            if l == j || col[i].is_zero() {
                continue;
            }
            let factor = col[i].scale(uinv);
            for (k, e) in col.iter_mut().enumerate() {
                if !pivot[k].is_zero() {
                    *e = e.sub(&pivot[k].mul(&factor));
                }
            }
        }
        cols.remove(j);
        cdeg.remove(j);
        for col in cols.iter_mut() {
            col.remove(i);
        }
        rows.remove(i);
    }
    let p = GradedMatrix::from_columns(&ring, rows, cdeg, cols)?.compress();
    let keep = minimal_columns(&p)?;
    Ok(GradedModule::coker(p.select_columns(&keep)))
}

/// Error if two matrices cannot be composed or the composite is nonzero.
pub fn check_complex(d1: &GradedMatrix, d2: &GradedMatrix) -> Result<()> {
    let c = d1.compose(d2)?;
    if c.is_zero() {
        Ok(())
    } else {
        Err(Error::Diagnostic("composite of consecutive maps is nonzero".into()))
    }
}
