use super::graded::{kernel, subquotient, syzygies, GradedModule};
use super::matrix::GradedMatrix;
use super::resolution::free_resolution;
use crate::error::{Error, Result};

/// `Hom(M, R)`, the kernel of the transposed presentation.
pub fn dual(m: &GradedModule) -> Result<GradedModule> {
    kernel(&m.presentation().transpose())?.prune()
}

/// `Hom(Hom(M, R), R)`; for a vector bundle on a variety of dimension at
/// least two this is the module of all twisted global sections.
pub fn double_dual(m: &GradedModule) -> Result<GradedModule> {
    dual(&dual(m)?)
}

fn identity_kron_left(n_degrees: &[i32], psi: &GradedMatrix) -> Result<GradedMatrix> {
    GradedMatrix::identity(psi.ring(), n_degrees.to_vec()).kronecker(psi)
}

/// `Hom(M, N)` as a subquotient of `Hom(F_0, G_0)` for presentations
/// `F_1 -> F_0 -> M` and `G_1 -> G_0 -> N`.
pub fn hom(m: &GradedModule, n: &GradedModule) -> Result<GradedModule> {
    if m.ring() != n.ring() {
        return Err(Error::MixedRings);
    }
    let phi = m.presentation();
    let psi = n.presentation();
    let f0_dual: Vec<i32> = phi.row_degrees().iter().map(|d| -d).collect();
    let f1_dual: Vec<i32> = phi.col_degrees().iter().map(|d| -d).collect();
    let g0 = GradedMatrix::identity(m.ring(), psi.row_degrees().to_vec());
    let l = identity_kron_left(&f0_dual, psi)?;
    let induced = phi.transpose().kronecker(&g0)?;
    let k = lift_kernel(&induced, &identity_kron_left(&f1_dual, psi)?)?;
    subquotient(&k, &l)?.prune()
}

/// Columns generating `{ x : a x in im(b) }`.
fn lift_kernel(a: &GradedMatrix, b: &GradedMatrix) -> Result<GradedMatrix> {
    let s = syzygies(&a.hstack(b)?)?;
    let idx: Vec<usize> = (0..a.ncols()).collect();
    Ok(s.select_rows(&idx))
}

/// `Ext^i(M, N)` over a polynomial ring, from a free resolution of `M`.
/// Modules over a hypersurface ring are first viewed over the ambient ring.
pub fn ext(i: usize, m: &GradedModule, n: &GradedModule) -> Result<GradedModule> {
    if m.ring() != n.ring() {
        return Err(Error::MixedRings);
    }
    let (m, n) = if m.ring().relation().is_some() {
        (m.restrict_to_ambient(), n.restrict_to_ambient())
    } else {
        (m.clone(), n.clone())
    };
    let ring = m.ring().clone();
    if i > ring.nvars() {
        return Ok(GradedModule::free(&ring, Vec::new()));
    }
    if i == 0 {
        return hom(&m, &n);
    }
    let res = free_resolution(&m, ring.nvars() + 1)?;
    let psi = n.presentation();
    let g0 = GradedMatrix::identity(&ring, psi.row_degrees().to_vec());
    let fi_dual: Vec<i32> = match res.degrees.get(i) {
        Some(d) => d.iter().map(|x| -x).collect(),
        None => return Ok(GradedModule::free(&ring, Vec::new())),
    };
    let k = match res.maps.get(i) {
        Some(d_next) => {
            let next_dual: Vec<i32> = res.degrees[i + 1].iter().map(|x| -x).collect();
            lift_kernel(&d_next.transpose().kronecker(&g0)?, &identity_kron_left(&next_dual, psi)?)?
        }
        None => {
            let n0 = fi_dual.len() * psi.nrows();
            let degs: Vec<i32> = fi_dual.iter().flat_map(|a| psi.row_degrees().iter().map(move |b| a + b)).collect();
            debug_assert_eq!(degs.len(), n0);
            GradedMatrix::identity(&ring, degs)
        }
    };
    let prev = res.maps[i - 1].transpose().kronecker(&g0)?;
    let l = prev.hstack(&identity_kron_left(&fi_dual, psi)?)?;
    subquotient(&k, &l)?.prune()
}
