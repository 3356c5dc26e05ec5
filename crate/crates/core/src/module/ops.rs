use std::collections::HashMap;

use super::graded::{syzygies, GradedModule};
use super::matrix::GradedMatrix;
use crate::error::{Error, Result};
use crate::gb::{self, linalg, monomials_of_degree, normal_form, Ideal, OrderContext, Vector};
use crate::ring::{standard, Poly, RingMap};

/// `M ⊗ N`, presented by `[phi ⊗ 1 | 1 ⊗ psi]` on the generators `e_i ⊗ f_k`
/// (index `i * rank(G_0) + k`).
pub fn tensor(m: &GradedModule, n: &GradedModule) -> Result<GradedModule> {
    if m.ring() != n.ring() {
        return Err(Error::MixedRings);
    }
    let phi = m.presentation();
    let psi = n.presentation();
    let left = phi.kronecker(&GradedMatrix::identity(m.ring(), psi.row_degrees().to_vec()))?;
    let right = GradedMatrix::identity(m.ring(), phi.row_degrees().to_vec()).kronecker(psi)?;
    Ok(GradedModule::coker(left.hstack(&right)?.compress()))
}

fn pair_index(r: usize, strict: bool) -> (Vec<(usize, usize)>, HashMap<(usize, usize), usize>) {
    let mut pairs = Vec::new();
    for i in 0..r {
        for j in if strict { i + 1 } else { i }..r {
            pairs.push((i, j));
        }
    }
    let index = pairs.iter().enumerate().map(|(k, p)| (*p, k)).collect();
    (pairs, index)
}

/// Symmetric or exterior square of a cokernel: the square of the free cover
/// modulo (relations) · (generators).
fn square(m: &GradedModule, alternating: bool) -> Result<GradedModule> {
    let ring = m.ring();
    let f = ring.field();
    let phi = m.presentation();
    let a = phi.row_degrees();
    let r = a.len();
    let (pairs, index) = pair_index(r, alternating);
    let row_degrees: Vec<i32> = pairs.iter().map(|&(i, j)| a[i] + a[j]).collect();
    let mut cols = Vec::new();
    let mut col_degrees = Vec::new();
    for (c, &b) in phi.col_degrees().iter().enumerate() {
        let col = phi.column(c);
        for l in 0..r {
            let mut out = vec![ring.zero(); pairs.len()];
            for (k, p) in col.iter().enumerate() {
                if p.is_zero() || (alternating && k == l) {
                    continue;
                }
                let (key, sign) = if k <= l { ((k, l), 1) } else { ((l, k), f.neg(1)) };
                let s = if alternating { sign } else { 1 };
                let idx = index[&key];
                out[idx] = out[idx].add(&p.scale(s));
            }
            if out.iter().any(|p| !p.is_zero()) {
                cols.push(out);
                col_degrees.push(b + a[l]);
            }
        }
    }
    Ok(GradedModule::coker(GradedMatrix::from_columns(ring, row_degrees, col_degrees, cols)?))
}

/// `Sym^2 M`.
pub fn sym2(m: &GradedModule) -> Result<GradedModule> {
    square(m, false)
}

/// `∧^2 M`.
pub fn wedge2(m: &GradedModule) -> Result<GradedModule> {
    square(m, true)
}

/// All `k x k` minors of `a`, computed over the ambient polynomial ring by
/// Laplace expansion along rows with memoised column subsets; each entry of
/// the result is indexed by `(rows, columns)` bit masks.
fn minors_ambient(a: &GradedMatrix, k: usize) -> Vec<(u64, u64, Poly)> {
    let amb = a.ring().ambient();
    let f = amb.field();
    let m = a.nrows();
    let n = a.ncols();
    let entry: Vec<Vec<Poly>> =
        (0..m).map(|i| (0..n).map(|j| a.entry(i, j).change_ring(&amb)).collect()).collect();
    let mut out = Vec::new();
    let start: HashMap<u64, Poly> = [(0u64, amb.one())].into_iter().collect();
    let mut stack: Vec<(usize, u64, HashMap<u64, Poly>)> = vec![(0, 0, start)];
    while let Some((next, rows, layer)) = stack.pop() {
        let t = rows.count_ones() as usize;
        if t == k {
            for (cols, p) in layer {
                if !p.is_zero() {
                    out.push((rows, cols, p));
                }
            }
            continue;
        }
        for r in next..m {
            if m - r < k - t {
                break;
            }
            let mut new: HashMap<u64, Poly> = HashMap::new();
            for (&s, d) in &layer {
                if d.is_zero() {
                    continue;
                }
                for c in 0..n {
                    if s >> c & 1 == 1 || entry[r][c].is_zero() {
                        continue;
                    }
                    let pos = (s & ((1u64 << c) - 1)).count_ones() as usize;
                    let sign = if (t + pos) % 2 == 0 { 1 } else { f.neg(1) };
                    let term = entry[r][c].mul(d).scale(sign);
                    let e = new.entry(s | 1 << c).or_insert_with(|| amb.zero());
                    *e = e.add(&term);
                }
            }
            stack.push((r + 1, rows | 1 << r, new));
        }
    }
    out
}

/// Ideal of the `k x k` minors, reduced modulo the ring relation.
pub fn minors_ideal(k: usize, a: &GradedMatrix) -> Result<Ideal> {
    let ring = a.ring();
    if k == 0 {
        return Ok(Ideal::unit(ring));
    }
    if k > a.nrows().min(a.ncols()) || a.nrows() > 64 || a.ncols() > 64 {
        return Err(Error::OutOfRange(format!("{k}x{k} minors of a {}x{} matrix", a.nrows(), a.ncols())));
    }
    let mut gens: Vec<Poly> = Vec::new();
    for (_, _, p) in minors_ambient(a, k) {
        let p = p.change_ring(ring);
        if !p.is_zero() && !gens.contains(&p) {
            gens.push(p);
        }
    }
    Ideal::new(ring, gens)
}

/// Determinant of a square matrix, computed over the ambient ring and
/// then reduced modulo the ring relation.
pub fn determinant(a: &GradedMatrix) -> Result<Poly> {
    if a.nrows() != a.ncols() {
        return Err(Error::Dimension(format!("{}x{} matrix is not square", a.nrows(), a.ncols())));
    }
    if a.nrows() == 0 {
        return Ok(a.ring().one());
    }
    let d = minors_ambient(a, a.nrows()).into_iter().map(|(_, _, p)| p).next();
    Ok(d.map_or_else(|| a.ring().zero(), |p| p.change_ring(a.ring())))
}

/// `phi^* M` for a ring map `phi` from the ring of `M`: the presentation is
/// mapped entrywise and degrees are multiplied by the scale of the map.
pub fn pullback_module(map: &RingMap, m: &GradedModule) -> Result<GradedModule> {
    if m.ring() != map.source() {
        return Err(Error::MixedRings);
    }
    Ok(GradedModule::coker(m.presentation().apply_map(map)?))
}

/// Pullback along the Frobenius `z_i -> z_i^2`.
pub fn frobenius_pullback(m: &GradedModule) -> Result<GradedModule> {
    if m.ring().characteristic() != 2 {
        return Err(Error::NotCharacteristicTwo);
    }
    pullback_module(&standard::frobenius(m.ring()), m)
}

/// Middle term of an extension `0 -> M -> W -> N -> 0`.
#[derive(Clone, Debug)]
pub struct Extension {
    pub module: GradedModule,
    /// The class was zero, so `W = M ⊕ N`.
    pub split: bool,
}

/// Extension of `n` by `m` given by a cocycle: a degree-zero map
/// `cocycle: F_1 -> G_0` from the relations of `n` to the generators of `m`
/// whose composite with the second syzygies of `n` lands in the relations of
/// `m`. The result is presented by `[[psi, cocycle], [0, phi]]`, generators
/// of `m` first.
pub fn extension_module(n: &GradedModule, m: &GradedModule, cocycle: &GradedMatrix) -> Result<Extension> {
    if n.ring() != m.ring() || cocycle.ring() != m.ring() {
        return Err(Error::MixedRings);
    }
    let phi = n.presentation();
    let psi = m.presentation();
    if cocycle.row_degrees() != psi.row_degrees() || cocycle.col_degrees() != phi.col_degrees() {
        return Err(Error::Dimension("cocycle must map the relations of N to the generators of M".into()));
    }
    let ring = m.ring();
    if cocycle.is_zero() {
        return Ok(Extension { module: m.direct_sum(n)?, split: true });
    }
    let image = cocycle.compose(&syzygies(phi)?)?;
    if !columns_in_image(&image, psi)? {
        return Err(Error::Diagnostic("cocycle does not vanish on the second syzygies".into()));
    }
    let top = psi.hstack(cocycle)?;
    let bottom = GradedMatrix::zero(ring, phi.row_degrees().to_vec(), psi.col_degrees().to_vec()).hstack(phi)?;
    Ok(Extension { module: GradedModule::coker(top.vstack(&bottom)?), split: false })
}

fn columns_in_image(cols: &GradedMatrix, target: &GradedMatrix) -> Result<bool> {
    let ctx = target.target_context();
    let res = gb::module_gb(target.ring(), &ctx, target.column_vectors(&ctx), false, None)?;
    let f = target.ring().field();
    Ok(cols.column_vectors(&ctx).iter().all(|v| normal_form(&ctx, f, v, &res.basis).is_zero()))
}

/// Extension of `O` by the sheaf of `ker psi`, given a vector `v` of degree
/// zero in the saturation of `im psi` (a class in `H^1` of the kernel when
/// the target of `psi` has no `H^1`): the kernel of `[psi | v]`.
pub fn section_extension(psi: &GradedMatrix, v: &[Poly]) -> Result<GradedModule> {
    let col = GradedMatrix::from_columns(psi.ring(), psi.row_degrees().to_vec(), vec![0], vec![v.to_vec()])?;
    super::graded::kernel(&psi.hstack(&col)?)?.prune()
}

/// Representatives of a basis of `(sat U / U)_e` for the submodule `U`
/// spanned by the columns of `psi`, where `sat U` is approximated by
/// `{ v : m^k v ⊂ U }`.
pub fn saturation_classes(psi: &GradedMatrix, e: i32, k: u32) -> Result<Vec<Vec<Poly>>> {
    let ring = psi.ring();
    let f = ring.field();
    let w = ring.weights();
    let ctx: OrderContext = psi.target_context();
    let res = gb::module_gb(ring, &ctx, psi.column_vectors(&ctx), false, None)?;
    let basis = &res.basis;
    let mut space: Vec<Vector> = Vec::new();
    for (c, &a) in psi.row_degrees().iter().enumerate() {
        for mono in monomials_of_degree(w, e - a) {
            space.push(Vector::from_terms(&ctx, f, vec![((mono, c as u32), 1)]));
        }
    }
    let multipliers = monomials_of_degree(w, k as i32);
    let mut index: HashMap<(usize, gb::Term), usize> = HashMap::new();
    let mut rows = Vec::new();
    for b in &space {
        let mut row = Vec::new();
        for (ai, &mu) in multipliers.iter().enumerate() {
            let r = normal_form(&ctx, f, &b.mul_monomial(mu), basis);
            for &(t, a) in &r.terms {
                let len = index.len();
                let col = *index.entry((ai, t)).or_insert(len);
                row.push((col, a));
            }
        }
        rows.push(row);
    }
    let kernel = linalg::left_kernel(f, index.len(), &rows);
    let mut classes = Vec::new();
    let mut term_index: HashMap<gb::Term, usize> = HashMap::new();
    let mut quotient_rows: Vec<Vector> = Vec::new();
    for coeffs in kernel {
        let mut v = Vector::zero();
        for (b, &c) in space.iter().zip(&coeffs) {
            if c != 0 {
                v = v.add_scaled(&ctx, f, b, c);
            }
        }
        let r = normal_form(&ctx, f, &v, basis);
        if !r.is_zero() {
            quotient_rows.push(r);
        }
    }
    let mut sparse: Vec<Vec<(usize, u32)>> = Vec::new();
    for r in &quotient_rows {
        let mut row: Vec<(usize, u32)> = r
            .terms
            .iter()
            .map(|&(t, a)| {
                let len = term_index.len();
                (*term_index.entry(t).or_insert(len), a)
            })
            .collect();
        row.sort();
        sparse.push(row);
    }
    let mut ech = linalg::Echelon::new(f, term_index.len());
    for (r, s) in quotient_rows.iter().zip(&sparse) {
        if ech.insert(s).is_some() {
            classes.push((0..psi.nrows() as u32).map(|c| r.component(ring, c)).collect());
        }
    }
    Ok(classes)
}
