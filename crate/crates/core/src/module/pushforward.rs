//! Finite pushforward of a graded module along a ring map with degree scale `s`:
//! the source-ring module `N` with `N_d = M_{s d}`.

use std::collections::HashMap;

use super::graded::GradedModule;
use super::matrix::GradedMatrix;
use crate::error::{Error, Result};
use crate::gb::{self, f4, linalg, monomials_of_degree, normal_form, FreeModule, GbProblem, ModuleOrder, OrderContext, Vector};
use crate::ring::{Monomial, Poly, RingMap};

/// Presentation over the source of `map` of the pushforward of `m` (a module
/// over the target). Generators are chosen degree by degree; relations come
/// from an elimination Groebner basis. Both are exact up to source degree
/// `degree_bound`, and the Hilbert function of the result is checked against
/// `d -> dim M_{s d}` on that range.
pub fn pushforward_presentation(map: &RingMap, m: &GradedModule, degree_bound: i32) -> Result<GradedModule> {
    if m.ring() != map.target() {
        return Err(Error::MixedRings);
    }
    let v = map.validate();
    if !v.valid {
        return Err(Error::InvalidMap(v.diagnostics.join("; ")));
    }
    let src = map.source().clone();
    let tgt = map.target().clone();
    let s = map.scale() as i32;
    let nt = tgt.nvars();
    if nt + src.nvars() > Monomial::MAX_VARS {
        return Err(Error::Dimension(format!("{} variables exceed the limit", nt + src.nvars())));
    }
    let mctx = m.presentation().target_context();
    let mgb = gb::module_gb(&tgt, &mctx, m.presentation().column_vectors(&mctx), false, None)?.basis;

    let lowest = m.generator_degrees().iter().copied().min();
    let Some(lowest) = lowest else {
        return Ok(GradedModule::free(&src, Vec::new()));
    };
    let first = lowest.div_euclid(s) + i32::from(lowest.rem_euclid(s) != 0);
    let mut gens: Vec<(i32, Vector)> = Vec::new();
    let mut pushed = GradedModule::free(&src, Vec::new());
    for d in first..=degree_bound {
        let want = m.hilbert_function(s * d);
        if pushed.hilbert_function(d) == want {
            continue;
        }
        let added = new_generators(map, &mctx, &mgb, &gens, d)?;
        if added.is_empty() {
            return Err(Error::Diagnostic(format!("no new generators found in degree {d}")));
        }
        gens.extend(added.into_iter().map(|v| (d, v)));
        pushed = relations(map, m, &mctx, &gens, degree_bound)?;
        if pushed.hilbert_function(d) != want {
            return Err(Error::Diagnostic(format!("generators do not span degree {d}")));
        }
    }
    for d in first..=degree_bound {
        if pushed.hilbert_function(d) != m.hilbert_function(s * d) {
            return Err(Error::Diagnostic(format!("hilbert function mismatch in degree {d}; raise the degree bound")));
        }
    }
    Ok(pushed)
}

/// Standard monomials of `M_{s d}` completing the span of the multiples of
/// the current generators.
fn new_generators(
    map: &RingMap,
    ctx: &OrderContext,
    basis: &[Vector],
    gens: &[(i32, Vector)],
    d: i32,
) -> Result<Vec<Vector>> {
    let tgt = map.target();
    let field = tgt.field();
    let s = map.scale() as i32;
    let sw = map.source().weights();
    let mut index: HashMap<gb::Term, usize> = HashMap::new();
    let mut rows: Vec<Vec<(usize, u32)>> = Vec::new();
    let to_row = |v: &Vector, index: &mut HashMap<gb::Term, usize>| -> Vec<(usize, u32)> {
        v.terms
            .iter()
            .map(|&(t, a)| {
                let len = index.len();
                (*index.entry(t).or_insert(len), a)
            })
            .collect()
    };
    for (dj, g) in gens {
        for mu in monomials_of_degree(sw, d - dj) {
            let img = map.apply_monomial(mu);
            let mut prod = Vector::zero();
            for &(mo, a) in img.terms() {
                prod = prod.add_scaled(ctx, field, &g.mul_monomial(mo), a);
            }
            let r = normal_form(ctx, field, &prod, basis);
            if !r.is_zero() {
                rows.push(to_row(&r, &mut index));
            }
        }
    }
    // standard monomials of degree s*d
    let leads = gb::leads_by_component(ctx.module.rank(), basis);
    let mut candidates = Vec::new();
    for (c, &a) in ctx.module.twists.iter().enumerate() {
        for mo in monomials_of_degree(tgt.weights(), s * d - a) {
            if !leads[c].iter().any(|l| l.divides(mo)) {
                candidates.push(Vector { terms: vec![((mo, c as u32), 1)] });
            }
        }
    }
    for c in &candidates {
        to_row(c, &mut index);
    }
    let mut ech = linalg::Echelon::new(field, index.len());
    for r in &mut rows {
        r.sort();
        ech.insert(r);
    }
    let mut out = Vec::new();
    for c in candidates {
        let r = to_row(&c, &mut index);
        if ech.insert(&r).is_some() {
            out.push(c);
        }
    }
    Ok(out)
}

/// Relations among the generators, from an elimination basis in the
/// variables `(target, source)` with the source weights scaled by `s`.
fn relations(
    map: &RingMap,
    m: &GradedModule,
    mctx: &OrderContext,
    gens: &[(i32, Vector)],
    degree_bound: i32,
) -> Result<GradedModule> {
    let src = map.source();
    let tgt = map.target();
    let field = tgt.field();
    let s = map.scale() as i32;
    let nt = tgt.nvars();
    let r0 = mctx.module.rank();
    let mut weights: Vec<u32> = tgt.weights().to_vec();
    weights.extend(src.weights().iter().map(|w| w * map.scale()));
    let mut module = FreeModule::new(Vec::new());
    for &a in &mctx.module.twists {
        module.push(a, 1);
    }
    for (dj, _) in gens {
        module.push(s * dj, 0);
    }
    let ctx = OrderContext::new(&weights, module, ModuleOrder::elimination(0..nt));
    let mut input: Vec<Vector> = Vec::new();
    for v in m.presentation().column_vectors(mctx) {
        input.push(v.resort(&ctx));
    }
    if let Some(rel) = tgt.relation_terms() {
        for c in 0..r0 as u32 {
            input.push(Vector::from_terms(&ctx, field, rel.iter().map(|&(mo, a)| ((mo, c), a)).collect()));
        }
    }
    for (i, img) in map.images().iter().enumerate() {
        let z = Monomial::var(nt + i);
        for c in 0..r0 as u32 {
            let mut terms: Vec<_> = img.terms().iter().map(|&(mo, a)| ((mo, c), field.neg(a))).collect();
            terms.push(((z, c), 1));
            input.push(Vector::from_terms(&ctx, field, terms));
        }
    }
    for (j, (_, g)) in gens.iter().enumerate() {
        let mut terms: Vec<_> = g.terms.iter().map(|&(t, a)| (t, field.neg(a))).collect();
        terms.push(((Monomial::ONE, (r0 + j) as u32), 1));
        input.push(Vector::from_terms(&ctx, field, terms));
    }
    let problem = GbProblem::new(ctx.clone(), field, input).up_to(Some(s * degree_bound));
    let res = f4::compute(&problem)?;
    let degrees: Vec<i32> = gens.iter().map(|g| g.0).collect();
    let mut cols = Vec::new();
    let mut col_degrees = Vec::new();
    for v in &res.basis {
        if v.terms.iter().any(|((mo, c), _)| (*c as usize) < r0 || mo.restrict(0..nt) != Monomial::ONE) {
            continue;
        }
        let col: Vec<Poly> = (0..gens.len())
            .map(|j| {
                let terms = v
                    .terms
                    .iter()
                    .filter(|t| t.0 .1 as usize == r0 + j)
                    .map(|&((mo, _), a)| (mo.shift_down(nt), a))
                    .collect();
                Poly::from_terms(src, terms)
            })
            .collect();
        if col.iter().all(|p| p.is_zero()) {
            continue;
        }
        col_degrees.push(v.degree(&ctx).unwrap() / s);
        cols.push(col);
    }
    let pres = GradedMatrix::from_columns(src, degrees, col_degrees, cols)?;
    GradedModule::coker(pres).prune()
}
