//! Groebner bases of homogeneous submodules of graded free modules over a
//! polynomial ring or a hypersurface ring, syzygies, ideal operations and
//! kernels of ring maps.

pub mod f4;
mod hilbert;
mod ideal;
pub mod linalg;
pub mod order;
pub mod vector;

pub use f4::{GbProblem, GbResult};
pub use hilbert::{count_standard_monomials, monomials_of_degree};
pub use ideal::{ring_map_kernel, Ideal};
pub use order::{FreeModule, ModuleOrder, OrderContext, Stage, Term};
pub use vector::{normal_form, Vector};

use crate::error::Result;
use crate::ring::{Monomial, Ring};

/// `relation * e_c` for every component: adjoined to every generating set
/// when working over a quotient ring.
pub fn relation_background(ring: &Ring, ctx: &OrderContext) -> Vec<Vector> {
    match ring.relation_terms() {
        None => Vec::new(),
        Some(rel) => (0..ctx.module.rank() as u32)
            .map(|c| Vector::from_terms(ctx, ring.field(), rel.iter().map(|&(m, a)| ((m, c), a)).collect()))
            .collect(),
    }
}

/// Groebner basis of the submodule generated by `gens` (plus the ring
/// relation in every component for quotient rings).
pub fn module_gb(ring: &Ring, ctx: &OrderContext, gens: Vec<Vector>, track: bool, max_degree: Option<i32>) -> Result<GbResult> {
    let mut p = GbProblem::new(ctx.clone(), ring.field(), gens)
        .with_background(relation_background(ring, ctx))
        .up_to(max_degree);
    if track {
        p = p.tracked();
    }
    f4::compute(&p)
}

/// Interreduced, monic, minimal Groebner basis sorted by increasing lead term.
pub fn reduce_basis(ctx: &OrderContext, field: crate::ring::Fp, basis: &[Vector]) -> Vec<Vector> {
    let mut gs: Vec<Vector> = basis.iter().filter(|v| !v.is_zero()).map(|v| v.monic(field)).collect();
    gs.sort_by(|a, b| ctx.cmp(a.lead().unwrap(), b.lead().unwrap()));
    let leads: Vec<Term> = gs.iter().map(|g| g.lead().unwrap()).collect();
    let keep: Vec<bool> = (0..gs.len())
        .map(|i| {
            !(0..gs.len()).any(|j| {
                j != i && leads[j].1 == leads[i].1 && leads[j].0.divides(leads[i].0) && (leads[j] != leads[i] || j < i)
            })
        })
        .collect();
    let gs: Vec<Vector> = gs.into_iter().zip(keep).filter(|(_, k)| *k).map(|(g, _)| g).collect();
    let mut out = Vec::with_capacity(gs.len());
    for (i, g) in gs.iter().enumerate() {
        let head = Vector { terms: vec![g.terms[0]] };
        let tail = Vector { terms: g.terms[1..].to_vec() };
        let others: Vec<Vector> =
            gs.iter().enumerate().map(|(j, h)| if j == i { Vector::zero() } else { h.clone() }).collect();
        let r = normal_form(ctx, field, &tail, &others);
        out.push(head.add(ctx, field, &r));
    }
    out
}

/// Leading terms of a basis grouped by component.
pub fn leads_by_component(rank: usize, basis: &[Vector]) -> Vec<Vec<Monomial>> {
    let mut out = vec![Vec::new(); rank];
    for v in basis {
        if let Some((m, c)) = v.lead() {
            if (c as usize) < rank {
                out[c as usize].push(m);
            }
        }
    }
    out
}
