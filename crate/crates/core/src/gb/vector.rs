use std::cmp::Ordering;

use rustc_hash::FxHashMap;

use super::order::{OrderContext, Term};
use crate::ring::{Fp, Monomial, Poly, Ring};

/// Sparse element of a free module: terms sorted descending in the order of
/// the context it was built with, nonzero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Vector {
    pub terms: Vec<(Term, u32)>,
}

impl Vector {
    pub fn zero() -> Self {
        Vector { terms: Vec::new() }
    }

    /// Combine duplicate terms and sort.
    pub fn from_terms(ctx: &OrderContext, field: Fp, terms: Vec<(Term, u32)>) -> Self {
        let mut acc: FxHashMap<Term, u32> = FxHashMap::default();
        for (t, c) in terms {
            let c = c % field.characteristic();
            if c == 0 {
                continue;
            }
            let e = acc.entry(t).or_insert(0);
            *e = field.add(*e, c);
        }
        let mut terms: Vec<(Term, u32)> = acc.into_iter().filter(|(_, c)| *c != 0).collect();
        terms.sort_by(|a, b| ctx.cmp(b.0, a.0));
        Vector { terms }
    }

    /// Polynomial placed in component `comp`.
    pub fn from_poly(ctx: &OrderContext, p: &Poly, comp: u32) -> Self {
        Self::from_terms(ctx, p.ring().field(), p.terms().iter().map(|&(m, c)| ((m, comp), c)).collect())
    }

    /// Component `comp` as a polynomial in `ring`, reduced modulo its relation.
    pub fn component(&self, ring: &Ring, comp: u32) -> Poly {
        Poly::from_terms(ring, self.terms.iter().filter(|t| t.0 .1 == comp).map(|&((m, _), c)| (m, c)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead(&self) -> Option<Term> {
        self.terms.first().map(|t| t.0)
    }

    pub fn degree(&self, ctx: &OrderContext) -> Option<i32> {
        self.lead().map(|t| ctx.degree(t))
    }

    pub fn is_homogeneous(&self, ctx: &OrderContext) -> bool {
        match self.degree(ctx) {
            None => true,
            Some(d) => self.terms.iter().all(|(t, _)| ctx.degree(*t) == d),
        }
    }

    pub fn scale(&self, field: Fp, c: u32) -> Self {
        if c % field.characteristic() == 0 {
            return Vector::zero();
        }
        Vector { terms: self.terms.iter().map(|&(t, a)| (t, field.mul(a, c))).collect() }
    }

    pub fn monic(&self, field: Fp) -> Self {
        match self.terms.first() {
            None => self.clone(),
            Some(&(_, c)) if c == 1 => self.clone(),
            Some(&(_, c)) => self.scale(field, field.inv(c)),
        }
    }

    /// Multiplication by a monomial preserves any of our term orders.
    pub fn mul_monomial(&self, m: Monomial) -> Self {
        Vector { terms: self.terms.iter().map(|&((n, c), a)| ((n.mul(m), c), a)).collect() }
    }

    /// `self + c * other`
    pub fn add_scaled(&self, ctx: &OrderContext, field: Fp, other: &Vector, c: u32) -> Self {
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            let ord = if i == a.len() {
                Ordering::Less
            } else if j == b.len() {
                Ordering::Greater
            } else {
                ctx.cmp(a[i].0, b[j].0)
            };
            match ord {
                Ordering::Greater => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Less => {
                    let v = field.mul(b[j].1, c);
                    if v != 0 {
                        out.push((b[j].0, v));
                    }
                    j += 1;
                }
                Ordering::Equal => {
                    let v = field.add(a[i].1, field.mul(b[j].1, c));
                    if v != 0 {
                        out.push((a[i].0, v));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Vector { terms: out }
    }

    pub fn add(&self, ctx: &OrderContext, field: Fp, other: &Vector) -> Self {
        self.add_scaled(ctx, field, other, 1)
    }

    pub fn sub(&self, ctx: &OrderContext, field: Fp, other: &Vector) -> Self {
        self.add_scaled(ctx, field, other, field.neg(1))
    }

    /// Re-sort under another context (same module, different order).
    pub fn resort(&self, ctx: &OrderContext) -> Self {
        let mut terms = self.terms.clone();
        terms.sort_by(|a, b| ctx.cmp(b.0, a.0));
        Vector { terms }
    }

    /// Rename components through `map`; terms whose component maps to `None` are dropped.
    pub fn map_components(&self, ctx: &OrderContext, field: Fp, map: impl Fn(u32) -> Option<u32>) -> Self {
        let terms = self.terms.iter().filter_map(|&((m, c), a)| map(c).map(|c2| ((m, c2), a))).collect();
        Vector::from_terms(ctx, field, terms)
    }
}

/// Division remainder of `v` by `basis`: no term of the result is divisible
/// by a leading term of the basis. Among several divisors the first one in
/// `basis` is used.
pub fn normal_form(ctx: &OrderContext, field: Fp, v: &Vector, basis: &[Vector]) -> Vector {
    let leads: Vec<(Term, u32)> = basis.iter().filter_map(|g| g.terms.first().copied()).collect();
    let live: Vec<&Vector> = basis.iter().filter(|g| !g.is_zero()).collect();
    let mut rest = v.clone();
    let mut out: Vec<(Term, u32)> = Vec::new();
    let mut start = 0;
    while start < rest.terms.len() {
        let (t, c) = rest.terms[start];
        let hit = leads.iter().position(|&((m, comp), _)| comp == t.1 && m.divides(t.0));
        match hit {
            None => {
                out.push((t, c));
                start += 1;
            }
            Some(k) => {
                let (lt, lc) = leads[k];
                let factor = field.neg(field.mul(c, field.inv(lc)));
                let mult = live[k].mul_monomial(t.0.div(lt.0));
                let tail = Vector { terms: rest.terms[start..].to_vec() };
                rest = tail.add_scaled(ctx, field, &mult, factor);
                start = 0;
            }
        }
    }
    Vector { terms: out }
}

#[cfg(test)]
mod tests {
    use super::super::order::{FreeModule, ModuleOrder};
    use super::*;
    use crate::ring::standard;

    #[test]
    fn normal_form_of_z0_squared() {
        let z = standard::p6();
        let ctx = OrderContext::new(z.weights(), FreeModule::new(vec![0]), ModuleOrder::standard());
        let q = Vector::from_poly(&ctx, &standard::quadric(), 0);
        let v = Vector::from_poly(&ctx, &z.parse("z0^2").unwrap(), 0);
        let r = normal_form(&ctx, z.field(), &v, &[q]);
        assert_eq!(r.component(&z, 0), z.parse("z1*z2+z3*z4+z5*z6").unwrap());
    }
}
