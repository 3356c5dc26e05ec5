//! Coefficient fields, monomials, graded polynomial rings (optionally modulo a
//! single homogeneous relation), ring maps and the exterior algebra on six
//! generators.

mod exterior;
mod field;
mod map;
mod monomial;
mod parse;
mod poly;

pub use exterior::ExteriorElement;
pub use field::Fp;
pub use map::{MapValidation, RingMap};
pub use monomial::Monomial;
pub use poly::Poly;

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Monomial order on a polynomial ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    /// Graded reverse lexicographic (with respect to the variable weights).
    Grevlex,
    /// Block order eliminating the first `block` variables; grevlex in each block.
    Elimination { block: usize },
}

impl MonomialOrder {
    #[inline]
    pub fn cmp(&self, a: &Monomial, b: &Monomial, weights: &[u32]) -> Ordering {
        let n = weights.len();
        match *self {
            MonomialOrder::Grevlex => {
                let (da, db) = if weights.iter().all(|&w| w == 1) {
                    (a.degree(), b.degree())
                } else {
                    (a.weighted_degree(weights), b.weighted_degree(weights))
                };
                da.cmp(&db)
                    .then_with(|| a.revlex_cmp(b, Monomial::byte_mask(0..n)))
            }
            MonomialOrder::Elimination { block } => {
                let bw = &weights[..block];
                let da = a.weighted_degree(bw);
                let db = b.weighted_degree(bw);
                da.cmp(&db)
                    .then_with(|| a.revlex_cmp(b, Monomial::byte_mask(0..block)))
                    .then_with(|| {
                        let ra: u32 = (block..n).map(|i| weights[i] * a.exponent(i)).sum();
                        let rb: u32 = (block..n).map(|i| weights[i] * b.exponent(i)).sum();
                        ra.cmp(&rb)
                    })
                    .then_with(|| a.revlex_cmp(b, Monomial::byte_mask(block..n)))
            }
        }
    }
}

#[derive(Debug, PartialEq, Eq)]
pub(crate) struct RingData {
    pub(crate) field: Fp,
    pub(crate) vars: Vec<String>,
    pub(crate) weights: Vec<u32>,
    pub(crate) order: MonomialOrder,
    /// Normalized relation (monic, sorted descending) in the ambient ring.
    pub(crate) quotient: Option<Vec<(Monomial, u32)>>,
}

/// A graded polynomial ring `GF(p)[vars]`, possibly modulo one homogeneous
/// relation. Cheap to clone.
#[derive(Clone)]
pub struct Ring(pub(crate) Arc<RingData>);

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || *self.0 == *other.0
    }
}
impl Eq for Ring {}

impl fmt::Debug for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})[{}]", self.0.field.characteristic(), self.0.vars.join(","))?;
        if let Some(q) = &self.0.quotient {
            let p = Poly::from_raw(self.ambient(), q.clone());
            write!(f, "/({p})")?;
        }
        Ok(())
    }
}

impl Ring {
    pub fn polynomial<S: AsRef<str>>(field: Fp, vars: &[S]) -> Ring {
        assert!(vars.len() <= Monomial::MAX_VARS, "at most {} variables", Monomial::MAX_VARS);
        Ring(Arc::new(RingData {
            field,
            vars: vars.iter().map(|s| s.as_ref().to_string()).collect(),
            weights: vec![1; vars.len()],
            order: MonomialOrder::Grevlex,
            quotient: None,
        }))
    }

    /// `GF(p)[prefix0 .. prefix{n-1}]`
    pub fn with_prefix(field: Fp, prefix: &str, n: usize) -> Ring {
        let names: Vec<String> = (0..n).map(|i| format!("{prefix}{i}")).collect();
        Ring::polynomial(field, &names)
    }

    pub fn with_weights(&self, weights: &[u32]) -> Ring {
        assert_eq!(weights.len(), self.nvars());
        assert!(weights.iter().all(|&w| w > 0));
        Ring(Arc::new(RingData {
            field: self.0.field,
            vars: self.0.vars.clone(),
            weights: weights.to_vec(),
            order: self.0.order,
            quotient: self.0.quotient.clone(),
        }))
    }

    pub fn with_order(&self, order: MonomialOrder) -> Ring {
        let mut quotient = self.0.quotient.clone();
        if let Some(q) = quotient.as_mut() {
            let w = &self.0.weights;
            q.sort_by(|a, b| order.cmp(&b.0, &a.0, w));
        }
        Ring(Arc::new(RingData {
            field: self.0.field,
            vars: self.0.vars.clone(),
            weights: self.0.weights.clone(),
            order,
            quotient,
        }))
    }

    /// Quotient by a single homogeneous relation given in this (ambient) ring.
    pub fn quotient(&self, relation: &Poly) -> Result<Ring> {
        if relation.ring() != self {
            return Err(Error::MixedRings);
        }
        if self.0.quotient.is_some() {
            return Err(Error::Diagnostic("iterated quotients are not supported".into()));
        }
        if relation.is_zero() {
            return Err(Error::Diagnostic("quotient relation must be nonzero".into()));
        }
        if !relation.is_homogeneous() {
            return Err(Error::NotHomogeneous);
        }
        let rel = relation.monic();
        Ok(Ring(Arc::new(RingData {
            field: self.0.field,
            vars: self.0.vars.clone(),
            weights: self.0.weights.clone(),
            order: self.0.order,
            quotient: Some(rel.terms().to_vec()),
        })))
    }

    /// The polynomial ring this ring is a quotient of (itself if no relation).
    pub fn ambient(&self) -> Ring {
        if self.0.quotient.is_none() {
            return self.clone();
        }
        Ring(Arc::new(RingData {
            field: self.0.field,
            vars: self.0.vars.clone(),
            weights: self.0.weights.clone(),
            order: self.0.order,
            quotient: None,
        }))
    }

    pub fn field(&self) -> Fp {
        self.0.field
    }
    pub fn characteristic(&self) -> u32 {
        self.0.field.characteristic()
    }
    pub fn nvars(&self) -> usize {
        self.0.vars.len()
    }
    pub fn var_names(&self) -> &[String] {
        &self.0.vars
    }
    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.0.vars.iter().position(|v| v == name)
    }
    pub fn weights(&self) -> &[u32] {
        &self.0.weights
    }
    pub fn order(&self) -> MonomialOrder {
        self.0.order
    }
    pub fn is_standard_graded(&self) -> bool {
        self.0.weights.iter().all(|&w| w == 1)
    }

    /// The quotient relation as an element of the ambient ring.
    pub fn relation(&self) -> Option<Poly> {
        self.0
            .quotient
            .as_ref()
            .map(|q| Poly::from_raw(self.ambient(), q.clone()))
    }

    pub(crate) fn relation_terms(&self) -> Option<&[(Monomial, u32)]> {
        self.0.quotient.as_deref()
    }

    #[inline]
    pub fn cmp_monomials(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.0.order.cmp(a, b, &self.0.weights)
    }

    #[inline]
    pub fn degree_of(&self, m: &Monomial) -> i32 {
        if self.is_standard_graded() {
            m.degree() as i32
        } else {
            m.weighted_degree(&self.0.weights) as i32
        }
    }

    pub fn var(&self, i: usize) -> Poly {
        assert!(i < self.nvars());
        Poly::monomial(self, Monomial::var(i), 1)
    }

    pub fn vars(&self) -> Vec<Poly> {
        (0..self.nvars()).map(|i| self.var(i)).collect()
    }

    pub fn zero(&self) -> Poly {
        Poly::zero(self)
    }

    pub fn one(&self) -> Poly {
        Poly::constant(self, 1)
    }

    /// Parse a polynomial such as `z0^2 + z1*z2 - 3*z3`.
    pub fn parse(&self, text: &str) -> Result<Poly> {
        parse::parse_poly(self, text)
    }

    /// Number of monomials of degree `d` in the ambient ring (standard grading).
    pub fn ambient_dim(&self, d: i32) -> u64 {
        if d < 0 {
            return 0;
        }
        binomial(d as u64 + self.nvars() as u64 - 1, self.nvars() as u64 - 1)
    }

    /// Polynomial ring on the variables of `self` followed by those of `other`
    /// (with their weights), standard grevlex unless an order is supplied.
    pub fn tensor_vars(first: &Ring, second: &Ring, order: MonomialOrder) -> Ring {
        assert_eq!(first.field(), second.field());
        let mut vars = first.0.vars.clone();
        vars.extend(second.0.vars.iter().cloned());
        let mut weights = first.0.weights.clone();
        weights.extend(second.0.weights.iter().cloned());
        assert!(vars.len() <= Monomial::MAX_VARS);
        Ring(Arc::new(RingData {
            field: first.field(),
            vars,
            weights,
            order,
            quotient: None,
        }))
    }
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r: u64 = 1;
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

/// The rings of the Tango construction.
pub mod standard {
    use super::*;

    /// `GF(2)[x0..x5]`, coordinate ring of P^5.
    pub fn p5() -> Ring {
        Ring::with_prefix(Fp::gf2(), "x", 6)
    }

    /// `GF(2)[z0..z6]`, coordinate ring of P^6.
    pub fn p6() -> Ring {
        Ring::with_prefix(Fp::gf2(), "z", 7)
    }

    /// The quadric `z0^2 + z1 z2 + z3 z4 + z5 z6` in `p6()`.
    pub fn quadric() -> Poly {
        p6().parse("z0^2+z1*z2+z3*z4+z5*z6").expect("quadric")
    }

    /// Coordinate ring of the five-dimensional quadric Q5.
    pub fn q5() -> Ring {
        p6().quotient(&quadric()).expect("quadric ring")
    }

    /// `f: P^5 -> Q5` on coordinate rings, `z0 -> x0x1+x2x3+x4x5`, `z_i -> x_{i-1}^2`.
    pub fn tango_map() -> RingMap {
        let x = p5();
        let mut images = vec![x.parse("x0*x1+x2*x3+x4*x5").unwrap()];
        for i in 0..6 {
            images.push(x.var(i).pow(2));
        }
        RingMap::new(q5(), x, images, 2).expect("tango map")
    }

    /// Frobenius `z_i -> z_i^2` as an endomorphism of `ring` (characteristic 2).
    pub fn frobenius(ring: &Ring) -> RingMap {
        let images = ring.vars().into_iter().map(|v| v.pow(2)).collect();
        RingMap::new(ring.clone(), ring.clone(), images, 2).expect("frobenius")
    }

    /// Projection from `(1:0:...:0)`: `x_i -> z_{i+1}` from P^5 into Q5.
    pub fn projection() -> RingMap {
        let z = q5();
        let images = (0..6).map(|i| z.var(i + 1)).collect();
        RingMap::new(p5(), z, images, 1).expect("projection")
    }
}
