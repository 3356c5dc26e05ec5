use std::cmp::Ordering;
use std::fmt;

use rustc_hash::FxHashMap;

use super::{Monomial, Ring};
use crate::error::{Error, Result};

/// Sparse polynomial over a [`Ring`]; terms sorted descending in the ring's
/// monomial order, no zero coefficients, always in normal form modulo the
/// ring's relation.
#[derive(Clone)]
pub struct Poly {
    ring: Ring,
    terms: Vec<(Monomial, u32)>,
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.terms == other.terms
    }
}
impl Eq for Poly {}

impl Poly {
    pub fn zero(ring: &Ring) -> Poly {
        Poly { ring: ring.clone(), terms: Vec::new() }
    }

    pub fn constant(ring: &Ring, c: i64) -> Poly {
        let c = ring.field().reduce(c);
        Poly::from_terms(ring, vec![(Monomial::ONE, c)])
    }

    pub fn monomial(ring: &Ring, m: Monomial, c: u32) -> Poly {
        Poly::from_terms(ring, vec![(m, c)])
    }

    /// Terms already sorted, reduced and nonzero.
    pub(crate) fn from_raw(ring: Ring, terms: Vec<(Monomial, u32)>) -> Poly {
        Poly { ring, terms }
    }

    /// Build from arbitrary terms: combines duplicates, drops zeros, reduces
    /// modulo the ring relation and sorts.
    pub fn from_terms(ring: &Ring, terms: Vec<(Monomial, u32)>) -> Poly {
        let f = ring.field();
        let mut acc: FxHashMap<Monomial, u32> = FxHashMap::default();
        for (m, c) in terms {
            let c = c % f.characteristic();
            if c == 0 {
                continue;
            }
            let e = acc.entry(m).or_insert(0);
            *e = f.add(*e, c);
        }
        Self::finish(ring, acc)
    }

    fn finish(ring: &Ring, mut acc: FxHashMap<Monomial, u32>) -> Poly {
        if let Some(rel) = ring.relation_terms() {
            reduce_by_relation(ring, &mut acc, rel);
        }
        let mut terms: Vec<(Monomial, u32)> = acc.into_iter().filter(|(_, c)| *c != 0).collect();
        terms.sort_by(|a, b| ring.cmp_monomials(&b.0, &a.0));
        Poly { ring: ring.clone(), terms }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn terms(&self) -> &[(Monomial, u32)] {
        &self.terms
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

    pub fn leading(&self) -> Option<(Monomial, u32)> {
        self.terms.first().copied()
    }

    /// Degree of the leading term (`None` for zero).
    pub fn degree(&self) -> Option<i32> {
        self.terms.first().map(|(m, _)| self.ring.degree_of(m))
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some((m0, _)) => {
                let d = self.ring.degree_of(m0);
                self.terms.iter().all(|(m, _)| self.ring.degree_of(m) == d)
            }
        }
    }

    /// Constant term if the polynomial is a constant.
    pub fn as_constant(&self) -> Option<u32> {
        match self.terms.as_slice() {
            [] => Some(0),
            [(m, c)] if m.is_one() => Some(*c),
            _ => None,
        }
    }

    pub fn monic(&self) -> Poly {
        match self.terms.first() {
            None => self.clone(),
            Some(&(_, c)) => self.scale(self.ring.field().inv(c)),
        }
    }

    pub fn scale(&self, c: u32) -> Poly {
        let f = self.ring.field();
        let c = c % f.characteristic();
        if c == 0 {
            return Poly::zero(&self.ring);
        }
        Poly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|&(m, a)| (m, f.mul(a, c))).collect(),
        }
    }

    fn check_ring(&self, other: &Poly) -> Result<()> {
        if self.ring != other.ring {
            Err(Error::MixedRings)
        } else {
            Ok(())
        }
    }

    pub fn try_add(&self, other: &Poly) -> Result<Poly> {
        self.check_ring(other)?;
        Ok(self.add_unchecked(other, false))
    }

    pub fn try_sub(&self, other: &Poly) -> Result<Poly> {
        self.check_ring(other)?;
        Ok(self.add_unchecked(other, true))
    }

    pub fn try_mul(&self, other: &Poly) -> Result<Poly> {
        self.check_ring(other)?;
        Ok(self.mul_unchecked(other))
    }

    /// Panicking variants for internal use where the rings are known to agree.
    pub fn add(&self, other: &Poly) -> Poly {
        self.try_add(other).expect("mixed rings")
    }
    pub fn sub(&self, other: &Poly) -> Poly {
        self.try_sub(other).expect("mixed rings")
    }
    pub fn mul(&self, other: &Poly) -> Poly {
        self.try_mul(other).expect("mixed rings")
    }

    pub fn neg(&self) -> Poly {
        let f = self.ring.field();
        Poly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|&(m, c)| (m, f.neg(c))).collect(),
        }
    }

    fn add_unchecked(&self, other: &Poly, subtract: bool) -> Poly {
        let f = self.ring.field();
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() || j < b.len() {
            let ord = if i == a.len() {
                Ordering::Less
            } else if j == b.len() {
                Ordering::Greater
            } else {
                self.ring.cmp_monomials(&a[i].0, &b[j].0)
            };
            match ord {
                Ordering::Greater => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Less => {
                    let c = if subtract { f.neg(b[j].1) } else { b[j].1 };
                    out.push((b[j].0, c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if subtract { f.sub(a[i].1, b[j].1) } else { f.add(a[i].1, b[j].1) };
                    if c != 0 {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Poly { ring: self.ring.clone(), terms: out }
    }

    fn mul_unchecked(&self, other: &Poly) -> Poly {
        let f = self.ring.field();
        let mut acc: FxHashMap<Monomial, u32> =
            FxHashMap::with_capacity_and_hasher(self.terms.len() * other.terms.len(), Default::default());
        for &(m, a) in &self.terms {
            for &(n, b) in &other.terms {
                let e = acc.entry(m.mul(n)).or_insert(0);
                *e = f.add(*e, f.mul(a, b));
            }
        }
        Self::finish(&self.ring, acc)
    }

    pub fn mul_monomial(&self, m: Monomial, c: u32) -> Poly {
        let f = self.ring.field();
        let terms = self.terms.iter().map(|&(n, a)| (n.mul(m), f.mul(a, c))).collect();
        if self.ring.relation_terms().is_some() {
            Poly::from_terms(&self.ring, terms)
        } else {
            Poly { ring: self.ring.clone(), terms: terms.into_iter().filter(|t| t.1 != 0).collect() }
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut r = Poly::constant(&self.ring, 1);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                r = r.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        r
    }

    /// Reinterpret in another ring with the same number of variables and field
    /// (e.g. quotient ring <-> ambient). Reduces modulo the target relation.
    pub fn change_ring(&self, ring: &Ring) -> Poly {
        assert_eq!(ring.nvars(), self.ring.nvars());
        assert_eq!(ring.field(), self.ring.field());
        Poly::from_terms(ring, self.terms.clone())
    }

    /// Substitute variables by a permutation.
    pub fn permute_vars(&self, perm: &[usize]) -> Poly {
        Poly::from_terms(&self.ring, self.terms.iter().map(|&(m, c)| (m.permute(perm), c)).collect())
    }

    /// Divide by a monomial that divides every term.
    pub fn div_monomial(&self, m: Monomial) -> Option<Poly> {
        if !self.terms.iter().all(|(n, _)| m.divides(*n)) {
            return None;
        }
        Some(Poly::from_terms(&self.ring, self.terms.iter().map(|&(n, c)| (n.div(m), c)).collect()))
    }

    /// Largest monomial dividing every term.
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.iter();
        match it.next() {
            None => Monomial::ONE,
            Some(&(m, _)) => it.fold(m, |g, &(n, _)| g.gcd(n)),
        }
    }
}

/// Rewrite every term divisible by the leading monomial of `rel` until none is.
fn reduce_by_relation(ring: &Ring, acc: &mut FxHashMap<Monomial, u32>, rel: &[(Monomial, u32)]) {
    let f = ring.field();
    let (lead, lc) = rel[0];
    debug_assert_eq!(lc, 1);
    let mut stack: Vec<Monomial> = acc.keys().copied().filter(|m| lead.divides(*m)).collect();
    while let Some(m) = stack.pop() {
        let c = match acc.get(&m) {
            Some(&c) if c != 0 => c,
            _ => continue,
        };
        acc.remove(&m);
        let q = m.div(lead);
        for &(t, tc) in &rel[1..] {
            let n = q.mul(t);
            let e = acc.entry(n).or_insert(0);
            *e = f.sub(*e, f.mul(c, tc));
            if *e != 0 && lead.divides(n) {
                stack.push(n);
            }
        }
    }
    acc.retain(|_, c| *c != 0);
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let names = self.ring.var_names();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, "+")?;
            }
            let mut factors = Vec::new();
            if *c != 1 || m.is_one() {
                factors.push(c.to_string());
            }
            for (i, name) in names.iter().enumerate() {
                match m.exponent(i) {
                    0 => {}
                    1 => factors.push(name.clone()),
                    e => factors.push(format!("{name}^{e}")),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::super::standard;
    use super::super::{Fp, Ring};
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn frobenius_in_char_two() {
        let z = standard::p6();
        let a = z.parse("z0+z1").unwrap();
        assert_eq!(a.mul(&a), z.parse("z0^2+z1^2").unwrap());
    }

    #[test]
    fn quadric_is_zero_in_q5() {
        let q5 = standard::q5();
        let q = standard::quadric().change_ring(&q5);
        assert!(q.mul(&q5.one()).is_zero());
    }

    #[test]
    fn square_of_quadratic_form() {
        let x = standard::p5();
        let a = x.parse("x0*x1+x2*x3+x4*x5").unwrap();
        assert_eq!(a.pow(2), x.parse("x0^2*x1^2+x2^2*x3^2+x4^2*x5^2").unwrap());
    }

    #[test]
    fn mixed_rings_rejected() {
        let a = standard::p5().var(0);
        let b = standard::p6().var(0);
        assert_eq!(a.try_add(&b), Err(Error::MixedRings));
        assert_eq!(a.try_mul(&b), Err(Error::MixedRings));
    }

    #[test]
    fn normal_form_mod_quadric() {
        let q5 = standard::q5();
        let z0sq = q5.var(0).pow(2);
        assert_eq!(z0sq, q5.parse("z1*z2+z3*z4+z5*z6").unwrap());
    }

    fn arb_poly(ring: Ring) -> impl Strategy<Value = Poly> {
        let n = ring.nvars();
        prop::collection::vec((prop::collection::vec(0u32..3, n), 1u32..5), 0..6)
            .prop_map(move |ts| Poly::from_terms(&ring, ts.into_iter().map(|(e, c)| (Monomial::from_exponents(&e), c)).collect()))
    }

    proptest! {
        #[test]
        fn ring_axioms_gf3(a in arb_poly(Ring::with_prefix(Fp::new(3), "y", 3)),
                           b in arb_poly(Ring::with_prefix(Fp::new(3), "y", 3)),
                           c in arb_poly(Ring::with_prefix(Fp::new(3), "y", 3))) {
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
            prop_assert_eq!(a.mul(&b), b.mul(&a));
            prop_assert!(a.sub(&a).is_zero());
        }

        #[test]
        fn ring_axioms_quotient(a in arb_poly(standard::q5()), b in arb_poly(standard::q5()), c in arb_poly(standard::q5())) {
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        }

        #[test]
        fn squares_have_even_exponents(a in arb_poly(standard::p5())) {
            let sq = a.mul(&a);
            for (m, _) in sq.terms() {
                prop_assert!((0..6).all(|i| m.exponent(i) % 2 == 0));
            }
        }
    }
}
