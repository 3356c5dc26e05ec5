use super::{Monomial, Poly, Ring};
use crate::error::{Error, Result};

/// Homomorphism of graded rings given by the images of the source variables.
/// A source element of degree `d` maps to degree `scale * d`.
#[derive(Clone, Debug, PartialEq)]
pub struct RingMap {
    source: Ring,
    target: Ring,
    images: Vec<Poly>,
    scale: u32,
}

/// Outcome of [`RingMap::validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MapValidation {
    pub valid: bool,
    pub diagnostics: Vec<String>,
}

impl RingMap {
    /// Builds a map without checking well-definedness; only the shape
    /// (arity, target ring, positive scale) is enforced.
    pub fn new(source: Ring, target: Ring, images: Vec<Poly>, scale: u32) -> Result<RingMap> {
        if images.len() != source.nvars() {
            return Err(Error::InvalidMap(format!(
                "{} images for {} source variables",
                images.len(),
                source.nvars()
            )));
        }
        if scale == 0 {
            return Err(Error::InvalidMap("degree scale must be positive".into()));
        }
        let images = images
            .into_iter()
            .map(|p| {
                if p.ring() == &target {
                    Ok(p)
                } else if p.ring().nvars() == target.nvars() && p.ring().field() == target.field() {
                    Ok(p.change_ring(&target))
                } else {
                    Err(Error::MixedRings)
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(RingMap { source, target, images, scale })
    }

    pub fn identity(ring: &Ring) -> RingMap {
        RingMap { source: ring.clone(), target: ring.clone(), images: ring.vars(), scale: 1 }
    }

    pub fn source(&self) -> &Ring {
        &self.source
    }
    pub fn target(&self) -> &Ring {
        &self.target
    }
    pub fn images(&self) -> &[Poly] {
        &self.images
    }
    pub fn scale(&self) -> u32 {
        self.scale
    }

    /// Image of a monomial of the source ring.
    pub fn apply_monomial(&self, m: Monomial) -> Poly {
        let mut r = self.target.one();
        for (i, img) in self.images.iter().enumerate() {
            let e = m.exponent(i);
            if e > 0 {
                r = r.mul(&img.pow(e));
            }
        }
        r
    }

    /// Substitute the images for the variables. Accepts elements of the source
    /// ring or of its ambient polynomial ring.
    pub fn apply(&self, p: &Poly) -> Result<Poly> {
        let ok = p.ring() == &self.source
            || (self.source.relation().is_some() && p.ring() == &self.source.ambient());
        if !ok {
            return Err(Error::MixedRings);
        }
        let f = self.target.field();
        let mut acc = self.target.zero();
        for &(m, c) in p.terms() {
            let t = self.apply_monomial(m);
            acc = acc.add(&t.scale(c % f.characteristic()));
        }
        Ok(acc)
    }

    /// Checks that the images are homogeneous of degree `scale` (times the
    /// variable weight) and that the source relation maps to zero.
    pub fn validate(&self) -> MapValidation {
        let mut diagnostics = Vec::new();
        if self.source.field() != self.target.field() {
            diagnostics.push("source and target have different coefficient fields".into());
        }
        for (i, img) in self.images.iter().enumerate() {
            let want = (self.scale * self.source.weights()[i]) as i32;
            if img.is_zero() {
                continue;
            }
            if !img.is_homogeneous() {
                diagnostics.push(format!("image of {} is not homogeneous", self.source.var_names()[i]));
            } else if img.degree() != Some(want) {
                diagnostics.push(format!(
                    "image of {} has degree {}, expected {}",
                    self.source.var_names()[i],
                    img.degree().unwrap(),
                    want
                ));
            }
        }
        if diagnostics.is_empty() {
            if let Some(rel) = self.source.relation() {
                match self.apply(&rel) {
                    Ok(r) if r.is_zero() => {}
                    Ok(r) => diagnostics.push(format!("source relation maps to {r}, not 0")),
                    Err(e) => diagnostics.push(e.to_string()),
                }
            }
        }
        MapValidation { valid: diagnostics.is_empty(), diagnostics }
    }

    /// `self` followed by `other` (`other ∘ self` on coordinate rings).
    pub fn then(&self, other: &RingMap) -> Result<RingMap> {
        if self.target != other.source {
            return Err(Error::MixedRings);
        }
        let images = self.images.iter().map(|p| other.apply(p)).collect::<Result<Vec<_>>>()?;
        RingMap::new(self.source.clone(), other.target.clone(), images, self.scale * other.scale)
    }

    /// The same images interpreted over GF(p): all rings are rebuilt with the
    /// new field, keeping names and the relation.
    pub fn over_field(&self, field: super::Fp) -> Result<RingMap> {
        let src = rebuild(&self.source, field)?;
        let tgt = rebuild(&self.target, field)?;
        let images = self
            .images
            .iter()
            .map(|p| Poly::from_terms(&tgt, p.terms().to_vec()))
            .collect();
        RingMap::new(src, tgt, images, self.scale)
    }
}

fn rebuild(r: &Ring, field: super::Fp) -> Result<Ring> {
    let base = Ring::polynomial(field, r.var_names()).with_weights(r.weights()).with_order(r.order());
    match r.relation() {
        None => Ok(base),
        Some(rel) => base.quotient(&Poly::from_terms(&base, rel.terms().to_vec())),
    }
}

#[cfg(test)]
mod tests {
    use super::super::{standard, Fp, Ring};
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn tango_map_kills_quadric() {
        let f = standard::tango_map();
        assert!(f.validate().valid);
        let q = standard::quadric();
        assert!(f.apply(&q).unwrap().is_zero());
    }

    #[test]
    fn tango_map_invalid_over_gf3() {
        let f = standard::tango_map().over_field(Fp::new(3)).unwrap();
        let v = f.validate();
        assert!(!v.valid);
        // f(q) = 2(x0x1x2x3 + x0x1x4x5 + x2x3x4x5) + ... mod 3
        let fq = f.apply(&f.source().relation().unwrap()).unwrap();
        let expected_cross = f.target().parse("2*x0*x1*x2*x3").unwrap().terms()[0];
        assert!(fq.terms().contains(&expected_cross));
    }

    #[test]
    fn frobenius_and_projection() {
        let x = standard::p5();
        let phi = standard::frobenius(&x);
        assert_eq!(phi.apply(&x.var(1)).unwrap(), x.parse("x1^2").unwrap());
        assert!(standard::projection().validate().valid);
        let id = RingMap::identity(&x);
        let p = x.parse("x0*x3+x5^2").unwrap();
        assert_eq!(id.apply(&p).unwrap(), p);
    }

    #[test]
    fn diagram_commutes() {
        let pi = standard::projection();
        let f = standard::tango_map();
        let comp = pi.then(&f).unwrap();
        let phi = standard::frobenius(&standard::p5());
        for i in 0..6 {
            let v = standard::p5().var(i);
            assert_eq!(comp.apply(&v).unwrap(), phi.apply(&v).unwrap());
        }
    }

    #[test]
    fn wrong_degree_rejected() {
        let x = standard::p5();
        let mut images: Vec<Poly> = (0..6).map(|i| x.var(i)).collect();
        images.push(x.var(0));
        let m = RingMap::new(standard::q5(), x, images, 2).unwrap();
        assert!(!m.validate().valid);
    }

    fn arb_hom(ring: Ring, d: u32) -> impl Strategy<Value = Poly> {
        let monos = Monomial::all_of_degree(ring.nvars(), d);
        let n = monos.len();
        prop::collection::vec(any::<bool>(), n).prop_map(move |bits| {
            let terms = monos.iter().zip(bits).filter(|(_, b)| *b).map(|(m, _)| (*m, 1)).collect();
            Poly::from_terms(&ring, terms)
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]
        #[test]
        fn tango_map_is_homomorphism(a in arb_hom(standard::q5(), 2), b in arb_hom(standard::q5(), 2), c in arb_hom(standard::q5(), 1)) {
            let f = standard::tango_map();
            prop_assert_eq!(f.apply(&a.mul(&c)).unwrap(), f.apply(&a).unwrap().mul(&f.apply(&c).unwrap()));
            prop_assert_eq!(f.apply(&a.add(&b)).unwrap(), f.apply(&a).unwrap().add(&f.apply(&b).unwrap()));
            let fa = f.apply(&a).unwrap();
            prop_assert!(fa.is_zero() || fa.degree() == Some(4));
        }
    }
}
