use std::sync::{Arc, OnceLock};

use super::order::{FreeModule, ModuleOrder, OrderContext};
use super::vector::{normal_form, Vector};
use super::{count_standard_monomials, f4, module_gb, reduce_basis, relation_background, GbProblem};
use crate::error::{Error, Result};
use crate::ring::{Monomial, Poly, Ring, RingMap};

#[derive(Debug)]
struct IdealGb {
    /// Reduced basis in the ambient ring, including the ring relation.
    basis: Vec<Vector>,
}

/// Homogeneous ideal of a graded ring; the Groebner basis is computed on
/// first use.
#[derive(Clone, Debug)]
pub struct Ideal {
    ring: Ring,
    gens: Vec<Poly>,
    gb: Arc<OnceLock<IdealGb>>,
}

impl Ideal {
    pub fn new(ring: &Ring, gens: Vec<Poly>) -> Result<Ideal> {
        let mut out = Vec::with_capacity(gens.len());
        for g in gens {
            let g = if g.ring() == ring {
                g
            } else if g.ring() == &ring.ambient() {
                g.change_ring(ring)
            } else {
                return Err(Error::MixedRings);
            };
            if !g.is_homogeneous() {
                return Err(Error::NotHomogeneous);
            }
            if !g.is_zero() {
                out.push(g);
            }
        }
        Ok(Ideal { ring: ring.clone(), gens: out, gb: Arc::new(OnceLock::new()) })
    }

    pub fn zero(ring: &Ring) -> Ideal {
        Ideal::new(ring, Vec::new()).unwrap()
    }

    pub fn unit(ring: &Ring) -> Ideal {
        Ideal::new(ring, vec![ring.one()]).unwrap()
    }

    /// The irrelevant ideal generated by all variables.
    pub fn maximal(ring: &Ring) -> Ideal {
        Ideal::new(ring, ring.vars()).unwrap()
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn gens(&self) -> &[Poly] {
        &self.gens
    }

    pub(crate) fn context(&self) -> OrderContext {
        OrderContext::new(self.ring.weights(), FreeModule::new(vec![0]), ModuleOrder::standard())
    }

    fn gb(&self) -> &IdealGb {
        self.gb.get_or_init(|| {
            let ctx = self.context();
            let gens = self.gens.iter().map(|g| Vector::from_poly(&ctx, g, 0)).collect();
            let res = module_gb(&self.ring, &ctx, gens, false, None).expect("homogeneous generators");
            IdealGb { basis: reduce_basis(&ctx, self.ring.field(), &res.basis) }
        })
    }

    /// Reduced Groebner basis, sorted by increasing leading monomial. For a
    /// quotient ring the relation itself is omitted.
    pub fn groebner_basis(&self) -> Vec<Poly> {
        let amb = self.ring.ambient();
        let rel = self.ring.relation();
        self.gb()
            .basis
            .iter()
            .map(|v| v.component(&amb, 0))
            .filter(|p| Some(p) != rel.as_ref())
            .map(|p| p.change_ring(&self.ring))
            .collect()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.gb().basis.iter().filter_map(|v| v.lead()).map(|t| t.0).collect()
    }

    pub fn normal_form(&self, p: &Poly) -> Result<Poly> {
        if p.ring() != &self.ring && p.ring() != &self.ring.ambient() {
            return Err(Error::MixedRings);
        }
        let ctx = self.context();
        let v = Vector::from_poly(&ctx, p, 0);
        let r = normal_form(&ctx, self.ring.field(), &v, &self.gb().basis);
        Ok(r.component(&self.ring, 0))
    }

    pub fn contains(&self, p: &Poly) -> Result<bool> {
        Ok(self.normal_form(p)?.is_zero())
    }

    pub fn is_unit(&self) -> bool {
        self.leading_monomials().iter().any(|m| m.is_one())
    }

    /// Same ideal: equal reduced Groebner bases.
    pub fn equals(&self, other: &Ideal) -> bool {
        self.ring == other.ring && self.gb().basis == other.gb().basis
    }

    pub fn is_subset_of(&self, other: &Ideal) -> bool {
        self.gens.iter().all(|g| other.contains(g).unwrap_or(false))
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        if self.ring != other.ring {
            return Err(Error::MixedRings);
        }
        let mut g = self.gens.clone();
        g.extend(other.gens.iter().cloned());
        Ideal::new(&self.ring, g)
    }

    /// `dim_k (R/I)_d`
    pub fn hilbert_function(&self, d: i32) -> u64 {
        count_standard_monomials(self.ring.weights(), &self.leading_monomials(), d)
    }

    /// `dim_k I_d`
    pub fn dim_in_degree(&self, d: i32) -> u64 {
        let amb = super::hilbert::monomials_of_degree(self.ring.weights(), d).len() as u64;
        let rel = match self.ring.relation() {
            None => 0,
            Some(q) => {
                let qd = q.degree().unwrap();
                super::hilbert::monomials_of_degree(self.ring.weights(), d - qd).len() as u64
            }
        };
        amb - rel - self.hilbert_function(d)
    }

    /// `(self : f)`, the ideal of all `g` with `g f` in `self`.
    pub fn quotient_by(&self, f: &Poly) -> Result<Ideal> {
        self.quotient_by_tuple(&[f.clone()])
    }

    /// `{ g : g f_i in self for all i }`, as the kernel of `R -> (R/I)^k`.
    fn quotient_by_tuple(&self, fs: &[Poly]) -> Result<Ideal> {
        let k = fs.len();
        let fs: Vec<&Poly> = fs.iter().filter(|f| !f.is_zero()).collect();
        if fs.is_empty() {
            return Ok(Ideal::unit(&self.ring));
        }
        let _ = k;
        let d0 = fs[0].degree().unwrap();
        if fs.iter().any(|f| f.degree() != Some(d0) || !f.is_homogeneous()) {
            return Err(Error::NotHomogeneous);
        }
        let n = fs.len();
        let ctx = OrderContext::new(self.ring.weights(), FreeModule::new(vec![0; n]), ModuleOrder::standard());
        let field = self.ring.field();
        let mut terms = Vec::new();
        for (i, f) in fs.iter().enumerate() {
            for &(m, c) in f.terms() {
                terms.push(((m, i as u32), c));
            }
        }
        let v0 = Vector::from_terms(&ctx, field, terms);
        let mut background = relation_background(&self.ring, &ctx);
        for g in &self.gens {
            for i in 0..n {
                background.push(Vector::from_poly(&ctx, g, i as u32));
            }
        }
        let p = GbProblem::new(ctx, field, vec![v0]).with_background(background).tracked();
        let res = f4::compute(&p)?;
        if res.minimal.is_empty() {
            return Ok(Ideal::unit(&self.ring));
        }
        let gens = res.syzygies.iter().map(|s| s.component(&self.ring, 0)).collect();
        Ideal::new(&self.ring, gens)
    }

    /// `(self : other)`
    pub fn quotient(&self, other: &Ideal) -> Result<Ideal> {
        if self.ring != other.ring {
            return Err(Error::MixedRings);
        }
        // group generators by degree; intersect the quotients
        let mut by_deg: std::collections::BTreeMap<i32, Vec<Poly>> = Default::default();
        for g in &other.gens {
            by_deg.entry(g.degree().unwrap()).or_default().push(g.clone());
        }
        let mut acc: Option<Ideal> = None;
        for (_, fs) in by_deg {
            let q = self.quotient_by_tuple(&fs)?;
            acc = Some(match acc {
                None => q,
                Some(a) => a.intersect(&q)?,
            });
        }
        Ok(acc.unwrap_or_else(|| Ideal::unit(&self.ring)))
    }

    pub fn intersect(&self, other: &Ideal) -> Result<Ideal> {
        if self.ring != other.ring {
            return Err(Error::MixedRings);
        }
        if self.is_unit() {
            return Ok(other.clone());
        }
        if other.is_unit() {
            return Ok(self.clone());
        }
        let ctx = OrderContext::new(self.ring.weights(), FreeModule::new(vec![0, 0]), ModuleOrder::standard());
        let field = self.ring.field();
        let one = Vector { terms: vec![((Monomial::ONE, 0), 1)] };
        let v0 = one.add(&ctx, field, &Vector { terms: vec![((Monomial::ONE, 1), 1)] });
        let mut background = relation_background(&self.ring, &ctx);
        background.extend(self.gens.iter().map(|g| Vector::from_poly(&ctx, g, 0)));
        background.extend(other.gens.iter().map(|g| Vector::from_poly(&ctx, g, 1)));
        let p = GbProblem::new(ctx, field, vec![v0]).with_background(background).tracked();
        let res = f4::compute(&p)?;
        let gens = res.syzygies.iter().map(|s| s.component(&self.ring, 0)).collect();
        Ideal::new(&self.ring, gens)
    }

    /// `(self : J^inf)`; `J` defaults to the irrelevant ideal.
    pub fn saturate(&self, j: Option<&Ideal>) -> Result<Ideal> {
        let j = match j {
            Some(j) => j.clone(),
            None => Ideal::maximal(&self.ring),
        };
        let mut cur = self.clone();
        for _ in 0..64 {
            if cur.is_unit() {
                return Ok(cur);
            }
            let next = cur.quotient(&j)?;
            if next.equals(&cur) {
                return Ok(cur);
            }
            cur = next;
        }
        Err(Error::Diagnostic("saturation did not stabilize after 64 quotients".into()))
    }
}

/// Kernel of a ring map, by elimination on the graph ideal. The source
/// variables `t_i` get weight `s * w_i` so that `t_i - image_i` is homogeneous.
pub fn ring_map_kernel(map: &RingMap) -> Result<Ideal> {
    let v = map.validate();
    if !v.valid {
        return Err(Error::InvalidMap(v.diagnostics.join("; ")));
    }
    let src = map.source();
    let tgt = map.target();
    let nt = tgt.nvars();
    let ns = src.nvars();
    if nt + ns > Monomial::MAX_VARS {
        return Err(Error::Dimension(format!("{} variables exceed the limit", nt + ns)));
    }
    let mut weights: Vec<u32> = tgt.weights().to_vec();
    weights.extend(src.weights().iter().map(|w| w * map.scale()));
    let ctx = OrderContext::new(&weights, FreeModule::new(vec![0]), ModuleOrder::elimination(0..nt));
    let field = tgt.field();
    let mut gens = Vec::new();
    for (i, img) in map.images().iter().enumerate() {
        let mut terms: Vec<_> = img.terms().iter().map(|&(m, c)| ((m, 0), field.neg(c))).collect();
        terms.push(((Monomial::var(nt + i), 0), 1));
        gens.push(Vector::from_terms(&ctx, field, terms));
    }
    if let Some(rel) = tgt.relation_terms() {
        gens.push(Vector::from_terms(&ctx, field, rel.iter().map(|&(m, c)| ((m, 0), c)).collect()));
    }
    let res = f4::compute(&GbProblem::new(ctx.clone(), field, gens))?;
    let basis = reduce_basis(&ctx, field, &res.basis);
    let kernel: Vec<Poly> = basis
        .iter()
        .filter(|v| v.terms.iter().all(|((m, _), _)| m.restrict(0..nt) == Monomial::ONE))
        .map(|v| Poly::from_terms(src, v.terms.iter().map(|&((m, _), c)| (m.shift_down(nt), c)).collect()))
        .filter(|p| !p.is_zero())
        .collect();
    Ideal::new(src, kernel)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gb::linalg;
    use crate::ring::{standard, Fp};

    /// dim I_d by brute-force linear algebra on monomial multiples of the generators.
    fn oracle_dim(ring: &Ring, gens: &[Poly], d: i32) -> usize {
        let amb = ring.ambient();
        let mut all_gens: Vec<Poly> = gens.iter().map(|g| Poly::from_terms(&amb, g.terms().to_vec())).collect();
        if let Some(q) = ring.relation() {
            all_gens.push(q);
        }
        let monos = crate::gb::monomials_of_degree(ring.weights(), d);
        let index: std::collections::HashMap<Monomial, usize> = monos.iter().enumerate().map(|(i, m)| (*m, i)).collect();
        let mut rows = Vec::new();
        for g in &all_gens {
            let e = d - g.degree().unwrap();
            for m in crate::gb::monomials_of_degree(ring.weights(), e) {
                rows.push(g.terms().iter().map(|&(n, c)| (index[&n.mul(m)], c)).collect());
            }
        }
        let full = linalg::rank(ring.field(), monos.len(), &rows);
        let rel_dim = match ring.relation() {
            None => 0,
            Some(q) => crate::gb::monomials_of_degree(ring.weights(), d - q.degree().unwrap()).len(),
        };
        full - rel_dim
    }

    #[test]
    fn principal_quadric() {
        let z = standard::p6();
        let i = Ideal::new(&z, vec![standard::quadric()]).unwrap();
        assert_eq!(i.groebner_basis(), vec![standard::quadric()]);
        let z0sq = z.parse("z0^2").unwrap();
        assert_eq!(i.normal_form(&z0sq).unwrap(), z.parse("z1*z2+z3*z4+z5*z6").unwrap());
        assert!(i.contains(&standard::quadric()).unwrap());
    }

    #[test]
    fn monomial_ideal_and_quotient() {
        let r = Ring::polynomial(Fp::gf2(), &["x", "y", "z"]);
        let i = Ideal::new(&r, vec![r.parse("x*y").unwrap(), r.parse("x*z").unwrap()]).unwrap();
        assert_eq!(i.groebner_basis().len(), 2);
        let q = i.quotient(&Ideal::new(&r, vec![r.parse("x").unwrap()]).unwrap()).unwrap();
        let expect = Ideal::new(&r, vec![r.parse("y").unwrap(), r.parse("z").unwrap()]).unwrap();
        assert!(q.equals(&expect));
        assert!(i.quotient(&Ideal::unit(&r)).unwrap().equals(&i));
    }

    #[test]
    fn twisted_cubic_like_against_oracle() {
        let r = Ring::polynomial(Fp::gf2(), &["x", "y", "z"]);
        let gens = vec![r.parse("x^2+y*z").unwrap(), r.parse("y^2+x*z").unwrap()];
        let i = Ideal::new(&r, gens.clone()).unwrap();
        for d in 0..=8 {
            assert_eq!(i.dim_in_degree(d) as usize, oracle_dim(&r, &gens, d), "degree {d}");
        }
    }

    #[test]
    fn quadric_quotient_by_z0() {
        let z = standard::p6();
        let i = Ideal::new(&z, vec![standard::quadric()]).unwrap();
        let q = i.quotient_by(&z.var(0)).unwrap();
        assert!(q.equals(&i));
    }

    #[test]
    fn saturation_of_x0_times_cubics() {
        let x = standard::p5();
        let gens: Vec<Poly> = Monomial::all_of_degree(6, 3)
            .into_iter()
            .map(|m| Poly::monomial(&x, m.mul(Monomial::var(0)), 1))
            .collect();
        let i = Ideal::new(&x, gens).unwrap();
        let s = i.saturate(None).unwrap();
        assert!(s.equals(&Ideal::new(&x, vec![x.var(0)]).unwrap()));
        assert!(s.saturate(None).unwrap().equals(&s));
        assert!(Ideal::unit(&x).saturate(None).unwrap().is_unit());
    }

    #[test]
    fn kernel_of_twisted_cuspidal_parametrization() {
        let t = Ring::polynomial(Fp::gf2(), &["t"]);
        let ab = Ring::polynomial(Fp::gf2(), &["a", "b"]).with_weights(&[2, 3]);
        // weights 2,3 with scale 1: a -> t^2, b -> t^3
        let m = RingMap::new(ab.clone(), t.clone(), vec![t.parse("t^2").unwrap(), t.parse("t^3").unwrap()], 1).unwrap();
        let k = ring_map_kernel(&m).unwrap();
        let expect = Ideal::new(&ab, vec![ab.parse("a^3+b^2").unwrap()]).unwrap();
        assert!(k.equals(&expect), "{:?}", k.groebner_basis());
    }

    #[test]
    fn kernel_of_projection_is_zero() {
        let k = ring_map_kernel(&standard::projection()).unwrap();
        assert!(k.groebner_basis().is_empty());
        let id = RingMap::identity(&standard::p5());
        assert!(ring_map_kernel(&id).unwrap().groebner_basis().is_empty());
    }

    #[test]
    fn quotient_ring_ideal_against_oracle() {
        let r = standard::q5();
        let gens = vec![r.parse("z0*z1+z3^2").unwrap(), r.parse("z2*z5").unwrap(), r.parse("z0*z6+z4*z4").unwrap()];
        let i = Ideal::new(&r, gens.clone()).unwrap();
        for d in 0..=6 {
            assert_eq!(i.dim_in_degree(d) as usize, oracle_dim(&r, &gens, d), "degree {d}");
        }
    }
}
