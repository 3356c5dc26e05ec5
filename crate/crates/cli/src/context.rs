//! The objects of the construction, built on demand from the fixtures and
//! cached so that independent claims share them.

use std::sync::{Arc, OnceLock};

use tango_core::beilinson::{assign_summands, monad_cohomology, Assignment, Summand};
use tango_core::module::{
    double_dual, dual, frobenius_pullback, image, saturation_classes, section_extension, sym2, tensor, GradedMatrix, GradedModule,
};
use tango_core::ring::{Poly, Ring};
use tango_core::sheafcoh::SheafCohomology;

use crate::fixtures::Fixtures;

pub type Built<T> = std::result::Result<T, String>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Obj {
    /// `im A`, pruned.
    ImageA,
    /// `H = (im A)^*(-1)`.
    Horrocks,
    /// `C(1)`, the quotient of `H` by its section.
    CayleyTwisted,
    Cayley,
    /// `T`, the reflexive hull of `f^* C(1)`.
    Tango,
    /// `S = coker(B)(-1)`.
    Spinor,
    /// Middle term of the extension of `O` by `H(-1)`.
    Extension,
    Sym2Cayley,
    SpinorCayley,
    /// `C^[2]`, the Frobenius pullback of `C`.
    FrobeniusCayley,
    /// Cohomology of the monad, twisted by one.
    MonadTango,
}

const N: usize = 11;

impl Obj {
    pub const ALL: [Obj; N] = [
        Obj::ImageA,
        Obj::Horrocks,
        Obj::CayleyTwisted,
        Obj::Cayley,
        Obj::Tango,
        Obj::Spinor,
        Obj::Extension,
        Obj::Sym2Cayley,
        Obj::SpinorCayley,
        Obj::FrobeniusCayley,
        Obj::MonadTango,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Obj::ImageA => "im A",
            Obj::Horrocks => "H",
            Obj::CayleyTwisted => "C(1)",
            Obj::Cayley => "C",
            Obj::Tango => "T",
            Obj::Spinor => "S",
            Obj::Extension => "W",
            Obj::Sym2Cayley => "Sym^2 C",
            Obj::SpinorCayley => "S*C",
            Obj::FrobeniusCayley => "C^[2]",
            Obj::MonadTango => "monad(1)",
        }
    }

    fn index(self) -> usize {
        Obj::ALL.iter().position(|&o| o == self).expect("listed")
    }
}

pub struct Context {
    pub fixtures: Fixtures,
    modules: [OnceLock<Built<GradedModule>>; N],
    cohomology: [OnceLock<Built<Arc<SheafCohomology>>>; N],
    classes: OnceLock<Built<(GradedMatrix, Vec<Vec<Poly>>)>>,
    monad: OnceLock<Built<Assignment>>,
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

impl Context {
    pub fn new(fixtures: Fixtures) -> Context {
        Context {
            fixtures,
            modules: Default::default(),
            cohomology: Default::default(),
            classes: OnceLock::new(),
            monad: OnceLock::new(),
        }
    }

    pub fn quadric(&self) -> &Ring {
        self.fixtures.quadric()
    }

    pub fn module(&self, o: Obj) -> Built<GradedModule> {
        self.modules[o.index()].get_or_init(|| self.build(o)).clone()
    }

    pub fn cohomology(&self, o: Obj) -> Built<Arc<SheafCohomology>> {
        self.cohomology[o.index()]
            .get_or_init(|| {
                let m = self.module(o)?;
                SheafCohomology::new(&m).map(Arc::new).map_err(err)
            })
            .clone()
    }

    /// The map `psi` with kernel `H(-1)` and a basis of the degree-zero classes
    /// of `sat(im psi) / im psi`, i.e. of `Ext^1(O, H(-1))`.
    pub fn extension_classes(&self) -> Built<(GradedMatrix, Vec<Vec<Poly>>)> {
        self.classes
            .get_or_init(|| {
                let ima = self.module(Obj::ImageA)?;
                let psi = ima.presentation().transpose().shift(2);
                let cl = saturation_classes(&psi, 0, 3).map_err(err)?;
                Ok((psi, cl))
            })
            .clone()
    }

    pub fn monad(&self) -> Built<Assignment> {
        self.monad
            .get_or_init(|| {
                let right = vec![Summand::Line(0); self.fixtures.beta().len()];
                assign_summands(right, self.fixtures.beta(), self.fixtures.alpha()).map_err(err)
            })
            .clone()
    }

    fn build(&self, o: Obj) -> Built<GradedModule> {
        let q5 = self.quadric();
        match o {
            Obj::ImageA => image(self.fixtures.a()).and_then(|m| m.prune()).map_err(err),
            Obj::Horrocks => dual(&self.module(Obj::ImageA)?).map(|m| m.twist(-1)).map_err(err),
            Obj::CayleyTwisted => {
                // the section of H sits in degree zero and is its first generator
                let h = self.module(Obj::Horrocks)?;
                let p = h.presentation();
                if p.row_degrees().first() != Some(&0) {
                    return Err(format!("H has no generator in degree 0: {:?}", h.generator_histogram()));
                }
                let rows: Vec<usize> = (1..p.nrows()).collect();
                GradedModule::coker(p.select_rows(&rows)).prune().map_err(err)
            }
            Obj::Cayley => Ok(self.module(Obj::CayleyTwisted)?.twist(-1)),
            Obj::Tango => {
                let c1 = self.module(Obj::CayleyTwisted)?;
                let pulled = c1.presentation().apply_map(self.fixtures.f()).map_err(err)?;
                double_dual(&GradedModule::coker(pulled)).map_err(err)
            }
            Obj::Spinor => Ok(GradedModule::coker(self.fixtures.b().change_ring(q5)).twist(-1)),
            Obj::Extension => {
                let (psi, cl) = self.extension_classes()?;
                let v = cl.first().ok_or("Ext^1(O, H(-1)) vanishes in degree 0")?;
                section_extension(&psi, v).and_then(|m| m.prune()).map_err(err)
            }
            Obj::Sym2Cayley => sym2(&self.module(Obj::Cayley)?).and_then(|m| m.prune()).map_err(err),
            Obj::SpinorCayley => tensor(&self.module(Obj::Spinor)?, &self.module(Obj::Cayley)?).and_then(|m| m.prune()).map_err(err),
            Obj::FrobeniusCayley => frobenius_pullback(&self.module(Obj::Cayley)?).and_then(|m| m.prune()).map_err(err),
            Obj::MonadTango => {
                let a = self.monad()?;
                monad_cohomology(&a.spec).map(|m| m.twist(1)).map_err(err)
            }
        }
    }
}
