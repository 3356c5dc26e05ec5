use std::cmp::Ordering;
use std::ops::Range;

use crate::ring::Monomial;

/// Basis element `monomial * e_component` of a graded free module.
pub type Term = (Monomial, u32);

/// Graded free module: one twist and one order group per component.
/// A component of twist `t` has its generator in degree `t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeModule {
    pub twists: Vec<i32>,
    pub groups: Vec<i32>,
}

impl FreeModule {
    pub fn new(twists: Vec<i32>) -> Self {
        let groups = vec![0; twists.len()];
        FreeModule { twists, groups }
    }

    pub fn rank(&self) -> usize {
        self.twists.len()
    }

    pub fn push(&mut self, twist: i32, group: i32) -> u32 {
        self.twists.push(twist);
        self.groups.push(group);
        (self.twists.len() - 1) as u32
    }
}

/// One comparison stage of a module order; stages are applied in sequence
/// until one of them separates the two terms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Stage {
    /// Larger component group first.
    Group,
    /// Weighted degree restricted to a block of variables.
    BlockDegree(Range<usize>),
    /// Reverse lexicographic on a block of variables.
    BlockRevLex(Range<usize>),
    /// Weighted degree of the monomial plus the component twist.
    TotalDegree,
    RevLex,
    /// Smaller component index is bigger.
    Component,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleOrder {
    pub stages: Vec<Stage>,
}

impl ModuleOrder {
    /// Graded reverse lexicographic, term over position.
    pub fn standard() -> Self {
        ModuleOrder { stages: vec![Stage::TotalDegree, Stage::RevLex, Stage::Component] }
    }

    /// Component groups dominate; used for tracking representations.
    pub fn grouped() -> Self {
        let mut o = Self::standard();
        o.stages.insert(0, Stage::Group);
        o
    }

    /// Eliminates the variables in `block`, then component groups.
    pub fn elimination(block: Range<usize>) -> Self {
        ModuleOrder {
            stages: vec![
                Stage::BlockDegree(block.clone()),
                Stage::BlockRevLex(block),
                Stage::Group,
                Stage::TotalDegree,
                Stage::RevLex,
                Stage::Component,
            ],
        }
    }

    pub fn has_group_stage(&self) -> bool {
        self.stages.contains(&Stage::Group)
    }

    /// Eliminated variable block, if any.
    pub fn eliminated_block(&self) -> Option<Range<usize>> {
        self.stages.iter().find_map(|s| match s {
            Stage::BlockDegree(r) => Some(r.clone()),
            _ => None,
        })
    }
}

/// Everything needed to compare terms of a particular free module.
#[derive(Clone, Debug)]
pub struct OrderContext {
    pub weights: Vec<u32>,
    pub module: FreeModule,
    pub order: ModuleOrder,
    standard: bool,
    all_mask: u128,
}

impl OrderContext {
    pub fn new(weights: &[u32], module: FreeModule, order: ModuleOrder) -> Self {
        let standard = weights.iter().all(|&w| w == 1);
        OrderContext {
            weights: weights.to_vec(),
            module,
            order,
            standard,
            all_mask: Monomial::byte_mask(0..weights.len()),
        }
    }

    #[inline]
    pub fn mono_degree(&self, m: Monomial) -> i32 {
        if self.standard {
            m.degree() as i32
        } else {
            m.weighted_degree(&self.weights) as i32
        }
    }

    #[inline]
    pub fn degree(&self, t: Term) -> i32 {
        self.mono_degree(t.0) + self.module.twists[t.1 as usize]
    }

    pub fn cmp(&self, a: Term, b: Term) -> Ordering {
        for s in &self.order.stages {
            let o = match s {
                Stage::Group => {
                    self.module.groups[a.1 as usize].cmp(&self.module.groups[b.1 as usize])
                }
                Stage::BlockDegree(r) => {
                    let w = &self.weights[r.clone()];
                    let da: u32 = r.clone().zip(w).map(|(i, w)| w * a.0.exponent(i)).sum();
                    let db: u32 = r.clone().zip(w).map(|(i, w)| w * b.0.exponent(i)).sum();
                    da.cmp(&db)
                }
                Stage::BlockRevLex(r) => a.0.revlex_cmp(&b.0, Monomial::byte_mask(r.clone())),
                Stage::TotalDegree => self.degree(a).cmp(&self.degree(b)),
                Stage::RevLex => a.0.revlex_cmp(&b.0, self.all_mask),
                Stage::Component => b.1.cmp(&a.1),
            };
            if o != Ordering::Equal {
                return o;
            }
        }
        Ordering::Equal
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ctx(order: ModuleOrder) -> OrderContext {
        let mut m = FreeModule::new(vec![0, 1, -1]);
        m.groups = vec![1, 0, 0];
        OrderContext::new(&[1, 1, 1, 2], m, order)
    }

    fn arb_term() -> impl Strategy<Value = Term> {
        (prop::collection::vec(0u32..4, 4), 0u32..3).prop_map(|(e, c)| (Monomial::from_exponents(&e), c))
    }

    #[test]
    fn grevlex_on_variables() {
        let c = ctx(ModuleOrder::standard());
        let x = |e: &[u32]| (Monomial::from_exponents(e), 0);
        assert_eq!(c.cmp(x(&[1, 0, 1, 0]), x(&[0, 2, 0, 0])), Ordering::Less);
        assert_eq!(c.cmp(x(&[1, 0, 0, 0]), x(&[0, 1, 0, 0])), Ordering::Greater);
    }

    proptest! {
        #[test]
        fn total_and_multiplicative(a in arb_term(), b in arb_term(), c in arb_term(),
                                    m in prop::collection::vec(0u32..3, 4), which in 0usize..3) {
            let order = match which {
                0 => ModuleOrder::standard(),
                1 => ModuleOrder::grouped(),
                _ => ModuleOrder::elimination(0..2),
            };
            let cx = ctx(order);
            let ab = cx.cmp(a, b);
            prop_assert_eq!(ab, cx.cmp(b, a).reverse());
            prop_assert_eq!(ab == Ordering::Equal, a == b);
            if ab == Ordering::Greater && cx.cmp(b, c) == Ordering::Greater {
                prop_assert_eq!(cx.cmp(a, c), Ordering::Greater);
            }
            let m = Monomial::from_exponents(&m);
            prop_assert_eq!(cx.cmp((a.0.mul(m), a.1), (b.0.mul(m), b.1)), ab);
            if !m.is_one() {
                prop_assert_eq!(cx.cmp((a.0.mul(m), a.1), a), Ordering::Greater);
            }
        }
    }
}
