//! Borel-Bott-Weil for homogeneous bundles on `Q5 = G2/P(alpha_1)` in
//! characteristic 0.
//!
//! Weights are written `a lambda_1 + b lambda_2` in the fundamental weight
//! basis, with `alpha_1` the short simple root normalized to squared length 2.
//! A bundle with highest weight `w` twisted by `O(t)` has weight `w + t lambda_1`.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight {
    pub a: i64,
    pub b: i64,
}

impl Weight {
    pub const fn new(a: i64, b: i64) -> Self {
        Weight { a, b }
    }

    pub const ZERO: Weight = Weight::new(0, 0);
    pub const LAMBDA1: Weight = Weight::new(1, 0);
    pub const LAMBDA2: Weight = Weight::new(0, 1);

    pub fn add(self, o: Weight) -> Weight {
        Weight::new(self.a + o.a, self.b + o.b)
    }

    pub fn sub(self, o: Weight) -> Weight {
        Weight::new(self.a - o.a, self.b - o.b)
    }

    pub fn scale(self, k: i64) -> Weight {
        Weight::new(k * self.a, k * self.b)
    }

    pub fn twist(self, t: i64) -> Weight {
        self.add(Weight::LAMBDA1.scale(t))
    }

    pub fn is_dominant(self) -> bool {
        self.a >= 0 && self.b >= 0
    }

    /// Invariant inner product; Gram matrix of the fundamental weights is
    /// `[[2, 3], [3, 6]]`.
    pub fn inner(self, o: Weight) -> i64 {
        2 * self.a * o.a + 3 * (self.a * o.b + self.b * o.a) + 6 * self.b * o.b
    }

    /// Reflection in the simple root `i` (0 or 1).
    pub fn reflect(self, i: usize) -> Weight {
        let coord = if i == 0 { self.a } else { self.b };
        self.sub(SIMPLE_ROOTS[i].scale(coord))
    }

    /// The contragredient weight; G2 has `w0 = -1`.
    pub fn dual(self) -> Weight {
        self
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}l1{:+}l2", self.a, self.b)
    }
}

/// `alpha_1 = 2 lambda_1 - lambda_2`, `alpha_2 = -3 lambda_1 + 2 lambda_2`.
pub const SIMPLE_ROOTS: [Weight; 2] = [Weight::new(2, -1), Weight::new(-3, 2)];

/// Positive roots as `m alpha_1 + n alpha_2`.
pub const POSITIVE_ROOTS: [(i64, i64); 6] = [(1, 0), (0, 1), (1, 1), (2, 1), (3, 1), (3, 2)];

pub const RHO: Weight = Weight::new(1, 1);

pub fn root_weight(m: i64, n: i64) -> Weight {
    SIMPLE_ROOTS[0].scale(m).add(SIMPLE_ROOTS[1].scale(n))
}

pub fn positive_roots() -> Vec<Weight> {
    POSITIVE_ROOTS.iter().map(|&(m, n)| root_weight(m, n)).collect()
}

/// Element of the Weyl group as a matrix acting on `(a, b)` plus a reduced word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeylElement {
    pub word: Vec<usize>,
    pub matrix: [[i64; 2]; 2],
}

impl WeylElement {
    pub fn apply(&self, w: Weight) -> Weight {
        let m = self.matrix;
        Weight::new(m[0][0] * w.a + m[0][1] * w.b, m[1][0] * w.a + m[1][1] * w.b)
    }

    pub fn length(&self) -> usize {
        self.word.len()
    }
}

/// The 12 elements of the Weyl group, each with a shortest word.
pub fn weyl_group() -> Vec<WeylElement> {
    let id = [[1, 0], [0, 1]];
    let gens: Vec<[[i64; 2]; 2]> = (0..2)
        .map(|i| {
            let c0 = Weight::new(1, 0).reflect(i);
            let c1 = Weight::new(0, 1).reflect(i);
            [[c0.a, c1.a], [c0.b, c1.b]]
        })
        .collect();
    let mut seen: HashMap<[[i64; 2]; 2], Vec<usize>> = HashMap::new();
    seen.insert(id, Vec::new());
    let mut queue = VecDeque::from([id]);
    let mut out = vec![WeylElement { word: Vec::new(), matrix: id }];
    while let Some(m) = queue.pop_front() {
        for (i, g) in gens.iter().enumerate() {
            let mut p = [[0i64; 2]; 2];
            for r in 0..2 {
                for c in 0..2 {
                    p[r][c] = g[r][0] * m[0][c] + g[r][1] * m[1][c];
                }
            }
            if !seen.contains_key(&p) {
                let mut word = vec![i];
                word.extend_from_slice(&seen[&m]);
                seen.insert(p, word.clone());
                out.push(WeylElement { word, matrix: p });
                queue.push_back(p);
            }
        }
    }
    out
}

/// Dimension of the irreducible representation of highest weight `w`.
pub fn weyl_dimension(w: Weight) -> Result<u64> {
    if !w.is_dominant() {
        return Err(Error::OutOfRange(format!("weight {w} is not dominant")));
    }
    let shifted = w.add(RHO);
    let mut num: i128 = 1;
    let mut den: i128 = 1;
    for r in positive_roots() {
        num *= shifted.inner(r) as i128;
        den *= RHO.inner(r) as i128;
    }
    debug_assert_eq!(num % den, 0);
    Ok((num / den) as u64)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BbwResult {
    /// All cohomology vanishes.
    Singular,
    Cohomology { degree: usize, dim: u64 },
}

impl BbwResult {
    /// `h^i`.
    pub fn h(&self, i: usize) -> u64 {
        match *self {
            BbwResult::Cohomology { degree, dim } if degree == i => dim,
            _ => 0,
        }
    }
}

/// Cohomology of the bundle with highest weight `w` twisted by `O(t)`.
pub fn bbw_cohomology(w: Weight, t: i64) -> BbwResult {
    let mut v = w.twist(t).add(RHO);
    if positive_roots().into_iter().any(|r| v.inner(r) == 0) {
        return BbwResult::Singular;
    }
    let mut length = 0;
    loop {
        if v.a < 0 {
            v = v.reflect(0);
        } else if v.b < 0 {
            v = v.reflect(1);
        } else {
            break;
        }
        length += 1;
    }
    let dim = weyl_dimension(v.sub(RHO)).expect("regular dominant weight");
    BbwResult::Cohomology { degree: length, dim }
}

/// Euler characteristic predicted by Borel-Bott-Weil.
pub fn chi_crosscheck(w: Weight, t: i64) -> i64 {
    match bbw_cohomology(w, t) {
        BbwResult::Singular => 0,
        BbwResult::Cohomology { degree, dim } => {
            if degree % 2 == 0 {
                dim as i64
            } else {
                -(dim as i64)
            }
        }
    }
}

/// Highest weight of the rank 2 bundle `C`, with `C(2)` of weight `lambda_2`.
pub fn cayley_weight() -> Weight {
    Weight::new(-2, 1)
}

/// Highest weight of `Sym^2 C`.
pub fn sym2_cayley_weight() -> Weight {
    cayley_weight().scale(2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chow::{hrr_chi, Ambient, ChernVector};
    use proptest::prelude::*;

    #[test]
    fn dimensions() {
        assert_eq!(weyl_dimension(Weight::ZERO).unwrap(), 1);
        assert_eq!(weyl_dimension(Weight::LAMBDA1).unwrap(), 7);
        assert_eq!(weyl_dimension(Weight::LAMBDA2).unwrap(), 14);
        assert_eq!(weyl_dimension(Weight::new(2, 0)).unwrap(), 27);
        assert!(weyl_dimension(Weight::new(-1, 1)).is_err());
    }

    #[test]
    fn calibration() {
        let w = Weight::new(-3, 3);
        assert_eq!(w.inner(root_weight(3, 1)), 0);
        assert_eq!(SIMPLE_ROOTS[0].inner(SIMPLE_ROOTS[0]), 2);
        assert_eq!(SIMPLE_ROOTS[1].inner(SIMPLE_ROOTS[1]), 6);
        assert_eq!(Weight::LAMBDA1.inner(SIMPLE_ROOTS[0]), 1);
        assert_eq!(Weight::LAMBDA2.inner(SIMPLE_ROOTS[1]), 3);
    }

    #[test]
    fn weyl_group_structure() {
        let g = weyl_group();
        assert_eq!(g.len(), 12);
        assert_eq!(g.iter().map(|e| e.length()).max(), Some(6));
        // rho is strictly dominant and has trivial stabilizer
        let orbit: std::collections::HashSet<_> = g.iter().map(|e| e.apply(RHO)).collect();
        assert_eq!(orbit.len(), 12);
        let w0 = g.iter().find(|e| e.length() == 6).unwrap();
        assert_eq!(w0.matrix, [[-1, 0], [0, -1]]);
    }

    #[test]
    fn cayley_bundle() {
        let c = cayley_weight();
        assert_eq!(bbw_cohomology(c, 0), BbwResult::Cohomology { degree: 1, dim: 1 });
        assert_eq!(bbw_cohomology(c, -4), BbwResult::Cohomology { degree: 4, dim: 1 });
        assert_eq!(bbw_cohomology(c, 2), BbwResult::Cohomology { degree: 0, dim: 14 });
        assert_eq!(bbw_cohomology(c, 1), BbwResult::Singular);
    }

    #[test]
    fn sym2_cayley() {
        let s = sym2_cayley_weight();
        assert_eq!(s.add(RHO), Weight::new(-3, 3));
        assert_eq!(bbw_cohomology(s, 0), BbwResult::Singular);
        assert_eq!(bbw_cohomology(s, 2), BbwResult::Cohomology { degree: 1, dim: 14 });
        assert_eq!(bbw_cohomology(s, 1), BbwResult::Cohomology { degree: 1, dim: 7 });
        assert_eq!(bbw_cohomology(s, -1), BbwResult::Cohomology { degree: 2, dim: 1 });
    }

    #[test]
    fn euler_characteristic_agrees_with_hrr() {
        let q5 = Ambient::Quadric(5);
        let c = ChernVector::new(q5, 2, &[-1, 1]);
        let pc = hrr_chi(&c);
        let ps = hrr_chi(&c.sym2());
        for t in -8..=8 {
            assert_eq!(pc.eval_int(t), crate::numeric::q(chi_crosscheck(cayley_weight(), t)), "C({t})");
            assert_eq!(ps.eval_int(t), crate::numeric::q(chi_crosscheck(sym2_cayley_weight(), t)), "Sym2 C({t})");
        }
        let o = hrr_chi(&ChernVector::line(q5, 0));
        for t in -8..=8 {
            assert_eq!(o.eval_int(t), crate::numeric::q(chi_crosscheck(Weight::ZERO, t)));
        }
    }

    proptest! {
        #[test]
        fn unique_dominant_chamber(a in -20i64..20, b in -20i64..20) {
            let v = Weight::new(a, b);
            let singular = positive_roots().into_iter().any(|r| v.inner(r) == 0);
            let g = weyl_group();
            let hits: Vec<&WeylElement> = g.iter().filter(|e| {
                let u = e.apply(v);
                u.a > 0 && u.b > 0
            }).collect();
            let res = bbw_cohomology(v.sub(RHO), 0);
            if singular {
                prop_assert!(hits.is_empty());
                prop_assert_eq!(res, BbwResult::Singular);
            } else {
                prop_assert_eq!(hits.len(), 1);
                let u = hits[0].apply(v);
                let dim = weyl_dimension(u.sub(RHO)).unwrap();
                prop_assert_eq!(res, BbwResult::Cohomology { degree: hits[0].length(), dim });
            }
        }

        #[test]
        fn dimension_of_dual(a in 0i64..15, b in 0i64..15) {
            let w = Weight::new(a, b);
            prop_assert_eq!(weyl_dimension(w).unwrap(), weyl_dimension(w.dual()).unwrap());
        }
    }
}
