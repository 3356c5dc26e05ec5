use std::fmt;

/// Element of the exterior algebra on at most 16 generators over GF(2).
/// Basis monomials are squarefree bitmasks; in characteristic 2 the product
/// carries no signs.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ExteriorElement {
    /// Sorted, duplicate-free list of basis masks with coefficient 1.
    terms: Vec<u16>,
}

impl ExteriorElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self { terms: vec![0] }
    }

    pub fn generator(i: usize) -> Self {
        assert!(i < 16);
        Self { terms: vec![1 << i] }
    }

    pub fn basis(mask: u16) -> Self {
        Self { terms: vec![mask] }
    }

    pub fn from_masks(masks: impl IntoIterator<Item = u16>) -> Self {
        let mut terms: Vec<u16> = Vec::new();
        for m in masks {
            terms.push(m);
        }
        terms.sort_unstable();
        // x + x = 0
        let mut out: Vec<u16> = Vec::with_capacity(terms.len());
        for m in terms {
            if out.last() == Some(&m) {
                out.pop();
            } else {
                out.push(m);
            }
        }
        Self { terms: out }
    }

    pub fn terms(&self) -> &[u16] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Degree if homogeneous.
    pub fn degree(&self) -> Option<u32> {
        let d = self.terms.first()?.count_ones();
        self.terms.iter().all(|m| m.count_ones() == d).then_some(d)
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::from_masks(self.terms.iter().chain(other.terms.iter()).copied())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Vec::new();
        for &a in &self.terms {
            for &b in &other.terms {
                if a & b == 0 {
                    out.push(a | b);
                }
            }
        }
        Self::from_masks(out)
    }

    /// Parse `e0*e2*e5 + e1` style expressions (generators named `e<i>`).
    pub fn parse(text: &str) -> Option<Self> {
        let mut acc = Self::zero();
        for term in text.split('+') {
            let term = term.trim();
            if term == "0" {
                continue;
            }
            let mut t = Self::one();
            if term != "1" {
                for f in term.split('*') {
                    let i: usize = f.trim().strip_prefix('e')?.parse().ok()?;
                    if i >= 16 {
                        return None;
                    }
                    t = t.mul(&Self::generator(i));
                }
            }
            acc = acc.add(&t);
        }
        Some(acc)
    }
}

impl fmt::Display for ExteriorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|&m| {
                if m == 0 {
                    "1".to_string()
                } else {
                    (0..16).filter(|i| m >> i & 1 == 1).map(|i| format!("e{i}")).collect::<Vec<_>>().join("*")
                }
            })
            .collect();
        write!(f, "{}", parts.join("+"))
    }
}

impl fmt::Debug for ExteriorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn squares_vanish_and_commute() {
        let e1 = ExteriorElement::generator(1);
        let e3 = ExteriorElement::generator(3);
        assert!(e1.mul(&e1).is_zero());
        assert_eq!(e1.mul(&e3), e3.mul(&e1));
        let s = e1.add(&e3);
        assert!(s.mul(&s).is_zero());
    }

    #[test]
    fn parse_round_trip() {
        let a = ExteriorElement::parse("e0*e2 + e5 + e2*e0*e1").unwrap();
        assert_eq!(ExteriorElement::parse(&a.to_string()).unwrap(), a);
        assert_eq!(a.terms().len(), 3);
        assert!(ExteriorElement::parse("e0*e0").unwrap().is_zero());
    }
}
