use std::fmt;

/// Exponent vector packed into 16 bytes, one byte per variable.
///
/// Exponents must stay below 128 so that divisibility and lcm can be decided
/// with borrow-free byte arithmetic on the whole word.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct Monomial(pub(crate) u128);

const HIGH: u128 = 0x8080_8080_8080_8080_8080_8080_8080_8080;
const LOW: u128 = 0x0101_0101_0101_0101_0101_0101_0101_0101;

impl Monomial {
    pub const MAX_VARS: usize = 16;
    pub const MAX_EXPONENT: u32 = 127;

    pub const ONE: Monomial = Monomial(0);

    pub fn from_exponents(exps: &[u32]) -> Self {
        assert!(exps.len() <= Self::MAX_VARS, "too many variables");
        let mut w = 0u128;
        for (i, &e) in exps.iter().enumerate() {
            assert!(e <= Self::MAX_EXPONENT, "exponent {e} too large");
            w |= (e as u128) << (8 * i);
        }
        Monomial(w)
    }

    pub fn var(i: usize) -> Self {
        Self::var_pow(i, 1)
    }

    pub fn var_pow(i: usize, e: u32) -> Self {
        assert!(i < Self::MAX_VARS && e <= Self::MAX_EXPONENT);
        Monomial((e as u128) << (8 * i))
    }

    #[inline]
    pub fn exponent(&self, i: usize) -> u32 {
        ((self.0 >> (8 * i)) & 0xff) as u32
    }

    pub fn exponents(&self, nvars: usize) -> Vec<u32> {
        (0..nvars).map(|i| self.exponent(i)).collect()
    }

    #[inline]
    pub fn is_one(&self) -> bool {
        self.0 == 0
    }

    /// Standard degree (sum of exponents).
    #[inline]
    pub fn degree(&self) -> u32 {
        let mut w = self.0;
        let mut s = 0u32;
        while w != 0 {
            s += (w & 0xff) as u32;
            w >>= 8;
        }
        s
    }

    #[inline]
    pub fn weighted_degree(&self, weights: &[u32]) -> u32 {
        let mut s = 0;
        for (i, w) in weights.iter().enumerate() {
            s += w * self.exponent(i);
        }
        s
    }

    #[inline]
    pub fn mul(self, other: Monomial) -> Monomial {
        let r = self.0.wrapping_add(other.0);
        debug_assert!(r & HIGH == 0, "exponent overflow");
        Monomial(r)
    }

    /// `self | other`
    #[inline]
    pub fn divides(self, other: Monomial) -> bool {
        ((other.0 | HIGH).wrapping_sub(self.0)) & HIGH == HIGH
    }

    /// `self / other`; caller guarantees `other | self`.
    #[inline]
    pub fn div(self, other: Monomial) -> Monomial {
        debug_assert!(other.divides(self));
        Monomial(self.0 - other.0)
    }

    #[inline]
    fn ge_mask(a: u128, b: u128) -> u128 {
        // 0xff in every byte where a >= b
        let flags = ((a | HIGH).wrapping_sub(b) & HIGH) >> 7;
        flags * 0xff
    }

    #[inline]
    pub fn lcm(self, other: Monomial) -> Monomial {
        let m = Self::ge_mask(self.0, other.0);
        Monomial((self.0 & m) | (other.0 & !m))
    }

    #[inline]
    pub fn gcd(self, other: Monomial) -> Monomial {
        let m = Self::ge_mask(self.0, other.0);
        Monomial((other.0 & m) | (self.0 & !m))
    }

    #[inline]
    pub fn coprime(self, other: Monomial) -> bool {
        let nz = |w: u128| ((w | HIGH).wrapping_sub(LOW)) & HIGH;
        nz(self.0) & nz(other.0) == 0
    }

    pub fn pow(self, e: u32) -> Monomial {
        let mut r = Monomial::ONE;
        for _ in 0..e {
            r = r.mul(self);
        }
        r
    }

    /// Permute variables: exponent of variable `i` moves to `perm[i]`.
    pub fn permute(&self, perm: &[usize]) -> Monomial {
        let mut w = 0u128;
        for (i, &j) in perm.iter().enumerate() {
            w |= (self.exponent(i) as u128) << (8 * j);
        }
        Monomial(w)
    }

    /// Revlex comparison restricted to the variables selected by `mask`
    /// (a byte mask). Larger means "bigger" in grevlex tie-breaking: the
    /// monomial with the smaller exponent in the last differing variable wins.
    #[inline]
    pub fn revlex_cmp(&self, other: &Monomial, mask: u128) -> std::cmp::Ordering {
        let x = (self.0 ^ other.0) & mask;
        if x == 0 {
            return std::cmp::Ordering::Equal;
        }
        let byte = (127 - x.leading_zeros()) / 8;
        let a = (self.0 >> (8 * byte)) & 0xff;
        let b = (other.0 >> (8 * byte)) & 0xff;
        b.cmp(&a)
    }

    /// Moves every exponent `k` variables up (variable `i` becomes `i + k`).
    #[inline]
    pub fn shift_up(self, k: usize) -> Monomial {
        if k >= 16 {
            return Monomial::ONE;
        }
        Monomial(self.0 << (8 * k))
    }

    /// Inverse of [`Monomial::shift_up`], discarding variables below `k`.
    #[inline]
    pub fn shift_down(self, k: usize) -> Monomial {
        if k >= 16 {
            return Monomial::ONE;
        }
        Monomial(self.0 >> (8 * k))
    }

    /// Restriction to the variables in `range`, kept at their positions.
    #[inline]
    pub fn restrict(self, range: std::ops::Range<usize>) -> Monomial {
        Monomial(self.0 & Self::byte_mask(range))
    }

    pub fn byte_mask(vars: std::ops::Range<usize>) -> u128 {
        let mut m = 0u128;
        for i in vars {
            m |= 0xffu128 << (8 * i);
        }
        m
    }

    /// All monomials of standard degree `d` in `n` variables, in no particular order.
    pub fn all_of_degree(n: usize, d: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        let mut exps = vec![0u32; n];
        fn rec(i: usize, left: u32, exps: &mut Vec<u32>, out: &mut Vec<Monomial>) {
            let n = exps.len();
            if i + 1 == n {
                exps[i] = left;
                out.push(Monomial::from_exponents(exps));
                return;
            }
            for e in (0..=left).rev() {
                exps[i] = e;
                rec(i + 1, left - e, exps, out);
            }
            exps[i] = 0;
        }
        if n == 0 {
            if d == 0 {
                out.push(Monomial::ONE);
            }
            return out;
        }
        rec(0, d, &mut exps, &mut out);
        out
    }

    /// Monomials of weighted degree `d`.
    pub fn all_of_weighted_degree(weights: &[u32], d: u32) -> Vec<Monomial> {
        let n = weights.len();
        let mut out = Vec::new();
        let mut exps = vec![0u32; n];
        fn rec(i: usize, left: u32, w: &[u32], exps: &mut Vec<u32>, out: &mut Vec<Monomial>) {
            if i == w.len() {
                if left == 0 {
                    out.push(Monomial::from_exponents(exps));
                }
                return;
            }
            let mut e = 0;
            while e * w[i] <= left {
                exps[i] = e;
                rec(i + 1, left - e * w[i], w, exps, out);
                e += 1;
            }
            exps[i] = 0;
        }
        rec(0, d, weights, &mut exps, &mut out);
        let _ = n;
        out
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let e: Vec<u32> = (0..Self::MAX_VARS).map(|i| self.exponent(i)).collect();
        let last = e.iter().rposition(|&x| x != 0).map_or(0, |p| p + 1);
        write!(f, "{:?}", &e[..last])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn mono(e: &[u32]) -> Monomial {
        Monomial::from_exponents(e)
    }

    #[test]
    fn divisibility_and_lcm() {
        let a = mono(&[1, 2, 0]);
        let b = mono(&[2, 1, 3]);
        assert!(!a.divides(b));
        assert_eq!(a.lcm(b), mono(&[2, 2, 3]));
        assert_eq!(a.gcd(b), mono(&[1, 1, 0]));
        assert!(a.gcd(b).divides(a));
        assert!(mono(&[1, 0, 0]).coprime(mono(&[0, 4, 1])));
        assert!(!mono(&[1, 0, 1]).coprime(mono(&[0, 4, 1])));
        assert_eq!(Monomial::all_of_degree(3, 2).len(), 6);
        assert_eq!(Monomial::all_of_weighted_degree(&[1, 2], 4).len(), 3);
    }

    proptest! {
        #[test]
        fn packed_ops_match_exponentwise(a in prop::collection::vec(0u32..60, 7), b in prop::collection::vec(0u32..60, 7)) {
            let (ma, mb) = (mono(&a), mono(&b));
            let div = a.iter().zip(&b).all(|(x, y)| x <= y);
            prop_assert_eq!(ma.divides(mb), div);
            let l: Vec<u32> = a.iter().zip(&b).map(|(x, y)| *x.max(y)).collect();
            prop_assert_eq!(ma.lcm(mb), mono(&l));
            let g: Vec<u32> = a.iter().zip(&b).map(|(x, y)| *x.min(y)).collect();
            prop_assert_eq!(ma.gcd(mb), mono(&g));
            prop_assert_eq!(ma.mul(mb).div(mb), ma);
            prop_assert_eq!(ma.degree(), a.iter().sum::<u32>());
        }
    }
}
