//! Rational Chow rings of P^n and of odd-dimensional quadrics, Chern class
//! calculus, Hirzebruch-Riemann-Roch and Chern classes fitted to Hilbert
//! polynomials.
//!
//! Classes are stored as truncated polynomials in the hyperplane class `h`
//! with rational coefficients. On `Q_n` (`n = 2m + 1`) the integral basis
//! in degree `k` is `eta^k` for `k <= m` and `zeta eta^(k-m-1)` above, with
//! `eta^(m+1) = 2 zeta`; integral coordinates are exposed through
//! [`ChowClass::coords`].

use std::fmt;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::module::{hilbert_polynomial, GradedModule};
use crate::numeric::{q, QPoly};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Ambient {
    Projective(usize),
    /// Smooth quadric of odd dimension.
    Quadric(usize),
}

impl Ambient {
    pub fn dim(&self) -> usize {
        match *self {
            Ambient::Projective(n) | Ambient::Quadric(n) => n,
        }
    }

    /// Degree of the ambient, `int h^n`.
    pub fn degree(&self) -> i64 {
        match self {
            Ambient::Projective(_) => 1,
            Ambient::Quadric(_) => 2,
        }
    }

    /// `h^k = factor * (integral basis element of degree k)`.
    pub fn basis_factor(&self, k: usize) -> i64 {
        match *self {
            Ambient::Projective(_) => 1,
            Ambient::Quadric(n) => {
                if k > (n - 1) / 2 {
                    2
                } else {
                    1
                }
            }
        }
    }

    /// The space a module over `ring` lives on: `P^{N-1}` for a polynomial
    /// ring in `N` variables, `Q_{N-2}` for a quadric hypersurface ring.
    pub fn of_ring(ring: &crate::ring::Ring) -> Result<Ambient> {
        let nv = ring.nvars();
        match ring.relation() {
            None if nv >= 1 => Ok(Ambient::Projective(nv - 1)),
            Some(r) if r.degree() == Some(2) && nv >= 5 && nv % 2 == 1 => Ok(Ambient::Quadric(nv - 2)),
            _ => Err(Error::Diagnostic("no Chow ring model for this ring".into())),
        }
    }

    /// Todd class of the tangent bundle, from the Euler sequence (and the
    /// normal bundle sequence `T_Q -> T_P|_Q -> O(2)` on the quadric).
    pub fn todd(&self) -> ChowClass {
        let n = self.dim();
        let x = todd_series(n, 1);
        match self {
            Ambient::Projective(_) => ChowClass::from_series(*self, series_pow(&x, n + 1, n)),
            Ambient::Quadric(_) => {
                let num = series_pow(&x, n + 2, n);
                let normal = todd_series(n, 2);
                ChowClass::from_series(*self, series_mul(&num, &series_inv(&normal, n), n))
            }
        }
    }
}

impl fmt::Display for Ambient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ambient::Projective(n) => write!(f, "P{n}"),
            Ambient::Quadric(n) => write!(f, "Q{n}"),
        }
    }
}

fn factorial(k: usize) -> BigInt {
    (1..=k as i64).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// `a x / (1 - e^{-a x})` truncated at degree `n`.
fn todd_series(n: usize, a: i64) -> Vec<BigRational> {
    // (1 - e^{-ax}) / (ax) = sum_k (-a x)^k / (k+1)!
    let inv: Vec<BigRational> = (0..=n)
        .map(|k| {
            let sign = if k % 2 == 0 { 1 } else { -1 };
            BigRational::new(BigInt::from(sign) * BigInt::from(a).pow(k as u32), factorial(k + 1))
        })
        .collect();
    series_inv(&inv, n)
}

fn series_mul(a: &[BigRational], b: &[BigRational], n: usize) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); n + 1];
    for (i, x) in a.iter().enumerate().take(n + 1) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(n + 1 - i) {
            out[i + j] += x * y;
        }
    }
    out
}

fn series_inv(a: &[BigRational], n: usize) -> Vec<BigRational> {
    let a0 = a[0].clone();
    let mut out = vec![BigRational::zero(); n + 1];
    out[0] = a0.recip();
    for k in 1..=n {
        let mut s = BigRational::zero();
        for i in 1..=k {
            if let Some(ai) = a.get(i) {
                s += ai * &out[k - i];
            }
        }
        out[k] = -s / &a0;
    }
    out
}

fn series_pow(a: &[BigRational], e: usize, n: usize) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); n + 1];
    out[0] = BigRational::one();
    for _ in 0..e {
        out = series_mul(&out, a, n);
    }
    out
}

/// Element of the rational Chow ring: `sum_k coeffs[k] h^k`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ChowClass {
    ambient: Ambient,
    coeffs: Vec<BigRational>,
}

impl ChowClass {
    fn from_series(ambient: Ambient, mut coeffs: Vec<BigRational>) -> Self {
        coeffs.resize(ambient.dim() + 1, BigRational::zero());
        ChowClass { ambient, coeffs }
    }

    pub fn zero(ambient: Ambient) -> Self {
        Self::from_series(ambient, Vec::new())
    }

    pub fn one(ambient: Ambient) -> Self {
        Self::from_series(ambient, vec![BigRational::one()])
    }

    /// The hyperplane class.
    pub fn h(ambient: Ambient) -> Self {
        Self::from_series(ambient, vec![BigRational::zero(), BigRational::one()])
    }

    /// Class with the given coefficients in the integral basis, starting in degree 0.
    pub fn from_coords(ambient: Ambient, coords: &[i64]) -> Self {
        let coeffs = coords
            .iter()
            .enumerate()
            .take(ambient.dim() + 1)
            .map(|(k, &c)| BigRational::new(BigInt::from(c), BigInt::from(ambient.basis_factor(k))))
            .collect();
        Self::from_series(ambient, coeffs)
    }

    /// `c * b_k`, with `b_k` the integral basis element of degree `k`.
    pub fn basis(ambient: Ambient, k: usize, c: BigRational) -> Self {
        let mut coeffs = vec![BigRational::zero(); ambient.dim() + 1];
        if k <= ambient.dim() {
            coeffs[k] = c / BigRational::from_integer(BigInt::from(ambient.basis_factor(k)));
        }
        Self::from_series(ambient, coeffs)
    }

    pub fn ambient(&self) -> Ambient {
        self.ambient
    }

    /// Coefficient of `h^k`.
    pub fn h_coeff(&self, k: usize) -> BigRational {
        self.coeffs.get(k).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Coefficient of the integral basis element of degree `k`.
    pub fn coord(&self, k: usize) -> BigRational {
        self.h_coeff(k) * BigRational::from_integer(BigInt::from(self.ambient.basis_factor(k)))
    }

    pub fn coords(&self) -> Vec<BigRational> {
        (0..=self.ambient.dim()).map(|k| self.coord(k)).collect()
    }

    /// Degree-`k` part.
    pub fn part(&self, k: usize) -> Self {
        let mut c = vec![BigRational::zero(); self.coeffs.len()];
        if k < c.len() {
            c[k] = self.coeffs[k].clone();
        }
        Self::from_series(self.ambient, c)
    }

    pub fn is_integral(&self) -> bool {
        self.coords().iter().all(|c| c.is_integer())
    }

    pub fn add(&self, o: &ChowClass) -> Self {
        assert_eq!(self.ambient, o.ambient);
        Self::from_series(self.ambient, self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, o: &ChowClass) -> Self {
        self.add(&o.scale(&q(-1)))
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::from_series(self.ambient, self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn mul(&self, o: &ChowClass) -> Self {
        assert_eq!(self.ambient, o.ambient);
        let n = self.ambient.dim();
        Self::from_series(self.ambient, series_mul(&self.coeffs, &o.coeffs, n))
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut out = Self::one(self.ambient);
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// Degree of the top-dimensional part.
    pub fn integral(&self) -> BigRational {
        self.h_coeff(self.ambient.dim()) * BigRational::from_integer(BigInt::from(self.ambient.degree()))
    }
}

impl fmt::Debug for ChowClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c: Vec<String> = self.coords().iter().map(|x| x.to_string()).collect();
        write!(f, "{}[{}]", self.ambient, c.join(", "))
    }
}

/// Pullback of Chow classes along a finite map, determined by the pullback
/// of the hyperplane class: `h_source -> factor * h_target`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ChowMap {
    /// Space whose classes are pulled back.
    pub from: Ambient,
    /// Space they are pulled back to.
    pub to: Ambient,
    pub factor: i64,
}

impl ChowMap {
    /// `f: P^5 -> Q5`, `f^* eta = 2 xi`.
    pub fn tango() -> Self {
        ChowMap { from: Ambient::Quadric(5), to: Ambient::Projective(5), factor: 2 }
    }

    /// `pi: Q5 -> P^5`, `pi^* xi = eta`.
    pub fn projection() -> Self {
        ChowMap { from: Ambient::Projective(5), to: Ambient::Quadric(5), factor: 1 }
    }

    /// Frobenius of `a`, multiplying the hyperplane class by 2.
    pub fn frobenius(a: Ambient) -> Self {
        ChowMap { from: a, to: a, factor: 2 }
    }

    pub fn apply(&self, c: &ChowClass) -> Result<ChowClass> {
        if c.ambient != self.from {
            return Err(Error::Diagnostic(format!("class on {} pulled back along a map from {}", c.ambient, self.from)));
        }
        let coeffs = c
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, a)| a * BigRational::from_integer(BigInt::from(self.factor).pow(k as u32)))
            .collect();
        Ok(ChowClass::from_series(self.to, coeffs))
    }
}

/// Rank and total Chern class of a (virtual) bundle.
#[derive(Clone, PartialEq, Eq)]
pub struct ChernVector {
    pub rank: i64,
    pub total: ChowClass,
}

impl ChernVector {
    /// Bundle with `c_i = classes[i-1]` times the integral basis element.
    pub fn new(ambient: Ambient, rank: i64, classes: &[i64]) -> Self {
        let mut coords = vec![1];
        coords.extend_from_slice(classes);
        ChernVector { rank, total: ChowClass::from_coords(ambient, &coords) }
    }

    /// `O(d)`.
    pub fn line(ambient: Ambient, d: i64) -> Self {
        Self::new(ambient, 1, &[d])
    }

    pub fn ambient(&self) -> Ambient {
        self.total.ambient
    }

    /// `c_i` as a class.
    pub fn c(&self, i: usize) -> ChowClass {
        self.total.part(i)
    }

    /// Coordinates of `c_1, ..., c_n`.
    pub fn classes(&self) -> Vec<BigRational> {
        self.total.coords()[1..].to_vec()
    }

    /// Integer coordinates of `c_1 .. c_k` with trailing zeros dropped.
    pub fn integer_classes(&self) -> Option<Vec<i64>> {
        let mut out: Vec<i64> = Vec::new();
        for c in self.classes() {
            if !c.is_integer() {
                return None;
            }
            out.push(i64::try_from(c.to_integer()).ok()?);
        }
        while out.last() == Some(&0) {
            out.pop();
        }
        Some(out)
    }

    pub fn whitney_sum(&self, o: &ChernVector) -> Self {
        ChernVector { rank: self.rank + o.rank, total: self.total.mul(&o.total) }
    }

    pub fn dual(&self) -> Self {
        let n = self.ambient().dim();
        let mut t = ChowClass::zero(self.ambient());
        for k in 0..=n {
            let p = self.c(k);
            t = t.add(&if k % 2 == 0 { p } else { p.scale(&q(-1)) });
        }
        ChernVector { rank: self.rank, total: t }
    }

    /// `E(d)`: `c_k(E(d)) = sum_i binom(r - i, k - i) c_i (d h)^(k - i)`.
    pub fn twist(&self, d: i64) -> Self {
        let a = self.ambient();
        let n = a.dim();
        let dh = ChowClass::h(a).scale(&q(d));
        let mut t = ChowClass::zero(a);
        for k in 0..=n {
            for i in 0..=k {
                let coef = gen_binomial(self.rank - i as i64, (k - i) as i64);
                if coef.is_zero() {
                    continue;
                }
                t = t.add(&self.c(i).mul(&dh.pow(k - i)).scale(&coef));
            }
        }
        ChernVector { rank: self.rank, total: t }
    }

    /// Power sums of the Chern roots, `p_0 = rank`.
    pub fn power_sums(&self) -> Vec<ChowClass> {
        let a = self.ambient();
        let n = a.dim();
        let e: Vec<ChowClass> = (0..=n).map(|k| self.c(k)).collect();
        let mut p = vec![ChowClass::one(a).scale(&q(self.rank))];
        for k in 1..=n {
            let sign = if (k - 1) % 2 == 0 { 1 } else { -1 };
            let mut acc = e[k].scale(&q(sign * k as i64));
            for i in 1..k {
                let s = if (k - 1 + i) % 2 == 0 { 1 } else { -1 };
                acc = acc.add(&e[k - i].mul(&p[i]).scale(&q(s)));
            }
            p.push(acc);
        }
        p
    }

    /// Inverse of [`ChernVector::power_sums`] by Newton's identities.
    pub fn from_power_sums(rank: i64, p: &[ChowClass]) -> Self {
        let a = p[0].ambient;
        let n = a.dim();
        let mut e = vec![ChowClass::one(a)];
        for k in 1..=n {
            let mut acc = ChowClass::zero(a);
            for i in 1..=k {
                let s = if (i - 1) % 2 == 0 { 1 } else { -1 };
                acc = acc.add(&e[k - i].mul(&p[i]).scale(&q(s)));
            }
            e.push(acc.scale(&crate::numeric::frac(1, k as i64)));
        }
        let total = e.iter().fold(ChowClass::zero(a), |acc, x| acc.add(x));
        ChernVector { rank, total }
    }

    /// Chern character `sum_k p_k / k!`.
    pub fn chern_character(&self) -> ChowClass {
        let p = self.power_sums();
        let mut ch = ChowClass::zero(self.ambient());
        for (k, pk) in p.iter().enumerate() {
            ch = ch.add(&pk.scale(&BigRational::new(BigInt::one(), factorial(k))));
        }
        ch
    }

    fn square(&self, sign: i64) -> Self {
        let a = self.ambient();
        let n = a.dim();
        let p = self.power_sums();
        let mut out = Vec::with_capacity(n + 1);
        for k in 0..=n {
            // sum_{i,j} (x_i + x_j)^k = sum_l binom(k,l) p_l p_{k-l}
            let mut full = ChowClass::zero(a);
            for l in 0..=k {
                full = full.add(&p[l].mul(&p[k - l]).scale(&q(crate::ring::binomial(k as u64, l as u64) as i64)));
            }
            let diag = p[k].scale(&BigRational::from_integer(BigInt::from(2).pow(k as u32)));
            out.push(full.add(&diag.scale(&q(sign))).scale(&crate::numeric::frac(1, 2)));
        }
        let r = self.rank;
        let rank = if sign > 0 { r * (r + 1) / 2 } else { r * (r - 1) / 2 };
        Self::from_power_sums(rank, &out)
    }

    /// Tensor product, via `p_k(E (x) F) = sum_l binom(k, l) p_l(E) p_{k-l}(F)`.
    pub fn tensor(&self, o: &ChernVector) -> Self {
        let a = self.ambient();
        let (p, r) = (self.power_sums(), o.power_sums());
        let out: Vec<ChowClass> = (0..=a.dim())
            .map(|k| {
                (0..=k).fold(ChowClass::zero(a), |acc, l| {
                    acc.add(&p[l].mul(&r[k - l]).scale(&q(crate::ring::binomial(k as u64, l as u64) as i64)))
                })
            })
            .collect();
        Self::from_power_sums(self.rank * o.rank, &out)
    }

    pub fn sym2(&self) -> Self {
        self.square(1)
    }

    pub fn wedge2(&self) -> Self {
        self.square(-1)
    }

    pub fn pullback(&self, map: &ChowMap) -> Result<Self> {
        Ok(ChernVector { rank: self.rank, total: map.apply(&self.total)? })
    }
}

impl fmt::Debug for ChernVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c: Vec<String> = self.classes().iter().map(|x| x.to_string()).collect();
        write!(f, "rank {} on {} c=({})", self.rank, self.ambient(), c.join(", "))
    }
}

/// `binom(a, k)` for any integer `a`, `k >= 0`.
fn gen_binomial(a: i64, k: i64) -> BigRational {
    if k < 0 {
        return BigRational::zero();
    }
    let mut num = BigInt::one();
    for i in 0..k {
        num *= BigInt::from(a - i);
    }
    BigRational::new(num, factorial(k as usize))
}

/// `chi(E(t))` as a polynomial in `t`.
pub fn hrr_chi(e: &ChernVector) -> QPoly {
    let a = e.ambient();
    let n = a.dim();
    let base = e.chern_character().mul(&a.todd());
    let h = ChowClass::h(a);
    let coeffs = (0..=n)
        .map(|k| base.mul(&h.pow(k)).integral() / BigRational::from_integer(factorial(k)))
        .collect();
    QPoly::new(coeffs)
}

/// Chern classes of a bundle of the given rank whose Hilbert polynomial is
/// `hp`, solving degree by degree; fails unless the solution is integral
/// and reproduces `hp` exactly.
pub fn chern_from_polynomial(ambient: Ambient, rank: i64, hp: &QPoly) -> Result<ChernVector> {
    let n = ambient.dim();
    let mut coords: Vec<BigRational> = vec![BigRational::one()];
    let build = |coords: &[BigRational]| {
        let mut t = ChowClass::zero(ambient);
        for (k, c) in coords.iter().enumerate() {
            t = t.add(&ChowClass::basis(ambient, k, c.clone()));
        }
        ChernVector { rank, total: t }
    };
    let top = (rank.max(0) as usize).min(n);
    for k in 1..=top {
        let target = hp.coeff(n - k);
        let mut c0 = coords.clone();
        c0.push(BigRational::zero());
        let mut c1 = coords.clone();
        c1.push(BigRational::one());
        let a0 = hrr_chi(&build(&c0)).coeff(n - k);
        let a1 = hrr_chi(&build(&c1)).coeff(n - k);
        let slope = &a1 - &a0;
        if slope.is_zero() {
            return Err(Error::Diagnostic(format!("c_{k} is not determined by the Hilbert polynomial")));
        }
        let x = (target - a0) / slope;
        if !x.is_integer() {
            return Err(Error::Diagnostic(format!("c_{k} = {x} is not an integer")));
        }
        coords.push(x);
    }
    let e = build(&coords);
    if &hrr_chi(&e) != hp {
        return Err(Error::Diagnostic(format!("no bundle of rank {rank} has this Hilbert polynomial")));
    }
    Ok(e)
}

/// Chern classes of the sheaf of `m`, assumed locally free of rank `rank`.
pub fn chern_from_hilbert(m: &GradedModule, rank: i64) -> Result<ChernVector> {
    let ambient = Ambient::of_ring(m.ring())?;
    chern_from_polynomial(ambient, rank, &hilbert_polynomial(m)?)
}

/// One solution of the Chern polynomial identity `c(E^dual) c(Q) = 1` on `Q_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LemmaSolution {
    /// `c_1(E) .. c_{k+1}(E)` in integral coordinates.
    pub a: Vec<i64>,
    /// `c_1(Q) .. c_{n-k}(Q)` in integral coordinates.
    pub b: Vec<i64>,
}

type R128 = Ratio<i128>;

/// Chern classes of the quotient forced by `c(E)` on `Q_n` with
/// `rank E = (n+1)/2`, if they exist: the inverse of `c(E^dual)` must stop
/// at degree `(n-1)/2` and have integral coordinates.
pub fn forced_quotient_classes(n: usize, a: &[i64]) -> Option<Vec<i64>> {
    let amb = Ambient::Quadric(n);
    let k = (n - 1) / 2;
    let qrank = n - k;
    // h-coefficients of c(E^dual)
    let mut c = vec![R128::from_integer(1)];
    for (i, &ai) in a.iter().enumerate() {
        let deg = i + 1;
        let sign = if deg % 2 == 0 { 1 } else { -1 };
        c.push(R128::new(sign * ai as i128, amb.basis_factor(deg) as i128));
    }
    let mut b = vec![R128::from_integer(1)];
    for j in 1..=n {
        let mut s = R128::from_integer(0);
        for i in 1..=j.min(c.len() - 1) {
            s += c[i] * b[j - i];
        }
        b.push(-s);
    }
    if b[qrank + 1..].iter().any(|x| !x.is_zero()) {
        return None;
    }
    let mut out = Vec::new();
    for (j, x) in b.iter().enumerate().take(qrank + 1).skip(1) {
        let v = x * R128::from_integer(amb.basis_factor(j) as i128);
        if !v.is_integer() {
            return None;
        }
        out.push(v.to_integer() as i64);
    }
    Some(out)
}

/// All `c(E)` on `Q_n` (`rank E = (n+1)/2`, `0 < c_1 <= bound`,
/// `|c_i| <= bound`) for which a quotient bundle of rank `(n-1)/2 + 1`
/// with `c(E^dual) c(Q) = 1` exists.
pub fn lemma_enumeration(n: usize, bound: i64) -> Result<Vec<LemmaSolution>> {
    if n % 2 == 0 || n < 3 {
        return Err(Error::OutOfRange(format!("n = {n} must be odd and at least 3")));
    }
    let r = n.div_ceil(2);
    let mut out = Vec::new();
    let mut a = vec![0i64; r];
    fn rec(i: usize, a: &mut Vec<i64>, n: usize, bound: i64, out: &mut Vec<LemmaSolution>) {
        if i == a.len() {
            if let Some(b) = forced_quotient_classes(n, a) {
                out.push(LemmaSolution { a: a.clone(), b });
            }
            return;
        }
        let lo = if i == 0 { 1 } else { -bound };
        for v in lo..=bound {
            a[i] = v;
            rec(i + 1, a, n, bound, out);
        }
    }
    rec(0, &mut a, n, bound, &mut out);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::frac;
    use proptest::prelude::*;

    const P5: Ambient = Ambient::Projective(5);
    const Q5: Ambient = Ambient::Quadric(5);

    fn binom_poly(a: i64, n: usize) -> QPoly {
        QPoly::binomial(a, n)
    }

    #[test]
    fn quadric_relation() {
        let eta = ChowClass::h(Q5);
        let zeta = ChowClass::basis(Q5, 3, q(1));
        assert_eq!(eta.pow(3), zeta.scale(&q(2)));
        assert!(eta.pow(6).coeffs.iter().all(|c| c.is_zero()));
        assert_eq!(eta.pow(5).integral(), q(2));
        assert_eq!(eta.pow(2).mul(&zeta).integral(), q(1));
    }

    #[test]
    fn chi_of_line_bundles() {
        assert_eq!(hrr_chi(&ChernVector::line(P5, 0)), binom_poly(5, 5));
        let q5 = binom_poly(6, 6).sub(&binom_poly(4, 6));
        assert_eq!(hrr_chi(&ChernVector::line(Q5, 0)), q5);
        assert_eq!(hrr_chi(&ChernVector::line(P5, 0)).eval_int(0), q(1));
        assert_eq!(hrr_chi(&ChernVector::line(Q5, 0)).eval_int(0), q(1));
    }

    #[test]
    fn chi_of_rank_two_bundle_on_p5() {
        let t = ChernVector::new(P5, 2, &[2, 4]);
        let expected = QPoly::new(vec![q(-14), frac(-51, 10), frac(11, 3), frac(25, 12), frac(1, 3), frac(1, 60)]);
        assert_eq!(hrr_chi(&t), expected);
    }

    #[test]
    fn cayley_bundle_classes() {
        let c = ChernVector::new(Q5, 2, &[-1, 1]);
        assert_eq!(c.wedge2().integer_classes(), Some(vec![-1]));
        assert_eq!(c.dual().integer_classes(), Some(vec![1, 1]));
        let c1 = c.twist(1);
        assert_eq!(c1.integer_classes(), Some(vec![1, 1]));
        let t = c1.pullback(&ChowMap::tango()).unwrap();
        assert_eq!(t.integer_classes(), Some(vec![2, 4]));
        let sym = c.sym2();
        assert_eq!(sym.rank, 3);
        let expected = QPoly::new(vec![q(0), frac(-81, 20), frac(-27, 8), q(0), frac(3, 8), frac(1, 20)]);
        assert_eq!(hrr_chi(&sym), expected);
    }

    #[test]
    fn projection_pullback() {
        let o1 = ChernVector::line(P5, 1).pullback(&ChowMap::projection()).unwrap();
        assert_eq!(o1.integer_classes(), Some(vec![1]));
        let frob = ChernVector::line(Q5, 1).pullback(&ChowMap::frobenius(Q5)).unwrap();
        assert_eq!(frob.integer_classes(), Some(vec![2]));
    }

    #[test]
    fn fit_line_bundle() {
        for a in -3..=3 {
            let hp = hrr_chi(&ChernVector::line(P5, a));
            let e = chern_from_polynomial(P5, 1, &hp).unwrap();
            assert_eq!(e.integer_classes(), Some(if a == 0 { vec![] } else { vec![a] }));
        }
    }

    #[test]
    fn fit_rejects_wrong_rank() {
        let hp = hrr_chi(&ChernVector::new(P5, 2, &[2, 4]));
        assert!(chern_from_polynomial(P5, 1, &hp).is_err());
    }

    #[test]
    fn lemma_family() {
        let sols = lemma_enumeration(5, 50).unwrap();
        let a: Vec<Vec<i64>> = sols.iter().map(|s| s.a.clone()).collect();
        assert_eq!(a, vec![vec![2, 2, 2], vec![4, 8, 16]]);
        assert!(lemma_enumeration(5, 1).unwrap().is_empty());
        assert_eq!(forced_quotient_classes(5, &[2, 2, 2]), Some(vec![2, 2, 2]));
    }

    proptest! {
        #[test]
        fn ring_is_associative(a in prop::collection::vec(-5i64..5, 6), b in prop::collection::vec(-5i64..5, 6), c in prop::collection::vec(-5i64..5, 6)) {
            for amb in [P5, Q5] {
                let (x, y, z) = (ChowClass::from_coords(amb, &a), ChowClass::from_coords(amb, &b), ChowClass::from_coords(amb, &c));
                prop_assert_eq!(x.mul(&y).mul(&z), x.mul(&y.mul(&z)));
                prop_assert!(x.mul(&y).is_integral());
            }
        }

        #[test]
        fn whitney_matches_power_sums(a in prop::collection::vec(-4i64..4, 2), b in prop::collection::vec(-4i64..4, 2)) {
            let e = ChernVector::new(Q5, 2, &a);
            let f = ChernVector::new(Q5, 2, &b);
            let s = e.whitney_sum(&f);
            let pe = e.power_sums();
            let pf = f.power_sums();
            let p: Vec<ChowClass> = pe.iter().zip(&pf).map(|(x, y)| x.add(y)).collect();
            prop_assert_eq!(ChernVector::from_power_sums(4, &p), s.clone());
            prop_assert_eq!(hrr_chi(&s), hrr_chi(&e).add(&hrr_chi(&f)));
        }

        #[test]
        fn fit_inverts_hrr(r in 1i64..4, c in prop::collection::vec(-3i64..4, 3), quadric in any::<bool>()) {
            let amb = if quadric { Q5 } else { P5 };
            let classes: Vec<i64> = c.into_iter().take(r as usize).collect();
            let e = ChernVector::new(amb, r, &classes);
            let fitted = chern_from_polynomial(amb, r, &hrr_chi(&e)).unwrap();
            prop_assert_eq!(fitted, e);
        }
    }
}
