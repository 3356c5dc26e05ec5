//! Univariate polynomials with exact rational coefficients.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// `c_0 + c_1 t + ... + c_k t^k`, trailing zeros trimmed.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct QPoly {
    coeffs: Vec<BigRational>,
}

impl QPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        QPoly { coeffs }
    }

    pub fn zero() -> Self {
        QPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(vec![c])
    }

    /// The variable `t`.
    pub fn t() -> Self {
        Self::new(vec![q(0), q(1)])
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, o: &QPoly) -> QPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        QPoly::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }

    pub fn sub(&self, o: &QPoly) -> QPoly {
        self.add(&o.scale(&q(-1)))
    }

    pub fn scale(&self, c: &BigRational) -> QPoly {
        QPoly::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn mul(&self, o: &QPoly) -> QPoly {
        if self.is_zero() || o.is_zero() {
            return QPoly::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        QPoly::new(out)
    }

    pub fn eval(&self, t: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * t + c;
        }
        acc
    }

    pub fn eval_int(&self, t: i64) -> BigRational {
        self.eval(&q(t))
    }

    /// `p(t + a)`
    pub fn shift(&self, a: i64) -> QPoly {
        let lin = QPoly::new(vec![q(a), q(1)]);
        let mut acc = QPoly::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(&lin).add(&QPoly::constant(c.clone()));
        }
        acc
    }

    /// `binom(t + a, n)` as a polynomial in `t`.
    pub fn binomial(a: i64, n: usize) -> QPoly {
        let mut p = QPoly::constant(q(1));
        let mut fact = BigInt::one();
        for k in 0..n {
            p = p.mul(&QPoly::new(vec![q(a - k as i64), q(1)]));
            fact *= BigInt::from(k as i64 + 1);
        }
        p.scale(&BigRational::new(BigInt::one(), fact))
    }

    /// Lagrange interpolation through `(x_i, y_i)`.
    pub fn interpolate(points: &[(i64, BigRational)]) -> QPoly {
        let mut acc = QPoly::zero();
        for (i, (xi, yi)) in points.iter().enumerate() {
            let mut basis = QPoly::constant(q(1));
            let mut denom = q(1);
            for (j, (xj, _)) in points.iter().enumerate() {
                if i != j {
                    basis = basis.mul(&QPoly::new(vec![q(-xj), q(1)]));
                    denom *= q(xi - xj);
                }
            }
            acc = acc.add(&basis.scale(&(yi / denom)));
        }
        acc
    }
}

impl fmt::Display for QPoly {
    /// Highest degree first, e.g. `1/60 t^5 + 1/3 t^4 - 14`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            first = false;
            let coef = if a.is_one() && i > 0 { String::new() } else { a.to_string() };
            let sep = if coef.is_empty() { "" } else { " " };
            match i {
                0 => write!(f, "{coef}")?,
                1 => write!(f, "{coef}{sep}t")?,
                _ => write!(f, "{coef}{sep}t^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_values() {
        let p = QPoly::binomial(5, 5);
        for t in -8..8 {
            let expect = if t + 5 >= 5 || t + 5 < 0 {
                // generalized binomial of a polynomial
                (0..5).fold(q(1), |acc, k| acc * q(t + 5 - k)) / q(120)
            } else {
                q(0)
            };
            assert_eq!(p.eval_int(t), expect);
        }
        assert_eq!(p.eval_int(1), q(6));
    }

    #[test]
    fn interpolation_recovers() {
        let p = QPoly::new(vec![frac(-14, 1), frac(-51, 10), frac(11, 3), frac(25, 12), frac(1, 3), frac(1, 60)]);
        let pts: Vec<_> = (0..6).map(|t| (t, p.eval_int(t))).collect();
        assert_eq!(QPoly::interpolate(&pts), p);
        assert_eq!(p.to_string(), "1/60 t^5 + 1/3 t^4 + 25/12 t^3 + 11/3 t^2 - 51/10 t - 14");
        assert_eq!(p.shift(1).shift(-1), p);
    }
}
