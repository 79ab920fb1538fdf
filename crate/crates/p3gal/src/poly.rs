//! Univariate polynomials with exact rational coefficients.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;

pub type BigRat = BigRational;

/// Dense polynomial, coefficients ascending by degree, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RatPoly {
    coeffs: Vec<BigRat>,
}

impl RatPoly {
    pub fn new(mut coeffs: Vec<BigRat>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        RatPoly { coeffs }
    }

    pub fn zero() -> Self {
        RatPoly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        RatPoly::constant(BigRat::one())
    }

    pub fn constant(c: BigRat) -> Self {
        RatPoly::new(vec![c])
    }

    /// X^n
    pub fn monomial(n: usize) -> Self {
        let mut coeffs = vec![BigRat::zero(); n + 1];
        coeffs[n] = BigRat::one();
        RatPoly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        RatPoly::new(
            coeffs
                .iter()
                .map(|&c| BigRat::from_integer(BigInt::from(c)))
                .collect(),
        )
    }

    pub fn coeffs(&self) -> &[BigRat] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigRat {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().map_or(false, |c| c.is_one())
    }

    pub fn add(&self, other: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        RatPoly::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        RatPoly::new((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    pub fn neg(&self) -> RatPoly {
        RatPoly::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }

    pub fn mul(&self, other: &RatPoly) -> RatPoly {
        if self.is_zero() || other.is_zero() {
            return RatPoly::zero();
        }
        let mut out = vec![BigRat::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RatPoly::new(out)
    }

    pub fn scale(&self, c: &BigRat) -> RatPoly {
        RatPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Euclidean division; panics if divisor is zero.
    pub fn div_rem(&self, divisor: &RatPoly) -> (RatPoly, RatPoly) {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        let dd = divisor.degree().unwrap();
        let lead_inv = BigRat::one() / divisor.coeffs[dd].clone();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (RatPoly::zero(), self.clone());
        }
        let mut quot = vec![BigRat::zero(); rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            if rem[i].is_zero() {
                continue;
            }
            let q = &rem[i] * &lead_inv;
            for j in 0..dd {
                let t = &q * &divisor.coeffs[j];
                rem[i - dd + j] -= t;
            }
            rem[i] = BigRat::zero();
            quot[i - dd] = q;
        }
        (RatPoly::new(quot), RatPoly::new(rem))
    }

    /// Exact division; panics on a nonzero remainder.
    pub fn exact_div(&self, divisor: &RatPoly) -> RatPoly {
        let (q, r) = self.div_rem(divisor);
        assert!(r.is_zero(), "division was not exact");
        q
    }

    pub fn eval(&self, x: &BigRat) -> BigRat {
        let mut acc = BigRat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// self(inner): polynomial composition.
    pub fn compose(&self, inner: &RatPoly) -> RatPoly {
        let mut acc = RatPoly::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(inner).add(&RatPoly::constant(c.clone()));
        }
        acc
    }

    pub fn derivative(&self) -> RatPoly {
        RatPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigRat::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    pub fn pow(&self, n: u32) -> RatPoly {
        let mut acc = RatPoly::one();
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// JSON coefficient array, ascending degree, rationals as "num/den" strings.
    pub fn coeff_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(rat_string).collect()
    }
}

pub fn rat_string(c: &BigRat) -> String {
    if c.denom().is_one() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {} ", sign)?;
            }
            let coeff_part = if mag.is_one() && i > 0 {
                String::new()
            } else {
                rat_string(&mag)
            };
            match i {
                0 => write!(f, "{}", rat_string(&mag))?,
                1 if coeff_part.is_empty() => write!(f, "X")?,
                1 => write!(f, "{}*X", coeff_part)?,
                _ if coeff_part.is_empty() => write!(f, "X^{}", i)?,
                _ => write!(f, "{}*X^{}", coeff_part, i)?,
            }
        }
        Ok(())
    }
}

/// The m-th cyclotomic polynomial, by iterated exact division of x^m - 1
/// by Phi_d over the proper divisors d of m.
pub fn cyclotomic_polynomial(m: u64) -> RatPoly {
    assert!(m >= 1);
    if m == 1 {
        return RatPoly::from_ints(&[-1, 1]);
    }
    let mut xm_minus_1 = vec![BigRat::zero(); m as usize + 1];
    xm_minus_1[0] = -BigRat::one();
    xm_minus_1[m as usize] = BigRat::one();
    let mut quot = RatPoly::new(xm_minus_1);
    for d in 1..m {
        if m % d == 0 {
            quot = quot.exact_div(&cyclotomic_polynomial(d));
        }
    }
    quot
}
