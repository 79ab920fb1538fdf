//! Exact arithmetic in Q(zeta_m), elements held in canonical form mod Phi_m.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use once_cell::sync::Lazy;
use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use crate::arith::euler_phi;
use crate::error::{Error, Result};
use crate::poly::{cyclotomic_polynomial, rat_string, RatPoly};

pub type BigRat = BigRational;

static PHI_CACHE: Lazy<Mutex<HashMap<u64, Arc<RatPoly>>>> =
    Lazy::new(|| Mutex::new(HashMap::new()));

/// Phi_m, computed once per conductor.
pub fn modulus(m: u64) -> Arc<RatPoly> {
    let mut cache = PHI_CACHE.lock().unwrap();
    cache
        .entry(m)
        .or_insert_with(|| Arc::new(cyclotomic_polynomial(m)))
        .clone()
}

/// Element of Q(zeta_m) in the power basis {1, zeta, ..., zeta^(phi(m)-1)},
/// fully reduced mod Phi_m so equality is coefficientwise.
#[derive(Clone, PartialEq, Eq)]
pub struct CycNum {
    m: u64,
    coeffs: Vec<BigRat>,
}

/// Galois automorphism zeta_m -> zeta_m^k with gcd(k, m) = 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CycAut {
    m: u64,
    k: u64,
}

impl CycAut {
    pub fn new(m: u64, k: i64) -> Self {
        let k = k.rem_euclid(m as i64) as u64;
        assert_eq!(num_integer::gcd(k, m), 1, "exponent not coprime to conductor");
        CycAut { m, k }
    }

    pub fn conductor(&self) -> u64 {
        self.m
    }

    pub fn exponent(&self) -> u64 {
        self.k
    }

    /// Composition: apply `self` after `other` (exponents multiply mod m).
    pub fn compose(&self, other: &CycAut) -> CycAut {
        assert_eq!(self.m, other.m);
        CycAut {
            m: self.m,
            k: crate::arith::mul_mod(self.k, other.k, self.m),
        }
    }

    pub fn pow(&self, n: u64) -> CycAut {
        CycAut {
            m: self.m,
            k: crate::arith::pow_mod(self.k, n, self.m),
        }
    }
}

impl CycNum {
    /// Canonical remainder of a raw polynomial in zeta_m mod Phi_m.
    pub fn reduce(m: u64, raw: &RatPoly) -> CycNum {
        let phi = euler_phi(m) as usize;
        let (_, rem) = raw.div_rem(&modulus(m));
        let mut coeffs = vec![BigRat::zero(); phi];
        for (i, c) in rem.coeffs().iter().enumerate() {
            coeffs[i] = c.clone();
        }
        CycNum { m, coeffs }
    }

    pub fn zero(m: u64) -> CycNum {
        CycNum {
            m,
            coeffs: vec![BigRat::zero(); euler_phi(m) as usize],
        }
    }

    pub fn from_rat(m: u64, c: BigRat) -> CycNum {
        let mut out = CycNum::zero(m);
        out.coeffs[0] = c;
        out
    }

    pub fn from_int(m: u64, c: i64) -> CycNum {
        CycNum::from_rat(m, BigRat::from_integer(BigInt::from(c)))
    }

    /// zeta_m^k
    pub fn zeta_pow(m: u64, k: i64) -> CycNum {
        let k = k.rem_euclid(m as i64) as usize;
        CycNum::reduce(m, &RatPoly::monomial(k))
    }

    pub fn conductor(&self) -> u64 {
        self.m
    }

    pub fn coeffs(&self) -> &[BigRat] {
        &self.coeffs
    }

    pub fn as_poly(&self) -> RatPoly {
        RatPoly::new(self.coeffs.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    pub fn to_rational(&self) -> Option<BigRat> {
        self.is_rational().then(|| self.coeffs[0].clone())
    }

    pub fn has_integer_coeffs(&self) -> bool {
        self.coeffs.iter().all(|c| c.denom().is_one())
    }

    fn check_conductor(&self, other: &CycNum) -> Result<()> {
        if self.m != other.m {
            return Err(Error::ConductorMismatch(self.m, other.m));
        }
        Ok(())
    }

    pub fn add(&self, other: &CycNum) -> Result<CycNum> {
        self.check_conductor(other)?;
        Ok(CycNum {
            m: self.m,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &CycNum) -> Result<CycNum> {
        self.check_conductor(other)?;
        Ok(CycNum {
            m: self.m,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn neg(&self) -> CycNum {
        CycNum {
            m: self.m,
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }

    pub fn mul(&self, other: &CycNum) -> Result<CycNum> {
        self.check_conductor(other)?;
        Ok(CycNum::reduce(self.m, &self.as_poly().mul(&other.as_poly())))
    }

    pub fn scale(&self, c: &BigRat) -> CycNum {
        CycNum {
            m: self.m,
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Inverse via extended gcd of the representative with Phi_m over Q.
    pub fn inv(&self) -> Result<CycNum> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(q) = self.to_rational() {
            return Ok(CycNum::from_rat(self.m, BigRat::one() / q));
        }
        let phi_m = modulus(self.m);
        // extended Euclid in Q[x]: s*a + t*Phi_m = gcd = const
        let mut r0 = self.as_poly();
        let mut r1 = (*phi_m).clone();
        let mut s0 = RatPoly::one();
        let mut s1 = RatPoly::zero();
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s = s0.sub(&q.mul(&s1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
        }
        // r0 is a nonzero constant: Phi_m is irreducible and a is not a multiple
        let c = r0.coeff(0);
        assert_eq!(r0.degree(), Some(0), "element shares a factor with Phi_m");
        Ok(CycNum::reduce(self.m, &s0.scale(&(BigRat::one() / c))))
    }

    pub fn div(&self, other: &CycNum) -> Result<CycNum> {
        self.mul(&other.inv()?)
    }

    /// Integer power; negative exponents via the field inverse.
    pub fn pow(&self, n: i64) -> Result<CycNum> {
        let base = if n < 0 { self.inv()? } else { self.clone() };
        let mut acc = CycNum::from_int(self.m, 1);
        for _ in 0..n.unsigned_abs() {
            acc = acc.mul(&base)?;
        }
        Ok(acc)
    }

    /// Image under zeta_m -> zeta_m^k, re-reduced.
    pub fn apply_aut(&self, s: &CycAut) -> Result<CycNum> {
        if self.m != s.m {
            return Err(Error::ConductorMismatch(self.m, s.m));
        }
        let mut raw = vec![BigRat::zero(); self.m as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                let j = crate::arith::mul_mod(i as u64, s.k, self.m) as usize;
                raw[j] += c;
            }
        }
        Ok(CycNum::reduce(self.m, &RatPoly::new(raw)))
    }

    pub fn is_fixed_by(&self, gens: &[CycAut]) -> Result<bool> {
        for s in gens {
            if self.apply_aut(s)? != *self {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Re-express in a larger conductor n (m | n): zeta_m -> zeta_n^(n/m).
    pub fn embed(&self, n: u64) -> CycNum {
        assert_eq!(n % self.m, 0, "target conductor must be a multiple");
        let step = (n / self.m) as usize;
        let mut raw = vec![BigRat::zero(); (self.m as usize - 1) * step + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            raw[i * step] = c.clone();
        }
        CycNum::reduce(n, &RatPoly::new(raw))
    }
}

impl fmt::Display for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {} ", if c.is_negative() { "-" } else { "+" })?;
            }
            match i {
                0 => write!(f, "{}", rat_string(&mag))?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{}*", rat_string(&mag))?;
                    }
                    if i == 1 {
                        write!(f, "z")?;
                    } else {
                        write!(f, "z^{}", i)?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycNum(m={}, {})", self.m, self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(m: u64, k: i64) -> CycNum {
        CycNum::zeta_pow(m, k)
    }

    #[test]
    fn reduce_phi3_relation() {
        // zeta_3^2 = -1 - zeta_3
        let got = z(3, 2);
        let expected = CycNum::from_int(3, -1).sub(&z(3, 1)).unwrap();
        assert_eq!(got, expected);
    }

    #[test]
    fn reduce_is_idempotent_and_periodic() {
        assert_eq!(z(7, 7), CycNum::from_int(7, 1));
        let a = CycNum::reduce(21, &RatPoly::monomial(13));
        assert_eq!(CycNum::reduce(21, &a.as_poly()), a);
    }

    #[test]
    fn zeta21_13_matches_division_oracle() {
        // oracle: remainder of x^13 mod Phi_21 by generic division
        let (_, rem) = RatPoly::monomial(13).div_rem(&cyclotomic_polynomial(21));
        let got = z(21, 13);
        assert_eq!(got.as_poly(), rem);
    }

    #[test]
    fn mul_roots_of_unity() {
        assert_eq!(z(3, 1).mul(&z(3, 2)).unwrap(), CycNum::from_int(3, 1));
        let a = z(21, 5);
        let one = CycNum::from_int(21, 1);
        assert_eq!(a.mul(&one).unwrap(), a);
    }

    #[test]
    fn norm_of_3_minus_zeta3() {
        // (3 - zeta_3)(3 - zeta_3^2) = 13
        let a = CycNum::from_int(3, 3).sub(&z(3, 1)).unwrap();
        let b = CycNum::from_int(3, 3).sub(&z(3, 2)).unwrap();
        assert_eq!(a.mul(&b).unwrap(), CycNum::from_int(3, 13));
    }

    #[test]
    fn inv_examples() {
        let one = CycNum::from_int(3, 1);
        assert_eq!(one.inv().unwrap(), one);
        assert_eq!(z(3, 1).inv().unwrap(), z(3, 2));
        let a = CycNum::from_int(3, 3).sub(&z(3, 1)).unwrap();
        let ainv = a.inv().unwrap();
        assert_eq!(a.mul(&ainv).unwrap(), one);
        // oracle: (3 - zeta_3^2)/13
        let expected = CycNum::from_int(3, 3)
            .sub(&z(3, 2))
            .unwrap()
            .scale(&(BigRat::one() / BigRat::from_integer(13.into())));
        assert_eq!(ainv, expected);
    }

    #[test]
    fn conductor_mismatch_is_an_error() {
        assert!(matches!(
            z(3, 1).mul(&z(7, 1)),
            Err(Error::ConductorMismatch(3, 7))
        ));
    }

    #[test]
    fn aut_identity_and_homomorphism() {
        let id = CycAut::new(21, 1);
        let a = z(21, 5).add(&z(21, 2)).unwrap();
        assert_eq!(a.apply_aut(&id).unwrap(), a);
        let s = CycAut::new(21, 2);
        let b = z(21, 4).sub(&CycNum::from_int(21, 3)).unwrap();
        let lhs = a.mul(&b).unwrap().apply_aut(&s).unwrap();
        let rhs = a
            .apply_aut(&s)
            .unwrap()
            .mul(&b.apply_aut(&s).unwrap())
            .unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn aut_on_delta_conductor21() {
        // sigma: zeta_7 -> zeta_7^2, zeta_3 fixed is k = 16 mod 21
        let s = CycAut::new(21, 16);
        let delta = z(21, 3).add(&z(21, -3)).unwrap(); // zeta_7 + zeta_7^-1
        let image = z(21, 6).add(&z(21, -6)).unwrap(); // zeta_7^2 + zeta_7^-2
        assert_eq!(delta.apply_aut(&s).unwrap(), image);
        // zeta_3 = zeta_21^7 is fixed
        assert!(z(21, 7).is_fixed_by(&[s]).unwrap());
        // delta + zeta_3 is not fixed by sigma
        let x = delta.add(&z(21, 7)).unwrap();
        assert!(!x.is_fixed_by(&[s]).unwrap());
    }

    #[test]
    fn full_norm_is_rational() {
        let a = z(21, 5)
            .add(&CycNum::from_int(21, 2))
            .unwrap()
            .sub(&z(21, 16))
            .unwrap();
        let mut prod = CycNum::from_int(21, 1);
        for k in 1..21 {
            if num_integer::gcd(k, 21u64) == 1 {
                prod = prod.mul(&a.apply_aut(&CycAut::new(21, k as i64)).unwrap()).unwrap();
            }
        }
        assert!(prod.is_rational());
    }

    #[test]
    fn embed_preserves_value() {
        let d7 = z(7, 1).add(&z(7, -1)).unwrap();
        let d21 = d7.embed(21);
        assert_eq!(d21, z(21, 3).add(&z(21, -3)).unwrap());
    }
}
