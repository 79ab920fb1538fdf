//! Statistical Galois-group discrimination via Frobenius cycle types:
//! factor-degree multisets of the polynomial modulo sampled primes.
//! An exponent-3 group of order 27 only produces parts in {1, 3}; a
//! degree-9 factor witnesses an order-9 Frobenius element.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use std::collections::BTreeMap;

use crate::arith::{inv_mod, mul_mod, next_prime};
use crate::builder::GroupTarget;
use crate::error::{Error, Result};
use crate::poly::RatPoly;

/// Clean samples required before an absence-of-9-cycles verdict. An
/// order-9 class has density >= 2/9, so it escapes 50 samples with
/// probability < (7/9)^50 < 1e-5.
pub const MIN_CLEAN_SAMPLES: u64 = 50;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FingerprintVerdict {
    ConsistentWithExponent3,
    ContainsOrder9Frobenius,
    Inconclusive,
}

impl FingerprintVerdict {
    pub fn label(&self) -> &'static str {
        match self {
            FingerprintVerdict::ConsistentWithExponent3 => "consistent_with_exponent_3",
            FingerprintVerdict::ContainsOrder9Frobenius => "contains_order_9_frobenius",
            FingerprintVerdict::Inconclusive => "inconclusive",
        }
    }
}

#[derive(Clone, Debug)]
pub struct GroupFingerprint {
    pub sampled_primes: u64,
    /// sorted factor-degree multiset -> occurrence count
    pub patterns: BTreeMap<Vec<u32>, u64>,
    pub skipped: u64,
    pub verdict: FingerprintVerdict,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Discrimination {
    Supported,
    Refuted,
    Inconclusive,
}

/// Polynomial over Z/q, coefficients ascending, no trailing zeros.
#[derive(Clone, Debug, PartialEq)]
struct ModPoly {
    c: Vec<u64>,
    q: u64,
}

impl ModPoly {
    fn new(mut c: Vec<u64>, q: u64) -> Self {
        while c.last() == Some(&0) {
            c.pop();
        }
        ModPoly { c, q }
    }

    fn zero(q: u64) -> Self {
        ModPoly { c: vec![], q }
    }

    fn x(q: u64) -> Self {
        ModPoly::new(vec![0, 1], q)
    }

    fn deg(&self) -> isize {
        self.c.len() as isize - 1
    }

    fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    fn sub(&self, o: &ModPoly) -> ModPoly {
        let n = self.c.len().max(o.c.len());
        let q = self.q;
        ModPoly::new(
            (0..n)
                .map(|i| {
                    let a = self.c.get(i).copied().unwrap_or(0);
                    let b = o.c.get(i).copied().unwrap_or(0);
                    (a + q - b) % q
                })
                .collect(),
            q,
        )
    }

    fn mul(&self, o: &ModPoly) -> ModPoly {
        if self.is_zero() || o.is_zero() {
            return ModPoly::zero(self.q);
        }
        let mut out = vec![0u64; self.c.len() + o.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.c.iter().enumerate() {
                out[i + j] = (out[i + j] + mul_mod(a, b, self.q)) % self.q;
            }
        }
        ModPoly::new(out, self.q)
    }

    fn rem(&self, m: &ModPoly) -> ModPoly {
        let q = self.q;
        let dm = m.deg();
        assert!(dm >= 0);
        let lead_inv = inv_mod(*m.c.last().unwrap(), q);
        let mut r = self.c.clone();
        let mut i = r.len() as isize - 1;
        while i >= dm {
            let coef = r[i as usize];
            if coef != 0 {
                let f = mul_mod(coef, lead_inv, q);
                for (j, &mc) in m.c.iter().enumerate() {
                    let idx = (i - dm) as usize + j;
                    r[idx] = (r[idx] + q - mul_mod(f, mc, q)) % q;
                }
            }
            i -= 1;
        }
        ModPoly::new(r, q)
    }

    fn monic(&self) -> ModPoly {
        if self.is_zero() {
            return self.clone();
        }
        let inv = inv_mod(*self.c.last().unwrap(), self.q);
        ModPoly::new(
            self.c.iter().map(|&a| mul_mod(a, inv, self.q)).collect(),
            self.q,
        )
    }

    fn gcd(&self, o: &ModPoly) -> ModPoly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    fn derivative(&self) -> ModPoly {
        ModPoly::new(
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &a)| mul_mod(a, i as u64 % self.q, self.q))
                .collect(),
            self.q,
        )
    }

    /// self^exp mod m by repeated squaring.
    fn pow_mod(&self, mut exp: u64, m: &ModPoly) -> ModPoly {
        let mut base = self.rem(m);
        let mut acc = ModPoly::new(vec![1], self.q);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base).rem(m);
            }
            base = base.mul(&base).rem(m);
            exp >>= 1;
        }
        acc
    }

    fn exact_div(&self, o: &ModPoly) -> ModPoly {
        let q = self.q;
        let dm = o.deg();
        let lead_inv = inv_mod(*o.c.last().unwrap(), q);
        let mut r = self.c.clone();
        let mut quot = vec![0u64; r.len() - dm as usize];
        let mut i = r.len() as isize - 1;
        while i >= dm {
            let coef = r[i as usize];
            if coef != 0 {
                let f = mul_mod(coef, lead_inv, q);
                quot[(i - dm) as usize] = f;
                for (j, &mc) in o.c.iter().enumerate() {
                    let idx = (i - dm) as usize + j;
                    r[idx] = (r[idx] + q - mul_mod(f, mc, q)) % q;
                }
            }
            i -= 1;
        }
        debug_assert!(ModPoly::new(r, q).is_zero());
        ModPoly::new(quot, q)
    }
}

fn reduce_mod_q(f: &RatPoly, q: u64) -> Result<ModPoly> {
    let qb = BigInt::from(q);
    let mut c = Vec::with_capacity(f.coeffs().len());
    for coeff in f.coeffs() {
        if (coeff.denom() % &qb).is_zero() {
            return Err(Error::BadPrime(q));
        }
        let num = ((coeff.numer() % &qb) + &qb).to_u64().unwrap() % q;
        let den = ((coeff.denom() % &qb) + &qb).to_u64().unwrap() % q;
        c.push(mul_mod(num, inv_mod(den, q), q));
    }
    Ok(ModPoly::new(c, q))
}

/// Factor-degree multiset of f mod q by distinct-degree factorization, or
/// None when the reduction is not squarefree (no Frobenius cycle type).
pub fn factor_degrees_mod_q(f: &RatPoly, q: u64) -> Result<Option<Vec<u32>>> {
    let fq = reduce_mod_q(f, q)?;
    if fq.deg() != f.degree().map(|d| d as isize).unwrap_or(-1) {
        // leading coefficient vanished: treat like a bad reduction
        return Ok(None);
    }
    let fq = fq.monic();
    if fq.gcd(&fq.derivative()).deg() != 0 {
        return Ok(None);
    }
    let mut degrees = Vec::new();
    let mut g = fq.clone();
    let mut h = ModPoly::x(q);
    let mut d = 0u32;
    while g.deg() > 0 {
        d += 1;
        if 2 * d as isize > g.deg() {
            degrees.push(g.deg() as u32);
            break;
        }
        h = h.pow_mod(q, &g);
        let common = h.sub(&ModPoly::x(q)).gcd(&g);
        if common.deg() > 0 {
            let count = common.deg() as u32 / d;
            degrees.extend(std::iter::repeat(d).take(count as usize));
            g = g.exact_div(&common);
            h = h.rem(&g);
        }
    }
    degrees.sort_unstable();
    Ok(Some(degrees))
}

/// Sample factor-degree patterns over `budget` usable primes starting at
/// `start`, and derive the group verdict.
pub fn survey(f: &RatPoly, budget: u64, start: u64) -> GroupFingerprint {
    let deg = f.degree().map(|d| d as u32).unwrap_or(0);
    let mut patterns: BTreeMap<Vec<u32>, u64> = BTreeMap::new();
    let mut sampled = 0u64;
    let mut skipped = 0u64;
    let mut q = if start >= 2 && crate::arith::is_prime_u64(start) {
        start
    } else {
        next_prime(start.max(1))
    };
    // A polynomial with a repeated factor over the rationals is skipped at
    // every prime; cap the skips so the survey terminates (Inconclusive).
    let skip_cap = 20 * budget + 1000;
    while sampled < budget && skipped < skip_cap {
        match factor_degrees_mod_q(f, q) {
            Ok(Some(pattern)) => {
                debug_assert_eq!(pattern.iter().sum::<u32>(), deg);
                *patterns.entry(pattern).or_insert(0) += 1;
                sampled += 1;
            }
            Ok(None) | Err(_) => skipped += 1,
        }
        q = next_prime(q);
    }
    let has_nine = patterns.keys().any(|p| p.contains(&9));
    let all_13 = patterns
        .keys()
        .all(|p| p.iter().all(|&d| d == 1 || d == 3));
    let verdict = if has_nine {
        FingerprintVerdict::ContainsOrder9Frobenius
    } else if all_13 && sampled >= MIN_CLEAN_SAMPLES {
        FingerprintVerdict::ConsistentWithExponent3
    } else {
        FingerprintVerdict::Inconclusive
    };
    GroupFingerprint {
        sampled_primes: sampled,
        patterns,
        skipped,
        verdict,
    }
}

pub fn discriminate(fp: &GroupFingerprint, claimed: GroupTarget) -> Discrimination {
    let has_nine = fp.patterns.keys().any(|p| p.contains(&9));
    match claimed {
        GroupTarget::H27 => {
            if has_nine {
                Discrimination::Refuted
            } else if fp.sampled_primes >= MIN_CLEAN_SAMPLES
                && fp
                    .patterns
                    .keys()
                    .all(|p| p.iter().all(|&d| d == 1 || d == 3))
            {
                Discrimination::Supported
            } else {
                Discrimination::Inconclusive
            }
        }
        GroupTarget::C9xC3 => {
            if has_nine {
                Discrimination::Supported
            } else {
                Discrimination::Inconclusive
            }
        }
    }
}
