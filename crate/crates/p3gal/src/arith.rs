//! Integer utilities: modular arithmetic, primality, factorization.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

pub fn inv_mod(a: u64, m: u64) -> u64 {
    // extended Euclid; m need not be prime but gcd(a, m) must be 1
    let (mut old_r, mut r) = (a as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    debug_assert_eq!(old_r, 1);
    old_s.rem_euclid(m as i128) as u64
}

/// Deterministic Miller-Rabin, valid for all u64.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let d = (n - 1) >> (n - 1).trailing_zeros();
    let s = (n - 1).trailing_zeros();
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Probable-prime test for arbitrary size: deterministic below 2^64,
/// Miller-Rabin over the first 64 prime bases above.
pub fn is_prime_big(n: &BigUint) -> bool {
    if let Some(n64) = n.to_u64() {
        return is_prime_u64(n64);
    }
    let one = BigUint::one();
    let two = BigUint::from(2u32);
    let n_minus_1 = n - &one;
    let s = n_minus_1.trailing_zeros().unwrap();
    let d = &n_minus_1 >> s;
    let bases = small_primes(64);
    'witness: for &a in &bases {
        let a = BigUint::from(a);
        if &a >= n {
            continue;
        }
        let mut x = a.modpow(&d, n);
        if x.is_one() || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = x.modpow(&two, n);
            if x == n_minus_1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn small_primes(count: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(count);
    let mut n = 2u64;
    while out.len() < count {
        if is_prime_u64(n) {
            out.push(n);
        }
        n += 1;
    }
    out
}

pub fn next_prime(n: u64) -> u64 {
    let mut q = n + 1;
    while !is_prime_u64(q) {
        q += 1;
    }
    q
}

/// Pollard rho (Brent's cycle detection) for a 64-bit composite.
fn pollard_rho_u64(n: u64, seed: u64) -> Option<u64> {
    let mut c = seed;
    loop {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut x, mut y, mut d) = (2u64, 2u64, 1u64);
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = num_integer::gcd(x.abs_diff(y), n);
        }
        if d != n {
            return Some(d);
        }
        c += 1;
        if c > seed + 20 {
            return None;
        }
    }
}

const TRIAL_BOUND: u64 = 1_000_000;

/// Complete factorization of a positive integer: trial division to 10^6,
/// then Pollard rho with Miller-Rabin certification. Fails explicitly
/// rather than returning a partial answer.
pub fn factor_biguint(n: &BigUint) -> Result<Vec<(BigUint, u64)>> {
    let mut n = n.clone();
    let mut factors: Vec<(BigUint, u64)> = Vec::new();
    let push = |factors: &mut Vec<(BigUint, u64)>, q: BigUint, e: u64| {
        if let Some(entry) = factors.iter_mut().find(|(p, _)| *p == q) {
            entry.1 += e;
        } else {
            factors.push((q, e));
        }
    };
    let mut d = 2u64;
    while d <= TRIAL_BOUND && n > BigUint::one() {
        let db = BigUint::from(d);
        if (&db * &db) > n {
            break;
        }
        let mut e = 0u64;
        while (&n % &db).is_zero() {
            n /= &db;
            e += 1;
        }
        if e > 0 {
            push(&mut factors, db, e);
        }
        d = if d == 2 { 3 } else { d + 2 };
    }
    if n > BigUint::one() {
        factor_hard(n, &mut |q, e| push(&mut factors, q, e))?;
    }
    factors.sort();
    Ok(factors)
}

fn factor_hard(n: BigUint, push: &mut dyn FnMut(BigUint, u64)) -> Result<()> {
    if is_prime_big(&n) {
        push(n, 1);
        return Ok(());
    }
    if let Some(sq) = perfect_power_root(&n) {
        let mut sub: Vec<(BigUint, u64)> = Vec::new();
        factor_hard(sq.0, &mut |q, e| sub.push((q, e)))?;
        for (q, e) in sub {
            push(q, e * sq.1);
        }
        return Ok(());
    }
    let n64 = n.to_u64().ok_or(Error::FactorizationIncomplete(TRIAL_BOUND))?;
    // After trial division to 10^6, any remaining 64-bit composite splits
    // into two primes findable by rho.
    let d = pollard_rho_u64(n64, 1).ok_or(Error::FactorizationIncomplete(TRIAL_BOUND))?;
    factor_hard(BigUint::from(d), push)?;
    factor_hard(BigUint::from(n64 / d), push)?;
    Ok(())
}

fn perfect_power_root(n: &BigUint) -> Option<(BigUint, u64)> {
    for k in [2u32, 3, 5, 7] {
        let r = n.nth_root(k);
        if r.pow(k) == *n {
            return Some((r, k as u64));
        }
    }
    None
}

pub fn euler_phi(mut m: u64) -> u64 {
    let mut phi = 1u64;
    let mut d = 2u64;
    while d * d <= m {
        if m % d == 0 {
            let mut pk = 1;
            while m % d == 0 {
                m /= d;
                pk *= d;
            }
            phi *= pk - pk / d;
        }
        d += 1;
    }
    if m > 1 {
        phi *= m - 1;
    }
    phi
}

/// Smallest primitive root modulo an odd prime q.
pub fn primitive_root(q: u64) -> u64 {
    if q == 2 {
        return 1;
    }
    let phi = q - 1;
    let factors = factor_biguint(&BigUint::from(phi)).expect("small factorization");
    'cand: for g in 2..q {
        for (f, _) in &factors {
            let f = f.to_u64().unwrap();
            if pow_mod(g, phi / f, q) == 1 {
                continue 'cand;
            }
        }
        return g;
    }
    unreachable!("prime modulus has a primitive root");
}

/// Multiplicative order of a modulo q (q prime, a nonzero mod q).
pub fn order_mod(a: u64, q: u64) -> u64 {
    let phi = q - 1;
    let factors = factor_biguint(&BigUint::from(phi)).expect("small factorization");
    let mut ord = phi;
    for (f, e) in &factors {
        let f = f.to_u64().unwrap();
        for _ in 0..*e {
            if pow_mod(a, ord / f, q) == 1 {
                ord /= f;
            } else {
                break;
            }
        }
    }
    ord
}

/// Chinese remainder: the residue mod p*r that is `a` mod p and `b` mod r.
pub fn crt(a: u64, p: u64, b: u64, r: u64) -> u64 {
    let m = p * r;
    let inv_r = inv_mod(r % p, p);
    let inv_p = inv_mod(p % r, r);
    (mul_mod(mul_mod(a % p, r, m), inv_r, m) + mul_mod(mul_mod(b % r, p, m), inv_p, m)) % m
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes_u64() {
        assert!(is_prime_u64(2));
        assert!(is_prime_u64(991));
        assert!(is_prime_u64(1_000_000_007));
        assert!(!is_prime_u64(1));
        assert!(!is_prime_u64(561)); // Carmichael
        assert!(!is_prime_u64(6));
    }

    #[test]
    fn factor_small() {
        let f = factor_biguint(&BigUint::from(441u32)).unwrap();
        assert_eq!(
            f,
            vec![(BigUint::from(3u32), 2), (BigUint::from(7u32), 2)]
        );
        let f = factor_biguint(&BigUint::from(13u32)).unwrap();
        assert_eq!(f, vec![(BigUint::from(13u32), 1)]);
    }

    #[test]
    fn factor_beyond_trial_bound() {
        // product of two primes above 10^6
        let p = BigUint::from(1_000_003u64);
        let q = BigUint::from(1_000_033u64);
        let f = factor_biguint(&(&p * &q)).unwrap();
        assert_eq!(f, vec![(p, 1), (q, 1)]);
    }

    #[test]
    fn primitive_roots_match_tables() {
        assert_eq!(primitive_root(7), 3);
        assert_eq!(primitive_root(19), 2);
        assert_eq!(primitive_root(73), 5);
        assert_eq!(primitive_root(11), 2);
    }

    #[test]
    fn crt_basic() {
        let k = crt(1, 3, 2, 7);
        assert_eq!(k % 3, 1);
        assert_eq!(k % 7, 2);
    }

    #[test]
    fn phi_values() {
        assert_eq!(euler_phi(21), 12);
        assert_eq!(euler_phi(57), 36);
        assert_eq!(euler_phi(219), 144);
        assert_eq!(euler_phi(55), 40);
    }
}
