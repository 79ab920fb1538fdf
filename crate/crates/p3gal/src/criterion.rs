//! The ideal-theoretic criterion: factor the norm, classify each prime by
//! its splitting behaviour in the tower, compute the chi invariant from
//! Hensel-lifted valuations, and render a verdict for both target groups.

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::arith::{factor_biguint, is_prime_u64, inv_mod, mul_mod, pow_mod};
use crate::cyclotomic::CycNum;
use crate::error::{Error, Result};
use crate::phinorm::{compute_b, norm_l_over_k, norm_l_over_q, GroupVariant};
use crate::poly::BigRat;
use crate::tower::{SubfieldTag, Tower};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormFactorization {
    pub sign: i8,
    /// (q, l) with l < 0 for denominator primes.
    pub factors: Vec<(u64, i64)>,
}

impl NormFactorization {
    pub fn display(&self) -> String {
        let mut s = String::from(if self.sign < 0 { "-" } else { "+" });
        if self.factors.is_empty() {
            s.push('1');
            return s;
        }
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|(q, l)| format!("{q}^{l}"))
            .collect();
        s.push_str(&parts.join("\u{b7}"));
        s
    }
}

/// Complete factorization of a nonzero rational.
pub fn factor_norm(n: &BigRat) -> Result<NormFactorization> {
    assert!(!n.is_zero(), "factor_norm needs a nonzero input");
    let sign = if n.is_negative() { -1 } else { 1 };
    let mut factors: Vec<(u64, i64)> = Vec::new();
    let mut add = |value: &BigInt, flip: bool| -> Result<()> {
        for (q, l) in factor_biguint(&value.magnitude().clone())? {
            let q = q
                .to_u64()
                .ok_or(Error::FactorizationIncomplete(u64::MAX))?;
            let l = if flip { -(l as i64) } else { l as i64 };
            factors.push((q, l));
        }
        Ok(())
    };
    add(n.numer(), false)?;
    add(n.denom(), true)?;
    factors.sort();
    Ok(NormFactorization { sign, factors })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PrimeClass {
    RamifiedP,
    RamifiedR,
    NotSplitInK,
    SplitKNotF,
    SplitCompletelyInL,
}

impl PrimeClass {
    pub fn label(&self) -> &'static str {
        match self {
            PrimeClass::RamifiedP => "ramified_p",
            PrimeClass::RamifiedR => "ramified_r",
            PrimeClass::NotSplitInK => "not_split_in_K",
            PrimeClass::SplitKNotF => "split_K_not_F",
            PrimeClass::SplitCompletelyInL => "split_completely_L",
        }
    }
}

/// Classification by the residues of q mod p and mod r alone.
pub fn classify_prime(t: &Tower, q: u64) -> PrimeClass {
    if q == t.p {
        PrimeClass::RamifiedP
    } else if q == t.r {
        PrimeClass::RamifiedR
    } else if q % t.p != 1 {
        PrimeClass::NotSplitInK
    } else if pow_mod(q % t.r, (t.r - 1) / t.p, t.r) != 1 {
        PrimeClass::SplitKNotF
    } else {
        PrimeClass::SplitCompletelyInL
    }
}

/// The p-1 roots of Phi_p mod q, ordered so that a_{j+1} = a_j^{e'} with
/// e e' = 1 (mod p); this is the tau-cycle on the primes above q, read
/// through the evaluation maps. The first root is the smallest.
pub fn split_roots(t: &Tower, q: u64) -> Result<Vec<u64>> {
    if q == t.p || q % t.p != 1 {
        return Err(Error::NoRoots(q));
    }
    // an element of exact order p, found by powering small bases
    let mut root = None;
    for g in 2..q {
        let a = pow_mod(g, (q - 1) / t.p, q);
        if a != 1 {
            root = Some(a);
            break;
        }
    }
    let a = root.ok_or(Error::NoRoots(q))?;
    let mut roots: Vec<u64> = (1..t.p).map(|i| pow_mod(a, i, q)).collect();
    roots.sort_unstable();
    let a1 = roots[0];
    let e_inv = inv_mod(t.e_res, t.p);
    let mut ordered = Vec::with_capacity((t.p - 1) as usize);
    let mut cur = a1;
    for _ in 0..t.p - 1 {
        ordered.push(cur);
        cur = pow_mod(cur, e_inv, q);
    }
    Ok(ordered)
}

/// Coordinates of a K-element in the zeta_p power basis {1, ..., zeta_p^(p-2)},
/// solved exactly from the conductor-m representation.
pub fn zeta_p_coordinates(t: &Tower, gamma: &CycNum) -> Result<Vec<BigRat>> {
    if !t.membership(gamma, SubfieldTag::K)? {
        return Err(Error::NotInK);
    }
    let dim = (t.p - 1) as usize;
    let basis: Vec<CycNum> = (0..dim)
        .map(|j| t.zeta_p().pow(j as i64).unwrap())
        .collect();
    // Gaussian elimination on the (phi(m) x dim) system
    let rows = gamma.coeffs().len();
    let mut mat: Vec<Vec<BigRat>> = (0..rows)
        .map(|i| {
            let mut row: Vec<BigRat> = basis.iter().map(|b| b.coeffs()[i].clone()).collect();
            row.push(gamma.coeffs()[i].clone());
            row
        })
        .collect();
    let mut pivot_row = 0usize;
    let mut pivots = Vec::new();
    for col in 0..dim {
        if let Some(r) = (pivot_row..rows).find(|&r| !mat[r][col].is_zero()) {
            mat.swap(pivot_row, r);
            let inv = BigRat::one() / mat[pivot_row][col].clone();
            for v in mat[pivot_row].iter_mut() {
                *v = &*v * &inv;
            }
            for r2 in 0..rows {
                if r2 != pivot_row && !mat[r2][col].is_zero() {
                    let f = mat[r2][col].clone();
                    for c2 in 0..=dim {
                        let t2 = &f * &mat[pivot_row][c2];
                        mat[r2][c2] -= t2;
                    }
                }
            }
            pivots.push((pivot_row, col));
            pivot_row += 1;
        }
    }
    let mut coords = vec![BigRat::zero(); dim];
    for (row, col) in &pivots {
        coords[*col] = mat[*row][dim].clone();
    }
    // consistency: rows without pivots must have zero rhs
    for r in pivot_row..rows {
        if !mat[r][dim].is_zero() {
            return Err(Error::NotInK);
        }
    }
    Ok(coords)
}

fn big_pow(q: u64, m: u64) -> BigInt {
    BigInt::from(q).pow(m as u32)
}

fn v_q_bigint(mut n: BigInt, q: u64) -> u64 {
    let q = BigInt::from(q);
    let mut v = 0;
    while !n.is_zero() && (&n % &q).is_zero() {
        n /= &q;
        v += 1;
    }
    v
}

/// Newton-lift a root of Phi_p from mod q to mod q^precision.
pub fn hensel_lift(p: u64, q: u64, a: u64, precision: u64) -> BigInt {
    // f = Phi_p = 1 + t + ... + t^(p-1)
    let f = |t: &BigInt, md: &BigInt| -> BigInt {
        let mut acc = BigInt::zero();
        for _ in 0..p {
            acc = (acc * t + 1) % md;
        }
        acc
    };
    let fprime = |t: &BigInt, md: &BigInt| -> BigInt {
        let mut acc = BigInt::zero();
        for i in (1..p).rev() {
            acc = (acc * t + BigInt::from(i)) % md;
        }
        acc
    };
    let target = big_pow(q, precision);
    let mut modulus = BigInt::from(q);
    let mut root = BigInt::from(a);
    while modulus < target {
        modulus = (&modulus * &modulus).min(target.clone());
        let fp = fprime(&root, &modulus);
        let inv = mod_inverse(&fp, &modulus);
        root = (&root - f(&root, &modulus) * inv) % &modulus;
        if root.is_negative() {
            root += &modulus;
        }
    }
    root
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.extended_gcd(m);
    debug_assert!(e.gcd.is_one(), "not invertible in Hensel step");
    let mut x = e.x % m;
    if x.is_negative() {
        x += m;
    }
    x
}

/// v_{P}(gamma) at the prime P of K corresponding to the root a of Phi_p
/// mod q: lift a to high enough q-adic precision and take the q-valuation
/// of gamma evaluated at the lift.
pub fn hensel_valuation(t: &Tower, gamma: &CycNum, q: u64, a: u64) -> Result<u64> {
    if !gamma.has_integer_coeffs() {
        return Err(Error::NonIntegralInput);
    }
    let coords = zeta_p_coordinates(t, gamma)?;
    if coords.iter().any(|c| !c.denom().is_one()) {
        return Err(Error::NonIntegralInput);
    }
    let g: Vec<BigInt> = coords.iter().map(|c| c.numer().clone()).collect();
    let norm = crate::phinorm::norm_k_over_q(t, gamma)?;
    let total = v_q_bigint(norm.numer().clone(), q);
    let start = total + 1;
    let mut precision = start;
    loop {
        let root = hensel_lift(t.p, q, a, precision);
        let md = big_pow(q, precision);
        let mut val = BigInt::zero();
        for c in g.iter().rev() {
            val = (val * &root + c) % &md;
        }
        if val.is_negative() {
            val += &md;
        }
        if !val.is_zero() {
            return Ok(v_q_bigint(val, q));
        }
        // saturated the precision: double and retry, capped at 4x start
        precision *= 2;
        assert!(
            precision <= 4 * start,
            "valuation exceeded the total mass bound"
        );
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChiReport {
    pub q: u64,
    /// Valuations at the tau-ordered primes above q.
    pub betas: Vec<u64>,
    pub chi: i64,
    pub chi_mod_p: u64,
    /// The chosen first root of Phi_p mod q.
    pub a1: u64,
}

/// chi(I) = e^(p-2) beta_1 + e^(p-3) beta_{p-1} + ... + e beta_3 + beta_2.
pub fn chi_from_betas(p: u64, e_res: u64, betas: &[u64]) -> i64 {
    let n = (p - 1) as usize;
    let mut chi = 0i64;
    for k in 0..n {
        // tau^(-k) applied to index 1, in {1, ..., p-1}
        let j = ((1isize - k as isize).rem_euclid(n as isize)) as usize;
        let j = if j == 0 { n } else { j };
        let coeff = (e_res as i64).pow((p - 2 - k as u64) as u32);
        chi += coeff * betas[j - 1] as i64;
    }
    chi
}

pub fn chi_report(t: &Tower, gamma: &CycNum, q: u64) -> Result<ChiReport> {
    if classify_prime(t, q) != PrimeClass::SplitCompletelyInL {
        return Err(Error::WrongPrimeClass(q));
    }
    let roots = split_roots(t, q)?;
    let betas: Vec<u64> = roots
        .iter()
        .map(|&a| hensel_valuation(t, gamma, q, a))
        .collect::<Result<_>>()?;
    let chi = chi_from_betas(t.p, t.e_res, &betas);
    Ok(ChiReport {
        q,
        betas,
        chi,
        chi_mod_p: chi.rem_euclid(t.p as i64) as u64,
        a1: roots[0],
    })
}

#[derive(Clone, Debug)]
pub struct CriterionVerdict {
    pub factorization: NormFactorization,
    pub per_prime: Vec<(u64, PrimeClass, Option<ChiReport>)>,
    pub ideal_criterion_holds: bool,
    pub heisenberg_ok: bool,
    pub semidirect_ok: bool,
    pub notes: Vec<String>,
}

/// Decide the ideal-theoretic criterion for x: the twist of the norm generates a non-p-th-power
/// ideal iff some norm prime splits completely in L with chi != 0 mod p.
pub fn criterion_verdict(t: &Tower, x: &CycNum) -> Result<CriterionVerdict> {
    if !x.has_integer_coeffs() {
        return Err(Error::NonIntegralInput);
    }
    let norm = norm_l_over_q(t, x)?;
    if norm.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let factorization = factor_norm(&norm)?;
    let gamma = norm_l_over_k(t, x)?;
    let mut per_prime = Vec::new();
    let mut holds = false;
    let mut notes = Vec::new();
    for &(q, l) in &factorization.factors {
        let class = classify_prime(t, q);
        let chi = if class == PrimeClass::SplitCompletelyInL {
            let report = chi_report(t, &gamma, q)?;
            // mass conservation: the valuations account for the full exponent of q
            debug_assert_eq!(report.betas.iter().sum::<u64>() as i64, l);
            if report.chi_mod_p != 0 {
                holds = true;
            } else if report.betas.iter().all(|&b| b == report.betas[0]) {
                notes.push(format!(
                    "I = O_K {q}{}; x generates a product of {l} distinct primes of norm {q}",
                    if report.betas[0] == 1 {
                        String::new()
                    } else {
                        format!("^{}", report.betas[0])
                    }
                ));
            }
            Some(report)
        } else {
            None
        };
        per_prime.push((q, class, chi));
    }
    if !holds {
        notes.push(
            "ideal test inconclusive for elementwise p-th-power status; \
             L != Q(zeta_{p^2}), so an x that induces no Heisenberg extension \
             necessarily induces a C_{p^2} x| C_p extension"
                .to_string(),
        );
    }
    Ok(CriterionVerdict {
        factorization,
        per_prime,
        ideal_criterion_holds: holds,
        heisenberg_ok: holds,
        semidirect_ok: holds,
        notes,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PthPowerTestResult {
    /// Sound certificate: a prime q = 1 (mod m) at which the reduction of z
    /// is a nonzero non-p-th-power residue.
    NotPthPower(u64),
    ProbablyPthPower(u64),
}

const MC_PRIME_CAP: u64 = 1 << 44;
const MC_ATTEMPT_CAP: u64 = 2_000_000;

/// One-sided Monte-Carlo test: reduce z at degree-1 places q = 1 (mod m)
/// and test the (q-1)/p power of the residue.
pub fn pth_power_mc_test(
    t: &Tower,
    z: &CycNum,
    trials: u64,
    seed: u64,
) -> Result<PthPowerTestResult> {
    assert!(trials >= 1);
    assert!(!z.is_zero());
    let m = t.m;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut passes = 0u64;
    for _ in 0..MC_ATTEMPT_CAP {
        let k = rng.gen_range(1..=MC_PRIME_CAP / m);
        let q = k * m + 1;
        if !is_prime_u64(q) {
            continue;
        }
        // denominators of z must be units mod q
        if z.coeffs().iter().any(|c| {
            (c.denom() % BigInt::from(q)).is_zero()
        }) {
            continue;
        }
        let Some(a) = primitive_mth_root(q, m, t.p, t.r) else {
            continue;
        };
        let mut zbar = 0u64;
        let mut apow = 1u64;
        for c in z.coeffs() {
            if !c.is_zero() {
                let num = (c.numer() % BigInt::from(q) + BigInt::from(q)).to_u64().unwrap() % q;
                let den = (c.denom() % BigInt::from(q)).to_u64().unwrap() % q;
                zbar = (zbar + mul_mod(mul_mod(num, inv_mod(den, q), q), apow, q)) % q;
            }
            apow = mul_mod(apow, a, q);
        }
        if zbar == 0 {
            continue; // z in the place's maximal ideal carries no information
        }
        if pow_mod(zbar, (q - 1) / t.p, q) != 1 {
            return Ok(PthPowerTestResult::NotPthPower(q));
        }
        passes += 1;
        if passes >= trials {
            return Ok(PthPowerTestResult::ProbablyPthPower(trials));
        }
    }
    Err(Error::InsufficientPrimes)
}

/// An element of exact multiplicative order m modulo q (requires q = 1 mod m,
/// m = p*r squarefree).
fn primitive_mth_root(q: u64, m: u64, p: u64, r: u64) -> Option<u64> {
    for g in 2..q {
        let a = pow_mod(g, (q - 1) / m, q);
        if a != 1 && pow_mod(a, m / p, q) != 1 && pow_mod(a, m / r, q) != 1 {
            return Some(a);
        }
        if g > 200 {
            break;
        }
    }
    None
}

/// Deterministic scan of x = u delta + v + w zeta_p over a coefficient box,
/// returning candidates whose verdict passes.
pub fn search_candidates(
    t: &Tower,
    box_bound: i64,
    limit: usize,
) -> Vec<(i64, i64, i64, CycNum, CriterionVerdict)> {
    let mut out = Vec::new();
    for u in -box_bound..=box_bound {
        for v in -box_bound..=box_bound {
            for w in -box_bound..=box_bound {
                if out.len() >= limit {
                    return out;
                }
                if u == 0 && v == 0 && w == 0 {
                    continue;
                }
                let x = t
                    .delta
                    .scale(&BigRational::from_integer(BigInt::from(u)))
                    .add(&CycNum::from_int(t.m, v))
                    .unwrap()
                    .add(&t.zeta_p().scale(&BigRational::from_integer(BigInt::from(w))))
                    .unwrap();
                if x.is_zero() {
                    continue;
                }
                match criterion_verdict(t, &x) {
                    Ok(v2) if v2.ideal_criterion_holds => out.push((u, v, w, x, v2)),
                    _ => {}
                }
            }
        }
    }
    out
}

/// Cross-check helper: the b-values of a passing x must fail
/// the p-th-power test on both variants.
pub fn b_values(t: &Tower, x: &CycNum) -> Result<(CycNum, CycNum)> {
    Ok((
        compute_b(t, x, GroupVariant::Heisenberg)?,
        compute_b(t, x, GroupVariant::Semidirect)?,
    ))
}
