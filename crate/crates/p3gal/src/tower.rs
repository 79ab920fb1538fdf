//! The field tower Q c F, K c L inside Q(zeta_pr): F is the degree-p
//! subfield of Q(zeta_r) generated by a Gaussian period, K = Q(zeta_p),
//! L = FK.

use num_traits::One;
use serde::Serialize;

use crate::arith::{crt, is_prime_u64, pow_mod, primitive_root};
use crate::cyclotomic::{CycAut, CycNum};
use crate::error::{Error, Result};
use crate::poly::RatPoly;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SubfieldTag {
    Q,
    K,
    F,
    L,
    Full,
}

#[derive(Clone, Debug)]
pub struct Tower {
    pub p: u64,
    pub r: u64,
    pub m: u64,
    /// Primitive root mod p, or -1 in builder mode.
    pub e: i64,
    /// Residue of e mod p, as the exponent tau_bar uses on zeta_p.
    pub e_res: u64,
    /// Smallest primitive root mod r (unless overridden).
    pub m_r: u64,
    /// Exponent of sigma_bar on zeta_r.
    pub c: u64,
    pub delta: CycNum,
    pub sigma_bar: CycAut,
    pub tau_bar: CycAut,
}

/// Serialized form used in reports.
#[derive(Serialize)]
pub struct TowerReport {
    pub p: u64,
    pub r: u64,
    pub m: u64,
    pub e: i64,
    pub m_r: u64,
    pub c: u64,
    pub sigma_k: u64,
    pub tau_k: u64,
}

/// The Gaussian period delta_k(r): sum of zeta_r^(m_r^(jk)) over
/// j = 0 .. (r-1)/k - 1, as an element of conductor r.
pub fn gaussian_period(r: u64, k: u64, m_r: u64) -> Result<CycNum> {
    if k == 0 || (r - 1) % k != 0 {
        return Err(Error::NotDivisible(k, r - 1));
    }
    let mut acc = CycNum::zero(r);
    let step = pow_mod(m_r, k, r);
    let mut exp = 1u64;
    for _ in 0..(r - 1) / k {
        acc = acc.add(&CycNum::zeta_pow(r, exp as i64))?;
        exp = crate::arith::mul_mod(exp, step, r);
    }
    Ok(acc)
}

/// sigma_bar exponents pinned for the well-tested towers; elsewhere
/// the smallest c that is not a p-th power residue mod r.
fn pinned_c(p: u64, r: u64) -> Option<u64> {
    match (p, r) {
        (3, 7) => Some(2),
        (3, 19) => Some(6),
        // 24 is a cubic residue mod 73 (24 = 5^30), so it cannot generate
        // Gal(L/K); use the smallest non-residue instead.
        (3, 73) => Some(2),
        (5, 11) => Some(2),
        _ => None,
    }
}

fn is_pth_power_residue(c: u64, p: u64, r: u64) -> bool {
    pow_mod(c, (r - 1) / p, r) == 1
}

pub fn build_tower(p: u64, r: u64, e: Option<i64>, c: Option<u64>) -> Result<Tower> {
    if p < 3 || !is_prime_u64(p) || !is_prime_u64(r) || r % p != 1 || p == r {
        return Err(Error::CongruenceViolation { p, r });
    }
    let m = p * r;
    let e = e.unwrap_or_else(|| primitive_root(p) as i64);
    let e_res = if e == -1 {
        p - 1
    } else {
        let e_res = (e.rem_euclid(p as i64)) as u64;
        if crate::arith::order_mod(e_res, p) != p - 1 {
            return Err(Error::BadGenerator(format!(
                "e = {e} is neither -1 nor a primitive root mod {p}"
            )));
        }
        e_res
    };
    let m_r = primitive_root(r);
    let c = match c {
        Some(c) => {
            let c = c % r;
            if c == 0 || is_pth_power_residue(c, p, r) {
                return Err(Error::BadGenerator(format!(
                    "c = {c} is a p-th power residue mod {r}"
                )));
            }
            c
        }
        None => match pinned_c(p, r) {
            Some(c) => c,
            None => (2..r)
                .find(|&c| !is_pth_power_residue(c, p, r))
                .expect("a non-residue exists"),
        },
    };
    let sigma_bar = CycAut::new(m, crt(1, p, c, r) as i64);
    let tau_bar = CycAut::new(m, crt(e_res, p, 1, r) as i64);
    let delta = gaussian_period(r, p, m_r)?.embed(m);
    let t = Tower {
        p,
        r,
        m,
        e,
        e_res,
        m_r,
        c,
        delta,
        sigma_bar,
        tau_bar,
    };
    debug_assert!(t.zeta_p().is_fixed_by(&[t.sigma_bar]).unwrap());
    debug_assert!(t.delta.is_fixed_by(&[t.tau_bar]).unwrap());
    debug_assert!(t.delta.apply_aut(&t.sigma_bar).unwrap() != t.delta);
    Ok(t)
}

impl Tower {
    pub fn zeta_p(&self) -> CycNum {
        CycNum::zeta_pow(self.m, self.r as i64)
    }

    pub fn zeta_r(&self) -> CycNum {
        CycNum::zeta_pow(self.m, self.p as i64)
    }

    pub fn one(&self) -> CycNum {
        CycNum::from_int(self.m, 1)
    }

    pub fn report(&self) -> TowerReport {
        TowerReport {
            p: self.p,
            r: self.r,
            m: self.m,
            e: self.e,
            m_r: self.m_r,
            c: self.c,
            sigma_k: self.sigma_bar.exponent(),
            tau_k: self.tau_bar.exponent(),
        }
    }

    /// Generators of the subgroup of Gal(Q(zeta_m)/Q) fixing the tagged field.
    pub fn fixing_generators(&self, tag: SubfieldTag) -> Vec<CycAut> {
        let (p, r, m) = (self.p, self.r, self.m);
        let g_p = primitive_root(p);
        let h = pow_mod(self.m_r, p, r); // generates the p-th power residues mod r
        match tag {
            SubfieldTag::Q => vec![
                CycAut::new(m, crt(g_p, p, 1, r) as i64),
                CycAut::new(m, crt(1, p, self.m_r, r) as i64),
            ],
            SubfieldTag::K => vec![CycAut::new(m, crt(1, p, self.m_r, r) as i64)],
            SubfieldTag::F => vec![
                CycAut::new(m, crt(g_p, p, 1, r) as i64),
                CycAut::new(m, crt(1, p, h, r) as i64),
            ],
            SubfieldTag::L => vec![CycAut::new(m, crt(1, p, h, r) as i64)],
            SubfieldTag::Full => vec![],
        }
    }

    pub fn membership(&self, a: &CycNum, tag: SubfieldTag) -> Result<bool> {
        if a.conductor() != self.m {
            return Err(Error::ConductorMismatch(a.conductor(), self.m));
        }
        a.is_fixed_by(&self.fixing_generators(tag))
    }

    /// The p conjugates of delta under powers of sigma_bar.
    pub fn delta_conjugates(&self) -> Result<Vec<CycNum>> {
        (0..self.p)
            .map(|i| self.delta.apply_aut(&self.sigma_bar.pow(i)))
            .collect()
    }
}

/// Expand prod (X - root_i) over CycNum roots; coefficients as CycNum.
pub fn product_of_linear(m: u64, roots: &[CycNum]) -> Result<Vec<CycNum>> {
    let mut coeffs = vec![CycNum::from_int(m, 1)];
    for root in roots {
        let mut next = vec![CycNum::zero(m); coeffs.len() + 1];
        for (i, c) in coeffs.iter().enumerate() {
            next[i + 1] = next[i + 1].add(c)?;
            next[i] = next[i].sub(&c.mul(root)?)?;
        }
        coeffs = next;
    }
    Ok(coeffs)
}

/// Minimal polynomial of the period delta over Q: the product of
/// (X - sigma^i delta), with rationality of every coefficient asserted.
pub fn period_min_poly(t: &Tower) -> Result<RatPoly> {
    let conj = t.delta_conjugates()?;
    for i in 0..conj.len() {
        for j in (i + 1)..conj.len() {
            if conj[i] == conj[j] {
                return Err(Error::DegenerateConjugates);
            }
        }
    }
    let coeffs = product_of_linear(t.m, &conj)?;
    let mut out = Vec::with_capacity(coeffs.len());
    for c in &coeffs {
        let q = c.to_rational().ok_or(Error::DegenerateConjugates)?;
        out.push(q);
    }
    debug_assert!(out.last().map_or(false, |c| c.is_one()));
    Ok(RatPoly::new(out))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_period_examples() {
        // delta_3(7) = zeta_7 + zeta_7^-1
        let d = gaussian_period(7, 3, 3).unwrap();
        let expected = CycNum::zeta_pow(7, 1).add(&CycNum::zeta_pow(7, -1)).unwrap();
        assert_eq!(d, expected);

        // delta_3(19) = zeta + zeta^-1 + zeta^7 + zeta^-7 + zeta^8 + zeta^-8
        let d = gaussian_period(19, 3, 2).unwrap();
        let mut expected = CycNum::zero(19);
        for k in [1i64, -1, 7, -7, 8, -8] {
            expected = expected.add(&CycNum::zeta_pow(19, k)).unwrap();
        }
        assert_eq!(d, expected);

        // delta_5(11) = zeta_11 + zeta_11^-1
        let d = gaussian_period(11, 5, 2).unwrap();
        let expected = CycNum::zeta_pow(11, 1).add(&CycNum::zeta_pow(11, -1)).unwrap();
        assert_eq!(d, expected);
    }

    #[test]
    fn gaussian_period_rejects_bad_k() {
        assert!(matches!(
            gaussian_period(7, 4, 3),
            Err(Error::NotDivisible(4, 6))
        ));
    }

    #[test]
    fn build_tower_3_7_matches_pinned_generators() {
        let t = build_tower(3, 7, Some(-1), None).unwrap();
        // sigma: zeta_7 -> zeta_7^2, zeta_3 fixed
        assert_eq!(t.sigma_bar.exponent() % 7, 2);
        assert_eq!(t.sigma_bar.exponent() % 3, 1);
        // tau with e = -1: zeta_3 -> zeta_3^-1, zeta_7 fixed
        assert_eq!(t.tau_bar.exponent() % 3, 2);
        assert_eq!(t.tau_bar.exponent() % 7, 1);
    }

    #[test]
    fn build_tower_rejects_bad_r() {
        assert!(matches!(
            build_tower(3, 6, None, None),
            Err(Error::CongruenceViolation { p: 3, r: 6 })
        ));
        assert!(build_tower(3, 11, None, None).is_err()); // 11 != 1 mod 3
    }

    #[test]
    fn build_tower_5_11() {
        let t = build_tower(5, 11, None, None).unwrap();
        assert_eq!(t.sigma_bar.exponent() % 11, 2);
        assert_eq!(t.e, 2);
    }

    #[test]
    fn period_min_poly_3_7() {
        let t = build_tower(3, 7, None, None).unwrap();
        let f = period_min_poly(&t).unwrap();
        assert_eq!(f, RatPoly::from_ints(&[-1, -2, 1, 1])); // X^3 + X^2 - 2X - 1
    }

    #[test]
    fn period_min_poly_generic_oracle() {
        // oracle: expand the conjugate product and compare coefficientwise
        for (p, r) in [(3u64, 19u64), (5, 11)] {
            let t = build_tower(p, r, None, None).unwrap();
            let f = period_min_poly(&t).unwrap();
            assert_eq!(f.degree(), Some(p as usize));
            assert!(f.is_monic());
            // every conjugate is a root
            for conj in t.delta_conjugates().unwrap() {
                let mut acc = CycNum::zero(t.m);
                for (i, c) in f.coeffs().iter().enumerate() {
                    acc = acc
                        .add(&conj.pow(i as i64).unwrap().scale(c))
                        .unwrap();
                }
                assert!(acc.is_zero());
            }
            // integer coefficients (delta is an algebraic integer)
            assert!(f.coeffs().iter().all(|c| c.denom().is_one()));
        }
    }

    #[test]
    fn sigma_delta_equals_delta_squared_minus_2() {
        let t = build_tower(3, 7, None, None).unwrap();
        let sd = t.delta.apply_aut(&t.sigma_bar).unwrap();
        let rhs = t
            .delta
            .mul(&t.delta)
            .unwrap()
            .sub(&CycNum::from_int(t.m, 2))
            .unwrap();
        assert_eq!(sd, rhs);
    }

    #[test]
    fn membership_examples() {
        let t = build_tower(3, 7, None, None).unwrap();
        assert!(t.membership(&t.delta, SubfieldTag::F).unwrap());
        assert!(t.membership(&t.delta, SubfieldTag::L).unwrap());
        assert!(!t.membership(&t.delta, SubfieldTag::K).unwrap());
        assert!(t.membership(&t.zeta_p(), SubfieldTag::K).unwrap());
        let x = t.delta.add(&t.zeta_p()).unwrap();
        assert!(!t.membership(&x, SubfieldTag::K).unwrap());
        assert!(t.membership(&x, SubfieldTag::L).unwrap());
        assert!(!t.membership(&t.zeta_r(), SubfieldTag::L).unwrap());
    }

    #[test]
    fn tower_automorphism_orders() {
        let t = build_tower(3, 7, None, None).unwrap();
        // sigma_bar tau_bar has order p(p-1) as a residue mod m
        let st = t.sigma_bar.compose(&t.tau_bar);
        let mut k = 1u64;
        let mut ord = 0;
        for i in 1..=42 {
            k = crate::arith::mul_mod(k, st.exponent(), t.m);
            if k == 1 {
                ord = i;
                break;
            }
        }
        assert_eq!(ord, t.p * (t.p - 1));
        // sigma^p fixes delta
        assert!(t
            .delta
            .is_fixed_by(&[t.sigma_bar.pow(t.p)])
            .unwrap());
    }

    #[test]
    fn q_membership_forces_rational() {
        let t = build_tower(3, 7, None, None).unwrap();
        let a = t.delta.add(&t.zeta_p()).unwrap();
        assert!(!t.membership(&a, SubfieldTag::Q).unwrap());
        assert!(t
            .membership(&CycNum::from_int(t.m, 5), SubfieldTag::Q)
            .unwrap());
    }
}
