//! Relative norms down the tower and the multiplicative twist map Phi.

use crate::cyclotomic::CycNum;
use crate::error::{Error, Result};
use crate::poly::BigRat;
use crate::tower::{SubfieldTag, Tower};

/// Nr_{L/K}(x) = prod over <sigma_bar> of the conjugates of x.
pub fn norm_l_over_k(t: &Tower, x: &CycNum) -> Result<CycNum> {
    if !t.membership(x, SubfieldTag::L)? {
        return Err(Error::NotInL);
    }
    let mut acc = t.one();
    for i in 0..t.p {
        acc = acc.mul(&x.apply_aut(&t.sigma_bar.pow(i))?)?;
    }
    if !t.membership(&acc, SubfieldTag::K)? {
        return Err(Error::ResultNotInK);
    }
    Ok(acc)
}

/// Nr_{K/Q}(gamma) = prod over <tau_bar> of the conjugates of gamma.
pub fn norm_k_over_q(t: &Tower, gamma: &CycNum) -> Result<BigRat> {
    if !t.membership(gamma, SubfieldTag::K)? {
        return Err(Error::NotInK);
    }
    let mut acc = t.one();
    for j in 0..t.p - 1 {
        acc = acc.mul(&gamma.apply_aut(&t.tau_bar.pow(j))?)?;
    }
    acc.to_rational().ok_or(Error::ResultNotInK)
}

/// Nr_{L/Q}(x), computed down the tower and cross-checked against the
/// product over all p(p-1) conjugates of x.
pub fn norm_l_over_q(t: &Tower, x: &CycNum) -> Result<BigRat> {
    let through_k = norm_k_over_q(t, &norm_l_over_k(t, x)?)?;
    let mut full = t.one();
    for i in 0..t.p {
        for j in 0..t.p - 1 {
            let aut = t.sigma_bar.pow(i).compose(&t.tau_bar.pow(j));
            full = full.mul(&x.apply_aut(&aut)?)?;
        }
    }
    debug_assert_eq!(full.to_rational().as_ref(), Some(&through_k));
    Ok(through_k)
}

/// Exponents e^(p-2), e^(p-3), ..., e, 1 as signed integers. With e = -1
/// these alternate in sign and the map is evaluated through inverses.
fn phi_exponents(t: &Tower) -> Vec<i64> {
    (0..t.p - 1)
        .map(|j| t.e.pow((t.p - 2 - j) as u32))
        .collect()
}

/// Phi_{L/F}(y) = prod_j tau_bar^j(y)^(e^(p-2-j)); restricted to K this
/// is Phi_{K/Q} by the same formula.
pub fn phi(t: &Tower, y: &CycNum) -> Result<CycNum> {
    if y.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let mut acc = t.one();
    for (j, exp) in phi_exponents(t).into_iter().enumerate() {
        acc = acc.mul(&y.apply_aut(&t.tau_bar.pow(j as u64))?.pow(exp)?)?;
    }
    Ok(acc)
}

/// beta(x) = x^(p-1) sigma(x)^(p-2) ... sigma^(p-2)(x).
pub fn beta(t: &Tower, x: &CycNum) -> Result<CycNum> {
    if !t.membership(x, SubfieldTag::L)? {
        return Err(Error::NotInL);
    }
    let mut acc = t.one();
    for i in 0..t.p - 1 {
        let power = (t.p - 1 - i) as i64;
        acc = acc.mul(&x.apply_aut(&t.sigma_bar.pow(i))?.pow(power)?)?;
    }
    Ok(acc)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GroupVariant {
    Heisenberg,
    Semidirect,
}

/// b(x) = Phi(Nr_{L/K}(x)) for the Heisenberg target, Phi(zeta_p Nr_{L/K}(x))
/// for the semidirect one.
pub fn compute_b(t: &Tower, x: &CycNum, variant: GroupVariant) -> Result<CycNum> {
    let gamma = norm_l_over_k(t, x)?;
    let arg = match variant {
        GroupVariant::Heisenberg => gamma,
        GroupVariant::Semidirect => t.zeta_p().mul(&gamma)?,
    };
    let b = phi(t, &arg)?;
    debug_assert!(t.membership(&b, SubfieldTag::K)?);
    Ok(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::CycNum;
    use crate::tower::build_tower;
    use num_bigint::BigInt;

    fn rat(n: i64) -> BigRat {
        BigRat::from_integer(BigInt::from(n))
    }

    #[test]
    fn norm_example_3_6() {
        let t = build_tower(3, 7, None, None).unwrap();
        let x = t.delta.add(&t.zeta_p()).unwrap();
        let gamma = norm_l_over_k(&t, &x).unwrap();
        let expected = CycNum::from_int(t.m, 3).sub(&t.zeta_p()).unwrap();
        assert_eq!(gamma, expected);
        assert_eq!(norm_k_over_q(&t, &gamma).unwrap(), rat(13));
        assert_eq!(norm_l_over_q(&t, &x).unwrap(), rat(13));
    }

    #[test]
    fn norm_example_3_7() {
        let t = build_tower(3, 19, None, None).unwrap();
        let x = t
            .delta
            .add(&t.zeta_p())
            .unwrap()
            .add(&t.one())
            .unwrap();
        let gamma = norm_l_over_k(&t, &x).unwrap();
        assert_eq!(gamma, t.zeta_p().scale(&rat(-7)));
        assert_eq!(norm_k_over_q(&t, &gamma).unwrap(), rat(49));
    }

    #[test]
    fn norm_example_3_8() {
        let t = build_tower(3, 73, Some(2), None).unwrap();
        let x = t
            .delta
            .sub(&t.zeta_p())
            .unwrap()
            .add(&t.one())
            .unwrap();
        let gamma = norm_l_over_k(&t, &x).unwrap();
        assert_eq!(gamma, t.zeta_p().scale(&rat(21)));
        assert_eq!(norm_k_over_q(&t, &gamma).unwrap(), rat(441));
        // Phi(gamma) = 21^3 zeta_3
        let b = phi(&t, &gamma).unwrap();
        assert_eq!(b, t.zeta_p().scale(&rat(9261)));
    }

    #[test]
    fn norm_example_3_9() {
        let t = build_tower(5, 11, None, None).unwrap();
        let x = t.delta.sub(&t.zeta_p()).unwrap();
        assert_eq!(norm_l_over_q(&t, &x).unwrap(), rat(991));
    }

    #[test]
    fn norm_of_one() {
        let t = build_tower(3, 7, None, None).unwrap();
        assert_eq!(norm_l_over_k(&t, &t.one()).unwrap(), t.one());
        assert_eq!(norm_l_over_q(&t, &t.one()).unwrap(), rat(1));
    }

    #[test]
    fn norm_rejects_elements_outside_l() {
        let t = build_tower(3, 7, None, None).unwrap();
        assert!(matches!(
            norm_l_over_k(&t, &t.zeta_r()),
            Err(Error::NotInL)
        ));
    }

    #[test]
    fn phi_on_zeta_p_and_rationals() {
        let t = build_tower(3, 7, Some(2), None).unwrap();
        // Phi(zeta_3) = zeta_3^2 * tau(zeta_3)^1 = zeta_3^2 zeta_3^2 = zeta_3
        let got = phi(&t, &t.zeta_p()).unwrap();
        assert_eq!(got, t.zeta_p());
        // Phi(zeta_p) = zeta_p^(-e^(p-2))
        let expected = t.zeta_p().pow(-2).unwrap();
        assert_eq!(got, expected);
        // rational q maps to q^(e^(p-2)+...+1)
        let q = CycNum::from_int(t.m, 5);
        assert_eq!(phi(&t, &q).unwrap(), CycNum::from_int(t.m, 125));
    }

    #[test]
    fn phi_example_3_8_value() {
        let t = build_tower(3, 73, Some(2), None).unwrap();
        let gamma = t.zeta_p().scale(&rat(21));
        assert_eq!(phi(&t, &gamma).unwrap(), t.zeta_p().scale(&rat(9261)));
    }

    #[test]
    fn beta_small_cases() {
        let t = build_tower(3, 7, None, None).unwrap();
        assert_eq!(beta(&t, &t.one()).unwrap(), t.one());
        let x = t.delta.add(&t.zeta_p()).unwrap();
        // p = 3: beta = x^2 sigma(x)
        let expected = x
            .pow(2)
            .unwrap()
            .mul(&x.apply_aut(&t.sigma_bar).unwrap())
            .unwrap();
        assert_eq!(beta(&t, &x).unwrap(), expected);
    }

    #[test]
    fn compute_b_variants() {
        let t = build_tower(3, 73, Some(2), None).unwrap();
        let x = t
            .delta
            .sub(&t.zeta_p())
            .unwrap()
            .add(&t.one())
            .unwrap();
        let bh = compute_b(&t, &x, GroupVariant::Heisenberg).unwrap();
        assert_eq!(bh, t.zeta_p().scale(&rat(9261)));
        let bs = compute_b(&t, &x, GroupVariant::Semidirect).unwrap();
        // variants differ by Phi(zeta_p) = zeta_p^(-e^(p-2))
        let factor = t.zeta_p().pow(-2).unwrap();
        assert_eq!(bs, bh.mul(&factor).unwrap());
        assert_eq!(
            compute_b(&t, &t.one(), GroupVariant::Heisenberg).unwrap(),
            t.one()
        );
    }

    #[test]
    fn norm_phi_commutation_sample() {
        let t = build_tower(3, 7, None, None).unwrap();
        let x = t
            .delta
            .mul(&CycNum::from_int(t.m, 2))
            .unwrap()
            .add(&t.zeta_p())
            .unwrap()
            .sub(&t.one())
            .unwrap();
        let lhs = norm_l_over_k(&t, &phi(&t, &x).unwrap()).unwrap();
        let rhs = phi(&t, &norm_l_over_k(&t, &x).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }
}
