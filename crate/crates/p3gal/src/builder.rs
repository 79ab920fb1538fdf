//! Degree-9 polynomial synthesis for the two non-abelian order-27 groups:
//! from a suitable x, form omega, the trace cubic of omega + 1/omega over Q,
//! and compose with X^3 - 3X.

use crate::criterion::{criterion_verdict, CriterionVerdict};
use crate::cyclotomic::CycNum;
use crate::error::{Error, Result};
use crate::phinorm::{beta, phi};
use crate::poly::RatPoly;
use crate::tower::{product_of_linear, SubfieldTag, Tower};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GroupTarget {
    H27,
    C9xC3,
}

impl GroupTarget {
    pub fn label(&self) -> &'static str {
        match self {
            GroupTarget::H27 => "h27",
            GroupTarget::C9xC3 => "c9c3",
        }
    }
}

/// Certificate that theta is a Kummer generator of L/K: sigma(theta) =
/// zeta_3 theta and theta^3 in K.
#[derive(Clone, Debug)]
pub struct ThetaCert {
    pub theta: CycNum,
    /// theta^3, the Kummer element a with L = K(a^(1/3)).
    pub a: CycNum,
    pub ok: bool,
}

pub fn verify_theta(t: &Tower, theta: &CycNum) -> Result<ThetaCert> {
    assert_eq!(t.p, 3, "theta certificates are a p = 3 notion");
    assert!(!theta.is_zero());
    let cube = theta.pow(3)?;
    let eigen = theta.apply_aut(&t.sigma_bar)? == t.zeta_p().mul(theta)?;
    let in_k = t.membership(&cube, SubfieldTag::K)?;
    let not_in_k = !t.membership(theta, SubfieldTag::K)?;
    Ok(ThetaCert {
        theta: theta.clone(),
        a: cube,
        ok: eigen && in_k && not_in_k,
    })
}

/// The built-in theta for the (3, 7) tower: 3d^2 + 3d + 3 zeta_3 d + zeta_3 - 4.
pub fn default_theta_3_7(t: &Tower) -> Result<CycNum> {
    let three = crate::poly::BigRat::from_integer(3.into());
    let d = &t.delta;
    let zp = t.zeta_p();
    d.pow(2)?
        .scale(&three)
        .add(&d.scale(&three))?
        .add(&zp.mul(d)?.scale(&three))?
        .add(&zp)?
        .sub(&CycNum::from_int(t.m, 4))
}

fn require_builder_mode(t: &Tower) -> Result<()> {
    if t.p != 3 {
        return Err(Error::UnsupportedPrime(t.p));
    }
    if t.e != -1 {
        return Err(Error::BadGenerator(
            "the polynomial builder needs the tower in e = -1 mode".into(),
        ));
    }
    Ok(())
}

/// omega = Phi(x^2 sigma(x)) for H27, Phi(x^2 sigma(x) theta) for C9xC3;
/// with p = 3 and e = -1, Phi(y) = tau(y)/y, so tau(omega) = 1/omega.
pub fn build_omega(
    t: &Tower,
    x: &CycNum,
    group: GroupTarget,
    theta: Option<&ThetaCert>,
    override_ideal_test: bool,
) -> Result<CycNum> {
    require_builder_mode(t)?;
    if !override_ideal_test {
        let v = criterion_verdict(t, x)?;
        if !v.ideal_criterion_holds {
            return Err(Error::CriterionNotSatisfied);
        }
    }
    let mut y = beta(t, x)?;
    if group == GroupTarget::C9xC3 {
        let cert = theta.ok_or(Error::MissingTheta)?;
        if !cert.ok {
            return Err(Error::MissingTheta);
        }
        y = y.mul(&cert.theta)?;
    }
    let omega = phi(t, &y)?;
    // tau(omega) * omega = 1, exactly
    let tau_omega = omega.apply_aut(&t.tau_bar)?;
    assert_eq!(tau_omega.mul(&omega)?, t.one(), "omega is not reciprocal");
    if t.membership(&omega, SubfieldTag::K)? {
        return Err(Error::OmegaDegenerate);
    }
    Ok(omega)
}

/// Minimal polynomial of s = omega + 1/omega over Q: the product of
/// (X - sigma^i s), every coefficient asserted rational, conjugates
/// asserted pairwise distinct.
pub fn trace_cubic(t: &Tower, omega: &CycNum) -> Result<RatPoly> {
    if omega.apply_aut(&t.tau_bar)?.mul(omega)? != t.one() {
        return Err(Error::NotReciprocal);
    }
    let s = omega.add(&omega.inv()?)?;
    debug_assert!(t.membership(&s, SubfieldTag::F)?);
    let conjugates: Vec<CycNum> = (0..t.p)
        .map(|i| s.apply_aut(&t.sigma_bar.pow(i)))
        .collect::<Result<_>>()?;
    for i in 0..conjugates.len() {
        for j in (i + 1)..conjugates.len() {
            if conjugates[i] == conjugates[j] {
                return Err(Error::Degenerate);
            }
        }
    }
    let coeffs = product_of_linear(t.m, &conjugates)?;
    let mut out = Vec::with_capacity(coeffs.len());
    for c in &coeffs {
        out.push(c.to_rational().ok_or(Error::Degenerate)?);
    }
    Ok(RatPoly::new(out))
}

/// cubic(X^3 - 3X), expanded exactly; monic of degree 9.
pub fn compose_e_poly(cubic: &RatPoly) -> RatPoly {
    assert_eq!(cubic.degree(), Some(3));
    assert!(cubic.is_monic());
    cubic.compose(&RatPoly::from_ints(&[0, -3, 0, 1]))
}

#[derive(Clone, Debug)]
pub struct EPolyReport {
    pub group: GroupTarget,
    pub x: CycNum,
    pub omega: CycNum,
    pub trace_cubic: RatPoly,
    pub e_poly: RatPoly,
    pub verdict: CriterionVerdict,
    pub fingerprint: Option<crate::fingerprint::GroupFingerprint>,
}

/// End-to-end build; fingerprint sampling attached when a budget is given.
pub fn build(
    t: &Tower,
    x: &CycNum,
    group: GroupTarget,
    theta: Option<&ThetaCert>,
    override_ideal_test: bool,
    fingerprint_budget: Option<u64>,
) -> Result<EPolyReport> {
    require_builder_mode(t)?;
    let verdict = criterion_verdict(t, x)?;
    if !verdict.ideal_criterion_holds && !override_ideal_test {
        return Err(Error::CriterionNotSatisfied);
    }
    let omega = build_omega(t, x, group, theta, true)?;
    let cubic = trace_cubic(t, &omega)?;
    let e_poly = compose_e_poly(&cubic);
    let fingerprint = fingerprint_budget.map(|b| crate::fingerprint::survey(&e_poly, b, 2));
    Ok(EPolyReport {
        group,
        x: x.clone(),
        omega,
        trace_cubic: cubic,
        e_poly,
        verdict,
        fingerprint,
    })
}
