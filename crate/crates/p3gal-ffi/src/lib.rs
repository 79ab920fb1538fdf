//! C ABI for the p3gal library.
//!
//! Conventions: opaque handles for towers and elements, integer error
//! codes (0 = ok), and JSON strings for structured reports. Every string
//! returned by this library must be released with `p3gal_string_free`,
//! every handle with its matching `_free` function.

use std::ffi::{c_char, c_int, CStr, CString};
use std::ptr;

use p3gal::builder::{build, default_theta_3_7, verify_theta, GroupTarget};
use p3gal::criterion::{criterion_verdict, pth_power_mc_test, PthPowerTestResult};
use p3gal::error::Error;
use p3gal::expr::parse_element;
use p3gal::fingerprint::survey;
use p3gal::phinorm::{compute_b, GroupVariant};
use p3gal::report::{build_doc, fingerprint_doc, mc_doc, verdict_doc, RunConfig};
use p3gal::tower::{build_tower, period_min_poly, Tower};
use p3gal::CycNum;

/// Error codes mirrored in the generated header.
pub const P3GAL_OK: c_int = 0;
pub const P3GAL_ERR_ARGUMENT: c_int = 1;
pub const P3GAL_ERR_CONGRUENCE: c_int = 2;
pub const P3GAL_ERR_PARSE: c_int = 3;
pub const P3GAL_ERR_FACTORIZATION: c_int = 4;
pub const P3GAL_ERR_CRITERION: c_int = 5;
pub const P3GAL_ERR_BUILDER: c_int = 6;

fn code_for(err: &Error) -> c_int {
    match err {
        Error::CongruenceViolation { .. } | Error::BadGenerator(_) => P3GAL_ERR_CONGRUENCE,
        Error::Parse(_) => P3GAL_ERR_PARSE,
        Error::FactorizationIncomplete(_) => P3GAL_ERR_FACTORIZATION,
        Error::CriterionNotSatisfied => P3GAL_ERR_CRITERION,
        _ => P3GAL_ERR_BUILDER,
    }
}

/// Opaque tower handle.
pub struct P3galTower {
    inner: Tower,
}

/// Opaque field-element handle (an element of Q(zeta_pr)).
pub struct P3galElement {
    inner: CycNum,
}

fn to_c_string(s: String) -> *mut c_char {
    CString::new(s).map(CString::into_raw).unwrap_or(ptr::null_mut())
}

unsafe fn str_arg<'a>(s: *const c_char) -> Option<&'a str> {
    if s.is_null() {
        return None;
    }
    CStr::from_ptr(s).to_str().ok()
}

/// Build the tower for (p, r). `e` is a primitive root mod p or -1; pass 0
/// to use the default. Returns null on failure and stores the error code
/// in `err` when non-null.
#[no_mangle]
pub unsafe extern "C" fn p3gal_tower_new(
    p: u64,
    r: u64,
    e: i64,
    err: *mut c_int,
) -> *mut P3galTower {
    let e_opt = if e == 0 { None } else { Some(e) };
    match build_tower(p, r, e_opt, None) {
        Ok(inner) => {
            if !err.is_null() {
                *err = P3GAL_OK;
            }
            Box::into_raw(Box::new(P3galTower { inner }))
        }
        Err(e) => {
            if !err.is_null() {
                *err = code_for(&e);
            }
            ptr::null_mut()
        }
    }
}

#[no_mangle]
pub unsafe extern "C" fn p3gal_tower_free(t: *mut P3galTower) {
    if !t.is_null() {
        drop(Box::from_raw(t));
    }
}

/// JSON description of the tower plus its period minimal polynomial.
#[no_mangle]
pub unsafe extern "C" fn p3gal_tower_describe(t: *const P3galTower) -> *mut c_char {
    let Some(t) = t.as_ref() else {
        return ptr::null_mut();
    };
    let Ok(f) = period_min_poly(&t.inner) else {
        return ptr::null_mut();
    };
    let doc = serde_json::json!({
        "schema": 1,
        "tower": serde_json::to_value(t.inner.report()).unwrap(),
        "period_min_poly": f.to_string(),
        "period_min_poly_coeffs": f.coeff_strings(),
    });
    to_c_string(doc.to_string())
}

/// Parse an element expression (symbols zp, zr, d) in the tower's context.
#[no_mangle]
pub unsafe extern "C" fn p3gal_element_parse(
    t: *const P3galTower,
    expr: *const c_char,
    err: *mut c_int,
) -> *mut P3galElement {
    let set_err = |code: c_int| {
        if !err.is_null() {
            *err = code;
        }
    };
    let (Some(t), Some(expr)) = (t.as_ref(), str_arg(expr)) else {
        set_err(P3GAL_ERR_ARGUMENT);
        return ptr::null_mut();
    };
    match parse_element(&t.inner, expr) {
        Ok(inner) => {
            set_err(P3GAL_OK);
            Box::into_raw(Box::new(P3galElement { inner }))
        }
        Err(e) => {
            set_err(code_for(&e));
            ptr::null_mut()
        }
    }
}

#[no_mangle]
pub unsafe extern "C" fn p3gal_element_free(x: *mut P3galElement) {
    if !x.is_null() {
        drop(Box::from_raw(x));
    }
}

/// Criterion verdict for x, including Monte-Carlo p-th-power tests of both
/// b-values, as a JSON report. Null on failure, code in `err`.
#[no_mangle]
pub unsafe extern "C" fn p3gal_check(
    t: *const P3galTower,
    x: *const P3galElement,
    mc_trials: u64,
    seed: u64,
    err: *mut c_int,
) -> *mut c_char {
    let set_err = |code: c_int| {
        if !err.is_null() {
            *err = code;
        }
    };
    let (Some(t), Some(x)) = (t.as_ref(), x.as_ref()) else {
        set_err(P3GAL_ERR_ARGUMENT);
        return ptr::null_mut();
    };
    let result = (|| -> Result<String, Error> {
        let v = criterion_verdict(&t.inner, &x.inner)?;
        let bh = compute_b(&t.inner, &x.inner, GroupVariant::Heisenberg)?;
        let bs = compute_b(&t.inner, &x.inner, GroupVariant::Semidirect)?;
        let mc_h = pth_power_mc_test(&t.inner, &bh, mc_trials, seed)?;
        let mc_s = pth_power_mc_test(&t.inner, &bs, mc_trials, seed)?;
        let config = RunConfig {
            command: "check".into(),
            p: Some(t.inner.p),
            r: Some(t.inner.r),
            e: Some(t.inner.e),
            x: Some(x.inner.to_string()),
            mc_trials: Some(mc_trials),
            seed: Some(seed),
            ..Default::default()
        };
        let doc = verdict_doc(
            &t.inner,
            config,
            &x.inner.to_string(),
            &v,
            Some(mc_doc(&mc_h, mc_trials, seed)),
            Some(mc_doc(&mc_s, mc_trials, seed)),
        );
        Ok(serde_json::to_string(&doc).unwrap())
    })();
    match result {
        Ok(json) => {
            set_err(P3GAL_OK);
            to_c_string(json)
        }
        Err(e) => {
            set_err(code_for(&e));
            ptr::null_mut()
        }
    }
}

/// Whether the Monte-Carlo test certifies z as a non-p-th power.
/// Returns 1 (certified not a p-th power, witness stored), 0 (probably a
/// p-th power), or -1 on error.
#[no_mangle]
pub unsafe extern "C" fn p3gal_pth_power_test(
    t: *const P3galTower,
    z: *const P3galElement,
    trials: u64,
    seed: u64,
    witness: *mut u64,
) -> c_int {
    let (Some(t), Some(z)) = (t.as_ref(), z.as_ref()) else {
        return -1;
    };
    match pth_power_mc_test(&t.inner, &z.inner, trials, seed) {
        Ok(PthPowerTestResult::NotPthPower(q)) => {
            if !witness.is_null() {
                *witness = q;
            }
            1
        }
        Ok(PthPowerTestResult::ProbablyPthPower(_)) => 0,
        Err(_) => -1,
    }
}

/// End-to-end degree-9 polynomial build (p = 3). `group` is "h27" or
/// "c9c3"; `theta_expr` may be null (the built-in default applies on the
/// (3,7) tower). Returns the full JSON report.
#[no_mangle]
pub unsafe extern "C" fn p3gal_build(
    t: *const P3galTower,
    x: *const P3galElement,
    group: *const c_char,
    theta_expr: *const c_char,
    override_ideal_test: c_int,
    fingerprint_budget: u64,
    err: *mut c_int,
) -> *mut c_char {
    let set_err = |code: c_int| {
        if !err.is_null() {
            *err = code;
        }
    };
    let (Some(t), Some(x), Some(group)) = (t.as_ref(), x.as_ref(), str_arg(group)) else {
        set_err(P3GAL_ERR_ARGUMENT);
        return ptr::null_mut();
    };
    let target = match group {
        "h27" => GroupTarget::H27,
        "c9c3" => GroupTarget::C9xC3,
        _ => {
            set_err(P3GAL_ERR_ARGUMENT);
            return ptr::null_mut();
        }
    };
    let result = (|| -> Result<String, Error> {
        let theta = match (target, str_arg(theta_expr)) {
            (GroupTarget::C9xC3, Some(expr)) => {
                Some(verify_theta(&t.inner, &parse_element(&t.inner, expr)?)?)
            }
            (GroupTarget::C9xC3, None) if (t.inner.p, t.inner.r) == (3, 7) => {
                Some(verify_theta(&t.inner, &default_theta_3_7(&t.inner)?)?)
            }
            (GroupTarget::C9xC3, None) => return Err(Error::MissingTheta),
            _ => None,
        };
        let budget = (fingerprint_budget > 0).then_some(fingerprint_budget);
        let report = build(
            &t.inner,
            &x.inner,
            target,
            theta.as_ref(),
            override_ideal_test != 0,
            budget,
        )?;
        let config = RunConfig {
            command: "build".into(),
            p: Some(t.inner.p),
            r: Some(t.inner.r),
            e: Some(t.inner.e),
            x: Some(x.inner.to_string()),
            group: Some(group.to_string()),
            fingerprint_budget: budget,
            override_ideal_test: Some(override_ideal_test != 0),
            ..Default::default()
        };
        let doc = build_doc(&t.inner, config, &x.inner.to_string(), &report, None);
        Ok(serde_json::to_string(&doc).unwrap())
    })();
    match result {
        Ok(json) => {
            set_err(P3GAL_OK);
            to_c_string(json)
        }
        Err(e) => {
            set_err(code_for(&e));
            ptr::null_mut()
        }
    }
}

/// Frobenius cycle-type survey of a monic polynomial given as a
/// comma-separated ascending coefficient list (rationals as "num/den").
#[no_mangle]
pub unsafe extern "C" fn p3gal_fingerprint(
    coeffs: *const c_char,
    budget: u64,
    start: u64,
    err: *mut c_int,
) -> *mut c_char {
    let set_err = |code: c_int| {
        if !err.is_null() {
            *err = code;
        }
    };
    let Some(coeffs) = str_arg(coeffs) else {
        set_err(P3GAL_ERR_ARGUMENT);
        return ptr::null_mut();
    };
    let parsed: Result<Vec<p3gal::BigRat>, Error> = coeffs
        .split(',')
        .map(|s| {
            let s = s.trim();
            match s.split_once('/') {
                Some((n, d)) => Ok(p3gal::BigRat::new(
                    n.parse().map_err(|_| Error::Parse(s.into()))?,
                    d.parse().map_err(|_| Error::Parse(s.into()))?,
                )),
                None => Ok(p3gal::BigRat::from_integer(
                    s.parse().map_err(|_| Error::Parse(s.into()))?,
                )),
            }
        })
        .collect();
    match parsed {
        Ok(c) => {
            let f = p3gal::RatPoly::new(c);
            let fp = survey(&f, budget, start.max(2));
            set_err(P3GAL_OK);
            to_c_string(serde_json::to_string(&fingerprint_doc(&fp)).unwrap())
        }
        Err(e) => {
            set_err(code_for(&e));
            ptr::null_mut()
        }
    }
}

/// Release a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn p3gal_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::ffi::CString;

    #[test]
    fn end_to_end_through_the_c_surface() {
        unsafe {
            let mut err = -1;
            // e = -1 so the degree-9 builder is available on this tower
            let t = p3gal_tower_new(3, 7, -1, &mut err);
            assert_eq!(err, P3GAL_OK);
            assert!(!t.is_null());

            let desc = p3gal_tower_describe(t);
            let json = CStr::from_ptr(desc).to_str().unwrap();
            assert!(json.contains("X^3 + X^2 - 2*X - 1"));
            p3gal_string_free(desc);

            let expr = CString::new("d + zp").unwrap();
            let x = p3gal_element_parse(t, expr.as_ptr(), &mut err);
            assert_eq!(err, P3GAL_OK);

            let check = p3gal_check(t, x, 10, 1, &mut err);
            assert_eq!(err, P3GAL_OK);
            let json = CStr::from_ptr(check).to_str().unwrap();
            let v: serde_json::Value = serde_json::from_str(json).unwrap();
            assert_eq!(v["ideal_criterion"], true);
            assert_eq!(v["norm"], "+13^1");
            p3gal_string_free(check);

            let group = CString::new("c9c3").unwrap();
            let built = p3gal_build(t, x, group.as_ptr(), ptr::null(), 0, 0, &mut err);
            assert_eq!(err, P3GAL_OK);
            let json = CStr::from_ptr(built).to_str().unwrap();
            let v: serde_json::Value = serde_json::from_str(json).unwrap();
            assert_eq!(v["trace_cubic"]["coeffs"][3], "1");
            p3gal_string_free(built);

            p3gal_element_free(x);
            p3gal_tower_free(t);
        }
    }

    #[test]
    fn error_paths_return_codes() {
        unsafe {
            let mut err = 0;
            let t = p3gal_tower_new(3, 6, 0, &mut err);
            assert!(t.is_null());
            assert_eq!(err, P3GAL_ERR_CONGRUENCE);

            let mut err = 0;
            let t = p3gal_tower_new(3, 7, 0, &mut err);
            let bad = CString::new("q + 1").unwrap();
            let x = p3gal_element_parse(t, bad.as_ptr(), &mut err);
            assert!(x.is_null());
            assert_eq!(err, P3GAL_ERR_PARSE);
            p3gal_tower_free(t);
        }
    }

    #[test]
    fn fingerprint_through_c_surface() {
        unsafe {
            let mut err = -1;
            let coeffs = CString::new("1,1,1").unwrap();
            let out = p3gal_fingerprint(coeffs.as_ptr(), 20, 2, &mut err);
            assert_eq!(err, P3GAL_OK);
            let json = CStr::from_ptr(out).to_str().unwrap();
            assert!(json.contains("patterns"));
            p3gal_string_free(out);
        }
    }
}
