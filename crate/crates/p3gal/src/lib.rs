//! Exact-arithmetic construction of the non-abelian order-p^3 Galois
//! extensions of Q: cyclotomic tower arithmetic, the ideal-theoretic
//! suitability criterion for candidate elements, degree-9 polynomial
//! synthesis for the two order-27 groups, and statistical Galois-group
//! verification via Frobenius cycle types.

pub mod arith;
pub mod builder;
pub mod criterion;
pub mod cyclotomic;
pub mod error;
pub mod expr;
pub mod fingerprint;
pub mod phinorm;
pub mod poly;
pub mod report;
pub mod tower;

pub use builder::{build, build_omega, compose_e_poly, trace_cubic, verify_theta, GroupTarget};
pub use criterion::{
    chi_report, classify_prime, criterion_verdict, factor_norm, pth_power_mc_test,
    search_candidates, split_roots, PrimeClass, PthPowerTestResult,
};
pub use cyclotomic::{CycAut, CycNum};
pub use error::{Error, Result};
pub use expr::parse_element;
pub use fingerprint::{discriminate, factor_degrees_mod_q, survey, Discrimination};
pub use phinorm::{beta, compute_b, norm_k_over_q, norm_l_over_k, norm_l_over_q, phi, GroupVariant};
pub use poly::{cyclotomic_polynomial, BigRat, RatPoly};
pub use tower::{build_tower, gaussian_period, period_min_poly, SubfieldTag, Tower};
