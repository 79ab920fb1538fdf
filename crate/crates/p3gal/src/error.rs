use thiserror::Error;

/// Errors raised across the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("conductor mismatch: {0} vs {1}")]
    ConductorMismatch(u64, u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("r = {r} is not a prime congruent to 1 mod p = {p}")]
    CongruenceViolation { p: u64, r: u64 },
    #[error("bad generator: {0}")]
    BadGenerator(String),
    #[error("{0} does not divide {1}")]
    NotDivisible(u64, u64),
    #[error("two conjugates of the period coincide")]
    DegenerateConjugates,
    #[error("element is not in L")]
    NotInL,
    #[error("element is not in K")]
    NotInK,
    #[error("norm computation left the expected subfield")]
    ResultNotInK,
    #[error("incomplete factorization: composite residual after effort bound {0}")]
    FactorizationIncomplete(u64),
    #[error("no roots of the cyclotomic polynomial mod {0}")]
    NoRoots(u64),
    #[error("input must have integer coefficients")]
    NonIntegralInput,
    #[error("prime {0} is not completely split in L")]
    WrongPrimeClass(u64),
    #[error("could not find enough usable sample primes below the cap")]
    InsufficientPrimes,
    #[error("the ideal criterion is not satisfied for this element")]
    CriterionNotSatisfied,
    #[error("the semidirect build requires a verified theta")]
    MissingTheta,
    #[error("omega lies in K; the trace cubic would degenerate")]
    OmegaDegenerate,
    #[error("omega is not reciprocal: tau(omega) != 1/omega")]
    NotReciprocal,
    #[error("degenerate conjugates: the trace polynomial is not separable")]
    Degenerate,
    #[error("prime {0} divides a coefficient denominator")]
    BadPrime(u64),
    #[error("builder supports p = 3 only (got p = {0})")]
    UnsupportedPrime(u64),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
