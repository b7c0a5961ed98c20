use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero in Q(zeta_{conductor})")]
    DivisionByZero { conductor: u64 },

    #[error("exponent {k} is not a unit mod {conductor}; no such automorphism")]
    InvalidAutomorphism { k: i64, conductor: u64 },

    #[error("base is not admissible for modulus {n}: g^{n} is not +1 or -1")]
    InvalidBase { n: u64 },

    #[error("modulus {n} is even and V' takes an odd value; the step equation 2*qddot = -V' has no unique successor")]
    NoUniqueStep { n: u64 },

    #[error("root finder did not converge after {iterations} iterations; raise the precision")]
    NonConvergence { iterations: usize },

    #[error("{a} is not coprime to {n}")]
    NotCoprime { a: i64, n: u64 },

    #[error("{p} is not an odd prime")]
    NotPrime { p: u64 },

    #[error("precision {digits} is below the minimum of 15 decimal digits")]
    InvalidPrecision { digits: u32 },

    #[error("extension order m={m} must divide the modulus n={n}")]
    DivisibilityViolation { m: u64, n: u64 },

    #[error("cannot parse {text:?} as a rational number p/q")]
    BadRational { text: String },

    #[error("wave function has {got} amplitudes, expected {expected}")]
    BadLength { got: usize, expected: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
