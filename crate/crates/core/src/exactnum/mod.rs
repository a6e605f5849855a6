//! Exact arithmetic: rationals, cyclotomic fields, and reductions to prime fields.

pub mod cyclotomic;
pub mod primefield;
pub mod rational;

pub use cyclotomic::{euler_phi, CycloField, Cyclotomic};
pub use primefield::{choose_prime, reduce_mod, PrimeEmbedding};
pub use rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExactError {
    #[error("conductor {from} does not divide {to}")]
    ConductorMismatch { from: u64, to: u64 },
    #[error("no prime below 2^31 found for conductor {conductor}")]
    PrimeSearchExhausted { conductor: u64 },
    #[error("prime {prime} divides a coefficient denominator")]
    BadDenominator { prime: u64 },
    #[error("no embedding of conductor {conductor} into F_{prime}")]
    BadEmbedding { prime: u64, conductor: u64 },
    #[error("division by zero")]
    DivisionByZero,
}

/// Convenience constructor for ζ_n^k.
pub fn zeta(n: u64, k: i64) -> Cyclotomic {
    Cyclotomic::root_of_unity(n, k)
}
