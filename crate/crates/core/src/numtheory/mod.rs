//! Exact rationals, Bernoulli numbers, valuations and prime classification.

pub mod bernoulli;
pub mod irregular;
pub mod primes;
pub mod rational;

pub use bernoulli::{bernoulli_exact, bernoulli_mod, bernoulli_residues, BernoulliTable};
pub use irregular::{
    irregular_indices, is_regular, kv_status, scan_irregular, vp, IrregularReport, KvCondition,
    KvStatus, VERIFIED_KV_BOUND,
};
pub use primes::{is_prime, require_odd_prime};
pub use rational::BigRat;
