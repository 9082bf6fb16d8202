//! Exact arithmetic: Laurent polynomials in `q^{1/2}` and `z`, rationals and
//! prime fields.

mod field;
mod laurent;
mod rational;

pub use field::{is_prime, PrimeField, PrimeFieldElement};
pub use laurent::{
    eval_at_q, max_deg_z_after_q_eq_z2, substitute_z, Coefficient, QZPoly, ZSubstituted,
};
pub use rational::{int_to_json, pow_rational, rational_to_json, ExactRational};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("a half-integer power of the non-square {q} survives evaluation")]
    IrrationalEvaluation { q: u64 },
    #[error("the polynomial is zero")]
    ZeroPolynomial,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("q must be at least 2, got {0}")]
    InvalidQ(u64),
}
