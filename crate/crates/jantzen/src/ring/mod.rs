//! Exact Laurent and integer polynomials, cyclotomic polynomials and x-adic valuations.

pub mod finite_field;
mod laurent;
mod poly;
mod valuation;

pub use laurent::LaurentPoly;
pub(crate) use laurent::mod_pow;
pub use poly::{cyclotomic, divisors, quantum_integer, IntPoly};
pub use valuation::{ff_valuation_oracle, is_prime, nu_phi, nu_quantum, ValuationContext};
