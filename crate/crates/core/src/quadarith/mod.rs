//! Arithmetic of F = Q(√D) and of the biquadratic field E = Q(√d₁, √d₂):
//! splitting data, principal-ideal factorization and ideal counting.

mod field;
mod primelog;
mod symbols;

pub use field::{
    diff_set, factor_principal_ideal, primes_of_f_above, rho, splitting_in_e_over_f, CmPair, Disc, EfSplitting,
    IdealFactF, PrimeOfF, RealQuadElem, SplitTypeF,
};
pub use primelog::PrimeLog;
pub use symbols::{factorize, is_fundamental, is_prime, kronecker, padic_sqrt, to_i64, valuation, valuation_i64};
