//! Multiprecision numerics and q-expansions of classical modular functions.

mod classpoly;
mod complex;
pub mod float;
mod modular;
mod series;

pub use classpoly::{class_poly_prec, class_polynomial, class_polynomial_with_retries, recognize_integer, IntPoly};
pub use complex::{BigComplex, MIN_PREC};
pub use modular::{
    delta_series, e2_series, e4_series, eta_series, euler_product, eval_delta, eval_eta, eval_f2, eval_j,
    eval_omega2, j_series, omega2_series, plus_product, reduce_to_fundamental, sigma, truncation_length, Mat2,
};
pub use series::{Coeff, FracQSeries, IntQSeries};
