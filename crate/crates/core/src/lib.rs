//! Both sides of the factorization formulas for differences of CM values of j
//! and of the Weber function ω₂, and exact checks of the Borcherds product
//! identities behind them.

pub mod arithside;
pub mod borcherds;
pub mod classgroup;
pub mod discform;
pub mod error;
pub mod numeric;
pub mod quadarith;
pub mod verify;

pub use classgroup::{heegner_point, reduced_forms, units_w, HeegnerPoint, QuadForm};
pub use error::{Error, Result};
pub use numeric::{BigComplex, FracQSeries, IntQSeries};
pub use verify::{borcherds_verify, gz_verify, yz_verify, IdentityCase, Status, VerificationReport};
pub use quadarith::{CmPair, Disc, IdealFactF, PrimeLog, PrimeOfF, RealQuadElem};
