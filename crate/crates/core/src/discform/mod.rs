//! The finite quadratic module of the level-2 lattice, its Weil
//! representation, and vector-valued input forms for Borcherds lifts.

mod cyclo;
mod module;
mod sl2z;
mod vvform;

pub use cyclo::Cyclo8;
pub use module::{rank, weil_matrix, DiscModule, WeilMatrix};
pub use sl2z::{Gen, Sl2z};
pub use vvform::{build_weber_f, eval_series, integral, restrict_to_m, VVForm};

/// The module of the level-2 lattice (Z Z; 2Z Z) with Q = det.
pub fn level2_module() -> DiscModule {
    DiscModule::level2()
}
