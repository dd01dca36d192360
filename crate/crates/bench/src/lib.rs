//! Inputs shared by the benchmarks.

use cmfactor::CmPair;

/// Pairs of increasing size for the arithmetic and analytic sides.
pub const GZ_PAIRS: [(i64, i64); 4] = [(-3, -163), (-7, -43), (-23, -59), (-47, -71)];

pub const YZ_PAIRS: [(i64, i64); 3] = [(-7, -15), (-15, -31), (-23, -31)];

pub fn pair(d1: i64, d2: i64) -> CmPair {
    CmPair::new(d1, d2).expect("benchmark pairs are valid")
}
