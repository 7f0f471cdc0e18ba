//! Binary linear algebra and code metrics.
//!
//! Everything here works over GF(2) with words packed into `u64` blocks.

mod code;
mod matrix;
mod word;

pub use code::{min_distance, rate_and_redundancy, relative_distance, LinearCode};
pub use matrix::{nullspace_enumerate, rank_gf2, BitMatrix, DEFAULT_ENUMERATION_CAP};
pub use word::{hamming_distance, BitWord};

use crate::error::{Error, Result};

/// Binary entropy `-x log2 x - (1-x) log2 (1-x)`, with `H(0) = H(1) = 0`.
pub fn entropy(x: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::Domain(format!(
            "entropy argument {x} outside [0, 1]"
        )));
    }
    let term = |q: f64| if q == 0.0 { 0.0 } else { -q * q.log2() };
    Ok(term(x) + term(1.0 - x))
}
