use serde::{Deserialize, Serialize};

use super::matrix::{BitMatrix, DEFAULT_ENUMERATION_CAP};
use super::word::BitWord;
use crate::error::{Error, Result};
use crate::exec::Backend;

/// Binary linear code given as the nullspace of a parity-check matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinearCode {
    parity_check: BitMatrix,
    rank: usize,
}

impl LinearCode {
    pub fn new(parity_check: BitMatrix) -> Self {
        let rank = parity_check.rank();
        LinearCode { parity_check, rank }
    }

    pub fn parity_check(&self) -> &BitMatrix {
        &self.parity_check
    }

    /// Block length.
    pub fn n(&self) -> usize {
        self.parity_check.cols()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// `k = n - rank`; the code has exactly `2^k` words.
    pub fn dimension(&self) -> usize {
        self.n() - self.rank
    }

    pub fn contains(&self, w: &BitWord) -> Result<bool> {
        self.parity_check.annihilates(w)
    }

    pub fn codewords(&self) -> Result<Vec<BitWord>> {
        self.parity_check.nullspace_enumerate()
    }

    pub fn min_distance(&self) -> Result<usize> {
        self.min_distance_with(Backend::default(), DEFAULT_ENUMERATION_CAP)
    }

    /// Minimum weight over nonzero codewords.
    ///
    /// A zero column of the parity-check matrix means a weight-one codeword,
    /// so that case returns 1 without enumeration. Otherwise the nullspace is
    /// walked in Gray-code order, split over the top basis bits so chunks can
    /// run on the given backend.
    pub fn min_distance_with(&self, backend: Backend, cap: usize) -> Result<usize> {
        let k = self.dimension();
        if k == 0 {
            return Err(Error::DegenerateCode);
        }
        if (0..self.n()).any(|c| self.parity_check.column_is_zero(c)) {
            return Ok(1);
        }
        if k > cap {
            return Err(Error::SizeCap {
                what: "code dimension",
                size: k as u128,
                cap: cap as u128,
            });
        }
        let basis = self.parity_check.nullspace_basis();
        debug_assert_eq!(basis.len(), k);
        let high = k.min(6);
        let low = k - high;
        let (low_basis, high_basis) = basis.split_at(low);
        let per_chunk = backend.map_range(0..1u64 << high, |chunk| {
            let mut acc = vec![0u64; basis[0].blocks().len()];
            for (i, b) in high_basis.iter().enumerate() {
                if chunk >> i & 1 == 1 {
                    xor_into(&mut acc, b.blocks());
                }
            }
            let mut best = if chunk == 0 { usize::MAX } else { weight(&acc) };
            for step in 1u64..1 << low {
                xor_into(&mut acc, low_basis[step.trailing_zeros() as usize].blocks());
                best = best.min(weight(&acc));
            }
            best
        });
        Ok(per_chunk.into_iter().min().expect("at least one chunk"))
    }

    /// `(d - 1) / n`.
    pub fn relative_distance(&self) -> Result<f64> {
        Ok((self.min_distance()? - 1) as f64 / self.n() as f64)
    }

    /// `(k / n, 1 - k / n)`.
    pub fn rate_and_redundancy(&self) -> (f64, f64) {
        let rate = self.dimension() as f64 / self.n() as f64;
        (rate, 1.0 - rate)
    }
}

fn xor_into(acc: &mut [u64], b: &[u64]) {
    for (a, x) in acc.iter_mut().zip(b) {
        *a ^= x;
    }
}

fn weight(blocks: &[u64]) -> usize {
    blocks.iter().map(|b| b.count_ones() as usize).sum()
}

pub fn min_distance(code: &LinearCode) -> Result<usize> {
    code.min_distance()
}

pub fn relative_distance(code: &LinearCode) -> Result<f64> {
    code.relative_distance()
}

pub fn rate_and_redundancy(code: &LinearCode) -> (f64, f64) {
    code.rate_and_redundancy()
}
