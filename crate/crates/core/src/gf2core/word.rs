use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

pub(crate) const BITS: usize = 64;

pub(crate) fn blocks_for(len: usize) -> usize {
    len.div_ceil(BITS)
}

/// A binary word of fixed length, packed little-endian into `u64` blocks.
///
/// Bits past `len` in the last block are always zero.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct BitWord {
    len: usize,
    blocks: Vec<u64>,
}

impl BitWord {
    pub fn zeros(len: usize) -> Result<Self> {
        if len == 0 {
            return Err(Error::Domain("word length must be at least 1".into()));
        }
        Ok(BitWord {
            len,
            blocks: vec![0; blocks_for(len)],
        })
    }

    /// Builds a word from 0/1 values; any other value is rejected.
    pub fn from_bits(bits: &[u8]) -> Result<Self> {
        let mut w = BitWord::zeros(bits.len())?;
        for (i, &b) in bits.iter().enumerate() {
            match b {
                0 => {}
                1 => w.set(i, true),
                _ => return Err(Error::Domain(format!("bit {i} is {b}, expected 0 or 1"))),
            }
        }
        Ok(w)
    }

    /// Word of length `len` with ones exactly at `support`.
    pub fn from_support(len: usize, support: &[usize]) -> Result<Self> {
        let mut w = BitWord::zeros(len)?;
        for &i in support {
            if i >= len {
                return Err(Error::Dimension {
                    expected: len,
                    actual: i + 1,
                });
            }
            w.set(i, true);
        }
        Ok(w)
    }

    pub(crate) fn from_blocks(len: usize, blocks: Vec<u64>) -> Self {
        debug_assert_eq!(blocks.len(), blocks_for(len));
        BitWord { len, blocks }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    /// Always false; words have length at least one.
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn blocks(&self) -> &[u64] {
        &self.blocks
    }

    pub fn get(&self, i: usize) -> bool {
        assert!(
            i < self.len,
            "bit index {i} out of range for length {}",
            self.len
        );
        (self.blocks[i / BITS] >> (i % BITS)) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        assert!(
            i < self.len,
            "bit index {i} out of range for length {}",
            self.len
        );
        let mask = 1u64 << (i % BITS);
        if value {
            self.blocks[i / BITS] |= mask;
        } else {
            self.blocks[i / BITS] &= !mask;
        }
    }

    pub fn weight(&self) -> usize {
        self.blocks.iter().map(|b| b.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(|&b| b == 0)
    }

    pub fn xor_assign(&mut self, other: &BitWord) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.blocks.iter_mut().zip(&other.blocks) {
            *a ^= b;
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }

    /// Indices of the one bits, ascending.
    pub fn support(&self) -> Vec<usize> {
        (0..self.len).filter(|&i| self.get(i)).collect()
    }
}

impl fmt::Display for BitWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.iter() {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for BitWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bits = s
            .trim()
            .chars()
            .map(|c| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                _ => Err(Error::Domain(format!(
                    "unexpected character {c:?} in bit word"
                ))),
            })
            .collect::<Result<Vec<u8>>>()?;
        BitWord::from_bits(&bits)
    }
}

/// Number of positions where `u` and `v` differ.
pub fn hamming_distance(u: &BitWord, v: &BitWord) -> Result<usize> {
    if u.len != v.len {
        return Err(Error::Dimension {
            expected: u.len,
            actual: v.len,
        });
    }
    Ok(u.blocks
        .iter()
        .zip(&v.blocks)
        .map(|(a, b)| (a ^ b).count_ones() as usize)
        .sum())
}
