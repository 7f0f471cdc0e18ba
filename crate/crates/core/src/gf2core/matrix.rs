use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::word::{blocks_for, BitWord, BITS};
use crate::error::{Error, Result};

/// Default limit on the nullspace dimension that may be enumerated: at most
/// `2^24` words are ever materialized or walked.
pub const DEFAULT_ENUMERATION_CAP: usize = 24;

/// Dense binary matrix, rows packed into `u64` blocks.
///
/// Used both as a parity-check matrix (rows are checks) and as the
/// biadjacency matrix of a bipartite graph.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(try_from = "MatrixRepr", into = "MatrixRepr")]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    stride: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Result<Self> {
        if cols == 0 {
            return Err(Error::Domain("matrix must have at least one column".into()));
        }
        let stride = blocks_for(cols);
        Ok(BitMatrix {
            rows,
            cols,
            stride,
            data: vec![0; rows * stride],
        })
    }

    pub fn identity(n: usize) -> Result<Self> {
        let mut m = BitMatrix::zeros(n, n)?;
        for i in 0..n {
            m.set(i, i, true);
        }
        Ok(m)
    }

    /// Matrix with every entry set.
    pub fn ones(rows: usize, cols: usize) -> Result<Self> {
        let mut m = BitMatrix::zeros(rows, cols)?;
        for r in 0..rows {
            for c in 0..cols {
                m.set(r, c, true);
            }
        }
        Ok(m)
    }

    /// Builds a matrix from rows of 0/1 values. `cols` is needed for the
    /// zero-row case.
    pub fn from_rows(cols: usize, rows: &[Vec<u8>]) -> Result<Self> {
        let mut m = BitMatrix::zeros(rows.len(), cols)?;
        for (r, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::Dimension {
                    expected: cols,
                    actual: row.len(),
                });
            }
            for (c, &b) in row.iter().enumerate() {
                match b {
                    0 => {}
                    1 => m.set(r, c, true),
                    _ => return Err(Error::Domain(format!("entry ({r},{c}) is {b}"))),
                }
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        assert!(
            r < self.rows && c < self.cols,
            "entry ({r},{c}) out of range"
        );
        (self.data[r * self.stride + c / BITS] >> (c % BITS)) & 1 == 1
    }

    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        assert!(
            r < self.rows && c < self.cols,
            "entry ({r},{c}) out of range"
        );
        let mask = 1u64 << (c % BITS);
        let block = &mut self.data[r * self.stride + c / BITS];
        if value {
            *block |= mask;
        } else {
            *block &= !mask;
        }
    }

    /// Packed blocks of row `r`.
    pub fn row_blocks(&self, r: usize) -> &[u64] {
        &self.data[r * self.stride..(r + 1) * self.stride]
    }

    pub fn row(&self, r: usize) -> BitWord {
        BitWord::from_blocks(self.cols, self.row_blocks(r).to_vec())
    }

    pub fn row_weight(&self, r: usize) -> usize {
        self.row_blocks(r)
            .iter()
            .map(|b| b.count_ones() as usize)
            .sum()
    }

    pub fn column_is_zero(&self, c: usize) -> bool {
        (0..self.rows).all(|r| !self.get(r, c))
    }

    pub fn count_ones(&self) -> usize {
        self.data.iter().map(|b| b.count_ones() as usize).sum()
    }

    /// True when `w` satisfies every row: each row has even overlap with `w`.
    pub fn annihilates(&self, w: &BitWord) -> Result<bool> {
        if w.len() != self.cols {
            return Err(Error::Dimension {
                expected: self.cols,
                actual: w.len(),
            });
        }
        Ok((0..self.rows).all(|r| {
            self.row_blocks(r)
                .iter()
                .zip(w.blocks())
                .map(|(a, b)| (a & b).count_ones())
                .sum::<u32>()
                % 2
                == 0
        }))
    }

    fn xor_rows(&mut self, dst: usize, src: usize) {
        let s = self.stride;
        let (d, sr) = (dst * s, src * s);
        for k in 0..s {
            let v = self.data[sr + k];
            self.data[d + k] ^= v;
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let s = self.stride;
        for k in 0..s {
            self.data.swap(a * s + k, b * s + k);
        }
    }

    /// Reduced row echelon form and its pivot columns. Zero rows sink to the
    /// bottom; `pivots.len()` is the rank.
    pub fn rref(&self) -> (BitMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut next = 0;
        for c in 0..m.cols {
            if next == m.rows {
                break;
            }
            let Some(p) = (next..m.rows).find(|&r| m.get(r, c)) else {
                continue;
            };
            m.swap_rows(next, p);
            for r in 0..m.rows {
                if r != next && m.get(r, c) {
                    m.xor_rows(r, next);
                }
            }
            pivots.push(c);
            next += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// A basis of `{w : self * w = 0}`, one vector per free column in
    /// ascending column order.
    pub fn nullspace_basis(&self) -> Vec<BitWord> {
        let (reduced, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut w = BitWord::zeros(self.cols).expect("cols >= 1");
                w.set(f, true);
                for (r, &pc) in pivots.iter().enumerate() {
                    if reduced.get(r, f) {
                        w.set(pc, true);
                    }
                }
                w
            })
            .collect()
    }

    /// Every word of the nullspace, the all-zeros word first. Refuses when the
    /// nullspace dimension exceeds `cap`.
    pub fn nullspace_enumerate_capped(&self, cap: usize) -> Result<Vec<BitWord>> {
        let basis = self.nullspace_basis();
        let dim = basis.len();
        if dim > cap {
            return Err(Error::SizeCap {
                what: "nullspace dimension",
                size: dim as u128,
                cap: cap as u128,
            });
        }
        let zero = BitWord::zeros(self.cols).expect("cols >= 1");
        Ok((0u64..1 << dim)
            .map(|mask| {
                let mut w = zero.clone();
                for (i, b) in basis.iter().enumerate() {
                    if mask >> i & 1 == 1 {
                        w.xor_assign(b);
                    }
                }
                w
            })
            .collect())
    }

    pub fn nullspace_enumerate(&self) -> Result<Vec<BitWord>> {
        self.nullspace_enumerate_capped(DEFAULT_ENUMERATION_CAP)
    }

    /// Text form: `"m n"` then `m` lines of `n` space-separated digits, each
    /// line newline-terminated.
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.rows, self.cols);
        for r in 0..self.rows {
            let line: Vec<&str> = (0..self.cols)
                .map(|c| if self.get(r, c) { "1" } else { "0" })
                .collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn parse_text(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
        let (hl, header) = lines
            .by_ref()
            .find(|(_, l)| !l.trim().is_empty())
            .ok_or_else(|| Error::parse(1, "missing \"m n\" header"))?;
        let dims: Vec<&str> = header.split_whitespace().collect();
        let [m, n] = dims[..] else {
            return Err(Error::parse(hl, "header must be \"m n\""));
        };
        let parse_dim = |s: &str| {
            s.parse::<usize>()
                .map_err(|_| Error::parse(hl, format!("bad dimension {s:?}")))
        };
        let (m, n) = (parse_dim(m)?, parse_dim(n)?);
        let mut out = BitMatrix::zeros(m, n).map_err(|e| Error::parse(hl, e.to_string()))?;
        let mut r = 0;
        for (ln, line) in lines {
            if line.trim().is_empty() {
                continue;
            }
            if r == m {
                return Err(Error::parse(ln, format!("more than {m} rows")));
            }
            let cells: Vec<&str> = line.split_whitespace().collect();
            if cells.len() != n {
                return Err(Error::parse(
                    ln,
                    format!("expected {n} entries, found {}", cells.len()),
                ));
            }
            for (c, cell) in cells.iter().enumerate() {
                match *cell {
                    "0" => {}
                    "1" => out.set(r, c, true),
                    other => {
                        return Err(Error::parse(ln, format!("entry {other:?} is not 0 or 1")))
                    }
                }
            }
            r += 1;
        }
        if r != m {
            return Err(Error::parse(
                text.lines().count().max(1),
                format!("expected {m} rows, found {r}"),
            ));
        }
        Ok(out)
    }
}

impl fmt::Display for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl FromStr for BitMatrix {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        BitMatrix::parse_text(s)
    }
}

/// Row rank over GF(2).
pub fn rank_gf2(m: &BitMatrix) -> usize {
    m.rank()
}

/// All words `w` with `m * w = 0`, under the default enumeration cap.
pub fn nullspace_enumerate(m: &BitMatrix) -> Result<Vec<BitWord>> {
    m.nullspace_enumerate()
}

#[derive(Serialize, Deserialize)]
struct MatrixRepr {
    rows: usize,
    cols: usize,
    data: Vec<String>,
}

impl From<BitMatrix> for MatrixRepr {
    fn from(m: BitMatrix) -> Self {
        MatrixRepr {
            rows: m.rows,
            cols: m.cols,
            data: (0..m.rows).map(|r| m.row(r).to_string()).collect(),
        }
    }
}

impl TryFrom<MatrixRepr> for BitMatrix {
    type Error = Error;

    fn try_from(repr: MatrixRepr) -> Result<Self> {
        if repr.data.len() != repr.rows {
            return Err(Error::Dimension {
                expected: repr.rows,
                actual: repr.data.len(),
            });
        }
        let rows = repr
            .data
            .iter()
            .map(|s| {
                s.chars()
                    .map(|c| match c {
                        '0' => Ok(0),
                        '1' => Ok(1),
                        _ => Err(Error::Domain(format!("unexpected character {c:?}"))),
                    })
                    .collect::<Result<Vec<u8>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        BitMatrix::from_rows(repr.cols, &rows)
    }
}
