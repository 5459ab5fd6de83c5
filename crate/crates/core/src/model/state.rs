use std::fmt;
use std::str::FromStr;

use crate::error::{CbnError, Result};

const WORD: usize = 64;

/// A network state: one bit per node, packed into 64-bit words.
///
/// Bit strings are written with node 0 as the leftmost character.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CbnState {
    len: usize,
    words: Vec<u64>,
}

impl CbnState {
    pub fn zeros(len: usize) -> Self {
        CbnState {
            len,
            words: vec![0; len.div_ceil(WORD)],
        }
    }

    pub fn ones(len: usize) -> Self {
        let mut s = CbnState {
            len,
            words: vec![u64::MAX; len.div_ceil(WORD)],
        };
        s.clear_tail();
        s
    }

    pub fn from_bits(bits: &[bool]) -> Self {
        let mut s = CbnState::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            s.set(i, b);
        }
        s
    }

    /// Builds a state from an integer code where bit `i` is node `i`.
    pub fn from_index(len: usize, index: u64) -> Self {
        assert!(len <= WORD, "index encoding supports at most 64 nodes");
        let mut s = CbnState::zeros(len);
        if len > 0 {
            s.words[0] = index;
            s.clear_tail();
        }
        s
    }

    /// Integer code of the state (bit `i` is node `i`). Requires `len <= 64`.
    pub fn to_index(&self) -> u64 {
        assert!(self.len <= WORD, "index encoding supports at most 64 nodes");
        self.words.first().copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit {i} out of range for {} bits", self.len);
        self.words[i / WORD] >> (i % WORD) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit {i} out of range for {} bits", self.len);
        let mask = 1u64 << (i % WORD);
        if value {
            self.words[i / WORD] |= mask;
        } else {
            self.words[i / WORD] &= !mask;
        }
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_all_ones(&self) -> bool {
        self.count_ones() == self.len
    }

    pub fn is_all_zeros(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }

    pub fn to_bits(&self) -> Vec<bool> {
        self.iter().collect()
    }

    /// Componentwise `self <= other`.
    pub fn le(&self, other: &CbnState) -> bool {
        self.len == other.len
            && self
                .words
                .iter()
                .zip(&other.words)
                .all(|(a, b)| a & !b == 0)
    }

    pub(crate) fn check_len(&self, expected: usize) -> Result<()> {
        if self.len == expected {
            Ok(())
        } else {
            Err(CbnError::Dimension {
                expected,
                got: self.len,
            })
        }
    }

    fn clear_tail(&mut self) {
        let rem = self.len % WORD;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }
}

impl fmt::Display for CbnState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.iter() {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for CbnState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CbnState({self})")
    }
}

impl FromStr for CbnState {
    type Err = CbnError;

    fn from_str(s: &str) -> Result<Self> {
        parse_bits(s).map(|bits| CbnState::from_bits(&bits))
    }
}

/// Parses a `0`/`1` string, leftmost character first.
pub fn parse_bits(s: &str) -> Result<Vec<bool>> {
    s.trim()
        .chars()
        .map(|c| match c {
            '0' => Ok(false),
            '1' => Ok(true),
            other => Err(CbnError::Validation(format!(
                "invalid bit character {other:?}"
            ))),
        })
        .collect()
}

pub fn format_bits(bits: &[bool]) -> String {
    bits.iter().map(|&b| if b { '1' } else { '0' }).collect()
}
