//! Binary necklaces: bit strings up to rotation.

use std::fmt;
use std::str::FromStr;

use crate::error::{CbnError, Result};
use crate::model::{format_bits, parse_bits};

/// Largest length accepted by [`enumerate_necklaces`].
pub const MAX_ENUMERATION_LENGTH: usize = 24;

/// A rotation class of bit strings, stored as its lexicographically least
/// rotation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Necklace {
    bits: Vec<bool>,
}

impl Necklace {
    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn is_all_ones(&self) -> bool {
        self.bits.iter().all(|&b| b)
    }

    /// Smallest rotation period of the string.
    pub fn period(&self) -> usize {
        let p = self.bits.len();
        (1..=p)
            .find(|&d| {
                p.is_multiple_of(d) && (0..p).all(|i| self.bits[i] == self.bits[(i + d) % p])
            })
            .unwrap_or(p)
    }
}

impl fmt::Display for Necklace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_bits(&self.bits))
    }
}

impl FromStr for Necklace {
    type Err = CbnError;

    fn from_str(s: &str) -> Result<Self> {
        necklace_canonical(&parse_bits(s)?)
    }
}

/// Canonical representative: the least rotation, found with Booth's algorithm.
pub fn necklace_canonical(bits: &[bool]) -> Result<Necklace> {
    if bits.is_empty() {
        return Err(CbnError::Spec("a necklace needs at least one bead".into()));
    }
    let start = least_rotation(bits);
    let bits = bits[start..]
        .iter()
        .chain(&bits[..start])
        .copied()
        .collect();
    Ok(Necklace { bits })
}

/// Booth's least-rotation algorithm; returns the starting offset.
fn least_rotation(s: &[bool]) -> usize {
    let n = s.len();
    let d: Vec<bool> = s.iter().chain(s).copied().collect();
    let mut fail: Vec<isize> = vec![-1; 2 * n];
    let mut k = 0usize;
    for j in 1..2 * n {
        let sj = d[j];
        let mut i = fail[j - k - 1];
        while i != -1 && sj != d[k + (i + 1) as usize] {
            if !sj && d[k + (i + 1) as usize] {
                k = j - (i + 1) as usize;
            }
            i = fail[i as usize];
        }
        if sj != d[k + (i + 1) as usize] {
            // i == -1
            if !sj && d[k] {
                k = j;
            }
            fail[j - k] = -1;
        } else {
            fail[j - k] = i + 1;
        }
    }
    k
}

/// All necklaces of length `p`, in increasing order.
pub fn enumerate_necklaces(p: usize) -> Result<Vec<Necklace>> {
    if p == 0 {
        return Err(CbnError::Spec("necklace length must be positive".into()));
    }
    if p > MAX_ENUMERATION_LENGTH {
        return Err(CbnError::Budget(format!(
            "necklace length {p} exceeds the enumeration limit {MAX_ENUMERATION_LENGTH}"
        )));
    }
    let mut out = Vec::new();
    for code in 0u64..1 << p {
        // most significant bit first so the numeric order is lexicographic
        let bits: Vec<bool> = (0..p).rev().map(|i| code >> i & 1 == 1).collect();
        let canon = necklace_canonical(&bits)?;
        if canon.bits == bits {
            out.push(canon);
        }
    }
    Ok(out)
}

/// Number of binary necklaces of length `p`: `(1/p) * sum_{d | p} phi(d) 2^(p/d)`.
pub fn necklace_count(p: usize) -> u64 {
    assert!(p > 0 && p < 64);
    let total: u64 = (1..=p)
        .filter(|&d| p.is_multiple_of(d))
        .map(|d| euler_phi(d) * (1u64 << (p / d)))
        .sum();
    total / p as u64
}

fn euler_phi(n: usize) -> u64 {
    (1..=n).filter(|&k| crate::graph::gcd(k, n) == 1).count() as u64
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn brute_least_rotation(bits: &[bool]) -> Vec<bool> {
        let n = bits.len();
        (0..n)
            .map(|r| (0..n).map(|i| bits[(i + r) % n]).collect::<Vec<_>>())
            .min()
            .unwrap()
    }

    #[test]
    fn canonical_examples() {
        assert_eq!("10".parse::<Necklace>().unwrap().to_string(), "01");
        assert_eq!("0110".parse::<Necklace>().unwrap().to_string(), "0011");
        assert_eq!("1111".parse::<Necklace>().unwrap().to_string(), "1111");
        assert!(matches!(necklace_canonical(&[]), Err(CbnError::Spec(_))));
    }

    #[test]
    fn enumeration_examples() {
        assert_eq!(enumerate_necklaces(4).unwrap().len(), 6);
        let p1: Vec<String> = enumerate_necklaces(1)
            .unwrap()
            .iter()
            .map(|n| n.to_string())
            .collect();
        assert_eq!(p1, ["0", "1"]);
        let p3: Vec<String> = enumerate_necklaces(3)
            .unwrap()
            .iter()
            .map(|n| n.to_string())
            .collect();
        assert_eq!(p3, ["000", "001", "011", "111"]);
        assert!(enumerate_necklaces(0).is_err());
    }

    #[test]
    fn count_formula_matches_enumeration() {
        for p in 1..=14 {
            assert_eq!(
                enumerate_necklaces(p).unwrap().len() as u64,
                necklace_count(p),
                "p = {p}"
            );
        }
        // OEIS A000031
        let known = [2u64, 3, 4, 6, 8, 14, 20, 36, 60, 108, 188, 352];
        for (i, &c) in known.iter().enumerate() {
            assert_eq!(necklace_count(i + 1), c);
        }
    }

    #[test]
    fn period_of_symmetric_strings() {
        assert_eq!("0101".parse::<Necklace>().unwrap().period(), 2);
        assert_eq!("0011".parse::<Necklace>().unwrap().period(), 4);
        assert_eq!("1".parse::<Necklace>().unwrap().period(), 1);
    }

    proptest! {
        #[test]
        fn booth_matches_brute_force(bits in proptest::collection::vec(any::<bool>(), 1..40)) {
            let canon = necklace_canonical(&bits).unwrap();
            prop_assert_eq!(canon.bits(), &brute_least_rotation(&bits)[..]);
            prop_assert_eq!(necklace_canonical(canon.bits()).unwrap(), canon.clone());
        }

        #[test]
        fn rotations_share_a_necklace(bits in proptest::collection::vec(any::<bool>(), 1..30), r in 0usize..30) {
            let r = r % bits.len();
            let rotated: Vec<bool> = bits[r..].iter().chain(&bits[..r]).copied().collect();
            prop_assert_eq!(necklace_canonical(&bits).unwrap(), necklace_canonical(&rotated).unwrap());
        }
    }
}
