//! Sorting sequences and the derived pile profile.
//!
//! A sorting sequence records the outcome of weighing `p` equal piles against
//! each other: the heaviest piles get rank 0, the next heaviest rank 1, and
//! so on. Each entry equals the previous one or exceeds it by one, so a
//! sequence of length `p` is fully described by its `p - 1` step bits.
//! Indexing sequences lexicographically gives exactly the binary value of
//! those step bits.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;

use crate::error::{Error, Result};

/// Default upper limit on the pile count accepted by sweeping commands.
pub const DEFAULT_PILE_CAP: usize = 24;

/// Largest pile count whose sequence indices fit in a `u64`.
pub const MAX_INDEXABLE_PILES: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SortingSequence {
    entries: Vec<u32>,
}

impl SortingSequence {
    pub fn new(entries: Vec<u32>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::NoPiles);
        }
        if entries[0] != 0 {
            return Err(Error::InvalidSequence(format!(
                "first entry must be 0, got {}",
                entries[0]
            )));
        }
        for (j, w) in entries.windows(2).enumerate() {
            if w[1] != w[0] && w[1] != w[0] + 1 {
                return Err(Error::InvalidSequence(format!(
                    "entry {} jumps from {} to {}",
                    j + 1,
                    w[0],
                    w[1]
                )));
            }
        }
        Ok(Self { entries })
    }

    /// The all-zero sequence: every pile weighs the same.
    pub fn trivial(piles: usize) -> Result<Self> {
        if piles == 0 {
            return Err(Error::NoPiles);
        }
        Ok(Self {
            entries: vec![0; piles],
        })
    }

    /// The `index`-th sequence of length `piles` in lexicographic order.
    pub fn from_index(piles: usize, index: u64) -> Result<Self> {
        if piles == 0 {
            return Err(Error::NoPiles);
        }
        if piles > MAX_INDEXABLE_PILES {
            return Err(Error::PileCapExceeded {
                piles,
                cap: MAX_INDEXABLE_PILES,
            });
        }
        let bits = piles - 1;
        if index >> bits != 0 {
            return Err(Error::IndexOutOfRange { piles, index });
        }
        let mut entries = Vec::with_capacity(piles);
        entries.push(0);
        for j in (0..bits).rev() {
            let step = ((index >> j) & 1) as u32;
            let last = *entries.last().unwrap();
            entries.push(last + step);
        }
        Ok(Self { entries })
    }

    /// Builds the sequence whose step bits are `bits` (a string over `0`/`1`).
    pub fn from_binary(bits: &str) -> Result<Self> {
        let mut entries = vec![0u32];
        for ch in bits.chars() {
            let last = *entries.last().unwrap();
            match ch {
                '0' => entries.push(last),
                '1' => entries.push(last + 1),
                _ => {
                    return Err(Error::Parse {
                        input: bits.to_string(),
                        reason: format!("unexpected character {ch:?} in binary representation"),
                    })
                }
            }
        }
        Ok(Self { entries })
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    /// Number of piles `p`.
    pub fn piles(&self) -> usize {
        self.entries.len()
    }

    /// Number of distinct weight classes `r`.
    pub fn classes(&self) -> usize {
        *self.entries.last().unwrap() as usize + 1
    }

    pub fn binary(&self) -> BinaryRepresentation {
        let bits = self
            .entries
            .windows(2)
            .map(|w| if w[1] > w[0] { '1' } else { '0' })
            .collect();
        BinaryRepresentation(bits)
    }

    /// Lexicographic index; `None` when it does not fit in 64 bits.
    pub fn index(&self) -> Option<u64> {
        if self.piles() > MAX_INDEXABLE_PILES {
            return None;
        }
        Some(
            self.entries
                .windows(2)
                .fold(0u64, |acc, w| (acc << 1) | u64::from(w[1] > w[0])),
        )
    }

    /// The dual sequence, whose step bits are these bits reversed.
    pub fn reversed(&self) -> Self {
        let mut entries = Vec::with_capacity(self.entries.len());
        entries.push(0);
        for w in self.entries.windows(2).rev() {
            let last = *entries.last().unwrap();
            entries.push(last + (w[1] - w[0]));
        }
        Self { entries }
    }

    pub fn profile(&self) -> PileProfile {
        let mut parts = vec![0u64; self.classes()];
        for &e in &self.entries {
            parts[e as usize] += 1;
        }
        PileProfile::from_parts(parts)
    }
}

impl fmt::Display for SortingSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (j, e) in self.entries.iter().enumerate() {
            if j > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str(")")
    }
}

impl FromStr for SortingSequence {
    type Err = Error;

    /// Accepts `(0,0,1,2)`; the parentheses and surrounding spaces are optional.
    fn from_str(s: &str) -> Result<Self> {
        let parse_err = |reason: String| Error::Parse {
            input: s.to_string(),
            reason,
        };
        let trimmed = s.trim();
        let inner = trimmed
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .unwrap_or(trimmed);
        if inner.trim().is_empty() {
            return Err(Error::NoPiles);
        }
        let entries = inner
            .split(',')
            .map(|tok| {
                tok.trim()
                    .parse::<u32>()
                    .map_err(|e| parse_err(format!("{tok:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(entries)
    }
}

/// The `p - 1` step bits of a sorting sequence, most significant first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BinaryRepresentation(String);

impl BinaryRepresentation {
    /// `index` written in binary, left-padded with zeros to `width` digits.
    pub fn from_index(width: usize, index: u64) -> Self {
        if width == 0 {
            return Self(String::new());
        }
        Self(format!("{index:0width$b}"))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn reversed(&self) -> Self {
        Self(self.0.chars().rev().collect())
    }
}

impl fmt::Display for BinaryRepresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Class sizes and the constants every other module derives from them.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PileProfile {
    parts: Vec<u64>,
    gcd: u64,
    piles: u64,
    f_min: u64,
    f_min_reverse: u64,
}

impl PileProfile {
    /// Profile from class sizes `(p_1, ..., p_r)`; every part must be positive.
    pub fn from_parts(parts: Vec<u64>) -> Self {
        assert!(!parts.is_empty() && parts.iter().all(|&x| x > 0));
        let gcd = parts.iter().fold(0u64, |g, &x| g.gcd(&x));
        let piles = parts.iter().sum();
        let f_min = weighted_rank_sum(parts.iter().copied());
        let f_min_reverse = weighted_rank_sum(parts.iter().rev().copied());
        Self {
            parts,
            gcd,
            piles,
            f_min,
            f_min_reverse,
        }
    }

    /// `(p_1, ..., p_r)`.
    pub fn parts(&self) -> &[u64] {
        &self.parts
    }

    /// Number of weight classes `r`.
    pub fn classes(&self) -> usize {
        self.parts.len()
    }

    /// `c = gcd(p_1, ..., p_r)`.
    pub fn gcd(&self) -> u64 {
        self.gcd
    }

    pub fn piles(&self) -> u64 {
        self.piles
    }

    pub fn first(&self) -> u64 {
        self.parts[0]
    }

    pub fn last(&self) -> u64 {
        *self.parts.last().unwrap()
    }

    /// Smallest weighted total over all general solutions: `sum (i-1) p_i`.
    pub fn f_min(&self) -> u64 {
        self.f_min
    }

    /// `f_min` of the reversed sequence.
    pub fn f_min_reverse(&self) -> u64 {
        self.f_min_reverse
    }

    pub fn reversed(&self) -> Self {
        Self {
            parts: self.parts.iter().rev().copied().collect(),
            gcd: self.gcd,
            piles: self.piles,
            f_min: self.f_min_reverse,
            f_min_reverse: self.f_min,
        }
    }

    /// Coefficients `a_i = p_{r-i+1} + ... + p_r` of the shifted equation.
    pub fn forward_coefficients(&self) -> Vec<u64> {
        self.parts
            .iter()
            .rev()
            .scan(0u64, |acc, &x| {
                *acc += x;
                Some(*acc)
            })
            .collect()
    }

    /// Coefficients `a_i = p_1 + ... + p_i` of the dual equation.
    pub fn dual_coefficients(&self) -> Vec<u64> {
        self.reversed().forward_coefficients()
    }

    /// Spread bound after redistribution: `(2p - p_1 - p_r) / c`.
    pub fn spread_bound(&self) -> u64 {
        (2 * self.piles - self.first() - self.last()) / self.gcd
    }

    /// `(2p^2 - p_1 p - p_r p) / c`.
    pub fn lift_margin(&self) -> u64 {
        self.piles * self.spread_bound()
    }

    /// Pile size from which general solutions in both directions imply
    /// height-bounded ones: `(4p - 2p_1 - 2p_r)/c + 1 - r`.
    pub fn range_threshold(&self) -> i64 {
        2 * self.spread_bound() as i64 + 1 - self.classes() as i64
    }
}

fn weighted_rank_sum(parts: impl Iterator<Item = u64>) -> u64 {
    parts.enumerate().map(|(i, x)| i as u64 * x).sum()
}

/// Number of sorting sequences of length `piles`: `2^(piles-1)`.
pub fn count_sequences(piles: usize) -> Result<u64> {
    if piles == 0 {
        return Err(Error::NoPiles);
    }
    if piles > MAX_INDEXABLE_PILES {
        return Err(Error::PileCapExceeded {
            piles,
            cap: MAX_INDEXABLE_PILES,
        });
    }
    Ok(1u64 << (piles - 1))
}

/// All sequences of length `piles`, in lexicographic order.
pub fn all_sequences(piles: usize) -> Result<impl Iterator<Item = SortingSequence>> {
    let n = count_sequences(piles)?;
    Ok((0..n).map(move |i| SortingSequence::from_index(piles, i).expect("index in range")))
}

/// Check `piles` against a configured cap.
pub fn check_pile_cap(piles: usize, cap: usize) -> Result<()> {
    if piles > cap {
        return Err(Error::PileCapExceeded { piles, cap });
    }
    Ok(())
}

/// A sorting sequence together with the pile size `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeighingInstance {
    sequence: SortingSequence,
    profile: PileProfile,
    k: u64,
}

impl WeighingInstance {
    pub fn new(sequence: SortingSequence, k: u64) -> Result<Self> {
        if k == 0 {
            return Err(Error::EmptyPiles);
        }
        let profile = sequence.profile();
        Ok(Self {
            sequence,
            profile,
            k,
        })
    }

    pub fn sequence(&self) -> &SortingSequence {
        &self.sequence
    }

    pub fn profile(&self) -> &PileProfile {
        &self.profile
    }

    /// Coins per pile.
    pub fn k(&self) -> u64 {
        self.k
    }

    /// Total coins `t = p k`.
    pub fn total_coins(&self) -> u64 {
        self.profile.piles() * self.k
    }

    pub fn reversed(&self) -> Self {
        Self {
            sequence: self.sequence.reversed(),
            profile: self.profile.reversed(),
            k: self.k,
        }
    }
}
