//! Brute-force ground truth from per-pile fake counts.
//!
//! Nothing here consults the solver's search or any Frobenius machinery for
//! height-bounded facts: configurations are generated, sorted and ranked
//! exactly as the scale would rank them. Because the ranking only depends on
//! the multiset of counts, the table walks non-decreasing count vectors, one
//! representative per multiset.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::sequence::{all_sequences, SortingSequence, WeighingInstance};
use crate::solver::{self, TotalSet};

/// Default cap on enumerated states.
pub const DEFAULT_MAX_STATES: u128 = 1_000_000_000;

/// Largest pile count accepted by [`oracle_exceptions`].
pub const MAX_EXCEPTION_PILES: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleLimits {
    pub max_states: u128,
}

impl Default for OracleLimits {
    fn default() -> Self {
        Self {
            max_states: DEFAULT_MAX_STATES,
        }
    }
}

/// Fake coins in each pile, each in `[0, k]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PileConfiguration {
    counts: Vec<u64>,
    k: u64,
}

impl PileConfiguration {
    pub fn new(counts: Vec<u64>, k: u64) -> Result<Self> {
        if counts.is_empty() {
            return Err(Error::NoPiles);
        }
        if let Some(&bad) = counts.iter().find(|&&g| g > k) {
            return Err(Error::FakeCountOutOfRange { f: bad, max: k });
        }
        Ok(Self { counts, k })
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn k(&self) -> u64 {
        self.k
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }
}

/// Rank piles by weight: fewest fakes gets 0, each strictly larger count the next rank.
pub fn classify(config: &PileConfiguration) -> SortingSequence {
    let mut sorted = config.counts.clone();
    sorted.sort_unstable();
    let mut entries = Vec::with_capacity(sorted.len());
    entries.push(0u32);
    for w in sorted.windows(2) {
        let last = *entries.last().unwrap();
        entries.push(last + u32::from(w[1] > w[0]));
    }
    SortingSequence::new(entries).expect("ranks step by 0 or 1")
}

/// `C(n, r)` in `u128`, saturating.
fn binomial_u128(n: u128, r: u128) -> u128 {
    let r = r.min(n - r);
    let mut acc: u128 = 1;
    for i in 0..r {
        acc = match acc.checked_mul(n - i) {
            Some(v) => v / (i + 1),
            None => return u128::MAX,
        };
    }
    acc
}

/// Number of multisets the table visits for `(piles, k)`.
pub fn state_count(piles: usize, k: u64) -> u128 {
    binomial_u128(piles as u128 + k as u128, piles as u128)
}

fn check_guard(piles: usize, k: u64, limits: OracleLimits) -> Result<()> {
    let states = state_count(piles, k);
    if states > limits.max_states {
        return Err(Error::GuardExceeded {
            states,
            limit: limits.max_states,
        });
    }
    Ok(())
}

#[derive(Clone, Debug)]
struct Cell {
    possible: TotalSet,
    /// totals reached by a configuration with a fake coin in every pile
    fake_everywhere: TotalSet,
    /// totals reached by a configuration with a real coin in every pile
    real_everywhere: TotalSet,
}

/// Every sorting outcome reachable with `piles` piles of `k` coins.
#[derive(Clone, Debug)]
pub struct OracleTable {
    piles: usize,
    k: u64,
    cells: BTreeMap<u64, Cell>,
}

impl OracleTable {
    pub fn build(piles: usize, k: u64, limits: OracleLimits) -> Result<Self> {
        if piles == 0 {
            return Err(Error::NoPiles);
        }
        if piles > crate::sequence::MAX_INDEXABLE_PILES {
            return Err(Error::PileCapExceeded {
                piles,
                cap: crate::sequence::MAX_INDEXABLE_PILES,
            });
        }
        check_guard(piles, k, limits)?;
        let mut table = Self {
            piles,
            k,
            cells: BTreeMap::new(),
        };
        let mut counts = Vec::with_capacity(piles);
        table.walk(&mut counts, 0, 0);
        Ok(table)
    }

    fn walk(&mut self, counts: &mut Vec<u64>, bits: u64, total: u64) {
        if counts.len() == self.piles {
            let limit = self.piles as u64 * self.k;
            let cell = self.cells.entry(bits).or_insert_with(|| Cell {
                possible: TotalSet::empty(limit),
                fake_everywhere: TotalSet::empty(limit),
                real_everywhere: TotalSet::empty(limit),
            });
            cell.possible.insert(total);
            if counts[0] >= 1 {
                cell.fake_everywhere.insert(total);
            }
            if counts[self.piles - 1] < self.k {
                cell.real_everywhere.insert(total);
            }
            return;
        }
        let lo = counts.last().copied();
        for v in lo.unwrap_or(0)..=self.k {
            let bits = match lo {
                None => bits,
                Some(prev) => (bits << 1) | u64::from(v > prev),
            };
            counts.push(v);
            self.walk(counts, bits, total + v);
            counts.pop();
        }
    }

    pub fn piles(&self) -> usize {
        self.piles
    }

    pub fn k(&self) -> u64 {
        self.k
    }

    fn cell(&self, seq: &SortingSequence) -> Option<&Cell> {
        if seq.piles() != self.piles {
            return None;
        }
        self.cells.get(&seq.index()?)
    }

    pub fn is_possible(&self, seq: &SortingSequence, f: u64) -> bool {
        self.cell(seq).is_some_and(|c| c.possible.contains(f))
    }

    pub fn possible_f(&self, seq: &SortingSequence) -> Vec<u64> {
        self.cell(seq)
            .map(|c| c.possible.to_vec())
            .unwrap_or_default()
    }

    pub fn is_discreet(&self, seq: &SortingSequence, f: u64) -> bool {
        self.cell(seq)
            .is_some_and(|c| c.fake_everywhere.contains(f) && c.real_everywhere.contains(f))
    }

    pub fn discreet_f(&self, seq: &SortingSequence) -> Vec<u64> {
        self.possible_f(seq)
            .into_iter()
            .filter(|&f| self.is_discreet(seq, f))
            .collect()
    }
}

/// `{ sum g : classify(g) = sequence }` over all configurations.
pub fn oracle_possible_f(inst: &WeighingInstance, limits: OracleLimits) -> Result<Vec<u64>> {
    let table = OracleTable::build(inst.sequence().piles(), inst.k(), limits)?;
    Ok(table.possible_f(inst.sequence()))
}

/// Whether some configuration for `f` has a fake coin in every pile and some
/// (possibly other) configuration has a real coin in every pile.
pub fn oracle_is_discreet(inst: &WeighingInstance, f: u64, limits: OracleLimits) -> Result<bool> {
    let table = OracleTable::build(inst.sequence().piles(), inst.k(), limits)?;
    Ok(table.is_discreet(inst.sequence(), f))
}

/// Fake counts for which general solutions exist in both directions but no
/// configuration realises the sequence.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct ExceptionRow {
    pub piles: usize,
    pub k: u64,
    pub sequence: SortingSequence,
    pub values: Vec<u64>,
}

/// Exceptional `(p, k, sequence, f)` for `p <= max_piles` and `k` below the
/// guarantee `(4p - 2p_1 - 2p_r)/c + 1 - r`.
pub fn oracle_exceptions(max_piles: usize, limits: OracleLimits) -> Result<Vec<ExceptionRow>> {
    if max_piles > MAX_EXCEPTION_PILES {
        return Err(Error::PileCapExceeded {
            piles: max_piles,
            cap: MAX_EXCEPTION_PILES,
        });
    }
    let mut cells = Vec::new();
    for piles in 1..=max_piles {
        let top = all_sequences(piles)?
            .map(|s| s.profile().range_threshold())
            .max()
            .unwrap_or(0);
        for k in 1..top.max(1) as u64 {
            check_guard(piles, k, limits)?;
            cells.push((piles, k));
        }
    }
    let per_cell: Vec<Vec<ExceptionRow>> = cells
        .par_iter()
        .map(|&(piles, k)| exceptions_in_cell(piles, k, limits))
        .collect::<Result<_>>()?;
    let mut rows: Vec<ExceptionRow> = per_cell.into_iter().flatten().collect();
    rows.sort();
    Ok(rows)
}

fn exceptions_in_cell(piles: usize, k: u64, limits: OracleLimits) -> Result<Vec<ExceptionRow>> {
    let table = OracleTable::build(piles, k, limits)?;
    let total = piles as u64 * k;
    let mut rows = Vec::new();
    for seq in all_sequences(piles)? {
        let profile = seq.profile();
        if k as i64 >= profile.range_threshold() {
            continue;
        }
        let forward = solver::general_totals(&profile, total);
        let backward = solver::general_totals(&profile.reversed(), total);
        let values: Vec<u64> = (0..=total)
            .filter(|&f| forward.contains(f) && backward.contains(total - f))
            .filter(|&f| !table.is_possible(&seq, f))
            .collect();
        if !values.is_empty() {
            rows.push(ExceptionRow {
                piles,
                k,
                sequence: seq,
                values,
            });
        }
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(counts: &[u64], k: u64) -> PileConfiguration {
        PileConfiguration::new(counts.to_vec(), k).unwrap()
    }

    fn inst(s: &str, k: u64) -> WeighingInstance {
        WeighingInstance::new(s.parse().unwrap(), k).unwrap()
    }

    #[test]
    fn classify_examples() {
        assert_eq!(classify(&cfg(&[1, 1, 0, 2], 2)).to_string(), "(0,1,1,2)");
        assert_eq!(classify(&cfg(&[0, 0, 0, 0], 1)).to_string(), "(0,0,0,0)");
        assert_eq!(classify(&cfg(&[0, 0, 1, 2], 2)).to_string(), "(0,0,1,2)");
        assert!(PileConfiguration::new(vec![3], 2).is_err());
    }

    #[test]
    fn possible_examples() {
        let lim = OracleLimits::default();
        assert_eq!(
            oracle_possible_f(&inst("(0,0,0,1,1)", 5), lim).unwrap(),
            vec![2, 4, 6, 7, 8, 9, 10, 11, 12, 13, 14, 16, 17, 19, 22]
        );
        assert_eq!(
            oracle_possible_f(&inst("(0,0,1,2,3)", 5), lim).unwrap(),
            vec![6, 7, 8, 9, 10, 11, 12, 13, 14, 16]
        );
        assert_eq!(
            oracle_possible_f(&inst("(0,0,0,0,0)", 1), lim).unwrap(),
            vec![0, 5]
        );
    }

    #[test]
    fn discreet_examples() {
        let lim = OracleLimits::default();
        assert!(oracle_is_discreet(&inst("(0,1,1,2)", 5), 10, lim).unwrap());
        assert!(!oracle_is_discreet(&inst("(0,0,0,1,2)", 5), 3, lim).unwrap());
        assert!(!oracle_is_discreet(&inst("(0,1,2,3,4)", 5), 10, lim).unwrap());
    }

    #[test]
    fn guard_refuses_large_sweeps() {
        let tight = OracleLimits { max_states: 100 };
        assert!(matches!(
            oracle_possible_f(&inst("(0,0,0,1,1)", 5), tight),
            Err(Error::GuardExceeded {
                states: 252,
                limit: 100
            })
        ));
        assert!(oracle_exceptions(9, OracleLimits::default()).is_err());
    }

    #[test]
    fn exception_examples() {
        let rows = oracle_exceptions(4, OracleLimits::default()).unwrap();
        assert_eq!(rows.len(), 1);
        assert_eq!((rows[0].piles, rows[0].k), (4, 3));
        assert_eq!(rows[0].sequence.to_string(), "(0,1,1,2)");
        assert_eq!(rows[0].values, vec![6]);
        assert!(oracle_exceptions(3, OracleLimits::default())
            .unwrap()
            .is_empty());
        assert!(oracle_exceptions(2, OracleLimits::default())
            .unwrap()
            .is_empty());
    }

    #[test]
    fn sorted_walk_matches_full_product() {
        // every (k+1)^p vector, classified directly
        #[derive(Default)]
        struct Seen {
            possible: Vec<u64>,
            fake: Vec<u64>,
            real: Vec<u64>,
        }
        for piles in 1..=4usize {
            for k in 1..=4u64 {
                let table = OracleTable::build(piles, k, OracleLimits::default()).unwrap();
                let mut seen: BTreeMap<String, Seen> = BTreeMap::new();
                let n = (k + 1).pow(piles as u32);
                for code in 0..n {
                    let counts: Vec<u64> = (0..piles)
                        .map(|j| code / (k + 1).pow(j as u32) % (k + 1))
                        .collect();
                    let c = cfg(&counts, k);
                    let entry = seen.entry(classify(&c).to_string()).or_default();
                    entry.possible.push(c.total());
                    if counts.iter().all(|&g| g >= 1) {
                        entry.fake.push(c.total());
                    }
                    if counts.iter().all(|&g| g < k) {
                        entry.real.push(c.total());
                    }
                }
                for seq in all_sequences(piles).unwrap() {
                    let mut s = seen.remove(&seq.to_string()).unwrap_or_default();
                    s.possible.sort_unstable();
                    s.possible.dedup();
                    assert_eq!(table.possible_f(&seq), s.possible, "p={piles} k={k} {seq}");
                    let discreet: Vec<u64> = s
                        .possible
                        .iter()
                        .copied()
                        .filter(|f| s.fake.contains(f) && s.real.contains(f))
                        .collect();
                    assert_eq!(table.discreet_f(&seq), discreet, "p={piles} k={k} {seq}");
                }
            }
        }
    }

    #[test]
    fn classify_ignores_order() {
        let a = classify(&cfg(&[3, 0, 2, 2, 5], 5));
        let b = classify(&cfg(&[2, 5, 2, 0, 3], 5));
        assert_eq!(a, b);
    }
}
