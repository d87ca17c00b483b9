//! Independent reference computations and frozen fixtures shared by the
//! integration targets. Nothing here calls into `solver`, `frobenius` or
//! `oracle`.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use coinsort::SortingSequence;

pub fn seq(s: &str) -> SortingSequence {
    s.parse().unwrap()
}

/// Labelled-pile walk over all `(k+1)^p` count vectors.
#[derive(Default)]
pub struct NaiveCell {
    pub possible: BTreeMap<Vec<u32>, BTreeSet<u64>>,
    /// Totals reached by a configuration with a fake coin in every pile.
    pub all_positive: BTreeMap<Vec<u32>, BTreeSet<u64>>,
    /// Totals reached by a configuration with a real coin in every pile.
    pub all_short: BTreeMap<Vec<u32>, BTreeSet<u64>>,
}

impl NaiveCell {
    pub fn possible(&self, s: &SortingSequence) -> Vec<u64> {
        self.possible
            .get(s.entries())
            .map(|v| v.iter().copied().collect())
            .unwrap_or_default()
    }

    pub fn discreet(&self, s: &SortingSequence) -> Vec<u64> {
        let (Some(a), Some(b)) = (
            self.all_positive.get(s.entries()),
            self.all_short.get(s.entries()),
        ) else {
            return Vec::new();
        };
        a.intersection(b).copied().collect()
    }
}

/// Outcome of weighing piles holding `counts` fakes each.
pub fn naive_classify(counts: &[u64]) -> Vec<u32> {
    let mut sorted = counts.to_vec();
    sorted.sort_unstable();
    let mut out = vec![0u32; sorted.len()];
    for j in 1..sorted.len() {
        out[j] = out[j - 1] + u32::from(sorted[j] > sorted[j - 1]);
    }
    out
}

pub fn naive_cell(p: usize, k: u64) -> NaiveCell {
    let mut cell = NaiveCell::default();
    let mut counts = vec![0u64; p];
    loop {
        let key = naive_classify(&counts);
        let total: u64 = counts.iter().sum();
        cell.possible.entry(key.clone()).or_default().insert(total);
        if counts.iter().all(|&g| g >= 1) {
            cell.all_positive
                .entry(key.clone())
                .or_default()
                .insert(total);
        }
        if counts.iter().all(|&g| g < k) {
            cell.all_short.entry(key).or_default().insert(total);
        }
        // odometer
        let mut j = 0;
        loop {
            if j == p {
                return cell;
            }
            if counts[j] < k {
                counts[j] += 1;
                break;
            }
            counts[j] = 0;
            j += 1;
        }
    }
}

/// Class sizes read straight off the entries.
pub fn parts_of(s: &SortingSequence) -> Vec<u64> {
    let mut parts: Vec<u64> = Vec::new();
    let e = s.entries();
    for j in 0..e.len() {
        if j == 0 || e[j] != e[j - 1] {
            parts.push(0);
        }
        *parts.last_mut().unwrap() += 1;
    }
    parts
}

/// Is there `0 <= f_1 < ... < f_r` (each at most `cap`) with `sum p_i f_i = f`?
pub fn naive_solvable(parts: &[u64], f: u64, cap: u64) -> bool {
    fn go(parts: &[u64], i: usize, low: u64, left: u64, cap: u64) -> bool {
        if i == parts.len() {
            return left == 0;
        }
        (low..=cap)
            .take_while(|&v| v * parts[i] <= left)
            .any(|v| go(parts, i + 1, v + 1, left - v * parts[i], cap))
    }
    go(parts, 0, 0, f, cap)
}

/// Naive general solvability, the largest entry is at most `f`.
pub fn naive_general(parts: &[u64], f: u64) -> bool {
    naive_solvable(parts, f, f.max(parts.len() as u64))
}

/// `table[n]` is true when `n` is a non-negative combination of `coeffs`.
pub fn representable_table(coeffs: &[u64], upto: usize) -> Vec<bool> {
    let mut table = vec![false; upto + 1];
    table[0] = true;
    for n in 1..=upto {
        table[n] = coeffs
            .iter()
            .any(|&a| a as usize <= n && table[n - a as usize]);
    }
    table
}

/// Largest non-representable value from a table that reaches past it, or -1.
pub fn naive_frobenius(coeffs: &[u64], upto: usize) -> i64 {
    let table = representable_table(coeffs, upto);
    table.iter().rposition(|&b| !b).map_or(-1, |i| i as i64)
}

/// Parse `"3, 6, 7*, 9"`: starred values are discreet.
pub fn starred(cell: &str) -> (Vec<u64>, Vec<u64>) {
    let mut possible = Vec::new();
    let mut discreet = Vec::new();
    for tok in cell.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let bold = tok.ends_with('*');
        let v: u64 = tok.trim_end_matches('*').parse().unwrap();
        possible.push(v);
        if bold {
            discreet.push(v);
        }
    }
    (possible, discreet)
}

/// p = 5, k = 5: binary form, sequence, values with discreet ones starred.
pub const TABLE_P5_K5: [(&str, &str, &str); 16] = [
    ("0000", "(0,0,0,0,0)", "0, 5*, 10*, 15*, 20*, 25"),
    (
        "0001",
        "(0,0,0,0,1)",
        "1, 2, 3, 4, 5, 6*, 7*, 8*, 9, 11*, 12*, 13, 16*, 17, 21",
    ),
    (
        "0010",
        "(0,0,0,1,1)",
        "2, 4, 6, 7*, 8, 9*, 10, 11*, 12*, 13, 14*, 16, 17*, 19, 22",
    ),
    (
        "0011",
        "(0,0,0,1,2)",
        "3, 4, 5, 6, 7, 8*, 9*, 10*, 11, 12, 13*, 14, 15, 18",
    ),
    (
        "0100",
        "(0,0,1,1,1)",
        "3, 6, 8*, 9, 11*, 12, 13*, 14*, 15, 16*, 17, 18*, 19, 21, 23",
    ),
    (
        "0101",
        "(0,0,1,1,2)",
        "4, 5, 6, 7, 8, 9*, 10*, 11, 12*, 13, 14*, 15, 17, 19",
    ),
    (
        "0110",
        "(0,0,1,2,2)",
        "5, 7, 8, 9, 10*, 11, 12*, 13*, 14, 15*, 16, 17, 18, 20",
    ),
    ("0111", "(0,0,1,2,3)", "6, 7, 8, 9, 10, 11*, 12, 13, 14, 16"),
    (
        "1000",
        "(0,1,1,1,1)",
        "4, 8, 9*, 12, 13*, 14*, 16, 17*, 18*, 19*, 20, 21, 22, 23, 24",
    ),
    (
        "1001",
        "(0,1,1,1,2)",
        "5, 6, 7, 8, 9, 10*, 11*, 12, 13, 14*, 15*, 16, 17, 18, 19, 20",
    ),
    (
        "1010",
        "(0,1,1,2,2)",
        "6, 8, 10, 11*, 12, 13*, 14, 15*, 16*, 17, 18, 19, 20, 21",
    ),
    (
        "1011",
        "(0,1,1,2,3)",
        "7, 8, 9, 10, 11, 12*, 13, 14, 15, 16, 17",
    ),
    (
        "1100",
        "(0,1,2,2,2)",
        "7, 10, 11, 12*, 13, 14, 15*, 16*, 17*, 18, 19, 20, 21, 22",
    ),
    (
        "1101",
        "(0,1,2,2,3)",
        "8, 9, 10, 11, 12, 13*, 14, 15, 16, 17, 18",
    ),
    (
        "1110",
        "(0,1,2,3,3)",
        "9, 11, 12, 13, 14*, 15, 16, 17, 18, 19",
    ),
    ("1111", "(0,1,2,3,4)", "10, 11, 12, 13, 14, 15"),
];

/// Every (p, k, sequence, f) below the lifting threshold, p <= 6, where general
/// solutions exist both ways but none fits the height bound.
pub const EXCEPTIONS_P6: [(usize, u64, &str, &[u64]); 22] = [
    (4, 3, "(0,1,1,2)", &[6]),
    (5, 3, "(0,1,1,1,2)", &[7, 8]),
    (5, 4, "(0,1,1,1,2)", &[8, 12]),
    (5, 4, "(0,1,1,2,3)", &[10]),
    (5, 4, "(0,1,2,2,3)", &[10]),
    (6, 3, "(0,0,1,1,1,2)", &[7]),
    (6, 3, "(0,1,1,1,1,2)", &[8, 9, 10]),
    (6, 3, "(0,1,1,1,2,2)", &[11]),
    (6, 4, "(0,0,1,1,1,2)", &[8]),
    (6, 4, "(0,0,1,2,2,3)", &[10]),
    (6, 4, "(0,1,1,1,1,2)", &[9, 10, 14, 15]),
    (6, 4, "(0,1,1,1,2,2)", &[16]),
    (6, 4, "(0,1,1,1,2,3)", &[11, 12]),
    (6, 4, "(0,1,1,2,2,3)", &[11, 13]),
    (6, 4, "(0,1,2,2,2,3)", &[12, 13]),
    (6, 4, "(0,1,1,2,3,3)", &[14]),
    (6, 5, "(0,1,1,1,1,2)", &[10, 15, 20]),
    (6, 5, "(0,1,1,1,2,3)", &[17]),
    (6, 5, "(0,1,1,2,3,4)", &[15]),
    (6, 5, "(0,1,2,2,2,3)", &[13]),
    (6, 5, "(0,1,2,2,3,4)", &[15]),
    (6, 5, "(0,1,2,3,3,4)", &[15]),
];

/// (0,1,1,1) at k = 7, 8, 9.
pub const RANGES_0111: [(u64, &str); 3] = [
    (7, "3, 6, 7*, 9, 10*, 11*, 12, 13*, 14*, 15*, 16*, 17*, 18*, 19*, 20*, 21*, 22*, 23*, 24, 25, 26, 27"),
    (
        8,
        "3, 6, 7*, 9, 10*, 11*, 12, 13*, 14*, 15*, 16*, 17*, 18*, 19*, 20*, 21*, 22*, 23*, 24*, 25*, 26*, 27*, \
         28, 29, 30, 31",
    ),
    (
        9,
        "3, 6, 7*, 9, 10*, 11*, 12, 13*, 14*, 15*, 16*, 17*, 18*, 19*, 20*, 21*, 22*, 23*, 24*, 25*, 26*, 27*, \
         28*, 29*, 30*, 31*, 32, 33, 34, 35",
    ),
];
