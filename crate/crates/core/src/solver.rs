//! Solutions of `p_1 f_1 + ... + p_r f_r = f` with `0 <= f_1 < ... < f_r`.
//!
//! A *general* solution ignores pile capacity; a *height-bounded* one also
//! has `f_r <= k`. Single existence queries and enumeration walk the
//! increasing tuples depth first with budget pruning. Whole sweeps over every
//! total at once use a bitset dynamic programme over (class, last value).

use std::ops::ControlFlow;

use crate::error::{Error, Result};
use crate::sequence::{PileProfile, WeighingInstance};

/// Per-class fake counts `(f_1, ..., f_r)` with their weighted total.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Solution {
    fakes: Vec<u64>,
    total: u64,
}

impl Solution {
    pub fn new(profile: &PileProfile, fakes: Vec<u64>) -> Result<Self> {
        if fakes.len() != profile.classes() {
            return Err(Error::InvalidSolution(format!(
                "expected {} classes, got {}",
                profile.classes(),
                fakes.len()
            )));
        }
        if fakes.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidSolution(format!(
                "fake counts {fakes:?} are not strictly increasing"
            )));
        }
        let total = weighted_total(profile.parts(), &fakes);
        Ok(Self { fakes, total })
    }

    pub(crate) fn from_parts_unchecked(parts: &[u64], fakes: Vec<u64>) -> Self {
        let total = weighted_total(parts, &fakes);
        Self { fakes, total }
    }

    pub fn fakes(&self) -> &[u64] {
        &self.fakes
    }

    /// `f = sum p_i f_i`.
    pub fn total(&self) -> u64 {
        self.total
    }

    /// Fake count of the lightest class.
    pub fn height(&self) -> u64 {
        *self.fakes.last().unwrap()
    }

    pub fn spread(&self) -> u64 {
        self.height() - self.fakes[0]
    }
}

fn weighted_total(parts: &[u64], fakes: &[u64]) -> u64 {
    parts.iter().zip(fakes).map(|(p, f)| p * f).sum()
}

/// Image of a solution under the shift `x_r = f_1`, `x_i = f_{r-i+1} - f_{r-i} - 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XSolution {
    xs: Vec<u64>,
    coeffs: Vec<u64>,
    target: u64,
}

impl XSolution {
    pub fn new(profile: &PileProfile, xs: Vec<u64>) -> Result<Self> {
        if xs.len() != profile.classes() {
            return Err(Error::InvalidSolution(format!(
                "expected {} coordinates, got {}",
                profile.classes(),
                xs.len()
            )));
        }
        let coeffs = profile.forward_coefficients();
        let target = coeffs.iter().zip(&xs).map(|(a, x)| a * x).sum();
        Ok(Self { xs, coeffs, target })
    }

    pub fn xs(&self) -> &[u64] {
        &self.xs
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    /// `n = f - F_min`.
    pub fn target(&self) -> u64 {
        self.target
    }

    /// `sum x_i <= k - r + 1`, equivalent to `f_r <= k`.
    pub fn within_height(&self, k: u64) -> bool {
        let sum: u64 = self.xs.iter().sum();
        sum as i128 <= k as i128 - self.xs.len() as i128 + 1
    }
}

pub fn to_x_space(profile: &PileProfile, sol: &Solution) -> XSolution {
    let f = sol.fakes();
    let r = f.len();
    let mut xs = vec![0u64; r];
    xs[r - 1] = f[0];
    for i in 0..r - 1 {
        xs[i] = f[r - 1 - i] - f[r - 2 - i] - 1;
    }
    XSolution {
        xs,
        coeffs: profile.forward_coefficients(),
        target: sol.total() - profile.f_min(),
    }
}

pub fn from_x_space(profile: &PileProfile, x: &XSolution) -> Solution {
    let r = x.xs.len();
    let fakes = (0..r)
        .map(|i| i as u64 + x.xs[r - 1 - i..].iter().sum::<u64>())
        .collect();
    Solution::from_parts_unchecked(profile.parts(), fakes)
}

/// Depth-first walk over increasing tuples with a fixed weighted total.
struct Search<'a> {
    parts: &'a [u64],
    cap: Option<u64>,
    /// `sum_{j >= i} p_j`
    suffix_weight: Vec<u64>,
    /// `sum_{j >= i} p_j (j - i)`: minimal excess of the tail over its first value.
    suffix_offset: Vec<u64>,
    /// `sum_{j >= i} p_j (cap - (r - 1 - j))`: largest total the tail can carry.
    suffix_max: Vec<u64>,
}

impl<'a> Search<'a> {
    fn new(parts: &'a [u64], cap: Option<u64>) -> Self {
        let r = parts.len();
        let mut suffix_weight = vec![0u64; r + 1];
        let mut suffix_offset = vec![0u64; r + 1];
        let mut suffix_max = vec![0u64; r + 1];
        for i in (0..r).rev() {
            suffix_weight[i] = suffix_weight[i + 1] + parts[i];
            suffix_offset[i] = suffix_offset[i + 1] + suffix_weight[i + 1];
            if let Some(k) = cap {
                let top = (k + 1).saturating_sub((r - i) as u64);
                suffix_max[i] = suffix_max[i + 1] + parts[i] * top;
            }
        }
        Self {
            parts,
            cap,
            suffix_weight,
            suffix_offset,
            suffix_max,
        }
    }

    fn run<F>(&self, total: u64, visit: &mut F) -> ControlFlow<()>
    where
        F: FnMut(&[u64]) -> ControlFlow<()>,
    {
        if let Some(k) = self.cap {
            if (k as u128) + 1 < self.parts.len() as u128 {
                return ControlFlow::Continue(());
            }
        }
        let mut stack = Vec::with_capacity(self.parts.len());
        self.descend(0, 0, total, &mut stack, visit)
    }

    fn descend<F>(
        &self,
        i: usize,
        lo: u64,
        remaining: u64,
        stack: &mut Vec<u64>,
        visit: &mut F,
    ) -> ControlFlow<()>
    where
        F: FnMut(&[u64]) -> ControlFlow<()>,
    {
        let r = self.parts.len();
        let weight = self.parts[i];
        // largest value keeping the cheapest completion within budget
        let floor_cost = self.suffix_offset[i] + lo * self.suffix_weight[i];
        if remaining < floor_cost {
            return ControlFlow::Continue(());
        }
        let mut hi = (remaining - self.suffix_offset[i]) / self.suffix_weight[i];
        let mut start = lo;
        if let Some(k) = self.cap {
            hi = hi.min(k + 1 - (r - i) as u64);
            let tail_max = self.suffix_max[i + 1];
            if remaining > tail_max {
                start = start.max((remaining - tail_max).div_ceil(weight));
            }
        }
        if i + 1 == r {
            if remaining.is_multiple_of(weight) {
                let v = remaining / weight;
                if v >= start && v <= hi {
                    stack.push(v);
                    let flow = visit(stack);
                    stack.pop();
                    return flow;
                }
            }
            return ControlFlow::Continue(());
        }
        for v in start..=hi {
            stack.push(v);
            let flow = self.descend(i + 1, v + 1, remaining - weight * v, stack, visit);
            stack.pop();
            flow?;
        }
        ControlFlow::Continue(())
    }
}

/// Visit every solution with total `f` in lexicographic order; `cap` is the height bound.
pub fn for_each_solution<F>(profile: &PileProfile, f: u64, cap: Option<u64>, mut visit: F)
where
    F: FnMut(&Solution) -> ControlFlow<()>,
{
    let parts = profile.parts();
    let search = Search::new(parts, cap);
    let _ = search.run(f, &mut |fakes| {
        visit(&Solution::from_parts_unchecked(parts, fakes.to_vec()))
    });
}

pub fn solutions(profile: &PileProfile, f: u64, cap: Option<u64>) -> Vec<Solution> {
    let mut out = Vec::new();
    for_each_solution(profile, f, cap, |s| {
        out.push(s.clone());
        ControlFlow::Continue(())
    });
    out
}

/// Lexicographically smallest solution, if any.
pub fn first_solution(profile: &PileProfile, f: u64, cap: Option<u64>) -> Option<Solution> {
    let mut found = None;
    for_each_solution(profile, f, cap, |s| {
        found = Some(s.clone());
        ControlFlow::Break(())
    });
    found
}

pub fn has_solution(profile: &PileProfile, f: u64, cap: Option<u64>) -> bool {
    let parts = profile.parts();
    Search::new(parts, cap)
        .run(f, &mut |_| ControlFlow::Break(()))
        .is_break()
}

pub fn has_general_solution(profile: &PileProfile, f: u64) -> bool {
    has_solution(profile, f, None)
}

/// All solutions for `f` coins, height-bounded by `inst.k()` when `bounded`.
pub fn enumerate_solutions(
    inst: &WeighingInstance,
    f: u64,
    bounded: bool,
) -> Result<Vec<Solution>> {
    check_range(inst, f)?;
    let cap = bounded.then_some(inst.k());
    Ok(solutions(inst.profile(), f, cap))
}

fn check_range(inst: &WeighingInstance, f: u64) -> Result<()> {
    if f > inst.total_coins() {
        return Err(Error::FakeCountOutOfRange {
            f,
            max: inst.total_coins(),
        });
    }
    Ok(())
}

/// Fixed-width bitset over totals `0..=limit`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TotalSet {
    words: Vec<u64>,
    limit: u64,
}

impl TotalSet {
    pub fn empty(limit: u64) -> Self {
        Self {
            words: vec![0; (limit / 64 + 1) as usize],
            limit,
        }
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn insert(&mut self, n: u64) {
        if n <= self.limit {
            self.words[(n / 64) as usize] |= 1 << (n % 64);
        }
    }

    pub fn contains(&self, n: u64) -> bool {
        n <= self.limit && self.words[(n / 64) as usize] >> (n % 64) & 1 == 1
    }

    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        (0..=self.limit).filter(|&n| self.contains(n))
    }

    pub fn to_vec(&self) -> Vec<u64> {
        self.iter().collect()
    }

    fn union_with(&mut self, other: &Self) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    /// `self |= other << shift`, dropping anything above `limit`.
    fn union_shifted(&mut self, other: &Self, shift: u64) {
        if shift > self.limit {
            return;
        }
        let word_shift = (shift / 64) as usize;
        let bit_shift = shift % 64;
        let n = self.words.len();
        for dst in (word_shift..n).rev() {
            let src = dst - word_shift;
            let mut w = other.words[src] << bit_shift;
            if bit_shift > 0 && src > 0 {
                w |= other.words[src - 1] >> (64 - bit_shift);
            }
            self.words[dst] |= w;
        }
        self.trim();
    }

    fn trim(&mut self) {
        let tail = self.limit % 64;
        if tail < 63 {
            let last = self.words.len() - 1;
            self.words[last] &= (1u64 << (tail + 1)) - 1;
        }
    }
}

/// Every total `<= limit` reachable by an increasing tuple with entries `<= cap`.
pub fn reachable_totals(profile: &PileProfile, cap: u64, limit: u64) -> TotalSet {
    let parts = profile.parts();
    let width = cap as usize + 1;
    let mut layer: Vec<TotalSet> = (0..width)
        .map(|v| {
            let mut s = TotalSet::empty(limit);
            if let Some(t) = parts[0].checked_mul(v as u64) {
                s.insert(t);
            }
            s
        })
        .collect();
    for &weight in &parts[1..] {
        let mut prefix = TotalSet::empty(limit);
        let mut next = Vec::with_capacity(width);
        for (v, set) in layer.iter().enumerate() {
            let mut here = TotalSet::empty(limit);
            here.union_shifted(&prefix, weight.saturating_mul(v as u64));
            next.push(here);
            prefix.union_with(set);
        }
        layer = next;
    }
    let mut out = TotalSet::empty(limit);
    for set in &layer {
        out.union_with(set);
    }
    out
}

/// Totals `<= limit` admitting a general solution.
pub fn general_totals(profile: &PileProfile, limit: u64) -> TotalSet {
    reachable_totals(profile, limit, limit)
}

/// Totals admitting a height-bounded solution for pile size `k` (which may be 0).
pub fn bounded_totals(profile: &PileProfile, k: u64) -> TotalSet {
    reachable_totals(profile, k, profile.piles() * k)
}

/// Every `f` with at least one height-bounded solution, ascending.
pub fn possible_f(inst: &WeighingInstance) -> Vec<u64> {
    bounded_totals(inst.profile(), inst.k()).to_vec()
}

/// Discreetness: height-bounded solutions for `f - p` and `f` with `k - 1` coins per pile.
pub fn is_discreet(inst: &WeighingInstance, f: u64) -> bool {
    let profile = inst.profile();
    let p = profile.piles();
    if f < p {
        return false;
    }
    let smaller = inst.k() - 1;
    let max = p * smaller;
    f <= max
        && has_solution(profile, f - p, Some(smaller))
        && has_solution(profile, f, Some(smaller))
}

/// `{ f in possible_f : is_discreet }`, ascending.
pub fn discreet_f(inst: &WeighingInstance) -> Vec<u64> {
    let profile = inst.profile();
    let p = profile.piles();
    let shrunk = bounded_totals(profile, inst.k() - 1);
    (p..=inst.total_coins())
        .filter(|&f| shrunk.contains(f - p) && shrunk.contains(f))
        .collect()
}

/// `(F_min, pk - F'_min)`, or `None` when `k < r - 1`.
pub fn min_max_f(inst: &WeighingInstance) -> Option<(u64, u64)> {
    let profile = inst.profile();
    if inst.k() + 1 < profile.classes() as u64 {
        return None;
    }
    Some((
        profile.f_min(),
        inst.total_coins() - profile.f_min_reverse(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sequence::SortingSequence;

    fn inst(s: &str, k: u64) -> WeighingInstance {
        WeighingInstance::new(s.parse::<SortingSequence>().unwrap(), k).unwrap()
    }

    fn fakes(sols: &[Solution]) -> Vec<Vec<u64>> {
        sols.iter().map(|s| s.fakes().to_vec()).collect()
    }

    #[test]
    fn enumerate_examples() {
        let sols = enumerate_solutions(&inst("(0,0,1,2)", 5), 11, true).unwrap();
        assert!(fakes(&sols).contains(&vec![2, 3, 4]));
        let sols = enumerate_solutions(&inst("(0,0,1,2)", 2), 3, true).unwrap();
        assert_eq!(fakes(&sols), vec![vec![0, 1, 2]]);
        let one = inst("(0,0,1,2)", 1);
        for f in 0..=4 {
            assert!(enumerate_solutions(&one, f, true).unwrap().is_empty());
        }
        assert!(matches!(
            enumerate_solutions(&one, 5, true),
            Err(Error::FakeCountOutOfRange { f: 5, max: 4 })
        ));
    }

    #[test]
    fn general_solutions_from_worked_example() {
        // (0,1,1,2,3), f = 10: two general solutions, neither height-bounded at k = 4
        let i = inst("(0,1,1,2,3)", 4);
        let sols = enumerate_solutions(&i, 10, false).unwrap();
        assert_eq!(fakes(&sols), vec![vec![0, 1, 2, 6], vec![0, 1, 3, 5]]);
        assert!(enumerate_solutions(&i, 10, true).unwrap().is_empty());
        let rev = enumerate_solutions(&i.reversed(), 10, false).unwrap();
        assert_eq!(fakes(&rev), vec![vec![0, 1, 2, 5]]);
    }

    #[test]
    fn possible_examples() {
        assert_eq!(
            possible_f(&inst("(0,1,2,3,4)", 5)),
            vec![10, 11, 12, 13, 14, 15]
        );
        assert_eq!(
            possible_f(&inst("(0,0,0,0,0)", 5)),
            vec![0, 5, 10, 15, 20, 25]
        );
        let mut expected = vec![3, 6, 7];
        expected.extend(9..=27);
        assert_eq!(possible_f(&inst("(0,1,1,1)", 7)), expected);
    }

    #[test]
    fn discreet_examples() {
        assert!(is_discreet(&inst("(0,1,1,2)", 5), 10));
        assert!(!is_discreet(&inst("(0,1,1,1,2)", 5), 12));
        assert!(is_discreet(&inst("(0,0,0,1,2)", 5), 8));
        assert_eq!(
            discreet_f(&inst("(0,0,0,0,1)", 5)),
            vec![6, 7, 8, 11, 12, 16]
        );
        assert!(discreet_f(&inst("(0,1,2,3,4)", 5)).is_empty());
        let mut expected = vec![7, 10, 11];
        expected.extend(13..=31);
        assert_eq!(discreet_f(&inst("(0,1,1,1)", 9)), expected);
        // f - p < 0
        assert!(!is_discreet(&inst("(0,1)", 5), 1));
    }

    #[test]
    fn min_max_examples() {
        assert_eq!(min_max_f(&inst("(0,0,1,2)", 5)), Some((3, 15)));
        assert_eq!(min_max_f(&inst("(0,0,1,2)", 1)), None);
        assert_eq!(min_max_f(&inst("(0,0,0,0,1)", 5)), Some((1, 21)));
        // cross-check the maximum by enumeration
        let i = inst("(0,0,1,2)", 5);
        let max = (0..=20)
            .filter(|&f| !enumerate_solutions(&i, f, true).unwrap().is_empty())
            .max();
        assert_eq!(max, Some(15));
    }

    #[test]
    fn x_space_examples() {
        let prof = "(0,0,1,2)".parse::<SortingSequence>().unwrap().profile();
        let sol = Solution::new(&prof, vec![2, 3, 4]).unwrap();
        let x = to_x_space(&prof, &sol);
        assert_eq!(
            (x.xs(), x.coeffs(), x.target()),
            (&[0, 0, 2][..], &[1, 2, 4][..], 8)
        );
        assert_eq!(from_x_space(&prof, &x), sol);

        let sol = Solution::new(&prof, vec![0, 1, 2]).unwrap();
        let x = to_x_space(&prof, &sol);
        assert_eq!((x.xs(), x.target()), (&[0, 0, 0][..], 0));

        let prof = "(0,1,1,1)".parse::<SortingSequence>().unwrap().profile();
        let sol = Solution::new(&prof, vec![0, 2]).unwrap();
        let x = to_x_space(&prof, &sol);
        assert_eq!(
            (x.xs(), x.coeffs(), x.target()),
            (&[1, 0][..], &[3, 4][..], 3)
        );
        assert_eq!(XSolution::new(&prof, vec![1, 0]).unwrap(), x);
    }

    #[test]
    fn solution_validation() {
        let prof = "(0,1)".parse::<SortingSequence>().unwrap().profile();
        assert!(Solution::new(&prof, vec![1, 1]).is_err());
        assert!(Solution::new(&prof, vec![1]).is_err());
        assert_eq!(Solution::new(&prof, vec![1, 4]).unwrap().total(), 5);
    }

    #[test]
    fn total_set_shift_across_words() {
        let mut a = TotalSet::empty(200);
        a.insert(3);
        a.insert(63);
        a.insert(64);
        let mut b = TotalSet::empty(200);
        b.union_shifted(&a, 70);
        assert_eq!(b.to_vec(), vec![73, 133, 134]);
        let mut c = TotalSet::empty(100);
        c.union_shifted(&a, 40);
        assert_eq!(c.to_vec(), vec![43]);
    }

    #[test]
    fn dynamic_programme_matches_search() {
        for p in 1..=6 {
            for s in crate::sequence::all_sequences(p).unwrap() {
                let prof = s.profile();
                for k in 0..=6u64 {
                    let dp = bounded_totals(&prof, k);
                    for f in 0..=prof.piles() * k {
                        assert_eq!(
                            dp.contains(f),
                            has_solution(&prof, f, Some(k)),
                            "{s} k={k} f={f}"
                        );
                    }
                }
                let general = general_totals(&prof, 40);
                for f in 0..=40 {
                    assert_eq!(
                        general.contains(f),
                        has_general_solution(&prof, f),
                        "{s} f={f}"
                    );
                }
            }
        }
    }
}
