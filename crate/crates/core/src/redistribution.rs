//! Moving fake coins between adjacent weight classes.
//!
//! When `f_{i+1} > f_i + (p_i + p_{i+1})/c`, each pile of the heavier class
//! gains `p_{i+1}/c` fake coins and each pile of the lighter class loses
//! `p_i/c`. The weighted total is unchanged and `M = sum i p_i f_i` falls by
//! exactly `p_i p_{i+1} / c`, so repeated steps terminate.
//!
//! Class indices here are 0-based: step `i` acts on classes `i` and `i + 1`.

use crate::error::{Error, Result};
use crate::sequence::{PileProfile, WeighingInstance};
use crate::solver::{self, Solution};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RedistributionState {
    pub solution: Solution,
    pub monovariant: u64,
}

impl RedistributionState {
    pub fn new(profile: &PileProfile, solution: Solution) -> Self {
        let monovariant = monovariant(profile, &solution);
        Self {
            solution,
            monovariant,
        }
    }
}

/// `M = sum_{i=1}^r i p_i f_i`.
pub fn monovariant(profile: &PileProfile, sol: &Solution) -> u64 {
    profile
        .parts()
        .iter()
        .zip(sol.fakes())
        .enumerate()
        .map(|(i, (p, f))| (i as u64 + 1) * p * f)
        .sum()
}

/// Exact `a / c`; the profile guarantees `c` divides every part.
fn div_exact(a: u64, c: u64) -> u64 {
    assert_eq!(a % c, 0, "{a} is not divisible by gcd {c}");
    a / c
}

pub fn applicable_steps(profile: &PileProfile, sol: &Solution) -> Vec<usize> {
    let parts = profile.parts();
    let c = profile.gcd();
    let f = sol.fakes();
    (0..parts.len().saturating_sub(1))
        .filter(|&i| f[i + 1] > f[i] + div_exact(parts[i] + parts[i + 1], c))
        .collect()
}

fn is_applicable(profile: &PileProfile, sol: &Solution, i: usize) -> bool {
    let parts = profile.parts();
    let f = sol.fakes();
    i + 1 < parts.len() && f[i + 1] > f[i] + div_exact(parts[i] + parts[i + 1], profile.gcd())
}

pub fn step(profile: &PileProfile, sol: &Solution, i: usize) -> Result<Solution> {
    if !is_applicable(profile, sol, i) {
        return Err(Error::StepNotApplicable(i));
    }
    let parts = profile.parts();
    let c = profile.gcd();
    let mut fakes = sol.fakes().to_vec();
    fakes[i + 1] -= div_exact(parts[i], c);
    fakes[i] += div_exact(parts[i + 1], c);
    let next = Solution::new(profile, fakes)?;
    debug_assert_eq!(next.total(), sol.total());
    Ok(next)
}

/// Apply steps, lowest index first, until none applies.
pub fn normalize(profile: &PileProfile, sol: &Solution) -> Solution {
    normalize_traced(profile, sol)
        .last()
        .unwrap()
        .solution
        .clone()
}

/// Every intermediate state of [`normalize`], starting with the input.
pub fn normalize_traced(profile: &PileProfile, sol: &Solution) -> Vec<RedistributionState> {
    let mut trace = vec![RedistributionState::new(profile, sol.clone())];
    loop {
        let current = &trace.last().unwrap().solution;
        let Some(&i) = applicable_steps(profile, current).first() else {
            return trace;
        };
        let next = step(profile, current, i).expect("step was applicable");
        trace.push(RedistributionState::new(profile, next));
    }
}

/// Try to turn the smallest general solution for `f` into a height-bounded one.
///
/// Succeeds whenever `f <= pk - (2p^2 - p_1 p - p_r p)/c + F_min` and a general
/// solution exists; beyond that it may still succeed but may also give `None`.
pub fn lift_to_height_bound(inst: &WeighingInstance, f: u64) -> Option<Solution> {
    let profile = inst.profile();
    let start = solver::first_solution(profile, f, None)?;
    let lifted = normalize(profile, &start);
    (lifted.height() <= inst.k()).then_some(lifted)
}

/// Largest `f` for which [`lift_to_height_bound`] is guaranteed to succeed.
pub fn lift_guarantee(inst: &WeighingInstance) -> i64 {
    let profile = inst.profile();
    inst.total_coins() as i64 - profile.lift_margin() as i64 + profile.f_min() as i64
}
