//! Representability and Frobenius numbers, and the thresholds they induce on
//! a sorting sequence.
//!
//! Membership is decided with the Apéry set modulo the smallest coefficient:
//! for each residue class we keep the least representable value, found by a
//! shortest-path sweep over the residues. A value is representable iff it is
//! at least the least member of its residue class, and the Frobenius number
//! is the largest least member minus the modulus.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::sequence::{PileProfile, SortingSequence, WeighingInstance};

/// Strictly increasing positive coefficients `a_1 < ... < a_r`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CoefficientSet {
    coeffs: Vec<u64>,
    gcd: u64,
}

impl CoefficientSet {
    pub fn new(coeffs: Vec<u64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidCoefficients("empty coefficient list".into()));
        }
        if coeffs[0] == 0 {
            return Err(Error::InvalidCoefficients(
                "coefficients must be positive".into(),
            ));
        }
        if coeffs.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidCoefficients(format!(
                "{coeffs:?} is not strictly increasing"
            )));
        }
        let gcd = coeffs.iter().fold(0u64, |g, &a| g.gcd(&a));
        Ok(Self { coeffs, gcd })
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn gcd(&self) -> u64 {
        self.gcd
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn apery(&self) -> AperyTable {
        AperyTable::new(&self.coeffs)
    }

    /// Non-negative integer combination test; negative `n` is never representable.
    pub fn is_representable(&self, n: i64) -> bool {
        self.apery().contains(n)
    }

    pub fn frobenius_number(&self) -> Result<i64> {
        if self.gcd != 1 {
            return Err(Error::NotCoprime(self.gcd));
        }
        Ok(self.apery().frobenius().expect("coprime set"))
    }

    /// Coefficients not representable from the smaller ones.
    pub fn minimal_generators(&self) -> Vec<u64> {
        let mut kept: Vec<u64> = Vec::new();
        for &a in &self.coeffs {
            if kept.is_empty() || !AperyTable::new(&kept).contains(a as i64) {
                kept.push(a);
            }
        }
        kept
    }

    pub fn bounds(&self) -> Result<FrobeniusResult> {
        let g = self.frobenius_number()?;
        Ok(FrobeniusResult {
            g,
            schur: schur_bound(&self.coeffs),
            erdos_graham: erdos_graham_bound(&self.coeffs),
            selmer: selmer_bound(&self.minimal_generators()),
        })
    }
}

/// Least representable value in each residue class modulo `a_1`.
#[derive(Clone, Debug)]
pub struct AperyTable {
    modulus: u64,
    least: Vec<Option<u64>>,
}

impl AperyTable {
    pub fn new(coeffs: &[u64]) -> Self {
        let modulus = coeffs[0];
        let m = modulus as usize;
        let mut least = vec![None; m];
        least[0] = Some(0u64);
        let mut heap = BinaryHeap::new();
        heap.push(Reverse((0u64, 0usize)));
        while let Some(Reverse((value, residue))) = heap.pop() {
            if least[residue] != Some(value) {
                continue;
            }
            for &a in &coeffs[1..] {
                let next = value + a;
                let r = (next % modulus) as usize;
                if least[r].is_none_or(|cur| next < cur) {
                    least[r] = Some(next);
                    heap.push(Reverse((next, r)));
                }
            }
        }
        Self { modulus, least }
    }

    pub fn contains(&self, n: i64) -> bool {
        if n < 0 {
            return false;
        }
        let n = n as u64;
        match self.least[(n % self.modulus) as usize] {
            Some(w) => n >= w,
            None => false,
        }
    }

    /// Largest non-representable integer (`-1` if none); `None` unless coprime.
    pub fn frobenius(&self) -> Option<i64> {
        let mut worst = 0u64;
        for w in &self.least {
            worst = worst.max((*w)?);
        }
        Some(worst as i64 - self.modulus as i64)
    }
}

/// Frobenius number with the three classical upper bounds.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FrobeniusResult {
    pub g: i64,
    /// `(a_1 - 1)(a_r - 1) - 1`
    pub schur: i64,
    /// `2 a_{r-1} floor(a_r / r) - a_r`; needs at least two coefficients.
    pub erdos_graham: Option<i64>,
    /// `2 a_r floor(a_1 / r) - a_1`, evaluated on the minimal generating set.
    pub selmer: i64,
}

impl FrobeniusResult {
    pub fn tightest(&self) -> i64 {
        self.erdos_graham
            .map_or(self.schur, |e| e.min(self.schur))
            .min(self.selmer)
    }
}

pub fn schur_bound(coeffs: &[u64]) -> i64 {
    let first = coeffs[0] as i64;
    let last = *coeffs.last().unwrap() as i64;
    (first - 1) * (last - 1) - 1
}

pub fn erdos_graham_bound(coeffs: &[u64]) -> Option<i64> {
    let r = coeffs.len();
    if r < 2 {
        return None;
    }
    let last = coeffs[r - 1] as i64;
    Some(2 * coeffs[r - 2] as i64 * (last / r as i64) - last)
}

/// Selmer's bound as a bare formula. It only bounds the Frobenius number when
/// no coefficient is a combination of the others.
pub fn selmer_bound(coeffs: &[u64]) -> i64 {
    let r = coeffs.len() as i64;
    let first = coeffs[0] as i64;
    2 * *coeffs.last().unwrap() as i64 * (first / r) - first
}

/// Bounds carried over to a threshold: `c * bound(a / c) + F_min`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ThresholdBounds {
    pub schur: i64,
    pub erdos_graham: Option<i64>,
    pub selmer: i64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Thresholds {
    pub gamma: i64,
    pub gamma_prime: i64,
    pub delta: i64,
    pub delta_prime: i64,
    pub gamma_bounds: ThresholdBounds,
    pub gamma_prime_bounds: ThresholdBounds,
}

/// Largest multiple of `c` with no general solution: `c * g(a / c) + F_min`.
fn threshold_from(coeffs: &[u64], c: u64, f_min: u64) -> (i64, ThresholdBounds) {
    let reduced = CoefficientSet::new(coeffs.iter().map(|a| a / c).collect())
        .expect("partial sums are strictly increasing");
    let res = reduced.bounds().expect("reduced coefficients are coprime");
    let lift = |b: i64| c as i64 * b + f_min as i64;
    (
        lift(res.g),
        ThresholdBounds {
            schur: lift(res.schur),
            erdos_graham: res.erdos_graham.map(lift),
            selmer: lift(res.selmer),
        },
    )
}

pub fn profile_thresholds(profile: &PileProfile) -> Result<Thresholds> {
    if profile.classes() < 2 {
        return Err(Error::TrivialSequence);
    }
    let c = profile.gcd();
    let (gamma, gamma_bounds) = threshold_from(&profile.forward_coefficients(), c, profile.f_min());
    let (gamma_prime, gamma_prime_bounds) =
        threshold_from(&profile.dual_coefficients(), c, profile.f_min_reverse());
    let p = profile.piles() as i64;
    Ok(Thresholds {
        gamma,
        gamma_prime,
        delta: gamma + p,
        delta_prime: gamma_prime + p,
        gamma_bounds,
        gamma_prime_bounds,
    })
}

pub fn thresholds(seq: &SortingSequence) -> Result<Thresholds> {
    profile_thresholds(&seq.profile())
}

/// `(2p^2 - p_1 p - p_r p)/c - F'_min` and `... - F_min`: strict upper bounds on `gamma`, `gamma'`.
pub fn gamma_ceilings(profile: &PileProfile) -> (i64, i64) {
    let margin = profile.lift_margin() as i64;
    (
        margin - profile.f_min_reverse() as i64,
        margin - profile.f_min() as i64,
    )
}

/// `(gamma, pk - gamma')` once `k >= (4p - 2p_1 - 2p_r)/c + 1 - r`.
pub fn predicted_range(inst: &WeighingInstance) -> Option<(i64, i64)> {
    let profile = inst.profile();
    let t = profile_thresholds(profile).ok()?;
    (inst.k() as i64 >= profile.range_threshold())
        .then(|| (t.gamma, inst.total_coins() as i64 - t.gamma_prime))
}

/// `(delta, pk - delta')` once `k >= (4p - 2p_1 - 2p_r)/c + 2 - r`.
pub fn predicted_discreet_range(inst: &WeighingInstance) -> Option<(i64, i64)> {
    let profile = inst.profile();
    let t = profile_thresholds(profile).ok()?;
    (inst.k() as i64 > profile.range_threshold())
        .then(|| (t.delta, inst.total_coins() as i64 - t.delta_prime))
}
