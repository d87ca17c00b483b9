//! Exact revealing factor of the sorting strategy.
//!
//! Old possibilities are all `C(pk, f)` placements of the fakes; new ones are
//! the placements consistent with the observed order, `sum over height-bounded
//! solutions of prod_i C(k, f_i)^{p_i}`.

use std::fmt;
use std::ops::ControlFlow;

use num_bigint::BigUint;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Pow, Zero};

use crate::error::{Error, Result};
use crate::sequence::{PileProfile, WeighingInstance};
use crate::solver;

/// Largest coin count accepted by the coin-level enumeration.
pub const MAX_COIN_LEVEL_COINS: u64 = 24;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RevealingFactor {
    pub old_count: BigUint,
    pub new_count: BigUint,
    pub ratio: Ratio<BigUint>,
    /// Six significant digits, for display.
    pub approx: String,
}

impl fmt::Display for RevealingFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} / {} = {} ~ {}",
            self.old_count, self.new_count, self.ratio, self.approx
        )
    }
}

pub fn binomial(n: u64, r: u64) -> BigUint {
    if r > n {
        return BigUint::zero();
    }
    let r = r.min(n - r);
    let mut acc = BigUint::one();
    for i in 0..r {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// Orderings of `p` labelled piles with the given class sizes: `p! / prod p_i!`.
pub fn arrangements(profile: &PileProfile) -> BigUint {
    let mut left = profile.piles();
    let mut acc = BigUint::one();
    for &part in profile.parts() {
        acc *= binomial(left, part);
        left -= part;
    }
    acc
}

/// Coin-level placements consistent with the outcome and `f` fakes.
pub fn new_possibilities(inst: &WeighingInstance, f: u64) -> BigUint {
    let profile = inst.profile();
    let k = inst.k();
    let row: Vec<BigUint> = (0..=k).map(|j| binomial(k, j)).collect();
    let mut sum = BigUint::zero();
    solver::for_each_solution(profile, f, Some(k), |sol| {
        let term = profile
            .parts()
            .iter()
            .zip(sol.fakes())
            .fold(BigUint::one(), |acc, (&p, &fi)| {
                acc * Pow::pow(&row[fi as usize], p as u32)
            });
        sum += term;
        ControlFlow::Continue(())
    });
    sum
}

pub fn revealing_factor(inst: &WeighingInstance, f: u64) -> Result<RevealingFactor> {
    let total = inst.total_coins();
    if f > total {
        return Err(Error::FakeCountOutOfRange { f, max: total });
    }
    let new_count = new_possibilities(inst, f);
    if new_count.is_zero() {
        return Err(Error::ZeroNewPossibilities(f));
    }
    let old_count = binomial(total, f);
    let ratio = Ratio::new(old_count.clone(), new_count.clone());
    let approx = significant_digits(ratio.numer(), ratio.denom(), 6);
    Ok(RevealingFactor {
        old_count,
        new_count,
        ratio,
        approx,
    })
}

/// Consistent placements for every `f`, by walking all `2^(pk)` coin subsets.
pub fn coin_level_counts(inst: &WeighingInstance) -> Result<Vec<u64>> {
    let total = inst.total_coins();
    if total > MAX_COIN_LEVEL_COINS {
        return Err(Error::GuardExceeded {
            states: 1u128 << total.min(127),
            limit: 1u128 << MAX_COIN_LEVEL_COINS,
        });
    }
    let k = inst.k() as u32;
    let entries = inst.sequence().entries();
    let pile_mask = (1u64 << k) - 1;
    let mut counts = vec![0u64; total as usize + 1];
    let mut fakes = vec![0u32; entries.len()];
    'mask: for mask in 0u64..(1u64 << total) {
        for (j, g) in fakes.iter_mut().enumerate() {
            *g = ((mask >> (j as u32 * k)) & pile_mask).count_ones();
        }
        for j in 1..entries.len() {
            let ok = if entries[j] == entries[j - 1] {
                fakes[j] == fakes[j - 1]
            } else {
                fakes[j] > fakes[j - 1]
            };
            if !ok {
                continue 'mask;
            }
        }
        counts[mask.count_ones() as usize] += 1;
    }
    Ok(counts)
}

pub fn coin_level_oracle_count(inst: &WeighingInstance, f: u64) -> Result<BigUint> {
    let counts = coin_level_counts(inst)?;
    Ok(counts
        .get(f as usize)
        .copied()
        .map(BigUint::from)
        .unwrap_or_default())
}

/// Decimal rendering of `num / den` rounded to `digits` significant digits.
pub fn significant_digits(num: &BigUint, den: &BigUint, digits: u32) -> String {
    assert!(!den.is_zero() && digits > 0);
    if num.is_zero() {
        return "0".to_string();
    }
    let ten = BigUint::from(10u32);
    let low = Pow::pow(&ten, digits - 1);
    let high = Pow::pow(&ten, digits);
    // decimal exponent of the leading digit
    let mut exp = num.to_string().len() as i64 - den.to_string().len() as i64;
    let (mantissa, exp) = loop {
        let shift = digits as i64 - 1 - exp;
        let (n, d) = if shift >= 0 {
            (num * Pow::pow(&ten, shift as u32), den.clone())
        } else {
            (num.clone(), den * Pow::pow(&ten, (-shift) as u32))
        };
        let (mut q, rem) = n.div_rem(&d);
        if q < low {
            exp -= 1;
            continue;
        }
        if q >= high {
            exp += 1;
            continue;
        }
        if rem * 2u32 >= d {
            q += 1u32;
        }
        if q == high {
            break (q / 10u32, exp + 1);
        }
        break (q, exp);
    };
    let digits_str = mantissa.to_string();
    let trim = |s: String| -> String {
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s
        }
    };
    if (-5..digits as i64).contains(&exp) {
        if exp >= 0 {
            let (int, frac) = digits_str.split_at(exp as usize + 1);
            trim(format!("{int}.{frac}"))
        } else {
            let zeros = "0".repeat((-exp - 1) as usize);
            trim(format!("0.{zeros}{digits_str}"))
        }
    } else {
        let (lead, rest) = digits_str.split_at(1);
        format!("{}e{exp}", trim(format!("{lead}.{rest}")))
    }
}
