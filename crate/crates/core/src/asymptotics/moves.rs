//! Average boundary moves `ᾱ_m`, the level-weighted average `κ_t` and the
//! weight ratio `χ(t)`, all exact.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::counting::omega_sums;
use crate::decimal::{ratio_u, truncate};
use crate::error::{Error, Result};

fn pow3(n: usize) -> BigUint {
    BigUint::from(3u32).pow(n as u32)
}

fn to_int(v: BigUint) -> BigInt {
    BigInt::from(v)
}

/// Numerators `Σ_{|σ|=m} L(σ)` for `m = 0..=up_to`; the denominator is `3^m`.
pub fn moves_numerators(up_to: usize) -> Vec<BigUint> {
    let mut out = Vec::with_capacity(up_to + 1);
    out.push(BigUint::zero());
    let mut p = BigUint::one();
    for s in omega_sums(up_to) {
        p *= 3u32;
        out.push(s - &p);
    }
    out
}

/// `ᾱ_m`, the mean of `L` over words of length `m`.
pub fn mean_moves(m: usize) -> BigRational {
    let numer = moves_numerators(m).pop().expect("non-empty");
    ratio_u(numer, pow3(m))
}

/// `ᾱ_m` for `m = 0..=up_to`.
pub fn mean_moves_series(up_to: usize) -> Vec<BigRational> {
    moves_numerators(up_to)
        .into_iter()
        .enumerate()
        .map(|(m, n)| ratio_u(n, pow3(m)))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MovesRow {
    pub t: usize,
    /// `ᾱ_t / t`
    pub per_level: BigRational,
    /// `ᾱ_t / t` truncated to four decimals.
    pub truncated: String,
}

/// Rows `(t, ᾱ_t/t)` for `t = from, from+step, ..., <= to`.
pub fn mean_moves_table(from: usize, to: usize, step: usize) -> Result<Vec<MovesRow>> {
    if from < 1 || from > to || step == 0 {
        return Err(Error::Degenerate(
            "table needs 1 <= from <= to and step >= 1",
        ));
    }
    let numers = moves_numerators(to);
    Ok((from..=to)
        .step_by(step)
        .map(|t| {
            let per_level = ratio_u(numers[t].clone(), pow3(t) * BigUint::from(t));
            let truncated = truncate(&per_level, 4);
            MovesRow {
                t,
                per_level,
                truncated,
            }
        })
        .collect())
}

/// The six levels tabulated for comparison with `2/9`.
pub fn reference_table() -> Vec<MovesRow> {
    mean_moves_table(300, 800, 100).expect("valid range")
}

/// Unreduced `(numerator, denominator)` of `κ_t` for `t = 0..=up_to`.
///
/// `κ_t = Σ_{k<=t} 3^k ᾱ_k / Σ_{k<=t} 3^k`, the mean of `L` over all of `V_t`.
/// Kept unreduced because the gcd dominates the cost for large `t`.
pub fn level_average_parts(up_to: usize) -> Vec<(BigUint, BigUint)> {
    let mut out = Vec::with_capacity(up_to + 1);
    let mut numer = BigUint::zero();
    let mut denom = BigUint::zero();
    let mut p = BigUint::one();
    for n in moves_numerators(up_to) {
        numer += n;
        denom += &p;
        p *= 3u32;
        out.push((numer.clone(), denom.clone()));
    }
    out
}

/// `κ_t`, the mean of `L` over every vertex of the level-`t` network.
pub fn mean_moves_within(t: usize) -> BigRational {
    let (n, d) = level_average_parts(t).pop().expect("non-empty");
    ratio_u(n, d)
}

/// Unreduced `(numerator, denominator)` of `χ(t) = Σ k 3^k / (t Σ 3^k)`.
pub fn level_weight_parts(t: usize) -> Result<(BigUint, BigUint)> {
    if t == 0 {
        return Err(Error::Degenerate("level weight ratio needs t >= 1"));
    }
    let mut weighted = BigUint::zero();
    let mut plain = BigUint::zero();
    let mut p = BigUint::one();
    for k in 0..=t {
        weighted += &p * BigUint::from(k);
        plain += &p;
        p *= 3u32;
    }
    Ok((weighted, plain * BigUint::from(t)))
}

/// `χ(t)`, the mean level of a vertex of `V_t` divided by `t`.
pub fn level_weight_ratio(t: usize) -> Result<BigRational> {
    let (n, d) = level_weight_parts(t)?;
    Ok(ratio_u(n, d))
}

#[derive(Debug, Clone, PartialEq)]
pub struct AlphaSeries {
    /// `ᾱ_m` for `m = 0..=up_to`.
    pub alpha_bar: Vec<BigRational>,
    /// `κ_t` for `t = 0..=up_to`.
    pub kappa: Vec<BigRational>,
    /// `χ(t)` for `t = 1..=up_to`, index `t − 1`.
    pub chi: Vec<BigRational>,
    /// `ᾱ_m / m` at the largest `m`.
    pub alpha_star_estimate: BigRational,
}

impl AlphaSeries {
    pub fn compute(up_to: usize) -> Result<AlphaSeries> {
        if up_to == 0 {
            return Err(Error::Degenerate("series needs up_to >= 1"));
        }
        let alpha_bar = mean_moves_series(up_to);
        let kappa = level_average_parts(up_to)
            .into_iter()
            .map(|(n, d)| ratio_u(n, d))
            .collect();
        let chi = (1..=up_to)
            .map(level_weight_ratio)
            .collect::<Result<Vec<_>>>()?;
        let alpha_star_estimate =
            &alpha_bar[up_to] / BigRational::from_integer(to_int(BigUint::from(up_to)));
        Ok(AlphaSeries {
            alpha_bar,
            kappa,
            chi,
            alpha_star_estimate,
        })
    }
}
