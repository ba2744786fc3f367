//! The renewal process of block lengths read from the right of a random word.
//!
//! `S` is the position at which a third distinct letter first appears when
//! scanning `x_1 x_2 ...` with `x_0 = 1` prepended, so
//! `P(S = k) = (2^k − 2)/3^k` for `k >= 2`. Successive blocks share their
//! boundary letter, which makes the block lengths i.i.d. copies of `S`.
//! `Y_t` counts the epochs `J_n = S_1 + ... + S_n` with `J_n <= t`.

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::counting::{at_most_two, omega_sums, two_letter, TwoLetterKernel};
use crate::decimal::ratio_u;
use crate::distance::in_pool;
use crate::error::{Error, Result};
use crate::word::Word;

fn pow3(n: usize) -> BigUint {
    BigUint::from(3u32).pow(n as u32)
}

/// `P(S = k)`; zero for `k < 2`.
pub fn s_pmf(k: usize) -> BigRational {
    if k < 2 {
        return BigRational::zero();
    }
    ratio_u(two_letter(k), pow3(k))
}

/// `Σ_{k=2}^{upto} P(S = k)`.
pub fn pmf_partial_sum(upto: usize) -> BigRational {
    (2..=upto)
        .map(s_pmf)
        .fold(BigRational::zero(), |a, b| a + b)
}

/// `Σ_{k=2}^{upto} k·P(S = k)`.
pub fn mean_s_partial(upto: usize) -> BigRational {
    (2..=upto)
        .map(|k| s_pmf(k) * BigRational::from_integer(k.into()))
        .fold(BigRational::zero(), |a, b| a + b)
}

/// `E(S) = 9/2`.
pub fn mean_s() -> BigRational {
    BigRational::new(9.into(), 2.into())
}

/// Block lengths `S_1, S_2, ...` completed within `x_1 x_2 ... x_n`, given in
/// reading order from the right (`x[0]` is `x_1`).
pub fn block_lengths(x: &[u8]) -> Vec<usize> {
    let mut out = Vec::new();
    let mut start = 0usize;
    let mut seen = 1u8 << 1;
    for (i, &letter) in x.iter().enumerate() {
        let pos = i + 1;
        let bit = 1u8 << letter;
        if seen | bit == seen {
            continue;
        }
        seen |= bit;
        if seen.count_ones() == 3 {
            out.push(pos - start);
            start = pos;
            seen = bit;
        }
    }
    out
}

/// [`block_lengths`] of a word as written, whose last letter is `x_1`.
pub fn block_lengths_of(word: &Word) -> Vec<usize> {
    let mut x = word.to_letters();
    x.reverse();
    block_lengths(&x)
}

/// `Y_t` for a finite sequence `x_1..x_t`: the number of completed blocks.
pub fn renewal_count(x: &[u8]) -> usize {
    block_lengths(x).len()
}

#[derive(Debug, Clone, Serialize)]
pub struct MonteCarlo {
    pub t: usize,
    pub estimate: f64,
    pub std_err: f64,
    pub samples: u64,
    pub seed: u64,
}

impl MonteCarlo {
    pub const CSV_HEADER: &'static str = "t,estimate,std_err,samples,seed";

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{}",
            self.t,
            crate::decimal::round_significant_f64(self.estimate, 12),
            crate::decimal::round_significant_f64(self.std_err, 12),
            self.samples,
            self.seed
        )
    }
}

#[derive(Debug, Clone)]
pub struct RenewalModel {
    /// `3^t·E(Y_t)` for `t = 0..=t_max`; always an integer.
    scaled: Vec<BigUint>,
    pub mc: Option<MonteCarlo>,
}

impl RenewalModel {
    pub fn t_max(&self) -> usize {
        self.scaled.len() - 1
    }

    /// `3^t·E(Y_t)`.
    pub fn scaled(&self, t: usize) -> &BigUint {
        &self.scaled[t]
    }

    /// `E(Y_t)`.
    pub fn ey(&self, t: usize) -> BigRational {
        ratio_u(self.scaled[t].clone(), pow3(t))
    }

    /// `E(Y_t) / t`.
    pub fn ey_over_t(&self, t: usize) -> Result<BigRational> {
        if t == 0 {
            return Err(Error::Degenerate("E(Y_t)/t needs t >= 1"));
        }
        Ok(ratio_u(self.scaled[t].clone(), pow3(t) * BigUint::from(t)))
    }
}

/// Exact `E(Y_t)` for `t <= t_max`.
///
/// From `E(Y_t) = Σ_{k=2}^{t} P(S=k)(1 + E(Y_{t−k}))`, the scaled values
/// `Z(t) = 3^t E(Y_t)` satisfy `Z(t) = Σ_k (2^k − 2)(3^{t−k} + Z(t−k))`,
/// an integer recursion with the same kernel as the block counts.
pub fn renewal_exact(t_max: usize) -> RenewalModel {
    let mut scaled: Vec<BigUint> = Vec::with_capacity(t_max + 1);
    scaled.push(BigUint::zero());
    let mut kernel = TwoLetterKernel::new();
    let mut p = BigUint::one();
    for _ in 1..=t_max {
        let prev = &p + scaled.last().expect("non-empty");
        scaled.push(kernel.value());
        kernel.advance(&prev);
        p *= 3u32;
    }
    RenewalModel { scaled, mc: None }
}

/// Number of pmf terms used by the sampler; the tail beyond is below `1e-27`.
const SAMPLER_TERMS: usize = 160;
const CHUNK: u64 = 4096;

fn cumulative_pmf() -> Vec<f64> {
    let mut acc = BigRational::zero();
    (2..=SAMPLER_TERMS)
        .map(|k| {
            acc += s_pmf(k);
            acc.to_f64().unwrap_or(1.0)
        })
        .collect()
}

fn draw_s(cdf: &[f64], rng: &mut ChaCha8Rng) -> usize {
    let u: f64 = rng.gen();
    let i = cdf.partition_point(|&c| c <= u);
    2 + i.min(cdf.len() - 1)
}

/// Monte Carlo estimate of `E(Y_t)` from i.i.d. draws of `S`.
///
/// Samples are grouped in chunks of 4096; chunk `c` draws from a ChaCha8
/// stream `c` keyed by `seed`, so the result does not depend on `threads`.
pub fn renewal_mc(t: usize, samples: u64, seed: u64, threads: Option<usize>) -> Result<MonteCarlo> {
    if samples == 0 {
        return Err(Error::Degenerate("renewal Monte Carlo needs samples >= 1"));
    }
    let cdf = cumulative_pmf();
    let chunks = samples.div_ceil(CHUNK);
    let (sum, sum_sq) = in_pool(threads, || {
        (0..chunks)
            .into_par_iter()
            .map(|c| {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                rng.set_stream(c);
                let n = CHUNK.min(samples - c * CHUNK);
                let mut s = 0u128;
                let mut s2 = 0u128;
                for _ in 0..n {
                    let mut epoch = 0usize;
                    let mut y = 0u128;
                    loop {
                        epoch += draw_s(&cdf, &mut rng);
                        if epoch > t {
                            break;
                        }
                        y += 1;
                    }
                    s += y;
                    s2 += y * y;
                }
                (s, s2)
            })
            .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1))
    });
    let n = samples as f64;
    let mean = sum as f64 / n;
    let std_err = if samples > 1 {
        let var = (sum_sq as f64 - (sum as f64) * mean) / (n - 1.0);
        (var.max(0.0) / n).sqrt()
    } else {
        0.0
    };
    Ok(MonteCarlo {
        t,
        estimate: mean,
        std_err,
        samples,
        seed,
    })
}

/// The exact integers behind the comparison of `Σ ω` with the renewal sum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SandwichReport {
    pub t: usize,
    /// `3^t·A(t)` with `A(t) = Σ_{k=2}^{t−1} E(Y_{t−k}) (2^k − 2)/3^k`.
    pub lower: BigUint,
    /// `Σ_{|σ|=t} ω(σ) − e(t)`, i.e. `3^t·(B(t) − e(t)/3^t)`.
    pub middle: BigUint,
    /// `3^t·(A(t) + 2)`.
    pub upper: BigUint,
    pub holds: bool,
}

impl SandwichReport {
    pub fn lower_over_t(&self) -> BigRational {
        ratio_u(self.lower.clone(), pow3(self.t) * BigUint::from(self.t))
    }

    /// `B(t)/t` with `B(t) = Σ ω / 3^t`.
    pub fn normalized_over_t(&self) -> BigRational {
        let sum = &self.middle + at_most_two(self.t);
        ratio_u(sum, pow3(self.t) * BigUint::from(self.t))
    }
}

/// Sandwich reports for every `t` in `3..=t_max`.
pub fn lemma6_sandwiches(t_max: usize) -> Result<Vec<SandwichReport>> {
    if t_max < 3 {
        return Err(Error::Degenerate("sandwich needs t >= 3"));
    }
    let model = renewal_exact(t_max);
    let omegas = omega_sums(t_max);
    let mut kernel = TwoLetterKernel::new();
    let mut out = Vec::new();
    let mut p = BigUint::one();
    for n in 1..=t_max {
        p *= 3u32;
        // Z(0) = 0, so including k = t in the kernel sum changes nothing.
        let lower = kernel.value();
        kernel.advance(model.scaled(n - 1));
        if n < 3 {
            continue;
        }
        let middle = &omegas[n - 1] - at_most_two(n);
        let upper = &lower + (&p << 1u32);
        let holds = lower <= middle && middle <= upper;
        out.push(SandwichReport {
            t: n,
            lower,
            middle,
            upper,
            holds,
        });
    }
    Ok(out)
}

pub fn lemma6_sandwich(t: usize) -> Result<SandwichReport> {
    Ok(lemma6_sandwiches(t)?.pop().expect("t >= 3"))
}
