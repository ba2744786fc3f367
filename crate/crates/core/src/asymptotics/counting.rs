//! Exact block counts behind the normal decomposition.
//!
//! A word of length `n` decomposes into blocks of lengths `(k_1, ..., k_l)`
//! with `k_1 >= 1` and `k_i >= 2` afterwards. The number of words with a given
//! profile factors as a product of per-block counts, and appending a block of
//! length `k` multiplies the count by [`two_letter`]`(k)`. Summing over
//! profiles is therefore a convolution against `2^k − 2`, which
//! [`TwoLetterKernel`] evaluates with two running sums.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

fn pow2(k: usize) -> BigUint {
    BigUint::one() << k
}

/// Words of length `k` over a fixed pair of letters using both: `2^k − 2`.
pub fn two_letter(k: usize) -> BigUint {
    assert!(k >= 1);
    pow2(k) - 2u32
}

/// Words of length `k` over a fixed pair of letters using both and ending in a
/// fixed one of them: `2^{k−1} − 1`.
pub fn two_letter_ending(k: usize) -> BigUint {
    assert!(k >= 1);
    pow2(k - 1) - 1u32
}

/// Words of length `k` over `{1,2,3}` with at most two distinct letters,
/// ending in a fixed letter: `2^k − 1`.
pub fn at_most_two_ending(k: usize) -> BigUint {
    assert!(k >= 1);
    pow2(k) - 1u32
}

/// Words of length `k` over `{1,2,3}` with at most two distinct letters, i.e.
/// the words that reach the root in one coarsening step: `3·2^k − 3`.
pub fn at_most_two(k: usize) -> BigUint {
    assert!(k >= 1);
    pow2(k) * 3u32 - 3u32
}

/// Number of words whose normal decomposition has exactly these block lengths.
pub fn block_profile_count(profile: &[usize]) -> Result<BigUint> {
    let valid = !profile.is_empty() && profile[0] >= 1 && profile[1..].iter().all(|&k| k >= 2);
    if !valid {
        return Err(Error::InvalidComposition(profile.to_vec()));
    }
    let l = profile.len();
    if l == 1 {
        return Ok(at_most_two(profile[0]));
    }
    let mut count = at_most_two_ending(profile[0]);
    for &k in &profile[1..l - 1] {
        count *= two_letter_ending(k) * 2u32;
    }
    count *= two_letter(profile[l - 1]) * 3u32;
    Ok(count)
}

/// Incremental evaluation of `R(n) = Σ_{k=2}^{n} (2^k − 2)·c(n−k)`.
///
/// With `P(n) = Σ 2^k c(n−k)` and `Q(n) = Σ c(n−k)` over the same range,
/// `P(n+1) = 2P(n) + 4c(n−1)` and `Q(n+1) = Q(n) + c(n−1)`, so each step is
/// two big-integer additions and a shift.
#[derive(Debug, Clone, Default)]
pub struct TwoLetterKernel {
    n: usize,
    weighted: BigUint,
    plain: BigUint,
}

impl TwoLetterKernel {
    /// Kernel positioned at `n = 1`, where the sum is empty.
    pub fn new() -> Self {
        TwoLetterKernel {
            n: 1,
            weighted: BigUint::zero(),
            plain: BigUint::zero(),
        }
    }

    pub fn position(&self) -> usize {
        self.n
    }

    /// `R(n)` at the current position.
    pub fn value(&self) -> BigUint {
        &self.weighted - (&self.plain << 1u32)
    }

    /// Moves from `n` to `n + 1`; `c_prev` must be `c(n − 1)`.
    pub fn advance(&mut self, c_prev: &BigUint) {
        self.weighted = (&self.weighted << 1u32) + (c_prev << 2u32);
        self.plain += c_prev;
        self.n += 1;
    }
}

/// Exact sums over all words of each length `n = 1..=up_to`:
/// `(3^n as a sum of profile counts, Σ_{|σ|=n} ω(σ))`.
///
/// `count(n) = e(n) + Σ_k T(k)·count(n−k)` and
/// `omega(n) = e(n) + Σ_k T(k)·(omega(n−k) + count(n−k))`, the second because
/// appending a block raises ω by one for every word counted.
pub fn profile_sums(up_to: usize) -> Vec<(BigUint, BigUint)> {
    let mut counts = vec![BigUint::zero()];
    let mut omegas = vec![BigUint::zero()];
    let mut count_kernel = TwoLetterKernel::new();
    let mut omega_kernel = TwoLetterKernel::new();
    for n in 1..=up_to {
        let e = at_most_two(n);
        counts.push(&e + count_kernel.value());
        omegas.push(&e + omega_kernel.value());
        count_kernel.advance(&counts[n - 1]);
        omega_kernel.advance(&(&omegas[n - 1] + &counts[n - 1]));
    }
    counts.into_iter().zip(omegas).skip(1).collect()
}

/// `Σ_{|σ|=t} ω(σ)` for every `t` in `1..=up_to`, index `t − 1`.
pub fn omega_sums(up_to: usize) -> Vec<BigUint> {
    profile_sums(up_to).into_iter().map(|(_, o)| o).collect()
}

/// `Σ_{|σ|=t} ω(σ)`; zero for `t = 0`.
pub fn omega_sum(t: usize) -> BigUint {
    if t == 0 {
        return BigUint::zero();
    }
    omega_sums(t).pop().expect("t >= 1")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountingRow {
    pub k: usize,
    pub two_letter: BigUint,
    pub two_letter_ending: BigUint,
    pub at_most_two_ending: BigUint,
    pub at_most_two: BigUint,
    pub omega_sum: BigUint,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountingTable {
    pub rows: Vec<CountingRow>,
}

impl CountingTable {
    pub fn up_to(&self) -> usize {
        self.rows.len()
    }

    pub fn row(&self, k: usize) -> Option<&CountingRow> {
        k.checked_sub(1).and_then(|i| self.rows.get(i))
    }
}

pub fn counting_table(up_to: usize) -> Result<CountingTable> {
    if up_to == 0 {
        return Err(Error::Degenerate("counting table needs up_to >= 1"));
    }
    let rows = omega_sums(up_to)
        .into_iter()
        .enumerate()
        .map(|(i, omega_sum)| {
            let k = i + 1;
            CountingRow {
                k,
                two_letter: two_letter(k),
                two_letter_ending: two_letter_ending(k),
                at_most_two_ending: at_most_two_ending(k),
                at_most_two: at_most_two(k),
                omega_sum,
            }
        })
        .collect();
    Ok(CountingTable { rows })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: u64) -> BigUint {
        BigUint::from(v)
    }

    #[test]
    fn closed_forms_at_three() {
        let t = counting_table(3).unwrap();
        let r = t.row(3).unwrap();
        assert_eq!(r.two_letter, big(6));
        assert_eq!(r.at_most_two_ending, big(7));
        assert_eq!(r.two_letter_ending, big(3));
        assert_eq!(r.at_most_two, big(21));
        assert_eq!(t.row(1).unwrap().at_most_two, big(3));
        assert_eq!(t.row(1).unwrap().two_letter, big(0));
        assert!(t.row(0).is_none());
        assert!(counting_table(0).is_err());
    }

    #[test]
    fn profile_counts() {
        assert_eq!(block_profile_count(&[1, 2]).unwrap(), big(6));
        assert_eq!(block_profile_count(&[3]).unwrap(), big(21));
        assert_eq!(block_profile_count(&[1, 2, 2]).unwrap(), big(12));
        assert!(block_profile_count(&[]).is_err());
        assert!(block_profile_count(&[0, 2]).is_err());
        assert!(block_profile_count(&[2, 1]).is_err());
    }

    #[test]
    fn small_omega_sums() {
        assert_eq!(omega_sum(1), big(3));
        assert_eq!(omega_sum(2), big(9));
        assert_eq!(omega_sum(3), big(33));
        assert_eq!(omega_sum(0), big(0));
    }

    #[test]
    fn kernel_matches_direct_sum() {
        let c: Vec<BigUint> = (0..30u64).map(|m| big(m * m + 3 * m + 1)).collect();
        let mut kernel = TwoLetterKernel::new();
        for n in 1..30usize {
            let direct: BigUint = (2..=n).map(|k| two_letter(k) * &c[n - k]).sum();
            assert_eq!(kernel.value(), direct, "n = {n}");
            kernel.advance(&c[n - 1]);
        }
    }
}
