//! Words over the alphabet `{1, 2, 3}`.
//!
//! A word `i_1 i_2 ... i_k` addresses the subtriangle obtained by applying the
//! contractions `T_{i_1}`, ..., `T_{i_k}` to the outer triangle. The empty word
//! addresses the outer triangle itself. Every vertex of the networks built in
//! [`crate::network`] is a word, so the type is small, `Copy` and hashable.
//!
//! Letters are packed two bits per position (letter − 1, position `i` at bits
//! `2i..2i + 2`); bits past the length are always zero.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Longest word representable by [`Word`].
pub const MAX_LEN: usize = 32;

/// A finite word over `{1, 2, 3}`, possibly empty.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Word {
    bits: u64,
    len: u8,
}

#[inline]
fn letter_bit(letter: u8) -> u8 {
    1 << (letter - 1)
}

impl Word {
    pub const EMPTY: Word = Word { bits: 0, len: 0 };

    pub fn empty() -> Self {
        Self::EMPTY
    }

    /// Builds a word from letters in `1..=3`.
    pub fn from_letters(letters: &[u8]) -> Result<Self> {
        if letters.len() > MAX_LEN {
            return Err(Error::WordTooLong { max: MAX_LEN });
        }
        let mut w = Word::EMPTY;
        for &l in letters {
            if !(1..=3).contains(&l) {
                return Err(Error::InvalidLetter(char::from(b'0'.wrapping_add(l))));
            }
            w = w.push_unchecked(l);
        }
        Ok(w)
    }

    /// Parses a word, accepting `-` (and the empty string) as the empty word.
    pub fn parse(s: &str) -> Result<Self> {
        if s == "-" {
            return Ok(Word::EMPTY);
        }
        if s.chars().count() > MAX_LEN {
            return Err(Error::WordTooLong { max: MAX_LEN });
        }
        let mut w = Word::EMPTY;
        for c in s.chars() {
            let l = match c {
                '1' => 1,
                '2' => 2,
                '3' => 3,
                other => return Err(Error::InvalidLetter(other)),
            };
            w = w.push_unchecked(l);
        }
        Ok(w)
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len as usize
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Letter at 0-based position `i`. Panics when `i >= len`.
    #[inline]
    pub fn letter(&self, i: usize) -> u8 {
        assert!(
            i < self.len(),
            "letter index {i} out of range for length {}",
            self.len
        );
        ((self.bits >> (2 * i)) & 0b11) as u8 + 1
    }

    pub fn letters(&self) -> impl Iterator<Item = u8> + '_ {
        (0..self.len()).map(move |i| self.letter(i))
    }

    pub fn to_letters(&self) -> Vec<u8> {
        self.letters().collect()
    }

    pub fn first(&self) -> Option<u8> {
        (!self.is_empty()).then(|| self.letter(0))
    }

    pub fn last(&self) -> Option<u8> {
        (!self.is_empty()).then(|| self.letter(self.len() - 1))
    }

    /// Appends a letter; `None` if the word is already [`MAX_LEN`] long.
    pub fn push(self, letter: u8) -> Option<Self> {
        assert!((1..=3).contains(&letter), "letter {letter} not in 1..=3");
        (self.len() < MAX_LEN).then(|| self.push_unchecked(letter))
    }

    #[inline]
    pub(crate) fn push_unchecked(self, letter: u8) -> Self {
        debug_assert!(self.len() < MAX_LEN && (1..=3).contains(&letter));
        Word {
            bits: self.bits | (u64::from(letter - 1) << (2 * self.len)),
            len: self.len + 1,
        }
    }

    /// Appends `count` copies of `letter`.
    pub(crate) fn push_run(mut self, letter: u8, count: usize) -> Self {
        for _ in 0..count {
            self = self.push_unchecked(letter);
        }
        self
    }

    /// The first `m` letters.
    #[inline]
    pub fn prefix(&self, m: usize) -> Self {
        let m = m.min(self.len());
        let mask = if m == 32 {
            u64::MAX
        } else {
            (1u64 << (2 * m)) - 1
        };
        Word {
            bits: self.bits & mask,
            len: m as u8,
        }
    }

    /// The letters from position `m` on.
    #[inline]
    pub fn suffix_from(&self, m: usize) -> Self {
        let m = m.min(self.len());
        let bits = if m == 32 { 0 } else { self.bits >> (2 * m) };
        Word {
            bits,
            len: self.len - m as u8,
        }
    }

    pub fn concat(&self, other: &Word) -> Result<Self> {
        if self.len() + other.len() > MAX_LEN {
            return Err(Error::WordTooLong { max: MAX_LEN });
        }
        if other.is_empty() {
            return Ok(*self);
        }
        Ok(Word {
            bits: self.bits | (other.bits << (2 * self.len)),
            len: self.len + other.len,
        })
    }

    /// Length of the longest common prefix of `self` and `other`.
    #[inline]
    pub fn common_prefix_len(&self, other: &Word) -> usize {
        let n = self.len().min(other.len());
        let diff = self.bits ^ other.bits;
        if diff == 0 {
            n
        } else {
            n.min(diff.trailing_zeros() as usize / 2)
        }
    }

    /// Bit set of the letters occurring in the word (bit `l − 1` for letter `l`).
    pub fn letter_set(&self) -> u8 {
        self.letters().fold(0, |acc, l| acc | letter_bit(l))
    }

    /// Number of distinct letters, `#σ`.
    pub fn distinct_letters(&self) -> u32 {
        self.letter_set().count_ones()
    }

    /// True iff `self` is a strict prefix of `other`.
    pub fn is_strict_prefix_of(&self, other: &Word) -> bool {
        self.len() < other.len() && other.prefix(self.len()) == *self
    }
}

impl Ord for Word {
    /// Lexicographic order; a prefix sorts before its extensions.
    fn cmp(&self, other: &Self) -> Ordering {
        let p = self.common_prefix_len(other);
        if p < self.len() && p < other.len() {
            self.letter(p).cmp(&other.letter(p))
        } else {
            self.len.cmp(&other.len)
        }
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Renders the letters, with the empty word as `-`.
impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("-");
        }
        let s: String = self.letters().map(|l| char::from(b'0' + l)).collect();
        f.write_str(&s)
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self})")
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Word::parse(s)
    }
}

/// The blocks `τ_1 ... τ_l` of a nonempty word, left to right.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalDecomposition {
    pub blocks: Vec<Word>,
}

impl NormalDecomposition {
    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    pub fn block_lengths(&self) -> Vec<usize> {
        self.blocks.iter().map(Word::len).collect()
    }

    /// Concatenation of the blocks.
    pub fn join(&self) -> Word {
        self.blocks.iter().fold(Word::EMPTY, |acc, b| {
            acc.concat(b).expect("blocks come from a valid word")
        })
    }
}

/// True iff `tau` is a strict prefix of `sigma`.
pub fn is_prefix(tau: &Word, sigma: &Word) -> bool {
    tau.is_strict_prefix_of(sigma)
}

/// Combinatorial neighbor test.
///
/// After stripping the longest common prefix: if one remainder is empty the
/// words are neighbors iff the other remainder misses some letter; otherwise,
/// with first letters `i != j`, iff the remainders read `i j^k` and `j i^k'`.
/// Equal words are never neighbors.
pub fn are_neighbors(sigma: &Word, tau: &Word) -> bool {
    if sigma == tau {
        return false;
    }
    let p = sigma.common_prefix_len(tau);
    let s = sigma.suffix_from(p);
    let t = tau.suffix_from(p);
    if s.is_empty() {
        return t.distinct_letters() <= 2;
    }
    if t.is_empty() {
        return s.distinct_letters() <= 2;
    }
    let i = s.letter(0);
    let j = t.letter(0);
    (1..s.len()).all(|x| s.letter(x) == j) && (1..t.len()).all(|x| t.letter(x) == i)
}

/// Length of the shortest prefix left after removing the maximal suffix that
/// uses at most two distinct letters.
fn coarsen_len(sigma: &Word) -> usize {
    let mut seen = 0u8;
    for pos in (0..sigma.len()).rev() {
        seen |= letter_bit(sigma.letter(pos));
        if seen.count_ones() > 2 {
            return pos + 1;
        }
    }
    0
}

/// Removes the maximal suffix containing at most two distinct letters.
///
/// The result is the shortest prefix of `sigma` that is also its neighbor.
pub fn coarsen(sigma: &Word) -> Result<Word> {
    if sigma.is_empty() {
        return Err(Error::EmptyWord);
    }
    Ok(sigma.prefix(coarsen_len(sigma)))
}

/// Number of [`coarsen`] steps needed to reach the empty word (0 for the
/// empty word). Equals the geodesic distance from `sigma` to the root.
pub fn coarsen_steps(sigma: &Word) -> u32 {
    let mut w = *sigma;
    let mut steps = 0;
    while !w.is_empty() {
        w = w.prefix(coarsen_len(&w));
        steps += 1;
    }
    steps
}

/// `coarsen_steps − 1` for nonempty words and 0 for the empty word: the least
/// number of moves after which the subtriangle touches the outer boundary.
pub fn boundary_moves(sigma: &Word) -> u32 {
    coarsen_steps(sigma).saturating_sub(1)
}

/// Splits `sigma` into the blocks peeled off by repeated [`coarsen`].
pub fn normal_decomposition(sigma: &Word) -> Result<NormalDecomposition> {
    if sigma.is_empty() {
        return Err(Error::EmptyWord);
    }
    let mut blocks = Vec::new();
    let mut end = sigma.len();
    while end > 0 {
        let head = sigma.prefix(end);
        let start = coarsen_len(&head);
        blocks.push(head.suffix_from(start));
        end = start;
    }
    blocks.reverse();
    Ok(NormalDecomposition { blocks })
}

/// All words of length `len` in lexicographic order.
pub fn words_of_length(len: usize) -> impl Iterator<Item = Word> {
    assert!(len <= MAX_LEN);
    let total = 3u64
        .checked_pow(len as u32)
        .expect("3^len fits in u64 for enumerable lengths");
    (0..total).map(move |mut code| {
        let mut letters = [0u8; MAX_LEN];
        for slot in letters[..len].iter_mut().rev() {
            *slot = (code % 3) as u8 + 1;
            code /= 3;
        }
        Word::from_letters(&letters[..len]).expect("valid letters")
    })
}

/// All words of length at most `max_len`, shortest first.
pub fn words_up_to(max_len: usize) -> impl Iterator<Item = Word> {
    (0..=max_len).flat_map(words_of_length)
}
