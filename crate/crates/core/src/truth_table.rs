//! Packed truth tables.
//!
//! Bit `i` of a table is `f(x)` where `x` is the `n`-bit binary expansion of
//! `i`, with variable `X_j` carried by bit `j - 1` of the index.

use std::fmt;

use crate::error::{Error, Result};

/// Largest arity a truth table may be materialized at.
pub const N_MAX: usize = 30;

/// An `n`-variable Boolean function stored as a packed bit vector of length `2^n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TruthTable {
    n: usize,
    words: Vec<u64>,
}

fn word_count(n: usize) -> usize {
    if n <= 6 {
        1
    } else {
        1 << (n - 6)
    }
}

fn tail_mask(n: usize) -> u64 {
    if n >= 6 {
        u64::MAX
    } else {
        (1u64 << (1 << n)) - 1
    }
}

impl TruthTable {
    /// The constant-zero function on `n` variables.
    pub fn zero(n: usize) -> Result<Self> {
        if n == 0 || n > N_MAX {
            return Err(Error::ArityOutOfRange { n, max: N_MAX });
        }
        Ok(Self {
            n,
            words: vec![0; word_count(n)],
        })
    }

    /// Builds a table by evaluating `f` at every input index.
    pub fn from_fn(n: usize, mut f: impl FnMut(u64) -> bool) -> Result<Self> {
        let mut t = Self::zero(n)?;
        for x in 0..t.len() {
            if f(x) {
                t.words[(x >> 6) as usize] |= 1 << (x & 63);
            }
        }
        Ok(t)
    }

    /// Table for `n <= 6` whose bits are the low `2^n` bits of `bits`.
    pub fn from_u64(n: usize, bits: u64) -> Result<Self> {
        if n > 6 {
            return Err(Error::ArityOutOfRange { n, max: 6 });
        }
        let mut t = Self::zero(n)?;
        t.words[0] = bits & tail_mask(n);
        Ok(t)
    }

    /// Builds a table from packed little-endian words.
    pub fn from_words(n: usize, mut words: Vec<u64>) -> Result<Self> {
        if n == 0 || n > N_MAX {
            return Err(Error::ArityOutOfRange { n, max: N_MAX });
        }
        let expected = word_count(n);
        if words.len() != expected {
            return Err(Error::ArityMismatch {
                expected,
                found: words.len(),
            });
        }
        words[expected - 1] &= tail_mask(n);
        Ok(Self { n, words })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of inputs, `2^n`.
    pub fn len(&self) -> u64 {
        1u64 << self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    /// The low word; the whole table when `n <= 6`.
    pub fn low_word(&self) -> u64 {
        self.words[0]
    }

    #[inline]
    pub fn get(&self, x: u64) -> bool {
        debug_assert!(x < self.len());
        (self.words[(x >> 6) as usize] >> (x & 63)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, x: u64, value: bool) {
        let w = &mut self.words[(x >> 6) as usize];
        let bit = 1u64 << (x & 63);
        if value {
            *w |= bit;
        } else {
            *w &= !bit;
        }
    }

    /// `wt(f)`, the size of the support.
    pub fn weight(&self) -> u64 {
        self.words.iter().map(|w| u64::from(w.count_ones())).sum()
    }

    pub fn is_balanced(&self) -> bool {
        self.weight() == self.len() / 2
    }

    /// `(-1)^f(x)` as `+1` / `-1`.
    #[inline]
    pub fn sign(&self, x: u64) -> i64 {
        if self.get(x) {
            -1
        } else {
            1
        }
    }

    /// The pointwise complement `1 ⊕ f`.
    pub fn complement(&self) -> Self {
        let mut words: Vec<u64> = self.words.iter().map(|w| !w).collect();
        let last = words.len() - 1;
        words[last] &= tail_mask(self.n);
        Self { n: self.n, words }
    }

    /// String reversal of the table: bit `i` of the result is bit `2^n - 1 - i`.
    ///
    /// Equivalently `f^r(x) = f(1_n ⊕ x)`.
    pub fn reverse(&self) -> Self {
        if self.n <= 6 {
            let bits = self.words[0].reverse_bits() >> (64 - (1u32 << self.n));
            return Self {
                n: self.n,
                words: vec![bits],
            };
        }
        let words = self.words.iter().rev().map(|w| w.reverse_bits()).collect();
        Self { n: self.n, words }
    }

    /// Concatenates `self` (low half) and `upper` into an `(n+1)`-variable table.
    pub fn concat(&self, upper: &TruthTable) -> Result<Self> {
        if upper.n != self.n {
            return Err(Error::ArityMismatch {
                expected: self.n,
                found: upper.n,
            });
        }
        let n = self.n + 1;
        if n > N_MAX {
            return Err(Error::ArityOutOfRange { n, max: N_MAX });
        }
        if n <= 6 {
            let half = 1u32 << self.n;
            let bits = self.words[0] | (upper.words[0] << half);
            return Self::from_u64(n, bits);
        }
        let mut words = self.words.clone();
        words.extend_from_slice(&upper.words);
        Ok(Self { n, words })
    }

    /// Lowercase hex encoding with `max(1, 2^n / 4)` digits; index 0 is the
    /// least significant bit of the last digit.
    pub fn to_hex(&self) -> String {
        let digits = hex_digits(self.n);
        let mut out = String::with_capacity(digits);
        for d in (0..digits).rev() {
            let bit = (d * 4) as u64;
            let nibble = (self.words[(bit >> 6) as usize] >> (bit & 63)) & 0xf;
            out.push(char::from_digit(nibble as u32, 16).unwrap());
        }
        out
    }

    /// Parses the encoding produced by [`TruthTable::to_hex`]. An optional `0x`
    /// prefix is accepted.
    pub fn from_hex(n: usize, text: &str) -> Result<Self> {
        let mut t = Self::zero(n)?;
        let body = text
            .strip_prefix("0x")
            .or_else(|| text.strip_prefix("0X"))
            .unwrap_or(text);
        let offset = text.len() - body.len();
        let digits = hex_digits(n);
        let found = body.chars().count();
        if found != digits {
            return Err(Error::HexLength {
                n,
                expected: digits,
                found,
            });
        }
        for (pos, ch) in body.chars().enumerate() {
            let nibble = ch.to_digit(16).ok_or(Error::HexDigit {
                pos: pos + offset,
                ch,
            })? as u64;
            let bit = ((digits - 1 - pos) * 4) as u64;
            t.words[(bit >> 6) as usize] |= nibble << (bit & 63);
        }
        if n < 2 && t.words[0] & !tail_mask(n) != 0 {
            return Err(Error::HexPadding { n });
        }
        Ok(t)
    }

    /// Bit string in index order (`bits[0]` first), as the functions are
    /// written when read as a string of length `2^n`.
    pub fn to_bit_string(&self) -> String {
        (0..self.len())
            .map(|x| if self.get(x) { '1' } else { '0' })
            .collect()
    }

    pub fn from_bit_string(text: &str) -> Result<Self> {
        let len = text.len();
        if !len.is_power_of_two() || len < 2 {
            return Err(Error::HexLength {
                n: 0,
                expected: len.next_power_of_two().max(2),
                found: len,
            });
        }
        let n = len.trailing_zeros() as usize;
        let mut t = Self::zero(n)?;
        for (x, ch) in text.chars().enumerate() {
            match ch {
                '0' => {}
                '1' => t.set(x as u64, true),
                _ => return Err(Error::HexDigit { pos: x, ch }),
            }
        }
        Ok(t)
    }
}

pub(crate) fn hex_digits(n: usize) -> usize {
    if n < 2 {
        1
    } else {
        1 << (n - 2)
    }
}

impl fmt::Debug for TruthTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TruthTable(n={}, {})", self.n, self.to_hex())
    }
}

impl fmt::Display for TruthTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}
