//! Fixed-width bitstrings with lexicographic order and the bitstring-valued
//! ultrametric.
//!
//! Position 0 is the first choice taken from the root of the binary tree, so
//! bits are packed most-significant-first: position `i` lives in word `i / 64`
//! at bit `63 - i % 64`. With that layout lexicographic order is plain numeric
//! order of the words, and the first differing position falls out of a
//! leading-zero count.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

const WORD: usize = 64;

/// A binary sequence of fixed width. Width 0 is the single empty string.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BitString {
    width: usize,
    // Unused low bits of the last word are always zero.
    words: Vec<u64>,
}

#[inline]
fn mask(pos: usize) -> u64 {
    1u64 << (WORD - 1 - pos % WORD)
}

impl BitString {
    /// The all-zero string of the given width.
    pub fn zeros(width: usize) -> Self {
        BitString {
            width,
            words: vec![0; width.div_ceil(WORD)],
        }
    }

    /// The all-one string of the given width.
    pub fn ones(width: usize) -> Self {
        let mut s = Self::zeros(width);
        for w in s.words.iter_mut() {
            *w = u64::MAX;
        }
        s.clear_tail();
        s
    }

    /// The string with a single 1 at `pos`.
    pub fn one_hot(width: usize, pos: usize) -> Self {
        let mut s = Self::zeros(width);
        s.set(pos, true);
        s
    }

    pub fn from_bits<I: IntoIterator<Item = bool>>(bits: I) -> Self {
        let mut s = Self::zeros(0);
        for b in bits {
            s.push(b);
        }
        s
    }

    /// The width-`width` string whose binary numeral (position 0 most
    /// significant) equals `index`.
    ///
    /// Panics if `width > 64` or `index` does not fit in `width` bits.
    pub fn from_index(width: usize, index: u64) -> Self {
        assert!(width <= WORD, "from_index supports widths up to 64");
        assert!(
            width == WORD || index >> width == 0,
            "index {index} does not fit in {width} bits"
        );
        let mut s = Self::zeros(width);
        if width > 0 {
            s.words[0] = index << (WORD - width);
        }
        s
    }

    /// Numeric value of the string read as a binary numeral, position 0 most
    /// significant. `None` for widths above 64.
    pub fn to_index(&self) -> Option<u64> {
        match self.width {
            0 => Some(0),
            w if w <= WORD => Some(self.words[0] >> (WORD - w)),
            _ => None,
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn is_empty(&self) -> bool {
        self.width == 0
    }

    /// Bit at `pos`. Panics when `pos >= width`.
    pub fn get(&self, pos: usize) -> bool {
        assert!(
            pos < self.width,
            "position {pos} out of range for width {}",
            self.width
        );
        self.words[pos / WORD] & mask(pos) != 0
    }

    pub fn set(&mut self, pos: usize, bit: bool) {
        assert!(
            pos < self.width,
            "position {pos} out of range for width {}",
            self.width
        );
        if bit {
            self.words[pos / WORD] |= mask(pos);
        } else {
            self.words[pos / WORD] &= !mask(pos);
        }
    }

    /// Appends one bit at the end (the next position away from the root).
    pub fn push(&mut self, bit: bool) {
        if self.width.is_multiple_of(WORD) {
            self.words.push(0);
        }
        self.width += 1;
        self.set(self.width - 1, bit);
    }

    /// Copy extended by one bit.
    pub fn with_bit(&self, bit: bool) -> Self {
        let mut s = self.clone();
        s.push(bit);
        s
    }

    /// Copy extended to `width` by repeating `fill`.
    pub fn padded(&self, width: usize, fill: bool) -> Self {
        let mut s = self.clone();
        while s.width < width {
            s.push(fill);
        }
        s
    }

    /// The first `len` bits.
    pub fn prefix(&self, len: usize) -> Self {
        assert!(len <= self.width);
        let mut s = BitString {
            width: len,
            words: self.words[..len.div_ceil(WORD)].to_vec(),
        };
        s.clear_tail();
        s
    }

    /// True iff `prefix` is an initial segment of `self`.
    pub fn starts_with(&self, prefix: &BitString) -> bool {
        prefix.width <= self.width && self.prefix(prefix.width) == *prefix
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.width).map(move |i| self.get(i))
    }

    /// Bitwise complement at the same width.
    pub fn inverted(&self) -> Self {
        let mut s = self.clone();
        for w in s.words.iter_mut() {
            *w = !*w;
        }
        s.clear_tail();
        s
    }

    /// All `2^width` strings in lexicographic order. Panics above width 63.
    pub fn universe(width: usize) -> impl Iterator<Item = BitString> + Clone {
        assert!(
            width < WORD,
            "universe enumeration supports widths up to 63"
        );
        (0..1u64 << width).map(move |i| BitString::from_index(width, i))
    }

    fn clear_tail(&mut self) {
        let rem = self.width % WORD;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= !(u64::MAX >> rem);
            }
        }
    }

    fn check_width(&self, other: &BitString) -> Result<()> {
        if self.width != other.width {
            return Err(Error::WidthMismatch {
                expected: self.width,
                found: other.width,
            });
        }
        Ok(())
    }
}

/// Lexicographic comparison of equal-width strings, 0 < 1 at the first
/// differing position.
pub fn lex_cmp(a: &BitString, b: &BitString) -> Result<Ordering> {
    a.check_width(b)?;
    Ok(a.words.cmp(&b.words))
}

/// The least position where `a` and `b` differ, `None` when equal.
pub fn first_diff(a: &BitString, b: &BitString) -> Result<Option<usize>> {
    a.check_width(b)?;
    Ok(a.words
        .iter()
        .zip(&b.words)
        .enumerate()
        .find_map(|(i, (x, y))| {
            let d = x ^ y;
            (d != 0).then(|| i * WORD + d.leading_zeros() as usize)
        }))
}

/// Distance between two strings: the all-zero string when equal, otherwise
/// the one-hot string marking the first differing position. Distances are
/// compared with [`lex_cmp`], so an earlier split is a larger distance.
pub fn ultra_distance(a: &BitString, b: &BitString) -> Result<BitString> {
    Ok(match first_diff(a, b)? {
        Some(p) => BitString::one_hot(a.width, p),
        None => BitString::zeros(a.width),
    })
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.iter() {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitString({}:{})", self.width, self)
    }
}

impl FromStr for BitString {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut s = BitString::zeros(0);
        for (position, c) in text.chars().enumerate() {
            match c {
                '0' => s.push(false),
                '1' => s.push(true),
                found => return Err(Error::Parse { position, found }),
            }
        }
        Ok(s)
    }
}

/// Parses the textual `0`/`1` form.
pub fn parse_bits(text: &str) -> Result<BitString> {
    text.parse()
}

impl Serialize for BitString {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for BitString {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}
