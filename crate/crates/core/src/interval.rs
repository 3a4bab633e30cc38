//! Prefix-aligned (dyadic) subintervals of the full width-`n` universe.

use std::cmp::Ordering;
use std::fmt;

use crate::bitcore::{lex_cmp, BitString};
use crate::error::{Error, Result};

/// All width-`n` strings extending a fixed prefix. Its size is `2^(n - k)`
/// for a prefix of length `k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DyadicInterval {
    width: usize,
    prefix: BitString,
}

impl DyadicInterval {
    /// The whole universe `{0,1}^n`: empty prefix.
    pub fn full(width: usize) -> Self {
        DyadicInterval {
            width,
            prefix: BitString::zeros(0),
        }
    }

    pub fn new(width: usize, prefix: BitString) -> Result<Self> {
        if prefix.width() > width {
            return Err(Error::WidthMismatch {
                expected: width,
                found: prefix.width(),
            });
        }
        Ok(DyadicInterval { width, prefix })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn prefix(&self) -> &BitString {
        &self.prefix
    }

    pub fn depth(&self) -> usize {
        self.prefix.width()
    }

    pub fn is_singleton(&self) -> bool {
        self.prefix.width() == self.width
    }

    /// `log2` of the member count.
    pub fn size_log2(&self) -> usize {
        self.width - self.prefix.width()
    }

    /// Member count, `None` if it does not fit in a `u128`.
    pub fn size(&self) -> Option<u128> {
        1u128.checked_shl(self.size_log2() as u32)
    }

    /// Left half extends the prefix by 0, right half by 1.
    pub fn split(&self) -> Result<(DyadicInterval, DyadicInterval)> {
        if self.is_singleton() {
            return Err(Error::SingletonSplit(self.to_string()));
        }
        Ok((self.child(false), self.child(true)))
    }

    /// The half selected by `bit`.
    pub fn child(&self, bit: bool) -> DyadicInterval {
        debug_assert!(!self.is_singleton());
        DyadicInterval {
            width: self.width,
            prefix: self.prefix.with_bit(bit),
        }
    }

    pub fn contains(&self, x: &BitString) -> Result<bool> {
        if x.width() != self.width {
            return Err(Error::WidthMismatch {
                expected: self.width,
                found: x.width(),
            });
        }
        Ok(x.starts_with(&self.prefix))
    }

    /// `(glb, lub)`: the prefix padded with zeros and with ones.
    pub fn bounds(&self) -> (BitString, BitString) {
        (
            self.prefix.padded(self.width, false),
            self.prefix.padded(self.width, true),
        )
    }

    /// Membership decided by the bounds sandwich `glb <= x <= lub`.
    pub fn contains_by_bounds(&self, x: &BitString) -> Result<bool> {
        let (lo, hi) = self.bounds();
        Ok(lex_cmp(&lo, x)? != Ordering::Greater && lex_cmp(x, &hi)? != Ordering::Greater)
    }
}

/// Trace form `n:prefix`, e.g. `3:01`.
impl fmt::Display for DyadicInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.width, self.prefix)
    }
}
