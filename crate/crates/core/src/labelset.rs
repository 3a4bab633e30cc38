//! Labelled sets: every point of `{0,1}^n` carries a one-bit membership label.
//!
//! Two backends exist. The bitmap stores `2^n` labels addressed by the numeric
//! value of the point (position 0 most significant), so index order is
//! lexicographic order. The predicate oracle wraps a host-supplied decision
//! procedure for widths where `2^n` labels are not affordable; it only
//! supports [`LabelledSet::label_of`].

use std::fmt;
use std::sync::Arc;

use rand::Rng;

use crate::bitcore::BitString;
use crate::error::{Error, Result};

/// Default maximum width for the bitmap backend (16 Mi labels).
pub const DEFAULT_BITMAP_CAP: usize = 24;

/// Hard ceiling on bitmap widths regardless of the configured cap; indices
/// must stay addressable as `u64` and `usize`.
pub const MAX_BITMAP_WIDTH: usize = 40;

const MAGIC: &[u8; 5] = b"LSET1";
const TAG_BITMAP: u8 = 0x01;

/// Membership predicate for the oracle backend. It is evaluated from
/// concurrent query workers and must be safe to call from any thread.
pub type Predicate = Arc<dyn Fn(&BitString) -> bool + Send + Sync>;

#[derive(Clone)]
enum Backend {
    Bitmap { labels: Vec<u64>, member_count: u64 },
    Oracle(Predicate),
}

/// A point together with its label. This is a view; labels are stored apart
/// from the points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabelledPoint {
    pub point: BitString,
    pub label: bool,
}

impl fmt::Display for LabelledPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.point, u8::from(self.label))
    }
}

/// The labelled set `L(X)` of a subset `X` of `{0,1}^n`.
#[derive(Clone)]
pub struct LabelledSet {
    width: usize,
    backend: Backend,
}

fn check_cap(width: usize, cap: usize) -> Result<()> {
    if width > cap.min(MAX_BITMAP_WIDTH) {
        return Err(Error::BitmapCap {
            width,
            cap: cap.min(MAX_BITMAP_WIDTH),
        });
    }
    Ok(())
}

fn word_count(width: usize) -> usize {
    (1usize << width).div_ceil(64)
}

impl LabelledSet {
    /// Bitmap set whose members are exactly `members`. Duplicates are
    /// tolerated.
    pub fn build_from_members<'a, I>(width: usize, members: I) -> Result<Self>
    where
        I: IntoIterator<Item = &'a BitString>,
    {
        Self::build_from_members_capped(width, members, DEFAULT_BITMAP_CAP)
    }

    pub fn build_from_members_capped<'a, I>(width: usize, members: I, cap: usize) -> Result<Self>
    where
        I: IntoIterator<Item = &'a BitString>,
    {
        check_cap(width, cap)?;
        let mut labels = vec![0u64; word_count(width)];
        for (index, m) in members.into_iter().enumerate() {
            if m.width() != width {
                return Err(Error::MemberWidth {
                    index,
                    expected: width,
                    found: m.width(),
                });
            }
            let i = m.to_index().expect("width within bitmap cap") as usize;
            labels[i / 64] |= 1 << (i % 64);
        }
        Ok(Self::from_words(width, labels))
    }

    /// The empty set `L(∅)`.
    pub fn empty(width: usize) -> Result<Self> {
        check_cap(width, DEFAULT_BITMAP_CAP)?;
        Ok(Self::from_words(width, vec![0; word_count(width)]))
    }

    /// The full universe.
    pub fn full(width: usize) -> Result<Self> {
        Ok(Self::empty(width)?.complement_bitmap())
    }

    /// Bitmap set tabulated from a predicate over every point.
    pub fn from_predicate<F>(width: usize, predicate: F) -> Result<Self>
    where
        F: Fn(&BitString) -> bool,
    {
        Self::from_predicate_capped(width, predicate, DEFAULT_BITMAP_CAP)
    }

    pub fn from_predicate_capped<F>(width: usize, predicate: F, cap: usize) -> Result<Self>
    where
        F: Fn(&BitString) -> bool,
    {
        check_cap(width, cap)?;
        Ok(Self::from_index_fn(width, |i| {
            predicate(&BitString::from_index(width, i))
        }))
    }

    /// Bitmap set with each point a member independently with probability
    /// `density`.
    pub fn random<R: Rng + ?Sized>(width: usize, density: f64, rng: &mut R) -> Result<Self> {
        check_cap(width, DEFAULT_BITMAP_CAP)?;
        let density = density.clamp(0.0, 1.0);
        Ok(Self::from_index_fn(width, |_| rng.gen_bool(density)))
    }

    /// Oracle backend: labels come from `predicate`, nothing is tabulated.
    pub fn oracle<F>(width: usize, predicate: F) -> Self
    where
        F: Fn(&BitString) -> bool + Send + Sync + 'static,
    {
        LabelledSet {
            width,
            backend: Backend::Oracle(Arc::new(predicate)),
        }
    }

    fn from_index_fn(width: usize, mut label: impl FnMut(u64) -> bool) -> Self {
        let mut labels = vec![0u64; word_count(width)];
        for i in 0..(1u64 << width) {
            if label(i) {
                labels[(i / 64) as usize] |= 1 << (i % 64);
            }
        }
        Self::from_words(width, labels)
    }

    fn from_words(width: usize, labels: Vec<u64>) -> Self {
        let member_count = labels.iter().map(|w| u64::from(w.count_ones())).sum();
        LabelledSet {
            width,
            backend: Backend::Bitmap {
                labels,
                member_count,
            },
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn is_bitmap(&self) -> bool {
        matches!(self.backend, Backend::Bitmap { .. })
    }

    /// Universe size `2^n`, for bitmap-capable widths.
    pub fn universe_size(&self) -> u64 {
        1u64 << self.width
    }

    /// Number of points labelled 1; `None` for the oracle backend.
    pub fn member_count(&self) -> Option<u64> {
        match &self.backend {
            Backend::Bitmap { member_count, .. } => Some(*member_count),
            Backend::Oracle(_) => None,
        }
    }

    fn words(&self, op: &'static str) -> Result<&[u64]> {
        match &self.backend {
            Backend::Bitmap { labels, .. } => Ok(labels),
            Backend::Oracle(_) => Err(Error::OracleUnsupported(op)),
        }
    }

    fn check_width(&self, x: &BitString) -> Result<()> {
        if x.width() != self.width {
            return Err(Error::WidthMismatch {
                expected: self.width,
                found: x.width(),
            });
        }
        Ok(())
    }

    /// The label of `x`: true iff `x` is a member.
    pub fn label_of(&self, x: &BitString) -> Result<bool> {
        self.check_width(x)?;
        Ok(match &self.backend {
            Backend::Bitmap { labels, .. } => {
                let i = x.to_index().expect("bitmap width fits an index");
                bit_at(labels, i)
            }
            Backend::Oracle(p) => p(x),
        })
    }

    /// Label by bitmap index. Panics for the oracle backend or an index
    /// outside the universe.
    pub fn label_at(&self, index: u64) -> bool {
        assert!(
            index < self.universe_size(),
            "index {index} outside universe"
        );
        match &self.backend {
            Backend::Bitmap { labels, .. } => bit_at(labels, index),
            Backend::Oracle(_) => panic!("label_at requires the bitmap backend"),
        }
    }

    pub fn point(&self, x: &BitString) -> Result<LabelledPoint> {
        Ok(LabelledPoint {
            point: x.clone(),
            label: self.label_of(x)?,
        })
    }

    /// Index of the first point at or after `from` whose label is `label`.
    pub fn next_with_label(&self, from: u64, label: bool) -> Result<Option<u64>> {
        let words = self.words("next_with_label")?;
        let end = self.universe_size();
        let mut i = from;
        while i < end {
            let w = (i / 64) as usize;
            let mut word = if label { words[w] } else { !words[w] };
            word &= u64::MAX << (i % 64);
            if word != 0 {
                let found = w as u64 * 64 + u64::from(word.trailing_zeros());
                return Ok((found < end).then_some(found));
            }
            i = (w as u64 + 1) * 64;
        }
        Ok(None)
    }

    /// Members in lexicographic order.
    pub fn members(&self) -> Result<impl Iterator<Item = BitString> + '_> {
        self.words("members")?;
        let width = self.width;
        let mut next = 0u64;
        Ok(std::iter::from_fn(move || {
            let found = self.next_with_label(next, true).ok().flatten()?;
            next = found + 1;
            Some(BitString::from_index(width, found))
        }))
    }

    /// Every point with its label, in lexicographic order.
    pub fn points(&self) -> Result<impl Iterator<Item = LabelledPoint> + '_> {
        self.words("points")?;
        let width = self.width;
        Ok((0..self.universe_size()).map(move |i| LabelledPoint {
            point: BitString::from_index(width, i),
            label: self.label_at(i),
        }))
    }

    /// Pointwise union where label 1 absorbs label 0.
    pub fn labelled_union(&self, other: &LabelledSet) -> Result<LabelledSet> {
        if self.width != other.width {
            return Err(Error::WidthMismatch {
                expected: self.width,
                found: other.width,
            });
        }
        let a = self.words("labelled_union")?;
        let b = other.words("labelled_union")?;
        Ok(Self::from_words(
            self.width,
            a.iter().zip(b).map(|(x, y)| x | y).collect(),
        ))
    }

    /// Strips the labels, applies `f` to every point, and labels the image of
    /// the members with 1 and everything else with 0.
    pub fn map_function<F>(&self, f: F) -> Result<LabelledSet>
    where
        F: Fn(&BitString) -> BitString,
    {
        self.words("map_function")?;
        let mut labels = vec![0u64; word_count(self.width)];
        for m in self.members()? {
            let y = f(&m);
            if y.width() != self.width {
                return Err(Error::FunctionWidth {
                    expected: self.width,
                    found: y.width(),
                });
            }
            let i = y.to_index().expect("bitmap width fits an index") as usize;
            labels[i / 64] |= 1 << (i % 64);
        }
        Ok(Self::from_words(self.width, labels))
    }

    /// Labels flipped pointwise.
    pub fn complement(&self) -> Result<LabelledSet> {
        self.words("complement")?;
        Ok(self.complement_bitmap())
    }

    fn complement_bitmap(&self) -> LabelledSet {
        let Backend::Bitmap { labels, .. } = &self.backend else {
            unreachable!("checked by caller")
        };
        let mut flipped: Vec<u64> = labels.iter().map(|w| !w).collect();
        let used = self.universe_size() % 64;
        if used != 0 {
            if let Some(last) = flipped.last_mut() {
                *last &= (1u64 << used) - 1;
            }
        }
        Self::from_words(self.width, flipped)
    }

    /// `LSET1` encoding: magic, width byte, backend tag `0x01`, then
    /// `ceil(2^n / 8)` label bytes with index 0 in the least significant bit
    /// of the first byte.
    pub fn to_bytes(&self) -> Result<Vec<u8>> {
        let words = self.words("serialization")?;
        let width = u8::try_from(self.width).expect("bitmap width fits a byte");
        let label_bytes = (self.universe_size() as usize).div_ceil(8);
        let mut out = Vec::with_capacity(MAGIC.len() + 2 + label_bytes);
        out.extend_from_slice(MAGIC);
        out.push(width);
        out.push(TAG_BITMAP);
        out.extend(words.iter().flat_map(|w| w.to_le_bytes()).take(label_bytes));
        Ok(out)
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<LabelledSet> {
        Self::from_bytes_capped(bytes, DEFAULT_BITMAP_CAP)
    }

    pub fn from_bytes_capped(bytes: &[u8], cap: usize) -> Result<LabelledSet> {
        let header = MAGIC.len() + 2;
        if bytes.len() < header || &bytes[..MAGIC.len()] != MAGIC {
            return Err(Error::Format("missing LSET1 magic".into()));
        }
        let width = bytes[MAGIC.len()] as usize;
        let tag = bytes[MAGIC.len() + 1];
        if tag != TAG_BITMAP {
            return Err(Error::Format(format!("unknown backend tag {tag:#04x}")));
        }
        check_cap(width, cap)?;
        let body = &bytes[header..];
        let expected = (1usize << width).div_ceil(8);
        if body.len() != expected {
            return Err(Error::Format(format!(
                "expected {expected} label bytes for width {width}, found {}",
                body.len()
            )));
        }
        let used_bits = 1usize << width;
        if used_bits < 8 && body[0] >> used_bits != 0 {
            return Err(Error::Format("label bits set beyond the universe".into()));
        }
        let mut labels = vec![0u64; word_count(width)];
        for (i, chunk) in body.chunks(8).enumerate() {
            let mut buf = [0u8; 8];
            buf[..chunk.len()].copy_from_slice(chunk);
            labels[i] = u64::from_le_bytes(buf);
        }
        Ok(Self::from_words(width, labels))
    }
}

#[inline]
fn bit_at(labels: &[u64], index: u64) -> bool {
    labels[(index / 64) as usize] >> (index % 64) & 1 == 1
}

impl PartialEq for LabelledSet {
    /// Bitmap sets compare by labels. Oracle sets are equal only when they
    /// share the same predicate.
    fn eq(&self, other: &Self) -> bool {
        self.width == other.width
            && match (&self.backend, &other.backend) {
                (Backend::Bitmap { labels: a, .. }, Backend::Bitmap { labels: b, .. }) => a == b,
                (Backend::Oracle(a), Backend::Oracle(b)) => Arc::ptr_eq(a, b),
                _ => false,
            }
    }
}

impl fmt::Debug for LabelledSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.backend {
            Backend::Bitmap { member_count, .. } => f
                .debug_struct("LabelledSet")
                .field("width", &self.width)
                .field("member_count", member_count)
                .finish(),
            Backend::Oracle(_) => f
                .debug_struct("LabelledSet")
                .field("width", &self.width)
                .field("backend", &"oracle")
                .finish(),
        }
    }
}
