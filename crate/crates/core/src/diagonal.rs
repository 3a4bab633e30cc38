//! The diagonal argument at finite width: no assignment of width-`n` codes to
//! predicates over width-`n` strings reaches every predicate.
//!
//! A predicate over width-`n` strings is the same object as a labelled set of
//! width `n`, so predicates are represented as [`LabelledSet`]s.

use rand::Rng;
use serde::Serialize;

use crate::bitcore::BitString;
use crate::error::{Error, Result};
use crate::labelset::LabelledSet;

/// Widest coding accepted; a coding holds `2^n` tables of `2^n` labels.
pub const MAX_CODING_WIDTH: usize = 12;

/// A total map from width-`n` codes to predicates over width-`n` strings,
/// stored as one table per code in code-index order.
#[derive(Clone, Debug, PartialEq)]
pub struct PredicateCoding {
    width: usize,
    tables: Vec<LabelledSet>,
}

impl PredicateCoding {
    /// Tabulates `decode` over every code.
    pub fn from_fn<F>(width: usize, decode: F) -> Result<Self>
    where
        F: Fn(&BitString) -> LabelledSet,
    {
        check_width(width)?;
        let tables = BitString::universe(width)
            .map(|code| {
                let table = decode(&code);
                if table.width() != width || !table.is_bitmap() {
                    return Err(Error::WidthMismatch {
                        expected: width,
                        found: table.width(),
                    });
                }
                Ok(table)
            })
            .collect::<Result<_>>()?;
        Ok(PredicateCoding { width, tables })
    }

    /// Code `y` decodes to the `index(y)`-th predicate in the canonical
    /// enumeration of truth tables: point `p` is true iff bit `index(p)` of
    /// `index(y)` is set. These are the first `2^n` of the `2^(2^n)`
    /// predicates.
    pub fn canonical(width: usize) -> Result<Self> {
        Self::from_fn(width, |code| {
            let k = code.to_index().expect("coding width is small");
            LabelledSet::from_predicate(width, |p| {
                let i = p.to_index().expect("coding width is small");
                i < 64 && k >> i & 1 == 1
            })
            .expect("coding width below bitmap cap")
        })
    }

    /// Every code gets an independent uniformly random truth table.
    pub fn random<R: Rng + ?Sized>(width: usize, rng: &mut R) -> Result<Self> {
        check_width(width)?;
        let tables = (0..1u64 << width)
            .map(|_| LabelledSet::random(width, 0.5, rng))
            .collect::<Result<_>>()?;
        Ok(PredicateCoding { width, tables })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    /// The predicate coded by `code`.
    pub fn decode(&self, code: &BitString) -> Result<&LabelledSet> {
        if code.width() != self.width {
            return Err(Error::WidthMismatch {
                expected: self.width,
                found: code.width(),
            });
        }
        Ok(&self.tables[code.to_index().expect("coding width is small") as usize])
    }

    /// Distinct predicates in the image of `decode`.
    pub fn image_size(&self) -> usize {
        let mut distinct: Vec<&LabelledSet> = Vec::new();
        for t in &self.tables {
            if !distinct.contains(&t) {
                distinct.push(t);
            }
        }
        distinct.len()
    }
}

fn check_width(width: usize) -> Result<()> {
    if width > MAX_CODING_WIDTH {
        return Err(Error::BitmapCap {
            width,
            cap: MAX_CODING_WIDTH,
        });
    }
    Ok(())
}

/// The predicate sending each code `y` to `1 - decode(y)(y)`.
pub fn diagonal_predicate(coding: &PredicateCoding) -> LabelledSet {
    LabelledSet::from_predicate(coding.width, |y| {
        let own = coding.decode(y).and_then(|t| t.label_of(y));
        !own.expect("code and point share the coding width")
    })
    .expect("coding width below bitmap cap")
}

/// A point where the diagonal predicate and `decode(code)` disagree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub code: BitString,
    pub point: BitString,
    pub diagonal: u8,
    pub decoded: u8,
}

/// Checks, code by code, that the diagonal predicate differs from what the
/// code decodes to, using the code itself as the point of disagreement. An
/// agreement would mean the diagonal lies in the image of `decode`.
pub fn verify_antisurjection(coding: &PredicateCoding) -> Result<Vec<Witness>> {
    let diagonal = diagonal_predicate(coding);
    BitString::universe(coding.width)
        .map(|code| {
            let d = diagonal.label_of(&code)?;
            let e = coding.decode(&code)?.label_of(&code)?;
            if d == e {
                return Err(Error::DiagonalInImage(code.to_string()));
            }
            Ok(Witness {
                point: code.clone(),
                code,
                diagonal: u8::from(d),
                decoded: u8::from(e),
            })
        })
        .collect()
}
